//! Named special cases and their first terms.

use biperiodic::catalog;
use biperiodic::sequence::terms_naive;

fn main() {
    for e in catalog::list() {
        println!("{:<28} {:<18} {}", e.signature(), e.template, e.description);
    }
    println!();
    for name in [
        "fibonacci",
        "pell",
        "jacobsthal-lucas",
        "k-fibonacci(3)",
        "k-lucas(3)",
        "k-lucas-classical(3)",
        "horadam(2,1,1,-2)",
    ] {
        let s = catalog::lookup(name).unwrap();
        let terms: Vec<String> = terms_naive(&s.params, s.kind, 0, 10)
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("{name:<22} {}", terms.join(" "));
    }
}
