//! One term three ways, plus negative indices.
//!
//!     cargo run --example terms -- 2 3 1 1 1 25

use biperiodic::fastpath::{term_fast_counted, Method};
use biperiodic::{Params, Rational, SequenceKind};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (p, n) = if args.len() == 6 {
        let r: Vec<Rational> = args[..5]
            .iter()
            .map(|s| s.parse().expect("rational"))
            .collect();
        let p = Params::new(
            r[0].clone(),
            r[1].clone(),
            r[2].clone(),
            r[3].clone(),
            r[4].clone(),
        )
        .expect("a, b, c nonzero");
        (p, args[5].parse().expect("integer n"))
    } else {
        (Params::from_ints(2, 3, 1, 1, 1).unwrap(), 25)
    };
    println!("params {p}, n = {n}");
    for kind in SequenceKind::ALL {
        for method in Method::ALL {
            let e = term_fast_counted(&p, kind, n, method);
            println!(
                "{kind}_{n:<4} {method:<9} {:>6} mults  {}",
                e.multiplications, e.value
            );
        }
    }
    // backward recurrence
    for k in 1..=4 {
        let e = term_fast_counted(&p, SequenceKind::W, -k, Method::Doubling);
        println!("w_{} = {}", -k, e.value);
    }
}
