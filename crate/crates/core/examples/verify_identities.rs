//! Run the sampled identity suite and print per-family counts.
//!
//!     cargo run --release --example verify_identities -- 200 7

use biperiodic::identities::{check_lemma1, run_suite, Suite, SuiteConfig};
use biperiodic::Params;

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().map_or(50, |s| s.parse().expect("samples"));
    let seed = args.next().map_or(0, |s| s.parse().expect("seed"));

    let summary = run_suite(&SuiteConfig {
        suite: Suite::All,
        samples,
        seed,
        ..SuiteConfig::default()
    })
    .expect("valid config");
    for (family, c) in &summary.families {
        println!(
            "{family:<10} {:>5} ok {:>3} failed {:>3} skipped",
            c.passed, c.failed, c.skipped
        );
    }
    println!(
        "printed-form mismatches: {}",
        summary.printed_form_mismatches
    );

    // the third u-lemma with m + n odd: corrected form holds, printed one does not
    let p = Params::from_ints(2, 3, 1, 1, 1).unwrap();
    let r = check_lemma1(&p, 3, 2, 1).unwrap();
    println!(
        "{} m=2 n=1: lhs {} rhs {} printed {:?}",
        r.id, r.lhs, r.rhs, r.printed_form_value
    );
    assert!(summary.all_passed());
}
