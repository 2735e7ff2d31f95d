//! Matrix powering vs fast doubling on Fibonacci parameters.
//!
//!     cargo run --release --example bench

use std::time::Instant;

use biperiodic::fastpath::{term_fast_counted, Method};
use biperiodic::{Params, SequenceKind};

fn main() {
    let p = Params::from_ints(1, 1, 1, 0, 1).unwrap();
    println!(
        "{:>9} {:>9} {:>10} {:>8} {:>9}",
        "n", "method", "ms", "mults", "bits"
    );
    for e in [10, 14, 17, 20] {
        let n = 1i64 << e;
        let mut values = Vec::new();
        for method in [Method::Matrix, Method::Doubling] {
            let t = Instant::now();
            let r = term_fast_counted(&p, SequenceKind::U, n, method);
            let ms = t.elapsed().as_secs_f64() * 1e3;
            println!(
                "{n:>9} {method:>9} {ms:>10.2} {:>8} {:>9}",
                r.multiplications,
                r.value.bits()
            );
            values.push(r.value);
        }
        assert_eq!(values[0], values[1]);
    }
}
