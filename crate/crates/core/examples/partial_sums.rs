//! Weighted partial sums of u and v along an arithmetic progression of
//! indices, checked by direct addition, the matrix geometric series and the
//! scalar closed form.

use biperiodic::identities::{check_sum_theorem, sum_constants, sum_oracle};
use biperiodic::Params;

fn main() {
    let p = Params::from_ints(2, 3, 1, 1, 1).unwrap();
    for m in 1..=3 {
        let d = sum_constants(&p, m).unwrap();
        println!(
            "m={m}: det(I - K^m) = {}, printed constant {}",
            d.d_corrected, d.d_printed
        );
    }
    println!();
    println!(
        "  m n r  {:>14} {:>14} {:>14}",
        "direct", "oracle", "printed"
    );
    for (m, n, r) in [(1, 1, 0), (2, 1, 0), (2, 3, 1), (3, 2, 2)] {
        let [su, sv] = check_sum_theorem(&p, m, n, r).unwrap();
        assert!(su.pass && sv.pass);
        let (ou, _) = sum_oracle(&p, m, n, r).unwrap();
        let printed = su.printed_form_value.map_or("-".into(), |x| x.to_string());
        println!(
            "u {m} {n} {r}  {:>14} {:>14} {:>14}",
            su.lhs.to_string(),
            ou.to_string(),
            printed
        );
    }
}
