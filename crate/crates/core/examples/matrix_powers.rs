//! Closed-form matrix powers against square-and-multiply.

use biperiodic::matforms::{
    a_power_closed, build, k_power_closed, power_by_multiplication, tu_power_closed,
    u_power_closed, MatrixTag,
};
use biperiodic::Params;

fn main() {
    let p = Params::from_ints(2, 3, 1, 1, 1).unwrap();
    for tag in MatrixTag::ALL {
        println!("{tag} = {}", build(tag, &p));
    }
    for n in [1i64, 2, 5, 10] {
        let u = u_power_closed(&p, n);
        assert_eq!(u, power_by_multiplication(MatrixTag::U, &p, n).unwrap());
        println!("U^{n} = {u}  det = {}", u.det());
        let k = k_power_closed(&p, n as u64).unwrap();
        assert_eq!(k, power_by_multiplication(MatrixTag::K, &p, n).unwrap());
        println!("K^{n} = {k}");
        let tu = tu_power_closed(&p, n as u64);
        assert_eq!(tu, power_by_multiplication(MatrixTag::T, &p, n).unwrap());
        println!("T U^{n} = {tu}");
        let a = a_power_closed(&p, n as u64);
        assert_eq!(a, power_by_multiplication(MatrixTag::A, &p, n).unwrap());
        println!("A^{n} = {a}");
    }
    let inv = u_power_closed(&p, -3);
    println!("U^-3 = {inv}");
    assert!((&inv * &u_power_closed(&p, 3)).is_identity());
}
