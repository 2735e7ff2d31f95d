//! Logarithmic-time term evaluation.
//!
//! Two independent routes: square-and-multiply on `U` (or `T U^(n-1)` for
//! `w`) followed by unscaling one matrix entry, and fast doubling on the pair
//! `(u_n, u_{n+1})`. Both are checked against [`term_naive`].
//!
//! Negative indices go through the positive-index result and the closed
//! negative-index forms; the backward recurrence is only used by the naive
//! evaluator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::matforms::{build, half_power, MatrixTag};
use crate::sequence::{
    chi, negative_from_u_terms, ppow, term_naive, v_from_u_terms, w_from_u_terms, zeta, Params,
    SequenceKind,
};

/// Multiplications in one 2x2 product.
const MULS_PER_MAT2: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Matrix,
    Doubling,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Naive, Method::Matrix, Method::Doubling];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Method::Naive => "naive",
            Method::Matrix => "matrix",
            Method::Doubling => "doubling",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "matrix" => Ok(Method::Matrix),
            "doubling" => Ok(Method::Doubling),
            _ => Err(Error::Domain(format!("unknown method `{s}`"))),
        }
    }
}

/// A computed term together with the number of rational multiplications
/// spent on it. Multiplications by an exact `1` are skipped and not counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    pub multiplications: u64,
}

/// Per-call multiplication tally. Never shared between calls, so parallel
/// evaluations keep separate counts.
#[derive(Default)]
struct Tally(u64);

impl Tally {
    fn mul(&mut self, x: &Rational, y: &Rational) -> Rational {
        self.0 += 1;
        x * y
    }

    fn scale(&mut self, x: Rational, s: &Rational) -> Rational {
        if s.is_one() {
            x
        } else {
            self.0 += 1;
            x * s
        }
    }
}

/// `(u_n, u_{n+1})` by fast doubling.
#[must_use]
pub fn uv_doubling(p: &Params, n: u64) -> (Rational, Rational) {
    let (pair, _) = uv_doubling_counted(p, n);
    pair
}

/// [`uv_doubling`] plus the number of rational multiplications performed.
///
/// Each level maps `(u_k, u_{k+1})` to `(u_{2k}, u_{2k+1})` with
///
/// ```text
/// u_{2k}   = u_k (2 u_{k+1} - chi(k+1) u_k)
/// u_{2k+1} = (b/a)^ζ(k) u_{k+1}² + (b/a)^ζ(k+1) c u_k²
/// ```
///
/// and then steps once with the recurrence when the next bit of `n` is set.
/// The first form is `u_k (u_{k+1} + c u_{k-1})` with `u_{k-1}` eliminated
/// through the recurrence.
#[must_use]
pub fn uv_doubling_counted(p: &Params, n: u64) -> ((Rational, Rational), u64) {
    if n == 0 {
        return ((Rational::zero(), Rational::one()), 0);
    }
    let ratio = p.b_over_a();
    let one = Rational::one();
    let mut tally = Tally::default();
    // Start at the leading bit: (u_1, u_2) = (1, a).
    let mut k: u64 = 1;
    let mut lo = Rational::one();
    let mut hi = p.a().clone();
    let top = 63 - n.leading_zeros();
    for bit in (0..top).rev() {
        let even_k = k.is_multiple_of(2);
        let chi_next = chi(p, k as i64 + 1);
        let twice_hi = &hi + &hi;
        let diff = twice_hi - tally.scale(lo.clone(), chi_next);
        let u_2k = tally.mul(&lo, &diff);
        let hi_sq = tally.mul(&hi, &hi);
        let lo_sq = tally.mul(&lo, &lo);
        let (r_hi, r_lo) = if even_k {
            (&one, &ratio)
        } else {
            (&ratio, &one)
        };
        let c_lo_sq = tally.scale(lo_sq, p.c());
        let u_2k1 = tally.scale(hi_sq, r_hi) + tally.scale(c_lo_sq, r_lo);
        k *= 2;
        if (n >> bit) & 1 == 1 {
            // u_{2k+2} = a u_{2k+1} + c u_{2k}
            let next = tally.scale(u_2k1.clone(), p.a()) + tally.scale(u_2k, p.c());
            lo = u_2k1;
            hi = next;
            k += 1;
        } else {
            lo = u_2k;
            hi = u_2k1;
        }
    }
    debug_assert_eq!(k, n);
    ((lo, hi), tally.0)
}

/// Term `n` via square-and-multiply on `U` (or `T U^(n-1)` for `w`).
#[must_use]
pub fn term_matrix(p: &Params, kind: SequenceKind, n: i64) -> Rational {
    matrix_counted(p, kind, n).value
}

fn matrix_counted(p: &Params, kind: SequenceKind, n: i64) -> Evaluation {
    let (x0, x1) = p.initials(kind);
    if n == 0 {
        return Evaluation {
            value: x0,
            multiplications: 0,
        };
    }
    let k = n.abs();
    let u_mat = build(MatrixTag::U, p);
    if kind == SequenceKind::W && n > 0 {
        if n == 1 {
            return Evaluation {
                value: x1,
                multiplications: 0,
            };
        }
        let (pow, products) = u_mat.pow_counted(n - 1).expect("nonnegative exponent");
        let tu = &build(MatrixTag::T, p) * &pow;
        // Entry (2,1) of T U^(n-1) is (ab)^floor(n/2) a^ζ(n) w_n.
        let scale = half_power(p, n) * ppow(p.a(), zeta(n));
        return Evaluation {
            value: tu.m21 / scale,
            multiplications: (products + 1) * MULS_PER_MAT2,
        };
    }
    let (pow, products) = u_mat.pow_counted(k).expect("nonnegative exponent");
    // U^k = (ab)^floor(k/2) [[b^ζ u_{k+1}, .], [a^ζ u_k, c b^ζ u_{k-1}]]
    let s = half_power(p, k);
    let z = zeta(k);
    let u_k = &pow.m21 / (&s * ppow(p.a(), z));
    let value = if n > 0 {
        match kind {
            SequenceKind::U => u_k,
            SequenceKind::V => {
                let u_prev = &pow.m22 / (&s * p.c() * ppow(p.b(), z));
                v_from_u_terms(p, n, &u_k, &u_prev)
            }
            SequenceKind::W => unreachable!(),
        }
    } else {
        let u_next = &pow.m11 / (&s * ppow(p.b(), z));
        negative_from_u_terms(p, kind, k, &u_k, &u_next)
    };
    Evaluation {
        value,
        multiplications: products * MULS_PER_MAT2,
    }
}

fn doubling_counted(p: &Params, kind: SequenceKind, n: i64) -> Evaluation {
    let (x0, x1) = p.initials(kind);
    if n == 0 {
        return Evaluation {
            value: x0,
            multiplications: 0,
        };
    }
    if n == 1 {
        return Evaluation {
            value: x1,
            multiplications: 0,
        };
    }
    let k = n.unsigned_abs();
    let value_and_count = if n > 0 {
        match kind {
            SequenceKind::U => {
                let ((u_n, _), c) = uv_doubling_counted(p, k);
                (u_n, c)
            }
            SequenceKind::V => {
                let ((u_prev, u_n), c) = uv_doubling_counted(p, k - 1);
                (v_from_u_terms(p, n, &u_n, &u_prev), c)
            }
            SequenceKind::W => {
                let ((u_prev, u_n), c) = uv_doubling_counted(p, k - 1);
                (w_from_u_terms(p, n, &u_n, &u_prev), c)
            }
        }
    } else {
        let ((u_k, u_next), c) = uv_doubling_counted(p, k);
        (negative_from_u_terms(p, kind, k as i64, &u_k, &u_next), c)
    };
    Evaluation {
        value: value_and_count.0,
        multiplications: value_and_count.1,
    }
}

fn naive_counted(p: &Params, kind: SequenceKind, n: i64) -> Evaluation {
    // Two products per step of the recurrence in either direction.
    let steps = if n >= 2 {
        n - 1
    } else if n < 0 {
        -n
    } else {
        0
    };
    Evaluation {
        value: term_naive(p, kind, n),
        multiplications: 2 * steps as u64,
    }
}

/// Term `n` by the chosen method.
#[must_use]
pub fn term_fast(p: &Params, kind: SequenceKind, n: i64, method: Method) -> Rational {
    term_fast_counted(p, kind, n, method).value
}

/// [`term_fast`] with its multiplication count.
#[must_use]
pub fn term_fast_counted(p: &Params, kind: SequenceKind, n: i64, method: Method) -> Evaluation {
    match method {
        Method::Naive => naive_counted(p, kind, n),
        Method::Matrix => matrix_counted(p, kind, n),
        Method::Doubling => doubling_counted(p, kind, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn star() -> Params {
        Params::from_ints(2, 3, 1, 1, 1).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reference_point_values() {
        let p = star();
        assert_eq!(term_matrix(&p, SequenceKind::U, 5), q(55, 1));
        assert_eq!(term_matrix(&p, SequenceKind::W, 5), q(79, 1));
        assert_eq!(term_matrix(&p, SequenceKind::U, 0), q(0, 1));
        assert_eq!(uv_doubling(&p, 2), (q(2, 1), q(7, 1)));
        assert_eq!(uv_doubling(&p, 4), (q(16, 1), q(55, 1)));
        assert_eq!(uv_doubling(&p, 0), (q(0, 1), q(1, 1)));
        assert_eq!(
            term_fast(&p, SequenceKind::W, 5, Method::Doubling),
            q(79, 1)
        );
        assert_eq!(
            term_fast(&p, SequenceKind::V, 4, Method::Doubling),
            q(62, 1)
        );
        assert_eq!(term_fast(&p, SequenceKind::U, -2, Method::Matrix), q(-2, 1));
    }

    #[test]
    fn methods_agree_on_a_dense_range() {
        let params = [
            star(),
            Params::from_ints(1, 1, 1, 0, 1).unwrap(),
            Params::new(q(-3, 2), q(5, 4), q(2, 3), q(1, 5), q(-2, 1)).unwrap(),
            Params::new(q(1, 1), q(1, 1), q(-1, 4), q(0, 1), q(1, 1)).unwrap(),
        ];
        for p in &params {
            for kind in SequenceKind::ALL {
                for n in -40i64..=80 {
                    let naive = term_naive(p, kind, n);
                    assert_eq!(
                        term_fast(p, kind, n, Method::Matrix),
                        naive,
                        "matrix {kind}{n} {p}"
                    );
                    assert_eq!(
                        term_fast(p, kind, n, Method::Doubling),
                        naive,
                        "doubling {kind}{n} {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn doubling_work_is_logarithmic() {
        let p = Params::new(q(-3, 2), q(5, 4), q(2, 3), q(1, 5), q(-2, 1)).unwrap();
        for e in 1..=12u32 {
            for n in [(1u64 << e), (1u64 << e) + 1, (2u64 << e) - 1] {
                let (_, muls) = uv_doubling_counted(&p, n);
                let log = (n as f64).log2();
                assert!(muls as f64 <= 8.0 * log.max(1.0), "n={n} muls={muls}");
            }
        }
    }

    #[test]
    fn counts_are_reported_per_method() {
        let fib = Params::from_ints(1, 1, 1, 0, 1).unwrap();
        let naive = term_fast_counted(&fib, SequenceKind::U, 1000, Method::Naive);
        let matrix = term_fast_counted(&fib, SequenceKind::U, 1000, Method::Matrix);
        let doubling = term_fast_counted(&fib, SequenceKind::U, 1000, Method::Doubling);
        assert_eq!(naive.value, matrix.value);
        assert_eq!(naive.value, doubling.value);
        assert_eq!(naive.multiplications, 2 * 999);
        assert!(matrix.multiplications < 8 * 20);
        assert!(doubling.multiplications < 3 * 10 + 1);
    }

    fn coeff() -> impl Strategy<Value = Rational> {
        (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=5).prop_map(|(n, d)| q(n, d))
    }

    fn initial() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=5).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn all_methods_agree(a in coeff(), b in coeff(), c in coeff(), w0 in initial(), w1 in initial(), n in -50i64..=200) {
            let p = Params::new(a, b, c, w0, w1).unwrap();
            for kind in SequenceKind::ALL {
                let naive = term_naive(&p, kind, n);
                prop_assert_eq!(&term_fast(&p, kind, n, Method::Matrix), &naive);
                prop_assert_eq!(&term_fast(&p, kind, n, Method::Doubling), &naive);
            }
        }
    }
}
