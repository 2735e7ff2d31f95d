//! The companion-style matrices `U`, `K`, `H`, `T`, `A` and closed forms for
//! their powers.
//!
//! Each closed form is written as a scalar prefactor (a power of `ab`) times
//! a matrix of sequence terms, and is expected to agree exactly with plain
//! matrix exponentiation of the built matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Mat2, Rational};
use crate::sequence::{discriminant, ppow, term_naive, zeta, Params, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixTag {
    /// `[[ab, cb], [a, 0]]`
    U,
    /// `½ [[ab, Δ], [1, ab]]`
    K,
    /// `[[0, Δ], [1, 0]]`, equal to `K + abc K⁻¹`
    H,
    /// `[[ab w1 + cb w0, cb w1], [a w1, cb w0]]`
    T,
    /// `[[ab, abc], [1, 0]]`
    A,
}

impl MatrixTag {
    pub const ALL: [MatrixTag; 5] = [
        MatrixTag::U,
        MatrixTag::K,
        MatrixTag::H,
        MatrixTag::T,
        MatrixTag::A,
    ];
}

impl fmt::Display for MatrixTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The matrix named by `tag` at parameters `p`. Never fails; `Δ = 0` only
/// matters to the closed forms that need it.
#[must_use]
pub fn build(tag: MatrixTag, p: &Params) -> Mat2 {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let ab = p.ab();
    let cb = c * b;
    match tag {
        MatrixTag::U => Mat2::new(ab, cb, a.clone(), Rational::zero()),
        MatrixTag::K => {
            let half = Rational::new(1, 2).unwrap();
            Mat2::new(ab.clone(), discriminant(p), Rational::one(), ab).scale(&half)
        }
        MatrixTag::H => Mat2::new(
            Rational::zero(),
            discriminant(p),
            Rational::one(),
            Rational::zero(),
        ),
        MatrixTag::T => Mat2::new(
            &ab * p.w1() + &cb * p.w0(),
            &cb * p.w1(),
            a * p.w1(),
            &cb * p.w0(),
        ),
        MatrixTag::A => Mat2::new(ab.clone(), &ab * c, Rational::one(), Rational::zero()),
    }
}

/// `M^n` by square-and-multiply, with the convention that the `T` tag means
/// `T U^n` (the product whose entries carry `w` terms).
pub fn power_by_multiplication(tag: MatrixTag, p: &Params, n: i64) -> Result<Mat2> {
    match tag {
        MatrixTag::T => Ok(&build(MatrixTag::T, p) * &build(MatrixTag::U, p).pow(n)?),
        _ => build(tag, p).pow(n),
    }
}

fn u(p: &Params, n: i64) -> Rational {
    term_naive(p, SequenceKind::U, n)
}

fn require_nondegenerate(p: &Params) -> Result<Rational> {
    let delta = discriminant(p);
    if delta.is_zero() {
        Err(Error::DegenerateDiscriminant)
    } else {
        Ok(delta)
    }
}

/// `(ab)^floor(n/2)` for `n >= 0`.
pub(crate) fn half_power(p: &Params, n: i64) -> Rational {
    ppow(&p.ab(), n.div_euclid(2))
}

/// `U^n` from its closed form, for any integer `n`.
#[must_use]
pub fn u_power_closed(p: &Params, n: i64) -> Mat2 {
    let (a, b, c) = (p.a(), p.b(), p.c());
    let k = n.abs();
    let z = zeta(k);
    let top_right = c * b * ppow(a, -zeta(k + 1)) * u(p, k);
    let bottom_left = ppow(a, z) * u(p, k);
    let corner_hi = ppow(b, z) * u(p, k + 1);
    let corner_lo = c * ppow(b, z) * u(p, k - 1);
    if n >= 0 {
        Mat2::new(corner_hi, top_right, bottom_left, corner_lo).scale(&half_power(p, k))
    } else {
        let det_k = ppow(&-(p.ab() * c), k);
        Mat2::new(corner_lo, -top_right, -bottom_left, corner_hi).scale(&(half_power(p, k) / det_k))
    }
}

/// `K^n` from its closed form in `u_n` and `v_n`. Requires `Δ ≠ 0`.
pub fn k_power_closed(p: &Params, n: u64) -> Result<Mat2> {
    let delta = require_nondegenerate(p)?;
    let n = n as i64;
    let a = p.a();
    let z = zeta(n);
    let v_n = term_naive(p, SequenceKind::V, n);
    let diag = ppow(a, z) * &v_n;
    let off = ppow(a, z - 1) * u(p, n);
    let scale = half_power(p, n) / Rational::from(2);
    Ok(Mat2::new(diag.clone(), &delta * &off, off, diag).scale(&scale))
}

/// Coefficients of `K^n` in the bases `{H, I}` and `{K, I}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPowerDecomposition {
    /// `K^n = h_coeff H + h_identity I`
    pub h_coeff: Rational,
    pub h_identity: Rational,
    /// `K^n = k_coeff K + k_identity I`
    pub k_coeff: Rational,
    pub k_identity: Rational,
}

impl KPowerDecomposition {
    #[must_use]
    pub fn via_h(&self, p: &Params) -> Mat2 {
        &build(MatrixTag::H, p).scale(&self.h_coeff) + &Mat2::scalar(self.h_identity.clone())
    }

    #[must_use]
    pub fn via_k(&self, p: &Params) -> Mat2 {
        &build(MatrixTag::K, p).scale(&self.k_coeff) + &Mat2::scalar(self.k_identity.clone())
    }
}

/// Splits `K^n` over `{H, I}` and over `{K, I}`. Requires `Δ ≠ 0`.
pub fn k_power_decompose(p: &Params, n: u64) -> Result<KPowerDecomposition> {
    require_nondegenerate(p)?;
    let n = n as i64;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let z = zeta(n);
    let s = half_power(p, n);
    let half_s = &s / Rational::from(2);
    let u_n = u(p, n);
    let v_n = term_naive(p, SequenceKind::V, n);
    Ok(KPowerDecomposition {
        h_coeff: &half_s * ppow(a, z - 1) * &u_n,
        h_identity: &half_s * ppow(a, z) * v_n,
        k_coeff: &s * ppow(a, z - 1) * &u_n,
        k_identity: s * c * ppow(b, z) * u(p, n - 1),
    })
}

/// `T U^n` from its closed form in `w` terms, `n >= 0`.
#[must_use]
pub fn tu_power_closed(p: &Params, n: u64) -> Mat2 {
    let n = n as i64;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let w = |k| term_naive(p, SequenceKind::W, k);
    let z1 = zeta(n + 1);
    let w_next = w(n + 1);
    Mat2::new(
        ppow(b, z1) * w(n + 2),
        c * b * ppow(a, -zeta(n)) * &w_next,
        ppow(a, z1) * w_next,
        c * ppow(b, z1) * w(n),
    )
    .scale(&half_power(p, n + 1))
}

/// `A^n` from its closed form, `n >= 0`.
#[must_use]
pub fn a_power_closed(p: &Params, n: u64) -> Mat2 {
    let n = n as i64;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let z = zeta(n);
    let u_n = u(p, n);
    Mat2::new(
        ppow(b, z) * u(p, n + 1),
        c * b * ppow(a, z) * &u_n,
        ppow(a, -zeta(n + 1)) * u_n,
        c * ppow(b, z) * u(p, n - 1),
    )
    .scale(&half_power(p, n))
}
