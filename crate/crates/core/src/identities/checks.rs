use crate::error::{Error, Result};
use crate::exact::{Mat2, Rational};
use crate::matforms::{build, MatrixTag};
use crate::sequence::{discriminant, ppow, zeta, Params};

use super::{IdentityId, IdentityReport, Terms};

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what.to_string()))
    }
}

fn require_nondegenerate(p: &Params) -> Result<Rational> {
    let delta = discriminant(p);
    if delta.is_zero() {
        Err(Error::DegenerateDiscriminant)
    } else {
        Ok(delta)
    }
}

/// `(b/a)^e`.
fn ba(p: &Params, e: i64) -> Rational {
    ppow(&p.b_over_a(), e)
}

/// `(a/b)^e`.
fn ab_ratio(p: &Params, e: i64) -> Rational {
    ppow(&p.a_over_b(), e)
}

fn neg_c_pow(p: &Params, e: i64) -> Rational {
    ppow(&-p.c(), e)
}

/// `(ab)^floor(n/2)`.
fn half_ab(p: &Params, n: i64) -> Rational {
    ppow(&p.ab(), n.div_euclid(2))
}

/// Lemma on `u` alone, sub-identities 1–4:
///
/// 1. `(a/b)^ζ(n) u_n² - (a/b)^ζ(n+1) u_{n-1} u_{n+1} = (a/b) (-c)^{n-1}`
/// 2. `(b/a)^ζ(mn+n) u_m u_{n+1} + (b/a)^ζ(mn+m) c u_n u_{m-1} = u_{n+m}`
/// 3. `(b/a)^ζ(mn+m) u_n u_{m+1} - (b/a)^ζ(mn+n) u_m u_{n+1} = (-c)^m u_{n-m}`
/// 4. `(b/a)^ζ(mn+n) u_m u_{n-m+1} + c (b/a)^ζ(mn) u_{m-1} u_{n-m} = u_n`
///
/// The commonly printed form of 3 has the two `(b/a)` exponents the other way
/// round, which only holds when `m + n` is even. The report checks the form
/// above and records the printed one in `printed_form_value`. Negative
/// indices (`n < m`) are resolved with the negative-index closed forms.
pub fn check_lemma1(p: &Params, sub: u8, m: i64, n: i64) -> Result<IdentityReport> {
    let terms = Terms::new(p, m.max(n) + 2);
    lemma1_at(&terms, sub, m, n)
}

pub(crate) fn lemma1_at(t: &Terms, sub: u8, m: i64, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1, "n must be >= 1")?;
    if sub != 1 {
        require(m >= 1, "m must be >= 1")?;
    }
    let id = IdentityId::L1(sub);
    let c = p.c();
    let mn = m * n;
    let report = match sub {
        1 => {
            let lhs = ab_ratio(p, zeta(n)) * t.u(n).square()
                - ab_ratio(p, zeta(n + 1)) * t.u(n - 1) * t.u(n + 1);
            let rhs = p.a_over_b() * neg_c_pow(p, n - 1);
            IdentityReport::new(id, p, &[("n", n)], lhs, rhs)
        }
        2 => {
            let lhs = ba(p, zeta(mn + n)) * t.u(m) * t.u(n + 1)
                + ba(p, zeta(mn + m)) * c * t.u(n) * t.u(m - 1);
            IdentityReport::new(id, p, &[("m", m), ("n", n)], lhs, t.u(n + m))
        }
        3 => {
            let first = t.u(n) * t.u(m + 1);
            let second = t.u(m) * t.u(n + 1);
            let rhs = neg_c_pow(p, m) * t.u(n - m);
            let lhs = ba(p, zeta(mn + m)) * &first - ba(p, zeta(mn + n)) * &second;
            let printed = ba(p, zeta(mn + n)) * first - ba(p, zeta(mn + m)) * second;
            IdentityReport::new(id, p, &[("m", m), ("n", n)], lhs, rhs.clone())
                .with_printed(Some(printed), &rhs)
        }
        4 => {
            let lhs = ba(p, zeta(mn + n)) * t.u(m) * t.u(n - m + 1)
                + c * ba(p, zeta(mn)) * t.u(m - 1) * t.u(n - m);
            IdentityReport::new(id, p, &[("m", m), ("n", n)], lhs, t.u(n))
        }
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    };
    Ok(report)
}

/// Lemma on `u` and `v` together, sub-identities 1–7 (with `D = Δ/a²`):
///
/// 1. `v_n² - D u_n² = 4 (b/a)^ζ(n) (-c)^n`
/// 2. `v_m v_n + D u_m u_n = 2 (b/a)^{ζ(n)ζ(m)} v_{n+m}`
/// 3. `u_m v_n + u_n v_m = 2 (b/a)^{ζ(n)ζ(m)} u_{n+m}`
/// 4. `v_m v_n - D u_m u_n = 2 (-c)^m (a/b)^{-ζ(n)ζ(m)} v_{n-m}`
/// 5. `u_n v_m - u_m v_n = 2 (-c)^m (a/b)^{-ζ(n)ζ(m)} u_{n-m}`
/// 6. `v_{n+m} + (-c)^m v_{n-m} = (a/b)^{ζ(n)ζ(m)} v_m v_n`
/// 7. `u_{n+m} + (-c)^m u_{n-m} = (a/b)^{ζ(n)ζ(m)} u_n v_m`
///
/// Requires `Δ ≠ 0`.
pub fn check_lemma2(p: &Params, sub: u8, m: i64, n: i64) -> Result<IdentityReport> {
    let terms = Terms::new(p, m + n + 1);
    lemma2_at(&terms, sub, m, n)
}

pub(crate) fn lemma2_at(t: &Terms, sub: u8, m: i64, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    let delta = require_nondegenerate(p)?;
    require(n >= 1, "n must be >= 1")?;
    if sub != 1 {
        require(m >= 1, "m must be >= 1")?;
    }
    let id = IdentityId::L2(sub);
    let d = delta / p.a().square();
    let two = Rational::from(2);
    let zz = zeta(n) * zeta(m);
    let mn = [("m", m), ("n", n)];
    let (lhs, rhs) = match sub {
        1 => {
            let lhs = t.v(n).square() - &d * t.u(n).square();
            let rhs = Rational::from(4) * ba(p, zeta(n)) * neg_c_pow(p, n);
            return Ok(IdentityReport::new(id, p, &[("n", n)], lhs, rhs));
        }
        2 => (
            t.v(m) * t.v(n) + &d * t.u(m) * t.u(n),
            two * ba(p, zz) * t.v(n + m),
        ),
        3 => (
            t.u(m) * t.v(n) + t.u(n) * t.v(m),
            two * ba(p, zz) * t.u(n + m),
        ),
        4 => (
            t.v(m) * t.v(n) - &d * t.u(m) * t.u(n),
            two * neg_c_pow(p, m) * ab_ratio(p, -zz) * t.v(n - m),
        ),
        5 => (
            t.u(n) * t.v(m) - t.u(m) * t.v(n),
            two * neg_c_pow(p, m) * ab_ratio(p, -zz) * t.u(n - m),
        ),
        6 => (
            t.v(n + m) + neg_c_pow(p, m) * t.v(n - m),
            ab_ratio(p, zz) * t.v(m) * t.v(n),
        ),
        7 => (
            t.u(n + m) + neg_c_pow(p, m) * t.u(n - m),
            ab_ratio(p, zz) * t.u(n) * t.v(m),
        ),
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    };
    Ok(IdentityReport::new(id, p, &mn, lhs, rhs))
}

/// The geometric-series constant for step `m`, as printed and as it follows
/// from `det(I - K^m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumConstants {
    /// `1 - a^ζ(m) v_m + (ab)^ζ(m) (-c)^m`
    pub d_printed: Rational,
    /// `1 - (ab)^floor(m/2) a^ζ(m) v_m + (-abc)^m`, equal to `det(I - K^m)`
    pub d_corrected: Rational,
}

pub fn sum_constants(p: &Params, m: i64) -> Result<SumConstants> {
    require(m >= 1, "m must be >= 1")?;
    Ok(sum_constants_at(&Terms::new(p, m), m))
}

fn sum_constants_at(t: &Terms, m: i64) -> SumConstants {
    let p = t.params();
    let a_vm = ppow(p.a(), zeta(m)) * t.v(m);
    let one = Rational::one();
    SumConstants {
        d_printed: &one - &a_vm + ppow(&p.ab(), zeta(m)) * neg_c_pow(p, m),
        d_corrected: one - half_ab(p, m) * a_vm + ppow(&-(p.ab() * p.c()), m),
    }
}

/// Partial sums
/// `Σ_{j=0}^{n} (ab)^floor((mj+r)/2) a^(ζ(mj+r)-1) u_{mj+r}` and the matching
/// `v` sum (exponent `ζ(mj+r)`), read off `(I - K^m)^{-1} (K^r - K^{mn+m+r})`.
///
/// Requires `Δ ≠ 0` and `det(I - K^m) ≠ 0`.
pub fn sum_oracle(p: &Params, m: i64, n: i64, r: i64) -> Result<(Rational, Rational)> {
    require_nondegenerate(p)?;
    require(m >= 1 && n >= 0 && r >= 0, "need m >= 1, n >= 0, r >= 0")?;
    let k = build(MatrixTag::K, p);
    let k_m = k.pow(m)?;
    let i_minus = &Mat2::identity() - &k_m;
    if i_minus.det().is_zero() {
        return Err(Error::SingularSeries { m: m as u64 });
    }
    let span = &k.pow(r)? - &k.pow(m * n + m + r)?;
    let sum = &i_minus.inverse()? * &span;
    let two = Rational::from(2);
    Ok((&two * &sum.m21, two * sum.m11))
}

/// Partial-sum identities `SUM.u` and `SUM.v`.
///
/// `lhs` is the sum added up term by term, `oracle` the matrix geometric
/// series from [`sum_oracle`], and `rhs` the scalar closed form obtained from
/// `adj(I - K^m) / det(I - K^m)`. With `M = mn + m + r` and
/// `s = (ab)^floor(m/2)`:
///
/// ```text
/// Σ = [ (ab)^floor(r/2) a^(ζ(r)-1) (u_r - s (-c)^m a^(ζ(m)ζ(r+1)) b^(ζ(m)ζ(r)) u_{r-m})
///     - (ab)^floor(M/2) a^(ζ(M)-1) (u_M - s (-c)^m a^(ζ(m)ζ(M+1)) b^(ζ(m)ζ(M)) u_{mn+r}) ] / D
/// ```
///
/// with `D = det(I - K^m)`; the `v` form replaces `u` by `v` and drops the
/// `-1` from both `a` exponents. The commonly printed version (missing `s`,
/// a different `D`, and a `+` in the second bracket) is evaluated into
/// `printed_form_value` for comparison.
pub fn check_sum_theorem(p: &Params, m: i64, n: i64, r: i64) -> Result<[IdentityReport; 2]> {
    let terms = Terms::new(p, m * n + m + r + 1);
    sum_at(&terms, m, n, r)
}

pub(crate) fn sum_at(t: &Terms, m: i64, n: i64, r: i64) -> Result<[IdentityReport; 2]> {
    let p = t.params();
    let (oracle_u, oracle_v) = sum_oracle(p, m, n, r)?;
    let consts = sum_constants_at(t, m);
    let (a, b) = (p.a(), p.b());
    let big_m = m * n + m + r;
    let s = half_ab(p, m);
    let zm = zeta(m);
    let indices = [("m", m), ("n", n), ("r", r)];

    let build = |id: IdentityId, x: &dyn Fn(i64) -> Rational, shift: i64, oracle: Rational| {
        let direct: Rational = (0..=n)
            .map(|j| {
                let k = m * j + r;
                half_ab(p, k) * ppow(a, zeta(k) + shift) * x(k)
            })
            .sum();
        let tilt = |k: i64| ppow(a, zm * zeta(k + 1)) * ppow(b, zm * zeta(k));
        let head = half_ab(p, r) * ppow(a, zeta(r) + shift);
        let tail = half_ab(p, big_m) * ppow(a, zeta(big_m) + shift);
        let corrected = (&head * (x(r) - &s * neg_c_pow(p, m) * tilt(r) * x(r - m))
            - &tail * (x(big_m) - &s * neg_c_pow(p, m) * tilt(big_m) * x(m * n + r)))
            / &consts.d_corrected;
        let printed = if consts.d_printed.is_zero() {
            None
        } else {
            Some(
                (head * (x(r) - neg_c_pow(p, m) * tilt(r) * x(r - m))
                    - tail * (x(big_m) + neg_c_pow(p, m) * tilt(big_m) * x(m * n + r)))
                    / &consts.d_printed,
            )
        };
        IdentityReport::new(id, p, &indices, direct.clone(), corrected)
            .with_oracle(oracle)
            .with_printed(printed, &direct)
    };
    Ok([
        build(IdentityId::SumU, &|k| t.u(k), -1, oracle_u),
        build(IdentityId::SumV, &|k| t.v(k), 0, oracle_v),
    ])
}

/// `δ[m,n,r,i] = (ab)^(floor((i+r)/2) + n floor(m/2)) a^(-ζ(m+1) i - 1 + ζ(i+r)) b^(ζ(m)(n-i))`.
pub fn delta_weight(p: &Params, m: i64, n: i64, r: i64, i: i64) -> Result<Rational> {
    require(m > 1, "m must be > 1")?;
    require((0..=n).contains(&i), "need 0 <= i <= n")?;
    Ok(delta_unchecked(p, m, n, r, i))
}

fn delta_unchecked(p: &Params, m: i64, n: i64, r: i64, i: i64) -> Rational {
    ppow(&p.ab(), (i + r).div_euclid(2) + n * m.div_euclid(2))
        * ppow(p.a(), -zeta(m + 1) * i - 1 + zeta(i + r))
        * ppow(p.b(), zeta(m) * (n - i))
}

/// Binomial expansions `BINOM.u` and `BINOM.v` of `u_{mn+r}` and `v_{mn+r}`:
///
/// ```text
/// x_{mn+r} = a^(1-ζ(mn+r)) / (ab)^floor((mn+r)/2)
///            Σ_i C(n,i) c^(n-i) u_m^i u_{m-1}^(n-i) x_{i+r} δ[m,n,r,i]
/// ```
///
/// Requires `m > 1`, `n, r >= 0`.
pub fn check_binomial_theorem(p: &Params, m: i64, n: i64, r: i64) -> Result<[IdentityReport; 2]> {
    let terms = Terms::new(p, m * n + r + 1);
    binomial_at(&terms, m, n, r)
}

pub(crate) fn binomial_at(t: &Terms, m: i64, n: i64, r: i64) -> Result<[IdentityReport; 2]> {
    let p = t.params();
    require(m > 1, "m must be > 1")?;
    require(n >= 0 && r >= 0, "need n >= 0 and r >= 0")?;
    let total = m * n + r;
    let prefactor = ppow(p.a(), 1 - zeta(total)) / half_ab(p, total);
    let (u_m, u_m1) = (t.u(m), t.u(m - 1));
    // weights[i] = C(n,i) c^(n-i) u_m^i u_{m-1}^(n-i) δ[m,n,r,i]
    let mut binom = Rational::one();
    let mut weights = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        weights.push(
            &binom
                * ppow(p.c(), n - i)
                * u_m.pow(i).expect("nonnegative exponent")
                * u_m1.pow(n - i).expect("nonnegative exponent")
                * delta_unchecked(p, m, n, r, i),
        );
        binom = binom * Rational::from(n - i) / Rational::from(i + 1);
    }
    let indices = [("m", m), ("n", n), ("r", r)];
    let side = |x: &dyn Fn(i64) -> Rational| -> Rational {
        &prefactor
            * weights
                .iter()
                .enumerate()
                .map(|(i, wt)| wt * x(i as i64 + r))
                .sum::<Rational>()
    };
    Ok([
        IdentityReport::new(
            IdentityId::BinomU,
            p,
            &indices,
            t.u(total),
            side(&|k| t.u(k)),
        ),
        IdentityReport::new(
            IdentityId::BinomV,
            p,
            &indices,
            t.v(total),
            side(&|k| t.v(k)),
        ),
    ])
}

/// `w1² - b w0 w1 - c (b/a) w0²`, the invariant on the right of the
/// Cassini and Catalan forms.
fn w_characteristic(p: &Params) -> Rational {
    let (w0, w1) = (p.w0(), p.w1());
    w1.square() - p.b() * w0 * w1 - p.c() * p.b_over_a() * w0.square()
}

/// `(b/a)^ζ(n) w_{n-1} w_{n+1} - (b/a)^ζ(n+1) w_n² = (-1)^n c^(n-1) (w1² - b w0 w1 - c (b/a) w0²)`.
pub fn check_cassini_w(p: &Params, n: i64) -> Result<IdentityReport> {
    cassini_at(&Terms::new(p, n + 1), n)
}

pub(crate) fn cassini_at(t: &Terms, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1, "n must be >= 1")?;
    let lhs = ba(p, zeta(n)) * t.w(n - 1) * t.w(n + 1) - ba(p, zeta(n + 1)) * t.w(n).square();
    let rhs = Rational::sign_pow(n) * ppow(p.c(), n - 1) * w_characteristic(p);
    Ok(IdentityReport::new(
        IdentityId::CassiniW,
        p,
        &[("n", n)],
        lhs,
        rhs,
    ))
}

/// `w_{n+q} = (b/a)^(ζ(n+1)ζ(q)) u_n w_{q+1} + c (b/a)^(ζ(n)ζ(q+1)) u_{n-1} w_q`.
pub fn check_addition(p: &Params, n: i64, q: i64) -> Result<IdentityReport> {
    addition_at(&Terms::new(p, n + q + 1), n, q)
}

pub(crate) fn addition_at(t: &Terms, n: i64, q: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1 && q >= 1, "need n >= 1 and q >= 1")?;
    let rhs = ba(p, zeta(n + 1) * zeta(q)) * t.u(n) * t.w(q + 1)
        + p.c() * ba(p, zeta(n) * zeta(q + 1)) * t.u(n - 1) * t.w(q);
    Ok(IdentityReport::new(
        IdentityId::Addition,
        p,
        &[("n", n), ("q", q)],
        t.w(n + q),
        rhs,
    ))
}

/// Catalan-type identity (the index called `pp` here is `p` in the report):
///
/// ```text
/// (b/a)^(ζ(n)ζ(p)ζ(q)) w_{n+p} w_{n+q} - (b/a)^(ζ(n+1)ζ(p)ζ(q)) w_n w_{n+p+q}
///   = (b/a)^(ζ(n)ζ(p+1)ζ(q+1)) (-c)^n u_p u_q (w1² - b w0 w1 - (b/a) c w0²)
/// ```
pub fn check_catalan(p: &Params, n: i64, pp: i64, q: i64) -> Result<IdentityReport> {
    catalan_at(&Terms::new(p, n + pp + q), n, pp, q)
}

pub(crate) fn catalan_at(t: &Terms, n: i64, pp: i64, q: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1 && pp >= 1 && q >= 1, "need n, p, q >= 1")?;
    let (zn, zp, zq) = (zeta(n), zeta(pp), zeta(q));
    let lhs = ba(p, zn * zp * zq) * t.w(n + pp) * t.w(n + q)
        - ba(p, zeta(n + 1) * zp * zq) * t.w(n) * t.w(n + pp + q);
    let rhs = ba(p, zn * zeta(pp + 1) * zeta(q + 1))
        * neg_c_pow(p, n)
        * t.u(pp)
        * t.u(q)
        * w_characteristic(p);
    Ok(IdentityReport::new(
        IdentityId::Catalan,
        p,
        &[("n", n), ("p", pp), ("q", q)],
        lhs,
        rhs,
    ))
}

/// `(b/a)^ζ(mn+n) w_{n+1} w_m + (b/a)^ζ(mn+m) c w_n w_{m-1}
///  = w1 w_{m+n} + (b/a)^ζ(m+n) c w0 w_{m+n-1}`.
pub fn check_product_sum(p: &Params, m: i64, n: i64) -> Result<IdentityReport> {
    product_sum_at(&Terms::new(p, m + n + 1), m, n)
}

pub(crate) fn product_sum_at(t: &Terms, m: i64, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(m >= 1 && n >= 1, "need m >= 1 and n >= 1")?;
    let c = p.c();
    let lhs = ba(p, zeta(m * n + n)) * t.w(n + 1) * t.w(m)
        + ba(p, zeta(m * n + m)) * c * t.w(n) * t.w(m - 1);
    let rhs = p.w1() * t.w(m + n) + ba(p, zeta(m + n)) * c * p.w0() * t.w(m + n - 1);
    Ok(IdentityReport::new(
        IdentityId::Prodsum,
        p,
        &[("m", m), ("n", n)],
        lhs,
        rhs,
    ))
}

/// The product-sum identity at `m = n + 1`:
/// `(b/a)^ζ(n) w_{n+1}² + (b/a)^ζ(n+1) c w_n² = w1 w_{2n+1} + (b/a) c w0 w_{2n}`.
pub fn check_corollary(p: &Params, n: i64) -> Result<IdentityReport> {
    corollary_at(&Terms::new(p, 2 * n + 1), n)
}

pub(crate) fn corollary_at(t: &Terms, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1, "n must be >= 1")?;
    let c = p.c();
    let lhs = ba(p, zeta(n)) * t.w(n + 1).square() + ba(p, zeta(n + 1)) * c * t.w(n).square();
    let rhs = p.w1() * t.w(2 * n + 1) + p.b_over_a() * c * p.w0() * t.w(2 * n);
    Ok(IdentityReport::new(
        IdentityId::Cor31,
        p,
        &[("n", n)],
        lhs,
        rhs,
    ))
}

/// `w_{n+1}² - c² w_{n-1}² = a^ζ(n) b^ζ(n+1) (w1 w_{2n} + c w0 w_{2n-1})`.
pub fn check_square_difference(p: &Params, n: i64) -> Result<IdentityReport> {
    square_difference_at(&Terms::new(p, 2 * n + 1), n)
}

pub(crate) fn square_difference_at(t: &Terms, n: i64) -> Result<IdentityReport> {
    let p = t.params();
    require(n >= 1, "n must be >= 1")?;
    let c = p.c();
    let lhs = t.w(n + 1).square() - c.square() * t.w(n - 1).square();
    let rhs = ppow(p.a(), zeta(n))
        * ppow(p.b(), zeta(n + 1))
        * (p.w1() * t.w(2 * n) + c * p.w0() * t.w(2 * n - 1));
    Ok(IdentityReport::new(
        IdentityId::T34,
        p,
        &[("n", n)],
        lhs,
        rhs,
    ))
}
