//! Sequence parameters and the naive bidirectional recurrence.
//!
//! A sequence instance is `w(w0, w1; a, b, c)`:
//! `w_n = chi(n) w_{n-1} + c w_{n-2}` with `chi(n) = a` for even `n` and
//! `b` for odd `n`. The recurrence is run backwards for negative indices.
//! [`term_naive`] walks it one step at a time and is the reference every
//! faster evaluator is checked against.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// The quintuple `(a, b, c, w0, w1)`. `a`, `b` and `c` are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    a: Rational,
    b: Rational,
    c: Rational,
    w0: Rational,
    w1: Rational,
}

impl Params {
    pub fn new(a: Rational, b: Rational, c: Rational, w0: Rational, w1: Rational) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if v.is_zero() {
                return Err(Error::ZeroParameter(name));
            }
        }
        Ok(Self { a, b, c, w0, w1 })
    }

    /// Integer shorthand, mostly for tests and examples.
    pub fn from_ints(a: i64, b: i64, c: i64, w0: i64, w1: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), w0.into(), w1.into())
    }

    /// Same `(a, b, c)` with different initial values.
    #[must_use]
    pub fn with_initials(&self, w0: Rational, w1: Rational) -> Self {
        Self {
            w0,
            w1,
            ..self.clone()
        }
    }

    #[must_use]
    pub fn a(&self) -> &Rational {
        &self.a
    }

    #[must_use]
    pub fn b(&self) -> &Rational {
        &self.b
    }

    #[must_use]
    pub fn c(&self) -> &Rational {
        &self.c
    }

    #[must_use]
    pub fn w0(&self) -> &Rational {
        &self.w0
    }

    #[must_use]
    pub fn w1(&self) -> &Rational {
        &self.w1
    }

    /// `a * b`, which appears as the base of every `(ab)^floor(n/2)` scale.
    #[must_use]
    pub fn ab(&self) -> Rational {
        &self.a * &self.b
    }

    /// `b / a`.
    #[must_use]
    pub fn b_over_a(&self) -> Rational {
        &self.b / &self.a
    }

    /// `a / b`.
    #[must_use]
    pub fn a_over_b(&self) -> Rational {
        &self.a / &self.b
    }

    /// Initial pair `(x0, x1)` for the requested sequence.
    #[must_use]
    pub fn initials(&self, kind: SequenceKind) -> (Rational, Rational) {
        match kind {
            SequenceKind::U => (Rational::zero(), Rational::one()),
            SequenceKind::V => (Rational::from(2), self.b.clone()),
            SequenceKind::W => (self.w0.clone(), self.w1.clone()),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w({},{};{},{},{})",
            self.w0, self.w1, self.a, self.b, self.c
        )
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Deserialize)]
struct RawParams {
    a: Rational,
    b: Rational,
    c: Rational,
    w0: Rational,
    w1: Rational,
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawParams::deserialize(d)?;
        Params::new(r.a, r.b, r.c, r.w0, r.w1).map_err(serde::de::Error::custom)
    }
}

/// Which initial values to use: `u` has `(0, 1)`, `v` has `(2, b)`, `w` takes
/// `(w0, w1)` from the parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    U,
    V,
    W,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [SequenceKind::U, SequenceKind::V, SequenceKind::W];
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SequenceKind::U => "u",
            SequenceKind::V => "v",
            SequenceKind::W => "w",
        })
    }
}

impl std::str::FromStr for SequenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(SequenceKind::U),
            "v" => Ok(SequenceKind::V),
            "w" => Ok(SequenceKind::W),
            _ => Err(Error::Domain(format!("unknown sequence kind `{s}`"))),
        }
    }
}

/// Parity of `n` as 0 or 1, with `-1` odd and `-2` even.
#[must_use]
pub fn zeta(n: i64) -> i64 {
    n.rem_euclid(2)
}

/// `a` when `n` is even, `b` when odd.
#[must_use]
pub fn chi(p: &Params, n: i64) -> &Rational {
    if zeta(n) == 0 {
        &p.a
    } else {
        &p.b
    }
}

/// `x^e` where `e` is known to be valid for a nonzero parameter.
pub(crate) fn ppow(x: &Rational, e: i64) -> Rational {
    x.pow(e).expect("sequence parameters are nonzero")
}

/// `Δ = a²b² + 4abc`.
#[must_use]
pub fn discriminant(p: &Params) -> Rational {
    let ab = p.ab();
    &ab * &ab + Rational::from(4) * ab * &p.c
}

/// Term `n` by stepping the recurrence from the initial pair, forwards for
/// `n >= 2` and backwards (`w_{k-2} = (w_k - chi(k) w_{k-1}) / c`) for `n < 0`.
#[must_use]
pub fn term_naive(p: &Params, kind: SequenceKind, n: i64) -> Rational {
    let (x0, x1) = p.initials(kind);
    match n {
        0 => x0,
        1 => x1,
        n if n >= 2 => {
            let (mut prev, mut cur) = (x0, x1);
            for k in 2..=n {
                let next = chi(p, k) * &cur + &p.c * &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        }
        n => {
            // (hi, lo) = (x_k, x_{k-1}), starting at k = 1.
            let c_inv = p.c.recip().expect("c is nonzero");
            let (mut hi, mut lo) = (x1, x0);
            let mut k = 1i64;
            while k - 1 > n {
                let below = (&hi - chi(p, k) * &lo) * &c_inv;
                hi = std::mem::replace(&mut lo, below);
                k -= 1;
            }
            lo
        }
    }
}

/// Terms `from..=to` in order, sharing one pass of the recurrence.
#[must_use]
pub fn terms_naive(p: &Params, kind: SequenceKind, from: i64, to: i64) -> Vec<Rational> {
    if from > to {
        return Vec::new();
    }
    let start = from.min(1);
    let mut out: Vec<Rational> = Vec::with_capacity((to - from + 1) as usize);
    // Walk backwards to the lowest index first, then forwards.
    let mut lo = term_naive(p, kind, start);
    let mut hi = term_naive(p, kind, start + 1);
    let mut k = start;
    while k <= to {
        if k >= from {
            out.push(lo.clone());
        }
        let next = chi(p, k + 2) * &hi + &p.c * &lo;
        lo = std::mem::replace(&mut hi, next);
        k += 1;
    }
    out
}

/// `w_n = u_n w1 + c (b/a)^ζ(n) u_{n-1} w0`, from the two `u` terms.
pub(crate) fn w_from_u_terms(p: &Params, n: i64, u_n: &Rational, u_prev: &Rational) -> Rational {
    let mut tail = &p.c * u_prev * &p.w0;
    if zeta(n) == 1 {
        tail *= &p.b_over_a();
    }
    u_n * &p.w1 + tail
}

/// `v_n = b u_n + 2c (b/a)^ζ(n) u_{n-1}`.
pub(crate) fn v_from_u_terms(p: &Params, n: i64, u_n: &Rational, u_prev: &Rational) -> Rational {
    let mut tail = Rational::from(2) * &p.c * u_prev;
    if zeta(n) == 1 {
        tail *= &p.b_over_a();
    }
    &p.b * u_n + tail
}

/// `w_n` rebuilt from `u_n` and `u_{n-1}`. Requires `n >= 1`.
pub fn w_from_u(p: &Params, n: i64) -> Result<Rational> {
    require_positive(n)?;
    let u_n = term_naive(p, SequenceKind::U, n);
    let u_prev = term_naive(p, SequenceKind::U, n - 1);
    Ok(w_from_u_terms(p, n, &u_n, &u_prev))
}

/// `v_n` rebuilt from `u_n` and `u_{n-1}`. Requires `n >= 1`.
pub fn v_from_u(p: &Params, n: i64) -> Result<Rational> {
    require_positive(n)?;
    let u_n = term_naive(p, SequenceKind::U, n);
    let u_prev = term_naive(p, SequenceKind::U, n - 1);
    Ok(v_from_u_terms(p, n, &u_n, &u_prev))
}

/// Term at index `-n` from positive-index `u` terms.
///
/// `u_n` and `u_{n+1}` are always needed; `u_{n-1}` is recovered from them
/// through the recurrence.
pub(crate) fn negative_from_u_terms(
    p: &Params,
    kind: SequenceKind,
    n: i64,
    u_n: &Rational,
    u_next: &Rational,
) -> Rational {
    let neg_c_pow = ppow(&-&p.c, n);
    match kind {
        // u_{-n} = (-1)^{n+1} u_n / c^n
        SequenceKind::U => Rational::sign_pow(n + 1) * u_n / ppow(&p.c, n),
        // v_{-n} = (-1)^n v_n / c^n
        SequenceKind::V => {
            let u_prev = (u_next - chi(p, n + 1) * u_n) / &p.c;
            let v_n = v_from_u_terms(p, n, u_n, &u_prev);
            v_n / neg_c_pow
        }
        // (-c)^n w_{-n} = (b/a)^ζ(n) w0 u_{n+1} - w1 u_n
        SequenceKind::W => {
            let mut lead = &p.w0 * u_next;
            if zeta(n) == 1 {
                lead *= &p.b_over_a();
            }
            (lead - &p.w1 * u_n) / neg_c_pow
        }
    }
}

/// Term at index `-n` (for `n >= 1`) through the closed negative-index forms.
pub fn negative_term(p: &Params, kind: SequenceKind, n: i64) -> Result<Rational> {
    require_positive(n)?;
    let u_n = term_naive(p, SequenceKind::U, n);
    let u_next = term_naive(p, SequenceKind::U, n + 1);
    Ok(negative_from_u_terms(p, kind, n, &u_n, &u_next))
}

fn require_positive(n: i64) -> Result<()> {
    if n < 1 {
        Err(Error::Domain(format!("index must be >= 1, got {n}")))
    } else {
        Ok(())
    }
}
