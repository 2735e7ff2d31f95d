//! Exact two-sided evaluation of the known identities for `u`, `v` and `w`.
//!
//! Each `check_*` function evaluates both sides of one identity at one
//! parameter point and index tuple and returns an [`IdentityReport`]. There
//! is no tolerance anywhere: a check passes only when both sides are the same
//! rational number. [`run_suite`] samples parameter points and indices and
//! collects the reports.
//!
//! Two identities are not checked in their printed form, because the printed
//! form is false in general (see [`check_lemma1`] sub-identity 3 and
//! [`check_sum_theorem`]). For those the report carries the corrected
//! evaluation in `lhs`/`rhs` and the printed one in `printed_form_value`.

mod checks;
mod suite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::sequence::{negative_from_u_terms, term_naive, terms_naive, Params, SequenceKind};

pub use checks::{
    check_addition, check_binomial_theorem, check_cassini_w, check_catalan, check_corollary,
    check_lemma1, check_lemma2, check_product_sum, check_square_difference, check_sum_theorem,
    delta_weight, sum_constants, sum_oracle, SumConstants,
};
pub use suite::{run_suite, FamilyCount, Skip, Suite, SuiteConfig, SuiteSummary};

/// Identity families, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    L1,
    L2,
    Sum,
    Binom,
    CassiniW,
    Addition,
    Catalan,
    Prodsum,
    Cor31,
    T34,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::Sum => "SUM",
            Family::Binom => "BINOM",
            Family::CassiniW => "CASSINI_W",
            Family::Addition => "ADDITION",
            Family::Catalan => "CATALAN",
            Family::Prodsum => "PRODSUM",
            Family::Cor31 => "COR31",
            Family::T34 => "T34",
        })
    }
}

/// One identity: a family plus, where the family has several members, which
/// one (`L1.1`–`L1.4`, `L2.1`–`L2.7`, `SUM.u`/`SUM.v`, `BINOM.u`/`BINOM.v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    L1(u8),
    L2(u8),
    SumU,
    SumV,
    BinomU,
    BinomV,
    CassiniW,
    Addition,
    Catalan,
    Prodsum,
    Cor31,
    T34,
}

impl IdentityId {
    /// Every identity, in report order.
    #[must_use]
    pub fn all() -> Vec<IdentityId> {
        let mut ids: Vec<IdentityId> = (1..=4).map(IdentityId::L1).collect();
        ids.extend((1..=7).map(IdentityId::L2));
        ids.extend([
            IdentityId::SumU,
            IdentityId::SumV,
            IdentityId::BinomU,
            IdentityId::BinomV,
            IdentityId::CassiniW,
            IdentityId::Addition,
            IdentityId::Catalan,
            IdentityId::Prodsum,
            IdentityId::Cor31,
            IdentityId::T34,
        ]);
        ids
    }

    #[must_use]
    pub fn family(&self) -> Family {
        match self {
            IdentityId::L1(_) => Family::L1,
            IdentityId::L2(_) => Family::L2,
            IdentityId::SumU | IdentityId::SumV => Family::Sum,
            IdentityId::BinomU | IdentityId::BinomV => Family::Binom,
            IdentityId::CassiniW => Family::CassiniW,
            IdentityId::Addition => Family::Addition,
            IdentityId::Catalan => Family::Catalan,
            IdentityId::Prodsum => Family::Prodsum,
            IdentityId::Cor31 => Family::Cor31,
            IdentityId::T34 => Family::T34,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityId::L1(k) => write!(f, "L1.{k}"),
            IdentityId::L2(k) => write!(f, "L2.{k}"),
            IdentityId::SumU => f.write_str("SUM.u"),
            IdentityId::SumV => f.write_str("SUM.v"),
            IdentityId::BinomU => f.write_str("BINOM.u"),
            IdentityId::BinomV => f.write_str("BINOM.v"),
            other => write!(f, "{}", other.family()),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::all()
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Outcome of one identity check.
///
/// `pass` is `lhs == rhs`, and additionally `oracle == lhs` when an
/// independent oracle value is attached (the partial-sum identities).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    /// Position of the parameter sample inside a suite run; 0 for direct calls.
    #[serde(default)]
    pub sample: usize,
    pub params: Params,
    pub indices: BTreeMap<String, i64>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_form_value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_form_matches: Option<bool>,
}

impl IdentityReport {
    fn new(
        id: IdentityId,
        params: &Params,
        indices: &[(&str, i64)],
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        let pass = lhs == rhs;
        Self {
            id,
            sample: 0,
            params: params.clone(),
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            pass,
            oracle: None,
            printed_form_value: None,
            printed_form_matches: None,
        }
    }

    fn with_oracle(mut self, oracle: Rational) -> Self {
        self.pass = self.lhs == self.rhs && self.lhs == oracle;
        self.oracle = Some(oracle);
        self
    }

    /// Records the value of the as-printed formula; `target` is what it
    /// should have equalled. Does not affect `pass`.
    fn with_printed(mut self, printed: Option<Rational>, target: &Rational) -> Self {
        self.printed_form_matches = Some(printed.as_ref() == Some(target));
        self.printed_form_value = printed;
        self
    }
}

/// Memoized `u`, `v`, `w` terms for one parameter point.
///
/// Nonnegative indices come from the naive recurrence. Negative indices are
/// resolved through the closed negative-index forms from positive `u` terms.
pub struct Terms<'a> {
    p: &'a Params,
    tables: HashMap<SequenceKind, Vec<Rational>>,
}

impl<'a> Terms<'a> {
    /// Precomputes `0..=hi` for all three sequences.
    #[must_use]
    pub fn new(p: &'a Params, hi: i64) -> Self {
        let hi = hi.max(1);
        let tables = SequenceKind::ALL
            .into_iter()
            .map(|k| (k, terms_naive(p, k, 0, hi)))
            .collect();
        Self { p, tables }
    }

    #[must_use]
    pub fn params(&self) -> &Params {
        self.p
    }

    #[must_use]
    pub fn get(&self, kind: SequenceKind, n: i64) -> Rational {
        if n < 0 {
            let k = -n;
            let u_k = self.get(SequenceKind::U, k);
            let u_next = self.get(SequenceKind::U, k + 1);
            return negative_from_u_terms(self.p, kind, k, &u_k, &u_next);
        }
        match self.tables[&kind].get(n as usize) {
            Some(t) => t.clone(),
            None => term_naive(self.p, kind, n),
        }
    }

    #[must_use]
    pub fn u(&self, n: i64) -> Rational {
        self.get(SequenceKind::U, n)
    }

    #[must_use]
    pub fn v(&self, n: i64) -> Rational {
        self.get(SequenceKind::V, n)
    }

    #[must_use]
    pub fn w(&self, n: i64) -> Rational {
        self.get(SequenceKind::W, n)
    }
}
