//! Named special cases of `w(w0,w1;a,b,c)`.
//!
//! Keys are looked up as `name` or `name(arg,...)`, for example `pell`,
//! `k-fibonacci(3)` or `horadam(2,1,1,-2)`. Arguments are rational literals.
//!
//! Two rows are kept exactly as they are usually tabulated even though they
//! differ from the common definitions: `biperiodic-lucas(a,b)` is
//! `w(2,a;b,a,1)` with `a` and `b` in swapped slots, and `k-lucas(k)` is
//! `w(0,k;k,k,1)`, which is `k` times the k-Fibonacci sequence. Use
//! `k-lucas-classical(k)` for the initials `(2,k)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::sequence::{Params, SequenceKind};

type Builder = fn(&[Rational]) -> Result<Params>;

/// One catalog row, possibly taking arguments.
#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub args: &'static [&'static str],
    /// Parameter tuple with argument names in place, e.g. `w(0,1;k,k,1)`.
    pub template: &'static str,
    pub description: &'static str,
    pub kind: SequenceKind,
    build: Builder,
}

impl CatalogEntry {
    /// `key` or `key(arg,...)`.
    #[must_use]
    pub fn signature(&self) -> String {
        if self.args.is_empty() {
            self.key.to_string()
        } else {
            format!("{}({})", self.key, self.args.join(","))
        }
    }

    pub fn instantiate(&self, args: &[Rational]) -> Result<NamedSequence> {
        if args.len() != self.args.len() {
            return Err(Error::Arity {
                name: self.key.to_string(),
                expected: self.args.len(),
                got: args.len(),
            });
        }
        let name = if args.is_empty() {
            self.key.to_string()
        } else {
            let rendered: Vec<String> = args.iter().map(ToString::to_string).collect();
            format!("{}({})", self.key, rendered.join(","))
        };
        Ok(NamedSequence {
            name,
            display: self.description.to_string(),
            params: (self.build)(args)?,
            kind: self.kind,
        })
    }
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.signature(), self.template)
    }
}

/// A catalog row with its arguments filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedSequence {
    pub name: String,
    pub display: String,
    pub params: Params,
    pub kind: SequenceKind,
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn params(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    w0: &Rational,
    w1: &Rational,
) -> Result<Params> {
    Params::new(a.clone(), b.clone(), c.clone(), w0.clone(), w1.clone())
}

fn fixed(a: i64, b: i64, c: i64, w0: i64, w1: i64) -> Result<Params> {
    Params::from_ints(a, b, c, w0, w1)
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        key: "generalized-horadam",
        args: &["w0", "w1", "a", "b", "c"],
        template: "w(w0,w1;a,b,c)",
        description: "generalized bi-periodic Horadam sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[2], &x[3], &x[4], &x[0], &x[1]),
    },
    CatalogEntry {
        key: "generalized-fibonacci",
        args: &["a", "b", "c"],
        template: "w(0,1;a,b,c)",
        description: "generalized bi-periodic Fibonacci sequence",
        kind: SequenceKind::U,
        build: |x| params(&x[0], &x[1], &x[2], &int(0), &int(1)),
    },
    CatalogEntry {
        key: "generalized-lucas",
        args: &["a", "b", "c"],
        template: "w(2,b;a,b,c)",
        description: "generalized bi-periodic Lucas sequence",
        kind: SequenceKind::V,
        build: |x| params(&x[0], &x[1], &x[2], &int(2), &x[1]),
    },
    CatalogEntry {
        key: "biperiodic-fibonacci",
        args: &["a", "b"],
        template: "w(0,1;a,b,1)",
        description: "bi-periodic Fibonacci sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[0], &x[1], &int(1), &int(0), &int(1)),
    },
    CatalogEntry {
        key: "biperiodic-lucas",
        args: &["a", "b"],
        template: "w(2,a;b,a,1)",
        description: "bi-periodic Lucas sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[1], &x[0], &int(1), &int(2), &x[0]),
    },
    CatalogEntry {
        key: "biperiodic-horadam",
        args: &["w0", "w1", "a", "b"],
        template: "w(w0,w1;a,b,1)",
        description: "bi-periodic Horadam sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[2], &x[3], &int(1), &x[0], &x[1]),
    },
    CatalogEntry {
        key: "horadam",
        args: &["w0", "w1", "p", "q"],
        template: "w(w0,w1;p,p,-q)",
        description: "Horadam sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[2], &x[2], &-&x[3], &x[0], &x[1]),
    },
    CatalogEntry {
        key: "fibonacci",
        args: &[],
        template: "w(0,1;1,1,1)",
        description: "Fibonacci sequence",
        kind: SequenceKind::W,
        build: |_| fixed(1, 1, 1, 0, 1),
    },
    CatalogEntry {
        key: "lucas",
        args: &[],
        template: "w(2,1;1,1,1)",
        description: "Lucas sequence",
        kind: SequenceKind::W,
        build: |_| fixed(1, 1, 1, 2, 1),
    },
    CatalogEntry {
        key: "k-fibonacci",
        args: &["k"],
        template: "w(0,1;k,k,1)",
        description: "k-Fibonacci sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[0], &x[0], &int(1), &int(0), &int(1)),
    },
    CatalogEntry {
        key: "k-lucas",
        args: &["k"],
        template: "w(0,k;k,k,1)",
        description: "k-Lucas sequence (tabulated initials)",
        kind: SequenceKind::W,
        build: |x| params(&x[0], &x[0], &int(1), &int(0), &x[0]),
    },
    CatalogEntry {
        key: "pell",
        args: &[],
        template: "w(0,1;2,2,1)",
        description: "Pell sequence",
        kind: SequenceKind::W,
        build: |_| fixed(2, 2, 1, 0, 1),
    },
    CatalogEntry {
        key: "pell-lucas",
        args: &[],
        template: "w(2,2;2,2,1)",
        description: "Pell-Lucas sequence",
        kind: SequenceKind::W,
        build: |_| fixed(2, 2, 1, 2, 2),
    },
    CatalogEntry {
        key: "jacobsthal",
        args: &[],
        template: "w(0,1;1,1,2)",
        description: "Jacobsthal sequence",
        kind: SequenceKind::W,
        build: |_| fixed(1, 1, 2, 0, 1),
    },
    CatalogEntry {
        key: "jacobsthal-lucas",
        args: &[],
        template: "w(2,1;1,1,2)",
        description: "Jacobsthal-Lucas sequence",
        kind: SequenceKind::W,
        build: |_| fixed(1, 1, 2, 2, 1),
    },
    CatalogEntry {
        key: "k-lucas-classical",
        args: &["k"],
        template: "w(2,k;k,k,1)",
        description: "k-Lucas sequence",
        kind: SequenceKind::W,
        build: |x| params(&x[0], &x[0], &int(1), &int(2), &x[0]),
    },
];

/// Tabulated special cases, not counting the general row
/// `generalized-horadam` in front and `k-lucas-classical` at the end.
pub const SPECIAL_CASES: usize = 14;

/// All entries in table order.
#[must_use]
pub fn list() -> &'static [CatalogEntry] {
    ENTRIES
}

#[must_use]
pub fn keys() -> Vec<String> {
    ENTRIES.iter().map(CatalogEntry::signature).collect()
}

#[must_use]
pub fn entry(key: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.key == key)
}

/// Resolves `name` or `name(arg,...)`.
pub fn lookup(text: &str) -> Result<NamedSequence> {
    let text = text.trim();
    let (key, args) = match text.split_once('(') {
        Some((key, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| unknown(text))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|a| a.trim().parse())
                    .collect::<Result<Vec<Rational>>>()?
            };
            (key.trim(), args)
        }
        None => (text, Vec::new()),
    };
    entry(key).ok_or_else(|| unknown(text))?.instantiate(&args)
}

fn unknown(name: &str) -> Error {
    Error::UnknownSequence {
        name: name.to_string(),
        valid: keys().join(", "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{term_naive, terms_naive};

    fn first(name: &str, count: i64) -> Vec<Rational> {
        let s = lookup(name).unwrap();
        terms_naive(&s.params, s.kind, 0, count - 1)
    }

    fn oracle(x0: i64, x1: i64, step: impl Fn(i64, i64) -> i64, count: usize) -> Vec<Rational> {
        let mut out = vec![x0, x1];
        while out.len() < count {
            let n = out.len();
            out.push(step(out[n - 1], out[n - 2]));
        }
        out.into_iter().map(Rational::from).collect()
    }

    #[test]
    fn fixed_rows_match_classical_recurrences() {
        assert_eq!(first("fibonacci", 15), oracle(0, 1, |x, y| x + y, 15));
        assert_eq!(first("fibonacci", 15)[14], Rational::from(377));
        assert_eq!(first("lucas", 15), oracle(2, 1, |x, y| x + y, 15));
        assert_eq!(first("pell", 15), oracle(0, 1, |x, y| 2 * x + y, 15));
        assert_eq!(first("pell-lucas", 15), oracle(2, 2, |x, y| 2 * x + y, 15));
        assert_eq!(first("jacobsthal", 15), oracle(0, 1, |x, y| x + 2 * y, 15));
        assert_eq!(
            first("jacobsthal-lucas", 15),
            oracle(2, 1, |x, y| x + 2 * y, 15)
        );
    }

    #[test]
    fn examples() {
        let f = lookup("fibonacci").unwrap();
        assert_eq!(f.params.to_string(), "w(0,1;1,1,1)");
        let ints = |v: &[i64]| v.iter().copied().map(Rational::from).collect::<Vec<_>>();
        assert_eq!(first("jacobsthal", 7), ints(&[0, 1, 1, 3, 5, 11, 21]));
        assert_eq!(first("pell-lucas", 5), ints(&[2, 2, 6, 14, 34]));
        assert_eq!(first("jacobsthal-lucas", 6), ints(&[2, 1, 5, 7, 17, 31]));
        assert_eq!(first("pell", 7), ints(&[0, 1, 2, 5, 12, 29, 70]));
    }

    #[test]
    fn table_has_fourteen_special_cases() {
        assert_eq!(list().len(), SPECIAL_CASES + 2);
        assert_eq!(list()[0].key, "generalized-horadam");
        assert_eq!(list()[SPECIAL_CASES + 1].key, "k-lucas-classical");
        let mut keys: Vec<_> = list().iter().map(|e| e.key).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), list().len());
    }

    #[test]
    fn fixed_templates_equal_params() {
        for e in list().iter().filter(|e| e.args.is_empty()) {
            assert_eq!(lookup(e.key).unwrap().params.to_string(), e.template);
        }
    }

    #[test]
    fn names_round_trip() {
        for name in [
            "fibonacci",
            "k-fibonacci(3)",
            "horadam(2,1,1,-2)",
            "biperiodic-lucas(2,3)",
            "generalized-horadam(1,1,2,3,1)",
            "k-lucas-classical(1/2)",
        ] {
            assert_eq!(lookup(name).unwrap().name, name);
        }
        assert_eq!(lookup(" fibonacci() ").unwrap().name, "fibonacci");
    }

    #[test]
    fn templates_substitute_arguments() {
        let q = |s: &str| s.parse::<Rational>().unwrap();
        let h = lookup("horadam(2,1,3,5)").unwrap();
        // H_n = p H_{n-1} - q H_{n-2}
        let mut hs = vec![2i64, 1];
        for n in 2..15 {
            hs.push(3 * hs[n - 1] - 5 * hs[n - 2]);
        }
        for (n, h_n) in hs.iter().enumerate() {
            assert_eq!(
                term_naive(&h.params, h.kind, n as i64),
                Rational::from(*h_n)
            );
        }
        let bl = lookup("biperiodic-lucas(2,3)").unwrap();
        assert_eq!(bl.params.to_string(), "w(2,2;3,2,1)");
        let kl = lookup("k-lucas(3)").unwrap();
        let kf = lookup("k-fibonacci(3)").unwrap();
        for n in 0..12 {
            assert_eq!(
                term_naive(&kl.params, kl.kind, n),
                q("3") * term_naive(&kf.params, kf.kind, n)
            );
        }
        let klc = lookup("k-lucas-classical(1)").unwrap();
        assert_eq!(klc.params, lookup("lucas").unwrap().params);
        let gl = lookup("generalized-lucas(2,3,1)").unwrap();
        assert_eq!(gl.kind, SequenceKind::V);
        assert_eq!(term_naive(&gl.params, gl.kind, 4), q("62"));
    }

    #[test]
    fn errors() {
        match lookup("fibonaci") {
            Err(Error::UnknownSequence { valid, .. }) => assert!(valid.contains("k-fibonacci(k)")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            lookup("k-fibonacci"),
            Err(Error::Arity {
                expected: 1,
                got: 0,
                ..
            })
        ));
        assert!(matches!(lookup("pell(1)"), Err(Error::Arity { .. })));
        assert_eq!(lookup("k-fibonacci(0)"), Err(Error::ZeroParameter("a")));
        assert_eq!(lookup("horadam(0,1,1,0)"), Err(Error::ZeroParameter("c")));
        assert!(matches!(
            lookup("k-fibonacci(1.5)"),
            Err(Error::ParseRational(_))
        ));
        assert!(lookup("k-fibonacci(2").is_err());
    }
}
