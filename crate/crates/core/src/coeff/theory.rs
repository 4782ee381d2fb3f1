use std::fmt;

use thiserror::Error;

/// Errors raised while constructing or parsing a theory tag.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("invalid height {n} for {kind}: height must be at least {min}")]
    InvalidHeight { kind: String, n: u32, min: u32 },
    #[error("{0} is not a small prime")]
    NotPrime(u64),
    #[error("cannot parse theory tag `{0}`")]
    BadTag(String),
}

/// The family a coefficient ring belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryKind {
    /// `BP* = Z_(p)[v_1, v_2, ...]`
    Bp,
    /// `P(n)* = Z/p[v_n, v_{n+1}, ...]`, n >= 1
    P,
    /// connective `k(n)* = Z/p[v_n]`, n >= 1
    KConn,
    /// periodic `K(n)* = Z/p[v_n, v_n^{-1}]`, n >= 1
    K,
    /// truncated `BP<n>* = Z_(p)[v_1, ..., v_n]`, n >= 0
    BpTrunc,
    /// `HZ` with coefficients `Z_(p)` and no generators
    Hz,
    /// `HFp` with coefficients `Z/p` and no generators
    HFp,
}

/// Whether scalars of a theory are p-local rationals or mod-p residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    Fp,
}

/// How a generator `v_i` sits inside a theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// killed by the defining ideal
    Zero,
    /// an ordinary polynomial generator
    Poly,
    /// an invertible generator (only `v_n` in `K(n)`)
    Invertible,
}

/// A theory tag: kind, height and prime.
///
/// Serialized as short strings such as `BP@p=3`, `P(2)@p=2`, `K(1)@p=2`,
/// `BP<1>@p=2`, `k(2)@p=3`, `HZ@p=2`, `HFp@p=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Theory {
    kind: TheoryKind,
    n: u32,
    p: u32,
}

fn check_prime(p: u32) -> Result<u32, TheoryError> {
    let ok = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if ok {
        Ok(p)
    } else {
        Err(TheoryError::NotPrime(p as u64))
    }
}

impl Theory {
    pub fn new(kind: TheoryKind, n: u32, p: u32) -> Result<Self, TheoryError> {
        let p = check_prime(p)?;
        let min = match kind {
            TheoryKind::P | TheoryKind::KConn | TheoryKind::K => 1,
            _ => 0,
        };
        if n < min {
            return Err(TheoryError::InvalidHeight {
                kind: kind_name(kind).to_string(),
                n,
                min,
            });
        }
        Ok(Theory { kind, n, p })
    }

    pub fn bp(p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::Bp, 0, p)
    }

    pub fn p_n(n: u32, p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::P, n, p)
    }

    pub fn k_connective(n: u32, p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::KConn, n, p)
    }

    pub fn morava_k(n: u32, p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::K, n, p)
    }

    pub fn bp_truncated(n: u32, p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::BpTrunc, n, p)
    }

    pub fn hz(p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::Hz, 0, p)
    }

    pub fn hfp(p: u32) -> Result<Self, TheoryError> {
        Theory::new(TheoryKind::HFp, 0, p)
    }

    pub fn kind(&self) -> TheoryKind {
        self.kind
    }

    /// Height parameter; 0 for `BP`, `HZ`, `HFp`.
    pub fn height(&self) -> u32 {
        self.n
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn scalar_mode(&self) -> ScalarMode {
        match self.kind {
            TheoryKind::Bp | TheoryKind::BpTrunc | TheoryKind::Hz => ScalarMode::Rational,
            TheoryKind::P | TheoryKind::KConn | TheoryKind::K | TheoryKind::HFp => ScalarMode::Fp,
        }
    }

    /// How `v_i` (i >= 1) sits in this theory.
    pub fn support(&self, i: u32) -> Support {
        debug_assert!(i >= 1, "generator indices start at 1");
        match self.kind {
            TheoryKind::Bp => Support::Poly,
            TheoryKind::P => {
                if i >= self.n {
                    Support::Poly
                } else {
                    Support::Zero
                }
            }
            TheoryKind::KConn => {
                if i == self.n {
                    Support::Poly
                } else {
                    Support::Zero
                }
            }
            TheoryKind::K => {
                if i == self.n {
                    Support::Invertible
                } else {
                    Support::Zero
                }
            }
            TheoryKind::BpTrunc => {
                if i <= self.n {
                    Support::Poly
                } else {
                    Support::Zero
                }
            }
            TheoryKind::Hz | TheoryKind::HFp => Support::Zero,
        }
    }

    /// Index of the first generator present, if any.
    pub fn first_generator(&self) -> Option<u32> {
        match self.kind {
            TheoryKind::Bp => Some(1),
            TheoryKind::P | TheoryKind::KConn | TheoryKind::K => Some(self.n),
            TheoryKind::BpTrunc => {
                if self.n >= 1 {
                    Some(1)
                } else {
                    None
                }
            }
            TheoryKind::Hz | TheoryKind::HFp => None,
        }
    }

    /// Topological degree of `v_i`: `-2(p^i - 1)`.
    pub fn v_degree(&self, i: u32) -> i64 {
        -2 * ((self.p as i64).pow(i) - 1)
    }

    pub fn parse(tag: &str) -> Result<Self, TheoryError> {
        let bad = || TheoryError::BadTag(tag.to_string());
        let (head, ptail) = tag.split_once("@p=").ok_or_else(bad)?;
        let p: u32 = ptail.trim().parse().map_err(|_| bad())?;
        Theory::parse_short(head.trim(), p)
    }

    /// Parse the part before `@p=`, with the prime supplied separately.
    ///
    /// Accepts both the canonical spellings (`P(2)`, `K(1)`, `BP<1>`) and the
    /// compact CLI forms (`P2`, `K1`, `BP1`).
    pub fn parse_short(head: &str, p: u32) -> Result<Self, TheoryError> {
        let bad = || TheoryError::BadTag(head.to_string());
        let parse_n = |s: &str| -> Result<u32, TheoryError> {
            let s = s.trim_matches(|c| c == '(' || c == ')');
            s.parse().map_err(|_| bad())
        };
        if head == "BP" {
            Theory::bp(p)
        } else if head == "HZ" {
            Theory::hz(p)
        } else if head == "HFp" {
            Theory::hfp(p)
        } else if let Some(rest) = head.strip_prefix("BP<") {
            let n = parse_n(rest.strip_suffix('>').ok_or_else(bad)?)?;
            Theory::bp_truncated(n, p)
        } else if let Some(rest) = head.strip_prefix("BP") {
            Theory::bp_truncated(parse_n(rest)?, p)
        } else if let Some(rest) = head.strip_prefix("P") {
            Theory::p_n(parse_n(rest)?, p)
        } else if let Some(rest) = head.strip_prefix("k") {
            Theory::k_connective(parse_n(rest)?, p)
        } else if let Some(rest) = head.strip_prefix("K") {
            Theory::morava_k(parse_n(rest)?, p)
        } else {
            Err(bad())
        }
    }
}

fn kind_name(kind: TheoryKind) -> &'static str {
    match kind {
        TheoryKind::Bp => "BP",
        TheoryKind::P => "P(n)",
        TheoryKind::KConn => "k(n)",
        TheoryKind::K => "K(n)",
        TheoryKind::BpTrunc => "BP<n>",
        TheoryKind::Hz => "HZ",
        TheoryKind::HFp => "HFp",
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TheoryKind::Bp => write!(f, "BP@p={}", self.p),
            TheoryKind::P => write!(f, "P({})@p={}", self.n, self.p),
            TheoryKind::KConn => write!(f, "k({})@p={}", self.n, self.p),
            TheoryKind::K => write!(f, "K({})@p={}", self.n, self.p),
            TheoryKind::BpTrunc => write!(f, "BP<{}>@p={}", self.n, self.p),
            TheoryKind::Hz => write!(f, "HZ@p={}", self.p),
            TheoryKind::HFp => write!(f, "HFp@p={}", self.p),
        }
    }
}

/// The default truncation bound `2(p^4 - 1)`, enough for the classical
/// example computations at small primes.
pub fn default_degree_bound(p: u32) -> i64 {
    2 * ((p as i64).pow(4) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for tag in [
            "BP@p=3",
            "P(2)@p=2",
            "K(1)@p=2",
            "BP<1>@p=2",
            "k(2)@p=3",
            "HZ@p=2",
            "HFp@p=5",
        ] {
            let t = Theory::parse(tag).unwrap();
            assert_eq!(t.to_string(), tag);
        }
    }

    #[test]
    fn invalid_heights_rejected() {
        assert!(Theory::morava_k(0, 2).is_err());
        assert!(Theory::p_n(0, 3).is_err());
        assert!(Theory::bp_truncated(0, 2).is_ok());
    }

    #[test]
    fn rejects_composite_prime() {
        assert_eq!(Theory::bp(6), Err(TheoryError::NotPrime(6)));
        assert!(Theory::bp(13).is_ok());
    }

    #[test]
    fn generator_support() {
        let p2 = Theory::p_n(2, 2).unwrap();
        assert_eq!(p2.support(1), Support::Zero);
        assert_eq!(p2.support(2), Support::Poly);
        assert_eq!(p2.support(5), Support::Poly);
        let k1 = Theory::morava_k(1, 2).unwrap();
        assert_eq!(k1.support(1), Support::Invertible);
        assert_eq!(k1.support(2), Support::Zero);
        let t1 = Theory::bp_truncated(1, 2).unwrap();
        assert_eq!(t1.support(1), Support::Poly);
        assert_eq!(t1.support(2), Support::Zero);
    }

    #[test]
    fn v_degrees() {
        let bp = Theory::bp(2).unwrap();
        assert_eq!(bp.v_degree(1), -2);
        assert_eq!(bp.v_degree(2), -6);
        assert_eq!(bp.v_degree(3), -14);
        let bp3 = Theory::bp(3).unwrap();
        assert_eq!(bp3.v_degree(1), -4);
        assert_eq!(bp3.v_degree(2), -16);
    }

    #[test]
    fn short_forms() {
        assert_eq!(
            Theory::parse_short("P1", 2).unwrap(),
            Theory::p_n(1, 2).unwrap()
        );
        assert_eq!(
            Theory::parse_short("K2", 3).unwrap(),
            Theory::morava_k(2, 3).unwrap()
        );
        assert_eq!(
            Theory::parse_short("BP<2>", 3).unwrap(),
            Theory::bp_truncated(2, 3).unwrap()
        );
    }
}
