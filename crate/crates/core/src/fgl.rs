//! p-series of formal group laws and the quotient rings they present.
//!
//! The p-series of the p-typical formal group law is used only through its
//! canonical representative mod `I_inf^2`,
//!
//! ```text
//! [p](y) = p*y + v1*y^p + v2*y^(p^2) + ...
//! ```
//!
//! together with the Honda form `v_n * y^(p^n)` over the height-n theories.
//! Formal power series in y are truncated at an explicit maximal y-exponent;
//! `B*[y]` always means the truncated power series ring here.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use thiserror::Error;

use crate::coeff::{
    default_degree_bound, reduce_mod, Coef, CoeffElement, IdealSpec, Ring, Theory, TheoryKind,
};
use crate::linalg;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FglError {
    #[error("bound {bound} too small to contain leading term y^{leading}")]
    BoundTooSmall { bound: u32, leading: u64 },
    #[error("the p-typical p-series lives over BP, not {0}")]
    WrongTheoryForPTypical(String),
    #[error("the Honda form of height {n} needs theory P({n}), k({n}) or K({n}), got {theory}")]
    WrongTheoryForHonda { n: u32, theory: String },
    #[error("no one-generator quotient ring over {0}: the defining relation degenerates")]
    UnsupportedTheory(String),
    #[error(transparent)]
    Ring(#[from] crate::coeff::RingError),
}

/// Which p-series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FglKind {
    /// The representative of `[p](y)` mod `I_inf^2` over `BP`.
    PTypicalModISq,
    /// The Honda form `v_n y^(p^n)` over a height-n theory.
    Honda(u32),
}

/// A truncated polynomial/power series in one variable with coefficients in
/// a coefficient ring. Stored coefficients are nonzero and in the ring's
/// normal form; exponents above `bound` are discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub variable: String,
    /// motivic bidegree of the variable, (2, 1) for the Chern class y
    pub var_bidegree: (i64, i64),
    coeffs: BTreeMap<u32, CoeffElement>,
    bound: u32,
}

impl TruncatedSeries {
    pub fn zero(bound: u32) -> TruncatedSeries {
        TruncatedSeries {
            variable: "y".to_string(),
            var_bidegree: (2, 1),
            coeffs: BTreeMap::new(),
            bound,
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coefficient(&self, k: u32) -> Option<&CoeffElement> {
        self.coeffs.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &CoeffElement)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert(&mut self, ring: &Ring, k: u32, c: CoeffElement) {
        if k > self.bound || c.is_zero() {
            return;
        }
        let total = match self.coeffs.remove(&k) {
            Some(old) => ring.add(&old, &c),
            None => c,
        };
        if !total.is_zero() {
            self.coeffs.insert(k, total);
        }
    }

    pub fn add(&self, ring: &Ring, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.insert(ring, k, c.clone());
        }
        out
    }

    pub fn neg(&self, ring: &Ring) -> TruncatedSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = ring.neg(c);
        }
        out
    }

    /// Multiply by `c * var^k`.
    pub fn shift_mul(&self, ring: &Ring, c: &CoeffElement, k: u32) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.bound);
        out.variable = self.variable.clone();
        out.var_bidegree = self.var_bidegree;
        for (e, coeff) in self.terms() {
            if e + k <= self.bound {
                out.insert(ring, e + k, ring.mul(coeff, c));
            }
        }
        out
    }

    /// Every term has topological degree `total`, where the coefficient of
    /// `var^k` must then have degree `total - 2k`.
    pub fn is_homogeneous_of_degree(&self, total: i64) -> bool {
        self.coeffs.iter().all(|(&k, c)| {
            c.degree()
                .is_some_and(|d| d + self.var_bidegree.0 * k as i64 == total)
        })
    }

    /// Map every coefficient into the quotient by a named ideal.
    pub fn reduce(&self, ideal: &IdealSpec) -> Result<TruncatedSeries, FglError> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in self.terms() {
            let r = reduce_mod(c, ideal)?;
            if !r.is_zero() {
                coeffs.insert(k, r);
            }
        }
        Ok(TruncatedSeries {
            variable: self.variable.clone(),
            var_bidegree: self.var_bidegree,
            coeffs,
            bound: self.bound,
        })
    }
}

impl fmt::Display for TruncatedSeries {
    /// Lowest power first: `2*y + v1*y^2 + v2*y^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let cs = c.to_string();
            let (negative, mag) = match cs.strip_prefix('-') {
                Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, cs),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = if k == 0 {
                String::new()
            } else if k == 1 {
                self.variable.clone()
            } else {
                format!("{}^{}", self.variable, k)
            };
            if var.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", var)?;
            } else if c.num_terms() > 1 {
                write!(f, "({})*{}", mag, var)?;
            } else {
                write!(f, "{}*{}", mag, var)?;
            }
        }
        Ok(())
    }
}

fn series_ring(theory: Theory, ybound: u32) -> Ring {
    let bound = default_degree_bound(theory.prime()).max(2 * ybound as i64 + 2);
    Ring::with_bound(theory, bound)
}

/// The p-series of the given formal group law, truncated at `bound`.
///
/// ```
/// use morava_core::coeff::Theory;
/// use morava_core::fgl::{p_series, FglKind};
///
/// let s = p_series(Theory::bp(2).unwrap(), FglKind::PTypicalModISq, 8).unwrap();
/// assert_eq!(s.to_string(), "2*y + v1*y^2 + v2*y^4 + v3*y^8");
/// ```
pub fn p_series(theory: Theory, kind: FglKind, bound: u32) -> Result<TruncatedSeries, FglError> {
    assert!(bound >= 1, "bound must be at least 1");
    let ring = series_ring(theory, bound);
    let p = theory.prime();
    let mut s = TruncatedSeries::zero(bound);
    match kind {
        FglKind::PTypicalModISq => {
            if theory.kind() != TheoryKind::Bp {
                return Err(FglError::WrongTheoryForPTypical(theory.to_string()));
            }
            s.insert(&ring, 1, ring.scalar(p as i64));
            let mut i = 1u32;
            loop {
                let pk = (p as u64).checked_pow(i).filter(|&pk| pk <= bound as u64);
                let Some(pk) = pk else { break };
                s.insert(&ring, pk as u32, ring.v(i));
                i += 1;
            }
        }
        FglKind::Honda(n) => {
            let ok = matches!(
                theory.kind(),
                TheoryKind::P | TheoryKind::KConn | TheoryKind::K
            ) && theory.height() == n;
            if !ok {
                return Err(FglError::WrongTheoryForHonda {
                    n,
                    theory: theory.to_string(),
                });
            }
            let leading = (p as u64).pow(n);
            if leading > bound as u64 {
                return Err(FglError::BoundTooSmall { bound, leading });
            }
            s.insert(&ring, leading as u32, ring.v(n));
        }
    }
    Ok(s)
}

/// The one-generator quotient ring `h*[y]/(relation)` describing the theory
/// of the cyclic group of order p:
///
/// * over `BP`: relation `[p](y)` (mod `I_inf^2` representative),
/// * over `P(n)`: relation `v_n y^(p^n) + v_{n+1} y^(p^(n+1)) + ...`,
/// * over `k(n)`: relation `v_n y^(p^n)`,
/// * over `K(n)`: relation `y^(p^n)` (the unit `v_n` is absorbed).
///
/// `normal_form` repeatedly rewrites the lowest-degree relation term; each
/// rewrite strictly raises the y-exponent, so the rewriting is confluent
/// within the truncation bound.
#[derive(Debug, Clone)]
pub struct BzpRing {
    theory: Theory,
    ring: Ring,
    ybound: u32,
    relation: TruncatedSeries,
}

impl BzpRing {
    pub fn new(theory: Theory, ybound: u32) -> Result<BzpRing, FglError> {
        assert!(ybound >= 1, "ybound must be at least 1");
        let ring = series_ring(theory, ybound);
        let p = theory.prime();
        let n = theory.height();
        let relation = match theory.kind() {
            TheoryKind::Bp => p_series(theory, FglKind::PTypicalModISq, ybound)?,
            TheoryKind::P => {
                let bp = Theory::bp(p).expect("valid prime");
                p_series(bp, FglKind::PTypicalModISq, ybound)?.reduce(&IdealSpec::I(n))?
            }
            TheoryKind::KConn => {
                let mut s = TruncatedSeries::zero(ybound);
                let leading = (p as u64).pow(n);
                if leading > ybound as u64 {
                    return Err(FglError::BoundTooSmall {
                        bound: ybound,
                        leading,
                    });
                }
                s.insert(&ring, leading as u32, ring.v(n));
                s
            }
            TheoryKind::K => {
                let mut s = TruncatedSeries::zero(ybound);
                let leading = (p as u64).pow(n);
                if leading > ybound as u64 {
                    return Err(FglError::BoundTooSmall {
                        bound: ybound,
                        leading,
                    });
                }
                s.insert(&ring, leading as u32, ring.one());
                s
            }
            TheoryKind::Hz | TheoryKind::HFp | TheoryKind::BpTrunc => {
                return Err(FglError::UnsupportedTheory(theory.to_string()));
            }
        };
        Ok(BzpRing {
            theory,
            ring,
            ybound,
            relation,
        })
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ybound(&self) -> u32 {
        self.ybound
    }

    /// The defining relation, lowest term first.
    pub fn relation(&self) -> &TruncatedSeries {
        &self.relation
    }

    pub fn poly(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.ybound)
    }

    pub fn monomial(&self, c: CoeffElement, k: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.ybound);
        s.insert(&self.ring, k, c);
        s
    }

    /// Rewrite until no term contains the relation's leading monomial.
    pub fn normal_form(&self, poly: &TruncatedSeries) -> TruncatedSeries {
        let p = self.theory.prime();
        let mut current = poly.clone();
        loop {
            let mut rewrite: Option<(u32, CoeffElement, TruncatedSeries)> = None;
            'scan: for (k, c) in current.terms() {
                match self.theory.kind() {
                    TheoryKind::Bp => {
                        // eliminate p*y^k, k >= 1: p*y = -(v1 y^p + ...)
                        if k == 0 {
                            continue;
                        }
                        for (m, coef) in c.terms() {
                            if let Coef::Q(q) = coef {
                                if (q.numer() % BigInt::from(p)) == BigInt::from(0) {
                                    let over_p =
                                        q / num::BigRational::from_integer(BigInt::from(p));
                                    let cofactor = self.ring.monomial(m.clone(), Coef::Q(over_p));
                                    let tail = self.relation_tail(1);
                                    let repl = tail.neg(&self.ring).shift_mul(
                                        &self.ring,
                                        &cofactor,
                                        k - 1,
                                    );
                                    let removed = self.ring.monomial(m.clone(), coef.clone());
                                    rewrite = Some((k, removed, repl));
                                    break 'scan;
                                }
                            }
                        }
                    }
                    TheoryKind::P | TheoryKind::KConn => {
                        let n = self.theory.height();
                        let pn = (p as u64).pow(n) as u32;
                        if k < pn {
                            continue;
                        }
                        for (m, coef) in c.terms() {
                            if m.exponent(n) >= 1 {
                                let cofactor = self.ring.monomial(
                                    m.mul(&crate::coeff::VMonomial::gen(n, -1)),
                                    coef.clone(),
                                );
                                let tail = self.relation_tail(pn);
                                let repl =
                                    tail.neg(&self.ring)
                                        .shift_mul(&self.ring, &cofactor, k - pn);
                                let removed = self.ring.monomial(m.clone(), coef.clone());
                                rewrite = Some((k, removed, repl));
                                break 'scan;
                            }
                        }
                    }
                    TheoryKind::K => {
                        let n = self.theory.height();
                        let pn = (p as u64).pow(n) as u32;
                        if k >= pn {
                            rewrite = Some((k, c.clone(), TruncatedSeries::zero(self.ybound)));
                            break 'scan;
                        }
                    }
                    _ => unreachable!(),
                }
            }
            match rewrite {
                None => return current,
                Some((k, removed, replacement)) => {
                    let mut minus = self.poly();
                    minus.insert(&self.ring, k, self.ring.neg(&removed));
                    current = current
                        .add(&self.ring, &minus)
                        .add(&self.ring, &replacement);
                }
            }
        }
    }

    /// The relation with the term of exponent `leading` removed.
    fn relation_tail(&self, leading: u32) -> TruncatedSeries {
        let mut tail = self.relation.clone();
        tail.coeffs.remove(&leading);
        tail
    }

    /// Monomial basis `1, y, ..., y^(rank-1)` over `K(n)*`: everything at
    /// and above `y^(p^n)` rewrites to zero.
    pub fn free_rank(&self) -> Option<u64> {
        if self.theory.kind() == TheoryKind::K {
            Some((self.theory.prime() as u64).pow(self.theory.height()))
        } else {
            None
        }
    }
}

/// Check that multiplication by `v_n` is injective on the span of the
/// monomial basis `{y^k : k < bound}` of a `P(n)` quotient ring.
///
/// Images are computed in a ring whose y-bound is extended by `p^(n+1)` so
/// that each image keeps its leading term instead of being truncated away;
/// injectivity is then exact linear algebra over F_p.
pub fn vn_torsion_check(qring: &BzpRing) -> bool {
    assert_eq!(
        qring.theory().kind(),
        TheoryKind::P,
        "torsion check applies to P(n) quotient rings"
    );
    let p = qring.theory().prime() as u64;
    let n = qring.theory().height();
    let extended_bound = qring.ybound() + p.pow(n + 1) as u32;
    let extended = BzpRing::new(qring.theory(), extended_bound).expect("extension is valid");
    let mut images = Vec::new();
    for k in 0..qring.ybound() {
        let vy = extended.monomial(extended.ring().v(n), k);
        images.push(extended.normal_form(&vy));
    }
    // coordinates: (y-exponent, v-monomial) pairs occurring in any image
    let mut coords = std::collections::BTreeMap::new();
    for img in &images {
        for (k, c) in img.terms() {
            for (m, _) in c.terms() {
                let key = (k, m.clone());
                let next = coords.len();
                coords.entry(key).or_insert(next);
            }
        }
    }
    let dim = coords.len();
    let mut rows = Vec::new();
    for img in &images {
        let mut row = vec![0u64; dim];
        for (k, c) in img.terms() {
            for (m, coef) in c.terms() {
                let idx = coords[&(k, m.clone())];
                row[idx] = match coef {
                    Coef::Fp(r) => *r,
                    Coef::Q(_) => unreachable!("P(n) scalars are mod p"),
                };
            }
        }
        rows.push(row);
    }
    linalg::rank(p, &rows) == images.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(p: u32) -> Theory {
        Theory::bp(p).unwrap()
    }

    #[test]
    fn p_series_p2_bound8() {
        let s = p_series(bp(2), FglKind::PTypicalModISq, 8).unwrap();
        assert_eq!(s.to_string(), "2*y + v1*y^2 + v2*y^4 + v3*y^8");
    }

    #[test]
    fn p_series_p3_small_bound() {
        let s = p_series(bp(3), FglKind::PTypicalModISq, 2).unwrap();
        assert_eq!(s.to_string(), "3*y");
    }

    #[test]
    fn honda_forms() {
        let k1 = Theory::morava_k(1, 2).unwrap();
        let s = p_series(k1, FglKind::Honda(1), 4).unwrap();
        assert_eq!(s.to_string(), "v1*y^2");
        assert!(matches!(
            p_series(k1, FglKind::Honda(1), 1),
            Err(FglError::BoundTooSmall { .. })
        ));
        assert!(matches!(
            p_series(bp(2), FglKind::Honda(1), 4),
            Err(FglError::WrongTheoryForHonda { .. })
        ));
    }

    #[test]
    fn p_series_is_homogeneous_of_degree_two() {
        for p in [2u32, 3, 5] {
            let s = p_series(bp(p), FglKind::PTypicalModISq, p.pow(3)).unwrap();
            assert!(s.is_homogeneous_of_degree(2));
        }
    }

    #[test]
    fn reduction_matches_height_series() {
        // reducing [p](y) mod I(n) kills p*y and v_i y^(p^i) for i < n
        let s = p_series(bp(2), FglKind::PTypicalModISq, 16).unwrap();
        let reduced = s.reduce(&IdealSpec::I(2)).unwrap();
        assert_eq!(reduced.to_string(), "v2*y^4 + v3*y^8 + v4*y^16");
        let ring = BzpRing::new(Theory::p_n(2, 2).unwrap(), 16).unwrap();
        assert_eq!(ring.relation(), &reduced);
    }

    #[test]
    fn k_n_ring_is_free_of_rank_p_to_n() {
        for (p, n) in [(2u32, 1u32), (2, 2), (3, 1)] {
            let theory = Theory::morava_k(n, p).unwrap();
            let ybound = p.pow(n) * 2;
            let q = BzpRing::new(theory, ybound).unwrap();
            let rank = q.free_rank().unwrap();
            assert_eq!(rank, (p as u64).pow(n));
            // y^(p^n) and everything above dies; below survives
            let r = q.ring().clone();
            for k in 0..=ybound {
                let nf = q.normal_form(&q.monomial(r.one(), k));
                if (k as u64) < rank {
                    assert!(!nf.is_zero(), "y^{} should survive", k);
                } else {
                    assert!(nf.is_zero(), "y^{} should die", k);
                }
            }
        }
    }

    #[test]
    fn p_n_rewrite_direction() {
        // v_n y^(p^n) -> -(v_{n+1} y^(p^(n+1)) + ...) with signs mod p
        let q = BzpRing::new(Theory::p_n(1, 2).unwrap(), 8).unwrap();
        let lead = q.monomial(q.ring().v(1), 2);
        let nf = q.normal_form(&lead);
        assert_eq!(nf.to_string(), "v2*y^4 + v3*y^8");
        // idempotent
        assert_eq!(q.normal_form(&nf), nf);
        // at p = 3 the sign is visible: -1 = 2
        let q3 = BzpRing::new(Theory::p_n(1, 3).unwrap(), 27).unwrap();
        let lead3 = q3.monomial(q3.ring().v(1), 3);
        assert_eq!(
            q3.normal_form(&lead3).to_string(),
            "2*v2*y^9 + 2*v3*y^27"
        );
    }

    #[test]
    fn bp_rewrite_and_re_add() {
        // normal_form(2y) = 2y - [2](y); adding [2](y) back gives 2y
        let q = BzpRing::new(bp(2), 8).unwrap();
        let two_y = q.monomial(q.ring().scalar(2), 1);
        let nf = q.normal_form(&two_y);
        assert_eq!(nf.to_string(), "-v1*y^2 - v2*y^4 - v3*y^8");
        let readd = nf.add(q.ring(), q.relation());
        assert_eq!(readd, two_y);
        // 4y rewrites twice
        let four_y = q.monomial(q.ring().scalar(4), 1);
        let nf4 = q.normal_form(&four_y);
        assert_eq!(q.normal_form(&nf4), nf4);
        for (_, c) in nf4.terms() {
            for (_, coef) in c.terms() {
                if let Coef::Q(q) = coef {
                    assert!((q.numer() % BigInt::from(2)) != BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn normal_form_preserves_degree() {
        let q = BzpRing::new(Theory::p_n(1, 3).unwrap(), 27).unwrap();
        let x = q.monomial(q.ring().v(1), 5);
        let nf = q.normal_form(&x);
        let d = q.ring().theory().v_degree(1) + 2 * 5;
        assert!(nf.is_homogeneous_of_degree(d));
    }

    #[test]
    fn no_vn_torsion() {
        for (p, n, bound) in [(2u32, 1u32, 16u32), (3, 2, 27), (2, 2, 8), (3, 1, 9)] {
            let q = BzpRing::new(Theory::p_n(n, p).unwrap(), bound).unwrap();
            assert!(vn_torsion_check(&q), "(p,n,bound)=({},{},{})", p, n, bound);
        }
        // degenerate bound: only y^0
        let q = BzpRing::new(Theory::p_n(1, 2).unwrap(), 1).unwrap();
        assert!(vn_torsion_check(&q));
    }

    #[test]
    fn unsupported_theories_error() {
        assert!(matches!(
            BzpRing::new(Theory::hfp(2).unwrap(), 4),
            Err(FglError::UnsupportedTheory(_))
        ));
        assert!(matches!(
            BzpRing::new(Theory::hz(2).unwrap(), 4),
            Err(FglError::UnsupportedTheory(_))
        ));
    }
}
