use std::collections::BTreeMap;

use thiserror::Error;

use super::element::{Coef, CoeffElement, VMonomial};
use super::ideal::IdealSpec;
use super::theory::{default_degree_bound, ScalarMode, Support, Theory};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("ideal references v{index} outside the support of {theory}")]
    GeneratorOutsideSupport { theory: String, index: u32 },
    #[error("reduction mod p requires p-local scalars, got {0}")]
    ScalarsNotReducible(String),
    #[error("reduce_mod supports only the named ideals I(n), I(inf) and J(m), got {0}")]
    UnsupportedIdeal(String),
    #[error("no named quotient of {theory} by {ideal}")]
    NoQuotientTheory { theory: String, ideal: String },
}

/// A handle on a coefficient ring: a theory tag plus a truncation bound.
///
/// Produces [`CoeffElement`] values and keeps every result in normal form:
/// scalars reduced, killed generators dropped, zero terms pruned, and terms
/// of absolute topological degree above the bound discarded.
///
/// ```
/// use morava_core::coeff::{Ring, Theory};
///
/// // v1 dies in P(2), and v1 * v1^-1 = 1 in K(1)
/// let p2 = Ring::new(Theory::p_n(2, 2).unwrap());
/// assert!(p2.v(1).is_zero());
/// let k1 = Ring::new(Theory::morava_k(1, 2).unwrap());
/// assert_eq!(k1.mul(&k1.v(1), &k1.v_pow(1, -1)), k1.one());
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring {
    theory: Theory,
    bound: i64,
}

impl Ring {
    pub fn new(theory: Theory) -> Ring {
        Ring {
            theory,
            bound: default_degree_bound(theory.prime()),
        }
    }

    pub fn with_bound(theory: Theory, bound: i64) -> Ring {
        Ring { theory, bound }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn prime(&self) -> u32 {
        self.theory.prime()
    }

    fn mode(&self) -> ScalarMode {
        self.theory.scalar_mode()
    }

    pub fn zero(&self) -> CoeffElement {
        CoeffElement::from_terms(self.theory, BTreeMap::new())
    }

    pub fn one(&self) -> CoeffElement {
        self.scalar(1)
    }

    pub fn scalar(&self, k: i64) -> CoeffElement {
        let mut terms = BTreeMap::new();
        terms.insert(
            VMonomial::one(),
            Coef::from_int(k, self.mode(), self.prime()),
        );
        self.normalize(terms)
    }

    /// The image of `v_i` in this theory (zero when the defining ideal
    /// kills it).
    pub fn v(&self, i: u32) -> CoeffElement {
        self.v_pow(i, 1)
    }

    /// `v_i^e`; negative exponents are only meaningful in `K(n)`.
    pub fn v_pow(&self, i: u32, e: i64) -> CoeffElement {
        assert!(i >= 1, "generator indices start at 1");
        if e < 0 {
            assert_eq!(
                self.theory.support(i),
                Support::Invertible,
                "negative exponent of v{} in {}",
                i,
                self.theory
            );
        }
        let mut terms = BTreeMap::new();
        terms.insert(
            VMonomial::gen(i, e),
            Coef::from_int(1, self.mode(), self.prime()),
        );
        self.normalize(terms)
    }

    pub fn monomial(&self, m: VMonomial, c: Coef) -> CoeffElement {
        let mut terms = BTreeMap::new();
        terms.insert(m, c);
        self.normalize(terms)
    }

    fn check(&self, x: &CoeffElement) {
        assert_eq!(x.theory(), self.theory, "element from a different ring");
    }

    fn normalize(&self, terms: BTreeMap<VMonomial, Coef>) -> CoeffElement {
        let p = self.prime();
        let mut out: BTreeMap<VMonomial, Coef> = BTreeMap::new();
        'term: for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (i, e) in m.exponents() {
                match self.theory.support(i) {
                    Support::Zero => continue 'term,
                    Support::Poly => {
                        assert!(e >= 0, "negative exponent of v{} in {}", i, self.theory)
                    }
                    Support::Invertible => {}
                }
            }
            if m.degree(p).abs() > self.bound {
                continue;
            }
            debug_assert!(c.denominator_p_free(p), "denominator divisible by p");
            out.insert(m, c);
        }
        CoeffElement::from_terms(self.theory, out)
    }

    pub fn add(&self, a: &CoeffElement, b: &CoeffElement) -> CoeffElement {
        self.check(a);
        self.check(b);
        let p = self.prime();
        let mut terms: BTreeMap<VMonomial, Coef> =
            a.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        for (m, c) in b.terms() {
            match terms.get_mut(m) {
                Some(existing) => *existing = existing.add(c, p),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        self.normalize(terms)
    }

    pub fn neg(&self, a: &CoeffElement) -> CoeffElement {
        self.check(a);
        let p = self.prime();
        let terms = a.terms().map(|(m, c)| (m.clone(), c.neg(p))).collect();
        self.normalize(terms)
    }

    pub fn sub(&self, a: &CoeffElement, b: &CoeffElement) -> CoeffElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &CoeffElement, b: &CoeffElement) -> CoeffElement {
        self.check(a);
        self.check(b);
        let p = self.prime();
        let mut terms: BTreeMap<VMonomial, Coef> = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let m = ma.mul(mb);
                let c = ca.mul(cb, p);
                match terms.get_mut(&m) {
                    Some(existing) => *existing = existing.add(&c, p),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        self.normalize(terms)
    }

    pub fn scalar_mul(&self, k: i64, a: &CoeffElement) -> CoeffElement {
        self.mul(&self.scalar(k), a)
    }

    /// Import an element from a theory with the same prime, applying this
    /// ring's reduction rules. The scalar modes must be compatible: going
    /// from rational to mod-p scalars reduces them, the converse is refused.
    pub fn import(&self, x: &CoeffElement) -> Result<CoeffElement, RingError> {
        let p = self.prime();
        assert_eq!(x.theory().prime(), p, "import across different primes");
        let src_mode = x.theory().scalar_mode();
        if src_mode == ScalarMode::Rational && self.mode() == ScalarMode::Fp {
            let terms = x
                .terms()
                .map(|(m, c)| (m.clone(), Coef::Fp(c.to_fp(p))))
                .collect();
            return Ok(self.normalize(terms));
        }
        if src_mode == ScalarMode::Fp && self.mode() == ScalarMode::Rational {
            return Err(RingError::ScalarsNotReducible(x.theory().to_string()));
        }
        let terms = x.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        Ok(self.normalize(terms))
    }
}

/// The named quotient theory of `theory` by a named ideal, when there is one.
pub fn quotient_theory(theory: Theory, ideal: &IdealSpec) -> Result<Theory, RingError> {
    use super::theory::TheoryKind::*;
    let fail = || RingError::NoQuotientTheory {
        theory: theory.to_string(),
        ideal: ideal.to_string(),
    };
    let p = theory.prime();
    match (theory.kind(), ideal) {
        (_, IdealSpec::I(0)) => Ok(theory),
        (Bp, IdealSpec::I(n)) => Theory::p_n(*n, p).map_err(|_| fail()),
        (Bp, IdealSpec::IInfinity) => Theory::hfp(p).map_err(|_| fail()),
        (Bp, IdealSpec::JFrom(m)) if *m >= 1 => Theory::bp_truncated(m - 1, p).map_err(|_| fail()),
        (P, IdealSpec::I(n)) if *n >= theory.height() => Theory::p_n(*n, p).map_err(|_| fail()),
        (P, IdealSpec::IInfinity) => Theory::hfp(p).map_err(|_| fail()),
        (P, IdealSpec::JFrom(m)) if *m == theory.height() + 1 => {
            Theory::k_connective(theory.height(), p).map_err(|_| fail())
        }
        (BpTrunc, IdealSpec::JFrom(m)) if *m >= 1 && m - 1 <= theory.height() => {
            Theory::bp_truncated(m - 1, p).map_err(|_| fail())
        }
        (BpTrunc, IdealSpec::I(n)) if *n == theory.height() => {
            Theory::k_connective(*n, p).map_err(|_| fail())
        }
        _ => Err(fail()),
    }
}

/// Reduce an element to its normal form in the quotient by a named ideal.
///
/// The result lives in the quotient theory: reducing a `BP` element mod
/// `I(n)` produces a `P(n)` element, mod `J(m)` a `BP<m-1>` element, and so
/// on. Idempotent in the sense that reducing again by the same ideal is the
/// identity.
pub fn reduce_mod(x: &CoeffElement, ideal: &IdealSpec) -> Result<CoeffElement, RingError> {
    let theory = x.theory();
    match ideal {
        IdealSpec::I(_) | IdealSpec::IInfinity | IdealSpec::JFrom(_) => {}
        IdealSpec::Custom(_) => {
            return Err(RingError::UnsupportedIdeal(ideal.to_string()));
        }
    }
    // killing a generator the theory does not carry is a caller error,
    // except that generators already dead reduce to nothing
    if let IdealSpec::JFrom(m) = ideal {
        if theory.kind() == super::theory::TheoryKind::BpTrunc && *m > theory.height() + 1 {
            return Err(RingError::GeneratorOutsideSupport {
                theory: theory.to_string(),
                index: *m,
            });
        }
    }
    let target = quotient_theory(theory, ideal)?;
    let p = theory.prime();
    let bound =
        default_degree_bound(p).max(x.terms().map(|(m, _)| m.degree(p).abs()).max().unwrap_or(0));
    let ring = Ring::with_bound(target, bound);
    ring.import(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp2() -> Ring {
        Ring::new(Theory::bp(2).unwrap())
    }

    #[test]
    fn killed_generator_vanishes() {
        // v1 * 1 = 0 in P(2) at p=2
        let r = Ring::new(Theory::p_n(2, 2).unwrap());
        assert!(r.v(1).is_zero());
        assert!(r.mul(&r.v(1), &r.one()).is_zero());
        assert!(!r.v(2).is_zero());
    }

    #[test]
    fn bp_identity() {
        let r = Ring::new(Theory::bp(3).unwrap());
        let x = r.add(&r.scalar(2), &r.v(1));
        assert_eq!(r.mul(&r.one(), &x), x);
    }

    #[test]
    fn inverse_generator_cancels() {
        // v1 * v1^{-1} = 1 in K(1) at p=2
        let r = Ring::new(Theory::morava_k(1, 2).unwrap());
        let prod = r.mul(&r.v(1), &r.v_pow(1, -1));
        assert_eq!(prod, r.one());
    }

    #[test]
    fn reduce_mod_i2() {
        // p*1 + v1*v2 dies mod I(2); v2 is untouched
        let r = bp2();
        let x = r.add(&r.scalar(2), &r.mul(&r.v(1), &r.v(2)));
        let reduced = reduce_mod(&x, &IdealSpec::I(2)).unwrap();
        assert!(reduced.is_zero());
        let v2 = reduce_mod(&r.v(2), &IdealSpec::I(2)).unwrap();
        assert_eq!(v2.to_string(), "v2");
        assert_eq!(v2.theory(), Theory::p_n(2, 2).unwrap());
    }

    #[test]
    fn reduce_mod_j3_by_substitution() {
        // v3*v1 + v2^2 mod J(3): substituting v_i = 0 for i >= 3 leaves v2^2
        let r = bp2();
        let x = r.add(&r.mul(&r.v(3), &r.v(1)), &r.mul(&r.v(2), &r.v(2)));
        let reduced = reduce_mod(&x, &IdealSpec::JFrom(3)).unwrap();
        assert_eq!(reduced.to_string(), "v2^2");
        assert_eq!(reduced.theory(), Theory::bp_truncated(2, 2).unwrap());
        // idempotent: the quotient theory already has nothing to kill
        let again = reduce_mod(&reduced, &IdealSpec::JFrom(3)).unwrap();
        assert_eq!(again, reduced);
    }

    #[test]
    fn reduce_mod_i0_is_identity() {
        let r = bp2();
        let x = r.add(&r.scalar(5), &r.v(1));
        assert_eq!(reduce_mod(&x, &IdealSpec::I(0)).unwrap(), x);
    }

    #[test]
    fn reduce_outside_support_errors() {
        let r = Ring::new(Theory::bp_truncated(1, 2).unwrap());
        let x = r.v(1);
        assert!(matches!(
            reduce_mod(&x, &IdealSpec::JFrom(3)),
            Err(RingError::GeneratorOutsideSupport { .. })
        ));
    }

    #[test]
    fn degree_truncation() {
        let r = Ring::with_bound(Theory::bp(2).unwrap(), 6);
        // |v2| = -6 survives, |v1*v2| = -8 is truncated away
        assert!(!r.v(2).is_zero());
        assert!(r.mul(&r.v(1), &r.v(2)).is_zero());
    }

    #[test]
    fn degree_additivity() {
        let r = bp2();
        let x = r.mul(&r.v(1), &r.v(1));
        let y = r.v(2);
        let prod = r.mul(&x, &y);
        assert_eq!(
            prod.degree().unwrap(),
            x.degree().unwrap() + y.degree().unwrap()
        );
    }

    #[test]
    fn unit_detection() {
        let k1 = Ring::new(Theory::morava_k(1, 2).unwrap());
        assert!(k1.v_pow(1, -3).is_unit());
        assert!(k1.one().is_unit());
        let bp = bp2();
        assert!(bp.scalar(3).is_unit());
        assert!(!bp.scalar(2).is_unit());
        assert!(!bp.v(1).is_unit());
    }
}
