use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::theory::{ScalarMode, Theory};

/// A scalar coefficient: an exact p-local rational or a mod-p residue.
///
/// For the rational variant the denominator is kept coprime to p; this is
/// checked by the ring operations, not here (the fraction type already keeps
/// itself in lowest terms with a positive denominator).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coef {
    Q(BigRational),
    Fp(u64),
}

impl Coef {
    pub fn from_int(k: i64, mode: ScalarMode, p: u32) -> Coef {
        match mode {
            ScalarMode::Rational => Coef::Q(BigRational::from_integer(BigInt::from(k))),
            ScalarMode::Fp => Coef::Fp(k.rem_euclid(p as i64) as u64),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_zero(),
            Coef::Fp(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Q(q) => q.is_one(),
            Coef::Fp(r) => *r == 1,
        }
    }

    /// The denominator is coprime to p, the defining property of `Z_(p)`.
    pub fn denominator_p_free(&self, p: u32) -> bool {
        match self {
            Coef::Q(q) => (q.denom() % BigInt::from(p)) != BigInt::zero() || q.is_zero(),
            Coef::Fp(_) => true,
        }
    }

    pub fn add(&self, other: &Coef, p: u32) -> Coef {
        match (self, other) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a + b),
            (Coef::Fp(a), Coef::Fp(b)) => Coef::Fp((a + b) % p as u64),
            _ => panic!("mixed scalar modes"),
        }
    }

    pub fn mul(&self, other: &Coef, p: u32) -> Coef {
        match (self, other) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a * b),
            (Coef::Fp(a), Coef::Fp(b)) => Coef::Fp((a * b) % p as u64),
            _ => panic!("mixed scalar modes"),
        }
    }

    pub fn neg(&self, p: u32) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(-a),
            Coef::Fp(a) => Coef::Fp((p as u64 - a % p as u64) % p as u64),
        }
    }

    /// Reduce a rational scalar mod p. Only valid when the denominator is a
    /// p-local unit.
    pub fn to_fp(&self, p: u32) -> u64 {
        match self {
            Coef::Fp(r) => *r,
            Coef::Q(q) => {
                let pp = BigInt::from(p);
                let num = q.numer().mod_floor_big(&pp);
                let den = q.denom().mod_floor_big(&pp);
                let den_inv = mod_inverse(den, p as u64);
                (num * den_inv).mod_floor_big(&pp).to_u64_lossy()
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
    fn to_u64_lossy(&self) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }

    fn to_u64_lossy(&self) -> u64 {
        use num::ToPrimitive;
        self.to_u64().expect("residue fits in u64")
    }
}

fn mod_inverse(a: BigInt, p: u64) -> BigInt {
    // p is prime, so a^(p-2) works for units
    use num::ToPrimitive;
    let a = a.to_u64().expect("residue fits in u64");
    assert!(!a.is_multiple_of(p), "denominator not a p-local unit");
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    BigInt::from(result)
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Q(q) => write!(f, "{}", q),
            Coef::Fp(r) => write!(f, "{}", r),
        }
    }
}

/// A monomial in the generators `v_i`, stored as a sparse exponent map.
///
/// Exponents are non-negative except in `K(n)`, where `v_n` may carry a
/// negative exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VMonomial {
    exps: BTreeMap<u32, i64>,
}

impl VMonomial {
    pub fn one() -> VMonomial {
        VMonomial::default()
    }

    pub fn gen(i: u32, e: i64) -> VMonomial {
        let mut exps = BTreeMap::new();
        if e != 0 {
            exps.insert(i, e);
        }
        VMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, i: u32) -> i64 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = (u32, i64)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn mul(&self, other: &VMonomial) -> VMonomial {
        let mut exps = self.exps.clone();
        for (&i, &e) in &other.exps {
            let entry = exps.entry(i).or_insert(0);
            *entry += e;
            if *entry == 0 {
                exps.remove(&i);
            }
        }
        VMonomial { exps }
    }

    /// Topological degree `sum e_i * (-2(p^i - 1))`.
    pub fn degree(&self, p: u32) -> i64 {
        self.exps
            .iter()
            .map(|(&i, &e)| e * -2 * ((p as i64).pow(i) - 1))
            .sum()
    }

    /// True if `other` divides this monomial (all exponents at least as big).
    pub fn divisible_by(&self, other: &VMonomial) -> bool {
        other.exps.iter().all(|(&i, &e)| self.exponent(i) >= e)
    }
}

impl fmt::Display for VMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&i, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{}", i)?;
            } else {
                write!(f, "v{}^{}", i, e)?;
            }
        }
        Ok(())
    }
}

/// An element of a coefficient ring: a finite sum of scalar multiples of
/// v-monomials, kept in normal form by the owning [`super::Ring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffElement {
    theory: Theory,
    terms: BTreeMap<VMonomial, Coef>,
}

impl CoeffElement {
    pub(crate) fn from_terms(theory: Theory, terms: BTreeMap<VMonomial, Coef>) -> CoeffElement {
        CoeffElement { theory, terms }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VMonomial, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The common topological degree of all terms; `None` for 0 or an
    /// inhomogeneous element.
    pub fn degree(&self) -> Option<i64> {
        let p = self.theory.prime();
        let mut degs = self.terms.keys().map(|m| m.degree(p));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// A single-term element `c * m`, if that is what this is.
    pub fn as_single_term(&self) -> Option<(&VMonomial, &Coef)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// True if the element is a unit of its ring: a nonzero scalar times an
    /// invertible monomial. Detection is per-term, which suffices for the
    /// single-generator ideals handled here.
    pub fn is_unit(&self) -> bool {
        let Some((m, c)) = self.as_single_term() else {
            return false;
        };
        if c.is_zero() {
            return false;
        }
        let scalar_unit = match c {
            // a rational is a unit of Z_(p) iff its numerator is prime to p
            Coef::Q(q) => {
                (q.numer() % num::BigInt::from(self.theory.prime())) != num::BigInt::zero()
            }
            Coef::Fp(r) => *r != 0,
        };
        scalar_unit
            && m.exponents()
                .all(|(i, _)| self.theory.support(i) == super::theory::Support::Invertible)
    }

    /// Terms sorted for printing: degree descending (closest to zero first),
    /// then lexicographically on exponents.
    pub fn sorted_terms(&self) -> Vec<(&VMonomial, &Coef)> {
        let p = self.theory.prime();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(ma, _), (mb, _)| mb.degree(p).cmp(&ma.degree(p)).then_with(|| ma.cmp(mb)));
        v
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let (neg, mag) = match c {
                Coef::Q(q) if q.is_negative() => (true, Coef::Q(-q)),
                other => (false, other.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_degree_and_product() {
        let m = VMonomial::gen(1, 2).mul(&VMonomial::gen(2, 1));
        assert_eq!(m.degree(2), 2 * -2 + -6);
        assert_eq!(m.to_string(), "v1^2*v2");
        let cancel = VMonomial::gen(1, 1).mul(&VMonomial::gen(1, -1));
        assert!(cancel.is_one());
    }

    #[test]
    fn fp_arithmetic_wraps() {
        let a = Coef::Fp(2);
        let b = Coef::Fp(2);
        assert_eq!(a.add(&b, 3), Coef::Fp(1));
        assert_eq!(a.mul(&b, 3), Coef::Fp(1));
        assert_eq!(a.neg(3), Coef::Fp(1));
        assert_eq!(Coef::Fp(0).neg(3), Coef::Fp(0));
    }

    #[test]
    fn rational_to_fp() {
        use num::BigInt;
        // 3/5 mod 2 : 5 is invertible, 5^{-1} = 1, so 3*1 = 1 mod 2
        let q = Coef::Q(BigRational::new(BigInt::from(3), BigInt::from(5)));
        assert_eq!(q.to_fp(2), 1);
        // -1 mod 3 = 2
        let q = Coef::Q(BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(q.to_fp(3), 2);
    }
}
