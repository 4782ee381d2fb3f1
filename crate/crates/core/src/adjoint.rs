//! Normal-ordered Pontryagin-ring computations in the height-2 homology of
//! an exceptional Lie group with p-torsion.
//!
//! The subalgebra acted on is generated over `K(2)_* = F_p[v2, v2^-1]` by a
//! class `y` with `y^p = 0` and two exterior families `z_0, ..., z_{p-2}`
//! and `z'_0, ..., z'_{p-2}`, subject to
//!
//! ```text
//! [y, z_i] = z_{i+1}  (i < p-2),      [y, z_{p-2}] = -v2 z_0,
//! ```
//!
//! and the same for the primed family. Elements are kept normal-ordered:
//! all powers of `y` on the left, letters in ascending order with exterior
//! signs. `y` is even, so moving it past a letter costs no sign, only the
//! commutator correction.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::fp_inv;

/// The structure constants of the algebra at an odd prime (p = 2 is
/// allowed; the families then consist of a single letter each).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdAlgebra {
    p: u32,
}

/// A normal-ordered word: a power of y and a set of letters. Letters
/// `0..p-1` are the unprimed family, `p-1..2(p-1)` the primed one.
type Word = (u8, u32);

/// Coefficients are Laurent monomials in v2 over F_p; a term is a word
/// together with a v2-power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdElement {
    p: u32,
    terms: BTreeMap<(Word, i64), u64>,
}

impl AdAlgebra {
    pub fn new(p: u32) -> AdAlgebra {
        assert!(p >= 2, "p must be a prime");
        AdAlgebra { p }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Number of letters per family.
    pub fn family_size(&self) -> u32 {
        self.p - 1
    }

    pub fn zero(&self) -> AdElement {
        AdElement {
            p: self.p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AdElement {
        self.word(0, 0, 0, 1)
    }

    pub fn y(&self) -> AdElement {
        self.word(1, 0, 0, 1)
    }

    /// The letter `z_i` (unprimed family).
    pub fn z(&self, i: u32) -> AdElement {
        assert!(i < self.family_size());
        self.word(0, 1 << i, 0, 1)
    }

    /// The letter `z'_i` (primed family).
    pub fn z_prime(&self, i: u32) -> AdElement {
        assert!(i < self.family_size());
        self.word(0, 1 << (self.family_size() + i), 0, 1)
    }

    pub fn v2_pow(&self, j: i64) -> AdElement {
        self.word(0, 0, j, 1)
    }

    fn word(&self, y: u8, mask: u32, v2: i64, coef: u64) -> AdElement {
        let mut e = self.zero();
        e.add_term((y, mask), v2, coef);
        e
    }

    /// `ad(y)` applied to a single letter: the next letter of its family,
    /// wrapping to `-v2 z_0`.
    fn ad_letter(&self, letter: u32) -> (u32, i64, u64) {
        let fam = self.family_size();
        let (base, idx) = if letter < fam {
            (0, letter)
        } else {
            (fam, letter - fam)
        };
        if idx + 1 < fam {
            (base + idx + 1, 0, 1)
        } else {
            (base, 1, self.p as u64 - 1) // -v2 * first letter of the family
        }
    }

    /// Multiply a normal-ordered word by `y` on the right:
    /// `Z y = y Z - sum_j l_1 .. ad(y)(l_j) .. l_k`.
    fn word_times_y(&self, word: Word, v2: i64, coef: u64) -> AdElement {
        let (ypow, mask) = word;
        let mut out = self.zero();
        // leading term y * word
        if (ypow as u32) + 1 < self.p {
            out.add_term((ypow + 1, mask), v2, coef);
        }
        let minus_one = self.p as u64 - 1;
        for j in 0..32 {
            if mask & (1 << j) == 0 {
                continue;
            }
            let (repl, dv2, c) = self.ad_letter(j);
            let rest = mask & !(1 << j);
            if rest & (1 << repl) != 0 {
                continue; // exterior square
            }
            // sign from moving the replacement to its sorted position
            let (lo, hi) = if repl < j { (repl, j) } else { (j, repl) };
            let between = (lo + 1..hi).filter(|&k| rest & (1 << k) != 0).count();
            let sign = if between % 2 == 0 { 1 } else { minus_one };
            let c_total =
                coef * minus_one % self.p as u64 * c % self.p as u64 * sign % self.p as u64;
            out.add_term((ypow, rest | (1 << repl)), v2 + dv2, c_total);
        }
        out
    }

    /// Exterior product of two letter sets with the anticommutation sign;
    /// `None` when a letter repeats.
    fn merge_masks(&self, a: u32, b: u32) -> Option<(u32, u64)> {
        if a & b != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in 0..32 {
            if b & (1 << j) == 0 {
                continue;
            }
            inversions += (a >> (j + 1)).count_ones();
        }
        let sign = if inversions.is_multiple_of(2) {
            1
        } else {
            self.p as u64 - 1
        };
        Some((a | b, sign))
    }

    /// The Pontryagin product of two normal-ordered elements.
    pub fn multiply(&self, u: &AdElement, w: &AdElement) -> AdElement {
        assert_eq!(u.p, self.p, "element from a different presentation");
        assert_eq!(w.p, self.p, "element from a different presentation");
        let mut out = self.zero();
        for (&((ya, za), va), &ca) in &u.terms {
            for (&((yb, zb), vb), &cb) in &w.terms {
                // move y^yb leftwards through the letters za
                let mut moved = self.word(ya, za, va + vb, ca * cb % self.p as u64);
                for _ in 0..yb {
                    let mut next = self.zero();
                    for (&((yy, zz), vv), &cc) in &moved.terms {
                        next = next.add(&self.word_times_y((yy, zz), vv, cc));
                    }
                    moved = next;
                }
                // now attach the letters zb on the right
                for (&((yy, zz), vv), &cc) in &moved.terms {
                    if let Some((mask, sign)) = self.merge_masks(zz, zb) {
                        out.add_term((yy, mask), vv, cc * sign % self.p as u64);
                    }
                }
            }
        }
        out
    }

    /// `ad(y)(u) = y u - u y`.
    pub fn ad_y(&self, u: &AdElement) -> AdElement {
        let y = self.y();
        self.multiply(&y, u).add(&self.multiply(u, &y).neg())
    }

    /// `ad(y)^k` applied to an element.
    pub fn ad_power(&self, k: u32, u: &AdElement) -> AdElement {
        let mut out = u.clone();
        for _ in 0..k {
            out = self.ad_y(&out);
        }
        out
    }

    /// Scale so that the coefficient of the lexicographically first term is
    /// one; used only by the tests.
    pub fn normalize_leading(&self, u: &AdElement) -> AdElement {
        let Some((_, &c)) = u.terms.iter().next() else {
            return u.clone();
        };
        let inv = fp_inv(c, self.p as u64);
        let mut out = self.zero();
        for (&k, &v) in &u.terms {
            out.add_term(k.0, k.1, v * inv % self.p as u64);
        }
        out
    }

    /// Display an element with the classical letter names.
    pub fn element_string(&self, u: &AdElement) -> String {
        if u.terms.is_empty() {
            return "0".to_string();
        }
        let fam = self.family_size();
        let mut parts = Vec::new();
        for (&((ypow, mask), v2), &coef) in &u.terms {
            let mut factors = Vec::new();
            if coef != 1 || (ypow == 0 && mask == 0 && v2 == 0) {
                factors.push(coef.to_string());
            }
            if v2 == 1 {
                factors.push("v2".to_string());
            } else if v2 != 0 {
                factors.push(format!("v2^{}", v2));
            }
            if ypow == 1 {
                factors.push("y".to_string());
            } else if ypow > 1 {
                factors.push(format!("y^{}", ypow));
            }
            for j in 0..2 * fam {
                if mask & (1 << j) != 0 {
                    if j < fam {
                        factors.push(format!("z{}", j));
                    } else {
                        factors.push(format!("z{}'", j - fam));
                    }
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// The K(2)_*-rank of the full presentation: `p * 2^(p-1) * 2^(p-1)`.
    pub fn basis_rank(&self) -> u64 {
        self.p as u64 * (1u64 << (self.p - 1)) * (1u64 << (self.p - 1))
    }

    /// Enumerate the monomial basis `y^a * (letters)` and double-check the
    /// closed-form count.
    pub fn enumerate_basis(&self) -> Vec<AdElement> {
        let fam = self.family_size();
        let mut out = Vec::new();
        for a in 0..self.p as u8 {
            for mask in 0u32..(1 << (2 * fam)) {
                out.push(self.word(a, mask, 0, 1));
            }
        }
        debug_assert_eq!(out.len() as u64, self.basis_rank());
        out
    }
}

impl AdElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    fn add_term(&mut self, word: Word, v2: i64, coef: u64) {
        use std::collections::btree_map::Entry;
        let coef = coef % self.p as u64;
        if coef == 0 || word.0 as u32 >= self.p {
            return;
        }
        match self.terms.entry((word, v2)) {
            Entry::Occupied(mut e) => {
                let v = (*e.get() + coef) % self.p as u64;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    pub fn add(&self, other: &AdElement) -> AdElement {
        assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (&(w, v2), &c) in &other.terms {
            out.add_term(w, v2, c);
        }
        out
    }

    pub fn neg(&self) -> AdElement {
        let mut out = AdElement {
            p: self.p,
            terms: BTreeMap::new(),
        };
        for (&(w, v2), &c) in &self.terms {
            out.add_term(w, v2, (self.p as u64 - c) % self.p as u64);
        }
        out
    }
}

impl fmt::Display for AdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", AdAlgebra::new(self.p).element_string(self))
    }
}

/// One row of the non-nilpotency table: the iterate, its value, and
/// whether it is nonzero.
#[derive(Debug, Clone)]
pub struct AdPowerLine {
    pub iterations: u32,
    pub value: String,
    pub nonzero: bool,
}

/// Verify `ad^((p-1)k)(y)(z_0) = (-v2)^k z_0 != 0` for every `k` up to
/// `max_k / (p-1)`, and report the whole iteration table. A vanishing
/// iterate would contradict the non-nilpotency of the group, so it turns
/// the report into a failure.
pub fn nonnilpotency_witness(p: u32, max_k: u32) -> (Vec<AdPowerLine>, bool) {
    let alg = AdAlgebra::new(p);
    let z0 = alg.z(0);
    let mut lines = Vec::new();
    let mut ok = true;
    for k in 0..=max_k {
        let value = alg.ad_power(k, &z0);
        let nonzero = !value.is_zero();
        if k % (p - 1) == 0 {
            // closed form (-v2)^(k/(p-1)) z_0
            let e = k / (p - 1);
            let sign = if e.is_multiple_of(2) { 1 } else { p as u64 - 1 };
            let mut expected = alg.zero();
            expected = expected.add(&alg.multiply(&alg.v2_pow(e as i64), &alg.z(0)));
            let expected = if sign == 1 { expected } else { expected.neg() };
            if value != expected || value.is_zero() {
                ok = false;
            }
        }
        lines.push(AdPowerLine {
            iterations: k,
            value: alg.element_string(&value),
            nonzero,
        });
    }
    (lines, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_ordering_definitions() {
        let alg = AdAlgebra::new(3);
        // y * z0 stays normal-ordered
        let yz = alg.multiply(&alg.y(), &alg.z(0));
        assert_eq!(alg.element_string(&yz), "y*z0");
        // z0 * y = y z0 - z1
        let zy = alg.multiply(&alg.z(0), &alg.y());
        assert_eq!(alg.element_string(&zy), "2*z1 + y*z0");
        // y * y^(p-1) = 0
        let y2 = alg.multiply(&alg.y(), &alg.y());
        assert!(alg.multiply(&alg.y(), &y2).is_zero());
        // exterior squares vanish
        assert!(alg.multiply(&alg.z(0), &alg.z(0)).is_zero());
        // distinct letters anticommute
        let ab = alg.multiply(&alg.z(0), &alg.z(1));
        let ba = alg.multiply(&alg.z(1), &alg.z(0));
        assert_eq!(ab, ba.neg());
    }

    #[test]
    fn ad_powers_match_the_closed_form() {
        for p in [3u32, 5] {
            let alg = AdAlgebra::new(p);
            let z0 = alg.z(0);
            assert_eq!(alg.ad_power(0, &z0), z0);
            // ad^(p-1)(y)(z0) = -v2 z0
            let top = alg.ad_power(p - 1, &z0);
            let expected = alg.multiply(&alg.v2_pow(1), &alg.z(0)).neg();
            assert_eq!(top, expected, "p={}", p);
            // ad^(2(p-1)) = v2^2 z0 (two iterated wraps, sign squares away)
            let twice = alg.ad_power(2 * (p - 1), &z0);
            let expected2 = alg.multiply(&alg.v2_pow(2), &alg.z(0));
            assert_eq!(twice, expected2, "p={}", p);
        }
    }

    #[test]
    fn intermediate_iterates_walk_the_family() {
        let alg = AdAlgebra::new(5);
        for i in 1..4u32 {
            let got = alg.ad_power(i, &alg.z(0));
            assert_eq!(alg.element_string(&got), format!("z{}", i));
        }
        // the primed family wraps the same way
        let top = alg.ad_power(4, &alg.z_prime(0));
        assert_eq!(alg.element_string(&top), "4*v2*z0'");
    }

    #[test]
    fn associativity_on_random_words() {
        // deterministic xorshift; words up to length 6
        let alg = AdAlgebra::new(3);
        let gens = [alg.y(), alg.z(0), alg.z(1), alg.z_prime(0), alg.z_prime(1)];
        let mut state = 0x2545F491u64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let len = 3 + (rand() % 4) as usize;
            let word: Vec<&AdElement> = (0..len).map(|_| &gens[(rand() % 5) as usize]).collect();
            let split_a = 1 + (rand() as usize) % (len - 1);
            // ((w1)(w2))(w3) == (w1)((w2)(w3)) for all splits
            let product =
                |items: &[&AdElement]| items.iter().fold(alg.one(), |acc, x| alg.multiply(&acc, x));
            let left = alg.multiply(&product(&word[..split_a]), &product(&word[split_a..]));
            let whole = product(&word);
            assert_eq!(left, whole);
        }
    }

    #[test]
    fn ad_is_a_derivation() {
        let alg = AdAlgebra::new(3);
        let pairs = [
            (alg.z(0), alg.z(1)),
            (alg.z(0), alg.z_prime(0)),
            (alg.multiply(&alg.y(), &alg.z(0)), alg.z_prime(1)),
            (alg.z(1), alg.multiply(&alg.z(0), &alg.z_prime(0))),
        ];
        for (u, w) in pairs {
            let lhs = alg.ad_y(&alg.multiply(&u, &w));
            let rhs = alg
                .multiply(&alg.ad_y(&u), &w)
                .add(&alg.multiply(&u, &alg.ad_y(&w)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rank_of_the_full_presentation() {
        let alg = AdAlgebra::new(3);
        assert_eq!(alg.basis_rank(), 48); // 3 * 4 * 4
        assert_eq!(alg.enumerate_basis().len(), 48);
        let alg5 = AdAlgebra::new(5);
        assert_eq!(alg5.basis_rank(), 5 * 16 * 16);
    }

    #[test]
    fn witness_report() {
        let (lines, ok) = nonnilpotency_witness(3, 8);
        assert!(ok);
        assert_eq!(lines.len(), 9);
        assert!(lines.iter().all(|l| l.nonzero));
        assert_eq!(lines[2].value, "2*v2*z0");
        assert_eq!(lines[4].value, "v2^2*z0");
        assert_eq!(lines[6].value, "2*v2^3*z0");
        assert_eq!(lines[8].value, "v2^4*z0");
        let (_, ok5) = nonnilpotency_witness(5, 4);
        assert!(ok5);
    }
}
