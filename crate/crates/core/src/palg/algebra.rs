use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PalgError {
    #[error("Q-action undefined: Q{i} on `{monomial}`")]
    QActionUndefined { i: u32, monomial: String },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("smoothness violated: `{monomial}` has weight {weight} and dimension {dim}")]
    SmoothnessViolated {
        monomial: String,
        weight: i64,
        dim: i64,
    },
    #[error("relation `{lhs}` does not decrease the monomial order or is inhomogeneous")]
    BadRelation { lhs: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The base ring of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseRing {
    /// `Z/p[t]`, `t` in bidegree (0, 1)
    TauOnly { p: u32 },
    /// `Z/2[r, t]`, `r` in bidegree (1, 1); Laurent t-powers allowed
    RhoTau,
}

impl BaseRing {
    pub fn prime(&self) -> u32 {
        match self {
            BaseRing::TauOnly { p } => *p,
            BaseRing::RhoTau => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgGenerator {
    pub name: String,
    pub bidegree: (i64, i64),
    pub parity: Parity,
}

/// A monomial: a product of generator powers, a power of `r` and a power of
/// `t`. Generator exponents are indexed by declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub gens: BTreeMap<u16, u32>,
    pub rho: u32,
    pub tau: i64,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn gen(idx: u16, e: u32) -> Monomial {
        let mut m = Monomial::one();
        if e > 0 {
            m.gens.insert(idx, e);
        }
        m
    }

    pub fn rho_tau(rho: u32, tau: i64) -> Monomial {
        Monomial {
            gens: BTreeMap::new(),
            rho,
            tau,
        }
    }

    pub fn tau_shift(&self, j: i64) -> Monomial {
        let mut m = self.clone();
        m.tau += j;
        m
    }

    pub fn exp(&self, idx: u16) -> u32 {
        self.gens.get(&idx).copied().unwrap_or(0)
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.gens.is_empty() && self.rho == 0 && self.tau == 0
    }

    /// Raw exponent sum with `other`, no sign bookkeeping.
    fn combine(&self, other: &Monomial) -> Monomial {
        let mut gens = self.gens.clone();
        for (&i, &e) in &other.gens {
            *gens.entry(i).or_insert(0) += e;
        }
        Monomial {
            gens,
            rho: self.rho + other.rho,
            tau: self.tau + other.tau,
        }
    }

    /// True if `other` divides the generator part of this monomial.
    fn gens_divisible_by(&self, other: &Monomial) -> bool {
        other.gens.iter().all(|(&i, &e)| self.exp(i) >= e)
    }

    fn gens_divide_out(&self, other: &Monomial) -> Monomial {
        let mut gens = self.gens.clone();
        for (&i, &e) in &other.gens {
            let v = gens.get_mut(&i).expect("divisible");
            *v -= e;
            if *v == 0 {
                gens.remove(&i);
            }
        }
        Monomial {
            gens,
            rho: self.rho,
            tau: self.tau,
        }
    }
}

/// An F_p-linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    p: u32,
    terms: BTreeMap<Monomial, u64>,
}

impl Element {
    pub fn zero(p: u32) -> Element {
        Element {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u32, m: Monomial, c: u64) -> Element {
        let mut e = Element::zero(p);
        e.add_term(m, c);
        e
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_single_monomial(&self) -> Option<(&Monomial, u64)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        use std::collections::btree_map::Entry;
        let c = c % self.p as u64;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = (*e.get() + c) % self.p as u64;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Element {
        let mut out = Element::zero(self.p);
        for (m, k) in self.terms() {
            out.add_term(m.clone(), k * (c % self.p as u64));
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(self.p as u64 - 1)
    }
}

/// A named slice-basis element: a monomial together with its display name
/// and bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceLabel {
    pub name: String,
    pub monomial: Monomial,
    pub bidegree: (i64, i64),
    /// how many extra t-powers beyond the underlying basis element
    pub tau_shift: i64,
}

impl SliceLabel {
    pub fn weight(&self) -> i64 {
        2 * self.bidegree.1 - self.bidegree.0
    }
}

/// An explicit module-basis element over the t-polynomial part of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub monomial: Monomial,
}

#[derive(Debug, Clone)]
struct RewriteRule {
    lhs: Monomial,
    rhs: Element,
}

/// A presented algebra: generators, rewrite relations, Q-operation data and
/// the bookkeeping flags.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    pub name: String,
    pub base: BaseRing,
    pub smooth: bool,
    pub dimension: Option<i64>,
    generators: Vec<AlgGenerator>,
    relations: Vec<RewriteRule>,
    rho_trunc: Option<u32>,
    tau_window: (i64, i64),
    q_gen: BTreeMap<(u32, u16), Element>,
    q_table: BTreeMap<(u32, Monomial), Element>,
    q_default_zero_upto: Option<u32>,
    explicit_basis: Option<Vec<BasisElem>>,
}

impl PresentedAlgebra {
    pub fn new(name: impl Into<String>, base: BaseRing) -> PresentedAlgebra {
        PresentedAlgebra {
            name: name.into(),
            base,
            smooth: false,
            dimension: None,
            generators: Vec::new(),
            relations: Vec::new(),
            rho_trunc: None,
            tau_window: (0, i64::MAX / 2),
            q_gen: BTreeMap::new(),
            q_table: BTreeMap::new(),
            q_default_zero_upto: None,
            explicit_basis: None,
        }
    }

    pub fn prime(&self) -> u32 {
        self.base.prime()
    }

    pub fn generators(&self) -> &[AlgGenerator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
    }

    pub fn rho_truncation(&self) -> Option<u32> {
        self.rho_trunc
    }

    pub fn tau_window(&self) -> (i64, i64) {
        self.tau_window
    }

    pub fn explicit_basis(&self) -> Option<&[BasisElem]> {
        self.explicit_basis.as_deref()
    }

    pub fn q_default_zero_upto(&self) -> Option<u32> {
        self.q_default_zero_upto
    }

    // ---- construction ----

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        bidegree: (i64, i64),
        parity: Parity,
    ) -> u16 {
        self.generators.push(AlgGenerator {
            name: name.into(),
            bidegree,
            parity,
        });
        let idx = (self.generators.len() - 1) as u16;
        // odd-parity generators square to zero unless a relation overrides
        if parity == Parity::Odd {
            let lhs = Monomial::gen(idx, 2);
            self.relations.push(RewriteRule {
                lhs,
                rhs: Element::zero(self.prime()),
            });
        }
        idx
    }

    /// Add a rewrite rule `lhs -> rhs`. The left side must strictly dominate
    /// every right-side monomial in the degree-lexicographic order (earlier
    /// generators heavier), and the rule must be bidegree-homogeneous.
    pub fn add_relation(&mut self, lhs: Monomial, rhs: Element) -> Result<(), PalgError> {
        let bad = || PalgError::BadRelation {
            lhs: self.monomial_name(&lhs),
        };
        let lb = self.bidegree(&lhs);
        for (m, _) in rhs.terms() {
            if self.bidegree(m) != lb {
                return Err(bad());
            }
            if !Self::order_decreases(&lhs, m) {
                return Err(bad());
            }
        }
        // at odd primes rewriting does not track Koszul signs, so only
        // annihilation rules are allowed there
        if self.prime() != 2 && !rhs.is_zero() {
            return Err(bad());
        }
        // replace the auto square rule if one exists for this lhs
        self.relations.retain(|r| r.lhs != lhs);
        self.relations.push(RewriteRule { lhs, rhs });
        Ok(())
    }

    fn order_decreases(lhs: &Monomial, rhs: &Monomial) -> bool {
        // lexicographic on generator exponents, earlier generators heavier
        let mut idx = 0u16;
        loop {
            let a = lhs.exp(idx);
            let b = rhs.exp(idx);
            if a != b {
                return a > b;
            }
            if lhs.gens.keys().all(|&i| i <= idx) && rhs.gens.keys().all(|&i| i <= idx) {
                return false; // equal generator parts
            }
            idx += 1;
            if idx > 512 {
                return false;
            }
        }
    }

    pub fn set_rho_truncation(&mut self, exponent: u32) {
        assert!(matches!(self.base, BaseRing::RhoTau));
        self.rho_trunc = Some(exponent);
    }

    pub fn set_tau_window(&mut self, lo: i64, hi: i64) {
        self.tau_window = (lo, hi);
    }

    pub fn set_explicit_basis(&mut self, basis: Vec<BasisElem>) {
        self.explicit_basis = Some(basis);
    }

    /// Declare that any Q_i (i <= upto) without a table entry acts as zero.
    pub fn set_q_default_zero_upto(&mut self, upto: u32) {
        self.q_default_zero_upto = Some(upto);
    }

    pub fn set_q_on_generator(&mut self, i: u32, gen: u16, value: Element) {
        self.q_gen.insert((i, gen), value);
    }

    pub fn set_q_table_entry(&mut self, i: u32, m: Monomial, value: Element) {
        self.q_table.insert((i, m), value);
    }

    pub fn q_table_entry(&self, i: u32, m: &Monomial) -> Option<&Element> {
        self.q_table.get(&(i, m.clone()))
    }

    pub fn relation_pairs(&self) -> Vec<(Monomial, Element)> {
        self.relations
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect()
    }

    pub fn q_gen_entries(&self) -> Vec<(u32, u16, Element)> {
        self.q_gen
            .iter()
            .map(|(&(i, g), v)| (i, g, v.clone()))
            .collect()
    }

    pub fn q_table_entries(&self) -> Vec<(u32, Monomial, Element)> {
        self.q_table
            .iter()
            .map(|(&(i, ref m), v)| (i, m.clone(), v.clone()))
            .collect()
    }

    // ---- degrees ----

    pub fn bidegree(&self, m: &Monomial) -> (i64, i64) {
        let mut first = m.rho as i64;
        let mut second = m.rho as i64 + m.tau;
        for (&i, &e) in &m.gens {
            let g = &self.generators[i as usize];
            first += e as i64 * g.bidegree.0;
            second += e as i64 * g.bidegree.1;
        }
        (first, second)
    }

    pub fn element_bidegree(&self, e: &Element) -> Result<(i64, i64), PalgError> {
        let mut degs = e.terms().map(|(m, _)| self.bidegree(m));
        let Some(first) = degs.next() else {
            return Err(PalgError::Inhomogeneous);
        };
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(PalgError::Inhomogeneous)
        }
    }

    /// Weight `w = 2m' - m` of a homogeneous element.
    ///
    /// On smooth-flagged presentations this also verifies `w >= 0` and
    /// `d <= dim X`, and `d >= 0` for the t-stripped part (t itself has
    /// d = -1, so multiples of the base class are exempt from the lower
    /// bound).
    pub fn weight(&self, e: &Element) -> Result<i64, PalgError> {
        let (m, mp) = self.element_bidegree(e)?;
        let w = 2 * mp - m;
        let d = m - mp;
        if self.smooth && !e.is_zero() {
            let max_dim = self.dimension.unwrap_or(i64::MAX);
            let stripped_d_ok = e.terms().all(|(mono, _)| {
                let mut s = mono.clone();
                s.tau = 0;
                let (sm, smp) = self.bidegree(&s);
                sm - smp >= 0
            });
            if w < 0 || d > max_dim || !stripped_d_ok {
                let name = e
                    .terms()
                    .next()
                    .map(|(mono, _)| self.monomial_name(mono))
                    .unwrap_or_default();
                return Err(PalgError::SmoothnessViolated {
                    monomial: name,
                    weight: w,
                    dim: d,
                });
            }
        }
        Ok(w)
    }

    /// Dimension `d = m - m'` of a homogeneous element.
    pub fn dim(&self, e: &Element) -> Result<i64, PalgError> {
        let (m, mp) = self.element_bidegree(e)?;
        Ok(m - mp)
    }

    // ---- multiplication and normal form ----

    fn gen_first_degree(&self, idx: u16) -> i64 {
        self.generators[idx as usize].bidegree.0
    }

    /// Koszul sign (as a scalar mod p) for reordering the concatenation
    /// `a * b` into canonical order, driven by first-degree parity.
    fn koszul_sign(&self, a: &Monomial, b: &Monomial) -> u64 {
        if self.prime() == 2 {
            return 1;
        }
        let mut swaps: u64 = 0;
        for (&i, &ei) in &a.gens {
            if self.gen_first_degree(i) % 2 == 0 {
                continue;
            }
            for (&j, &ej) in &b.gens {
                if j < i && self.gen_first_degree(j) % 2 != 0 {
                    swaps += ei as u64 * ej as u64;
                }
            }
        }
        if swaps.is_multiple_of(2) {
            1
        } else {
            self.prime() as u64 - 1
        }
    }

    pub fn mul_elements(&self, a: &Element, b: &Element) -> Element {
        let p = self.prime();
        let mut raw = Element::zero(p);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let sign = self.koszul_sign(ma, mb);
                raw.add_term(ma.combine(mb), ca * cb % p as u64 * sign % p as u64);
            }
        }
        self.normalize(raw)
    }

    pub fn elem_from_monomial(&self, m: Monomial) -> Element {
        self.normalize(Element::monomial(self.prime(), m, 1))
    }

    /// Apply rho-truncation and rewrite rules until every term is normal.
    pub fn normalize(&self, e: Element) -> Element {
        let p = self.prime();
        let mut current = e;
        loop {
            let mut change: Option<(Monomial, u64, Element)> = None;
            'outer: for (m, c) in current.terms() {
                if let Some(tr) = self.rho_trunc {
                    if m.rho >= tr {
                        change = Some((m.clone(), c, Element::zero(p)));
                        break 'outer;
                    }
                }
                for rule in &self.relations {
                    if m.gens_divisible_by(&rule.lhs) {
                        let rest = m.gens_divide_out(&rule.lhs);
                        // odd-p rules have zero rhs (checked in add_relation),
                        // so no sign is needed for the replacement product
                        let mut repl = Element::zero(p);
                        for (rm, rc) in rule.rhs.terms() {
                            repl.add_term(rest.combine(rm), rc * c % p as u64);
                        }
                        change = Some((m.clone(), c, repl));
                        break 'outer;
                    }
                }
            }
            match change {
                None => return current,
                Some((m, c, repl)) => {
                    let mut minus = Element::monomial(p, m, (p as u64 - c % p as u64) % p as u64);
                    minus = minus.add(&repl);
                    current = current.add(&minus);
                }
            }
        }
    }

    fn monomial_is_normal(&self, m: &Monomial) -> bool {
        if let Some(tr) = self.rho_trunc {
            if m.rho >= tr {
                return false;
            }
        }
        self.relations.iter().all(|r| !m.gens_divisible_by(&r.lhs))
    }

    // ---- Milnor operations ----

    /// Apply `Q_i` to an element in normal form.
    ///
    /// Over `Z/p[t]` the operation is the (signed) derivation determined by
    /// its values on generators, extended t-linearly. Over `Z/2[r,t]`, `Q_0`
    /// is the derivation with `Q_0(t) = r`, `Q_0(r) = 0`, and `Q_i` for
    /// `i >= 1` is read off the per-monomial table; a missing entry is an
    /// error unless the algebra declares a zero default.
    pub fn apply_q(&self, i: u32, e: &Element) -> Result<Element, PalgError> {
        let p = self.prime();
        let mut out = Element::zero(p);
        for (m, c) in e.terms() {
            let qm = self.apply_q_monomial(i, m)?;
            out = out.add(&qm.scale(c));
        }
        Ok(self.normalize(out))
    }

    fn q_undefined(&self, i: u32, m: &Monomial) -> PalgError {
        PalgError::QActionUndefined {
            i,
            monomial: self.monomial_name(m),
        }
    }

    fn default_covers(&self, i: u32) -> bool {
        self.q_default_zero_upto.is_some_and(|upto| i <= upto)
    }

    fn apply_q_monomial(&self, i: u32, m: &Monomial) -> Result<Element, PalgError> {
        let p = self.prime();
        if matches!(self.base, BaseRing::RhoTau) && i >= 1 {
            if let Some(v) = self.q_table.get(&(i, m.clone())) {
                return Ok(v.clone());
            }
            if self.default_covers(i) {
                return Ok(Element::zero(p));
            }
            return Err(self.q_undefined(i, m));
        }
        if i == 0 {
            if let Some(v) = self.q_table.get(&(0, m.clone())) {
                return Ok(v.clone());
            }
        }
        // derivation: tau part (RhoTau only: Q_0(t^b) = b r t^(b-1)),
        // then generator part with Koszul signs from first-degree parity
        let mut out = Element::zero(p);
        if i == 0 && matches!(self.base, BaseRing::RhoTau) {
            let b = m.tau.rem_euclid(p as i64) as u64;
            if b != 0 {
                let mut shifted = m.clone();
                shifted.tau -= 1;
                shifted.rho += 1;
                out.add_term(shifted, b);
            }
        }
        let mut prefix_parity = (m.rho % 2) as i64; // r has first degree 1
        for (&gidx, &e) in &m.gens {
            let value = match self.q_gen.get(&(i, gidx)) {
                Some(v) => v.clone(),
                None if self.default_covers(i) => Element::zero(p),
                None => {
                    if e > 0 {
                        return Err(self.q_undefined(i, m));
                    }
                    Element::zero(p)
                }
            };
            if !value.is_zero() {
                let mut smaller = m.clone();
                let cur = smaller.gens.get_mut(&gidx).expect("exponent present");
                *cur -= 1;
                if *cur == 0 {
                    smaller.gens.remove(&gidx);
                }
                // split into before/after the differentiated letter; the
                // koszul-aware products put everything back in order
                let sign = if prefix_parity % 2 == 0 {
                    1
                } else {
                    p as u64 - 1
                };
                let coeff = e as u64 % p as u64 * sign % p as u64;
                if coeff != 0 {
                    let before: Monomial = Monomial {
                        gens: smaller.gens.range(..gidx).map(|(&k, &v)| (k, v)).collect(),
                        rho: m.rho,
                        tau: m.tau,
                    };
                    let after: Monomial = Monomial {
                        gens: smaller.gens.range(gidx..).map(|(&k, &v)| (k, v)).collect(),
                        rho: 0,
                        tau: 0,
                    };
                    let be = Element::monomial(p, before, 1);
                    let ae = Element::monomial(p, after, 1);
                    let prod = self.mul_elements(&self.mul_elements(&be, &value), &ae);
                    out = out.add(&prod.scale(coeff));
                }
            }
            prefix_parity += e as i64 * self.gen_first_degree(gidx);
        }
        Ok(self.normalize(out))
    }

    /// Expand `Q_0` over an explicit product of factors by the Leibniz rule
    /// (Koszul signs are trivial at p = 2). Each factor's `Q_0` is computed
    /// by `apply_q`.
    pub fn q0_leibniz(&self, factors: &[Element]) -> Result<Element, PalgError> {
        let p = self.prime();
        let mut out = Element::zero(p);
        for j in 0..factors.len() {
            let qf = self.apply_q(0, &factors[j])?;
            let mut prefix_deg = 0i64;
            for other in &factors[..j] {
                prefix_deg += self.element_bidegree(other).map(|(m, _)| m).unwrap_or(0);
            }
            let mut term = Element::monomial(p, Monomial::one(), 1);
            for (k, fac) in factors.iter().enumerate() {
                let piece = if k == j { &qf } else { fac };
                term = self.mul_elements(&term, piece);
            }
            let sign = if p == 2 || prefix_deg % 2 == 0 {
                1
            } else {
                p as u64 - 1
            };
            out = out.add(&term.scale(sign));
        }
        Ok(out)
    }

    /// Solve the Leibniz identity `0 = Q_0(t^j * t^(-j))` for the Bockstein
    /// of a negative t-power: `Q_0(t^(-j)) = -t^(-2j) Q_0(t^j)`.
    pub fn q0_of_tau_inverse(&self, j: u32) -> Result<Element, PalgError> {
        assert!(matches!(self.base, BaseRing::RhoTau));
        let p = self.prime();
        let tau_j = self.elem_from_monomial(Monomial::rho_tau(0, j as i64));
        let q = self.apply_q(0, &tau_j)?;
        let minus_tau_minus_2j =
            Element::monomial(p, Monomial::rho_tau(0, -2 * j as i64), p as u64 - 1);
        let solved = self.mul_elements(&minus_tau_minus_2j, &q);
        // cross-check: the identity really does close up
        let tau_minus_j = self.elem_from_monomial(Monomial::rho_tau(0, -(j as i64)));
        let check = self
            .mul_elements(&q, &tau_minus_j)
            .add(&self.mul_elements(&tau_j, &solved));
        debug_assert!(check.is_zero());
        Ok(solved)
    }

    // ---- basis enumeration ----

    /// All normal monomials of first degree at most `max_first` times
    /// t-powers `0..=tau_max`, with deterministic names and ordering.
    pub fn slice_labels(&self, max_first: i64, tau_max: i64) -> Vec<SliceLabel> {
        let mut labels = Vec::new();
        if let Some(basis) = &self.explicit_basis {
            for b in basis {
                for j in 0..=tau_max {
                    let m = b.monomial.tau_shift(j);
                    if m.tau < self.tau_window.0 || m.tau > self.tau_window.1 {
                        continue;
                    }
                    let bideg = self.bidegree(&m);
                    if bideg.0 > max_first {
                        continue;
                    }
                    let name = if j == 0 {
                        b.label.clone()
                    } else if j == 1 {
                        format!("{}*t", b.label)
                    } else {
                        format!("{}*t^{}", b.label, j)
                    };
                    labels.push(SliceLabel {
                        name,
                        monomial: m,
                        bidegree: bideg,
                        tau_shift: j,
                    });
                }
            }
        } else {
            // BFS over generator exponents; normal monomials are downward
            // closed, so adding one letter at a time reaches all of them
            let mut seen = std::collections::BTreeSet::new();
            let mut queue = std::collections::VecDeque::new();
            let unit = Monomial::one();
            seen.insert(unit.clone());
            queue.push_back(unit);
            let mut bare = Vec::new();
            while let Some(m) = queue.pop_front() {
                bare.push(m.clone());
                for gidx in 0..self.generators.len() as u16 {
                    let next = m.combine(&Monomial::gen(gidx, 1));
                    if self.bidegree(&next).0 > max_first {
                        continue;
                    }
                    if !self.monomial_is_normal(&next) {
                        continue;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            for m in bare {
                for j in 0..=tau_max {
                    let mj = m.tau_shift(j);
                    let bideg = self.bidegree(&mj);
                    labels.push(SliceLabel {
                        name: self.monomial_name(&mj),
                        monomial: mj,
                        bidegree: bideg,
                        tau_shift: j,
                    });
                }
            }
        }
        labels.sort_by(|a, b| (a.bidegree, &a.monomial).cmp(&(b.bidegree, &b.monomial)));
        labels
    }

    /// The weight-zero part of the slice basis: the classes a Chow ring can
    /// see.
    pub fn chow_basis(&self, max_first: i64, tau_max: i64) -> Vec<SliceLabel> {
        self.slice_labels(max_first, tau_max)
            .into_iter()
            .filter(|l| l.weight() == 0)
            .collect()
    }

    // ---- display ----

    pub fn monomial_name(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (&i, &e) in &m.gens {
            let name = &self.generators[i as usize].name;
            if e == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, e));
            }
        }
        if m.rho == 1 {
            parts.push("r".to_string());
        } else if m.rho > 1 {
            parts.push(format!("r^{}", m.rho));
        }
        if m.tau == 1 {
            parts.push("t".to_string());
        } else if m.tau != 0 {
            parts.push(format!("t^{}", m.tau));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn element_string(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in e.terms() {
            let name = self.monomial_name(m);
            if c == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{}*{}", c, name));
            }
        }
        parts.join(" + ")
    }

    /// Parse a monomial like `r^6*t^-3`, `x*y^2` or `x y^2 t` (factors may
    /// be separated by `*` or whitespace).
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial, PalgError> {
        let mut m = Monomial::one();
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split(['*', ' ']).filter(|f| !f.is_empty()) {
            let (head, exp) = match factor.split_once('^') {
                Some((h, e)) => (
                    h,
                    e.parse::<i64>()
                        .map_err(|_| PalgError::UnknownGenerator(factor.to_string()))?,
                ),
                None => (factor, 1),
            };
            match head {
                "r" => {
                    if exp < 0 {
                        return Err(PalgError::UnknownGenerator(factor.to_string()));
                    }
                    m.rho += exp as u32;
                }
                "t" => m.tau += exp,
                name => {
                    let idx = self
                        .generator_index(name)
                        .ok_or_else(|| PalgError::UnknownGenerator(name.to_string()))?;
                    if exp < 0 {
                        return Err(PalgError::UnknownGenerator(factor.to_string()));
                    }
                    *m.gens.entry(idx).or_insert(0) += exp as u32;
                }
            }
        }
        Ok(m)
    }

    pub fn parse_element(&self, s: &str) -> Result<Element, PalgError> {
        let p = self.prime();
        let s = s.trim();
        if s == "0" {
            return Ok(Element::zero(p));
        }
        let mut out = Element::zero(p);
        for part in s.split('+') {
            let part = part.trim();
            // optional leading coefficient
            let (coef, rest) = match part.split_once('*') {
                Some((head, rest)) if head.trim().chars().all(|c| c.is_ascii_digit()) => {
                    (head.trim().parse::<u64>().unwrap_or(1), rest)
                }
                _ => (1, part),
            };
            let m = self.parse_monomial(rest)?;
            out.add_term(m, coef);
        }
        Ok(self.normalize(out))
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
