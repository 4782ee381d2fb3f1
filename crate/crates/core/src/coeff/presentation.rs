use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::ideal::IdealSpec;
use super::ring::Ring;
use super::theory::{Theory, TheoryKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate summand generator `{0}`")]
    DuplicateGenerator(String),
    #[error("summand `{0}` has an annihilator containing a unit and must be dropped")]
    UnitAnnihilator(String),
    #[error("base change from {from} to {to} is unsupported (cannot un-invert or re-integralize)")]
    UnsupportedDirection { from: String, to: String },
    #[error("presentations over different primes")]
    PrimeMismatch,
    #[error(
        "summand `{gen}`: annihilator {ann} is not compatible with the {ideal}-torsion annotation"
    )]
    AnnotationViolated {
        gen: String,
        ann: String,
        ideal: String,
    },
}

/// Degree data attached to a cyclic summand generator: either the motivic
/// pair (first degree, weight) or a single Chow degree k, shorthand for the
/// pair (2k, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SummandDegree {
    FirstWeight(i64, i64),
    Chow(i64),
}

impl SummandDegree {
    pub fn first_degree(&self) -> i64 {
        match self {
            SummandDegree::FirstWeight(m, _) => *m,
            SummandDegree::Chow(k) => 2 * k,
        }
    }

    pub fn weight(&self) -> i64 {
        match self {
            SummandDegree::FirstWeight(_, w) => *w,
            SummandDegree::Chow(_) => 0,
        }
    }

    /// The motivic second degree m' with w = 2m' - m.
    pub fn second_degree(&self) -> i64 {
        (self.first_degree() + self.weight()) / 2
    }

    pub fn shifted(&self, dm: i64, dmp: i64) -> SummandDegree {
        let m = self.first_degree() + dm;
        let mp = self.second_degree() + dmp;
        SummandDegree::FirstWeight(m, 2 * mp - m)
    }
}

impl fmt::Display for SummandDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandDegree::FirstWeight(m, w) => write!(f, "({},{})", m, w),
            SummandDegree::Chow(k) => write!(f, "chow({})", k),
        }
    }
}

/// One cyclic summand `h*/(annihilator){generator}` of a module
/// presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSummand {
    pub generator: String,
    pub degree: SummandDegree,
    pub annihilator: IdealSpec,
}

impl CyclicSummand {
    pub fn free(generator: impl Into<String>, degree: SummandDegree) -> CyclicSummand {
        CyclicSummand {
            generator: generator.into(),
            degree,
            annihilator: IdealSpec::zero(),
        }
    }
}

/// A finite direct sum of cyclic summands over a coefficient ring; the
/// universal output shape of every theory computation here.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation {
    pub theory: Theory,
    pub summands: Vec<CyclicSummand>,
    /// optional invariant-ideal tag: the presentation claims to be
    /// annihilated by (powers of) this ideal
    pub annotation: Option<IdealSpec>,
}

impl ModulePresentation {
    pub fn new(theory: Theory, summands: Vec<CyclicSummand>) -> Result<Self, PresentationError> {
        let m = ModulePresentation {
            theory,
            summands,
            annotation: None,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn empty(theory: Theory) -> ModulePresentation {
        ModulePresentation {
            theory,
            summands: Vec::new(),
            annotation: None,
        }
    }

    pub fn with_annotation(mut self, ideal: IdealSpec) -> Result<Self, PresentationError> {
        self.annotation = Some(ideal);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        let mut seen = BTreeSet::new();
        for s in &self.summands {
            if !seen.insert(s.generator.clone()) {
                return Err(PresentationError::DuplicateGenerator(s.generator.clone()));
            }
            if s.annihilator.contains_unit_in(self.theory) {
                return Err(PresentationError::UnitAnnihilator(s.generator.clone()));
            }
        }
        if let Some(ideal) = &self.annotation {
            // a summand is ideal-torsion when its annihilator contains the
            // ideal; check generator-wise on the named shapes
            for s in &self.summands {
                if !annihilator_contains(self.theory, &s.annihilator, ideal) {
                    return Err(PresentationError::AnnotationViolated {
                        gen: s.generator.clone(),
                        ann: s.annihilator.to_string(),
                        ideal: ideal.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summands ordered by (first degree, weight, generator name).
    pub fn sorted(&self) -> ModulePresentation {
        let mut out = self.clone();
        out.summands.sort_by(|a, b| {
            (a.degree.first_degree(), a.degree.weight(), &a.generator).cmp(&(
                b.degree.first_degree(),
                b.degree.weight(),
                &b.generator,
            ))
        });
        out
    }

    /// Shift every summand bidegree by (dm, dm') — a Tate twist for (2, 1).
    pub fn shifted(&self, dm: i64, dmp: i64) -> ModulePresentation {
        let mut out = self.clone();
        for s in &mut out.summands {
            s.degree = s.degree.shifted(dm, dmp);
        }
        out
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> ModulePresentation {
        let mut out = self.clone();
        for s in &mut out.summands {
            s.generator = f(&s.generator);
        }
        out
    }

    /// One-line human-readable form, e.g. `BP*{1} (+) P(2)*{y6}`.
    pub fn pretty(&self) -> String {
        if self.summands.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                format!(
                    "{}{{{}}}",
                    quotient_ring_name(self.theory, &s.annihilator),
                    s.generator
                )
            })
            .collect();
        parts.join(" (+) ")
    }
}

/// Display name of `theory*/(ann)`, preferring the named quotients:
/// annihilator `I(n)` over `BP` prints as `P(n)*`, etc.
pub fn quotient_ring_name(theory: Theory, ann: &IdealSpec) -> String {
    let ann = ann.normalize_in(theory);
    let base = |t: Theory| -> String {
        let s = t.to_string();
        s.split_once('@').map(|(h, _)| h.to_string()).unwrap_or(s)
    };
    if ann.is_zero_in(theory) {
        return format!("{}*", base(theory));
    }
    match (theory.kind(), &ann) {
        (TheoryKind::Bp, IdealSpec::I(n)) => format!("P({})*", n),
        (TheoryKind::Bp, IdealSpec::IInfinity) => "HFp*".to_string(),
        (TheoryKind::Bp, IdealSpec::JFrom(m)) => format!("BP<{}>*", m - 1),
        (TheoryKind::P, IdealSpec::I(n)) if *n > theory.height() => format!("P({})*", n),
        _ => format!("{}*/{}", base(theory), ann),
    }
}

fn annihilator_contains(theory: Theory, ann: &IdealSpec, ideal: &IdealSpec) -> bool {
    let ann = ann.normalize_in(theory);
    let ideal = ideal.normalize_in(theory);
    if ideal.is_zero_in(theory) {
        return true;
    }
    match (&ann, &ideal) {
        (IdealSpec::I(a), IdealSpec::I(b)) => a >= b,
        (IdealSpec::IInfinity, IdealSpec::I(_)) => true,
        (IdealSpec::IInfinity, IdealSpec::IInfinity) => true,
        (IdealSpec::JFrom(a), IdealSpec::JFrom(b)) => a <= b,
        _ => false,
    }
}

/// Base change of a module presentation along `h* -> target*`, killing
/// and/or inverting generators.
///
/// Every cyclic summand `h*/(A){g}` maps to `target*/(A·target*){g}`; a
/// summand whose annihilator hits a unit of the target (for instance `v_n`
/// inside `K(n)*`) becomes zero and is dropped. Input order is preserved.
pub fn base_change(
    m: &ModulePresentation,
    target: Theory,
) -> Result<ModulePresentation, PresentationError> {
    if m.theory.prime() != target.prime() {
        return Err(PresentationError::PrimeMismatch);
    }
    if !direction_supported(m.theory, target) {
        return Err(PresentationError::UnsupportedDirection {
            from: m.theory.to_string(),
            to: target.to_string(),
        });
    }
    let ring = Ring::new(target);
    let mut summands = Vec::new();
    for s in &m.summands {
        let image = match &s.annihilator {
            IdealSpec::Custom(gens) => {
                let mut mapped = Vec::new();
                for g in gens {
                    mapped.push(ring.import(g).map_err(|_| {
                        PresentationError::UnsupportedDirection {
                            from: m.theory.to_string(),
                            to: target.to_string(),
                        }
                    })?);
                }
                IdealSpec::Custom(mapped)
            }
            named => named.clone(),
        };
        if image.contains_unit_in(target) {
            continue; // the summand is the zero module over the target
        }
        summands.push(CyclicSummand {
            generator: s.generator.clone(),
            degree: s.degree,
            annihilator: image.normalize_in(target),
        });
    }
    Ok(ModulePresentation {
        theory: target,
        summands,
        annotation: None,
    })
}

/// Which base changes are reachable by killing/inverting generators.
/// Un-inverting (`K(n)` to anything but itself) is not.
fn direction_supported(from: Theory, to: Theory) -> bool {
    use TheoryKind::*;
    match (from.kind(), to.kind()) {
        (Bp, _) => true,
        (P, P) | (P, KConn) | (P, K) => to.height() >= from.height(),
        (P, HFp) => true,
        (KConn, K) => to.height() == from.height(),
        (KConn, HFp) => true,
        (BpTrunc, BpTrunc) | (BpTrunc, KConn) => to.height() <= from.height(),
        (BpTrunc, Hz) | (BpTrunc, HFp) => true,
        (Hz, HFp) => true,
        _ => from == to,
    }
}
