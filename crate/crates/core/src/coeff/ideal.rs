use std::fmt;

use super::element::CoeffElement;
use super::theory::{Support, Theory};

/// An ideal of a coefficient ring, in one of the shapes the theories use.
///
/// `I(n)` is the invariant ideal `(p, v_1, ..., v_{n-1})`, with `I(0)` the
/// zero ideal and `I(inf)` the symbolic limit `(p, v_1, v_2, ...)`.
/// `JFrom(m)` is the rule "kill every `v_i` with `i >= m`" (the classical
/// `J_m`), never stored as a list. `Custom` holds explicit generators.
///
/// A named ideal is always interpreted relative to the theory of whatever it
/// annihilates, so `I(2)` inside a `P(1)` presentation means the image ideal
/// `(v_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSpec {
    I(u32),
    IInfinity,
    JFrom(u32),
    Custom(Vec<CoeffElement>),
}

impl IdealSpec {
    pub fn zero() -> IdealSpec {
        IdealSpec::I(0)
    }

    pub fn is_zero_in(&self, theory: Theory) -> bool {
        match self {
            IdealSpec::I(0) => true,
            IdealSpec::I(n) => {
                // generators p, v_1 .. v_{n-1}: all dead iff scalars are
                // already mod p and every listed generator is killed
                theory.scalar_mode() == super::theory::ScalarMode::Fp
                    && (1..*n).all(|i| theory.support(i) == Support::Zero)
            }
            IdealSpec::IInfinity => {
                theory.scalar_mode() == super::theory::ScalarMode::Fp
                    && theory.first_generator().is_none()
            }
            IdealSpec::JFrom(m) => generator_indices_from(theory, *m).is_empty(),
            IdealSpec::Custom(gens) => gens.iter().all(|g| g.is_zero()),
        }
    }

    /// True if some generator of the ideal becomes a unit in `theory`
    /// (e.g. `v_n` inside `K(n)`). A cyclic summand with such an annihilator
    /// is the zero module.
    pub fn contains_unit_in(&self, theory: Theory) -> bool {
        match self {
            IdealSpec::I(n) => (1..*n).any(|i| theory.support(i) == Support::Invertible),
            IdealSpec::IInfinity => matches!(theory.kind(), super::theory::TheoryKind::K),
            IdealSpec::JFrom(m) => generator_indices_from(theory, *m)
                .iter()
                .any(|&i| theory.support(i) == Support::Invertible),
            IdealSpec::Custom(gens) => gens.iter().any(|g| g.is_unit()),
        }
    }

    /// Normal form of the ideal as an annihilator inside `theory`: dead
    /// generators dropped, `(v_s, ..., v_{m-1})`-shaped lists renamed to
    /// `I(m)`.
    pub fn normalize_in(&self, theory: Theory) -> IdealSpec {
        match self {
            IdealSpec::I(n) => {
                if self.is_zero_in(theory) {
                    return IdealSpec::I(0);
                }
                // clamp to the canonical name: dead generators at the top
                // of the list do not change the image ideal
                let last_live = (1..*n)
                    .filter(|&i| theory.support(i) != Support::Zero)
                    .max();
                let n_canon = match (theory.scalar_mode(), last_live) {
                    (super::theory::ScalarMode::Rational, None) => 1,
                    (super::theory::ScalarMode::Rational, Some(l)) => l + 1,
                    (super::theory::ScalarMode::Fp, Some(l)) => l + 1,
                    (super::theory::ScalarMode::Fp, None) => return IdealSpec::I(0),
                };
                IdealSpec::I(n_canon.min(*n))
            }
            IdealSpec::IInfinity => IdealSpec::IInfinity,
            IdealSpec::JFrom(m) => {
                if generator_indices_from(theory, *m).is_empty() {
                    IdealSpec::I(0)
                } else {
                    IdealSpec::JFrom(*m)
                }
            }
            IdealSpec::Custom(gens) => {
                let mut live: Vec<CoeffElement> =
                    gens.iter().filter(|g| !g.is_zero()).cloned().collect();
                live.sort_by_key(|g| g.to_string());
                live.dedup();
                if live.is_empty() {
                    return IdealSpec::I(0);
                }
                // over a mod-p theory a consecutive run (v_s, ..., v_{m-1})
                // starting at the first generator is the image of I(m)
                if theory.scalar_mode() == super::theory::ScalarMode::Fp {
                    if let Some(first) = theory.first_generator() {
                        let mut indices: Vec<u32> = Vec::new();
                        let single_vs = live.iter().all(|g| {
                            g.as_single_term().is_some_and(|(m, _)| {
                                let exps: Vec<_> = m.exponents().collect();
                                if let [(i, 1)] = exps[..] {
                                    indices.push(i);
                                    true
                                } else {
                                    false
                                }
                            })
                        });
                        if single_vs {
                            indices.sort_unstable();
                            let consecutive = indices
                                .iter()
                                .enumerate()
                                .all(|(k, &i)| i == first + k as u32);
                            if consecutive && !indices.is_empty() {
                                return IdealSpec::I(indices.last().unwrap() + 1);
                            }
                        }
                    }
                }
                IdealSpec::Custom(live)
            }
        }
    }

    /// The generator strings used by the presentation text format.
    pub fn generator_strings(&self) -> Vec<String> {
        match self {
            IdealSpec::I(n) => {
                let mut out = Vec::new();
                if *n >= 1 {
                    out.push("p".to_string());
                }
                for i in 1..*n {
                    out.push(format!("v{}", i));
                }
                out
            }
            IdealSpec::IInfinity => vec!["Iinf".to_string()],
            IdealSpec::JFrom(m) => vec![format!("J{}", m)],
            IdealSpec::Custom(gens) => gens.iter().map(|g| g.to_string()).collect(),
        }
    }
}

/// Generator indices of `theory` that are >= m, in increasing order.
fn generator_indices_from(theory: Theory, m: u32) -> Vec<u32> {
    let Some(first) = theory.first_generator() else {
        return Vec::new();
    };
    // every theory here has contiguous support from its first generator
    let mut out = Vec::new();
    let mut i = first.max(m);
    while theory.support(i) != Support::Zero {
        out.push(i);
        i += 1;
        if i > first + 64 {
            break; // BP / P(n): infinitely many, a prefix is enough
        }
    }
    out
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::I(n) => write!(f, "I({})", n),
            IdealSpec::IInfinity => write!(f, "I(inf)"),
            IdealSpec::JFrom(m) => write!(f, "J({})", m),
            IdealSpec::Custom(gens) => {
                write!(f, "(")?;
                for (k, g) in gens.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", g)?;
                }
                write!(f, ")")
            }
        }
    }
}
