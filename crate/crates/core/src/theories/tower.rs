use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::{CyclicSummand, IdealSpec, ModulePresentation, Theory, TheoryKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("tower steps act on P(s) presentations, got {0}")]
    NotHeightTheory(String),
    #[error("presentation is not certified free over a single height: summand `{gen}` has annihilator {ann}")]
    NotFree { gen: String, ann: String },
    #[error("tower step at s = {s} is only valid below the height {n}")]
    AboveHeight { s: u32, n: u32 },
    #[error("pairing is not a bijection: `{0}` occurs twice or collides with an existing label")]
    BadPairing(String),
    #[error(transparent)]
    Presentation(#[from] crate::coeff::PresentationError),
}

/// The common height of a `P(n)*`-free presentation over `P(s)`: every
/// annihilator must be the image of the same `I(n)` (with `n = s` for a
/// free presentation).
fn certified_height(pres: &ModulePresentation) -> Result<u32, TowerError> {
    if pres.theory.kind() != TheoryKind::P {
        return Err(TowerError::NotHeightTheory(pres.theory.to_string()));
    }
    let s = pres.theory.height();
    let mut height: Option<u32> = None;
    for summand in &pres.summands {
        let ann = summand.annihilator.normalize_in(pres.theory);
        let n = match ann {
            IdealSpec::I(0) => s,
            IdealSpec::I(n) if n >= s => n,
            other => {
                return Err(TowerError::NotFree {
                    gen: summand.generator.clone(),
                    ann: other.to_string(),
                });
            }
        };
        match height {
            None => height = Some(n),
            Some(h) if h == n => {}
            Some(_) => {
                return Err(TowerError::NotFree {
                    gen: summand.generator.clone(),
                    ann: summand.annihilator.to_string(),
                });
            }
        }
    }
    Ok(height.unwrap_or(s))
}

/// One step up the connective tower: from a presentation
/// `P(n)* (x) Q(s-1) (x) B_s` over `P(s)` to `P(n)* (x) Q(s) (x) B_{s+1}`
/// over `P(s+1)`.
///
/// Below the height the multiplication by `v_s` vanishes, so the long
/// exact sequence contributes two classes for every old one: its reduction
/// and a preimage under the connecting map. The `pairing` names the
/// preimage label for each existing label; labels without an entry get the
/// default name `Q{s}^-1(label)`.
pub fn tower_step(
    pres: &ModulePresentation,
    pairing: &BTreeMap<String, String>,
) -> Result<ModulePresentation, TowerError> {
    let n = certified_height(pres)?;
    let s = pres.theory.height();
    if s >= n {
        return Err(TowerError::AboveHeight { s, n });
    }
    let p = pres.theory.prime();
    let target = Theory::p_n(s + 1, p).expect("valid height");
    // the connecting map realizes Q_s = r delta, so a preimage sits lower
    // by the bidegree of Q_s
    let dm = 2 * (p as i64).pow(s) - 1;
    let dmp = (p as i64).pow(s) - 1;
    let mut summands = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    for old in &pres.summands {
        used.insert(old.generator.clone());
    }
    for old in &pres.summands {
        let ann = IdealSpec::I(n);
        summands.push(CyclicSummand {
            generator: old.generator.clone(),
            degree: old.degree,
            annihilator: ann.clone(),
        });
        let preimage = pairing
            .get(&old.generator)
            .cloned()
            .unwrap_or_else(|| format!("Q{}^-1({})", s, old.generator));
        if !used.insert(preimage.clone()) {
            return Err(TowerError::BadPairing(preimage));
        }
        summands.push(CyclicSummand {
            generator: preimage,
            degree: old.degree.shifted(-dm, -dmp),
            annihilator: ann,
        });
    }
    Ok(ModulePresentation::new(target, summands)?)
}

/// Iterate tower steps with default preimage names from the presentation's
/// height up to `to`.
pub fn tower_to(pres: &ModulePresentation, to: u32) -> Result<ModulePresentation, TowerError> {
    let mut current = pres.clone();
    while current.theory.height() < to {
        current = tower_step(&current, &BTreeMap::new())?;
    }
    Ok(current)
}

/// Collapse a `P(n)*`-free presentation to Morava K-theory at height `s`:
/// zero below the height, `K(n)* (x) B` at the height (with the basis
/// expanded through the tower when the input sits at a lower stage), and
/// `K(s)* (x) B` with the same expanded basis above it.
pub fn collapse_k(pres: &ModulePresentation, s: u32) -> Result<ModulePresentation, TowerError> {
    let n = certified_height(pres)?;
    let p = pres.theory.prime();
    let target = Theory::morava_k(s, p).expect("valid height");
    if s < n {
        return Ok(ModulePresentation::empty(target));
    }
    let at_height = tower_to(pres, n)?;
    let summands = at_height
        .summands
        .iter()
        .map(|old| CyclicSummand {
            generator: old.generator.clone(),
            degree: old.degree,
            annihilator: IdealSpec::I(0),
        })
        .collect();
    Ok(ModulePresentation::new(target, summands)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::SummandDegree;

    fn p_free(s: u32, n: u32, labels: &[&str]) -> ModulePresentation {
        let theory = Theory::p_n(s, 2).unwrap();
        let summands = labels
            .iter()
            .enumerate()
            .map(|(k, l)| CyclicSummand {
                generator: l.to_string(),
                degree: SummandDegree::FirstWeight(2 * k as i64, 0),
                annihilator: IdealSpec::I(n),
            })
            .collect();
        ModulePresentation::new(theory, summands).unwrap()
    }

    #[test]
    fn step_doubles_rank() {
        // n = 2, s = 1, B_1 = {b}: rank doubles from 1 to 2
        let pres = p_free(1, 2, &["b"]);
        let mut pairing = BTreeMap::new();
        pairing.insert("b".to_string(), "b'".to_string());
        let next = tower_step(&pres, &pairing).unwrap();
        assert_eq!(next.theory, Theory::p_n(2, 2).unwrap());
        assert_eq!(next.rank(), 2);
        assert!(next
            .summands
            .iter()
            .all(|su| su.annihilator.normalize_in(next.theory) == IdealSpec::I(0)));
        assert_eq!(next.summands[1].generator, "b'");
    }

    #[test]
    fn iterating_multiplies_rank_by_two_each_step() {
        let pres = p_free(1, 3, &["b"]);
        let top = tower_to(&pres, 3).unwrap();
        assert_eq!(top.rank(), 4); // 2^(n-1) per label
        assert_eq!(top.theory.height(), 3);
    }

    #[test]
    fn step_above_height_errors() {
        let pres = p_free(2, 2, &["b"]); // free at its own height
        assert!(matches!(
            tower_step(&pres, &BTreeMap::new()),
            Err(TowerError::AboveHeight { s: 2, n: 2 })
        ));
    }

    #[test]
    fn empty_input_gives_empty_output() {
        let pres = ModulePresentation::empty(Theory::p_n(1, 2).unwrap());
        let next = tower_step(&pres, &BTreeMap::new());
        // height defaults to s, so the step is refused as above-height
        assert!(matches!(next, Err(TowerError::AboveHeight { .. })));
        let k = collapse_k(&pres, 1).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn collapse_below_at_and_above_height() {
        let pres = p_free(1, 2, &["b"]);
        // s < n: zero
        assert!(collapse_k(&pres, 1).unwrap().is_empty());
        // s = n: the basis expands through the tower, rank 2
        let at = collapse_k(&pres, 2).unwrap();
        assert_eq!(at.theory, Theory::morava_k(2, 2).unwrap());
        assert_eq!(at.rank(), 2);
        // s > n: same basis over K(s)
        let above = collapse_k(&pres, 3).unwrap();
        assert_eq!(above.rank(), 2);
        assert_eq!(above.theory, Theory::morava_k(3, 2).unwrap());
    }

    #[test]
    fn path_independence_through_the_tower() {
        // collapsing directly equals towering up first
        let pres = p_free(1, 3, &["b", "c"]);
        let direct = collapse_k(&pres, 3).unwrap();
        let towered = collapse_k(&tower_to(&pres, 3).unwrap(), 3).unwrap();
        assert_eq!(direct.rank(), towered.rank());
        assert_eq!(direct.theory, towered.theory);
        let d: Vec<_> = direct
            .sorted()
            .summands
            .iter()
            .map(|s| s.generator.clone())
            .collect();
        let t: Vec<_> = towered
            .sorted()
            .summands
            .iter()
            .map(|s| s.generator.clone())
            .collect();
        assert_eq!(d, t);
    }

    #[test]
    fn mixed_annihilators_are_not_certified() {
        let theory = Theory::p_n(1, 2).unwrap();
        let m = ModulePresentation::new(
            theory,
            vec![
                CyclicSummand {
                    generator: "a".into(),
                    degree: SummandDegree::Chow(0),
                    annihilator: IdealSpec::I(2),
                },
                CyclicSummand {
                    generator: "b".into(),
                    degree: SummandDegree::Chow(1),
                    annihilator: IdealSpec::I(3),
                },
            ],
        )
        .unwrap();
        assert!(matches!(collapse_k(&m, 2), Err(TowerError::NotFree { .. })));
    }

    #[test]
    fn smith_toda_pattern() {
        // P(1)*(X) = P(n+1)* means K(s)*(X) = 0 for s <= n
        let n = 2u32;
        let pres = p_free(1, n + 1, &["1"]);
        for s in 1..=n {
            assert!(collapse_k(&pres, s).unwrap().is_empty(), "s={}", s);
        }
        assert!(!collapse_k(&pres, n + 1).unwrap().is_empty());
    }
}
