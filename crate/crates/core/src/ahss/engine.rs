use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coeff::{
    CyclicSummand, IdealSpec, ModulePresentation, Ring, SummandDegree, Support, VMonomial,
};
use crate::palg::{PalgError, PresentedAlgebra};

use super::page::{apply_differential, coefficient_monomials, e2_page, rule_shift, Page, Window};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AhssError {
    #[error("the engine runs over P(s) theories only, got {0}")]
    TheoryNotSupported(String),
    #[error("algebra and theory use different primes")]
    PrimeMismatch,
    #[error("window too small to contain the unit slice")]
    WindowTooSmall,
    #[error("rule v{s} (x) Q{s} is not admissible over {theory} (v{s} = 0 there)")]
    InadmissibleRule { s: u32, theory: String },
    #[error("rule indices must be strictly ascending")]
    RulesNotAscending,
    #[error(transparent)]
    Q(#[from] PalgError),
    #[error("d o d != 0 out of slice {slice}; aborting")]
    DifferentialSquare { slice: String },
    #[error("the differential formula does not descend to the current page at slice {slice}")]
    DoesNotDescend { slice: String },
    #[error(
        "potential higher differentials: rule v{s} (x) Q{s} could still act out of slice {slice}"
    )]
    PotentialHigherDifferentials { s: u32, slice: String },
    #[error("cannot present: survivor {survivor} in slice {slice} is not a monomial class")]
    CannotPresent { slice: String, survivor: String },
    #[error("cannot present: label `{label}` survives with an irregular coefficient support")]
    IrregularSupport { label: String },
    #[error("permanent-cycle check applies to smooth-flagged presentations only")]
    NotSmooth,
    #[error(
        "permanent-cycle check failed: d{rule} out of Chow slice {slice} has a nonempty target"
    )]
    PermanentCycleViolated { slice: String, rule: u32 },
}

/// The outcome of a full run: the E_infinity presentation and bookkeeping
/// about the pages passed through.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub presentation: ModulePresentation,
    pub rules_applied: Vec<u32>,
    pub final_round: u32,
    /// dimensions of the reported window slice-total per page, starting
    /// with E_2
    pub dims: Vec<usize>,
    /// true when the collapse was certified by empty targets rather than
    /// forced
    pub collapse_certified: bool,
}

/// Run the spectral sequence: build E_2, apply the rules in ascending
/// order, certify collapse, and reassemble the surviving slices into a
/// module presentation.
///
/// The window is enlarged internally by the total shift of the requested
/// rules so that every class in the reported window sees its differentials;
/// survivors outside the requested window are discarded at the end.
pub fn run_to_collapse(
    algebra: &PresentedAlgebra,
    theory: crate::coeff::Theory,
    rules: &[u32],
    window: Window,
    force_collapse: bool,
) -> Result<RunReport, AhssError> {
    if rules.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AhssError::RulesNotAscending);
    }
    for &s in rules {
        if s < theory.height() {
            return Err(AhssError::InadmissibleRule {
                s,
                theory: theory.to_string(),
            });
        }
    }
    let p = theory.prime();
    // slack: the total shift of all rules, so the reported zone is exact
    let mut slack_m = 0i64;
    let mut slack_c = 0i64;
    for &s in rules {
        let (dm, _, dc) = rule_shift(p, s);
        slack_m += dm;
        slack_c += -dc;
    }
    let tau_slack = match algebra.rho_truncation() {
        Some(tr) => rules.len() as i64 * ((tr as i64 + 1) / 2 + 1),
        None => 0,
    };
    let internal = Window {
        max_first: window.max_first + slack_m,
        coeff_depth: window.coeff_depth + slack_c,
        tau_max: window.tau_max + tau_slack,
    };
    let mut page = e2_page(algebra, theory, internal)?;
    let mut dims = vec![reported_dim(&page, &window)];
    for &s in rules {
        page = apply_differential(&page, algebra, s)?;
        dims.push(reported_dim(&page, &window));
    }
    // collapse criterion, in order of strength:
    //  1. every surviving reported slice has even first degree, so every
    //     later differential (odd first-degree shift) leaves it and lands
    //     in zero;
    //  2. the algebra is degree-bounded and each remaining rule either
    //     overshoots the top degree, has no labels at its target bidegree,
    //     or acts by zero on every surviving label.
    let certified = match certify_collapse(algebra, theory, rules, &page, &window) {
        Ok(()) => true,
        Err(e) => {
            if !force_collapse {
                return Err(e);
            }
            false
        }
    };
    let presentation = extract_presentation(&page, &window)?;
    Ok(RunReport {
        presentation,
        rules_applied: rules.to_vec(),
        final_round: page.round,
        dims,
        collapse_certified: certified,
    })
}

/// Try to certify that the current page is E_infinity on the reported
/// window.
fn certify_collapse(
    algebra: &PresentedAlgebra,
    theory: crate::coeff::Theory,
    applied: &[u32],
    page: &Page,
    window: &Window,
) -> Result<(), AhssError> {
    let p = theory.prime();
    let reported: Vec<_> = page
        .slices
        .iter()
        .filter(|(k, s)| k.m <= window.max_first && -k.c <= window.coeff_depth && s.dim() > 0)
        .collect();
    if reported.iter().all(|(k, _)| k.m % 2 == 0) {
        return Ok(()); // the evenness argument
    }
    // degree bound of the algebra: saturating label enumeration
    let step = algebra
        .generators()
        .iter()
        .map(|g| g.bidegree.0)
        .max()
        .unwrap_or(1)
        .max(1);
    let probe = page.window.max_first;
    let l1 = algebra.slice_labels(probe, 0);
    let l2 = algebra.slice_labels(probe + step, 0);
    let bound = if l1.len() == l2.len() {
        l1.iter().map(|l| l.bidegree.0).max().unwrap_or(0)
    } else {
        // unbounded algebra with odd survivors: nothing more we can do
        let (key, _) = reported
            .iter()
            .find(|(k, _)| k.m % 2 != 0)
            .expect("odd survivor exists");
        return Err(AhssError::PotentialHigherDifferentials {
            s: theory.height(),
            slice: format!("({},{},{})", key.m, key.mp, key.c),
        });
    };
    let positions: std::collections::BTreeSet<(i64, i64)> =
        page.labels().iter().map(|l| l.bidegree).collect();
    for s in theory.height().max(1).. {
        let (dm, dmp, _) = rule_shift(p, s);
        if dm > bound {
            break; // targets exceed the top degree of the algebra
        }
        if applied.contains(&s) {
            continue;
        }
        for (key, slice) in &reported {
            if !positions.contains(&(key.m + dm, key.mp + dmp)) {
                continue; // no classes at the target bidegree at all
            }
            // fall back to the Q-action on the surviving labels
            let mut involved = std::collections::BTreeSet::new();
            for rep in slice.representatives() {
                for (i, &c) in rep.iter().enumerate() {
                    if c != 0 {
                        involved.insert(slice.cells[i].0);
                    }
                }
            }
            for li in involved {
                let label = &page.labels()[li];
                let q = algebra
                    .apply_q(s, &algebra.elem_from_monomial(label.monomial.clone()))
                    .map_err(|_| AhssError::PotentialHigherDifferentials {
                        s,
                        slice: format!("({},{},{})", key.m, key.mp, key.c),
                    })?;
                if !q.is_zero() {
                    return Err(AhssError::PotentialHigherDifferentials {
                        s,
                        slice: format!("({},{},{})", key.m, key.mp, key.c),
                    });
                }
            }
        }
    }
    Ok(())
}

fn reported_dim(page: &Page, window: &Window) -> usize {
    page.slices
        .iter()
        .filter(|(k, _)| k.m <= window.max_first && -k.c <= window.coeff_depth)
        .map(|(_, s)| s.dim())
        .sum()
}

/// Reassemble the surviving cells of a page into cyclic summands.
///
/// Every survivor must reduce to a single cell (label x coefficient
/// monomial); for each surviving label the set of surviving coefficient
/// monomials must be exactly the monomials avoiding some generator set,
/// which then forms the annihilator.
pub fn extract_presentation(page: &Page, window: &Window) -> Result<ModulePresentation, AhssError> {
    let theory = page.theory;
    let p = theory.prime();
    let mut survivors: BTreeMap<usize, BTreeSet<VMonomial>> = BTreeMap::new();
    for (key, slice) in &page.slices {
        if key.m > window.max_first || -key.c > window.coeff_depth {
            continue;
        }
        for rep in slice.representatives() {
            let nonzero: Vec<usize> = rep
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i)
                .collect();
            if nonzero.len() != 1 {
                return Err(AhssError::CannotPresent {
                    slice: format!("({},{},{})", key.m, key.mp, key.c),
                    survivor: nonzero
                        .iter()
                        .map(|&i| page.cell_name(slice.cells[i]))
                        .collect::<Vec<_>>()
                        .join(" + "),
                });
            }
            let (li, vi) = slice.cells[nonzero[0]];
            survivors
                .entry(li)
                .or_default()
                .insert(page.vmonos()[vi].clone());
        }
    }
    // reported coefficient monomials
    let reported: Vec<VMonomial> = coefficient_monomials(theory, window.coeff_depth);
    let top_gen = {
        let mut top = theory.first_generator().unwrap_or(1);
        while theory.support(top + 1) != Support::Zero
            && -theory.v_degree(top + 1) <= window.coeff_depth
        {
            top += 1;
        }
        top
    };
    let ring = Ring::new(theory);
    let mut summands = Vec::new();
    for (li, vset) in survivors {
        let label = &page.labels()[li];
        if label.bidegree.0 > window.max_first || label.tau_shift > window.tau_max {
            continue;
        }
        // annihilator generators: the v_i whose generator monomial is dead
        let first = theory.first_generator().expect("P(s) has generators");
        let killed: Vec<u32> = (first..=top_gen)
            .filter(|&i| !vset.contains(&VMonomial::gen(i, 1)))
            .collect();
        // check that the survivor set is exactly the monomials avoiding
        // the killed generators
        for v in &reported {
            let avoids = killed.iter().all(|&i| v.exponent(i) == 0);
            if avoids != vset.contains(v) {
                return Err(AhssError::IrregularSupport {
                    label: label.name.clone(),
                });
            }
        }
        let annihilator =
            IdealSpec::Custom(killed.iter().map(|&i| ring.v(i)).collect()).normalize_in(theory);
        let (m, mp) = label.bidegree;
        summands.push(CyclicSummand {
            generator: label.name.clone(),
            degree: SummandDegree::FirstWeight(m, 2 * mp - m),
            annihilator,
        });
    }
    summands.sort_by(|a, b| {
        (a.degree.first_degree(), a.degree.weight(), &a.generator).cmp(&(
            b.degree.first_degree(),
            b.degree.weight(),
            &b.generator,
        ))
    });
    let _ = p;
    ModulePresentation::new(theory, summands).map_err(|e| AhssError::CannotPresent {
        slice: "presentation".to_string(),
        survivor: e.to_string(),
    })
}
