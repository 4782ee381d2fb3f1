use thiserror::Error;

use crate::coeff::{
    base_change, quotient_theory, IdealSpec, ModulePresentation, Ring, Theory, TheoryKind,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoriesError {
    #[error("expected a BP-module presentation, got {0}")]
    NotOverBp(String),
    #[error("unsupported quotient ideal {0}: only I(n), I(inf), J(m) and explicit lists")]
    UnsupportedIdeal(String),
    #[error(transparent)]
    Presentation(#[from] crate::coeff::PresentationError),
    #[error(transparent)]
    Ring(#[from] crate::coeff::RingError),
}

/// Reduce an algebraic-cobordism presentation by an invariant ideal:
/// `Omega*/(I) ` summand by summand. Named ideals move the presentation to
/// the named quotient theory; an explicit generator list enlarges every
/// annihilator in place.
pub fn omega_quotient(
    omega: &ModulePresentation,
    ideal: &IdealSpec,
) -> Result<ModulePresentation, TheoriesError> {
    if omega.theory.kind() != TheoryKind::Bp {
        return Err(TheoriesError::NotOverBp(omega.theory.to_string()));
    }
    match ideal {
        IdealSpec::I(0) => Ok(omega.clone()),
        IdealSpec::I(_) | IdealSpec::IInfinity | IdealSpec::JFrom(_) => {
            let target = quotient_theory(omega.theory, ideal)
                .map_err(|_| TheoriesError::UnsupportedIdeal(ideal.to_string()))?;
            Ok(base_change(omega, target)?)
        }
        IdealSpec::Custom(gens) => {
            // stay over BP and enlarge each annihilator
            let ring = Ring::new(omega.theory);
            let mut out = omega.clone();
            for s in &mut out.summands {
                let mut list: Vec<_> = match &s.annihilator {
                    IdealSpec::Custom(g) => g.clone(),
                    IdealSpec::I(n) => {
                        let mut g = vec![ring.scalar(omega.theory.prime() as i64)];
                        if *n == 0 {
                            g.clear();
                        }
                        for i in 1..*n {
                            g.push(ring.v(i));
                        }
                        g
                    }
                    other => {
                        return Err(TheoriesError::UnsupportedIdeal(other.to_string()));
                    }
                };
                list.extend(gens.iter().cloned());
                s.annihilator = IdealSpec::Custom(list).normalize_in(omega.theory);
            }
            out.validate()?;
            Ok(out)
        }
    }
}

/// `Omega* (x)_{BP*} K(n)*`: base change of a BP presentation to the
/// periodic height-n theory.
pub fn morava_k(omega: &ModulePresentation, n: u32) -> Result<ModulePresentation, TheoriesError> {
    if omega.theory.kind() != TheoryKind::Bp {
        return Err(TheoriesError::NotOverBp(omega.theory.to_string()));
    }
    let target = Theory::morava_k(n, omega.theory.prime()).expect("valid height");
    Ok(base_change(omega, target)?)
}

/// The weight-zero part of a presentation: the summands a Chow ring sees.
pub fn chow_part(m: &ModulePresentation) -> ModulePresentation {
    let mut out = m.clone();
    out.summands.retain(|s| s.degree.weight() == 0);
    out
}

/// Base-extend along `BP* -> Z_(p)` (kill every generator): the summand
/// count surviving this is the Chow-rank of the presentation.
pub fn to_integral(m: &ModulePresentation) -> Result<ModulePresentation, TheoriesError> {
    if m.theory.kind() != TheoryKind::Bp {
        return Err(TheoriesError::NotOverBp(m.theory.to_string()));
    }
    let target = Theory::hz(m.theory.prime()).expect("valid prime");
    Ok(base_change(m, target)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{CyclicSummand, SummandDegree};

    fn bzp_like() -> ModulePresentation {
        // BP*{1} (+) P(2)*{y6} as in the SO(7) computation
        ModulePresentation::new(
            Theory::bp(2).unwrap(),
            vec![
                CyclicSummand::free("1", SummandDegree::FirstWeight(0, 0)),
                CyclicSummand {
                    generator: "y6".to_string(),
                    degree: SummandDegree::FirstWeight(6, 0),
                    annihilator: IdealSpec::I(2),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn quotient_by_i1_is_reduction_mod_p() {
        let m = bzp_like();
        let out = omega_quotient(&m, &IdealSpec::I(1)).unwrap();
        assert_eq!(out.theory, Theory::p_n(1, 2).unwrap());
        assert_eq!(out.pretty(), "P(1)*{1} (+) P(2)*{y6}");
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let m = bzp_like();
        assert_eq!(omega_quotient(&m, &IdealSpec::I(0)).unwrap(), m);
    }

    #[test]
    fn morava_k_matches_base_change_through_p() {
        let m = bzp_like();
        for n in [1u32, 2, 3] {
            let direct = morava_k(&m, n).unwrap();
            let via_p = base_change(
                &omega_quotient(&m, &IdealSpec::I(n)).unwrap(),
                Theory::morava_k(n, 2).unwrap(),
            )
            .unwrap();
            assert_eq!(direct, via_p);
        }
    }

    #[test]
    fn integral_extension_counts_chow_rank() {
        let m = bzp_like();
        let z = to_integral(&m).unwrap();
        assert_eq!(z.rank(), 2);
        // the torsion summand becomes Z/p: annihilator (p)
        assert_eq!(z.summands[1].annihilator, IdealSpec::I(1));
    }

    #[test]
    fn custom_ideal_enlarges_annihilators() {
        let m = bzp_like();
        let ring = Ring::new(m.theory);
        let out = omega_quotient(&m, &IdealSpec::Custom(vec![ring.v(3)])).unwrap();
        assert_eq!(out.theory, m.theory);
        assert_eq!(
            out.summands[0].annihilator,
            IdealSpec::Custom(vec![ring.v(3)])
        );
    }

    #[test]
    fn non_bp_inputs_are_refused() {
        let m = ModulePresentation::empty(Theory::p_n(1, 2).unwrap());
        assert!(matches!(
            omega_quotient(&m, &IdealSpec::I(2)),
            Err(TheoriesError::NotOverBp(_))
        ));
        assert!(matches!(morava_k(&m, 1), Err(TheoriesError::NotOverBp(_))));
    }
}
