//! Freeness of a cohomology algebra over the exterior algebra of Milnor
//! operations.

use std::collections::BTreeMap;

use super::algebra::{Element, PalgError, PresentedAlgebra};
use crate::linalg::Subspace;

/// A certificate that the Q-words on a candidate basis enumerate the
/// algebra: the word (S, b) hits the recorded basis monomial.
#[derive(Debug, Clone)]
pub struct QModuleBasis {
    pub n: u32,
    pub basis_labels: Vec<String>,
    /// (subset mask, candidate index, name of the monomial hit) for every
    /// word that is a single monomial; words hitting combinations are
    /// certified but produce no entry
    pub certificate: Vec<(u32, usize, String)>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FreenessFailure {
    #[error("word Q(mask={mask:#b}) on candidate {candidate} is dependent on earlier words")]
    Dependent { mask: u32, candidate: usize },
    #[error("monomial `{0}` of the algebra is not spanned by the Q-words")]
    NotSpanning(String),
    #[error(transparent)]
    Q(#[from] PalgError),
}

/// Check that `{Q_S(b) : S subset of {0..n-1}, b in candidates}` is linearly
/// independent and spans the algebra within the first-degree window
/// `[lo, hi]` (and t-powers up to `tau_max`).
///
/// Words are applied in decreasing index order, `Q_{s_1}(Q_{s_2}(...))` with
/// `s_1 < s_2 < ...`.
pub fn verify_q_freeness(
    algebra: &PresentedAlgebra,
    n: u32,
    candidates: &[Element],
    window: (i64, i64),
    tau_max: i64,
) -> Result<QModuleBasis, FreenessFailure> {
    let p = algebra.prime() as u64;
    let labels = algebra.slice_labels(window.1, tau_max);
    let index: BTreeMap<_, _> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.monomial.clone(), i))
        .collect();
    let in_window = |first: i64| -> bool { first >= window.0 && first <= window.1 };

    let mut space = Subspace::new(p, labels.len());
    let mut certificate = Vec::new();
    for (ci, b) in candidates.iter().enumerate() {
        for mask in 0u32..(1 << n) {
            let mut w = b.clone();
            for i in (0..n).rev() {
                if mask & (1 << i) != 0 {
                    w = algebra.apply_q(i, &w)?;
                }
            }
            if w.is_zero() {
                return Err(FreenessFailure::Dependent {
                    mask,
                    candidate: ci,
                });
            }
            let Ok((first, _)) = algebra.element_bidegree(&w) else {
                continue;
            };
            if !in_window(first) {
                continue; // the word leaves the tested window
            }
            let mut vec = vec![0u64; labels.len()];
            for (m, c) in w.terms() {
                let Some(&idx) = index.get(m) else {
                    continue;
                };
                vec[idx] = c;
            }
            if !space.insert(vec) {
                return Err(FreenessFailure::Dependent {
                    mask,
                    candidate: ci,
                });
            }
            if let Some((m, _)) = w.as_single_monomial() {
                certificate.push((mask, ci, algebra.monomial_name(m)));
            }
        }
    }
    for l in &labels {
        if !in_window(l.bidegree.0) {
            continue;
        }
        let mut vec = vec![0u64; labels.len()];
        vec[index[&l.monomial]] = 1;
        if !space.contains(&vec) {
            return Err(FreenessFailure::NotSpanning(l.name.clone()));
        }
    }
    Ok(QModuleBasis {
        n,
        basis_labels: labels.iter().map(|l| l.name.clone()).collect(),
        certificate,
    })
}
