use std::collections::BTreeMap;

use crate::coeff::{Support, Theory, TheoryKind, VMonomial};
use crate::linalg::Subspace;
use crate::palg::{PresentedAlgebra, SliceLabel};

use super::engine::AhssError;

/// The enumeration window of a run: maximal first degree of the cohomology
/// part, maximal absolute coefficient degree, and maximal extra t-power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub max_first: i64,
    pub coeff_depth: i64,
    pub tau_max: i64,
}

impl Window {
    pub fn new(max_first: i64, coeff_depth: i64, tau_max: i64) -> Window {
        Window {
            max_first,
            coeff_depth,
            tau_max,
        }
    }

    pub fn square(size: i64) -> Window {
        Window::new(size, size, size / 4)
    }
}

/// Slice coordinates: motivic bidegree of the cohomology part and the
/// (even, non-positive) coefficient degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SliceKey {
    pub m: i64,
    pub mp: i64,
    pub c: i64,
}

/// A cell of the starting page: cohomology label x coefficient monomial.
pub type CellId = (usize, usize);

#[derive(Debug, Clone)]
pub struct Slice {
    pub cells: Vec<CellId>,
    pub(crate) cell_pos: BTreeMap<CellId, usize>,
    /// surviving cycles, a subspace of the cell space
    pub(crate) z: Subspace,
    /// boundaries already killed, a subspace of `z`
    pub(crate) b: Subspace,
}

impl Slice {
    fn full(p: u64, cells: Vec<CellId>) -> Slice {
        let n = cells.len();
        let mut z = Subspace::new(p, n);
        for i in 0..n {
            let mut v = vec![0u64; n];
            v[i] = 1;
            z.insert(v);
        }
        Slice {
            cell_pos: cells
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (c, i))
                .collect(),
            cells,
            z,
            b: Subspace::new(p, n),
        }
    }

    /// Dimension of the page at this slice.
    pub fn dim(&self) -> usize {
        self.z.dim() - self.b.dim()
    }

    /// Representatives of the surviving classes: the z-basis reduced by b,
    /// zero rows dropped.
    pub fn representatives(&self) -> Vec<Vec<u64>> {
        // reduce the cycles modulo the boundaries, then re-echelonize so
        // the result is a canonical basis of the quotient
        let mut quotient = Subspace::new(self.z.prime(), self.z.ambient_dim());
        for v in self.z.basis() {
            quotient.insert(self.b.reduce(v.clone()));
        }
        quotient.basis().to_vec()
    }
}

/// A spectral-sequence page: slices of labeled F_p vector spaces.
#[derive(Debug, Clone)]
pub struct Page {
    pub theory: Theory,
    pub round: u32,
    pub window: Window,
    pub(crate) labels: Vec<SliceLabel>,
    pub(crate) label_index: BTreeMap<crate::palg::Monomial, usize>,
    pub(crate) vmonos: Vec<VMonomial>,
    pub(crate) vmono_index: BTreeMap<VMonomial, usize>,
    pub slices: BTreeMap<SliceKey, Slice>,
    pub applied: Vec<u32>,
}

impl Page {
    pub fn labels(&self) -> &[SliceLabel] {
        &self.labels
    }

    pub fn vmonos(&self) -> &[VMonomial] {
        &self.vmonos
    }

    pub fn prime(&self) -> u64 {
        self.theory.prime() as u64
    }

    pub fn slice_dim(&self, key: &SliceKey) -> usize {
        self.slices.get(key).map(|s| s.dim()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.slices.values().map(|s| s.dim()).sum()
    }

    pub fn cell_name(&self, cell: CellId) -> String {
        let label = &self.labels[cell.0].name;
        let v = &self.vmonos[cell.1];
        if v.is_one() {
            label.clone()
        } else {
            format!("{}(x){}", label, v)
        }
    }

    /// Names of a slice's surviving classes, when each survivor reduces to
    /// a single cell.
    pub fn slice_survivor_names(&self, key: &SliceKey) -> Vec<String> {
        let Some(slice) = self.slices.get(key) else {
            return Vec::new();
        };
        slice
            .representatives()
            .iter()
            .map(|v| {
                let nonzero: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, _)| i)
                    .collect();
                if nonzero.len() == 1 {
                    self.cell_name(slice.cells[nonzero[0]])
                } else {
                    nonzero
                        .iter()
                        .map(|&i| self.cell_name(slice.cells[i]))
                        .collect::<Vec<_>>()
                        .join(" + ")
                }
            })
            .collect()
    }
}

/// Enumerate the coefficient monomials of a height theory within the given
/// depth: monomials in `v_s, v_{s+1}, ...` of topological degree at least
/// `-depth`.
pub fn coefficient_monomials(theory: Theory, depth: i64) -> Vec<VMonomial> {
    let mut out = vec![VMonomial::one()];
    let Some(first) = theory.first_generator() else {
        return out;
    };
    let p = theory.prime();
    let mut gens = Vec::new();
    let mut i = first;
    while theory.support(i) != Support::Zero {
        let d = theory.v_degree(i);
        if -d > depth {
            break;
        }
        gens.push((i, d));
        i += 1;
    }
    // breadth-first over exponent vectors
    let mut frontier = vec![(VMonomial::one(), 0i64)];
    while let Some((m, d)) = frontier.pop() {
        for &(i, di) in &gens {
            // keep monomials sorted-unique: only extend by generators >= max index
            if m.exponents().next_back().is_some_and(|(j, _)| i < j) {
                continue;
            }
            let nd = d + di;
            if -nd > depth {
                continue;
            }
            let nm = m.mul(&VMonomial::gen(i, 1));
            out.push(nm.clone());
            frontier.push((nm, nd));
        }
    }
    out.sort();
    out.dedup();
    // deterministic: by degree (descending, i.e. shallow first), then lex
    out.sort_by_key(|m| (-m.degree(p), m.clone()));
    out
}

/// Build the starting page `E_2 = H (x) P(s)*` within the window.
pub fn e2_page(
    algebra: &PresentedAlgebra,
    theory: Theory,
    window: Window,
) -> Result<Page, AhssError> {
    if theory.kind() != TheoryKind::P {
        return Err(AhssError::TheoryNotSupported(theory.to_string()));
    }
    if theory.prime() != algebra.prime() {
        return Err(AhssError::PrimeMismatch);
    }
    if window.max_first < 0 || window.coeff_depth < 0 {
        return Err(AhssError::WindowTooSmall);
    }
    let p = theory.prime() as u64;
    let labels = algebra.slice_labels(window.max_first, window.tau_max);
    if labels.is_empty() {
        return Err(AhssError::WindowTooSmall);
    }
    let label_index = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.monomial.clone(), i))
        .collect();
    let vmonos = coefficient_monomials(theory, window.coeff_depth);
    let vmono_index: BTreeMap<VMonomial, usize> = vmonos
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut slice_cells: BTreeMap<SliceKey, Vec<CellId>> = BTreeMap::new();
    for (li, l) in labels.iter().enumerate() {
        for (vi, v) in vmonos.iter().enumerate() {
            let key = SliceKey {
                m: l.bidegree.0,
                mp: l.bidegree.1,
                c: v.degree(theory.prime()),
            };
            slice_cells.entry(key).or_default().push((li, vi));
        }
    }
    let slices = slice_cells
        .into_iter()
        .map(|(k, cells)| (k, Slice::full(p, cells)))
        .collect();
    Ok(Page {
        theory,
        round: 2,
        window,
        labels,
        label_index,
        vmonos,
        vmono_index,
        slices,
        applied: Vec::new(),
    })
}

/// The slice shift of the rule `d = v_s (x) Q_s`.
pub(crate) fn rule_shift(p: u32, s: u32) -> (i64, i64, i64) {
    let ps = (p as i64).pow(s);
    (2 * ps - 1, ps - 1, -2 * (ps - 1))
}

pub(crate) fn shifted_key(key: &SliceKey, shift: (i64, i64, i64)) -> SliceKey {
    SliceKey {
        m: key.m + shift.0,
        mp: key.mp + shift.1,
        c: key.c + shift.2,
    }
}

/// The differential of a single cell, as a vector in the target slice's
/// cell coordinates. `None` when the target slice carries no cells at all
/// (the differential is forced to vanish there).
fn cell_differential(
    page: &Page,
    algebra: &PresentedAlgebra,
    s: u32,
    key: &SliceKey,
    cell: CellId,
) -> Result<Option<Vec<u64>>, AhssError> {
    let shift = rule_shift(page.theory.prime(), s);
    let target_key = shifted_key(key, shift);
    let Some(target) = page.slices.get(&target_key) else {
        return Ok(None);
    };
    if target.cells.is_empty() {
        return Ok(None);
    }
    let (li, vi) = cell;
    let label = &page.labels[li];
    let q = algebra
        .apply_q(s, &algebra.elem_from_monomial(label.monomial.clone()))
        .map_err(AhssError::Q)?;
    let mut out = vec![0u64; target.cells.len()];
    if q.is_zero() {
        return Ok(Some(out));
    }
    // multiply the coefficient part by v_s
    let vs = page.vmonos[vi].mul(&VMonomial::gen(s, 1));
    let Some(&tvi) = page.vmono_index.get(&vs) else {
        // v_s * v fell below the coefficient depth; the enlarged window
        // guarantees this only happens in the slack margin
        return Ok(Some(out));
    };
    for (m, c) in q.terms() {
        let Some(&tli) = page.label_index.get(m) else {
            continue; // image label beyond the enlarged window margin
        };
        let Some(&pos) = target.cell_pos.get(&(tli, tvi)) else {
            continue;
        };
        out[pos] = (out[pos] + c) % page.prime();
    }
    Ok(Some(out))
}

/// Apply the rule `d = v_s (x) Q_s` and return the next page.
pub fn apply_differential(
    page: &Page,
    algebra: &PresentedAlgebra,
    s: u32,
) -> Result<Page, AhssError> {
    let p = page.prime();
    if s < page.theory.height() {
        return Err(AhssError::InadmissibleRule {
            s,
            theory: page.theory.to_string(),
        });
    }
    let shift = rule_shift(page.theory.prime(), s);

    // phase 1: differentials of all z- and b-basis vectors, slice by slice
    struct SliceImages {
        z_images: Vec<Vec<u64>>, // images of z-basis rows in target coords
        target: Option<SliceKey>,
    }
    let mut images: BTreeMap<SliceKey, SliceImages> = BTreeMap::new();
    for (key, slice) in &page.slices {
        if slice.cells.is_empty() || slice.z.dim() == 0 {
            continue;
        }
        let target_key = shifted_key(key, shift);
        let target_cells = page
            .slices
            .get(&target_key)
            .map(|t| t.cells.len())
            .unwrap_or(0);
        if target_cells == 0 {
            continue;
        }
        // differential of each cell
        let mut cell_maps: Vec<Option<Vec<u64>>> = Vec::with_capacity(slice.cells.len());
        for &cell in &slice.cells {
            cell_maps.push(cell_differential(page, algebra, s, key, cell)?);
        }
        let map_vec = |v: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; target_cells];
            for (i, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if let Some(Some(img)) = cell_maps.get(i) {
                    for (o, x) in out.iter_mut().zip(img) {
                        *o = (*o + c * x) % p;
                    }
                }
            }
            out
        };
        // d(b) must already be a boundary: the formula has to descend
        for bvec in slice.b.basis() {
            let img = map_vec(bvec);
            let target = page.slices.get(&target_key).expect("nonempty target");
            if !target.b.contains(&img) {
                return Err(AhssError::DoesNotDescend {
                    slice: format!("({},{},{})", key.m, key.mp, key.c),
                });
            }
        }
        // d o d = 0, checked on representatives before quotienting
        let double_key = shifted_key(&target_key, shift);
        if page
            .slices
            .get(&double_key)
            .is_some_and(|sl| !sl.cells.is_empty())
        {
            for zvec in slice.z.basis() {
                let img = map_vec(zvec);
                // push the image through the differential once more
                let target = page.slices.get(&target_key).expect("nonempty target");
                let mut dd_in = vec![0u64; page.slices[&double_key].cells.len()];
                for (i, &c) in img.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if let Some(img2) =
                        cell_differential(page, algebra, s, &target_key, target.cells[i])?
                    {
                        for (o, x) in dd_in.iter_mut().zip(&img2) {
                            *o = (*o + c * x) % p;
                        }
                    }
                }
                if dd_in.iter().any(|&x| x != 0) {
                    return Err(AhssError::DifferentialSquare {
                        slice: format!("({},{},{})", key.m, key.mp, key.c),
                    });
                }
            }
        }
        let z_images = slice.z.basis().iter().map(|v| map_vec(v)).collect();
        images.insert(
            *key,
            SliceImages {
                z_images,
                target: Some(target_key),
            },
        );
    }

    // phase 2: assemble the next page
    let mut next = page.clone();
    next.round = 2 * page.theory.prime().pow(s);
    next.applied.push(s);
    // new boundaries; d(Z) must land inside the target's cycles for the
    // formula to descend
    for (key, imgs) in &images {
        let Some(tkey) = imgs.target else { continue };
        for img in &imgs.z_images {
            if !page.slices[&tkey].z.contains(img) {
                return Err(AhssError::DoesNotDescend {
                    slice: format!("({},{},{})", key.m, key.mp, key.c),
                });
            }
        }
        let tslice = next.slices.get_mut(&tkey).expect("nonempty target");
        for img in &imgs.z_images {
            tslice.b.insert(img.clone());
        }
    }
    // new cycles: kernel of the induced map
    for (key, imgs) in &images {
        let old = &page.slices[key];
        let tkey = imgs.target.expect("set above");
        // reduce images modulo the *old* boundaries of the target
        let tb = &page.slices[&tkey].b;
        let reduced: Vec<Vec<u64>> = imgs.z_images.iter().map(|v| tb.reduce(v.clone())).collect();
        let coeffs = crate::linalg::kernel_of_row_map(p, &reduced, reduced[0].len());
        let mut z = Subspace::new(p, old.cells.len());
        for co in &coeffs {
            let mut vec = vec![0u64; old.cells.len()];
            for (i, &c) in co.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, x) in vec.iter_mut().zip(&old.z.basis()[i]) {
                    *o = (*o + c * x) % p;
                }
            }
            z.insert(vec);
        }
        let slice = next.slices.get_mut(key).expect("exists");
        slice.z = z;
    }
    // boundaries stay inside cycles (guaranteed by the descent and d∘d
    // checks), and dimensions never increase
    for (key, slice) in &next.slices {
        for bvec in slice.b.basis() {
            debug_assert!(slice.z.contains(bvec), "boundary outside cycles");
        }
        let before = page.slices[key].dim();
        assert!(
            slice.dim() <= before,
            "slice dimension grew at ({},{},{})",
            key.m,
            key.mp,
            key.c
        );
    }
    Ok(next)
}

/// Report of the permanent-cycle check on weight-zero slices.
#[derive(Debug, Clone)]
pub struct PermanentCycleReport {
    pub checked_cells: usize,
    pub weight_zero_rank: usize,
}

/// Verify that every differential out of a weight-zero slice of a
/// smooth-flagged presentation lands in an empty slice. For a smooth X the
/// target bidegree always violates the vanishing `H^{m,m'} = 0 (m > 2m')`,
/// so a nonempty target indicates corrupted bidegree bookkeeping.
pub fn permanent_cycle_check(
    page: &Page,
    algebra: &PresentedAlgebra,
    rules: &[u32],
) -> Result<PermanentCycleReport, AhssError> {
    if !algebra.smooth {
        return Err(AhssError::NotSmooth);
    }
    let mut checked = 0;
    let mut rank = 0;
    for (key, slice) in &page.slices {
        if slice.dim() == 0 {
            continue;
        }
        // Chow classes live in the slices (2m', m', 0)
        if key.m != 2 * key.mp || key.c != 0 {
            continue;
        }
        rank += slice.dim();
        for &s in rules {
            let shift = rule_shift(page.theory.prime(), s);
            let tkey = shifted_key(key, shift);
            // the target has first degree 2m' + 2p^s - 1 and second degree
            // m' + p^s - 1, violating the smooth vanishing m <= 2m'; any
            // cells there indicate corrupted bidegree bookkeeping
            if page.slices.get(&tkey).is_some_and(|t| !t.cells.is_empty()) {
                return Err(AhssError::PermanentCycleViolated {
                    slice: format!("({},{},{})", key.m, key.mp, key.c),
                    rule: s,
                });
            }
            checked += 1;
        }
    }
    Ok(PermanentCycleReport {
        checked_cells: checked,
        weight_zero_rank: rank,
    })
}
