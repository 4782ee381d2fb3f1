//! The curated example library: classical computations the engine
//! reproduces end to end, each packaged as a named record with inputs,
//! expected outputs and a runnable check.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};

use crate::ahss::{permanent_cycle_check, run_to_collapse, Window};
use crate::coeff::{
    base_change, CyclicSummand, IdealSpec, ModulePresentation, Ring, SummandDegree, Theory,
};
use crate::fgl::{p_series, vn_torsion_check, BzpRing, FglKind};
use crate::palg::{builders, rost, verify_q_freeness, Monomial};

use super::les::{check_les, GradedMap, GradedNode, Triangle};
use super::quotients::{chow_part, morava_k, omega_quotient, to_integral};
use super::tower::collapse_k;

/// A named example: inputs, expected outputs and provenance notes.
#[derive(Debug, Clone)]
pub struct ExampleRecord {
    pub name: &'static str,
    pub summary: &'static str,
    /// where the classical computation comes from (which space, which
    /// prime, which theories)
    pub provenance: &'static str,
    pub default_window: i64,
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ExampleReport {
    pub example: String,
    pub lines: Vec<CheckLine>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

pub const EXAMPLE_NAMES: [&str; 9] = [
    "bzp",
    "bz2",
    "so3",
    "so7",
    "v_n",
    "chi_tilde",
    "m2",
    "q3",
    "f4_p3",
];

pub fn example(name: &str) -> Option<ExampleRecord> {
    let r = match name {
        "bzp" => ExampleRecord {
            name: "bzp",
            summary: "classifying space of Z/3: p-series, quotient rings, spectral sequence",
            provenance: "cyclic group of order 3 at p = 3; free rank and torsion structure of the one-generator quotient rings",
            default_window: 24,
        },
        "bz2" => ExampleRecord {
            name: "bz2",
            summary: "classifying space of Z/2 (the square twists by t)",
            provenance: "cyclic group of order 2 at p = 2, including the exact mod-2 and connective triangles",
            default_window: 16,
        },
        "so3" => ExampleRecord {
            name: "so3",
            summary: "classifying space of SO(3) at p = 2: curated integral answer and its mod-2 quotient",
            provenance: "special orthogonal group SO(3); Stiefel-Whitney presentation with Q0 w2 = w3, Q1 w3 = c3",
            default_window: 24,
        },
        "so7" => ExampleRecord {
            name: "so7",
            summary: "the group SO(7) at p = 2: spectral sequence, Morava quotients, exact triangle",
            provenance: "special orthogonal group SO(7); exterior algebra on x3, x5, y6 with x3^2 = y6",
            default_window: 14,
        },
        "v_n" => ExampleRecord {
            name: "v_n",
            summary: "Smith-Toda pattern: a free module over the full exterior operation algebra",
            provenance: "spectra whose mod-p cohomology is free of rank one over Lambda(Q0..Qn)",
            default_window: 40,
        },
        "chi_tilde" => ExampleRecord {
            name: "chi_tilde",
            summary: "reduced Cech complex of a norm variety: torsion annotation and K-theory collapse",
            provenance: "pure-symbol norm varieties; the full Q-word on a' is the polynomial generator xi",
            default_window: 60,
        },
        "m2" => ExampleRecord {
            name: "m2",
            summary: "the height-2 Rost motive over the reals",
            provenance: "norm quadric of dimension 3 over the real numbers at p = 2",
            default_window: 8,
        },
        "q3" => ExampleRecord {
            name: "q3",
            summary: "the anisotropic quadric of dimension 3 over the reals",
            provenance: "three-dimensional quadric; motive splits as the height-2 piece plus a Tate twist of the height-1 piece",
            default_window: 8,
        },
        "f4_p3" => ExampleRecord {
            name: "f4_p3",
            summary: "Pontryagin ring of the exceptional group F4 at p = 3: the adjoint is not nilpotent",
            provenance: "compact exceptional group F4 at p = 3 (the same pattern covers E8 at p = 5)",
            default_window: 8,
        },
        _ => return None,
    };
    Some(r)
}

pub fn run_example(name: &str, window: i64) -> Option<ExampleReport> {
    let report = match name {
        "bzp" => run_bzp(3, window),
        "bz2" => run_bzp(2, window),
        "so3" => run_so3(window),
        "so7" => run_so7(window),
        "v_n" => run_v_n(window),
        "chi_tilde" => run_chi_tilde(window),
        "m2" => run_m2(window),
        "q3" => run_q3(window),
        "f4_p3" => run_f4(window),
        _ => return None,
    };
    Some(report)
}

fn line(
    lines: &mut Vec<CheckLine>,
    name: impl Into<String>,
    pass: bool,
    detail: impl Into<String>,
) {
    lines.push(CheckLine {
        name: name.into(),
        pass,
        detail: detail.into(),
    });
}

fn eq_presentations(
    lines: &mut Vec<CheckLine>,
    name: impl Into<String>,
    got: &ModulePresentation,
    expected: &ModulePresentation,
) {
    let g = got.sorted();
    let e = expected.sorted();
    let pass = g == e;
    let detail = if pass {
        g.pretty()
    } else {
        format!("got {} expected {}", g.pretty(), e.pretty())
    };
    line(lines, name, pass, detail);
}

// ---------------------------------------------------------------- BZ/p --

/// E_infinity of the cyclic-group spectral sequence at height s: the
/// truncated polynomial pattern `P(s)*[y]/(v_s y^(p^s))` times the
/// t-polynomial base.
pub fn expected_bzp_infinity(p: u32, s: u32, window: &Window) -> ModulePresentation {
    let theory = Theory::p_n(s, p).unwrap();
    let ps = (p as i64).pow(s);
    let mut summands = Vec::new();
    for k in 0i64.. {
        if 2 * k > window.max_first {
            break;
        }
        for j in 0..=window.tau_max {
            let mut parts = Vec::new();
            if k == 1 {
                parts.push("y".to_string());
            } else if k > 1 {
                parts.push(format!("y^{}", k));
            }
            if j == 1 {
                parts.push("t".to_string());
            } else if j > 1 {
                parts.push(format!("t^{}", j));
            }
            let name = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            };
            summands.push(CyclicSummand {
                generator: name,
                degree: SummandDegree::FirstWeight(2 * k, 2 * j),
                annihilator: if k < ps {
                    IdealSpec::I(0)
                } else {
                    IdealSpec::I(s + 1)
                },
            });
        }
    }
    ModulePresentation::new(theory, summands).unwrap()
}

fn run_bzp(p: u32, window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let bp = Theory::bp(p).unwrap();

    // the p-series in its canonical form
    let bound = p.pow(3);
    let s = p_series(bp, FglKind::PTypicalModISq, bound).unwrap();
    let expected = match p {
        2 => "2*y + v1*y^2 + v2*y^4 + v3*y^8",
        3 => "3*y + v1*y^3 + v2*y^9 + v3*y^27",
        5 => "5*y + v1*y^5 + v2*y^25 + v3*y^125",
        _ => unreachable!(),
    };
    line(
        &mut lines,
        "p-series canonical form",
        s.to_string() == expected,
        s.to_string(),
    );
    line(
        &mut lines,
        "p-series homogeneous of degree 2",
        s.is_homogeneous_of_degree(2),
        "every term v_i y^(p^i) has degree 2",
    );

    // quotient rings: K(n) free of rank p^n, P(n) relation, no v_n-torsion
    for n in [1u32, 2] {
        let kn = Theory::morava_k(n, p).unwrap();
        let ybound = (p.pow(n) * 2).max(4);
        let ring = BzpRing::new(kn, ybound).unwrap();
        let rank = ring.free_rank().unwrap();
        let mut free = rank == (p as u64).pow(n);
        for k in 0..=ybound {
            let nf = ring.normal_form(&ring.monomial(ring.ring().one(), k));
            free &= nf.is_zero() == ((k as u64) >= rank);
        }
        line(
            &mut lines,
            format!("K({}) quotient ring free of rank {}", n, (p as u64).pow(n)),
            free,
            format!("basis 1..y^{}", rank - 1),
        );

        let pn = Theory::p_n(n, p).unwrap();
        let qring = BzpRing::new(pn, p.pow(n + 1)).unwrap();
        let series_reduced = p_series(bp, FglKind::PTypicalModISq, p.pow(n + 1))
            .unwrap()
            .reduce(&IdealSpec::I(n))
            .unwrap();
        line(
            &mut lines,
            format!("P({}) relation is the reduced p-series", n),
            qring.relation() == &series_reduced,
            series_reduced.to_string(),
        );
        line(
            &mut lines,
            format!("multiplication by v{} is injective", n),
            vn_torsion_check(&qring),
            format!("checked on y^0..y^{}", qring.ybound() - 1),
        );
    }

    // the spectral sequence at heights 1 and 2
    for s in [1u32, 2] {
        let algebra = builders::bzp_cohomology(p);
        let theory = Theory::p_n(s, p).unwrap();
        let win = Window::new(
            (2 * (p as i64).pow(s) + 4).min(window.max(8)),
            2 * (p as i64).pow(s + 1),
            1,
        );
        match run_to_collapse(&algebra, theory, &[s], win, false) {
            Ok(report) => {
                let expected = expected_bzp_infinity(p, s, &win);
                eq_presentations(
                    &mut lines,
                    format!("E_infinity at P({}) is the truncated pattern", s),
                    &report.presentation,
                    &expected,
                );
                let no_odd = report
                    .presentation
                    .summands
                    .iter()
                    .all(|su| su.degree.first_degree() % 2 == 0);
                line(
                    &mut lines,
                    format!("no odd-degree survivors at P({})", s),
                    no_odd,
                    "odd part vanishes",
                );
                line(
                    &mut lines,
                    format!("collapse certified at P({})", s),
                    report.collapse_certified,
                    format!("pages to E_{}", report.final_round),
                );
            }
            Err(e) => line(
                &mut lines,
                format!("spectral sequence at P({})", s),
                false,
                e.to_string(),
            ),
        }
        // Chow classes are permanent cycles
        let win2 = Window::new(8, 6, 1);
        let page = crate::ahss::e2_page(&algebra, theory, win2).unwrap();
        match permanent_cycle_check(&page, &algebra, &[s, s + 1]) {
            Ok(rep) => line(
                &mut lines,
                format!("Chow slices are permanent at P({})", s),
                true,
                format!(
                    "{} checks, weight-zero rank {}",
                    rep.checked_cells, rep.weight_zero_rank
                ),
            ),
            Err(e) => line(&mut lines, "permanent cycles", false, e.to_string()),
        }
    }

    // the exact triangles
    match bzp_mod_p_triangle(p) {
        Ok(t) => match check_les(p, &t, (0, 8)) {
            Ok(rep) => line(
                &mut lines,
                "integral triangle (x p, reduction) exact",
                rep.boundary_is_zero,
                format!(
                    "{} node positions exact, boundary map zero so the quotient is the mod-p theory",
                    rep.nodes_exact
                ),
            ),
            Err(e) => line(&mut lines, "integral triangle", false, e.to_string()),
        },
        Err(e) => line(&mut lines, "integral triangle", false, e),
    }
    match bzp_connective_triangle(p) {
        Ok(t) => match check_les(p, &t, (0, (2 * p + 2) as i64)) {
            Ok(rep) => line(
                &mut lines,
                "connective triangle exact with r delta the tabled operation",
                rep.q_composites_checked > 0,
                format!(
                    "{} node positions exact, {} composites checked",
                    rep.nodes_exact, rep.q_composites_checked
                ),
            ),
            Err(e) => line(&mut lines, "connective triangle", false, e.to_string()),
        },
        Err(e) => line(&mut lines, "connective triangle", false, e),
    }
    ExampleReport {
        example: if p == 2 { "bz2" } else { "bzp" }.to_string(),
        lines,
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The triangle `BP --p--> BP --u--> P(1)` for the cyclic group, built from
/// the one-generator quotient rings degree by degree.
fn bzp_mod_p_triangle(p: u32) -> Result<Triangle, String> {
    let hi = 10i64;
    let vdepth = 10i64;
    let ybound = ((hi + vdepth) / 2 + (p as i64).pow(2)) as u32;
    let bp = Theory::bp(p).unwrap();
    let p1 = Theory::p_n(1, p).unwrap();

    // generator lists per degree: monomials v^a y^k
    let monos = |theory: Theory| -> BTreeMap<i64, Vec<(crate::coeff::VMonomial, u32)>> {
        let mut out: BTreeMap<i64, Vec<_>> = BTreeMap::new();
        for v in crate::ahss::coefficient_monomials(theory, (2 * ybound as i64) + vdepth) {
            for k in 0..=ybound {
                let d = v.degree(p) + 2 * k as i64;
                if (0..=hi + 1).contains(&d) {
                    out.entry(d).or_default().push((v.clone(), k));
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    };
    let name = |v: &crate::coeff::VMonomial, k: u32| -> String {
        let y = match k {
            0 => String::new(),
            1 => "y".to_string(),
            k => format!("y^{}", k),
        };
        match (v.is_one(), y.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => y,
            (false, true) => v.to_string(),
            (false, false) => format!("{}*{}", v, y),
        }
    };

    let bp_monos = monos(bp);
    let p1_monos = monos(p1);
    let mut a = GradedNode::new("BP(BZ/p)");
    for (d, list) in &bp_monos {
        a.gens
            .insert(*d, list.iter().map(|(v, k)| name(v, *k)).collect());
    }
    // relations: cofactor * [p](y) for every monomial cofactor
    let series = p_series(bp, FglKind::PTypicalModISq, ybound).unwrap();
    for (d, list) in &bp_monos {
        let idx: BTreeMap<String, usize> = list
            .iter()
            .enumerate()
            .map(|(i, (v, k))| (name(v, *k), i))
            .collect();
        let mut rels = Vec::new();
        for (vc, kc) in bp_monos.get(&(d - 2)).map(|v| v.as_slice()).unwrap_or(&[]) {
            let mut rel = vec![q(0); list.len()];
            let mut complete = true;
            for (e, coeff) in series.terms() {
                let kk = kc + e;
                if kk > ybound {
                    complete = false;
                    break;
                }
                for (m, c) in coeff.terms() {
                    let target = name(&vc.mul(m), kk);
                    match idx.get(&target) {
                        Some(&i) => {
                            let cval = match c {
                                crate::coeff::Coef::Q(r) => r.clone(),
                                crate::coeff::Coef::Fp(x) => q(*x as i64),
                            };
                            rel[i] += cval;
                        }
                        None => {
                            complete = false;
                        }
                    }
                }
            }
            if complete && rel.iter().any(|x| !x.is_zero()) {
                rels.push(rel);
            }
        }
        if !rels.is_empty() {
            a.rels.insert(*d, rels);
        }
    }
    let b = a.clone();
    let mut c = GradedNode::new("P(1)(BZ/p)");
    for (d, list) in &p1_monos {
        c.gens
            .insert(*d, list.iter().map(|(v, k)| name(v, *k)).collect());
        let idx: BTreeMap<String, usize> = list
            .iter()
            .enumerate()
            .map(|(i, (v, k))| (name(v, *k), i))
            .collect();
        let mut rels = Vec::new();
        // char p
        for i in 0..list.len() {
            let mut rel = vec![q(0); list.len()];
            rel[i] = q(p as i64);
            rels.push(rel);
        }
        // cofactor * (v1 y^p + v2 y^(p^2) + ...)
        let reduced = series.reduce(&IdealSpec::I(1)).unwrap();
        for (vc, kc) in p1_monos.get(&(d - 2)).map(|v| v.as_slice()).unwrap_or(&[]) {
            let mut rel = vec![q(0); list.len()];
            let mut complete = true;
            for (e, coeff) in reduced.terms() {
                let kk = kc + e;
                if kk > ybound {
                    complete = false;
                    break;
                }
                for (m, cf) in coeff.terms() {
                    let target = name(&vc.mul(m), kk);
                    match idx.get(&target) {
                        Some(&i) => {
                            let cval = match cf {
                                crate::coeff::Coef::Fp(x) => q(*x as i64),
                                crate::coeff::Coef::Q(r) => r.clone(),
                            };
                            rel[i] += cval;
                        }
                        None => complete = false,
                    }
                }
            }
            if complete && rel.iter().any(|x| !x.is_zero()) {
                rels.push(rel);
            }
        }
        c.rels.insert(*d, rels);
    }

    // maps: f = multiplication by p, g = reduction, h (delta) = 0
    let mut f = GradedMap::zero("x p", 0);
    for (d, list) in &bp_monos {
        let mat: Vec<Vec<BigRational>> = (0..list.len())
            .map(|i| {
                let mut row = vec![q(0); list.len()];
                row[i] = q(p as i64);
                row
            })
            .collect();
        f.entries.insert(*d, mat);
    }
    let mut g = GradedMap::zero("u", 0);
    for (d, list) in &bp_monos {
        let tlist = p1_monos.get(d).map(|v| v.as_slice()).unwrap_or(&[]);
        let tidx: BTreeMap<String, usize> = tlist
            .iter()
            .enumerate()
            .map(|(i, (v, k))| (name(v, *k), i))
            .collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(v, k)| {
                let mut row = vec![q(0); tlist.len()];
                if let Some(&i) = tidx.get(&name(v, *k)) {
                    row[i] = q(1);
                }
                row
            })
            .collect();
        g.entries.insert(*d, mat);
    }
    let h = GradedMap::zero("delta", 1);
    Ok(Triangle {
        a,
        b,
        c,
        f,
        g,
        h,
        q_composite: Vec::new(),
        weight_zero_smooth: true,
    })
}

/// The connective triangle `k(1) --v1--> k(1) --r--> H --delta--> k(1)`
/// for the cyclic group, with `r delta` checked against the tabled `Q_1`.
fn bzp_connective_triangle(p: u32) -> Result<Triangle, String> {
    let hi = (2 * p + 4) as i64;
    let ybound = 2 * p * p;
    let pp = p as i64;

    // k(1)-node: normal monomials v1^j y^k (j = 0 or k < p), all killed by p
    let lo = -4 * pp; // deep enough that every checked kernel sees its image
    let mut a = GradedNode::new("k(1)(BZ/p)");
    let mut a_lists: BTreeMap<i64, Vec<(u32, u32)>> = BTreeMap::new();
    for j in 0..=((hi + 2 * ybound as i64 - lo) / (2 * (pp - 1))) as u32 {
        for k in 0..=ybound {
            if j > 0 && k >= p {
                continue; // v1 y^p = 0 in the connective quotient
            }
            let d = -2 * (pp - 1) * j as i64 + 2 * k as i64;
            if (lo..=hi + 2 * pp).contains(&d) {
                a_lists.entry(d).or_default().push((j, k));
            }
        }
    }
    let aname = |j: u32, k: u32| -> String {
        let v = match j {
            0 => String::new(),
            1 => "v1".to_string(),
            j => format!("v1^{}", j),
        };
        let y = match k {
            0 => String::new(),
            1 => "y".to_string(),
            k => format!("y^{}", k),
        };
        match (v.is_empty(), y.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => y,
            (false, true) => v,
            (false, false) => format!("{}*{}", v, y),
        }
    };
    for (d, list) in &mut a_lists {
        list.sort();
        a.gens
            .insert(*d, list.iter().map(|(j, k)| aname(*j, *k)).collect());
        let rels: Vec<Vec<BigRational>> = (0..list.len())
            .map(|i| {
                let mut rel = vec![q(0); list.len()];
                rel[i] = q(p as i64);
                rel
            })
            .collect();
        a.rels.insert(*d, rels);
    }
    let b = a.clone();

    // H-node: monomials x^e y^k, all killed by p
    let algebra = builders::bzp_cohomology(p);
    let mut c = GradedNode::new("H(BZ/p)");
    let mut c_lists: BTreeMap<i64, Vec<(u32, u32)>> = BTreeMap::new();
    for e in 0..=1u32 {
        for k in 0..=ybound {
            let d = e as i64 + 2 * k as i64;
            if (0..=hi + 2 * pp).contains(&d) {
                c_lists.entry(d).or_default().push((e, k));
            }
        }
    }
    let cname = |e: u32, k: u32| -> String {
        let x = if e == 0 {
            String::new()
        } else {
            "x".to_string()
        };
        let y = match k {
            0 => String::new(),
            1 => "y".to_string(),
            k => format!("y^{}", k),
        };
        match (x.is_empty(), y.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => y,
            (false, true) => x,
            (false, false) => format!("{}*{}", x, y),
        }
    };
    for (d, list) in &mut c_lists {
        list.sort();
        c.gens
            .insert(*d, list.iter().map(|(e, k)| cname(*e, *k)).collect());
        let rels: Vec<Vec<BigRational>> = (0..list.len())
            .map(|i| {
                let mut rel = vec![q(0); list.len()];
                rel[i] = q(p as i64);
                rel
            })
            .collect();
        c.rels.insert(*d, rels);
    }

    // f = x v1 (degree -2(p-1)); g = r (kill v1); h = delta with
    // delta(x y^k) = y^(p+k) (degree 2p - 1)
    let mut f = GradedMap::zero("x v1", -2 * (pp - 1));
    for (d, list) in &a_lists {
        let tlist = a_lists
            .get(&(d - 2 * (pp - 1)))
            .map(|v| v.as_slice())
            .unwrap_or(&[]);
        let tidx: BTreeMap<(u32, u32), usize> =
            tlist.iter().enumerate().map(|(i, jk)| (*jk, i)).collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(j, k)| {
                let mut row = vec![q(0); tlist.len()];
                if let Some(&i) = tidx.get(&(j + 1, *k)) {
                    row[i] = q(1);
                }
                row
            })
            .collect();
        f.entries.insert(*d, mat);
    }
    let mut g = GradedMap::zero("r", 0);
    for (d, list) in &a_lists {
        let tlist = c_lists.get(d).map(|v| v.as_slice()).unwrap_or(&[]);
        let tidx: BTreeMap<(u32, u32), usize> =
            tlist.iter().enumerate().map(|(i, ek)| (*ek, i)).collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(j, k)| {
                let mut row = vec![q(0); tlist.len()];
                if *j == 0 {
                    if let Some(&i) = tidx.get(&(0, *k)) {
                        row[i] = q(1);
                    }
                }
                row
            })
            .collect();
        g.entries.insert(*d, mat);
    }
    let mut h = GradedMap::zero("delta", 2 * pp - 1);
    for (d, list) in &c_lists {
        let tlist = a_lists
            .get(&(d + 2 * pp - 1))
            .map(|v| v.as_slice())
            .unwrap_or(&[]);
        let tidx: BTreeMap<(u32, u32), usize> =
            tlist.iter().enumerate().map(|(i, jk)| (*jk, i)).collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(e, k)| {
                let mut row = vec![q(0); tlist.len()];
                if *e == 1 && k + p <= ybound {
                    if let Some(&i) = tidx.get(&(0, k + p)) {
                        row[i] = q(1);
                    }
                }
                row
            })
            .collect();
        h.entries.insert(*d, mat);
    }

    // r delta must agree with the tabled Q_1 on the cohomology classes
    let mut q_composite = Vec::new();
    let x = algebra.generator_index("x").unwrap();
    let y = algebra.generator_index("y").unwrap();
    for k in 0..p {
        let mut m = Monomial::gen(x, 1);
        if k > 0 {
            m.gens.insert(y, k);
        }
        let d = 1 + 2 * k as i64;
        if d > hi {
            continue;
        }
        let image = algebra
            .apply_q(1, &algebra.elem_from_monomial(m.clone()))
            .unwrap();
        let mut expected = Vec::new();
        for (im, c) in image.terms() {
            expected.push((cname(0, im.exp(y)), c as i64));
        }
        q_composite.push((d, cname(1, k), expected));
    }

    Ok(Triangle {
        a,
        b,
        c,
        f,
        g,
        h,
        q_composite,
        weight_zero_smooth: false, // the H node has odd classes by design
    })
}

// ---------------------------------------------------------------- SO(3) --

/// The curated integral answer for the classifying space of SO(3):
/// `(BP*{1} (+) BP*[c3]+/(2, v1)) (x) Z[c2]`, expanded inside the window.
fn so3_integral(window: i64) -> ModulePresentation {
    let theory = Theory::bp(2).unwrap();
    let mut summands = Vec::new();
    for j in 0i64.. {
        // c2^j has Chow degree 2j
        if 4 * j > window {
            break;
        }
        for k in 0i64.. {
            let chow = 2 * j + 3 * k;
            if 2 * chow > window {
                break;
            }
            let mut parts = Vec::new();
            if k == 1 {
                parts.push("c3".to_string());
            } else if k > 1 {
                parts.push(format!("c3^{}", k));
            }
            if j == 1 {
                parts.push("c2".to_string());
            } else if j > 1 {
                parts.push(format!("c2^{}", j));
            }
            let name = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            };
            summands.push(CyclicSummand {
                generator: name,
                degree: SummandDegree::Chow(chow),
                annihilator: if k == 0 {
                    IdealSpec::I(0)
                } else {
                    IdealSpec::I(2)
                },
            });
        }
    }
    ModulePresentation::new(theory, summands).unwrap()
}

fn run_so3(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let algebra = builders::bso3_cohomology();
    let w2 = algebra.parse_element("w2").unwrap();
    let w3 = algebra.parse_element("w3").unwrap();
    let q0w2 = algebra.apply_q(0, &w2).unwrap();
    line(
        &mut lines,
        "Q0(w2) = w3",
        algebra.element_string(&q0w2) == "w3",
        algebra.element_string(&q0w2),
    );
    let q1w3 = algebra.apply_q(1, &w3).unwrap();
    line(
        &mut lines,
        "Q1(w3) = w3^2 (the Chern class c3)",
        algebra.element_string(&q1w3) == "w3^2",
        algebra.element_string(&q1w3),
    );

    let integral = so3_integral(window);
    // the mod-2 quotient of the curated answer
    let mod2 = omega_quotient(&integral, &IdealSpec::I(1)).unwrap();
    let expected_mod2 = {
        let mut m = integral.clone();
        m.theory = Theory::p_n(1, 2).unwrap();
        m
    };
    eq_presentations(
        &mut lines,
        "integral answer mod 2 keeps every summand",
        &mod2,
        &expected_mod2,
    );
    let torsion_count = mod2
        .summands
        .iter()
        .filter(|s| s.annihilator == IdealSpec::I(2))
        .count();
    line(
        &mut lines,
        "c3-multiples stay v1-torsion in the mod-2 theory",
        torsion_count > 0
            && mod2
                .summands
                .iter()
                .all(|s| (s.generator.contains("c3")) == (s.annihilator == IdealSpec::I(2))),
        format!("{} torsion summands", torsion_count),
    );

    // the mod-2 Chow ring is the full polynomial ring on c2, c3
    let hfp = base_change(&integral, Theory::hfp(2).unwrap()).unwrap();
    line(
        &mut lines,
        "mod-2 Chow rank matches the summand count",
        hfp.rank() == integral.rank(),
        format!("rank {}", hfp.rank()),
    );
    // note: the integral theory also knows v1*c3 != 0 (a v2-multiple);
    // this extension is recorded as a datum, not derived here
    line(
        &mut lines,
        "extension datum recorded",
        true,
        "v1*c3 is nonzero in the integral theory (a v2-multiple)",
    );
    ExampleReport {
        example: "so3".to_string(),
        lines,
    }
}

// ---------------------------------------------------------------- SO(7) --

fn so7_omega() -> ModulePresentation {
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

/// Expected E_infinity for SO(7) at height 1:
/// `(P(1)*{1, x3 y6} (+) P(2)*{y6}) (x) Lambda(x5)`, times the t-powers.
fn so7_expected(window: &Window) -> ModulePresentation {
    let theory = Theory::p_n(1, 2).unwrap();
    let mut summands = Vec::new();
    let base: [(&str, i64, i64, bool); 6] = [
        ("1", 0, 0, false),
        ("x5", 5, 3, false),
        ("y6", 6, 3, true),
        ("x3*y6", 9, 5, false),
        ("x5*y6", 11, 6, true),
        ("x3*x5*y6", 14, 8, false),
    ];
    for (name, m, mp, torsion) in base {
        for j in 0..=window.tau_max {
            if m > window.max_first {
                continue;
            }
            let label = match (name, j) {
                (_, 0) => name.to_string(),
                ("1", 1) => "t".to_string(),
                ("1", j) => format!("t^{}", j),
                (_, 1) => format!("{}*t", name),
                (_, j) => format!("{}*t^{}", name, j),
            };
            summands.push(CyclicSummand {
                generator: label,
                degree: SummandDegree::FirstWeight(m, 2 * (mp + j) - m),
                annihilator: if torsion {
                    IdealSpec::I(2)
                } else {
                    IdealSpec::I(0)
                },
            });
        }
    }
    ModulePresentation::new(theory, summands).unwrap()
}

fn run_so7(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let algebra = builders::so7_cohomology();
    let theory = Theory::p_n(1, 2).unwrap();
    let win = Window::new(window.max(14), 8, 1);
    match run_to_collapse(&algebra, theory, &[1], win, false) {
        Ok(report) => {
            eq_presentations(
                &mut lines,
                "E_infinity at P(1)",
                &report.presentation,
                &so7_expected(&win),
            );
            line(
                &mut lines,
                "collapse certified by empty targets",
                report.collapse_certified,
                "odd-degree survivors exist, so evenness alone cannot close the page",
            );
        }
        Err(e) => line(
            &mut lines,
            "spectral sequence at P(1)",
            false,
            e.to_string(),
        ),
    }

    let omega = so7_omega();
    let k1 = morava_k(&omega, 1).unwrap();
    let expected_k1 = ModulePresentation::new(
        Theory::morava_k(1, 2).unwrap(),
        vec![CyclicSummand::free("1", SummandDegree::FirstWeight(0, 0))],
    )
    .unwrap();
    eq_presentations(&mut lines, "K(1) keeps only the unit", &k1, &expected_k1);
    let k2 = morava_k(&omega, 2).unwrap();
    let expected_k2 = ModulePresentation::new(
        Theory::morava_k(2, 2).unwrap(),
        vec![
            CyclicSummand::free("1", SummandDegree::FirstWeight(0, 0)),
            CyclicSummand::free("y6", SummandDegree::FirstWeight(6, 0)),
        ],
    )
    .unwrap();
    eq_presentations(&mut lines, "K(2) keeps the unit and y6", &k2, &expected_k2);
    for s in [3u32, 4] {
        let ks = morava_k(&omega, s).unwrap();
        line(
            &mut lines,
            format!("K({}) agrees with K(2)", s),
            ks.rank() == 2,
            ks.pretty(),
        );
    }

    // Chow rank: the integral extension keeps both summands
    let z = to_integral(&omega).unwrap();
    let chow = chow_part(&omega);
    line(
        &mut lines,
        "base extension recovers the Chow rank",
        z.rank() == chow.rank() && z.rank() == 2,
        format!("rank {}", z.rank()),
    );

    match so7_triangle() {
        Ok(t) => match check_les(2, &t, (0, 12)) {
            Ok(rep) => line(
                &mut lines,
                "curated triangle exact with delta(x5) = y6",
                true,
                format!("{} node positions exact", rep.nodes_exact),
            ),
            Err(e) => line(&mut lines, "curated triangle", false, e.to_string()),
        },
        Err(e) => line(&mut lines, "curated triangle", false, e),
    }
    ExampleReport {
        example: "so7".to_string(),
        lines,
    }
}

/// The triangle `BP(G) --2--> BP(G) --u--> P(1)(G) --delta--> BP(G)[1]`
/// for G = SO(7), with the curated matrices: `u(2x3) = v1 x5` and
/// `delta(x5) = y6`.
fn so7_triangle() -> Result<Triangle, String> {
    let hi = 14i64;
    let vdepth = 14i64;
    let p = 2u32;
    let bp = Theory::bp(p).unwrap();
    let p1 = Theory::p_n(1, p).unwrap();

    // integral generators: 1, "2x3" (deg 3), x3x5y6 (14) free;
    // x3y6 (9) and x5y6 (11) with 2*x3y6 = v1*x5y6; y6 (6) with 2y6 = v1y6 = 0
    struct Gen {
        label: &'static str,
        degree: i64,
        v1_free: bool, // enumerate only v1-free coefficient monomials
    }
    let bp_gens = [
        Gen {
            label: "1",
            degree: 0,
            v1_free: false,
        },
        Gen {
            label: "2x3",
            degree: 3,
            v1_free: false,
        },
        Gen {
            label: "x3y6",
            degree: 9,
            v1_free: false,
        },
        Gen {
            label: "x5y6",
            degree: 11,
            v1_free: false,
        },
        Gen {
            label: "x3x5y6",
            degree: 14,
            v1_free: false,
        },
        Gen {
            label: "y6",
            degree: 6,
            v1_free: true,
        },
    ];
    let p1_gens = [
        Gen {
            label: "1",
            degree: 0,
            v1_free: false,
        },
        Gen {
            label: "x5",
            degree: 5,
            v1_free: false,
        },
        Gen {
            label: "x3y6",
            degree: 9,
            v1_free: false,
        },
        Gen {
            label: "x5y6",
            degree: 11,
            v1_free: true,
        },
        Gen {
            label: "x3x5y6",
            degree: 14,
            v1_free: false,
        },
        Gen {
            label: "y6",
            degree: 6,
            v1_free: true,
        },
    ];
    let vmonos = crate::ahss::coefficient_monomials(bp, vdepth);
    let build = |gens: &[Gen],
                 node_name: &str,
                 charp: bool|
     -> (GradedNode, BTreeMap<i64, Vec<(String, String)>>) {
        let mut node = GradedNode::new(node_name);
        let mut lists: BTreeMap<i64, Vec<(String, String)>> = BTreeMap::new();
        for g in gens {
            for v in &vmonos {
                if g.v1_free && v.exponent(1) > 0 {
                    continue;
                }
                let d = g.degree + v.degree(p);
                if !(-2..=hi + 1).contains(&d) {
                    continue;
                }
                let label = if v.is_one() {
                    g.label.to_string()
                } else {
                    format!("{}*{}", v, g.label)
                };
                lists
                    .entry(d)
                    .or_default()
                    .push((label, g.label.to_string()));
            }
        }
        for (d, list) in &mut lists {
            list.sort();
            node.gens
                .insert(*d, list.iter().map(|(l, _)| l.clone()).collect());
            if charp {
                let rels: Vec<Vec<BigRational>> = (0..list.len())
                    .map(|i| {
                        let mut rel = vec![q(0); list.len()];
                        rel[i] = q(2);
                        rel
                    })
                    .collect();
                node.rels.insert(*d, rels);
            }
        }
        (node, lists)
    };
    let (mut a, a_lists) = build(&bp_gens, "BP(SO7)", false);
    // relations: 2*(v^a x3y6) = v1 v^a x5y6, and 2*(v^a y6) = 0
    for (d, list) in &a_lists {
        let idx: BTreeMap<&str, usize> = list
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), i))
            .collect();
        let mut rels = Vec::new();
        for (i, (label, base)) in list.iter().enumerate() {
            if base == "y6" {
                let mut rel = vec![q(0); list.len()];
                rel[i] = q(2);
                rels.push(rel);
            }
            if base == "x3y6" {
                // 2 * v^a x3y6 - v1 v^a x5y6 = 0
                let partner = {
                    let va = label.strip_suffix("x3y6").unwrap_or("");
                    let ring = Ring::new(bp);
                    let vm = if va.is_empty() {
                        ring.v(1)
                    } else {
                        let parsed = crate::coeff::parse_poly(&ring, va.trim_end_matches('*'))
                            .map_err(|e| e.to_string())
                            .unwrap();
                        ring.mul(&parsed, &ring.v(1))
                    };
                    let (m, _) = vm.as_single_term().unwrap();
                    format!("{}*x5y6", m)
                };
                if let Some(&pi) = idx.get(partner.as_str()) {
                    let mut rel = vec![q(0); list.len()];
                    rel[i] = q(2);
                    rel[pi] = q(-1);
                    rels.push(rel);
                }
            }
        }
        if !rels.is_empty() {
            let existing = a.rels.entry(*d).or_default();
            existing.extend(rels);
        }
    }
    let b = a.clone();
    let (c, c_lists) = build(&p1_gens, "P(1)(SO7)", true);

    // f = x2; the relation on the pair rewrites nothing at matrix level
    let mut f = GradedMap::zero("x 2", 0);
    for (d, list) in &a_lists {
        let mat: Vec<Vec<BigRational>> = (0..list.len())
            .map(|i| {
                let mut row = vec![q(0); list.len()];
                row[i] = q(2);
                row
            })
            .collect();
        f.entries.insert(*d, mat);
    }
    // g = u: 1 -> 1, 2x3 -> v1*x5, x3y6 -> x3y6, x5y6 -> x5y6 (v1-free part),
    // x3x5y6 -> x3x5y6, y6 -> y6
    let mut g = GradedMap::zero("u", 0);
    for (d, list) in &a_lists {
        let tlist = c_lists.get(d).map(|v| v.as_slice()).unwrap_or(&[]);
        let tidx: BTreeMap<&str, usize> = tlist
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), i))
            .collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(label, base)| {
                let mut row = vec![q(0); tlist.len()];
                let target: Option<String> = match base.as_str() {
                    "2x3" => {
                        // u(v^a * 2x3) = v^a v1 x5
                        let va = label.strip_suffix("2x3").unwrap_or("");
                        let ring = Ring::new(p1);
                        let parsed = if va.is_empty() {
                            Some(ring.v(1))
                        } else {
                            crate::coeff::parse_poly(&ring, va.trim_end_matches('*'))
                                .ok()
                                .map(|x| ring.mul(&x, &ring.v(1)))
                        };
                        parsed.and_then(|e| e.as_single_term().map(|(m, _)| format!("{}*x5", m)))
                    }
                    _ => Some(label.clone()),
                };
                if let Some(t) = target {
                    if let Some(&i) = tidx.get(t.as_str()) {
                        row[i] = q(1);
                    }
                }
                row
            })
            .collect();
        g.entries.insert(*d, mat);
    }
    // h = delta: x5 -> y6 (v1-free multiples only; v1 x5 maps to v1 y6 = 0)
    let mut h = GradedMap::zero("delta", 1);
    for (d, list) in &c_lists {
        let tlist = a_lists.get(&(d + 1)).map(|v| v.as_slice()).unwrap_or(&[]);
        let tidx: BTreeMap<&str, usize> = tlist
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.as_str(), i))
            .collect();
        let mat: Vec<Vec<BigRational>> = list
            .iter()
            .map(|(label, base)| {
                let mut row = vec![q(0); tlist.len()];
                if base == "x5" {
                    let target = label.replace("x5", "y6");
                    if let Some(&i) = tidx.get(target.as_str()) {
                        row[i] = q(1);
                    }
                }
                row
            })
            .collect();
        h.entries.insert(*d, mat);
    }
    Ok(Triangle {
        a,
        b,
        c,
        f,
        g,
        h,
        q_composite: Vec::new(),
        weight_zero_smooth: false,
    })
}

// ------------------------------------------------------------ Smith-Toda --

fn run_v_n(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    for (p, n) in [(2u32, 2u32), (3, 1)] {
        // cohomology free of rank one over Lambda(Q0..Qn) on the bottom class
        let algebra = builders::synthetic_q_module(p, n + 1, &[("i", (0, 0))]);
        let theory = Theory::p_n(1, p).unwrap();
        let rules: Vec<u32> = (1..=n).collect();
        let depth = 2 * (p as i64).pow(n + 1);
        let win = Window::new(window.max(40), depth, 0);
        match run_to_collapse(&algebra, theory, &rules, win, false) {
            Ok(report) => {
                let all_top = report
                    .presentation
                    .summands
                    .iter()
                    .all(|s| s.annihilator == IdealSpec::I(n + 1));
                line(
                    &mut lines,
                    format!(
                        "(p={}, n={}) height-1 theory is a module over the top quotient",
                        p, n
                    ),
                    all_top && report.presentation.rank() == 2,
                    report.presentation.pretty(),
                );
                // K(s) = 0 for s <= n, nonzero at s = n+1
                let mut ok = true;
                for s in 1..=n {
                    ok &= collapse_k(&report.presentation, s).unwrap().is_empty();
                }
                let top = collapse_k(&report.presentation, n + 1).unwrap();
                ok &= !top.is_empty();
                line(
                    &mut lines,
                    format!("(p={}, n={}) K(s) vanishes for s <= {}", p, n, n),
                    ok,
                    format!("K({}) has rank {}", n + 1, top.rank()),
                );
            }
            Err(e) => line(&mut lines, "spectral sequence", false, e.to_string()),
        }
    }
    ExampleReport {
        example: "v_n".to_string(),
        lines,
    }
}

// ------------------------------------------------------------ Cech cone --

fn run_chi_tilde(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let (p, n, xi_powers) = (2u32, 2u32, 2u32);
    let algebra = builders::chi_tilde(p, n, xi_powers, &[("1", 0)]);

    // the polynomial generator is the full Q-word on a'
    let ap = algebra.generator_index("a'").unwrap();
    let e = algebra.elem_from_monomial(Monomial::gen(ap, 1));
    let word = algebra
        .apply_q(1, &algebra.apply_q(0, &e).unwrap())
        .unwrap();
    let name = word
        .as_single_monomial()
        .map(|(m, _)| algebra.monomial_name(m))
        .unwrap_or_default();
    line(
        &mut lines,
        "the full Q-word on a' is the class xi",
        name == "xi^1",
        name,
    );

    // freeness certificate over Q(n-1)
    let mut candidates = Vec::new();
    for e in 0..xi_powers {
        let base = if e == 0 {
            "a'".to_string()
        } else {
            format!("xi^{}*a'", e)
        };
        let idx = algebra.generator_index(&base).unwrap();
        candidates.push(algebra.elem_from_monomial(Monomial::gen(idx, 1)));
    }
    let freeness = verify_q_freeness(&algebra, n, &candidates, (0, window.max(40)), 0);
    line(
        &mut lines,
        "free over the exterior operation algebra",
        freeness.is_ok(),
        match &freeness {
            Ok(cert) => format!("{} certified words", cert.certificate.len()),
            Err(e) => e.to_string(),
        },
    );

    let theory = Theory::p_n(1, p).unwrap();
    let win = Window::new(window.max(40), 2 * (p as i64).pow(n), 0);
    match run_to_collapse(&algebra, theory, &[1], win, false) {
        Ok(report) => {
            let all_in = report
                .presentation
                .summands
                .iter()
                .all(|s| s.annihilator == IdealSpec::I(n));
            line(
                &mut lines,
                "height-1 theory is torsion over I(2)",
                all_in,
                report.presentation.pretty(),
            );
            // the I(n)-torsion annotation validates
            let annotated = report.presentation.clone().with_annotation(IdealSpec::I(n));
            line(
                &mut lines,
                "invariant-ideal annotation accepted",
                annotated.is_ok(),
                format!("every annihilator contains the image of I({})", n),
            );
            // K(s) for s < n vanishes; K(n) is the full cohomology
            let k1 = collapse_k(&report.presentation, 1).unwrap();
            let kn = collapse_k(&report.presentation, n).unwrap();
            let full = algebra.slice_labels(win.max_first, 0).len();
            line(
                &mut lines,
                "K(1) vanishes and K(2) has the rank of the whole cohomology",
                k1.is_empty() && kn.rank() == full,
                format!("rank {} of {}", kn.rank(), full),
            );
        }
        Err(e) => line(&mut lines, "spectral sequence", false, e.to_string()),
    }
    ExampleReport {
        example: "chi_tilde".to_string(),
        lines,
    }
}

// ----------------------------------------------------------- Rost motive --

fn m2_chow_expected(s: u32) -> ModulePresentation {
    let theory = Theory::p_n(s, 2).unwrap();
    let q1_ann = if s == 1 {
        IdealSpec::I(2)
    } else {
        IdealSpec::I(0)
    };
    ModulePresentation::new(
        theory,
        vec![
            CyclicSummand::free("1", SummandDegree::FirstWeight(0, 0)),
            CyclicSummand::free("Q0a'", SummandDegree::FirstWeight(4, 0)),
            CyclicSummand {
                generator: "Q1a'".to_string(),
                degree: SummandDegree::FirstWeight(6, 0),
                annihilator: q1_ann,
            },
        ],
    )
    .unwrap()
}

fn run_m2(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let tau = window.max(8);
    let algebra = rost::rost_motive(2, (-tau, tau));

    // the module basis, verbatim
    let basis: Vec<(String, u32, i64)> = algebra
        .explicit_basis()
        .unwrap()
        .iter()
        .map(|b| (b.label.clone(), b.monomial.rho, b.monomial.tau))
        .collect();
    let expected_basis = vec![
        ("1".to_string(), 0u32, 0i64),
        ("r".to_string(), 1, 0),
        ("r^2".to_string(), 2, 0),
        ("a'".to_string(), 3, -1),
        ("Q0a'".to_string(), 4, -2),
        ("r*Q0a'".to_string(), 5, -2),
        ("Q1a'".to_string(), 6, -3),
    ];
    line(
        &mut lines,
        "module basis over Z/2[t]",
        basis == expected_basis,
        basis
            .iter()
            .map(|(l, _, _)| l.as_str())
            .collect::<Vec<_>>()
            .join(", "),
    );

    // the Bockstein of t^-1 is derived from the Leibniz identity
    let derived = algebra.q0_of_tau_inverse(1).unwrap();
    line(
        &mut lines,
        "Q0(t^-1) derived, not tabled",
        algebra.element_string(&derived) == "r*t^-2",
        algebra.element_string(&derived),
    );

    // spectral sequences: height 1 sees the d_3 kill, heights >= 2 collapse
    let theory1 = Theory::p_n(1, 2).unwrap();
    let win = Window::new(8, 8, 4);
    match run_to_collapse(&algebra, theory1, &[1], win, false) {
        Ok(report) => {
            let chow = chow_part(&report.presentation);
            eq_presentations(
                &mut lines,
                "weight-zero part at height 1",
                &chow,
                &m2_chow_expected(1),
            );
        }
        Err(e) => line(
            &mut lines,
            "spectral sequence at height 1",
            false,
            e.to_string(),
        ),
    }
    for s in [2u32, 3] {
        let theory = Theory::p_n(s, 2).unwrap();
        let depth = 2 * 2i64.pow(s);
        let win = Window::new(8, depth, 4);
        match run_to_collapse(&algebra, theory, &[s], win, false) {
            Ok(report) => {
                let chow = chow_part(&report.presentation);
                eq_presentations(
                    &mut lines,
                    format!("weight-zero part at height {}", s),
                    &chow,
                    &m2_chow_expected(s),
                );
            }
            Err(e) => line(
                &mut lines,
                format!("spectral sequence at height {}", s),
                false,
                e.to_string(),
            ),
        }
    }

    // Chow slices are permanent
    let page = crate::ahss::e2_page(&algebra, theory1, win).unwrap();
    match permanent_cycle_check(&page, &algebra, &[1, 2]) {
        Ok(rep) => line(
            &mut lines,
            "Chow slices are permanent",
            rep.weight_zero_rank >= 3,
            format!("weight-zero rank {}", rep.weight_zero_rank),
        ),
        Err(e) => line(
            &mut lines,
            "Chow slices are permanent",
            false,
            e.to_string(),
        ),
    }

    // periodic K(1): exactly the summands with v1-free annihilator survive
    match run_to_collapse(&algebra, theory1, &[1], win, false) {
        Ok(report) => {
            let chow = chow_part(&report.presentation);
            let k1 = base_change(&chow, Theory::morava_k(1, 2).unwrap()).unwrap();
            let expected: Vec<&str> = vec!["1", "Q0a'"];
            let got: Vec<String> = k1
                .sorted()
                .summands
                .iter()
                .map(|s| s.generator.clone())
                .collect();
            line(
                &mut lines,
                "K(1) keeps the v1-torsion-free summands",
                got == expected,
                got.join(", "),
            );
        }
        Err(e) => line(
            &mut lines,
            "K(1) of the weight-zero part",
            false,
            e.to_string(),
        ),
    }

    // the cycle map on the Chow generators
    for n in [1u32, 2, 3] {
        let mut ok = rost::cycle_map_injective(n);
        for i in 0..n {
            let img = rost::cycle_map(n, i).unwrap();
            ok &= img.etale_class.rho == (1 << (n + 1)) - (1 << (i + 1));
            ok &= img.chow_class.tau == -(1i64 << n) + (1 << i);
        }
        line(
            &mut lines,
            format!(
                "cycle map at height {} is injective with the stated images",
                n
            ),
            ok,
            format!("cl(c_i) = r^(2^{} - 2^(i+1))", n + 1),
        );
    }
    ExampleReport {
        example: "m2".to_string(),
        lines,
    }
}

// ------------------------------------------------------------- Quadric --

fn run_q3(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let tau = window.max(8);
    let m2 = rost::rost_motive(2, (-tau, tau));
    let m1 = rost::rost_motive(1, (-tau, tau));
    let theory1 = Theory::p_n(1, 2).unwrap();
    let win = Window::new(8, 8, 4);

    let m2_chow = match run_to_collapse(&m2, theory1, &[1], win, false) {
        Ok(r) => chow_part(&r.presentation),
        Err(e) => {
            line(&mut lines, "height-2 piece", false, e.to_string());
            return ExampleReport {
                example: "q3".to_string(),
                lines,
            };
        }
    };
    let m1_chow = match run_to_collapse(&m1, theory1, &[1], win, false) {
        Ok(r) => chow_part(&r.presentation),
        Err(e) => {
            line(&mut lines, "height-1 piece", false, e.to_string());
            return ExampleReport {
                example: "q3".to_string(),
                lines,
            };
        }
    };
    // Tate twist of the height-1 piece: 1 -> h, a' -> h^2
    let twisted = m1_chow.shifted(2, 1).rename(|l| match l {
        "1" => "h".to_string(),
        "a'" => "h^2".to_string(),
        other => format!("{}(x)T", other),
    });
    // the motive of the quadric: h^3 = Q1a' and c = Q0a'
    let m2_named = m2_chow.rename(|l| match l {
        "Q1a'" => "h^3".to_string(),
        other => other.to_string(),
    });
    let mut summands = m2_named.summands.clone();
    summands.extend(twisted.summands.clone());
    let assembled = ModulePresentation::new(theory1, summands).unwrap();
    let expected = ModulePresentation::new(
        theory1,
        vec![
            CyclicSummand::free("1", SummandDegree::FirstWeight(0, 0)),
            CyclicSummand::free("h", SummandDegree::FirstWeight(2, 0)),
            CyclicSummand::free("h^2", SummandDegree::FirstWeight(4, 0)),
            CyclicSummand::free("Q0a'", SummandDegree::FirstWeight(4, 0)),
            CyclicSummand {
                generator: "h^3".to_string(),
                degree: SummandDegree::FirstWeight(6, 0),
                annihilator: IdealSpec::I(2),
            },
        ],
    )
    .unwrap();
    eq_presentations(
        &mut lines,
        "height-1 theory of the quadric",
        &assembled,
        &expected,
    );
    line(
        &mut lines,
        "Chow rank is five",
        assembled.rank() == 5,
        format!(
            "{} classes: 1, h, h^2, h^3(=Q1a'), c(=Q0a')",
            assembled.rank()
        ),
    );

    // periodic K(1): the torsion class h^3 dies
    let k1 = base_change(&assembled, Theory::morava_k(1, 2).unwrap()).unwrap();
    let expected_k1: Vec<&str> = vec!["1", "h", "Q0a'", "h^2"];
    let got: Vec<String> = k1
        .sorted()
        .summands
        .iter()
        .map(|s| s.generator.clone())
        .collect();
    line(
        &mut lines,
        "K(1) keeps 1, h, h^2, Q0a'",
        got == expected_k1
            && k1
                .summands
                .iter()
                .all(|s| s.annihilator.is_zero_in(k1.theory)),
        got.join(", "),
    );
    ExampleReport {
        example: "q3".to_string(),
        lines,
    }
}

// ------------------------------------------------------------- Adjoint --

fn run_f4(window: i64) -> ExampleReport {
    let mut lines = Vec::new();
    let max_k = window.max(8) as u32;
    let (table, ok) = crate::adjoint::nonnilpotency_witness(3, max_k);
    line(
        &mut lines,
        "iterated adjoint never vanishes",
        ok && table.iter().all(|l| l.nonzero),
        format!("checked ad^k for k <= {}", max_k),
    );
    line(
        &mut lines,
        "the wrap is -v2 z0 at k = 2",
        table[2].value == "2*v2*z0",
        table[2].value.clone(),
    );
    let alg = crate::adjoint::AdAlgebra::new(3);
    line(
        &mut lines,
        "rank of the full presentation is 48",
        alg.basis_rank() == 48 && alg.enumerate_basis().len() == 48,
        "3 * 2^2 * 2^2",
    );
    // the higher-prime pattern: E8 at p = 5
    let (_, ok5) = crate::adjoint::nonnilpotency_witness(5, 4);
    line(
        &mut lines,
        "the same wrap at p = 5",
        ok5,
        "ad^4(y)(z) = -v2 z",
    );
    ExampleReport {
        example: "f4_p3".to_string(),
        lines,
    }
}

// --------------------------------------------------------------- tests --

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::tower::tower_to;

    #[test]
    fn all_examples_pass_at_default_windows() {
        for name in EXAMPLE_NAMES {
            let rec = example(name).unwrap();
            let report = run_example(name, rec.default_window).unwrap();
            for l in &report.lines {
                assert!(
                    l.pass,
                    "example {}: `{}` failed: {}",
                    name, l.name, l.detail
                );
            }
            assert!(report.passed());
        }
    }

    #[test]
    fn unknown_example_is_none() {
        assert!(example("nope").is_none());
        assert!(run_example("nope", 10).is_none());
    }

    #[test]
    fn records_have_provenance() {
        for name in EXAMPLE_NAMES {
            let rec = example(name).unwrap();
            assert!(!rec.provenance.is_empty());
            assert!(!rec.summary.is_empty());
        }
    }

    #[test]
    fn tower_and_ahss_paths_agree_for_synthetic_modules() {
        // the collapse through the tower equals the direct collapse
        for (p, n) in [(2u32, 2u32), (2, 3), (3, 2)] {
            let algebra = builders::synthetic_q_module(p, n, &[("b", (0, 0))]);
            let theory = Theory::p_n(1, p).unwrap();
            let rules: Vec<u32> = (1..n).collect();
            let win = Window::new(60, 2 * (p as i64).pow(n), 0);
            let pres = run_to_collapse(&algebra, theory, &rules, win, false)
                .unwrap()
                .presentation;
            let direct = collapse_k(&pres, n).unwrap();
            let towered = collapse_k(&tower_to(&pres, n).unwrap(), n).unwrap();
            assert_eq!(direct.rank(), towered.rank());
            // the expanded rank matches the full cohomology rank
            assert_eq!(direct.rank() as u32, 1 << n);
            for s in 1..n {
                assert!(collapse_k(&pres, s).unwrap().is_empty());
            }
        }
    }
}
