//! Ready-made presentations of the cohomology algebras the example library
//! computes with.

use super::algebra::{BaseRing, BasisElem, Element, Monomial, Parity, PresentedAlgebra};

/// The base point: no generators, everything concentrated in bidegree (0,0).
pub fn point(p: u32) -> PresentedAlgebra {
    let mut a = PresentedAlgebra::new("point", BaseRing::TauOnly { p });
    a.smooth = true;
    a.dimension = Some(0);
    a.set_q_default_zero_upto(32);
    a
}

/// Mod-p cohomology of the classifying space of Z/p over an algebraically
/// closed field: `Z/p[y] (x) Lambda(x) (x) Z/p[t]` with `x` in bidegree
/// (1,1), `y` in (2,1), `x^2 = y t` at p = 2, and `Q_i(x) = y^(p^i)`.
pub fn bzp_cohomology(p: u32) -> PresentedAlgebra {
    let mut a = PresentedAlgebra::new("bzp", BaseRing::TauOnly { p });
    a.smooth = true;
    let x = a.add_generator("x", (1, 1), Parity::Odd);
    let y = a.add_generator("y", (2, 1), Parity::Even);
    if p == 2 {
        let mut yt = Monomial::gen(y, 1);
        yt.tau = 1;
        a.add_relation(Monomial::gen(x, 2), Element::monomial(2, yt, 1))
            .expect("homogeneous relation");
    }
    let max_q = 8;
    for i in 0..=max_q {
        let target = Monomial::gen(y, p.pow(i));
        a.set_q_on_generator(i, x, Element::monomial(p, target, 1));
    }
    a.set_q_default_zero_upto(max_q);
    a
}

/// Mod-2 cohomology of SO(7): `Lambda(x3, x5, y6)` with `x3^2 = y6`
/// (t-twisted motivically), `Q_1(x3) = y6` and `Q_0(x5) = y6`.
///
/// `Q_2` and above are deliberately left untabled: every differential they
/// could drive lands in an empty slice, and the engine must prove that by
/// degree bookkeeping rather than by consulting a table.
pub fn so7_cohomology() -> PresentedAlgebra {
    let mut a = PresentedAlgebra::new("so7", BaseRing::TauOnly { p: 2 });
    a.smooth = true;
    a.dimension = Some(21);
    let x3 = a.add_generator("x3", (3, 2), Parity::Odd);
    let x5 = a.add_generator("x5", (5, 3), Parity::Odd);
    let y6 = a.add_generator("y6", (6, 3), Parity::Even);
    let mut ty6 = Monomial::gen(y6, 1);
    ty6.tau = 1;
    a.add_relation(Monomial::gen(x3, 2), Element::monomial(2, ty6, 1))
        .expect("x3^2 = t*y6");
    a.add_relation(Monomial::gen(y6, 2), Element::zero(2))
        .expect("y6^2 = 0");
    let zero = Element::zero(2);
    let y6e = Element::monomial(2, Monomial::gen(y6, 1), 1);
    a.set_q_on_generator(0, x3, zero.clone());
    a.set_q_on_generator(0, x5, y6e.clone());
    a.set_q_on_generator(0, y6, zero.clone());
    a.set_q_on_generator(1, x3, y6e);
    a.set_q_on_generator(1, x5, zero.clone());
    a.set_q_on_generator(1, y6, zero);
    a
}

/// Mod-2 cohomology of the classifying space of SO(3): `Z/2[w2, w3]` with
/// `Q_0(w2) = w3` and `Q_1(w3) = w3^2` (the Chern class c3).
///
/// The presentation is not flagged smooth: its generators follow the
/// topological-degree convention, under which w3 has weight -1.
pub fn bso3_cohomology() -> PresentedAlgebra {
    let mut a = PresentedAlgebra::new("bso3", BaseRing::TauOnly { p: 2 });
    a.smooth = false;
    let w2 = a.add_generator("w2", (2, 1), Parity::Even);
    let w3 = a.add_generator("w3", (3, 1), Parity::Even);
    let zero = Element::zero(2);
    a.set_q_on_generator(0, w2, Element::monomial(2, Monomial::gen(w3, 1), 1));
    a.set_q_on_generator(0, w3, zero);
    a.set_q_on_generator(1, w3, Element::monomial(2, Monomial::gen(w3, 2), 1));
    a
}

/// A free module over the exterior algebra `Q(n-1) = Lambda(Q_0, ..,
/// Q_{n-1})` on the given labels: basis elements `Q_S(b)` for subsets `S`,
/// with the Q-action permuting them (with the reordering sign at odd p).
///
/// `labels` carry the bidegree of each module generator.
pub fn synthetic_q_module(p: u32, n: u32, labels: &[(&str, (i64, i64))]) -> PresentedAlgebra {
    assert!((1..=16).contains(&n));
    let mut a = PresentedAlgebra::new("synthetic", BaseRing::TauOnly { p });
    a.smooth = false;
    let mut gen_ids = Vec::new();
    for mask in 0u32..(1 << n) {
        for (base, bideg) in labels {
            let mut bd = *bideg;
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    bd.0 += 2 * (p as i64).pow(i) - 1;
                    bd.1 += (p as i64).pow(i) - 1;
                }
            }
            let name = word_name(mask, base);
            let parity = if bd.0 % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            let idx = a.add_generator(name, bd, parity);
            gen_ids.push((mask, base.to_string(), idx));
        }
    }
    let lookup = |mask: u32, base: &str| -> u16 {
        gen_ids
            .iter()
            .find(|(m, b, _)| *m == mask && b == base)
            .map(|(_, _, i)| *i)
            .expect("generated above")
    };
    for (mask, base, idx) in &gen_ids {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                let target = lookup(mask | (1 << i), base);
                // moving Q_i into ascending position passes the smaller
                // indices already in the word
                let smaller = (mask & ((1 << i) - 1)).count_ones();
                let sign = if smaller % 2 == 0 { 1 } else { p as u64 - 1 };
                a.set_q_on_generator(
                    i,
                    *idx,
                    Element::monomial(p, Monomial::gen(target, 1), sign),
                );
            }
        }
    }
    a.set_q_default_zero_upto(31);
    a.set_explicit_basis(
        gen_ids
            .iter()
            .map(|(_, _, idx)| BasisElem {
                label: a.generators()[*idx as usize].name.clone(),
                monomial: Monomial::gen(*idx, 1),
            })
            .collect(),
    );
    a
}

fn word_name(mask: u32, base: &str) -> String {
    if mask == 0 {
        return base.to_string();
    }
    let mut s = String::new();
    for i in 0..32 {
        if mask & (1 << i) != 0 {
            s.push_str(&format!("Q{}", i));
        }
    }
    format!("{}({})", s, base)
}

/// The reduced Cech-complex presentation attached to a pure symbol of
/// weight n: a free `Q(n-1)`-module on `B_n = M (x) Z/p[xi]{a'}`, where `M`
/// is a user-supplied finite graded piece of Milnor K-theory (classes in
/// bidegree (j, j)) and `xi` is the full Q-word on `a'`.
///
/// The full word `Q_{n-1}...Q_0` applied to the block of `xi^e a'` is the
/// class displayed as `xi^(e+1)`; composing `apply_q` reproduces that
/// identification.
pub fn chi_tilde(p: u32, n: u32, xi_powers: u32, km_part: &[(&str, i64)]) -> PresentedAlgebra {
    assert!((1..=16).contains(&n));
    let mut a = PresentedAlgebra::new("chi_tilde", BaseRing::TauOnly { p });
    a.smooth = false; // the Cech complex is not a smooth variety
    let full: u32 = (1 << n) - 1;
    // bidegree of a' and of the full word xi
    let a_deg = (n as i64, n as i64 - 1);
    let mut xi_deg = a_deg;
    for i in 0..n {
        xi_deg.0 += 2 * (p as i64).pow(i) - 1;
        xi_deg.1 += (p as i64).pow(i) - 1;
    }
    let mut gen_ids = Vec::new();
    for (km_name, km_deg) in km_part {
        for e in 0..xi_powers {
            for mask in 0u32..=full {
                let base = if e == 0 {
                    "a'".to_string()
                } else {
                    format!("xi^{}*a'", e)
                };
                let name = if mask == full {
                    format!("xi^{}", e + 1)
                } else {
                    word_name(mask, &base)
                };
                let name = if *km_name == "1" {
                    name
                } else {
                    format!("{}*{}", km_name, name)
                };
                let mut bd = (
                    a_deg.0 + e as i64 * xi_deg.0 + km_deg,
                    a_deg.1 + e as i64 * xi_deg.1 + km_deg,
                );
                for i in 0..n {
                    if mask & (1 << i) != 0 {
                        bd.0 += 2 * (p as i64).pow(i) - 1;
                        bd.1 += (p as i64).pow(i) - 1;
                    }
                }
                let parity = if bd.0 % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let idx = a.add_generator(name, bd, parity);
                gen_ids.push((km_name.to_string(), e, mask, idx));
            }
        }
    }
    let lookup = |km: &str, e: u32, mask: u32| -> u16 {
        gen_ids
            .iter()
            .find(|(k, ee, m, _)| k == km && *ee == e && *m == mask)
            .map(|(_, _, _, i)| *i)
            .expect("generated above")
    };
    for (km, e, mask, idx) in &gen_ids {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                let target = lookup(km, *e, mask | (1 << i));
                let smaller = (mask & ((1 << i) - 1)).count_ones();
                let sign = if smaller % 2 == 0 { 1 } else { p as u64 - 1 };
                a.set_q_on_generator(
                    i,
                    *idx,
                    Element::monomial(p, Monomial::gen(target, 1), sign),
                );
            }
        }
    }
    a.set_q_default_zero_upto(31);
    a.set_explicit_basis(
        gen_ids
            .iter()
            .map(|(_, _, _, idx)| BasisElem {
                label: a.generators()[*idx as usize].name.clone(),
                monomial: Monomial::gen(*idx, 1),
            })
            .collect(),
    );
    a
}
