//! The mod-2 motivic cohomology of Rost motives over the real numbers.
//!
//! For the motive `M_n` of a norm quadric the cohomology is the
//! `Z/2[r,t]`-subalgebra of `Z/2[r, t, t^-1]/(r^(2^(n+1)-1))` generated by
//! `a = r^(n+1)`, `a' = a t^-1` and the Q-words on `a'`. Every homogeneous
//! class of the ambient ring is zero or a single monomial `r^a t^b`, so the
//! whole structure is determined by which monomials lie in the subalgebra
//! and by the Q-action on monomials.
//!
//! The Q-action on a monomial is carried by the binary digits of the
//! t-exponent:
//!
//! ```text
//! Q_i(r^a t^b) = r^(a + 2^(i+1) - 1) t^(b - 2^i)   if bit i of b is set,
//!                0                                  otherwise
//! ```
//!
//! (bit i of b meaning `b mod 2^(i+1) >= 2^i`, also for negative b). This
//! single rule reproduces every classical value: `Q_0(t^-1) = r t^-2`,
//! `Q_0(a') = r a t^-2`, `Q_0(a) = 0`, `Q_1(t^2) = r^3`, `Q_1(t^-2) =
//! r^3 t^-4`, `Q_1(a') = r^6 t^-3` for n = 2, and the Chow generators
//! `c_i = Q_0 .. (skip i) .. Q_{n-1}(a') = r^(2^(n+1)-2^(i+1)) t^(-2^n+2^i)`.
//! The table built here is cross-checked against those values in the tests;
//! `apply_q` itself stays table-driven.

use thiserror::Error;

use super::algebra::{BaseRing, BasisElem, Element, Monomial, PresentedAlgebra};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RostError {
    #[error("chow index {i} out of range for height {n}")]
    IndexOutOfRange { i: u32, n: u32 },
}

/// Bit `i` of `b` in the two's-complement sense: `b mod 2^(i+1) >= 2^i`.
pub fn tau_bit(i: u32, b: i64) -> bool {
    b.rem_euclid(1 << (i + 1)) >= (1 << i)
}

/// The motivic cohomology of the Rost motive `M_n` over the reals, with
/// the Q-table populated for `Q_0 .. Q_n` on every monomial whose
/// t-exponent lies in `tau_window` (padded internally).
pub fn rost_motive(n: u32, tau_window: (i64, i64)) -> PresentedAlgebra {
    assert!(n >= 1, "height must be at least 1");
    assert!(n <= 10, "height out of the supported range");
    let trunc: u32 = (1 << (n + 1)) - 1;
    let mut a = PresentedAlgebra::new(format!("rost_m{}", n), BaseRing::RhoTau);
    a.smooth = true;
    a.dimension = Some((1 << n) - 1);
    a.set_rho_truncation(trunc);
    let pad = 1i64 << (n + 2);
    let window = (tau_window.0 - pad, tau_window.1 + pad);
    a.set_tau_window(window.0, window.1);

    // minimal t-exponent per r-power: unbounded knapsack over the
    // subalgebra generators r and the Q-words on a'
    let mut gens: Vec<(u32, i64)> = vec![(1, 0)];
    for mask in 0u32..(1 << n) {
        let (rho, tau) = word_exponents(n, mask);
        if rho < trunc {
            gens.push((rho, tau));
        }
    }
    let mut min_tau: Vec<i64> = vec![i64::MAX; trunc as usize];
    min_tau[0] = 0;
    for alpha in 1..trunc as usize {
        for &(r, t) in &gens {
            let r = r as usize;
            if r <= alpha && min_tau[alpha - r] != i64::MAX {
                min_tau[alpha] = min_tau[alpha].min(min_tau[alpha - r] + t);
            }
        }
    }

    let mut basis = Vec::new();
    for alpha in 0..trunc {
        let t = min_tau[alpha as usize];
        basis.push(BasisElem {
            label: basis_name(n, alpha, t),
            monomial: Monomial::rho_tau(alpha, t),
        });
    }
    a.set_explicit_basis(basis);

    // Q-table on every ambient monomial in the padded window
    for i in 0..=n {
        for alpha in 0..trunc {
            for beta in window.0..=window.1 {
                if !tau_bit(i, beta) {
                    continue;
                }
                let target_rho = alpha + (1 << (i + 1)) - 1;
                if target_rho >= trunc {
                    continue; // truncated to zero, covered by the default
                }
                let target = Monomial::rho_tau(target_rho, beta - (1 << i));
                a.set_q_table_entry(
                    i,
                    Monomial::rho_tau(alpha, beta),
                    Element::monomial(2, target, 1),
                );
            }
        }
    }
    a.set_q_default_zero_upto(n);

    // the Bockstein of negative t-powers is forced by the Leibniz identity
    // on t * t^-1; cross-check the table against the derivation
    for j in 1..=4u32.min(window.1.max(1) as u32) {
        let derived = a.q0_of_tau_inverse(j).expect("derivable");
        let tabled = a
            .apply_q(0, &a.elem_from_monomial(Monomial::rho_tau(0, -(j as i64))))
            .expect("in window");
        assert_eq!(derived, tabled, "Bockstein of t^-{} disagrees", j);
    }
    // the subalgebra is closed under the Q-action
    let check_window = 4i64;
    for b in a.explicit_basis().unwrap().to_vec() {
        for j in 0..=check_window {
            let m = b.monomial.tau_shift(j);
            for i in 0..=n {
                if let Some(v) = a.q_table_entry(i, &m) {
                    if let Some((target, _)) = v.as_single_monomial() {
                        let t = target.tau;
                        let r = target.rho;
                        assert!(
                            min_tau[r as usize] <= t,
                            "Q{} of {} leaves the subalgebra",
                            i,
                            a.monomial_name(&m)
                        );
                    }
                }
            }
        }
    }
    a
}

/// (rho, tau) exponents of the word `Q_S(a')` for the bitmask `S`.
fn word_exponents(n: u32, mask: u32) -> (u32, i64) {
    let mut rho = n + 1;
    let mut tau: i64 = -1;
    for i in 0..n {
        if mask & (1 << i) != 0 {
            rho += (1 << (i + 1)) - 1;
            tau -= 1 << i;
        }
    }
    (rho, tau)
}

fn basis_name(n: u32, alpha: u32, tau: i64) -> String {
    if tau == 0 {
        return match alpha {
            0 => "1".to_string(),
            1 => "r".to_string(),
            k => format!("r^{}", k),
        };
    }
    // prefer r^k times a single Q-word when that attains the minimum
    for mask in 0u32..(1 << n) {
        let (wr, wt) = word_exponents(n, mask);
        if wr <= alpha && wt == tau {
            let k = alpha - wr;
            let word = if mask == 0 {
                "a'".to_string()
            } else {
                let mut s = String::new();
                for i in 0..n {
                    if mask & (1 << i) != 0 {
                        s.push_str(&format!("Q{}", i));
                    }
                }
                format!("{}a'", s)
            };
            return match k {
                0 => word,
                1 => format!("r*{}", word),
                k => format!("r^{}*{}", k, word),
            };
        }
    }
    // fall back to the raw monomial (products of several words)
    match alpha {
        0 => format!("t^{}", tau),
        1 => format!("r*t^{}", tau),
        _ => format!("r^{}*t^{}", alpha, tau),
    }
}

/// The image of a Chow generator of the Rost motive under the mod-2 cycle
/// map to etale cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleMapImage {
    /// the Chow class `c_i = r^(2^(n+1)-2^(i+1)) t^(-2^n+2^i)`
    pub chow_class: Monomial,
    /// its image `r^(2^(n+1)-2^(i+1))`: multiplication by the t-power that
    /// lands in bidegree (2*, 2*)
    pub etale_class: Monomial,
}

/// `cl(c_i)` for the Rost motive of height n.
pub fn cycle_map(n: u32, i: u32) -> Result<CycleMapImage, RostError> {
    if i >= n {
        return Err(RostError::IndexOutOfRange { i, n });
    }
    let rho = (1u32 << (n + 1)) - (1 << (i + 1));
    let tau = -(1i64 << n) + (1 << i);
    Ok(CycleMapImage {
        chow_class: Monomial::rho_tau(rho, tau),
        etale_class: Monomial::rho_tau(rho, 0),
    })
}

/// The cycle map is injective on the span of the Chow generators: their
/// images are distinct nonzero monomials below the truncation exponent.
pub fn cycle_map_injective(n: u32) -> bool {
    let trunc = (1u32 << (n + 1)) - 1;
    let mut images = std::collections::BTreeSet::new();
    for i in 0..n {
        let img = cycle_map(n, i).expect("in range");
        if img.etale_class.rho >= trunc {
            return false;
        }
        if !images.insert(img.etale_class.rho) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> PresentedAlgebra {
        rost_motive(2, (-8, 8))
    }

    #[test]
    fn m2_basis_is_the_classical_list() {
        let a = m2();
        let basis = a.explicit_basis().unwrap();
        let got: Vec<(String, u32, i64)> = basis
            .iter()
            .map(|b| (b.label.clone(), b.monomial.rho, b.monomial.tau))
            .collect();
        assert_eq!(
            got,
            vec![
                ("1".to_string(), 0, 0),
                ("r".to_string(), 1, 0),
                ("r^2".to_string(), 2, 0),
                ("a'".to_string(), 3, -1),
                ("Q0a'".to_string(), 4, -2),
                ("r*Q0a'".to_string(), 5, -2),
                ("Q1a'".to_string(), 6, -3),
            ]
        );
    }

    #[test]
    fn m1_contains_a_prime_of_weight_zero() {
        let a = rost_motive(1, (-4, 4));
        let basis = a.explicit_basis().unwrap();
        let ap = basis.iter().find(|b| b.label == "a'").unwrap();
        assert_eq!((ap.monomial.rho, ap.monomial.tau), (2, -1));
        let e = a.elem_from_monomial(ap.monomial.clone());
        assert_eq!(a.weight(&e).unwrap(), 0);
        assert_eq!(basis.len(), 3); // 1, r, a'
    }

    #[test]
    fn q_values_from_the_table() {
        let a = m2();
        let q = |i: u32, rho: u32, tau: i64| {
            a.apply_q(i, &a.elem_from_monomial(Monomial::rho_tau(rho, tau)))
                .unwrap()
        };
        // Q0(t^-1) = r t^-2
        assert_eq!(a.element_string(&q(0, 0, -1)), "r*t^-2");
        // Q0(a') = r a t^-2 = r^4 t^-2
        assert_eq!(a.element_string(&q(0, 3, -1)), "r^4*t^-2");
        // Q0(a) = 0 for a = r^3
        assert!(q(0, 3, 0).is_zero());
        // Q1(t^-2) = r^3 t^-4
        assert_eq!(a.element_string(&q(1, 0, -2)), "r^3*t^-4");
        // Q1(t^2) = r^3
        assert_eq!(a.element_string(&q(1, 0, 2)), "r^3");
        // Q1(a') = r^6 t^-3
        assert_eq!(a.element_string(&q(1, 3, -1)), "r^6*t^-3");
        // Q1(t) = 0 and Q1(t^4) = 0
        assert!(q(1, 0, 1).is_zero());
        assert!(q(1, 0, 4).is_zero());
        // Q1 Q0 a' = r^7 t^-4 = 0 by the truncation
        let q0 = q(0, 3, -1);
        assert!(a.apply_q(1, &q0).unwrap().is_zero());
    }

    #[test]
    fn bockstein_of_tau_inverse_is_derived() {
        let a = m2();
        let derived = a.q0_of_tau_inverse(1).unwrap();
        assert_eq!(a.element_string(&derived), "r*t^-2");
    }

    #[test]
    fn q_squares_and_anticommutation_on_m2() {
        let a = m2();
        for b in a.explicit_basis().unwrap().to_vec() {
            for j in 0..=3i64 {
                let e = a.elem_from_monomial(b.monomial.tau_shift(j));
                for i in 0..=2u32 {
                    let q = a.apply_q(i, &e).unwrap();
                    assert!(a.apply_q(i, &q).unwrap().is_zero());
                }
                let q01 = a.apply_q(0, &a.apply_q(1, &e).unwrap()).unwrap();
                let q10 = a.apply_q(1, &a.apply_q(0, &e).unwrap()).unwrap();
                assert_eq!(q01, q10.neg()); // equality at p = 2
            }
        }
    }

    #[test]
    fn tau_multiplication_is_injective_on_basis() {
        let a = m2();
        let mut images = std::collections::BTreeSet::new();
        for b in a.explicit_basis().unwrap() {
            let t = a.mul_elements(
                &a.elem_from_monomial(b.monomial.clone()),
                &a.elem_from_monomial(Monomial::rho_tau(0, 1)),
            );
            assert!(!t.is_zero());
            assert!(images.insert(a.element_string(&t)));
        }
    }

    #[test]
    fn chow_part_of_m2() {
        let a = m2();
        let chow: Vec<String> = a.chow_basis(8, 4).into_iter().map(|l| l.name).collect();
        assert_eq!(chow, vec!["1", "Q0a'", "Q1a'"]);
    }

    #[test]
    fn cycle_map_images() {
        // n=2: c_0 = r^6 t^-3 -> r^6, c_1 = r^4 t^-2 -> r^4
        let c0 = cycle_map(2, 0).unwrap();
        assert_eq!((c0.chow_class.rho, c0.chow_class.tau), (6, -3));
        assert_eq!(c0.etale_class.rho, 6);
        let c1 = cycle_map(2, 1).unwrap();
        assert_eq!((c1.chow_class.rho, c1.chow_class.tau), (4, -2));
        assert_eq!(c1.etale_class.rho, 4);
        // n=1: c_0 = r^2 t^-1 -> r^2
        let c0 = cycle_map(1, 0).unwrap();
        assert_eq!((c0.chow_class.rho, c0.chow_class.tau), (2, -1));
        assert_eq!(c0.etale_class.rho, 2);
        assert!(cycle_map(2, 2).is_err());
        for n in 1..=3 {
            assert!(cycle_map_injective(n));
        }
    }

    #[test]
    fn chow_classes_match_cycle_map_formulas() {
        // the weight-zero basis elements are exactly the c_i (plus the unit)
        for n in [1u32, 2, 3] {
            let a = rost_motive(n, (-20, 20));
            let chow = a.chow_basis(1 << (n + 2), 0);
            let expected: std::collections::BTreeSet<(u32, i64)> = (0..n)
                .map(|i| {
                    let c = cycle_map(n, i).unwrap().chow_class;
                    (c.rho, c.tau)
                })
                .chain(std::iter::once((0, 0)))
                .collect();
            let got: std::collections::BTreeSet<(u32, i64)> = chow
                .iter()
                .map(|l| (l.monomial.rho, l.monomial.tau))
                .collect();
            assert_eq!(got, expected, "n={}", n);
        }
    }
}
