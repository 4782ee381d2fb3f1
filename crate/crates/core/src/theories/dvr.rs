//! Exact linear algebra over the discrete valuation ring `Z_(p)`.
//!
//! Entries are exact rationals with p-free denominators. Everything needed
//! here reduces to two primitives: a saturated kernel of a map of free
//! modules, and membership of a vector in a span. Over a valuation ring
//! both are ordinary Gaussian elimination with pivots chosen by minimal
//! p-valuation.

use num::{BigInt, BigRational, Signed, Zero};

pub type Q = BigRational;

/// p-adic valuation of a nonzero rational (negative for p in the
/// denominator, which does not occur for `Z_(p)` entries).
pub fn valuation(x: &Q, p: u32) -> i64 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().abs();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

/// A span of vectors in `Z_(p)^n`, kept in echelon form with pivots of
/// minimal valuation.
#[derive(Debug, Clone)]
pub struct DvrSpan {
    p: u32,
    ambient: usize,
    /// (pivot position, vector) with strictly increasing pivot positions
    rows: Vec<(usize, Vec<Q>)>,
}

impl DvrSpan {
    pub fn new(p: u32, ambient: usize) -> DvrSpan {
        DvrSpan {
            p,
            ambient,
            rows: Vec::new(),
        }
    }

    /// Reduce `v` against the span as far as divisibility allows.
    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        debug_assert_eq!(v.len(), self.ambient);
        for (pos, row) in &self.rows {
            if v[*pos].is_zero() {
                continue;
            }
            if valuation(&v[*pos], self.p) >= valuation(&row[*pos], self.p) {
                let c = &v[*pos] / &row[*pos];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Insert a vector, maintaining the echelon structure.
    pub fn insert(&mut self, v: Vec<Q>) {
        let mut v = v;
        loop {
            v = self.reduce(v);
            let Some(pos) = v.iter().position(|x| !x.is_zero()) else {
                return;
            };
            match self.rows.iter().position(|(rp, _)| *rp == pos) {
                None => {
                    let at = self
                        .rows
                        .iter()
                        .position(|(rp, _)| *rp > pos)
                        .unwrap_or(self.rows.len());
                    self.rows.insert(at, (pos, v));
                    return;
                }
                Some(i) => {
                    // the existing pivot has larger valuation: swap them and
                    // keep reducing the displaced row
                    debug_assert!(
                        valuation(&v[pos], self.p) < valuation(&self.rows[i].1[pos], self.p)
                    );
                    std::mem::swap(&mut self.rows[i].1, &mut v);
                }
            }
        }
    }
}

/// Kernel of the row map `x -> sum x_i rows_i` between free `Z_(p)`
/// modules, returned as a spanning set of p-primitive vectors (the kernel
/// of a map of free modules is saturated, so scaling the rational kernel
/// works).
pub fn kernel(p: u32, rows: &[Vec<Q>], target_dim: usize) -> Vec<Vec<Q>> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    // rational row reduction of [A | I]
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            debug_assert_eq!(r.len(), target_dim);
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(Q::zero(), n));
            row[target_dim + i] = Q::from_integer(BigInt::from(1));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..target_dim {
        let Some(r) = (pivot_row..n).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].clone();
        for x in aug[pivot_row].iter_mut() {
            *x /= &inv;
        }
        for r2 in 0..n {
            if r2 != pivot_row && !aug[r2][col].is_zero() {
                let c = aug[r2][col].clone();
                for k in 0..aug[r2].len() {
                    let sub = &c * &aug[pivot_row][k];
                    aug[r2][k] -= sub;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    let mut out = Vec::new();
    for row in &aug[pivot_row..] {
        debug_assert!(row[..target_dim].iter().all(|x| x.is_zero()));
        out.push(primitive(p, row[target_dim..].to_vec()));
    }
    out
}

/// Scale a rational vector by a power of p so that the minimal valuation
/// among nonzero entries is zero.
fn primitive(p: u32, mut v: Vec<Q>) -> Vec<Q> {
    let min = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| valuation(x, p))
        .min();
    if let Some(min) = min {
        if min != 0 {
            let scale = if min > 0 {
                Q::new(BigInt::from(1), BigInt::from(p).pow(min as u32))
            } else {
                Q::from_integer(BigInt::from(p).pow((-min) as u32))
            };
            for x in v.iter_mut() {
                *x *= &scale;
            }
        }
    }
    v
}

/// A finitely presented `Z_(p)`-module: labeled generators and relation
/// vectors in generator coordinates.
#[derive(Debug, Clone, Default)]
pub struct DvrModule {
    pub gens: Vec<String>,
    pub rels: Vec<Vec<Q>>,
}

impl DvrModule {
    pub fn vector_is_zero(&self, p: u32, v: &[Q]) -> bool {
        let mut span = DvrSpan::new(p, self.gens.len());
        for r in &self.rels {
            span.insert(r.clone());
        }
        span.contains(v)
    }
}
