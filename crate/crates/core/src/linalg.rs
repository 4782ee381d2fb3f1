//! Dense linear algebra over the prime field F_p.
//!
//! Page slices in the spectral-sequence engine and the various freeness
//! checks all reduce to row reduction of small dense matrices, so nothing
//! sparse lives here.

/// x^(p-2) mod p, the inverse of a unit mod a prime.
pub fn fp_inv(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// A subspace of F_p^n maintained in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u64, ambient: usize) -> Subspace {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Reduce a vector modulo the subspace.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.ambient);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv] % self.p;
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true if it enlarged the subspace.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x % self.p != 0) else {
            return false;
        };
        let inv = fp_inv(v[piv] % self.p, self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        // back-substitute to keep earlier rows reduced
        for (row, &rpiv) in self.rows.iter_mut().zip(&self.pivots) {
            let c = row[piv] % self.p;
            if c != 0 {
                debug_assert!(rpiv != piv);
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + (self.p - c) * y) % self.p;
                }
            }
        }
        // keep rows sorted by pivot for deterministic bases
        let at = self
            .pivots
            .iter()
            .position(|&q| q > piv)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, piv);
        true
    }
}

/// Kernel of the row map x |-> sum_i x_i * rows[i], i.e. all coefficient
/// vectors annihilating the given rows. Returns an RREF basis.
pub fn kernel_of_row_map(p: u64, rows: &[Vec<u64>], target_dim: usize) -> Vec<Vec<u64>> {
    let n = rows.len();
    // augmented matrix [A | I], row-reduced; rows with zero A-part carry
    // kernel coefficients in the identity part
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            debug_assert_eq!(r.len(), target_dim);
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(0, n));
            row[target_dim + i] = 1;
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..target_dim {
        let Some(r) = (pivot_row..n).find(|&r| !aug[r][col].is_multiple_of(p)) else {
            continue;
        };
        aug.swap(pivot_row, r);
        let inv = fp_inv(aug[pivot_row][col] % p, p);
        for x in aug[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..n {
            if r2 != pivot_row {
                let c = aug[r2][col] % p;
                if c != 0 {
                    for k in 0..aug[r2].len() {
                        let sub = (p - c) * aug[pivot_row][k] % p;
                        aug[r2][k] = (aug[r2][k] + sub) % p;
                    }
                }
            }
        }
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    let mut kernel = Vec::new();
    for row in &aug[pivot_row..] {
        debug_assert!(row[..target_dim].iter().all(|&x| x % p == 0));
        kernel.push(row[target_dim..].to_vec());
    }
    // normalize to a canonical basis
    let mut space = Subspace::new(p, n);
    for v in kernel {
        space.insert(v);
    }
    space.rows
}

/// The rank of a set of vectors.
pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut space = Subspace::new(p, first.len());
    for r in rows {
        space.insert(r.clone());
    }
    space.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(2, 3);
        assert!(s.insert(vec![1, 1, 0]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 0, 1])); // sum of the others
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1]));
        assert!(!s.contains(&[1, 0, 0]));
    }

    #[test]
    fn kernel_computation() {
        // rows: e1+e2, e2, e1 -> kernel spanned by (1,-1,-1)
        let rows = vec![vec![1, 1], vec![0, 1], vec![1, 0]];
        let k = kernel_of_row_map(3, &rows, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // check: v0*(1,1) + v1*(0,1) + v2*(1,0) = 0 mod 3
        assert_eq!((v[0] + v[2]) % 3, 0);
        assert_eq!((v[0] + v[1]) % 3, 0);
        assert!(v.iter().any(|&x| x != 0));
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let rows = vec![vec![0, 0], vec![0, 0]];
        let k = kernel_of_row_map(5, &rows, 2);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn rank_of_rows() {
        assert_eq!(rank(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank(3, &[]), 0);
    }

    #[test]
    fn inverse_mod_p() {
        for p in [2u64, 3, 5, 7] {
            for x in 1..p {
                assert_eq!(x * fp_inv(x, p) % p, 1);
            }
        }
    }
}
