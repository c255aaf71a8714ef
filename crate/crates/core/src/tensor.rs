//! Balanced tensor products `M (x)_B N` as explicit quotient spaces.
//!
//! A junction lists, for every basis element `b` of the base, the operator
//! `m -> m.b` on the left factor and `n -> b.n` on the right factor. Which
//! actions are used is up to the caller, which covers all the balanced
//! products built from source and target maps.

use crate::algebra::FiniteStarAlgebra;
use crate::linalg::{kron_vec, zero_vec, Matrix, QuotientSpace, SparseVec, Subspace, Vector};
use crate::scalar::Q;

#[derive(Clone, Debug)]
pub struct Junction {
    /// `m -> m.b_k` acting on the left factor.
    pub left: Vec<Matrix>,
    /// `n -> b_k.n` acting on the right factor.
    pub right: Vec<Matrix>,
}

impl Junction {
    pub fn new(left: Vec<Matrix>, right: Vec<Matrix>) -> Self {
        assert_eq!(left.len(), right.len(), "junction: base dimension mismatch");
        Junction { left, right }
    }

    /// Tensor product over the field.
    pub fn none() -> Self {
        Junction { left: vec![], right: vec![] }
    }
}

fn relation_vectors(dm: usize, dn: usize, j: &Junction) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for (l, r) in j.left.iter().zip(&j.right) {
        assert_eq!((l.rows(), l.cols()), (dm, dm), "left operator shape");
        assert_eq!((r.rows(), r.cols()), (dn, dn), "right operator shape");
        for a in 0..dm {
            for b in 0..dn {
                let mut v: Vec<(usize, Q)> = Vec::new();
                for i in 0..dm {
                    let x = l.get(i, a);
                    if !x.is_zero() {
                        v.push((i * dn + b, x.clone()));
                    }
                }
                for k in 0..dn {
                    let y = r.get(k, b);
                    if !y.is_zero() {
                        v.push((a * dn + k, -y));
                    }
                }
                v.sort_by_key(|(i, _)| *i);
                let mut merged: SparseVec = Vec::with_capacity(v.len());
                for (i, x) in v {
                    match merged.last_mut() {
                        Some((j, y)) if *j == i => *y += &x,
                        _ => merged.push((i, x)),
                    }
                }
                merged.retain(|(_, x)| !x.is_zero());
                if !merged.is_empty() {
                    out.push(merged);
                }
            }
        }
    }
    out
}

/// `M (x)_B N` with canonical quotient coordinates.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub dm: usize,
    pub dn: usize,
    pub quotient: QuotientSpace,
}

impl BalancedTensor {
    pub fn new(dm: usize, dn: usize, j: &Junction) -> Self {
        let rels = relation_vectors(dm, dn, j);
        let sub = Subspace::from_sparse(dm * dn, rels.iter());
        BalancedTensor { dm, dn, quotient: QuotientSpace::new(sub) }
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn project(&self, v: &[Q]) -> Vector {
        self.quotient.project(v)
    }

    pub fn project_pair(&self, m: &[Q], n: &[Q]) -> Vector {
        self.quotient.project(&kron_vec(m, n))
    }

    pub fn section(&self, q: &[Q]) -> Vector {
        self.quotient.section(q)
    }

    /// Quotient coordinate `k` as a pair of basis indices `(i, j)`.
    pub fn representative_pair(&self, k: usize) -> (usize, usize) {
        let idx = self.quotient.representative(k);
        (idx / self.dn, idx % self.dn)
    }

    /// Operator on the quotient induced by `f (x) g` on the ambient space.
    pub fn induced(&self, f: &Matrix, g: &Matrix) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|k| {
                let (i, j) = self.representative_pair(k);
                self.project_pair(&f.column(i), &g.column(j))
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}

/// Iterated balanced tensor `V_1 (x) V_2 (x) ... (x) V_k`, each junction
/// balancing neighbouring factors.
#[derive(Clone, Debug)]
pub struct TensorChain {
    dims: Vec<usize>,
    stages: Vec<BalancedTensor>,
}

impl TensorChain {
    pub fn new(dims: &[usize], junctions: &[Junction]) -> Self {
        assert!(dims.len() >= 2 && junctions.len() == dims.len() - 1);
        let mut stages: Vec<BalancedTensor> = Vec::new();
        let mut left_dim = dims[0];
        for (m, j) in junctions.iter().enumerate() {
            let j = if m == 0 {
                j.clone()
            } else {
                let prev = stages.last().unwrap();
                let id = Matrix::identity(prev.dm);
                let left = j.left.iter().map(|op| prev.induced(&id, op)).collect();
                Junction::new(left, j.right.clone())
            };
            let bt = BalancedTensor::new(left_dim, dims[m + 1], &j);
            left_dim = bt.dim();
            stages.push(bt);
        }
        TensorChain { dims: dims.to_vec(), stages }
    }

    pub fn dim(&self) -> usize {
        self.stages.last().unwrap().dim()
    }

    pub fn ambient(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn factors(&self) -> &[usize] {
        &self.dims
    }

    /// Project an ambient vector (row-major multi-index) to quotient coordinates.
    pub fn project(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.ambient(), "chain project: dimension mismatch");
        self.project_upto(self.stages.len(), v)
    }

    fn project_upto(&self, k: usize, v: &[Q]) -> Vector {
        // v lives in dims[0] (x) ... (x) dims[k]
        if k == 1 {
            return self.stages[0].project(v);
        }
        let last = self.dims[k];
        let head: usize = self.dims[..k].iter().product();
        let stage = &self.stages[k - 1];
        let mut mid = zero_vec(stage.dm * last);
        for c in 0..last {
            let slice: Vector = (0..head).map(|r| v[r * last + c].clone()).collect();
            if slice.iter().all(Q::is_zero) {
                continue;
            }
            let p = self.project_upto(k - 1, &slice);
            for (r, x) in p.into_iter().enumerate() {
                mid[r * last + c] = x;
            }
        }
        stage.project(&mid)
    }

    /// Project a pure tensor.
    pub fn project_pure(&self, parts: &[&[Q]]) -> Vector {
        let mut v = parts[0].to_vec();
        for p in &parts[1..] {
            v = kron_vec(&v, p);
        }
        self.project(&v)
    }
}

/// Nonzero entries `(p, q, c)` of a vector in `V (x) W` with `dim W = m`.
pub fn terms2(v: &[Q], m: usize) -> impl Iterator<Item = (usize, usize, &Q)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (k / m, k % m, c))
}

/// `(f (x) g) v` for `v` in `V (x) W`.
pub fn apply2(f: &Matrix, g: &Matrix, v: &[Q]) -> Vector {
    let (n, m) = (f.cols(), g.cols());
    assert_eq!(v.len(), n * m, "apply2: dimension mismatch");
    let fc: Vec<Vector> = (0..n).map(|p| f.column(p)).collect();
    let gc: Vec<Vector> = (0..m).map(|q| g.column(q)).collect();
    let mut out = zero_vec(f.rows() * g.rows());
    for (p, q, c) in terms2(v, m) {
        add_kron(&mut out, c, &fc[p], &gc[q]);
    }
    out
}

/// `out += c * (a (x) b)`.
pub fn add_kron(out: &mut [Q], c: &Q, a: &[Q], b: &[Q]) {
    let m = b.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let cx = c * x;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * m + j] += &(&cx * y);
            }
        }
    }
}

/// `v (x) w -> w (x) v`, with `dim V = n`, `dim W = m`.
pub fn flip(v: &[Q], n: usize, m: usize) -> Vector {
    let mut out = zero_vec(n * m);
    for (p, q, c) in terms2(v, m) {
        out[q * n + p] = c.clone();
    }
    out
}

/// Componentwise product in `A (x) A` (both factors from the same algebra).
pub fn tensor_mul(alg: &FiniteStarAlgebra, u: &[Q], v: &[Q]) -> Vector {
    let n = alg.dim();
    let mut out = zero_vec(n * n);
    for (p, q, c) in terms2(u, n) {
        for (r, s, d) in terms2(v, n) {
            let cd = c * d;
            let left = alg.product(p, r);
            let right = alg.product(q, s);
            for (a, x) in left {
                let cdx = &cd * x;
                for (b, y) in right {
                    out[a * n + b] += &(&cdx * y);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::functions;

    #[test]
    fn functions_on_two_points_tensor_over_itself() {
        let a = functions(2);
        let ops: Vec<Matrix> = (0..2).map(|k| a.right_mul_matrix(&a.basis_vec(k))).collect();
        let lops: Vec<Matrix> = (0..2).map(|k| a.left_mul_matrix(&a.basis_vec(k))).collect();
        let bt = BalancedTensor::new(2, 2, &Junction::new(ops, lops));
        assert_eq!(bt.dim(), 2);
        let free = BalancedTensor::new(2, 3, &Junction::none());
        assert_eq!(free.dim(), 6);
    }
}
