//! Exact linear algebra over the Gaussian rationals.
//!
//! Dense matrices are reduced with fraction-free Gauss-Jordan elimination over
//! the Gaussian integers. Large sparse spanning sets (relation spans of
//! balanced tensor products) go through an incremental sparse echelon builder.
//! Both produce the same reduced row echelon form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::scalar::{GaussInt, Q};

pub type Vector = Vec<Q>;
/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Q)>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Q::is_zero)
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn conj_vec(a: &[Q]) -> Vector {
    a.iter().map(Q::conj).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(n: usize, v: &SparseVec) -> Vector {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Kronecker product of coordinate vectors: index `i * b.len() + j`.
pub fn kron_vec(a: &[Q], b: &[Q]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if x.is_zero() || y.is_zero() {
                out.push(Q::zero());
            } else {
                out.push(x * y);
            }
        }
    }
    out
}

/// Dense row-major matrix. As a linear map it acts on column vectors, so
/// column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Build from a row count and the images of the basis vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.cols, "apply: dimension mismatch");
        let mut out = zero_vec(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += &(m * x);
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "mul: dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Q::conj).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &o.data) }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &o.data) }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: scale_vec(c, &self.data) }
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Fraction-free Gauss-Jordan over the Gaussian integers: each row is
    /// cleared of denominators, every update divides exactly by the previous
    /// pivot, and rows are normalized to leading 1 at the end. Pivoting takes
    /// the first nonzero entry in column order, so the output is reproducible.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<GaussInt>> = (0..rows)
            .map(|i| {
                let row = self.row(i);
                let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
                row.iter().map(|x| GaussInt::from_scaled(x, &scale)).collect()
            })
            .collect();
        let mut prev = GaussInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(p, r);
            let piv = a[r][c].clone();
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let f = row[c].clone();
                for j in 0..cols {
                    let t = piv.mul(&row[j]);
                    let t = if f.is_zero() { t } else { t.sub(&f.mul(&pivot_row[j])) };
                    row[j] = t.exact_div(&prev);
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::zeros(rows, cols);
        for (i, &c) in pivots.iter().enumerate() {
            let inv = a[i][c].to_q().inv().expect("nonzero pivot");
            for j in 0..cols {
                if !a[i][j].is_zero() {
                    out.set(i, j, &a[i][j].to_q() * &inv);
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = zero_vec(self.cols);
            v[f] = Q::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, f);
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.cols, vecs.iter().map(|v| v.as_slice()))
    }

    /// Some `x` with `M x = b`, free variables set to zero, or `None`.
    pub fn solve(&self, b: &[Q]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `M X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + b.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b.get(i, j - self.cols).clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }
}

/// Incremental echelon basis of a span of sparse vectors.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder { ambient, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec) -> BTreeMap<usize, Q> {
        let mut acc: BTreeMap<usize, Q> = v.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let next = acc.range(cursor..).next().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                for (j, x) in row {
                    let e = acc.entry(*j).or_insert_with(Q::zero);
                    *e -= &(&c * x);
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
            }
            cursor = k + 1;
        }
        acc
    }

    /// Returns true when the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ambient));
        let acc = self.reduce(v);
        let Some((&lead, lc)) = acc.iter().next() else { return false };
        let inv = lc.inv().expect("nonzero");
        let row: SparseVec = acc.iter().map(|(j, x)| (*j, x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn insert_dense(&mut self, v: &[Q]) -> bool {
        self.insert(&to_sparse(v))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitute to the unique reduced row echelon basis.
    pub fn finish(mut self) -> Subspace {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for &p in pivots.iter().rev() {
            let prow = self.rows[&p].clone();
            for &q in pivots.iter().filter(|&&q| q < p) {
                let row = self.rows.get_mut(&q).unwrap();
                let Ok(pos) = row.binary_search_by_key(&p, |(j, _)| *j) else { continue };
                let c = row[pos].1.clone();
                let mut merged: BTreeMap<usize, Q> = row.drain(..).collect();
                for (j, x) in &prow {
                    let e = merged.entry(*j).or_insert_with(Q::zero);
                    *e -= &(&c * x);
                    if e.is_zero() {
                        merged.remove(j);
                    }
                }
                *row = merged.into_iter().collect();
            }
        }
        Subspace { ambient: self.ambient, pivots, rows: self.rows.into_values().collect() }
    }
}

/// A subspace stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, pivots: vec![], rows: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: (0..ambient).collect(),
            rows: (0..ambient).map(|i| vec![(i, Q::one())]).collect(),
        }
    }

    pub fn from_vectors<'a>(ambient: usize, vecs: impl IntoIterator<Item = &'a [Q]>) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for v in vecs {
            b.insert_dense(v);
        }
        b.finish()
    }

    pub fn from_sparse<'a>(ambient: usize, vecs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for v in vecs {
            b.insert(v);
        }
        b.finish()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sparse_rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| to_dense(self.ambient, r)).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis())
    }

    /// `v` minus its component along the pivots.
    pub fn remainder(&self, v: &[Q]) -> Vector {
        let mut out = v.to_vec();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in row {
                out[*j] -= &(&c * x);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.remainder(v))
    }

    /// Coordinates of a member in the echelon basis (pivot entries).
    pub fn coordinates(&self, v: &[Q]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }
}

/// `V / R` with canonical coordinates: the non-pivot columns of `R`'s echelon
/// basis. The section sends a quotient coordinate to the matching ambient
/// basis vector.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    relations: Subspace,
    free: Vec<usize>,
    free_index: Vec<Option<usize>>,
}

impl QuotientSpace {
    pub fn new(relations: Subspace) -> Self {
        let n = relations.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &relations.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut free_index = vec![None; n];
        for (k, &j) in free.iter().enumerate() {
            free_index[j] = Some(k);
        }
        QuotientSpace { relations, free, free_index }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(Subspace::zero(n))
    }

    pub fn ambient(&self) -> usize {
        self.relations.ambient
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient index of quotient coordinate `k`.
    pub fn representative(&self, k: usize) -> usize {
        self.free[k]
    }

    pub fn project(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.ambient(), "project: dimension mismatch");
        let mut out: Vector = self.free.iter().map(|&j| v[j].clone()).collect();
        for (p, row) in self.relations.pivots.iter().zip(&self.relations.rows) {
            let c = &v[*p];
            if c.is_zero() {
                continue;
            }
            for (j, x) in row {
                if let Some(k) = self.free_index[*j] {
                    out[k] -= &(c * x);
                }
            }
        }
        out
    }

    pub fn project_sparse(&self, v: &SparseVec) -> Vector {
        let mut out = zero_vec(self.dim());
        let row_of: BTreeMap<usize, usize> =
            self.relations.pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        for (i, c) in v {
            if let Some(k) = self.free_index[*i] {
                out[k] += c;
            } else {
                let row = &self.relations.rows[row_of[i]];
                for (j, x) in row {
                    if let Some(k) = self.free_index[*j] {
                        out[k] -= &(c * x);
                    }
                }
            }
        }
        out
    }

    pub fn section(&self, q: &[Q]) -> Vector {
        assert_eq!(q.len(), self.dim());
        let mut out = zero_vec(self.ambient());
        for (k, x) in q.iter().enumerate() {
            out[self.free[k]] = x.clone();
        }
        out
    }

    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ambient();
        let cols: Vec<Vector> = (0..n).map(|i| self.project(&unit_vec(n, i))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|k| unit_vec(self.ambient(), self.free[k])).collect();
        Matrix::from_columns(self.ambient(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(2, 2).kernel().dim(), 2);
        let m = Matrix::from_rows(vec![vec![q(1), Q::i()]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        // echelon normalization puts the leading 1 first: (1, -i)... scaled from (-i, 1)
        let v = &k.basis()[0];
        assert!(is_zero_vec(&m.apply(v)));
        assert!(k.contains(&[-Q::i(), q(1)]));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1)];
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(2, 2).solve(&b), None);
        let m = Matrix::from_rows(vec![vec![q(1), q(1)]]);
        assert_eq!(m.solve(&[q(2)]), Some(vec![q(2), q(0)]));
    }

    #[test]
    fn quotient_examples() {
        let qs = QuotientSpace::new(Subspace::zero(3));
        assert!(qs.projection_matrix().is_identity());
        assert_eq!(QuotientSpace::new(Subspace::full(3)).dim(), 0);
        let rel = Subspace::from_vectors(2, [vec![q(1), q(-1)]].iter().map(|v| v.as_slice()));
        let qs = QuotientSpace::new(rel);
        assert_eq!(qs.dim(), 1);
        assert_eq!(qs.project(&[q(1), q(0)]), qs.project(&[q(0), q(1)]));
        assert!(qs.projection_matrix().mul(&qs.section_matrix()).is_identity());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![q(2), Q::i()], vec![q(1), q(3)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(sing.inverse().is_none());
    }
}
