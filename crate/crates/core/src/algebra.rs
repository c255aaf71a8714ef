//! Finite-dimensional unital algebras with an optional antilinear star.

use crate::linalg::{axpy, conj_vec, is_zero_vec, to_dense, to_sparse, unit_vec, zero_vec, Matrix, SparseVec, Subspace, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;

/// Structure constants `e_i e_j = sum_k c[i][j][k] e_k`, a unit vector and an
/// optional star given as `star(v) = M conj(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStarAlgebra {
    pub name: String,
    pub basis: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vector,
    star: Option<Matrix>,
}

impl FiniteStarAlgebra {
    /// `products[i][j]` is the coordinate vector of `e_i e_j`.
    pub fn new(name: impl Into<String>, basis: Vec<String>, products: Vec<Vec<Vector>>, unit: Vector, star: Option<Matrix>) -> Self {
        let n = basis.len();
        assert_eq!(products.len(), n);
        let mut table = Vec::with_capacity(n * n);
        for row in products {
            assert_eq!(row.len(), n);
            for v in row {
                assert_eq!(v.len(), n);
                table.push(to_sparse(&v));
            }
        }
        assert_eq!(unit.len(), n);
        FiniteStarAlgebra { name: name.into(), basis, table, unit, star }
    }

    pub fn from_fn(name: impl Into<String>, basis: Vec<String>, f: impl Fn(usize, usize) -> Vector, unit: Vector, star: Option<Matrix>) -> Self {
        let n = basis.len();
        let products = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(name, basis, products, unit, star)
    }

    /// The one-dimensional algebra of scalars.
    pub fn scalars() -> Self {
        Self::new("C", vec!["1".into()], vec![vec![vec![Q::one()]]], vec![Q::one()], Some(Matrix::identity(1)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.product(i, j).iter().find(|(m, _)| *m == k).map(|(_, x)| x.clone()).unwrap_or_else(Q::zero)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.product(i, j) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    pub fn mul3(&self, a: &[Q], b: &[Q], c: &[Q]) -> Vector {
        self.mul(&self.mul(a, b), c)
    }

    /// Matrix of `x -> a x`.
    pub fn left_mul_matrix(&self, a: &[Q]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mul_matrix(&self, a: &[Q]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis_vec(j), a)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn star_matrix(&self) -> Option<&Matrix> {
        self.star.as_ref()
    }

    pub fn with_star(mut self, star: Option<Matrix>) -> Self {
        self.star = star;
        self
    }

    /// Panics when the algebra carries no star; callers check `has_star`.
    pub fn star(&self, v: &[Q]) -> Vector {
        self.star.as_ref().expect("algebra has no star").apply(&conj_vec(v))
    }

    /// Opposite algebra on the same basis.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.product(j, i).clone());
            }
        }
        FiniteStarAlgebra {
            name: format!("{}^op", self.name),
            basis: self.basis.iter().map(|b| format!("_{b}")).collect(),
            table,
            unit: self.unit.clone(),
            star: self.star.clone(),
        }
    }

    /// `A (x) B` with componentwise product; index `i * dim B + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut basis = Vec::with_capacity(n * m);
        for a in &self.basis {
            for b in &other.basis {
                basis.push(format!("{a}*{b}"));
            }
        }
        let mut table = Vec::with_capacity(n * n * m * m);
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let mut v = SparseVec::new();
                        for (k, x) in self.product(i1, i2) {
                            for (l, y) in other.product(j1, j2) {
                                v.push((k * m + l, x * y));
                            }
                        }
                        v.sort_by_key(|(i, _)| *i);
                        table.push(v);
                    }
                }
            }
        }
        let unit = crate::linalg::kron_vec(&self.unit, &other.unit);
        let star = match (&self.star, &other.star) {
            (Some(a), Some(b)) => Some(a.kron(b)),
            _ => None,
        };
        FiniteStarAlgebra { name: format!("{}(x){}", self.name, other.name), basis, table, unit, star }
    }

    /// `A^e = A (x) A^op`.
    pub fn enveloping(&self) -> Self {
        self.tensor(&self.opposite())
    }

    /// Same algebra expressed in a new basis: `change` has the new basis
    /// vectors as columns in old coordinates.
    pub fn change_basis(&self, change: &Matrix) -> Option<Self> {
        let inv = change.inverse()?;
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| change.column(j)).collect();
        let products = (0..n)
            .map(|i| (0..n).map(|j| inv.apply(&self.mul(&cols[i], &cols[j]))).collect())
            .collect();
        let unit = inv.apply(&self.unit);
        // star'(v) = inv M conj(change v) = inv M conj(change) conj(v)
        let star = self.star.as_ref().map(|m| inv.mul(m).mul(&change.conj()));
        Some(Self::new(self.name.clone(), self.basis.clone(), products, unit, star))
    }

    pub fn products_dense(&self) -> Vec<Vec<Vector>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| to_dense(n, self.product(i, j))).collect()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Replace one structure constant, for perturbation tests.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, value: Q) -> Self {
        let mut out = self.clone();
        let n = self.dim();
        let mut v = to_dense(n, &out.table[i * n + j]);
        v[k] = value;
        out.table[i * n + j] = to_sparse(&v);
        out
    }
}

pub fn check_associative(alg: &FiniteStarAlgebra) -> Outcome {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = to_dense(n, alg.product(i, j));
            for k in 0..n {
                let lhs = alg.mul(&ij, &alg.basis_vec(k));
                let jk = to_dense(n, alg.product(j, k));
                let rhs = alg.mul(&alg.basis_vec(i), &jk);
                if lhs != rhs {
                    return Err(format!("(e{i} e{j}) e{k} = {} but e{i} (e{j} e{k}) = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
                }
            }
        }
    }
    Ok(())
}

pub fn check_unit(alg: &FiniteStarAlgebra) -> Outcome {
    for i in 0..alg.dim() {
        let e = alg.basis_vec(i);
        if alg.mul(alg.unit(), &e) != e || alg.mul(&e, alg.unit()) != e {
            return Err(format!("unit fails on e{i}"));
        }
    }
    Ok(())
}

pub fn check_star(alg: &FiniteStarAlgebra) -> Outcome {
    let n = alg.dim();
    for i in 0..n {
        let e = alg.basis_vec(i);
        let back = alg.star(&alg.star(&e));
        if back != e {
            return Err(format!("(e{i}*)* = {} is not e{i}", fmt_vec(&back)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.star(&to_dense(n, alg.product(i, j)));
            let rhs = alg.mul(&alg.star(&alg.basis_vec(j)), &alg.star(&alg.basis_vec(i)));
            if lhs != rhs {
                return Err(format!("(e{i} e{j})* = {} but e{j}* e{i}* = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
            }
        }
    }
    Ok(())
}

pub fn check_algebra(alg: &FiniteStarAlgebra) -> Report {
    let mut r = Report::new(format!("algebra {}", alg.name));
    r.dim("algebra", alg.dim());
    r.record("associativity", check_associative(alg));
    r.record("unit", check_unit(alg));
    if alg.has_star() {
        r.record("star involutive antilinear anti-homomorphism", check_star(alg));
    }
    r
}

/// Checks `f(1) = 1` and `f(ab) = f(a) f(b)` (or `f(b) f(a)` when `anti`).
pub fn check_algebra_map(f: &Matrix, src: &FiniteStarAlgebra, dst: &FiniteStarAlgebra, anti: bool) -> Outcome {
    if f.cols() != src.dim() || f.rows() != dst.dim() {
        return Err(format!("map has shape {}x{}, expected {}x{}", f.rows(), f.cols(), dst.dim(), src.dim()));
    }
    let fu = f.apply(src.unit());
    if &fu != dst.unit() {
        return Err(format!("image of unit is {}", fmt_vec(&fu)));
    }
    let n = src.dim();
    let imgs: Vec<Vector> = (0..n).map(|i| f.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(&to_dense(n, src.product(i, j)));
            let rhs = if anti { dst.mul(&imgs[j], &imgs[i]) } else { dst.mul(&imgs[i], &imgs[j]) };
            if lhs != rhs {
                return Err(format!("f(e{i} e{j}) = {} but product of images = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
            }
        }
    }
    Ok(())
}

/// Antilinear map stored as a matrix applied after conjugation.
pub fn apply_antilinear(m: &Matrix, v: &[Q]) -> Vector {
    m.apply(&conj_vec(v))
}

/// Checks that an antilinear `f(v) = M conj(v)` reverses products and fixes 1.
pub fn check_antilinear_anti_map(m: &Matrix, src: &FiniteStarAlgebra, dst: &FiniteStarAlgebra) -> Outcome {
    let fu = apply_antilinear(m, src.unit());
    if &fu != dst.unit() {
        return Err(format!("image of unit is {}", fmt_vec(&fu)));
    }
    let n = src.dim();
    let imgs: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = apply_antilinear(m, &to_dense(n, src.product(i, j)));
            let rhs = dst.mul(&imgs[j], &imgs[i]);
            if lhs != rhs {
                return Err(format!("f(e{i} e{j}) = {} but f(e{j}) f(e{i}) = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
            }
        }
    }
    Ok(())
}

/// Elementwise check that two subsets of images commute.
pub fn check_images_commute(alg: &FiniteStarAlgebra, a: &Matrix, b: &Matrix) -> Outcome {
    for i in 0..a.cols() {
        let x = a.column(i);
        for j in 0..b.cols() {
            let y = b.column(j);
            let d = crate::linalg::sub_vec(&alg.mul(&x, &y), &alg.mul(&y, &x));
            if !is_zero_vec(&d) {
                return Err(format!("images of basis {i} and {j} do not commute: commutator {}", fmt_vec(&d)));
            }
        }
    }
    Ok(())
}

/// The subalgebra carried by `space`, in its echelon coordinates, with the
/// embedding as columns. `None` unless the span holds the unit and is closed
/// under products; the star is kept when the span is star-closed.
pub fn subalgebra(alg: &FiniteStarAlgebra, name: impl Into<String>, space: &Subspace) -> Option<(FiniteStarAlgebra, Matrix)> {
    let basis = space.basis();
    let d = basis.len();
    let unit = space.coordinates(alg.unit())?;
    let mut products = Vec::with_capacity(d);
    for x in &basis {
        let mut row = Vec::with_capacity(d);
        for y in &basis {
            row.push(space.coordinates(&alg.mul(x, y))?);
        }
        products.push(row);
    }
    let star = alg.star_matrix().and_then(|_| {
        let cols: Option<Vec<Vector>> = basis.iter().map(|x| space.coordinates(&alg.star(x))).collect();
        cols.map(|c| Matrix::from_columns(d, &c))
    });
    let labels = (0..d).map(|k| format!("b{k}")).collect();
    let embed = Matrix::from_columns(alg.dim(), &basis);
    Some((FiniteStarAlgebra::new(name, labels, products, unit, star), embed))
}

/// Sum of `c_k * v_k`.
pub fn lin_comb(n: usize, terms: &[(Q, Vector)]) -> Vector {
    let mut out = zero_vec(n);
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

/// Group algebras, matrix algebras and function algebras used by examples.
pub mod examples {
    use super::*;

    /// Group algebra from a multiplication table on `0..n` with identity `e`
    /// and `g* = g^{-1}`.
    pub fn group_algebra(name: &str, labels: Vec<String>, mult: &dyn Fn(usize, usize) -> usize, e: usize) -> FiniteStarAlgebra {
        let n = labels.len();
        let inv: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| mult(g, h) == e).expect("group inverse")).collect();
        let star = Matrix::from_fn(n, n, |i, j| if inv[j] == i { Q::one() } else { Q::zero() });
        FiniteStarAlgebra::from_fn(name, labels, |i, j| unit_vec(n, mult(i, j)), unit_vec(n, e), Some(star))
    }

    pub fn cyclic_group_algebra(n: usize) -> FiniteStarAlgebra {
        let labels = (0..n).map(|k| format!("g{k}")).collect();
        group_algebra(&format!("CZ{n}"), labels, &|a, b| (a + b) % n, 0)
    }

    /// Functions on `n` points with delta basis and `f* = conj f`.
    pub fn functions(n: usize) -> FiniteStarAlgebra {
        let mut unit = zero_vec(n);
        for u in unit.iter_mut() {
            *u = Q::one();
        }
        FiniteStarAlgebra::from_fn(
            format!("C({n})"),
            (0..n).map(|k| format!("d{k}")).collect(),
            |i, j| if i == j { unit_vec(n, i) } else { zero_vec(n) },
            unit,
            Some(Matrix::identity(n)),
        )
    }

    /// `M_n` with matrix units `E_ij` at index `i * n + j`, star = conjugate transpose.
    pub fn matrix_algebra(n: usize) -> FiniteStarAlgebra {
        let d = n * n;
        let mut unit = zero_vec(d);
        for i in 0..n {
            unit[i * n + i] = Q::one();
        }
        let star = Matrix::from_fn(d, d, |r, c| {
            let (i, j) = (c / n, c % n);
            if r == j * n + i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        FiniteStarAlgebra::from_fn(
            format!("M{n}"),
            (0..n).flat_map(|i| (0..n).map(move |j| format!("E{i}{j}"))).collect(),
            |a, b| {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                if j == k {
                    unit_vec(d, i * n + l)
                } else {
                    zero_vec(d)
                }
            },
            unit,
            Some(star),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn group_algebra_z2_passes() {
        assert!(check_algebra(&cyclic_group_algebra(2)).all_pass());
        assert!(check_algebra(&FiniteStarAlgebra::scalars()).all_pass());
    }

    #[test]
    fn perturbation_detected() {
        // first structure constant (1-based c[1][1][1]) doubled: e.e = 2e
        let a = cyclic_group_algebra(2).perturbed(0, 0, 0, Q::from_int(2));
        let r = check_algebra(&a);
        assert!(!r.is_pass("associativity"));
        // g.g = e + g is still associative: a genuine algebra, not a mutation
        let b = cyclic_group_algebra(2).perturbed(1, 1, 1, Q::one());
        assert!(check_associative(&b).is_ok());
    }

    #[test]
    fn opposite_and_enveloping() {
        let z3 = cyclic_group_algebra(3);
        assert_eq!(z3.opposite().products_dense(), z3.products_dense());
        let c = FiniteStarAlgebra::scalars().enveloping();
        assert_eq!(c.dim(), 1);
        let m2e = matrix_algebra(2).enveloping();
        assert_eq!(m2e.dim(), 16);
        assert!(check_algebra(&m2e).all_pass());
        assert!(check_algebra(&matrix_algebra(2)).all_pass());
        assert!(check_algebra(&functions(3)).all_pass());
    }
}
