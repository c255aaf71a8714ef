//! Hopf star algebras, crossed modules and the algebroids built from them.

pub mod action;
pub mod crossed;
pub mod es;
pub mod galois;

pub use action::{build_action_algebroid, ActionAlgebroid};
pub use crossed::{check_crossed_module, CrossedModuleAlgebra};
pub use es::{build_es_algebroid, check_es_algebroid, EsAlgebroid};
pub use galois::{check_hopf_galois, HopfGaloisExtension};

use crate::algebra::{check_algebra, examples, FiniteStarAlgebra};
use crate::bialgebroid::{FullHopfAlgebroid, LeftBialgebroid};
use crate::error::{Error, Result};
use crate::linalg::{conj_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{apply2, tensor_mul, terms2};

#[derive(Clone, Debug)]
pub struct HopfStarAlgebra {
    pub alg: FiniteStarAlgebra,
    /// Column `i` is `Delta(e_i)` in `H (x) H`.
    pub delta: Matrix,
    /// `1 x n`.
    pub eps: Matrix,
    pub antipode: Matrix,
    pub antipode_inv: Matrix,
}

pub(crate) fn cmp(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: lhs {} vs rhs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

pub(crate) fn each(n: usize, f: impl FnMut(usize) -> Outcome) -> Outcome {
    (0..n).try_for_each(f)
}

/// Nonzero entries `(p, q, r, c)` of a vector in `U (x) V (x) W`.
pub(crate) fn terms3(v: &[Q], m: usize, k: usize) -> impl Iterator<Item = (usize, usize, usize, &Q)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(move |(i, c)| (i / (m * k), (i / k) % m, i % k, c))
}

impl HopfStarAlgebra {
    pub fn new(alg: FiniteStarAlgebra, delta: Matrix, eps: Matrix, antipode: Matrix, antipode_inv: Matrix) -> Result<Self> {
        let n = alg.dim();
        let shapes = [
            (&delta, n * n, n, "coproduct"),
            (&eps, 1, n, "counit"),
            (&antipode, n, n, "antipode"),
            (&antipode_inv, n, n, "inverse antipode"),
        ];
        for (m, r, c, what) in shapes {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!("{what} is {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
        }
        Ok(HopfStarAlgebra { alg, delta, eps, antipode, antipode_inv })
    }

    /// Group algebra with group-like basis and `g* = g^-1`.
    pub fn group(name: &str, labels: Vec<String>, mult: &dyn Fn(usize, usize) -> usize, e: usize) -> Self {
        let n = labels.len();
        let inv: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| mult(g, h) == e).expect("group inverse")).collect();
        let alg = examples::group_algebra(name, labels, mult, e);
        let delta = Matrix::from_fn(n * n, n, |r, c| if r == c * n + c { Q::one() } else { Q::zero() });
        let eps = Matrix::from_fn(1, n, |_, _| Q::one());
        let s = Matrix::from_fn(n, n, |r, c| if r == inv[c] { Q::one() } else { Q::zero() });
        HopfStarAlgebra::new(alg, delta, eps, s.clone(), s).expect("group shapes")
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| format!("g{k}")).collect();
        Self::group(&format!("CZ{n}"), labels, &|a, b| (a + b) % n, 0)
    }

    /// The symmetric group on three letters, identity first.
    pub fn symmetric3() -> Self {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let labels = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect();
        let mult = |a: usize, b: usize| {
            let (p, q) = (PERMS[a], PERMS[b]);
            let c = [p[q[0]], p[q[1]], p[q[2]]];
            PERMS.iter().position(|x| *x == c).expect("closed")
        };
        Self::group("CS3", labels, &mult, 0)
    }

    /// The dual Hopf algebra on the dual basis, with star fixed by
    /// `<a, h*> = conj <S^-1(a*), h>`.
    pub fn dual(&self) -> Self {
        let n = self.dim();
        let labels = self.alg.basis.iter().map(|b| format!("{b}'")).collect();
        let products = (0..n).map(|i| (0..n).map(|j| self.delta.row(i * n + j).to_vec()).collect()).collect();
        let unit = self.eps.row(0).to_vec();
        // <f_i*, e_j> = conj <f_i, S^-1(e_j*)>
        let sm = self.antipode_inv.mul(self.alg.star_matrix().expect("dual needs a star"));
        let star = Matrix::from_fn(n, n, |j, i| sm.get(i, j).conj());
        let alg = FiniteStarAlgebra::new(format!("{}*", self.alg.name), labels, products, unit, Some(star));
        let delta = Matrix::from_fn(n * n, n, |r, k| self.alg.structure_constant(r / n, r % n, k));
        let eps = Matrix::from_rows(vec![self.alg.unit().clone()]);
        HopfStarAlgebra::new(alg, delta, eps, self.antipode.transpose(), self.antipode_inv.transpose()).expect("dual shapes")
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn name(&self) -> &str {
        &self.alg.name
    }

    pub fn unit(&self) -> &Vector {
        self.alg.unit()
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vector {
        self.alg.mul(a, b)
    }

    pub fn coproduct(&self, h: &[Q]) -> Vector {
        self.delta.apply(h)
    }

    /// `h1 (x) h2 (x) h3`.
    pub fn coproduct2(&self, h: &[Q]) -> Vector {
        apply2(&self.delta, &Matrix::identity(self.dim()), &self.coproduct(h))
    }

    pub fn counit(&self, h: &[Q]) -> Q {
        self.eps.apply(h)[0].clone()
    }

    pub fn s(&self, h: &[Q]) -> Vector {
        self.antipode.apply(h)
    }

    pub fn s_inv(&self, h: &[Q]) -> Vector {
        self.antipode_inv.apply(h)
    }

    pub fn star(&self, h: &[Q]) -> Vector {
        self.alg.star(h)
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn is_commutative(&self) -> bool {
        self.alg.is_commutative()
    }

    /// `H` as a left bialgebroid over the scalars.
    pub fn as_left_bialgebroid(&self) -> LeftBialgebroid {
        let n = self.dim();
        let unit = Matrix::from_columns(n, &[self.unit().clone()]);
        let delta = (0..n).map(|i| self.delta.column(i)).collect();
        LeftBialgebroid::new(self.name(), self.alg.clone(), FiniteStarAlgebra::scalars(), unit.clone(), unit, delta, self.eps.clone())
            .expect("bialgebra shapes")
    }

    pub fn as_full(&self) -> FullHopfAlgebroid {
        FullHopfAlgebroid::new(
            self.as_left_bialgebroid(),
            self.antipode.clone(),
            self.antipode_inv.clone(),
            self.alg.star_matrix().cloned(),
        )
    }

    /// Replace one coproduct entry (mutation testing).
    pub fn with_delta_entry(&self, row: usize, col: usize, x: Q) -> Self {
        let mut h = self.clone();
        h.delta.set(row, col, x);
        h
    }
}

pub fn check_hopf_star(h: &HopfStarAlgebra) -> Report {
    let mut r = Report::new(format!("Hopf star algebra {}", h.name()));
    let n = h.dim();
    let id = Matrix::identity(n);
    r.absorb("algebra", check_algebra(&h.alg));
    r.dim("dim", n);
    r.record(
        "coassociativity",
        each(n, |i| {
            let d = h.delta.column(i);
            cmp(&format!("on e{i}"), &apply2(&h.delta, &id, &d), &apply2(&id, &h.delta, &d))
        }),
    );
    r.record(
        "counit",
        each(n, |i| {
            let d = h.delta.column(i);
            let e = unit_vec(n, i);
            cmp(&format!("left on e{i}"), &apply2(&h.eps, &id, &d), &e)?;
            cmp(&format!("right on e{i}"), &apply2(&id, &h.eps, &d), &e)
        }),
    );
    r.record(
        "Delta multiplicative",
        each(n * n, |k| {
            let (i, j) = (k / n, k % n);
            let lhs = h.coproduct(&h.mul(&unit_vec(n, i), &unit_vec(n, j)));
            let rhs = tensor_mul(&h.alg, &h.delta.column(i), &h.delta.column(j));
            cmp(&format!("on e{i} e{j}"), &lhs, &rhs)
        }),
    );
    r.record("Delta unital", cmp("unit", &h.coproduct(h.unit()), &crate::linalg::kron_vec(h.unit(), h.unit())));
    r.record(
        "eps multiplicative",
        each(n * n, |k| {
            let (i, j) = (k / n, k % n);
            let lhs = h.counit(&h.mul(&unit_vec(n, i), &unit_vec(n, j)));
            let rhs = &h.counit(&unit_vec(n, i)) * &h.counit(&unit_vec(n, j));
            cmp(&format!("on e{i} e{j}"), &[lhs], &[rhs])
        }),
    );
    r.record("eps unital", cmp("unit", &[h.counit(h.unit())], &[Q::one()]));
    r.record(
        "antipode S(h1) h2 = eps(h) 1 = h1 S(h2)",
        each(n, |i| {
            let mut left = zero_vec(n);
            let mut right = zero_vec(n);
            for (p, q, c) in terms2(&h.delta.column(i), n) {
                crate::linalg::axpy(&mut left, c, &h.mul(&h.antipode.column(p), &unit_vec(n, q)));
                crate::linalg::axpy(&mut right, c, &h.mul(&unit_vec(n, p), &h.antipode.column(q)));
            }
            let target = crate::linalg::scale_vec(&h.counit(&unit_vec(n, i)), h.unit());
            cmp(&format!("left on e{i}"), &left, &target)?;
            cmp(&format!("right on e{i}"), &right, &target)
        }),
    );
    let inv = h.antipode.mul(&h.antipode_inv).is_identity() && h.antipode_inv.mul(&h.antipode).is_identity();
    r.flag("antipode bijective", inv, "supplied inverse does not invert the antipode");
    match h.alg.star_matrix() {
        None => r.fail("star present", "no star on the algebra"),
        Some(m) => {
            r.record(
                "Delta(h*) = (* (x) *) Delta(h)",
                each(n, |i| {
                    let lhs = h.coproduct(&m.column(i));
                    let rhs = apply2(m, m, &conj_vec(&h.delta.column(i)));
                    cmp(&format!("on e{i}"), &lhs, &rhs)
                }),
            );
            r.record(
                "eps(h*) = conj eps(h)",
                each(n, |i| cmp(&format!("on e{i}"), &[h.counit(&m.column(i))], &[h.counit(&unit_vec(n, i)).conj()])),
            );
            let sm = h.antipode.mul(m);
            r.flag("S * S * = id", sm.mul(&sm.conj()).is_identity(), "S*S* differs from the identity");
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_hopf_algebras_pass() {
        for h in [HopfStarAlgebra::cyclic(2), HopfStarAlgebra::cyclic(4), HopfStarAlgebra::symmetric3()] {
            let r = check_hopf_star(&h);
            assert!(r.all_pass(), "{r}");
        }
        let s3 = HopfStarAlgebra::symmetric3();
        assert!(!s3.is_commutative());
        assert!(s3.antipode.mul(&s3.antipode).is_identity());
    }

    #[test]
    fn z4_star_is_inverse() {
        let h = HopfStarAlgebra::cyclic(4);
        assert_eq!(h.star(&h.basis_vec(1)), h.basis_vec(3));
    }

    #[test]
    fn duals_pass() {
        for h in [HopfStarAlgebra::cyclic(3), HopfStarAlgebra::symmetric3()] {
            let d = h.dual();
            let r = check_hopf_star(&d);
            assert!(r.all_pass(), "{r}");
            // delta functions are self-adjoint idempotents
            assert_eq!(d.star(&d.basis_vec(1)), d.basis_vec(1));
        }
    }

    #[test]
    fn corrupted_coproduct_fails() {
        let h = HopfStarAlgebra::cyclic(2).with_delta_entry(3, 1, Q::zero());
        let r = check_hopf_star(&h);
        assert!(!r.passed());
        assert!(!r.is_pass("counit"));
    }
}
