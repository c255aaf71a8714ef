//! Right bialgebroids, for the bimodule structure `a.X.b = X t(a) s(b)`.
//!
//! The opposite algebra of a right bialgebroid is a left bialgebroid with
//! source and target exchanged, and the axioms correspond one to one; the
//! checker runs the left verifier on that transform. Galois maps are built
//! directly from the right-handed formulas.

use std::sync::OnceLock;

use super::{check_left_bialgebroid, junction, LeftBialgebroid, Mul};
use crate::algebra::FiniteStarAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Q;
use crate::tensor::{flip, BalancedTensor, TensorChain};

#[derive(Clone, Debug)]
pub struct RightBialgebroid {
    pub name: String,
    pub total: FiniteStarAlgebra,
    pub base: FiniteStarAlgebra,
    pub s: Matrix,
    pub t: Matrix,
    /// `Delta_R(e_i)` in the ambient `R (x) R`.
    pub delta: Vec<Vector>,
    pub eps: Matrix,
    cache: OnceLock<(BalancedTensor, Vec<Vector>, Vec<Vector>)>,
}

impl RightBialgebroid {
    pub fn new(
        name: impl Into<String>,
        total: FiniteStarAlgebra,
        base: FiniteStarAlgebra,
        s: Matrix,
        t: Matrix,
        delta: Vec<Vector>,
        eps: Matrix,
    ) -> Result<Self> {
        let (n, b) = (total.dim(), base.dim());
        for (m, r, c, what) in [(&s, n, b, "source map"), (&t, n, b, "target map"), (&eps, b, n, "counit")] {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!("{what} is {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
        }
        if delta.len() != n || delta.iter().any(|v| v.len() != n * n) {
            return Err(Error::Dimension(format!("coproduct must list {n} vectors of length {}", n * n)));
        }
        Ok(RightBialgebroid { name: name.into(), total, base, s, t, delta, eps, cache: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn s_of(&self, a: &[Q]) -> Vector {
        self.s.apply(a)
    }

    pub fn t_of(&self, a: &[Q]) -> Vector {
        self.t.apply(a)
    }

    pub fn eps_of(&self, x: &[Q]) -> Vector {
        self.eps.apply(x)
    }

    /// Junction of `X s(a) (x) Y = X (x) Y t(a)`.
    pub fn junction(&self) -> crate::tensor::Junction {
        junction(&self.total, &self.s, Mul::Right, &self.t, Mul::Right)
    }

    fn cache(&self) -> &(BalancedTensor, Vec<Vector>, Vec<Vector>) {
        self.cache.get_or_init(|| {
            let n = self.dim();
            let bt = BalancedTensor::new(n, n, &self.junction());
            let q: Vec<Vector> = self.delta.iter().map(|v| bt.project(v)).collect();
            let lifts = q.iter().map(|v| bt.section(v)).collect();
            (bt, q, lifts)
        })
    }

    /// `R (x)_A R`.
    pub fn tensor(&self) -> &BalancedTensor {
        &self.cache().0
    }

    pub fn triple(&self) -> TensorChain {
        let n = self.dim();
        TensorChain::new(&[n, n, n], &[self.junction(), self.junction()])
    }

    /// `R (x)_{A^op} R`: `X t(a) (x) Y = X (x) t(a) Y`.
    pub fn lambda_domain(&self) -> BalancedTensor {
        let j = junction(&self.total, &self.t, Mul::Right, &self.t, Mul::Left);
        BalancedTensor::new(self.dim(), self.dim(), &j)
    }

    /// `R (x)^A R`: `s(a) X (x) Y = X (x) Y s(a)`.
    pub fn mu_domain(&self) -> BalancedTensor {
        let j = junction(&self.total, &self.s, Mul::Left, &self.s, Mul::Right);
        BalancedTensor::new(self.dim(), self.dim(), &j)
    }

    pub fn delta_q(&self, x: &[Q]) -> Vector {
        let (bt, q, _) = self.cache();
        let mut out = zero_vec(bt.dim());
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                axpy(&mut out, xi, &q[i]);
            }
        }
        out
    }

    pub fn delta_lift(&self, x: &[Q]) -> Vector {
        let (_, _, lifts) = self.cache();
        let n = self.dim();
        let mut out = zero_vec(n * n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                axpy(&mut out, xi, &lifts[i]);
            }
        }
        out
    }

    pub fn delta_lift_basis(&self, i: usize) -> &Vector {
        &self.cache().2[i]
    }

    /// Defect `s(a) X (x) Y - X (x) t(a) Y` of an ambient tensor, projected.
    pub fn takeuchi_defect(&self, v: &[Q], a: usize) -> Vector {
        let n = self.dim();
        let sa = self.s.column(a);
        let ta = self.t.column(a);
        let mut w = zero_vec(n * n);
        for (p, q, c) in crate::tensor::terms2(v, n) {
            let ep = crate::linalg::unit_vec(n, p);
            let eq = crate::linalg::unit_vec(n, q);
            crate::tensor::add_kron(&mut w, c, &self.total.mul(&sa, &ep), &eq);
            crate::tensor::add_kron(&mut w, &-c, &ep, &self.total.mul(&ta, &eq));
        }
        self.tensor().project(&w)
    }

    /// The opposite algebra as a left bialgebroid over the same base.
    pub fn as_left_of_opposite(&self) -> LeftBialgebroid {
        LeftBialgebroid::new(
            format!("{}^op", self.name),
            self.total.opposite(),
            self.base.clone(),
            self.t.clone(),
            self.s.clone(),
            self.delta.clone(),
            self.eps.clone(),
        )
        .expect("shapes already validated")
    }

    /// The co-opposite right bialgebroid over the opposite base.
    pub fn cop(&self) -> RightBialgebroid {
        let n = self.dim();
        let delta = (0..n).map(|i| flip(self.delta_lift_basis(i), n, n)).collect();
        RightBialgebroid::new(
            format!("{}^cop", self.name),
            self.total.clone(),
            self.base.opposite(),
            self.t.clone(),
            self.s.clone(),
            delta,
            self.eps.clone(),
        )
        .expect("shapes kept")
    }

    /// Swap source and target (mutation testing).
    pub fn with_source_target_swapped(&self) -> RightBialgebroid {
        RightBialgebroid::new(
            format!("{} (s,t swapped)", self.name),
            self.total.clone(),
            self.base.clone(),
            self.t.clone(),
            self.s.clone(),
            self.delta.clone(),
            self.eps.clone(),
        )
        .expect("shapes kept")
    }
}

impl LeftBialgebroid {
    /// The opposite algebra as a right bialgebroid over the same base.
    pub fn op(&self) -> RightBialgebroid {
        RightBialgebroid::new(
            format!("{}^op", self.name),
            self.total.opposite(),
            self.base.clone(),
            self.t.clone(),
            self.s.clone(),
            self.delta.clone(),
            self.eps.clone(),
        )
        .expect("shapes already validated")
    }

    /// `(L^cop)^op`, a right bialgebroid over the opposite base.
    pub fn bop(&self) -> RightBialgebroid {
        let mut r = self.cop().op();
        r.name = format!("{}^bop", self.name);
        r
    }
}

pub fn check_right_bialgebroid(d: &RightBialgebroid) -> Report {
    let left = d.as_left_of_opposite();
    let inner = check_left_bialgebroid(&left);
    let mut r = Report::new(format!("right bialgebroid {}", d.name));
    r.note("checked as the left bialgebroid of the opposite algebra (source and target exchanged)");
    r.dims = inner.dims;
    r.checks = inner.checks;
    r
}
