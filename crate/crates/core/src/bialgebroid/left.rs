//! Left bialgebroids: `s` an algebra map, `t` an anti-algebra map, a coring
//! structure over the base for `a.X.b = s(a) t(b) X`.

use std::sync::OnceLock;

use super::{junction, Mul};
use crate::algebra::{check_algebra_map, check_associative, check_images_commute, check_unit, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, kron_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, flip, tensor_mul, terms2, BalancedTensor, TensorChain};

#[derive(Clone, Debug)]
pub struct LeftBialgebroid {
    pub name: String,
    pub total: FiniteStarAlgebra,
    pub base: FiniteStarAlgebra,
    /// Columns are `s(b_k)`.
    pub s: Matrix,
    /// Columns are `t(b_k)`.
    pub t: Matrix,
    /// `Delta(e_i)` in the ambient `L (x) L`; projected internally.
    pub delta: Vec<Vector>,
    /// Columns are `eps(e_i)` in the base.
    pub eps: Matrix,
    cache: OnceLock<Cache>,
    triple: OnceLock<TensorChain>,
}

#[derive(Clone, Debug)]
struct Cache {
    tensor: BalancedTensor,
    delta_q: Vec<Vector>,
    lifts: Vec<Vector>,
}

impl LeftBialgebroid {
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
        let shape = |m: &Matrix, r: usize, c: usize, what: &str| -> Result<()> {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!("{what} is {}x{}, expected {r}x{c}", m.rows(), m.cols())));
            }
            Ok(())
        };
        shape(&s, n, b, "source map")?;
        shape(&t, n, b, "target map")?;
        shape(&eps, b, n, "counit")?;
        if delta.len() != n || delta.iter().any(|v| v.len() != n * n) {
            return Err(Error::Dimension(format!("coproduct must list {n} vectors of length {}", n * n)));
        }
        Ok(LeftBialgebroid {
            name: name.into(),
            total,
            base,
            s,
            t,
            delta,
            eps,
            cache: OnceLock::new(),
            triple: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn s_of(&self, b: &[Q]) -> Vector {
        self.s.apply(b)
    }

    pub fn t_of(&self, b: &[Q]) -> Vector {
        self.t.apply(b)
    }

    pub fn eps_of(&self, x: &[Q]) -> Vector {
        self.eps.apply(x)
    }

    fn cache(&self) -> &Cache {
        self.cache.get_or_init(|| {
            let j = junction(&self.total, &self.t, Mul::Left, &self.s, Mul::Left);
            let n = self.dim();
            let tensor = BalancedTensor::new(n, n, &j);
            let delta_q: Vec<Vector> = self.delta.iter().map(|v| tensor.project(v)).collect();
            let lifts = delta_q.iter().map(|q| tensor.section(q)).collect();
            Cache { tensor, delta_q, lifts }
        })
    }

    /// `L (x)_B L` for the balancing `t(b) X (x) Y = X (x) s(b) Y`.
    pub fn tensor(&self) -> &BalancedTensor {
        &self.cache().tensor
    }

    /// `L (x)_B L (x)_B L`.
    pub fn triple(&self) -> &TensorChain {
        self.triple.get_or_init(|| {
            let j = junction(&self.total, &self.t, Mul::Left, &self.s, Mul::Left);
            let n = self.dim();
            TensorChain::new(&[n, n, n], &[j.clone(), j])
        })
    }

    /// `L (x)_{B^op} L`: `X t(a) (x) Y = X (x) t(a) Y`, domain of lambda.
    pub fn lambda_domain(&self) -> BalancedTensor {
        let j = junction(&self.total, &self.t, Mul::Right, &self.t, Mul::Left);
        BalancedTensor::new(self.dim(), self.dim(), &j)
    }

    /// `L (x)^B L`: `s(a) X (x) Y = X (x) Y s(a)`, domain of mu.
    pub fn mu_domain(&self) -> BalancedTensor {
        let j = junction(&self.total, &self.s, Mul::Left, &self.s, Mul::Right);
        BalancedTensor::new(self.dim(), self.dim(), &j)
    }

    /// Coproduct in quotient coordinates.
    pub fn delta_q(&self, x: &[Q]) -> Vector {
        let c = self.cache();
        let mut out = zero_vec(c.tensor.dim());
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                crate::linalg::axpy(&mut out, xi, &c.delta_q[i]);
            }
        }
        out
    }

    /// Canonical ambient lift of `Delta(x)`.
    pub fn delta_lift(&self, x: &[Q]) -> Vector {
        let c = self.cache();
        let n = self.dim();
        let mut out = zero_vec(n * n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                crate::linalg::axpy(&mut out, xi, &c.lifts[i]);
            }
        }
        out
    }

    pub fn delta_lift_basis(&self, i: usize) -> &Vector {
        &self.cache().lifts[i]
    }

    /// Takeuchi subspace of `L (x)_B L`, in quotient coordinates.
    pub fn takeuchi(&self) -> Subspace {
        let bt = self.tensor();
        let d = bt.dim();
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for a in 0..self.base_dim() {
            let rt = self.total.right_mul_matrix(&self.t.column(a));
            let rs = self.total.right_mul_matrix(&self.s.column(a));
            let op = bt.induced(&rt, &Matrix::identity(n)).sub(&bt.induced(&Matrix::identity(n), &rs));
            rows.extend(op.row_vecs());
        }
        if rows.is_empty() {
            return Subspace::full(d);
        }
        Matrix::from_rows(rows).kernel()
    }

    /// Defect `X t(a) (x) Y - X (x) Y s(a)` of an ambient tensor, projected.
    pub fn takeuchi_defect(&self, v: &[Q], a: usize) -> Vector {
        let n = self.dim();
        let ta = self.t.column(a);
        let sa = self.s.column(a);
        let mut w = zero_vec(n * n);
        for (p, q, c) in terms2(v, n) {
            let ep = unit_vec(n, p);
            let eq = unit_vec(n, q);
            add_kron(&mut w, c, &self.total.mul(&ep, &ta), &eq);
            add_kron(&mut w, &-c, &ep, &self.total.mul(&eq, &sa));
        }
        self.tensor().project(&w)
    }

    /// The co-opposite left bialgebroid over the opposite base.
    pub fn cop(&self) -> LeftBialgebroid {
        let n = self.dim();
        let delta = self.cache().lifts.iter().map(|v| flip(v, n, n)).collect();
        LeftBialgebroid::new(
            format!("{}^cop", self.name),
            self.total.clone(),
            self.base.opposite(),
            self.t.clone(),
            self.s.clone(),
            delta,
            self.eps.clone(),
        )
        .expect("cop keeps shapes")
    }

    /// Apply the coproduct to the left factor of an ambient two-tensor.
    pub fn delta_on_left(&self, v: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n * n * n);
        for (p, q, c) in terms2(v, n) {
            add_kron(&mut out, c, self.delta_lift_basis(p), &unit_vec(n, q));
        }
        out
    }

    /// Apply the coproduct to the right factor of an ambient two-tensor.
    pub fn delta_on_right(&self, v: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n * n * n);
        for (p, q, c) in terms2(v, n) {
            add_kron(&mut out, c, &unit_vec(n, p), self.delta_lift_basis(q));
        }
        out
    }

    /// `X (x) Y -> s(eps X) Y`.
    pub fn eps_left(&self, v: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (p, q, c) in terms2(v, n) {
            let se = self.s_of(&self.eps.column(p));
            crate::linalg::axpy(&mut out, c, &self.total.mul(&se, &unit_vec(n, q)));
        }
        out
    }

    /// `X (x) Y -> t(eps Y) X`.
    pub fn eps_right(&self, v: &[Q]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (p, q, c) in terms2(v, n) {
            let te = self.t_of(&self.eps.column(q));
            crate::linalg::axpy(&mut out, c, &self.total.mul(&te, &unit_vec(n, p)));
        }
        out
    }

    /// Same structure with one counit entry replaced (mutation testing).
    pub fn with_eps_entry(&self, row: usize, col: usize, x: Q) -> Self {
        let mut eps = self.eps.clone();
        eps.set(row, col, x);
        Self::new(self.name.clone(), self.total.clone(), self.base.clone(), self.s.clone(), self.t.clone(), self.delta.clone(), eps)
            .expect("shape kept")
    }
}

fn each_basis(n: usize, mut f: impl FnMut(usize) -> Outcome) -> Outcome {
    for i in 0..n {
        f(i)?;
    }
    Ok(())
}

fn cmp(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: lhs {} vs rhs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

/// Every axiom of a left bialgebroid on full bases, in quotient coordinates.
pub fn check_left_bialgebroid(d: &LeftBialgebroid) -> Report {
    let mut r = Report::new(format!("left bialgebroid {}", d.name));
    let (n, b) = (d.dim(), d.base_dim());
    let alg = &d.total;
    r.dim("total", n);
    r.dim("base", b);
    r.record("total algebra", check_associative(alg).and_then(|_| check_unit(alg)));
    r.record("base algebra", check_associative(&d.base).and_then(|_| check_unit(&d.base)));
    r.record("source is an algebra map", check_algebra_map(&d.s, &d.base, alg, false));
    r.record("target is an anti-algebra map", check_algebra_map(&d.t, &d.base, alg, true));
    r.record("source and target images commute", check_images_commute(alg, &d.s, &d.t));
    let bt = d.tensor();
    r.dim("tensor", bt.dim());
    if let Err(e) = check_images_commute(alg, &d.s, &d.t) {
        r.note(format!("bimodule structure ill-defined, later checks may be meaningless: {e}"));
    }

    r.record(
        "coproduct lands in Takeuchi product",
        each_basis(n, |i| {
            for a in 0..b {
                let w = d.takeuchi_defect(d.delta_lift_basis(i), a);
                if !is_zero_vec(&w) {
                    return Err(format!("Delta(e{i}) fails the Takeuchi condition for base element {a}: defect {}", fmt_vec(&w)));
                }
            }
            Ok(())
        }),
    );

    r.record(
        "coproduct is a bimodule map",
        each_basis(n, |i| {
            let ei = unit_vec(n, i);
            for a in 0..b {
                let sa = d.s.column(a);
                let ta = d.t.column(a);
                let lhs = d.delta_q(&alg.mul(&sa, &ei));
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(d.delta_lift_basis(i), n) {
                    add_kron(&mut w, c, &alg.mul(&sa, &unit_vec(n, p)), &unit_vec(n, q));
                }
                cmp(&format!("Delta(s(b{a}) e{i})"), &lhs, &bt.project(&w))?;
                let lhs = d.delta_q(&alg.mul(&ta, &ei));
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(d.delta_lift_basis(i), n) {
                    add_kron(&mut w, c, &unit_vec(n, p), &alg.mul(&ta, &unit_vec(n, q)));
                }
                cmp(&format!("Delta(t(b{a}) e{i})"), &lhs, &bt.project(&w))?;
            }
            Ok(())
        }),
    );

    r.record(
        "counit is a bimodule map",
        each_basis(n, |i| {
            let ei = unit_vec(n, i);
            let e = d.eps.column(i);
            for a in 0..b {
                let ba = unit_vec(b, a);
                let lhs = d.eps_of(&alg.mul(&d.s.column(a), &ei));
                cmp(&format!("eps(s(b{a}) e{i})"), &lhs, &d.base.mul(&ba, &e))?;
                let lhs = d.eps_of(&alg.mul(&d.t.column(a), &ei));
                cmp(&format!("eps(t(b{a}) e{i})"), &lhs, &d.base.mul(&e, &ba))?;
            }
            Ok(())
        }),
    );

    let tri = d.triple();
    r.dim("triple tensor", tri.dim());
    r.record(
        "coassociativity",
        each_basis(n, |i| {
            let v = d.delta_lift_basis(i);
            let lhs = tri.project(&d.delta_on_left(v));
            let rhs = tri.project(&d.delta_on_right(v));
            cmp(&format!("coassociativity on e{i}"), &lhs, &rhs)
        }),
    );
    r.record(
        "counit law (eps (x) id) Delta = id",
        each_basis(n, |i| cmp(&format!("on e{i}"), &d.eps_left(d.delta_lift_basis(i)), &unit_vec(n, i))),
    );
    r.record(
        "counit law (id (x) eps) Delta = id",
        each_basis(n, |i| cmp(&format!("on e{i}"), &d.eps_right(d.delta_lift_basis(i)), &unit_vec(n, i))),
    );
    r.record(
        "coproduct unital",
        cmp("Delta(1)", &d.delta_q(alg.unit()), &bt.project(&kron_vec(alg.unit(), alg.unit()))),
    );
    r.record(
        "coproduct multiplicative on Takeuchi product",
        each_basis(n, |i| {
            for j in 0..n {
                let prod = alg.mul(&unit_vec(n, i), &unit_vec(n, j));
                let lhs = d.delta_q(&prod);
                let rhs = bt.project(&tensor_mul(alg, d.delta_lift_basis(i), d.delta_lift_basis(j)));
                cmp(&format!("Delta(e{i} e{j})"), &lhs, &rhs)?;
            }
            Ok(())
        }),
    );
    r.record("counit unital", cmp("eps(1)", &d.eps_of(alg.unit()), d.base.unit()));
    let counit_law = |via: &Matrix| {
        each_basis(n, |i| {
            for j in 0..n {
                let ei = unit_vec(n, i);
                let ej = unit_vec(n, j);
                let lhs = d.eps_of(&alg.mul(&ei, &ej));
                let rhs = d.eps_of(&alg.mul(&ei, &via.apply(&d.eps.column(j))));
                cmp(&format!("eps(e{i} e{j})"), &lhs, &rhs)?;
            }
            Ok(())
        })
    };
    r.record("counit law eps(XY) = eps(X s(eps Y))", counit_law(&d.s));
    r.record("counit law eps(XY) = eps(X t(eps Y))", counit_law(&d.t));
    r.record(
        "coproduct of source and target images",
        each_basis(b, |a| {
            let sa = d.s.column(a);
            let ta = d.t.column(a);
            cmp(&format!("Delta(s(b{a}))"), &d.delta_q(&sa), &bt.project(&kron_vec(&sa, alg.unit())))?;
            cmp(&format!("Delta(t(b{a}))"), &d.delta_q(&ta), &bt.project(&kron_vec(alg.unit(), &ta)))
        }),
    );
    r
}
