//! Bimodules over finite star algebras: balanced tensor products, duals
//! with evaluation and coevaluation, the star transport between left and
//! right duals, conjugate bimodules and pivotal structure.
//!
//! Actions are stored per basis element of the acting algebra. Elements of
//! a conjugate bimodule `overline(V)` share the carrier of `V`, and
//! `overline(v)` has coordinates `conj(v)`.

use crate::algebra::FiniteStarAlgebra;
use crate::bialgebroid::modules::lin_ops;
use crate::error::{Error, Result};
use crate::linalg::{conj_vec, is_zero_vec, to_dense, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, terms2, BalancedTensor, Junction};

pub(crate) fn same(label: &str, lhs: &Matrix, rhs: &Matrix) -> Outcome {
    if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
        return Err(format!("{label}: shapes {}x{} vs {}x{}", lhs.rows(), lhs.cols(), rhs.rows(), rhs.cols()));
    }
    for j in 0..lhs.cols() {
        let (x, y) = (lhs.column(j), rhs.column(j));
        if x != y {
            return Err(format!("{label}, column {j}: {} vs {}", fmt_vec(&x), fmt_vec(&y)));
        }
    }
    Ok(())
}

pub(crate) fn same_vec(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: {} vs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

fn first_err(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes.into_iter().collect()
}

/// An `A`-`B` bimodule with one operator per basis element on each side.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub name: String,
    pub left: FiniteStarAlgebra,
    pub right: FiniteStarAlgebra,
    pub dim: usize,
    /// `m -> a_k . m`.
    pub left_ops: Vec<Matrix>,
    /// `m -> m . b_k`.
    pub right_ops: Vec<Matrix>,
    /// Antilinear star `m -> S conj(m)`, if the bimodule is a star bimodule.
    pub star: Option<Matrix>,
}

impl Bimodule {
    pub fn regular(alg: &FiniteStarAlgebra) -> Self {
        let n = alg.dim();
        Bimodule {
            name: alg.name.clone(),
            left: alg.clone(),
            right: alg.clone(),
            dim: n,
            left_ops: (0..n).map(|k| alg.left_mul_matrix(&alg.basis_vec(k))).collect(),
            right_ops: (0..n).map(|k| alg.right_mul_matrix(&alg.basis_vec(k))).collect(),
            star: alg.star_matrix().cloned(),
        }
    }

    pub fn zero(alg: &FiniteStarAlgebra) -> Self {
        let n = alg.dim();
        Bimodule {
            name: "0".into(),
            left: alg.clone(),
            right: alg.clone(),
            dim: 0,
            left_ops: vec![Matrix::zeros(0, 0); n],
            right_ops: vec![Matrix::zeros(0, 0); n],
            star: Some(Matrix::zeros(0, 0)),
        }
    }

    pub fn act_left(&self, a: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.left_ops, a)
    }

    pub fn act_right(&self, b: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.right_ops, b)
    }

    pub fn apply_star(&self, v: &[Q]) -> Option<Vector> {
        self.star.as_ref().map(|s| s.apply(&conj_vec(v)))
    }

    /// `a v' a'` on the conjugate is `overline(a'* v a*)`.
    pub fn conjugate(&self) -> Result<Bimodule> {
        let (l, r) = (&self.left, &self.right);
        if !l.has_star() || !r.has_star() {
            return Err(Error::Precondition("conjugate bimodule needs star algebras on both sides".into()));
        }
        let left_ops = (0..r.dim()).map(|k| self.act_right(&r.star(&r.basis_vec(k))).conj()).collect();
        let right_ops = (0..l.dim()).map(|k| self.act_left(&l.star(&l.basis_vec(k))).conj()).collect();
        Ok(Bimodule {
            name: format!("bar({})", self.name),
            left: r.clone(),
            right: l.clone(),
            dim: self.dim,
            left_ops,
            right_ops,
            // overline(v)* = overline(v*)
            star: self.star.clone(),
        })
    }

    /// Bimodule axioms, plus the star laws when a star is present.
    pub fn check(&self) -> Report {
        let mut rep = Report::new(format!("bimodule {}", self.name));
        rep.dim("carrier", self.dim);
        let id = Matrix::identity(self.dim);
        rep.record("left unit", same("left unit", &self.act_left(self.left.unit()), &id));
        rep.record("right unit", same("right unit", &self.act_right(self.right.unit()), &id));
        let (na, nb) = (self.left.dim(), self.right.dim());
        rep.record(
            "left associativity",
            first_err((0..na).flat_map(|i| (0..na).map(move |j| (i, j))).map(|(i, j)| {
                let p = to_dense(na, self.left.product(i, j));
                same(&format!("a{i} a{j}"), &self.left_ops[i].mul(&self.left_ops[j]), &self.act_left(&p))
            })),
        );
        rep.record(
            "right associativity",
            first_err((0..nb).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| {
                let p = to_dense(nb, self.right.product(i, j));
                same(&format!("b{i} b{j}"), &self.right_ops[j].mul(&self.right_ops[i]), &self.act_right(&p))
            })),
        );
        rep.record(
            "actions commute",
            first_err((0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| {
                same(
                    &format!("a{i}, b{j}"),
                    &self.left_ops[i].mul(&self.right_ops[j]),
                    &self.right_ops[j].mul(&self.left_ops[i]),
                )
            })),
        );
        if let Some(s) = &self.star {
            rep.record("star involutive", same("star twice", &s.mul(&s.conj()), &id));
            rep.record(
                "star reverses left action",
                first_err((0..na).map(|k| {
                    let ks = self.left.star(&self.left.basis_vec(k));
                    same(&format!("(a{k} m)*"), &s.mul(&self.left_ops[k].conj()), &self.act_right(&ks).mul(s))
                })),
            );
            rep.record(
                "star reverses right action",
                first_err((0..nb).map(|k| {
                    let ks = self.right.star(&self.right.basis_vec(k));
                    same(&format!("(m b{k})*"), &s.mul(&self.right_ops[k].conj()), &self.act_left(&ks).mul(s))
                })),
            );
        }
        rep
    }
}

fn base_eq(x: &FiniteStarAlgebra, y: &FiniteStarAlgebra) -> bool {
    x.name == y.name && x.dim() == y.dim() && x.products_dense() == y.products_dense()
}

/// `M (x)_B N` balanced over the right action of `M` and the left action of
/// `N`, together with its outer bimodule structure.
pub fn balanced_tensor(m: &Bimodule, n: &Bimodule) -> Result<(BalancedTensor, Bimodule)> {
    if !base_eq(&m.right, &n.left) {
        return Err(Error::BaseMismatch(format!("{} is over {}, {} is over {}", m.name, m.right.name, n.name, n.left.name)));
    }
    let bt = BalancedTensor::new(m.dim, n.dim, &Junction::new(m.right_ops.clone(), n.left_ops.clone()));
    let (im, in_) = (Matrix::identity(m.dim), Matrix::identity(n.dim));
    let left_ops = m.left_ops.iter().map(|l| bt.induced(l, &in_)).collect();
    let right_ops = n.right_ops.iter().map(|r| bt.induced(&im, r)).collect();
    let module = Bimodule {
        name: format!("{}(x){}", m.name, n.name),
        left: m.left.clone(),
        right: n.right.clone(),
        dim: bt.dim(),
        left_ops,
        right_ops,
        star: None,
    };
    Ok((bt, module))
}

/// Balanced maps factor through the projection: `f` on `M (x) N` (ambient)
/// vanishes on every relation iff it equals `g . project` for some `g`.
pub fn factors_through(bt: &BalancedTensor, f: &Matrix) -> Option<Matrix> {
    let s = bt.quotient.section_matrix();
    let g = f.mul(&s);
    if g.mul(&bt.quotient.projection_matrix()) == *f {
        Some(g)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ev: X (x) Omega -> A`, `coev` in `Omega (x) X`.
    Left,
    /// `ev: Omega (x) X -> A`, `coev` in `X (x) Omega`.
    Right,
}

/// A dual of `module` with evaluation and coevaluation.
///
/// `ev` is a matrix on the ambient tensor (`X (x) Omega` for the left side,
/// `Omega (x) X` for the right side); `coev` is an ambient vector.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub side: Side,
    pub module: Bimodule,
    pub dual: Bimodule,
    pub ev: Matrix,
    pub coev: Vector,
}

fn lin_system(cols: usize, eqs: &[(Vec<(usize, Q)>, Q)]) -> Matrix {
    let mut m = Matrix::zeros(eqs.len(), cols + 1);
    for (r, (lhs, rhs)) in eqs.iter().enumerate() {
        for (c, x) in lhs {
            *m.entry_mut(r, *c) += x;
        }
        m.set(r, cols, rhs.clone());
    }
    m
}

impl DualPair {
    /// `ev(x, w)` (left side) or `ev(w, x)` (right side).
    pub fn eval(&self, x: &[Q], w: &[Q]) -> Vector {
        let v = match self.side {
            Side::Left => crate::linalg::kron_vec(x, w),
            Side::Right => crate::linalg::kron_vec(w, x),
        };
        self.ev.apply(&v)
    }

    fn base(&self) -> &FiniteStarAlgebra {
        &self.module.left
    }

    /// The tensor square carrying `ev` and the one carrying `coev`.
    pub fn tensors(&self) -> Result<(BalancedTensor, BalancedTensor)> {
        let (m, x) = (&self.module, &self.dual);
        Ok(match self.side {
            Side::Left => (balanced_tensor(x, m)?.0, balanced_tensor(m, x)?.0),
            Side::Right => (balanced_tensor(m, x)?.0, balanced_tensor(x, m)?.0),
        })
    }

    /// Same pair with the dual relabelled along a bimodule isomorphism
    /// `iso: new -> old`.
    pub fn transport(&self, new_dual: Bimodule, iso: &Matrix) -> Result<DualPair> {
        let inv = iso.inverse().ok_or_else(|| Error::NotInvertible("dual relabelling".into()))?;
        let im = Matrix::identity(self.module.dim);
        let (ev, coev) = match self.side {
            Side::Left => (self.ev.mul(&iso.kron(&im)), im.kron(&inv).apply(&self.coev)),
            Side::Right => (self.ev.mul(&im.kron(iso)), inv.kron(&im).apply(&self.coev)),
        };
        Ok(DualPair { side: self.side, module: self.module.clone(), dual: new_dual, ev, coev })
    }
}

/// Dual on the requested side, computed as a hom space with the snake
/// equations solved for the coevaluation.
pub fn compute_dual(omega: &Bimodule, side: Side) -> Result<DualPair> {
    let alg = &omega.left;
    if !base_eq(&omega.left, &omega.right) {
        return Err(Error::BaseMismatch("duals are computed for A-A bimodules".into()));
    }
    let (n, m) = (alg.dim(), omega.dim);
    let regular = Bimodule::regular(alg);
    // maps phi: Omega -> A as n x m matrices, flattened row-major
    let mut cons: Vec<Vector> = Vec::new();
    for a in 0..n {
        let (om, am) = match side {
            Side::Left => (&omega.right_ops[a], &regular.right_ops[a]),
            Side::Right => (&omega.left_ops[a], &regular.left_ops[a]),
        };
        // phi om - am phi = 0
        for r in 0..n {
            for c in 0..m {
                let mut row = zero_vec(n * m);
                for k in 0..m {
                    row[r * m + k] += om.get(k, c);
                }
                for k in 0..n {
                    row[k * m + c] -= am.get(r, k);
                }
                if !is_zero_vec(&row) {
                    cons.push(row);
                }
            }
        }
    }
    let hom = if cons.is_empty() { crate::linalg::Subspace::full(n * m) } else { Matrix::from_rows(cons).kernel() };
    let maps: Vec<Matrix> = hom
        .basis()
        .iter()
        .map(|v| Matrix::from_fn(n, m, |r, c| v[r * m + c].clone()))
        .collect();
    let h = maps.len();
    let coords = |phi: &Matrix| -> Vector {
        let flat: Vector = (0..n).flat_map(|r| (0..m).map(move |c| (r, c))).map(|(r, c)| phi.get(r, c).clone()).collect();
        hom.coordinates(&flat).expect("hom space is closed under the actions")
    };
    let ops = |f: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
        let cols: Vec<Vector> = maps.iter().map(|x| coords(&f(x))).collect();
        Matrix::from_columns(h, &cols)
    };
    let (left_ops, right_ops): (Vec<Matrix>, Vec<Matrix>) = match side {
        // (a x b)(w) = a x(b w)
        Side::Left => (
            (0..n).map(|a| ops(&|x| regular.left_ops[a].mul(x))).collect(),
            (0..n).map(|b| ops(&|x| x.mul(&omega.left_ops[b]))).collect(),
        ),
        // (b y c)(w) = y(w b) c
        Side::Right => (
            (0..n).map(|b| ops(&|y| y.mul(&omega.right_ops[b]))).collect(),
            (0..n).map(|c| ops(&|y| regular.right_ops[c].mul(y))).collect(),
        ),
    };
    let dual = Bimodule {
        name: match side {
            Side::Left => format!("X^R({})", omega.name),
            Side::Right => format!("X^L({})", omega.name),
        },
        left: alg.clone(),
        right: alg.clone(),
        dim: h,
        left_ops,
        right_ops,
        star: None,
    };
    let ev = match side {
        Side::Left => Matrix::from_columns(n, &(0..h * m).map(|k| maps[k / m].column(k % m)).collect::<Vec<_>>()),
        Side::Right => Matrix::from_columns(n, &(0..m * h).map(|k| maps[k % h].column(k / h)).collect::<Vec<_>>()),
    };
    // coev coefficients K at (c, p): left side e_c (x) x_p, right side x_p (x) e_c
    let idx = |c: usize, p: usize| c * h + p;
    let mut eqs: Vec<(Vec<(usize, Q)>, Q)> = Vec::new();
    for w in 0..m {
        // snake on Omega
        for out in 0..m {
            let mut lhs = Vec::new();
            for c in 0..m {
                for p in 0..h {
                    let val = maps[p].column(w);
                    let op = match side {
                        Side::Left => omega.act_right(&val),
                        Side::Right => omega.act_left(&val),
                    };
                    let x = op.get(out, c);
                    if !x.is_zero() {
                        lhs.push((idx(c, p), x.clone()));
                    }
                }
            }
            eqs.push((lhs, if out == w { Q::one() } else { Q::zero() }));
        }
    }
    for x in 0..h {
        // snake on the dual
        for out in 0..h {
            let mut lhs = Vec::new();
            for c in 0..m {
                let val = maps[x].column(c);
                let op = match side {
                    Side::Left => dual.act_left(&val),
                    Side::Right => dual.act_right(&val),
                };
                for p in 0..h {
                    let y = op.get(out, p);
                    if !y.is_zero() {
                        lhs.push((idx(c, p), y.clone()));
                    }
                }
            }
            eqs.push((lhs, if out == x { Q::one() } else { Q::zero() }));
        }
    }
    let unknowns = m * h;
    let coev_k = if unknowns == 0 {
        Some(Vec::new())
    } else {
        let sys = lin_system(unknowns, &eqs);
        let a = Matrix::from_fn(sys.rows(), unknowns, |r, c| sys.get(r, c).clone());
        let b: Vector = (0..sys.rows()).map(|r| sys.get(r, unknowns).clone()).collect();
        a.solve(&b)
    };
    let k = coev_k.ok_or_else(|| Error::NotFgp(format!("{} has no coevaluation on this side", omega.name)))?;
    let coev = match side {
        Side::Left => k,
        // stored as x_p (x) e_c
        Side::Right => {
            let mut out = zero_vec(h * m);
            for c in 0..m {
                for p in 0..h {
                    out[p * m + c] = k[idx(c, p)].clone();
                }
            }
            out
        }
    };
    Ok(DualPair { side, module: omega.clone(), dual, ev, coev })
}

/// Snake identities, balancing and bimodule properties of `ev` and `coev`.
pub fn check_dual(d: &DualPair) -> Report {
    let mut rep = Report::new(format!("dual {} ({:?})", d.dual.name, d.side));
    rep.dim("dual", d.dual.dim);
    rep.absorb("dual", d.dual.check());
    let alg = d.base().clone();
    let n = alg.dim();
    let (ev_t, coev_t) = match d.tensors() {
        Ok(t) => t,
        Err(e) => {
            rep.fail("tensors", e.to_string());
            return rep;
        }
    };
    let ev_q = factors_through(&ev_t, &d.ev);
    rep.record("ev balanced", if ev_q.is_some() { Ok(()) } else { Err("ev does not vanish on balancing relations".into()) });
    let (lx, ly) = match d.side {
        Side::Left => (&d.dual, &d.module),
        Side::Right => (&d.module, &d.dual),
    };
    let ev_bimod = first_err((0..n).map(|a| {
        let ea = alg.basis_vec(a);
        let left = d.ev.mul(&lx.act_left(&ea).kron(&Matrix::identity(ly.dim)));
        let right = d.ev.mul(&Matrix::identity(lx.dim).kron(&ly.act_right(&ea)));
        same(&format!("ev(a{a} .)"), &left, &alg.left_mul_matrix(&ea).mul(&d.ev))?;
        same(&format!("ev(. a{a})"), &right, &alg.right_mul_matrix(&ea).mul(&d.ev))
    }));
    rep.record("ev bimodule map", ev_bimod);
    // coev central in its balanced tensor
    let (cx, cy) = match d.side {
        Side::Left => (&d.module, &d.dual),
        Side::Right => (&d.dual, &d.module),
    };
    let central = first_err((0..n).map(|a| {
        let ea = alg.basis_vec(a);
        let l = coev_t.project(&cx.act_left(&ea).kron(&Matrix::identity(cy.dim)).apply(&d.coev));
        let r = coev_t.project(&Matrix::identity(cx.dim).kron(&cy.act_right(&ea)).apply(&d.coev));
        same_vec(&format!("a{a} coev = coev a{a}"), &l, &r)
    }));
    rep.record("coev central", central);
    let (s1, s2) = snakes(d);
    rep.record("snake on module", s1);
    rep.record("snake on dual", s2);
    rep
}

fn snakes(d: &DualPair) -> (Outcome, Outcome) {
    let (m, h) = (d.module.dim, d.dual.dim);
    let basis_w = |w: usize| unit_vec(m, w);
    let basis_x = |x: usize| unit_vec(h, x);
    let s1 = first_err((0..m).map(|w| {
        let mut out = zero_vec(m);
        let w_v = basis_w(w);
        match d.side {
            Side::Left => {
                for (c, p, k) in terms2(&d.coev, h) {
                    let val = d.eval(&basis_x(p), &w_v);
                    crate::linalg::axpy(&mut out, k, &d.module.act_right(&val).column(c));
                }
            }
            Side::Right => {
                for (p, c, k) in terms2(&d.coev, m) {
                    let val = d.eval(&basis_x(p), &w_v);
                    crate::linalg::axpy(&mut out, k, &d.module.act_left(&val).column(c));
                }
            }
        }
        same_vec(&format!("snake at w{w}"), &out, &w_v)
    }));
    let s2 = first_err((0..h).map(|x| {
        let mut out = zero_vec(h);
        let x_v = basis_x(x);
        match d.side {
            Side::Left => {
                for (c, p, k) in terms2(&d.coev, h) {
                    let val = d.eval(&x_v, &basis_w(c));
                    crate::linalg::axpy(&mut out, k, &d.dual.act_left(&val).column(p));
                }
            }
            Side::Right => {
                for (p, c, k) in terms2(&d.coev, m) {
                    let val = d.eval(&x_v, &basis_w(c));
                    crate::linalg::axpy(&mut out, k, &d.dual.act_right(&val).column(p));
                }
            }
        }
        same_vec(&format!("snake at x{x}"), &out, &x_v)
    }));
    (s1, s2)
}

/// The antilinear transport `x -> x^star` from the left dual to the right
/// dual, fixed by `ev_R(w, x^star) = ev_L(x, w*)*`.
#[derive(Clone, Debug)]
pub struct StarTransport {
    /// `x^star = forward . conj(x)`.
    pub forward: Matrix,
    /// `y^(star^-1) = backward . conj(y)`.
    pub backward: Matrix,
}

impl StarTransport {
    pub fn apply(&self, x: &[Q]) -> Vector {
        self.forward.apply(&conj_vec(x))
    }

    pub fn apply_inv(&self, y: &[Q]) -> Vector {
        self.backward.apply(&conj_vec(y))
    }

    /// Whether `star = star^-1` (only meaningful when both duals coincide).
    pub fn is_involutive(&self) -> bool {
        self.forward == self.backward
    }
}

pub fn star_transport(left: &DualPair, right: &DualPair) -> Result<StarTransport> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::Precondition("star transport goes from the left dual to the right dual".into()));
    }
    let om = &left.module;
    let alg = &om.left;
    if om.star.is_none() || !alg.has_star() {
        return Err(Error::Precondition("star transport needs a star bimodule".into()));
    }
    let (m, hl, hr) = (om.dim, left.dual.dim, right.dual.dim);
    let n = alg.dim();
    // linear map y -> (ev_R(w_b, y))_b, stacked
    let big = Matrix::from_fn(m * n, hr, |r, q| {
        let (b, k) = (r / n, r % n);
        right.eval(&unit_vec(hr, q), &unit_vec(m, b))[k].clone()
    });
    let mut cols = Vec::with_capacity(hl);
    for p in 0..hl {
        let mut rhs = zero_vec(m * n);
        for b in 0..m {
            let ws = om.apply_star(&unit_vec(m, b)).unwrap();
            let v = alg.star(&left.eval(&unit_vec(hl, p), &ws));
            for k in 0..n {
                rhs[b * n + k] = v[k].clone();
            }
        }
        let y = big.solve(&rhs).ok_or_else(|| Error::NotFgp(format!("no transport of x{p}")))?;
        cols.push(y);
    }
    let forward = Matrix::from_columns(hr, &cols);
    let backward = forward
        .conj()
        .inverse()
        .ok_or_else(|| Error::NotInvertible("star transport is not bijective".into()))?;
    Ok(StarTransport { forward, backward })
}

/// Twisted bimodule law, inverse and the transported coevaluation.
pub fn check_star_transport(left: &DualPair, right: &DualPair, t: &StarTransport) -> Report {
    let mut rep = Report::new("star transport");
    let om = &left.module;
    let alg = &om.left;
    let n = alg.dim();
    let (xl, xr) = (&left.dual, &right.dual);
    rep.record(
        "inverse",
        same("backward . conj(forward)", &t.backward.mul(&t.forward.conj()), &Matrix::identity(xl.dim)),
    );
    rep.record(
        "defining equation",
        first_err((0..xl.dim).flat_map(|p| (0..om.dim).map(move |b| (p, b))).map(|(p, b)| {
            let x = unit_vec(xl.dim, p);
            let w = unit_vec(om.dim, b);
            let lhs = right.eval(&t.apply(&x), &w);
            let rhs = alg.star(&left.eval(&x, &om.apply_star(&w).unwrap()));
            same_vec(&format!("x{p}, w{b}"), &lhs, &rhs)
        })),
    );
    rep.record(
        "(a x b)^star = b* x^star a*",
        first_err((0..n).map(|a| {
            let ea = alg.basis_vec(a);
            let sa = alg.star(&ea);
            let f = &t.forward;
            same(&format!("left a{a}"), &f.mul(&xl.act_left(&ea).conj()), &xr.act_right(&sa).mul(f))?;
            same(&format!("right a{a}"), &f.mul(&xl.act_right(&ea).conj()), &xr.act_left(&sa).mul(f))
        })),
    );
    // sum x_i^star (x) w_i* = coev_R
    let res = (|| -> Outcome {
        let (_, ct) = right.tensors().map_err(|e| e.to_string())?;
        let mut img = zero_vec(xr.dim * om.dim);
        for (c, p, k) in terms2(&left.coev, xl.dim) {
            let xs = t.apply(&unit_vec(xl.dim, p));
            let ws = om.apply_star(&unit_vec(om.dim, c)).unwrap();
            add_kron(&mut img, &k.conj(), &xs, &ws);
        }
        same_vec("coev", &ct.project(&img), &ct.project(&right.coev))
    })();
    rep.record("transported coevaluation", res);
    rep
}

/// `Upsilon: overline(V (x) W) -> overline(W) (x) overline(V)` in quotient
/// coordinates (input coordinates are those of `overline(t)`, i.e. `conj(t)`).
#[derive(Clone, Debug)]
pub struct Upsilon {
    pub vw: BalancedTensor,
    pub vw_module: Bimodule,
    pub wv_bar: BalancedTensor,
    pub wv_bar_module: Bimodule,
    pub matrix: Matrix,
}

pub fn upsilon(v: &Bimodule, w: &Bimodule) -> Result<Upsilon> {
    let (vw, vw_module) = balanced_tensor(v, w)?;
    let (wv_bar, wv_bar_module) = balanced_tensor(&w.conjugate()?, &v.conjugate()?)?;
    let cols: Vec<Vector> = (0..vw.dim())
        .map(|k| {
            let (i, j) = vw.representative_pair(k);
            wv_bar.project_pair(&unit_vec(w.dim, j), &unit_vec(v.dim, i))
        })
        .collect();
    let matrix = Matrix::from_columns(wv_bar.dim(), &cols);
    Ok(Upsilon { vw, vw_module, wv_bar, wv_bar_module, matrix })
}

fn flip_matrix(n: usize, m: usize) -> Matrix {
    // V (x) W -> W (x) V
    Matrix::from_fn(n * m, n * m, |r, c| {
        let (p, q) = (c / m, c % m);
        if r == q * n + p {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

/// Well-definedness and bimodule-isomorphism property of `Upsilon`, and the
/// identity `bb` as a bimodule map to the double conjugate.
pub fn check_upsilon(v: &Bimodule, w: &Bimodule) -> Report {
    let mut rep = Report::new(format!("upsilon {} {}", v.name, w.name));
    let u = match upsilon(v, w) {
        Ok(u) => u,
        Err(e) => {
            rep.fail("construct", e.to_string());
            return rep;
        }
    };
    rep.dim("tensor", u.vw.dim());
    let lhs = u.matrix.mul(&u.vw.quotient.projection_matrix().conj());
    let rhs = u.wv_bar.quotient.projection_matrix().mul(&flip_matrix(v.dim, w.dim));
    rep.record("well defined", same("upsilon on relations", &lhs, &rhs));
    rep.record(
        "invertible",
        if u.matrix.rows() == u.matrix.cols() && u.matrix.inverse().is_some() {
            Ok(())
        } else {
            Err(format!("{}x{} not invertible", u.matrix.rows(), u.matrix.cols()))
        },
    );
    match u.vw_module.conjugate() {
        Ok(bar) => {
            let (l, r) = (&bar.left, &bar.right);
            let mut out = Ok(());
            for a in 0..l.dim() {
                let e = l.basis_vec(a);
                out = out.and(same(&format!("left a{a}"), &u.matrix.mul(&bar.act_left(&e)), &u.wv_bar_module.act_left(&e).mul(&u.matrix)));
            }
            for a in 0..r.dim() {
                let e = r.basis_vec(a);
                out = out.and(same(&format!("right a{a}"), &u.matrix.mul(&bar.act_right(&e)), &u.wv_bar_module.act_right(&e).mul(&u.matrix)));
            }
            rep.record("bimodule map", out);
        }
        Err(e) => rep.fail("bimodule map", e.to_string()),
    }
    rep.absorb("bb", check_bb(v));
    rep
}

/// `bb: V -> overline(overline(V))` is the identity on coordinates.
pub fn check_bb(v: &Bimodule) -> Report {
    let mut rep = Report::new(format!("bb {}", v.name));
    match v.conjugate().and_then(|b| b.conjugate().map(|bb| (b, bb))) {
        Ok((b, bb)) => {
            let id = Matrix::identity(v.dim);
            let mut out = Ok(());
            for k in 0..v.left.dim() {
                out = out.and(same(&format!("left a{k}"), &id.mul(&v.left_ops[k]), &bb.left_ops[k].mul(&id)));
            }
            for k in 0..v.right.dim() {
                out = out.and(same(&format!("right a{k}"), &id.mul(&v.right_ops[k]), &bb.right_ops[k].mul(&id)));
            }
            rep.record("bb bimodule map", out);
            // overline(bb_V) = bb_{overline(V)}: both are the identity, so compare carriers
            let bbb = b.conjugate().and_then(|x| x.conjugate());
            rep.record(
                "overline(bb) = bb of conjugate",
                match bbb {
                    Ok(x) if x.left_ops == b.left_ops && x.right_ops == b.right_ops => Ok(()),
                    Ok(_) => Err("conjugate actions differ".into()),
                    Err(e) => Err(e.to_string()),
                },
            );
        }
        Err(e) => rep.fail("bb bimodule map", e.to_string()),
    }
    rep
}

/// Project an ambient vector of `X (x) Y (x) Z` into `X (x) (Y (x) Z)`.
pub fn project_right3(v: &[Q], dx: usize, yz: &BalancedTensor, x_yz: &BalancedTensor) -> Vector {
    let inner = yz.dm * yz.dn;
    let mut mid = zero_vec(dx * yz.dim());
    for x in 0..dx {
        let slice = &v[x * inner..(x + 1) * inner];
        if is_zero_vec(slice) {
            continue;
        }
        let p = yz.project(slice);
        for (k, c) in p.into_iter().enumerate() {
            mid[x * yz.dim() + k] = c;
        }
    }
    x_yz.project(&mid)
}

/// Ambient triple from `X (x) (Y (x) Z)` quotient coordinates.
pub fn section_right3(q: &[Q], yz: &BalancedTensor, x_yz: &BalancedTensor) -> Vector {
    let s = x_yz.section(q);
    let inner = yz.dm * yz.dn;
    let mut out = zero_vec(x_yz.dm * inner);
    for (x, k, c) in terms2(&s, yz.dim()) {
        let e = yz.section(&unit_vec(yz.dim(), k));
        crate::linalg::axpy(&mut out[x * inner..(x + 1) * inner], c, &e);
    }
    out
}

/// Ambient triple from `(X (x) Y) (x) Z` quotient coordinates.
pub fn section_left3(q: &[Q], xy: &BalancedTensor, xy_z: &BalancedTensor) -> Vector {
    let s = xy_z.section(q);
    let dz = xy_z.dn;
    let mut out = zero_vec(xy.dm * xy.dn * dz);
    for (k, z, c) in terms2(&s, dz) {
        let e = xy.section(&unit_vec(xy.dim(), k));
        for (i, x) in e.iter().enumerate() {
            if !x.is_zero() {
                out[i * dz + z] += &(c * x);
            }
        }
    }
    out
}

/// Coherence of `Upsilon` with associativity, on all basis triples.
pub fn check_upsilon_coherence(u: &Bimodule, v: &Bimodule, w: &Bimodule) -> Report {
    let mut rep = Report::new(format!("upsilon coherence {} {} {}", u.name, v.name, w.name));
    let res = (|| -> Result<Outcome> {
        let (ub, vb, wb) = (u.conjugate()?, v.conjugate()?, w.conjugate()?);
        let (uv, uv_m) = balanced_tensor(u, v)?;
        let (vw, vw_m) = balanced_tensor(v, w)?;
        let (uv_w, _) = balanced_tensor(&uv_m, w)?;
        let (u_vw, _) = balanced_tensor(u, &vw_m)?;
        let y_uv_w = upsilon(&uv_m, w)?; // overline((UV)W) -> bar W (x) bar(UV)
        let y_u_vw = upsilon(u, &vw_m)?; // overline(U(VW)) -> bar(VW) (x) bar U
        let y_uv = upsilon(u, v)?;
        let y_vw = upsilon(v, w)?;
        // bar W (x) (bar V (x) bar U)
        let (vu_b, vu_bm) = balanced_tensor(&vb, &ub)?;
        let (w_vu, _) = balanced_tensor(&wb, &vu_bm)?;
        // (bar W (x) bar V) (x) bar U
        let (wv_b, wv_bm) = balanced_tensor(&wb, &vb)?;
        let (wv_u, _) = balanced_tensor(&wv_bm, &ub)?;
        let lhs_map = y_uv_w.wv_bar.induced(&Matrix::identity(w.dim), &y_uv.matrix).mul(&y_uv_w.matrix);
        let rhs_map = y_u_vw.wv_bar.induced(&y_vw.matrix, &Matrix::identity(u.dim)).mul(&y_u_vw.matrix);
        // both targets close up onto one chain quotient via the left nesting
        for a in 0..u.dim {
            for b in 0..v.dim {
                for c in 0..w.dim {
                    let (ea, eb, ec) = (unit_vec(u.dim, a), unit_vec(v.dim, b), unit_vec(w.dim, c));
                    let t1 = uv_w.project_pair(&uv.project_pair(&ea, &eb), &ec);
                    let t2 = u_vw.project_pair(&ea, &vw.project_pair(&eb, &ec));
                    let l = lhs_map.apply(&conj_vec(&t1));
                    let r = rhs_map.apply(&conj_vec(&t2));
                    // l in bar W (x) (bar V (x) bar U), r in (bar W (x) bar V) (x) bar U
                    let l_amb = section_right3(&l, &vu_b, &w_vu);
                    let r_amb = section_left3(&r, &wv_b, &wv_u);
                    let l_q = wv_u.project(&left_nest(&l_amb, &wv_b, w.dim, v.dim, u.dim));
                    let r_q = wv_u.project(&left_nest(&r_amb, &wv_b, w.dim, v.dim, u.dim));
                    if l_q != r_q {
                        return Ok(Err(format!("u{a} v{b} w{c}: {} vs {}", fmt_vec(&l_q), fmt_vec(&r_q))));
                    }
                }
            }
        }
        Ok(Ok(()))
    })();
    match res {
        Ok(o) => rep.record("coherence", o),
        Err(e) => rep.fail("coherence", e.to_string()),
    }
    rep
}

fn left_nest(amb: &[Q], xy: &BalancedTensor, dx: usize, dy: usize, dz: usize) -> Vector {
    let mut out = zero_vec(xy.dim() * dz);
    for z in 0..dz {
        let slice: Vector = (0..dx * dy).map(|r| amb[r * dz + z].clone()).collect();
        if is_zero_vec(&slice) {
            continue;
        }
        for (k, c) in xy.project(&slice).into_iter().enumerate() {
            out[k * dz + z] = c;
        }
    }
    out
}

/// Optional metric presentation of a pivotal structure with `X = Omega`:
/// `pairing` on the ambient `Omega (x) Omega`, `metric` an ambient vector.
#[derive(Clone, Debug)]
pub struct Metric {
    pub pairing: Matrix,
    pub metric: Vector,
}

/// One dual serving on both sides.
#[derive(Clone, Debug)]
pub struct PivotalData {
    pub left: DualPair,
    pub right: DualPair,
    pub metric: Option<Metric>,
}

impl PivotalData {
    pub fn from_metric(omega: &Bimodule, metric: Metric) -> Self {
        let left = DualPair {
            side: Side::Left,
            module: omega.clone(),
            dual: omega.clone(),
            ev: metric.pairing.clone(),
            coev: metric.metric.clone(),
        };
        let right = DualPair { side: Side::Right, ..left.clone() };
        PivotalData { left, right, metric: Some(metric) }
    }
}

/// `dagger(w (x) v) = v* (x) w*` on ambient `Omega (x) Omega`.
pub fn dagger(omega: &Bimodule, t: &[Q]) -> Vector {
    let m = omega.dim;
    let mut out = zero_vec(m * m);
    for (p, q, c) in terms2(t, m) {
        let a = omega.apply_star(&unit_vec(m, q)).expect("star bimodule");
        let b = omega.apply_star(&unit_vec(m, p)).expect("star bimodule");
        add_kron(&mut out, &c.conj(), &a, &b);
    }
    out
}

pub fn check_pivotal(p: &PivotalData) -> Report {
    let mut rep = Report::new(format!("pivotal {}", p.left.module.name));
    let same_dual = p.left.dual.dim == p.right.dual.dim
        && p.left.dual.left_ops == p.right.dual.left_ops
        && p.left.dual.right_ops == p.right.dual.right_ops;
    rep.record(
        "one dual on both sides",
        if same_dual && p.left.side == Side::Left && p.right.side == Side::Right {
            Ok(())
        } else {
            Err("left and right duals carry different bimodule structures".into())
        },
    );
    let (a, b) = snakes(&p.left);
    rep.record("left snake on module", a);
    rep.record("left snake on dual", b);
    let (a, b) = snakes(&p.right);
    rep.record("right snake on module", a);
    rep.record("right snake on dual", b);
    let om = &p.left.module;
    if let Some(mt) = &p.metric {
        let ok = p.left.ev == mt.pairing && p.right.ev == mt.pairing && p.left.coev == mt.metric && p.right.coev == mt.metric;
        rep.record("metric presentation", if ok { Ok(()) } else { Err("ev or coev differs from the metric data".into()) });
        if om.star.is_some() {
            let (_, gt) = match balanced_tensor(om, om) {
                Ok(t) => (t.1, t.0),
                Err(e) => {
                    rep.fail("metric tensor", e.to_string());
                    return rep;
                }
            };
            let d = gt.project(&dagger(om, &mt.metric));
            let g = gt.project(&mt.metric);
            rep.flag("dagger(g) = g", d == g, format!("{} vs {}", fmt_vec(&d), fmt_vec(&g)));
        }
    }
    if om.star.is_some() {
        match star_transport(&p.left, &p.right) {
            Ok(t) => {
                rep.flag("star transport involutive", t.is_involutive(), "forward differs from backward");
                rep.absorb("transport", check_star_transport(&p.left, &p.right, &t));
            }
            Err(e) => rep.fail("star transport", e.to_string()),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{cyclic_group_algebra, functions, matrix_algebra};

    #[test]
    fn regular_bimodules_check() {
        for alg in [cyclic_group_algebra(2), functions(2), matrix_algebra(2)] {
            assert!(Bimodule::regular(&alg).check().all_pass());
        }
    }

    #[test]
    fn unit_constraint_and_functions() {
        let a = cyclic_group_algebra(2);
        let r = Bimodule::regular(&a);
        assert_eq!(balanced_tensor(&r, &r).unwrap().0.dim(), 2);
        let f = Bimodule::regular(&functions(2));
        assert_eq!(balanced_tensor(&f, &f).unwrap().0.dim(), 2);
        let c = Bimodule::regular(&FiniteStarAlgebra::scalars());
        let (t, _) = balanced_tensor(&c, &c).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(matches!(balanced_tensor(&r, &f), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn dual_of_regular() {
        let a = matrix_algebra(2);
        let r = Bimodule::regular(&a);
        for side in [Side::Left, Side::Right] {
            let d = compute_dual(&r, side).unwrap();
            assert_eq!(d.dual.dim, 4);
            assert!(check_dual(&d).all_pass(), "{}", check_dual(&d));
        }
        let z = Bimodule::zero(&a);
        let d = compute_dual(&z, Side::Left).unwrap();
        assert_eq!(d.dual.dim, 0);
        assert!(d.coev.is_empty());
    }

    #[test]
    fn conjugate_of_group_algebra() {
        let a = cyclic_group_algebra(2);
        let v = Bimodule::regular(&a);
        let b = v.conjugate().unwrap();
        // g . overline(a) = overline(a g*) = overline(a g)
        let g = a.basis_vec(1);
        assert_eq!(b.act_left(&g).apply(&a.basis_vec(0)), conj_vec(&a.mul(&a.basis_vec(0), &a.star(&g))));
        assert!(b.check().all_pass());
        assert!(check_upsilon(&v, &v).all_pass());
    }
}
