//! Modules, comodules and Yetter-Drinfeld objects over a full Hopf
//! algebroid, together with their conjugates.
//!
//! A conjugate object shares the carrier of the original and `overline(v)`
//! has coordinates `conj(v)`, so conjugate actions and coactions are again
//! plain matrices and vectors.

use super::{junction, FullHopfAlgebroid, LeftBialgebroid, Mul, RightBialgebroid};
use crate::algebra::FiniteStarAlgebra;
use crate::linalg::{axpy, conj_vec, is_zero_vec, to_dense, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{apply2, flip, terms2, BalancedTensor, Junction, TensorChain};

/// `sum_k c_k ops[k]`.
pub fn lin_ops(dim: usize, ops: &[Matrix], c: &[Q]) -> Matrix {
    let mut out = Matrix::zeros(dim, dim);
    for (k, x) in c.iter().enumerate() {
        if !x.is_zero() {
            out = out.add(&ops[k].scale(x));
        }
    }
    out
}

/// Linear extension of a coaction given on basis vectors.
fn coact(delta: &[Vector], v: &[Q]) -> Vector {
    let mut out = zero_vec(delta.first().map_or(0, |d| d.len()));
    for (k, x) in v.iter().enumerate() {
        if !x.is_zero() {
            axpy(&mut out, x, &delta[k]);
        }
    }
    out
}

fn cmp(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: lhs {} vs rhs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

fn cmp_mat(label: &str, lhs: &Matrix, rhs: &Matrix) -> Outcome {
    for j in 0..lhs.cols() {
        let (x, y) = (lhs.column(j), rhs.column(j));
        if x != y {
            return Err(format!("{label}, column {j}: {} vs {}", fmt_vec(&x), fmt_vec(&y)));
        }
    }
    Ok(())
}

/// `w (x) e_k` style placement: `out[x * m + k] += c * u[x]`.
fn add_tail(out: &mut [Q], c: &Q, u: &[Q], m: usize, k: usize) {
    for (x, y) in u.iter().enumerate() {
        if !y.is_zero() {
            out[x * m + k] += &(c * y);
        }
    }
}

/// `e_p (x) w`: `out[p * len(w) + y] += c * w[y]`.
fn add_head(out: &mut [Q], c: &Q, p: usize, w: &[Q]) {
    let m = w.len();
    for (y, z) in w.iter().enumerate() {
        if !z.is_zero() {
            out[p * m + y] += &(c * z);
        }
    }
}

/// Bimodule axioms for left operators `la` and right operators `ra` indexed
/// by a basis of `base`.
pub fn check_bimodule(base: &FiniteStarAlgebra, dim: usize, la: &[Matrix], ra: &[Matrix]) -> Outcome {
    let b = base.dim();
    let unit = base.unit();
    cmp_mat("unit acts on the left", &lin_ops(dim, la, unit), &Matrix::identity(dim))?;
    cmp_mat("unit acts on the right", &lin_ops(dim, ra, unit), &Matrix::identity(dim))?;
    for i in 0..b {
        for j in 0..b {
            let prod = to_dense(b, base.product(i, j));
            cmp_mat(&format!("left action on a{i} a{j}"), &la[i].mul(&la[j]), &lin_ops(dim, la, &prod))?;
            cmp_mat(&format!("right action on a{i} a{j}"), &ra[j].mul(&ra[i]), &lin_ops(dim, ra, &prod))?;
            cmp_mat(&format!("actions of a{i}, a{j} commute"), &la[i].mul(&ra[j]), &ra[j].mul(&la[i]))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// left modules

/// Left module of a left bialgebroid: `action[i]` is `m -> e_i |> m`.
#[derive(Clone, Debug)]
pub struct LeftModule {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl LeftModule {
    /// The total algebra acting on itself.
    pub fn regular(l: &LeftBialgebroid) -> Self {
        let n = l.dim();
        let action = (0..n).map(|i| l.total.left_mul_matrix(&unit_vec(n, i))).collect();
        LeftModule { name: format!("{} (regular)", l.name), dim: n, action }
    }

    /// The base with `X |> b = eps(X s(b))`.
    pub fn base(l: &LeftBialgebroid) -> Self {
        let (n, b) = (l.dim(), l.base_dim());
        let action = (0..n)
            .map(|i| {
                let cols: Vec<Vector> =
                    (0..b).map(|k| l.eps_of(&l.total.mul(&unit_vec(n, i), &l.s.column(k)))).collect();
                Matrix::from_columns(b, &cols)
            })
            .collect();
        LeftModule { name: format!("{} (base)", l.name), dim: b, action }
    }

    pub fn act(&self, x: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.action, x)
    }

    /// `X |> overline(m) = overline(theta(X) |> m)` for an antilinear twist
    /// `theta(v) = T conj(v)`.
    pub fn conjugate(&self, theta: &Matrix) -> Self {
        let action = (0..theta.cols()).map(|i| self.act(&theta.column(i)).conj()).collect();
        LeftModule { name: format!("conj({})", self.name), dim: self.dim, action }
    }

    /// Left and right base actions `b.m.b' = s(b) t(b') |> m`.
    pub fn base_actions(&self, l: &LeftBialgebroid) -> (Vec<Matrix>, Vec<Matrix>) {
        let b = l.base_dim();
        let la = (0..b).map(|k| self.act(&l.s.column(k))).collect();
        let ra = (0..b).map(|k| self.act(&l.t.column(k))).collect();
        (la, ra)
    }
}

pub fn check_left_module(l: &LeftBialgebroid, m: &LeftModule) -> Outcome {
    let n = l.dim();
    if m.action.len() != n || m.action.iter().any(|a| a.rows() != m.dim || a.cols() != m.dim) {
        return Err(format!("expected {n} operators of size {0}x{0}", m.dim));
    }
    cmp_mat("unit", &m.act(l.total.unit()), &Matrix::identity(m.dim))?;
    for i in 0..n {
        for j in 0..n {
            let prod = to_dense(n, l.total.product(i, j));
            cmp_mat(&format!("e{i} e{j}"), &m.action[i].mul(&m.action[j]), &m.act(&prod))?;
        }
    }
    Ok(())
}

/// `M (x)_B N` for left modules: `t(b) |> m (x) n = m (x) s(b) |> n`.
fn module_tensor(l: &LeftBialgebroid, m: &LeftModule, n: &LeftModule) -> BalancedTensor {
    let (_, ra) = m.base_actions(l);
    let (la, _) = n.base_actions(l);
    BalancedTensor::new(m.dim, n.dim, &Junction::new(ra, la))
}

/// `X |> (m (x) n) = X(1) |> m (x) X(2) |> n` on the ambient basis vector `(a, b)`.
fn tensor_action_on(l: &LeftBialgebroid, m: &LeftModule, n: &LeftModule, x: &[Q], a: usize, b: usize) -> Vector {
    let lift = l.delta_lift(x);
    let nn = l.dim();
    let mut out = zero_vec(m.dim * n.dim);
    for (p, q, c) in terms2(&lift, nn) {
        crate::tensor::add_kron(&mut out, c, &m.action[p].column(a), &n.action[q].column(b));
    }
    out
}

/// Bar-category checks for the left module `m`, with `X |> overline(m) =
/// overline(theta(X) |> m)`, and `Upsilon` on `overline(m (x)_B n)`.
///
/// For a full star Hopf algebroid `theta = S star`; for a pair `theta = Phi^-1 circ`.
pub fn verify_module_bar(l: &LeftBialgebroid, theta: &Matrix, m: &LeftModule, n: &LeftModule) -> Report {
    let mut r = Report::new(format!("module bar {} / {}", m.name, l.name));
    r.dim("module", m.dim);
    let tn = l.dim();
    if theta.rows() != tn || theta.cols() != tn {
        r.fail("twist shape", format!("expected {tn}x{tn}"));
        return r;
    }
    let input = check_left_module(l, m).and_then(|_| check_left_module(l, n));
    let ok = input.is_ok();
    r.record("input is a module", input);
    if !ok {
        return r;
    }
    let Some(bstar) = l.base.star_matrix() else {
        r.fail("base star present", "base has no star");
        return r;
    };
    let mc = m.conjugate(theta);
    let nc = n.conjugate(theta);
    r.record("conjugate action is an action", check_left_module(l, &mc));
    r.record("bb is a module map", {
        let back = mc.conjugate(theta);
        (0..tn).try_for_each(|i| cmp_mat(&format!("on e{i}"), &back.action[i], &m.action[i]))
    });
    r.record("b.overline(m).b' = overline(b'* m b*)", {
        (0..l.base_dim()).try_for_each(|k| {
            let bs = bstar.column(k);
            cmp_mat(&format!("left by b{k}"), &mc.act(&l.s.column(k)), &m.act(&l.t_of(&bs)).conj())?;
            cmp_mat(&format!("right by b{k}"), &mc.act(&l.t.column(k)), &m.act(&l.s_of(&bs)).conj())
        })
    });
    // Upsilon : overline(M (x) N) -> conj(N) (x) conj(M), overline(m (x) n) -> n (x) m
    let source = module_tensor(l, m, n);
    let target = module_tensor(l, &nc, &mc);
    r.dim("M (x)_B N", source.dim());
    r.record(
        "Upsilon well defined",
        source.quotient.relations().sparse_rows().iter().enumerate().try_for_each(|(k, row)| {
            let img = target.project(&flip(&conj_vec(&to_dense(m.dim * n.dim, row)), m.dim, n.dim));
            if is_zero_vec(&img) {
                Ok(())
            } else {
                Err(format!("relation {k} maps to {}", fmt_vec(&img)))
            }
        }),
    );
    r.record(
        "Upsilon is a module map",
        (0..tn).try_for_each(|i| {
            let th = theta.column(i);
            let ei = unit_vec(tn, i);
            for a in 0..m.dim {
                for b in 0..n.dim {
                    let lhs = target.project(&tensor_action_on(l, &nc, &mc, &ei, b, a));
                    let w = tensor_action_on(l, m, n, &th, a, b);
                    let rhs = target.project(&flip(&conj_vec(&w), m.dim, n.dim));
                    cmp(&format!("X = e{i} on ({a}, {b})"), &lhs, &rhs)?;
                }
            }
            Ok(())
        }),
    );
    r
}

// ---------------------------------------------------------------------------
// comodules

/// Right comodule of a full Hopf algebroid: an `A`-bimodule with coactions
/// into `Gamma (x)_B L` and `Gamma (x)_A R`, in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub name: String,
    pub dim: usize,
    pub left_act: Vec<Matrix>,
    pub right_act: Vec<Matrix>,
    pub delta_l: Vec<Vector>,
    pub delta_r: Vec<Vector>,
}

impl Comodule {
    /// The total algebra with both coproducts, `a.X.a' = t_L(a) X t_L(a')`.
    pub fn regular(h: &FullHopfAlgebroid) -> Self {
        let l = &h.left;
        let r = h.derived_right();
        let n = l.dim();
        let la = (0..l.base_dim()).map(|k| l.total.left_mul_matrix(&l.t.column(k))).collect();
        let ra = (0..l.base_dim()).map(|k| l.total.right_mul_matrix(&l.t.column(k))).collect();
        Comodule {
            name: format!("{} (regular)", l.name),
            dim: n,
            left_act: la,
            right_act: ra,
            delta_l: (0..n).map(|i| l.delta_lift_basis(i).clone()).collect(),
            delta_r: (0..n).map(|i| r.delta_lift_basis(i).clone()).collect(),
        }
    }

    /// The base with `delta(a) = 1 (x) t_L(a)` on both sides.
    pub fn base(h: &FullHopfAlgebroid) -> Self {
        let l = &h.left;
        let a = h.derived_right().base.clone();
        let b = a.dim();
        let la = (0..b).map(|k| a.left_mul_matrix(&unit_vec(b, k))).collect();
        let ra = (0..b).map(|k| a.right_mul_matrix(&unit_vec(b, k))).collect();
        let delta: Vec<Vector> = (0..b).map(|k| crate::linalg::kron_vec(a.unit(), &l.t.column(k))).collect();
        Comodule { name: format!("{} (base)", l.name), dim: b, left_act: la, right_act: ra, delta_l: delta.clone(), delta_r: delta }
    }

    pub fn left(&self, a: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.left_act, a)
    }

    pub fn right(&self, a: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.right_act, a)
    }

    /// `a.overline(r).a' = overline(a'* r a*)`, `delta_R(overline r) =
    /// overline(r(0)) (x) r(1)*` and `delta_L(overline r) = overline(r[0]) (x) r[1]*`.
    pub fn conjugate(&self, star: &Matrix, base_star: &Matrix) -> Self {
        let b = base_star.cols();
        let id = Matrix::identity(self.dim);
        let la = (0..b).map(|k| self.right(&base_star.column(k)).conj()).collect();
        let ra = (0..b).map(|k| self.left(&base_star.column(k)).conj()).collect();
        let tw = |d: &Vector| apply2(&id, star, &conj_vec(d));
        Comodule {
            name: format!("conj({})", self.name),
            dim: self.dim,
            left_act: la,
            right_act: ra,
            delta_r: self.delta_l.iter().map(tw).collect(),
            delta_l: self.delta_r.iter().map(tw).collect(),
        }
    }
}

/// One side of the comodule axioms.
struct CoSide<'a> {
    label: &'static str,
    alg: &'a FiniteStarAlgebra,
    /// Balancing of `Gamma (x) X`.
    gamma: BalancedTensor,
    /// Balancing of `X (x) X`, second junction of the triple tensor.
    coalg: Junction,
    /// Takeuchi pairs: `op_G rho (x) X = rho (x) op_X X`.
    takeuchi: Vec<(Matrix, Matrix)>,
    /// Bimodule pairs: `delta(op_G rho) = (id (x) op_X) delta(rho)`.
    bimod: Vec<(Matrix, Matrix)>,
    lifts: Vec<Vector>,
    eps: &'a Matrix,
    /// Base acting for the counit law `rho = op(eps(rho(1))) rho(0)`.
    counit: Vec<Matrix>,
}

fn side_l<'a>(l: &'a LeftBialgebroid, c: &Comodule) -> CoSide<'a> {
    let n = l.dim();
    let b = l.base_dim();
    let lm = |x: Vector| l.total.left_mul_matrix(&x);
    let rm = |x: Vector| l.total.right_mul_matrix(&x);
    let gj = Junction::new(c.left_act.clone(), (0..b).map(|k| lm(l.s.column(k))).collect());
    CoSide {
        label: "L",
        alg: &l.total,
        gamma: BalancedTensor::new(c.dim, n, &gj),
        coalg: junction(&l.total, &l.t, Mul::Left, &l.s, Mul::Left),
        takeuchi: (0..b).map(|k| (c.right_act[k].clone(), rm(l.s.column(k)))).collect(),
        bimod: (0..b)
            .flat_map(|k| [(c.left_act[k].clone(), lm(l.t.column(k))), (c.right_act[k].clone(), rm(l.t.column(k)))])
            .collect(),
        lifts: (0..n).map(|i| l.delta_lift_basis(i).clone()).collect(),
        eps: &l.eps,
        counit: c.left_act.clone(),
    }
}

fn side_r<'a>(r: &'a RightBialgebroid, c: &Comodule) -> CoSide<'a> {
    let n = r.dim();
    let b = r.base_dim();
    let lm = |x: Vector| r.total.left_mul_matrix(&x);
    let rm = |x: Vector| r.total.right_mul_matrix(&x);
    let gj = Junction::new(c.right_act.clone(), (0..b).map(|k| rm(r.t.column(k))).collect());
    CoSide {
        label: "R",
        alg: &r.total,
        gamma: BalancedTensor::new(c.dim, n, &gj),
        coalg: r.junction(),
        takeuchi: (0..b).map(|k| (c.left_act[k].clone(), lm(r.t.column(k)))).collect(),
        bimod: (0..b)
            .flat_map(|k| [(c.left_act[k].clone(), lm(r.s.column(k))), (c.right_act[k].clone(), rm(r.s.column(k)))])
            .collect(),
        lifts: (0..n).map(|i| r.delta_lift_basis(i).clone()).collect(),
        eps: &r.eps,
        counit: c.right_act.clone(),
    }
}

impl CoSide<'_> {
    fn n(&self) -> usize {
        self.alg.dim()
    }

    /// `(delta (x) id) v` for `v` in `Gamma (x) X`.
    fn delta_left(&self, delta: &[Vector], v: &[Q]) -> Vector {
        let n = self.n();
        let g = delta.len();
        let mut out = zero_vec(g * n * n);
        for (p, q, c) in terms2(v, n) {
            add_tail(&mut out, c, &delta[p], n, q);
        }
        out
    }

    /// `(id (x) Delta) v`.
    fn delta_right(&self, v: &[Q], lifts: &[Vector]) -> Vector {
        let n = self.n();
        let g = v.len() / n;
        let mut out = zero_vec(g * n * n);
        for (p, q, c) in terms2(v, n) {
            add_head(&mut out, c, p, &lifts[q]);
        }
        out
    }
}

fn check_coaction(side: &CoSide, c: &Comodule, delta: &[Vector], gamma_j: &Junction, checks: &mut Vec<(String, Outcome)>) {
    let n = side.n();
    let g = c.dim;
    let lab = side.label;
    let shape = delta.len() == g && delta.iter().all(|d| d.len() == g * n);
    if !shape {
        checks.push((format!("{lab}-coaction shape"), Err(format!("expected {g} vectors of length {}", g * n))));
        return;
    }
    let id = Matrix::identity(g);
    let idx = Matrix::identity(n);
    checks.push((
        format!("{lab}-coaction lands in the Takeuchi product"),
        (0..g).try_for_each(|k| {
            for (j, (og, ox)) in side.takeuchi.iter().enumerate() {
                let d = crate::linalg::sub_vec(&apply2(og, &idx, &delta[k]), &apply2(&id, ox, &delta[k]));
                let q = side.gamma.project(&d);
                if !is_zero_vec(&q) {
                    return Err(format!("on basis {k}, base element {j}: defect {}", fmt_vec(&q)));
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        format!("{lab}-coaction is a bimodule map"),
        (0..g).try_for_each(|k| {
            for (j, (og, ox)) in side.bimod.iter().enumerate() {
                let lhs = side.gamma.project(&coact(delta, &og.column(k)));
                let rhs = side.gamma.project(&apply2(&id, ox, &delta[k]));
                cmp(&format!("on basis {k}, operator {j}"), &lhs, &rhs)?;
            }
            Ok(())
        }),
    ));
    let chain = TensorChain::new(&[g, n, n], &[gamma_j.clone(), side.coalg.clone()]);
    checks.push((
        format!("{lab}-coaction coassociative"),
        (0..g).try_for_each(|k| {
            let lhs = chain.project(&side.delta_left(delta, &delta[k]));
            let rhs = chain.project(&side.delta_right(&delta[k], &side.lifts));
            cmp(&format!("on basis {k}"), &lhs, &rhs)
        }),
    ));
    checks.push((
        format!("{lab}-coaction counital"),
        (0..g).try_for_each(|k| {
            let mut out = zero_vec(g);
            for (p, q, x) in terms2(&delta[k], n) {
                let e = side.eps.column(q);
                let op = lin_ops(g, &side.counit, &e);
                axpy(&mut out, x, &op.column(p));
            }
            cmp(&format!("on basis {k}"), &out, &unit_vec(g, k))
        }),
    ));
}

/// Structure shared by every comodule check of one full Hopf algebroid and
/// one underlying bimodule.
pub struct ComoduleEnv<'a> {
    h: &'a FullHopfAlgebroid,
    base: FiniteStarAlgebra,
}

impl<'a> ComoduleEnv<'a> {
    pub fn new(h: &'a FullHopfAlgebroid) -> Self {
        ComoduleEnv { h, base: h.derived_right().base.clone() }
    }

    fn gamma_junctions(&self, c: &Comodule) -> (Junction, Junction) {
        let l = &self.h.left;
        let r = self.h.derived_right();
        let b = l.base_dim();
        let jl = Junction::new(c.left_act.clone(), (0..b).map(|k| l.total.left_mul_matrix(&l.s.column(k))).collect());
        let jr = Junction::new(c.right_act.clone(), (0..b).map(|k| r.total.right_mul_matrix(&r.t.column(k))).collect());
        (jl, jr)
    }

    /// Every axiom of a right comodule of the full Hopf algebroid, as named outcomes.
    pub fn checks(&self, c: &Comodule) -> Vec<(String, Outcome)> {
        let l = &self.h.left;
        let r = self.h.derived_right();
        let n = l.dim();
        let g = c.dim;
        let mut out = Vec::new();
        let b = self.base.dim();
        let shapes = c.left_act.len() == b
            && c.right_act.len() == b
            && c.left_act.iter().chain(&c.right_act).all(|m| m.rows() == g && m.cols() == g);
        if !shapes {
            out.push(("bimodule shape".into(), Err(format!("expected {b} operators of size {g}x{g} per side"))));
            return out;
        }
        out.push(("underlying A-bimodule".into(), check_bimodule(&self.base, g, &c.left_act, &c.right_act)));
        let (jl, jr) = self.gamma_junctions(c);
        let sl = side_l(l, c);
        let sr = side_r(r, c);
        check_coaction(&sl, c, &c.delta_l, &jl, &mut out);
        check_coaction(&sr, c, &c.delta_r, &jr, &mut out);
        if out.iter().any(|(name, o)| o.is_err() && name.contains("shape")) {
            return out;
        }
        // (id (x)_B Delta_R) delta_L = (delta_L (x)_A id) delta_R in Gamma (x)_B L (x)_A R
        let c1 = TensorChain::new(&[g, n, n], &[jl.clone(), r.junction()]);
        out.push((
            "(id (x) Delta_R) delta_L = (delta_L (x) id) delta_R".into(),
            (0..g).try_for_each(|k| {
                let lhs = c1.project(&sl.delta_right(&c.delta_l[k], &sr.lifts));
                let rhs = c1.project(&sr.delta_left(&c.delta_l, &c.delta_r[k]));
                cmp(&format!("on basis {k}"), &lhs, &rhs)
            }),
        ));
        let c2 = TensorChain::new(&[g, n, n], &[jr, sl.coalg.clone()]);
        out.push((
            "(id (x) Delta_L) delta_R = (delta_R (x) id) delta_L".into(),
            (0..g).try_for_each(|k| {
                let lhs = c2.project(&sr.delta_right(&c.delta_r[k], &sl.lifts));
                let rhs = c2.project(&sl.delta_left(&c.delta_r, &c.delta_l[k]));
                cmp(&format!("on basis {k}"), &lhs, &rhs)
            }),
        ));
        out
    }

    pub fn is_comodule(&self, c: &Comodule) -> bool {
        self.checks(c).iter().all(|(_, o)| o.is_ok())
    }
}

/// Comodule axioms for `c` and, when the algebroid has a star, the conjugate
/// comodule with its coherence maps.
pub fn verify_comodule_bar(h: &FullHopfAlgebroid, c: &Comodule) -> Report {
    let mut rep = Report::new(format!("comodule bar {} / {}", c.name, h.name()));
    rep.dim("comodule", c.dim);
    let env = ComoduleEnv::new(h);
    let checks = env.checks(c);
    let ok = checks.iter().all(|(_, o)| o.is_ok());
    for (name, o) in checks {
        rep.record(name, o);
    }
    if !ok {
        return rep;
    }
    let (Some(star), Some(bstar)) = (h.star.as_ref(), h.left.base.star_matrix()) else {
        rep.note("no star structure: conjugate comodule not built");
        return rep;
    };
    let l = &h.left;
    let r = h.derived_right();
    let n = l.dim();
    let g = c.dim;
    let cc = c.conjugate(star, bstar);
    // overline(rho (x)_B X) -> overline(rho) (x)_A X* and the mirror map
    let (jl, jr) = env.gamma_junctions(c);
    let (cjl, cjr) = env.gamma_junctions(&cc);
    let src_l = BalancedTensor::new(g, n, &jl);
    let src_r = BalancedTensor::new(g, n, &jr);
    let dst_r = BalancedTensor::new(g, n, &cjr);
    let dst_l = BalancedTensor::new(g, n, &cjl);
    let id = Matrix::identity(g);
    for (label, src, dst) in [("overline (x) star : Gamma (x)_B L -> conj (x)_A R", &src_l, &dst_r), (
        "overline (x) star : Gamma (x)_A R -> conj (x)_B L",
        &src_r,
        &dst_l,
    )] {
        rep.record(
            format!("{label} well defined"),
            src.quotient.relations().sparse_rows().iter().enumerate().try_for_each(|(k, row)| {
                let img = dst.project(&apply2(&id, star, &conj_vec(&to_dense(g * n, row))));
                if is_zero_vec(&img) {
                    Ok(())
                } else {
                    Err(format!("relation {k} maps to {}", fmt_vec(&img)))
                }
            }),
        );
    }
    for (name, o) in env.checks(&cc) {
        rep.record(format!("conjugate: {name}"), o);
    }
    rep.record("bb is colinear", {
        let back = cc.conjugate(star, bstar);
        (0..g).try_for_each(|k| {
            cmp(&format!("delta_L on basis {k}"), &src_l.project(&back.delta_l[k]), &src_l.project(&c.delta_l[k]))?;
            cmp(&format!("delta_R on basis {k}"), &src_r.project(&back.delta_r[k]), &src_r.project(&c.delta_r[k]))
        })
        .and_then(|_| {
            (0..env.base.dim()).try_for_each(|k| {
                cmp_mat(&format!("left action of a{k}"), &back.left_act[k], &c.left_act[k])?;
                cmp_mat(&format!("right action of a{k}"), &back.right_act[k], &c.right_act[k])
            })
        })
    });
    rep.record("Upsilon is R-colinear on Gamma (x)_A Gamma", upsilon_colinear(r, star, c, &cc, &jr, &cjr));
    rep
}

/// `delta_R(eta-bar (x) rho-bar)` against `(Upsilon (x) star)` applied to the
/// conjugate of `delta_L(rho (x) eta)`.
fn upsilon_colinear(
    r: &RightBialgebroid,
    star: &Matrix,
    c: &Comodule,
    cc: &Comodule,
    _jr: &Junction,
    cjr: &Junction,
) -> Outcome {
    let n = r.dim();
    let g = c.dim;
    let pair = Junction::new(cc.right_act.clone(), cc.left_act.clone());
    let chain = TensorChain::new(&[g, g, n], &[pair, cjr.clone()]);
    let prod = |p: usize, q: usize| to_dense(n, r.total.product(p, q));
    for a in 0..g {
        for b in 0..g {
            // lhs: the tensor coaction of conj(Gamma) (x) conj(Gamma) on e_b (x) e_a
            let mut lhs = zero_vec(g * g * n);
            for (p, q, x) in terms2(&cc.delta_r[b], n) {
                for (s, t, y) in terms2(&cc.delta_r[a], n) {
                    let xy = x * y;
                    let base = (p * g + s) * n;
                    for (k, z) in prod(q, t).iter().enumerate() {
                        if !z.is_zero() {
                            lhs[base + k] += &(&xy * z);
                        }
                    }
                }
            }
            let mut rhs = zero_vec(g * g * n);
            for (p, q, x) in terms2(&c.delta_l[a], n) {
                for (s, t, y) in terms2(&c.delta_l[b], n) {
                    let xy = (x * y).conj();
                    let base = (s * g + p) * n;
                    for (k, z) in prod(q, t).iter().enumerate() {
                        if !z.is_zero() {
                            let w = &xy * &z.conj();
                            for j in 0..n {
                                let m = star.get(j, k);
                                if !m.is_zero() {
                                    rhs[base + j] += &(&w * m);
                                }
                            }
                        }
                    }
                }
            }
            cmp(&format!("on ({a}, {b})"), &chain.project(&lhs), &chain.project(&rhs))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Yetter-Drinfeld modules

/// A right module of the right bialgebroid that is also a right comodule of
/// the full Hopf algebroid; `action[i]` is `rho -> rho <| e_i`.
#[derive(Clone, Debug)]
pub struct YdModule {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
    pub delta_l: Vec<Vector>,
    pub delta_r: Vec<Vector>,
}

impl YdModule {
    pub fn act(&self, x: &[Q]) -> Matrix {
        lin_ops(self.dim, &self.action, x)
    }

    /// Underlying comodule, with `a.rho.b = rho <| t_R(a) s_R(b)`.
    pub fn comodule(&self, r: &RightBialgebroid) -> Comodule {
        let b = r.base_dim();
        Comodule {
            name: self.name.clone(),
            dim: self.dim,
            left_act: (0..b).map(|k| self.act(&r.t.column(k))).collect(),
            right_act: (0..b).map(|k| self.act(&r.s.column(k))).collect(),
            delta_l: self.delta_l.clone(),
            delta_r: self.delta_r.clone(),
        }
    }

    /// `overline(rho) <| X = overline(rho <| S^-1(X*))` with the conjugate coactions.
    pub fn conjugate(&self, h: &FullHopfAlgebroid, star: &Matrix, base_star: &Matrix) -> Self {
        let tw = h.antipode_inv.mul(star);
        let action = (0..tw.cols()).map(|i| self.act(&tw.column(i)).conj()).collect();
        let cc = self.comodule(h.derived_right()).conjugate(star, base_star);
        YdModule { name: format!("conj({})", self.name), dim: self.dim, action, delta_l: cc.delta_l, delta_r: cc.delta_r }
    }
}

pub fn check_right_module(r: &RightBialgebroid, dim: usize, action: &[Matrix]) -> Outcome {
    let n = r.dim();
    if action.len() != n || action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
        return Err(format!("expected {n} operators of size {dim}x{dim}"));
    }
    cmp_mat("unit", &lin_ops(dim, action, r.total.unit()), &Matrix::identity(dim))?;
    for i in 0..n {
        for j in 0..n {
            let prod = to_dense(n, r.total.product(i, j));
            cmp_mat(&format!("e{i} e{j}"), &action[j].mul(&action[i]), &lin_ops(dim, action, &prod))?;
        }
    }
    Ok(())
}

/// `sum rho[0] <| Y (x) S(P) rho[1] Z` where `outer = P (x) W` and `inner(W) = Y (x) Z`.
fn yd_form(h: &FullHopfAlgebroid, y: &YdModule, outer: &[Q], inner: &[Vector], coaction: &[Vector], a: usize) -> Vector {
    let n = h.dim();
    let alg = h.total();
    let mut out = zero_vec(y.dim * n);
    for (p, q, c) in terms2(outer, n) {
        let sp = h.antipode.column(p);
        for (rr, u, d) in terms2(&inner[q], n) {
            let cd = c * d;
            for (x, w, f) in terms2(&coaction[a], n) {
                let right = alg.mul3(&sp, &unit_vec(n, w), &unit_vec(n, u));
                crate::tensor::add_kron(&mut out, &(&cd * f), &y.action[rr].column(x), &right);
            }
        }
    }
    out
}

/// The raw compatibility `(rho <| X[2])[0] (x) X[1] (rho <| X[2])[1] =
/// rho[0] <| X[1] (x) rho[1] X[2]` on every basis pair.
fn yd_raw(h: &FullHopfAlgebroid, y: &YdModule, gamma: &BalancedTensor) -> Outcome {
    let r = h.derived_right();
    let n = r.dim();
    let alg = &r.total;
    for i in 0..n {
        let lift = r.delta_lift_basis(i);
        for a in 0..y.dim {
            let mut lhs = zero_vec(y.dim * n);
            let mut rhs = zero_vec(y.dim * n);
            for (p, q, c) in terms2(lift, n) {
                let v = coact(&y.delta_r, &y.action[q].column(a));
                for (x, w, d) in terms2(&v, n) {
                    let prod = alg.mul(&unit_vec(n, p), &unit_vec(n, w));
                    crate::tensor::add_kron(&mut lhs, &(c * d), &unit_vec(y.dim, x), &prod);
                }
                for (x, w, d) in terms2(&y.delta_r[a], n) {
                    let prod = alg.mul(&unit_vec(n, w), &unit_vec(n, q));
                    crate::tensor::add_kron(&mut rhs, &(c * d), &y.action[p].column(x), &prod);
                }
            }
            cmp(&format!("X = e{i}, rho = {a}"), &gamma.project(&lhs), &gamma.project(&rhs))?;
        }
    }
    Ok(())
}

/// `sigma(rho (x) eta) = eta[0] (x) rho <| eta[1]` on an ambient vector.
fn sigma(y: &YdModule, n: usize, v: &[Q]) -> Vector {
    let g = y.dim;
    let mut out = zero_vec(g * g);
    for (a, b, c) in terms2(v, g) {
        for (p, q, d) in terms2(&y.delta_r[b], n) {
            crate::tensor::add_kron(&mut out, &(c * d), &unit_vec(g, p), &y.action[q].column(a));
        }
    }
    out
}

/// `sigma^-1(eta (x) rho) = rho <| S^-1(eta(1)) (x) eta(0)`.
fn sigma_inv(h: &FullHopfAlgebroid, y: &YdModule, v: &[Q]) -> Vector {
    let g = y.dim;
    let n = h.dim();
    let mut out = zero_vec(g * g);
    for (a, b, c) in terms2(v, g) {
        for (p, q, d) in terms2(&y.delta_l[a], n) {
            let op = y.act(&h.antipode_inv.column(q));
            crate::tensor::add_kron(&mut out, &(c * d), &op.column(b), &unit_vec(g, p));
        }
    }
    out
}

fn well_defined(src: &BalancedTensor, dst: &BalancedTensor, f: impl Fn(&[Q]) -> Vector) -> Outcome {
    let amb = src.dm * src.dn;
    src.quotient.relations().sparse_rows().iter().enumerate().try_for_each(|(k, row)| {
        let img = dst.project(&f(&to_dense(amb, row)));
        if is_zero_vec(&img) {
            Ok(())
        } else {
            Err(format!("relation {k} maps to {}", fmt_vec(&img)))
        }
    })
}

fn yd_checks(h: &FullHopfAlgebroid, y: &YdModule) -> Vec<(String, Outcome)> {
    let r = h.derived_right();
    let l = &h.left;
    let n = r.dim();
    let mut out = vec![("right module".to_string(), check_right_module(r, y.dim, &y.action))];
    if out[0].1.is_err() {
        return out;
    }
    let c = y.comodule(r);
    let env = ComoduleEnv::new(h);
    let co = env.checks(&c);
    let co_ok = co.iter().all(|(_, o)| o.is_ok());
    out.extend(co.into_iter().map(|(k, o)| (format!("comodule: {k}"), o)));
    if !co_ok {
        return out;
    }
    let (jl, jr) = env.gamma_junctions(&c);
    let gl = BalancedTensor::new(y.dim, n, &jl);
    let gr = BalancedTensor::new(y.dim, n, &jr);
    out.push(("Yetter-Drinfeld condition".into(), yd_raw(h, y, &gr)));
    let rlifts: Vec<Vector> = (0..n).map(|i| r.delta_lift_basis(i).clone()).collect();
    let llifts: Vec<Vector> = (0..n).map(|i| l.delta_lift_basis(i).clone()).collect();
    out.push((
        "delta_R(rho <| X) = rho[0] <| X(2)[1] (x) S(X(1)) rho[1] X(2)[2]".into(),
        (0..n).try_for_each(|i| {
            (0..y.dim).try_for_each(|a| {
                let lhs = gr.project(&coact(&y.delta_r, &y.action[i].column(a)));
                let rhs = gr.project(&yd_form(h, y, &llifts[i], &rlifts, &y.delta_r, a));
                cmp(&format!("X = e{i}, rho = {a}"), &lhs, &rhs)
            })
        }),
    ));
    out.push((
        "delta_L(rho <| X) = rho(0) <| X[2](1) (x) S(X[1]) rho(1) X[2](2)".into(),
        (0..n).try_for_each(|i| {
            (0..y.dim).try_for_each(|a| {
                let lhs = gl.project(&coact(&y.delta_l, &y.action[i].column(a)));
                let rhs = gl.project(&yd_form(h, y, &rlifts[i], &llifts, &y.delta_l, a));
                cmp(&format!("X = e{i}, rho = {a}"), &lhs, &rhs)
            })
        }),
    ));
    let tt = BalancedTensor::new(y.dim, y.dim, &Junction::new(c.right_act.clone(), c.left_act.clone()));
    out.push(("braiding well defined".into(), well_defined(&tt, &tt, |v| sigma(y, n, v))));
    out.push(("inverse braiding well defined".into(), well_defined(&tt, &tt, |v| sigma_inv(h, y, v))));
    let round = |f: &dyn Fn(&[Q]) -> Vector| -> Outcome {
        (0..tt.dim()).try_for_each(|k| {
            let e = unit_vec(tt.dim(), k);
            cmp(&format!("class {k}"), &tt.project(&f(&tt.section(&e))), &e)
        })
    };
    out.push(("sigma^-1 sigma = id".into(), round(&|v| sigma_inv(h, y, &sigma(y, n, v)))));
    out.push(("sigma sigma^-1 = id".into(), round(&|v| sigma(y, n, &sigma_inv(h, y, v)))));
    out
}

/// Yetter-Drinfeld axioms, braiding and, with a star, the conjugate object
/// and the anti-real square `Upsilon^-1 sigma = overline(sigma^-1) Upsilon^-1`.
pub fn verify_yd_module(h: &FullHopfAlgebroid, y: &YdModule) -> Report {
    let mut rep = Report::new(format!("Yetter-Drinfeld {} / {}", y.name, h.name()));
    rep.dim("module", y.dim);
    let checks = yd_checks(h, y);
    let ok = checks.iter().all(|(_, o)| o.is_ok());
    for (k, o) in checks {
        rep.record(k, o);
    }
    if !ok {
        return rep;
    }
    let (Some(star), Some(bstar)) = (h.star.as_ref(), h.left.base.star_matrix()) else {
        rep.note("no star structure: conjugate object not built");
        return rep;
    };
    let yc = y.conjugate(h, star, bstar);
    for (k, o) in yd_checks(h, &yc) {
        rep.record(format!("conjugate: {k}"), o);
    }
    let r = h.derived_right();
    let n = r.dim();
    let g = y.dim;
    let c = y.comodule(r);
    let tt = BalancedTensor::new(g, g, &Junction::new(c.right_act.clone(), c.left_act.clone()));
    rep.record(
        "anti-real braiding",
        (0..g * g).try_for_each(|k| {
            let v = unit_vec(g * g, k);
            let lhs = tt.project(&flip(&conj_vec(&sigma(&yc, n, &v)), g, g));
            let rhs = tt.project(&sigma_inv(h, y, &flip(&v, g, g)));
            cmp(&format!("on ({}, {})", k / g, k % g), &lhs, &rhs)
        }),
    );
    rep
}

/// Result of the exhaustive search in [`search_base_yd`].
#[derive(Clone, Debug)]
pub struct YdSearch {
    pub candidates: usize,
    pub right_coactions: usize,
    pub found: Vec<YdModule>,
    /// Set when the candidate space exceeds [`YD_SEARCH_CAP`]; nothing is searched then.
    pub truncated: bool,
}

pub const YD_SEARCH_CAP: usize = 1 << 16;

/// Exhaustive search for Yetter-Drinfeld structures on the base, with action
/// `a <| X = eps_R(t_R(a) X)` and coactions `a -> 1 (x) phi(a)`, where every
/// entry of `phi` ranges over `coeffs`.
pub fn search_base_yd(h: &FullHopfAlgebroid, coeffs: &[Q], limit: usize) -> YdSearch {
    let r = h.derived_right();
    let n = r.dim();
    let a = r.base.clone();
    let b = a.dim();
    let action: Vec<Matrix> = (0..n)
        .map(|i| {
            let cols: Vec<Vector> =
                (0..b).map(|k| r.eps_of(&r.total.mul(&r.t.column(k), &unit_vec(n, i)))).collect();
            Matrix::from_columns(b, &cols)
        })
        .collect();
    let mut res = YdSearch { candidates: 0, right_coactions: 0, found: Vec::new(), truncated: false };
    if check_right_module(r, b, &action).is_err() {
        return res;
    }
    let mut y = YdModule { name: "base".into(), dim: b, action, delta_l: vec![], delta_r: vec![] };
    let c0 = y.comodule(r);
    let (_, jr) = ComoduleEnv::new(h).gamma_junctions(&c0);
    let sr = side_r(r, &c0);
    let gr = BalancedTensor::new(b, n, &jr);
    let coactions = |idx: usize| -> Vec<Vector> {
        let mut idx = idx;
        (0..b)
            .map(|_| {
                let col: Vector = (0..n)
                    .map(|_| {
                        let x = coeffs[idx % coeffs.len()].clone();
                        idx /= coeffs.len();
                        x
                    })
                    .collect();
                crate::linalg::kron_vec(a.unit(), &col)
            })
            .collect()
    };
    let total = match coeffs.len().checked_pow((b * n) as u32) {
        Some(t) if t <= YD_SEARCH_CAP => t,
        _ => {
            res.truncated = true;
            return res;
        }
    };
    let mut rights = Vec::new();
    for k in 0..total {
        res.candidates += 1;
        let d = coactions(k);
        let mut checks = Vec::new();
        check_coaction(&sr, &c0, &d, &jr, &mut checks);
        if checks.iter().all(|(_, o)| o.is_ok()) {
            y.delta_r = d.clone();
            if yd_raw(h, &y, &gr).is_ok() {
                rights.push(d);
            }
        }
    }
    res.right_coactions = rights.len();
    for dr in rights {
        for k in 0..total {
            let dl = coactions(k);
            let cand = YdModule {
                name: format!("base YD #{}", res.found.len()),
                dim: b,
                action: y.action.clone(),
                delta_l: dl,
                delta_r: dr.clone(),
            };
            if yd_checks(h, &cand).iter().all(|(_, o)| o.is_ok()) {
                res.found.push(cand);
                if res.found.len() >= limit {
                    return res;
                }
            }
        }
    }
    res
}
