//! Matrix representations of presentations on bimodules with connections,
//! the joint relations between the left and right structures, and the
//! conjugate module.

use crate::bimodule::Bimodule;
use crate::calculus::{connection_tensors, BimoduleConnection};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, zero_vec, Matrix, Vector};
use crate::report::{Outcome, Report};
use crate::scalar::Q;

use super::families::{t_name, tb_name, x_name, y_name, Biparallel, Enc, Hand};
use super::maps::{phi_map, star_map};
use super::{Elem, Presentation};

#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    pub base: Vec<Matrix>,
    pub letters: Vec<Matrix>,
}

impl Representation {
    pub fn eval(&self, e: &Elem) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in &e.terms {
            let mut acc = self.base[w[0] as usize].clone();
            for pair in w[1..].chunks(2) {
                acc = acc.mul(&self.letters[pair[0] as usize]);
                if pair[1] != 0 {
                    acc = acc.mul(&self.base[pair[1] as usize]);
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Every instance relation acts as zero; the witness names the first
    /// failing relation.
    pub fn check_relations(&self, p: &Presentation) -> Outcome {
        for rel in p.relations.iter().filter(|r| r.combo.is_none()) {
            let m = self.eval(&rel.elem);
            if !m.is_zero() {
                return Err(format!("{} [{}] acts by a nonzero matrix", rel.label, p.families[rel.family]));
            }
        }
        Ok(())
    }
}

fn from_columns(dim: usize, f: impl Fn(usize) -> Vector) -> Matrix {
    Matrix::from_columns(dim, &(0..dim).map(f).collect::<Vec<_>>())
}

struct Actions<'a> {
    bp: &'a Biparallel,
    e: &'a Bimodule,
    nabla: &'a Matrix,
    sigma: &'a Matrix,
    sigma_inv: Matrix,
    oe: crate::tensor::BalancedTensor,
    eo: crate::tensor::BalancedTensor,
}

impl<'a> Actions<'a> {
    fn new(bp: &'a Biparallel, k: &'a BimoduleConnection) -> Result<Self> {
        let t = connection_tensors(&bp.calc.fodc(), &k.e)?;
        let sigma_inv = k.inverse_braiding().ok_or_else(|| Error::NotInvertible("sigma".into()))?;
        Ok(Actions { bp, e: &k.e, nabla: &k.nabla, sigma: &k.sigma, sigma_inv, oe: t.oe, eo: t.eo })
    }

    /// `(ev^L (x) id)` on an element of `Omega (x) E`.
    fn ev_left(&self, x: &[Q], q: &[Q]) -> Vector {
        let amb = self.oe.section(q);
        let de = self.e.dim;
        let mut out = zero_vec(de);
        for (idx, c) in amb.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (w, p) = (idx / de, idx % de);
            let a = self.bp.ev_l(x, &self.bp.u(w));
            let v = self.e.act_left(&a).apply(&unit_vec(de, p));
            crate::linalg::axpy(&mut out, c, &v);
        }
        out
    }

    /// `(id (x) ev^R)` on an element of `E (x) Omega`.
    fn ev_right(&self, q: &[Q], y: &[Q]) -> Vector {
        let amb = self.eo.section(q);
        let m = self.bp.omega.dim;
        let de = self.e.dim;
        let mut out = zero_vec(de);
        for (idx, c) in amb.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (p, w) = (idx / m, idx % m);
            let a = self.bp.ev_r(&self.bp.u(w), y);
            let v = self.e.act_right(&a).apply(&unit_vec(de, p));
            crate::linalg::axpy(&mut out, c, &v);
        }
        out
    }

    fn x(&self, x: &[Q]) -> Matrix {
        from_columns(self.e.dim, |p| self.ev_left(x, &self.nabla.column(p)))
    }

    fn xw(&self, x: &[Q], w: &[Q]) -> Matrix {
        from_columns(self.e.dim, |p| {
            let s = self.sigma.apply(&self.eo.project_pair(&unit_vec(self.e.dim, p), w));
            self.ev_left(x, &s)
        })
    }

    fn wy(&self, w: &[Q], y: &[Q]) -> Matrix {
        from_columns(self.e.dim, |p| {
            let s = self.sigma_inv.apply(&self.oe.project_pair(w, &unit_vec(self.e.dim, p)));
            self.ev_right(&s, y)
        })
    }

    fn y(&self, y: &[Q]) -> Matrix {
        from_columns(self.e.dim, |p| self.ev_right(&self.sigma_inv.apply(&self.nabla.column(p)), y))
    }
}

/// Left action of a left-handed presentation on `E`:
/// `x |> e = (ev (x) id)(x (x) nabla e)`,
/// `(x,w) |> e = (ev (x) id)(x (x) sigma(e (x) w))`,
/// `(w,y) |> e = (id (x) ev)(sigma^-1(w (x) e) (x) y)`.
pub fn left_representation(bp: &Biparallel, k: &BimoduleConnection, p: &Presentation) -> Result<Representation> {
    let act = Actions::new(bp, k)?;
    let n = bp.n;
    let base = (0..p.base_dim()).map(|b| k.e.act_left(&bp.e(b / n)).mul(&k.e.act_right(&bp.e(b % n)))).collect();
    let letters = letter_matrices(&act, p);
    Ok(Representation { name: format!("{} on {}", p.name, k.e.name), dim: k.e.dim, base, letters })
}

/// Right action of a right-handed presentation on `E`, as a left action of
/// its opposite: `e <| y = (id (x) ev)(sigma^-1 nabla e (x) y)`,
/// `e <| a = e a`, `e <| underline(a) = a e`.
pub fn right_representation(bp: &Biparallel, k: &BimoduleConnection, p: &Presentation) -> Result<Representation> {
    let act = Actions::new(bp, k)?;
    let n = bp.n;
    let base = (0..p.base_dim()).map(|b| k.e.act_right(&bp.e(b / n)).mul(&k.e.act_left(&bp.e(b % n)))).collect();
    let letters = letter_matrices(&act, p);
    Ok(Representation { name: format!("{} on {}", p.name, k.e.name), dim: k.e.dim, base, letters })
}

fn letter_matrices(act: &Actions, p: &Presentation) -> Vec<Matrix> {
    let bp = act.bp;
    let r = bp.r;
    let mut out = vec![Matrix::zeros(0, 0); p.letters.len()];
    for i in 0..r {
        if p.has_letter(&x_name(i)) {
            out[p.letter(&x_name(i)) as usize] = act.x(&bp.pure(i));
        }
        if p.has_letter(&y_name(i)) {
            out[p.letter(&y_name(i)) as usize] = act.y(&bp.pure(i));
        }
        for j in 0..r {
            if p.has_letter(&t_name(i, j)) {
                out[p.letter(&t_name(i, j)) as usize] = act.xw(&bp.pure(i), &bp.pure(j));
            }
            if p.has_letter(&tb_name(i, j)) {
                out[p.letter(&tb_name(i, j)) as usize] = act.wy(&bp.pure(i), &bp.pure(j));
            }
        }
    }
    out
}

/// The four joint relations between the left action of `il` and the right
/// action of `ir` on the same `E`, over k-bases.
pub fn check_joint_relations(bp: &Biparallel, il: &Presentation, ir: &Presentation, left: &Representation, right: &Representation) -> Report {
    let mut rep = Report::new("joint relations");
    let m = bp.r * bp.n;
    let el = Enc::new(bp, il, Hand::Left);
    let er = Enc::new(bp, ir, Hand::Right);
    let coev_l = bp.coev_l();
    let coev_r = bp.coev_r();
    let lam = |a: &[Q]| left.eval(&el.s(a));
    let rho = |a: &[Q]| right.eval(&er.s(a));
    let dim = left.dim;
    let zero = Matrix::zeros(dim, dim);
    let check = |label: String, lhs: Matrix, rhs: Matrix| -> Outcome {
        if lhs == rhs {
            Ok(())
        } else {
            Err(label)
        }
    };
    let mut k1 = Ok(());
    let mut k4 = Ok(());
    for q in 0..m {
        let y = bp.u(q);
        let mut lhs = zero.clone();
        for (a, b, c) in &coev_l {
            lhs = lhs.add(&right.eval(&er.wy(&bp.u(*a), &y)).mul(&left.eval(&el.x(&bp.u(*b)))).scale(c));
        }
        k1 = k1.and(check(format!("(x_i |> e) <| (w_i, y{q})"), lhs, right.eval(&er.y(&y))));
        for w in 0..m {
            let eta = bp.u(w);
            let mut lhs = zero.clone();
            for (a, b, c) in &coev_l {
                lhs = lhs.add(&right.eval(&er.wy(&bp.u(*a), &y)).mul(&left.eval(&el.xw(&bp.u(*b), &eta))).scale(c));
            }
            k4 = k4.and(check(format!("((x_i, w{w}) |> e) <| (w_i, y{q})"), lhs, rho(&bp.ev_r(&eta, &y))));
        }
    }
    let mut k2 = Ok(());
    let mut k3 = Ok(());
    for p in 0..m {
        let x = bp.u(p);
        let mut lhs = zero.clone();
        for (q, a, c) in &coev_r {
            lhs = lhs.add(&left.eval(&el.xw(&x, &bp.u(*a))).mul(&right.eval(&er.y(&bp.u(*q)))).scale(c));
        }
        k2 = k2.and(check(format!("(x{p}, w_i) |> (e <| y_i)"), lhs, left.eval(&el.x(&x))));
        for w in 0..m {
            let xi = bp.u(w);
            let mut lhs = zero.clone();
            for (q, a, c) in &coev_r {
                lhs = lhs.add(&left.eval(&el.xw(&x, &bp.u(*a))).mul(&right.eval(&er.wy(&xi, &bp.u(*q)))).scale(c));
            }
            k3 = k3.and(check(format!("(x{p}, w_i) |> (e <| (w{w}, y_i))"), lhs, lam(&bp.ev_l(&x, &xi))));
        }
    }
    rep.record("(x_i |> e) <| (w_i, y) = e <| y", k1);
    rep.record("(x, w_i) |> (e <| y_i) = x |> e", k2);
    rep.record("(x, w_i) |> (e <| (v, y_i)) = ev(x, v) e", k3);
    rep.record("((x_i, v) |> e) <| (w_i, y) = e ev(v, y)", k4);
    rep
}

/// `X |> overline(m) = overline(Phi^-1(X^star) |> m)` on generators.
pub fn conjugate_representation(bp: &Biparallel, il: &Presentation, ir: &Presentation, left: &Representation) -> Result<Representation> {
    let star = star_map(bp, il, ir, Hand::Left)?;
    let phi_inv = phi_map(bp, ir, il, Hand::Right);
    let through = |e: &Elem| left.eval(&phi_inv.apply(il, &star.apply(ir, e))).conj();
    let base = (0..il.base_dim()).map(|b| through(&Elem::word(vec![b as u16]))).collect();
    let letters = il.letters.iter().map(|l| through(&il.gen(l))).collect();
    Ok(Representation { name: format!("bar({})", left.name), dim: left.dim, base, letters })
}

/// All of the above for one connection: the left presentations on `E`, the
/// right presentations on `E`, the joint relations and the conjugate.
pub fn verify_module_representation(
    bp: &Biparallel,
    k: &BimoduleConnection,
    lefts: &[&Presentation],
    il: &Presentation,
    ir: &Presentation,
) -> Result<Report> {
    let mut rep = Report::new(format!("representations on {}", k.e.name));
    for p in lefts {
        let rho = left_representation(bp, k, p)?;
        rep.record(format!("{} relations", p.name), rho.check_relations(p));
    }
    let left = left_representation(bp, k, il)?;
    let right = right_representation(bp, k, ir)?;
    rep.record(format!("{} relations", ir.name), right.check_relations(ir));
    rep.absorb("", check_joint_relations(bp, il, ir, &left, &right));
    let bar = conjugate_representation(bp, il, ir, &left)?;
    rep.record(format!("conjugate module: {} relations", il.name), bar.check_relations(il));
    let eb = k.e.conjugate()?;
    let n = bp.n;
    let base_ok = (0..il.base_dim()).all(|b| bar.base[b] == eb.act_left(&bp.e(b / n)).mul(&eb.act_right(&bp.e(b % n))));
    rep.flag("conjugate base action is the conjugate bimodule", base_ok, "base action differs from bar(E)");
    Ok(rep)
}

/// Every target that certifies as zero must act as zero.
pub fn cross_check(p: &Presentation, rho: &Representation, targets: &[Elem], bound: usize) -> Outcome {
    for (k, e) in targets.iter().enumerate() {
        if p.certify(e, bound).is_certified() && !rho.eval(e).is_zero() {
            return Err(format!("target {k} is certified zero but acts nontrivially"));
        }
    }
    Ok(())
}

/// First source relation whose image under `f` acts nontrivially on a
/// verified representation of the target; such an image is nonzero there.
pub fn refute_map(f: &super::maps::GeneratorMap, src: &Presentation, tgt: &Presentation, rho: &Representation) -> Outcome {
    for rel in src.relations.iter().filter(|r| r.combo.is_none()) {
        if !rho.eval(&f.apply(tgt, &rel.elem)).is_zero() {
            return Err(format!("{}({} [{}]) acts nontrivially on {}", f.name, rel.label, src.families[rel.family], rho.name));
        }
    }
    Ok(())
}
