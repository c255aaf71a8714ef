//! The presentations attached to a biparallelisable calculus, with relation
//! families instantiated over the k-bases of the modules involved.
//!
//! Left-handed presentations (`L`, `IL`, `IIL`, `IB`, `IIB`) use the base
//! `A (x) A^op`, index `(k, l)` standing for `e_k underline(e_l)`. The
//! right-handed ones (`R`, `IR`, `IIR`) are stored as opposite algebras so
//! that base elements still collect on the left; their base is
//! `A^op (x) A` with the same index meaning.

use crate::algebra::FiniteStarAlgebra;
use crate::bimodule::{star_transport, Bimodule, DualPair, StarTransport};
use crate::calculus::ParallelisableCalculus;
use crate::error::{Error, Result};
use crate::linalg::{kron_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::scalar::Q;

use super::{Elem, Presentation};

/// Moves the unit to the front of the algebra basis.
pub fn unit_first(p: &ParallelisableCalculus) -> Result<ParallelisableCalculus> {
    let n = p.alg.dim();
    let mut cols: Vec<Vector> = vec![p.alg.unit().clone()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut trial = cols.clone();
        trial.push(unit_vec(n, k));
        if Matrix::from_columns(n, &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    change_calculus_basis(p, &Matrix::from_columns(n, &cols))
}

/// The same calculus in the algebra basis given by the columns of `change`.
pub fn change_calculus_basis(p: &ParallelisableCalculus, change: &Matrix) -> Result<ParallelisableCalculus> {
    let inv = change.inverse().ok_or_else(|| Error::NotInvertible("basis change".into()))?;
    let alg = p.alg.change_basis(change).ok_or_else(|| Error::NotInvertible("basis change".into()))?;
    let conj_op = |m: &Matrix| inv.mul(m).mul(change);
    let n = alg.dim();
    let c = p.c.iter().map(|row| row.iter().map(conj_op).collect()).collect();
    let c_inv = p.c_inv.iter().map(|row| row.iter().map(conj_op).collect()).collect();
    let omega_star = p
        .omega_star
        .iter()
        .map(|w| w.chunks(n).flat_map(|b| inv.apply(b)).collect())
        .collect();
    Ok(ParallelisableCalculus {
        name: p.name.clone(),
        alg,
        rank: p.rank,
        c,
        c_inv,
        del: p.del.iter().map(conj_op).collect(),
        del_r: p.del_r.iter().map(conj_op).collect(),
        omega_star,
        notes: p.notes.clone(),
    })
}

/// Which handedness a presentation has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    L,
    R,
    IL,
    IR,
    IIL,
    IIR,
    IB,
    IIB,
}

impl Which {
    pub const ALL: [Which; 8] = [Which::L, Which::R, Which::IL, Which::IR, Which::IIL, Which::IIR, Which::IB, Which::IIB];

    pub fn hand(self) -> Hand {
        match self {
            Which::R | Which::IR | Which::IIR => Hand::Right,
            _ => Hand::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::L => "L",
            Which::R => "R^op",
            Which::IL => "IL",
            Which::IR => "IR^op",
            Which::IIL => "IIL",
            Which::IIR => "IIR^op",
            Which::IB => "IB",
            Which::IIB => "IIB",
        }
    }

    fn fields(self) -> bool {
        !matches!(self, Which::IB | Which::IIB)
    }

    fn t(self) -> bool {
        self != Which::R
    }

    fn tb(self) -> bool {
        self != Which::L
    }

    fn inverse_duality(self) -> bool {
        !matches!(self, Which::L | Which::R)
    }

    fn pivotal(self) -> bool {
        matches!(self, Which::IIL | Which::IIR | Which::IIB)
    }
}

pub fn x_name(i: usize) -> String {
    format!("x{i}")
}
pub fn y_name(i: usize) -> String {
    format!("y{i}")
}
pub fn t_name(i: usize, j: usize) -> String {
    format!("t{i}{j}")
}
pub fn tb_name(i: usize, j: usize) -> String {
    format!("tb{i}{j}")
}

/// A biparallelisable calculus in a unit-first basis with its vector
/// fields, star transport and (when available) pivotal identification.
#[derive(Clone, Debug)]
pub struct Biparallel {
    pub calc: ParallelisableCalculus,
    pub n: usize,
    pub r: usize,
    pub omega: Bimodule,
    pub d: Matrix,
    /// `X^R`, left coordinates `e_k x_i`.
    pub xr: DualPair,
    /// `X^L`, right coordinates `y_j e_k`.
    pub yl: DualPair,
    pub star: Option<StarTransport>,
    /// `X^R -> X^L`, `x_i -> y_i`, when it is a bimodule map.
    pub ident: Option<Matrix>,
    pub ident_inv: Option<Matrix>,
}

impl Biparallel {
    pub fn new(p: &ParallelisableCalculus) -> Result<Self> {
        let calc = unit_first(p)?;
        let (n, r) = (calc.alg.dim(), calc.rank);
        let omega = calc.omega();
        let d = calc.d_matrix();
        let xr = calc.right_fields();
        let yl = calc.left_fields();
        let star = if omega.star.is_some() && calc.alg.has_star() { Some(star_transport(&xr, &yl)?) } else { None };
        let (ident, ident_inv) = match calc.pivotal() {
            Ok(_) => {
                let m = calc.field_identification();
                let inv = m.inverse();
                (Some(m), inv)
            }
            Err(_) => (None, None),
        };
        Ok(Biparallel { calc, n, r, omega, d, xr, yl, star, ident, ident_inv })
    }

    pub fn alg(&self) -> &FiniteStarAlgebra {
        &self.calc.alg
    }

    pub fn one(&self) -> Vector {
        self.alg().unit().clone()
    }

    pub fn e(&self, k: usize) -> Vector {
        unit_vec(self.n, k)
    }

    /// Module basis vector (all modules here have dimension `r n`).
    pub fn u(&self, p: usize) -> Vector {
        unit_vec(self.r * self.n, p)
    }

    /// `w_i`, `x_i` or `y_i` in coordinates.
    pub fn pure(&self, i: usize) -> Vector {
        self.u(i * self.n)
    }

    fn block<'a>(&self, v: &'a [Q], i: usize) -> &'a [Q] {
        &v[i * self.n..(i + 1) * self.n]
    }

    /// Coefficients `b_k` with `w = sum w_k b_k`.
    pub fn right_coords(&self, w: &[Q]) -> Vec<Vector> {
        (0..self.r)
            .map(|k| {
                let mut b = zero_vec(self.n);
                for i in 0..self.r {
                    crate::linalg::axpy(&mut b, &Q::one(), &self.calc.c_inv[k][i].apply(self.block(w, i)));
                }
                b
            })
            .collect()
    }

    pub fn ev_l(&self, x: &[Q], w: &[Q]) -> Vector {
        self.xr.eval(x, w)
    }

    pub fn ev_r(&self, w: &[Q], y: &[Q]) -> Vector {
        self.yl.eval(y, w)
    }

    pub fn coev_l(&self) -> Vec<(usize, usize, Q)> {
        terms(&self.xr.coev, self.r * self.n)
    }

    pub fn coev_r(&self) -> Vec<(usize, usize, Q)> {
        terms(&self.yl.coev, self.r * self.n)
    }

    pub fn star_op(&self) -> Result<&StarTransport> {
        self.star.as_ref().ok_or_else(|| Error::Precondition("calculus has no star".into()))
    }

    pub fn form_star(&self, w: &[Q]) -> Vector {
        self.omega.apply_star(w).expect("star calculus")
    }

    pub fn phi(&self, x: &[Q]) -> Result<Vector> {
        let m = self.ident.as_ref().ok_or_else(|| Error::Precondition("no pivotal identification".into()))?;
        Ok(m.apply(x))
    }

    pub fn phi_inv(&self, y: &[Q]) -> Result<Vector> {
        let m = self.ident_inv.as_ref().ok_or_else(|| Error::Precondition("no pivotal identification".into()))?;
        Ok(m.apply(y))
    }

    pub fn base_algebra(&self, hand: Hand) -> FiniteStarAlgebra {
        let a = self.alg();
        match hand {
            Hand::Left => a.tensor(&a.opposite()),
            Hand::Right => a.opposite().tensor(a),
        }
    }

    pub fn letters(&self, which: Which) -> Vec<String> {
        let r = self.r;
        let mut out = vec![];
        if which.fields() {
            for i in 0..r {
                out.push(if which.hand() == Hand::Left { x_name(i) } else { y_name(i) });
            }
        }
        if which.t() {
            for i in 0..r {
                for j in 0..r {
                    out.push(t_name(i, j));
                }
            }
        }
        if which.tb() {
            for i in 0..r {
                for j in 0..r {
                    out.push(tb_name(i, j));
                }
            }
        }
        out
    }
}

fn terms(v: &[Q], m: usize) -> Vec<(usize, usize, Q)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k / m, k % m, c.clone())).collect()
}

/// Encoders of module elements as elements of a presentation.
pub struct Enc<'a> {
    pub bp: &'a Biparallel,
    pub pres: &'a Presentation,
    pub hand: Hand,
}

impl<'a> Enc<'a> {
    pub fn new(bp: &'a Biparallel, pres: &'a Presentation, hand: Hand) -> Self {
        Enc { bp, pres, hand }
    }

    fn st(&self, a: &[Q], b: &[Q]) -> Vector {
        kron_vec(a, b)
    }

    /// The base element `a` (left-handed `s_L(a)`, right-handed `s_R(a)`).
    pub fn s(&self, a: &[Q]) -> Elem {
        Elem::base(&self.st(a, &self.bp.one()))
    }

    /// The base element `underline(a)`.
    pub fn t(&self, a: &[Q]) -> Elem {
        Elem::base(&self.st(&self.bp.one(), a))
    }

    /// `sum a_i x_i` for `x` in left coordinates.
    pub fn x(&self, x: &[Q]) -> Elem {
        let mut e = Elem::zero();
        for i in 0..self.bp.r {
            let g = self.pres.letter(&x_name(i));
            e.add_scaled(&Elem::based_letter(&self.st(self.bp.block(x, i), &self.bp.one()), g), &Q::one());
        }
        e
    }

    /// `sum y_j b_j` for `y` in right coordinates.
    pub fn y(&self, y: &[Q]) -> Elem {
        let mut e = Elem::zero();
        for j in 0..self.bp.r {
            let g = self.pres.letter(&y_name(j));
            e.add_scaled(&Elem::based_letter(&self.st(self.bp.block(y, j), &self.bp.one()), g), &Q::one());
        }
        e
    }

    /// The generator `(x, w)`.
    pub fn xw(&self, x: &[Q], w: &[Q]) -> Elem {
        let wr = self.bp.right_coords(w);
        let mut e = Elem::zero();
        for i in 0..self.bp.r {
            let xi = self.bp.block(x, i);
            if xi.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (j, wj) in wr.iter().enumerate() {
                let g = self.pres.letter(&t_name(i, j));
                let b = match self.hand {
                    Hand::Left => self.st(xi, wj),
                    Hand::Right => self.st(wj, xi),
                };
                e.add_scaled(&Elem::based_letter(&b, g), &Q::one());
            }
        }
        e
    }

    /// The generator `(w, y)`.
    pub fn wy(&self, w: &[Q], y: &[Q]) -> Elem {
        let mut e = Elem::zero();
        for i in 0..self.bp.r {
            let wi = self.bp.block(w, i);
            if wi.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j in 0..self.bp.r {
                let g = self.pres.letter(&tb_name(i, j));
                let yj = self.bp.block(y, j);
                let b = match self.hand {
                    Hand::Left => self.st(wi, yj),
                    Hand::Right => self.st(yj, wi),
                };
                e.add_scaled(&Elem::based_letter(&b, g), &Q::one());
            }
        }
        e
    }
}

/// Builds one of the presentations, detects its straightening rules and
/// prepares the residual closers.
pub fn build(bp: &Biparallel, which: Which) -> Result<Presentation> {
    if which.pivotal() && bp.ident.is_none() {
        return Err(Error::Precondition(format!("{} needs a pivotal identification x_i <-> y_i", which.name())));
    }
    let hand = which.hand();
    let mut pres = Presentation::new(
        format!("{}({})", which.name(), bp.calc.name),
        bp.base_algebra(hand),
        bp.n,
        bp.letters(which),
    );
    let (n, m) = (bp.n, bp.r * bp.n);
    let swap = hand == Hand::Right;
    // each instance: (label, elem, pure)
    let add_family = |pres: &mut Presentation, name: &str, make: &dyn Fn(&Enc) -> Vec<(String, Elem, bool)>| {
        let items = make(&Enc::new(bp, pres, hand));
        let fam = pres.family(name);
        for (label, elem, pure) in items {
            pres.push(fam, label, elem, pure);
        }
    };
    let is_pure = |p: usize| p % n == 0;
    let sx = |enc: &Enc, a: &[Q]| if swap { enc.t(a) } else { enc.s(a) };
    let tx = |enc: &Enc, a: &[Q]| if swap { enc.s(a) } else { enc.t(a) };

    if which.t() {
        let fams: [(&str, u8); 4] = [
            ("a (x,w) = (ax,w)", 0),
            ("(x,w) a = (xa,w)", 1),
            ("a_ (x,w) = (x,wa)", 2),
            ("(x,w) a_ = (x,aw)", 3),
        ];
        for (name, kind) in fams {
            add_family(&mut pres, name, &|enc| {
                let mut out = vec![];
                for a in 0..n {
                    let av = bp.e(a);
                    for p in 0..m {
                        for w in 0..m {
                            let (x, xi) = (bp.u(p), bp.u(w));
                            let g = enc.xw(&x, &xi);
                            let e = match kind {
                                0 => enc.pres.mul(&sx(enc, &av), &g).sub(&enc.xw(&bp.xr.dual.act_left(&av).apply(&x), &xi)),
                                1 => enc.pres.mul(&g, &sx(enc, &av)).sub(&enc.xw(&bp.xr.dual.act_right(&av).apply(&x), &xi)),
                                2 => enc.pres.mul(&tx(enc, &av), &g).sub(&enc.xw(&x, &bp.omega.act_right(&av).apply(&xi))),
                                _ => enc.pres.mul(&g, &tx(enc, &av)).sub(&enc.xw(&x, &bp.omega.act_left(&av).apply(&xi))),
                            };
                            out.push((format!("a{a} x{p} w{w}"), e, is_pure(p) && is_pure(w)));
                        }
                    }
                }
                out
            });
        }
    }
    if which.tb() {
        let fams: [(&str, u8); 4] = [
            ("(w,y) a_ = (w,ay)", 0),
            ("a_ (w,y) = (w,ya)", 1),
            ("(w,y) a = (wa,y)", 2),
            ("a (w,y) = (aw,y)", 3),
        ];
        for (name, kind) in fams {
            add_family(&mut pres, name, &|enc| {
                let mut out = vec![];
                for a in 0..n {
                    let av = bp.e(a);
                    for w in 0..m {
                        for q in 0..m {
                            let (xi, y) = (bp.u(w), bp.u(q));
                            let g = enc.wy(&xi, &y);
                            let e = match kind {
                                0 => enc.pres.mul(&g, &tx(enc, &av)).sub(&enc.wy(&xi, &bp.yl.dual.act_left(&av).apply(&y))),
                                1 => enc.pres.mul(&tx(enc, &av), &g).sub(&enc.wy(&xi, &bp.yl.dual.act_right(&av).apply(&y))),
                                2 => enc.pres.mul(&g, &sx(enc, &av)).sub(&enc.wy(&bp.omega.act_right(&av).apply(&xi), &y)),
                                _ => enc.pres.mul(&sx(enc, &av), &g).sub(&enc.wy(&bp.omega.act_left(&av).apply(&xi), &y)),
                            };
                            out.push((format!("a{a} w{w} y{q}"), e, is_pure(w) && is_pure(q)));
                        }
                    }
                }
                out
            });
        }
    }
    if which.fields() && hand == Hand::Left {
        add_family(&mut pres, "a x = (ax)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for p in 0..m {
                    let (av, x) = (bp.e(a), bp.u(p));
                    let e = enc.pres.mul(&enc.s(&av), &enc.x(&x)).sub(&enc.x(&bp.xr.dual.act_left(&av).apply(&x)));
                    out.push((format!("a{a} x{p}"), e, is_pure(p)));
                }
            }
            out
        });
        add_family(&mut pres, "x a = (xa) + ev(x,da)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for p in 0..m {
                    let (av, x) = (bp.e(a), bp.u(p));
                    let mut e = enc.pres.mul(&enc.x(&x), &enc.s(&av)).sub(&enc.x(&bp.xr.dual.act_right(&av).apply(&x)));
                    e = e.sub(&enc.s(&bp.ev_l(&x, &bp.d.apply(&av))));
                    out.push((format!("x{p} a{a}"), e, is_pure(p)));
                }
            }
            out
        });
        add_family(&mut pres, "x a_ = a_ x + (x,da)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for p in 0..m {
                    let (av, x) = (bp.e(a), bp.u(p));
                    let gx = enc.x(&x);
                    let mut e = enc.pres.mul(&gx, &enc.t(&av)).sub(&enc.pres.mul(&enc.t(&av), &gx));
                    e = e.sub(&enc.xw(&x, &bp.d.apply(&av)));
                    out.push((format!("x{p} a{a}"), e, is_pure(p)));
                }
            }
            out
        });
    }
    if which.fields() && hand == Hand::Right {
        add_family(&mut pres, "y a = (ya)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for q in 0..m {
                    let (av, y) = (bp.e(a), bp.u(q));
                    let e = enc.pres.mul(&enc.s(&av), &enc.y(&y)).sub(&enc.y(&bp.yl.dual.act_right(&av).apply(&y)));
                    out.push((format!("y{q} a{a}"), e, is_pure(q)));
                }
            }
            out
        });
        add_family(&mut pres, "a y = (ay) + ev(da,y)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for q in 0..m {
                    let (av, y) = (bp.e(a), bp.u(q));
                    let mut e = enc.pres.mul(&enc.y(&y), &enc.s(&av)).sub(&enc.y(&bp.yl.dual.act_left(&av).apply(&y)));
                    e = e.sub(&enc.s(&bp.ev_r(&bp.d.apply(&av), &y)));
                    out.push((format!("a{a} y{q}"), e, is_pure(q)));
                }
            }
            out
        });
        add_family(&mut pres, "a_ y = y a_ + (da,y)", &|enc| {
            let mut out = vec![];
            for a in 0..n {
                for q in 0..m {
                    let (av, y) = (bp.e(a), bp.u(q));
                    let gy = enc.y(&y);
                    let mut e = enc.pres.mul(&gy, &enc.t(&av)).sub(&enc.pres.mul(&enc.t(&av), &gy));
                    e = e.sub(&enc.wy(&bp.d.apply(&av), &y));
                    out.push((format!("a{a} y{q}"), e, is_pure(q)));
                }
            }
            out
        });
    }
    if which.inverse_duality() {
        let coev_l = bp.coev_l();
        let coev_r = bp.coev_r();
        add_family(&mut pres, "(w_i,y)(x_i,w) = ev(w,y)", &|enc| {
            let mut out = vec![];
            for q in 0..m {
                for w in 0..m {
                    let (y, om) = (bp.u(q), bp.u(w));
                    let mut e = Elem::zero();
                    for (a, b, c) in &coev_l {
                        e.add_scaled(&enc.pres.mul(&enc.wy(&bp.u(*a), &y), &enc.xw(&bp.u(*b), &om)), c);
                    }
                    e = e.sub(&tx(enc, &bp.ev_r(&om, &y)));
                    out.push((format!("y{q} w{w}"), e, is_pure(q) && is_pure(w)));
                }
            }
            out
        });
        add_family(&mut pres, "(x,w_j)(v,y_j) = ev(x,v)", &|enc| {
            let mut out = vec![];
            for p in 0..m {
                for w in 0..m {
                    let (x, om) = (bp.u(p), bp.u(w));
                    let mut e = Elem::zero();
                    for (q, a, c) in &coev_r {
                        e.add_scaled(&enc.pres.mul(&enc.xw(&x, &bp.u(*a)), &enc.wy(&om, &bp.u(*q))), c);
                    }
                    e = e.sub(&sx(enc, &bp.ev_l(&x, &om)));
                    out.push((format!("x{p} w{w}"), e, is_pure(p) && is_pure(w)));
                }
            }
            out
        });
    }
    if which.pivotal() {
        let coev_l = bp.coev_l();
        let coev_r = bp.coev_r();
        add_family(&mut pres, "(y_j,w)(w_j,x) = ev(x,w)", &|enc| {
            let mut out = vec![];
            for p in 0..m {
                for w in 0..m {
                    let (x, om) = (bp.u(p), bp.u(w));
                    let px = bp.phi(&x).unwrap();
                    let mut e = Elem::zero();
                    for (q, a, c) in &coev_r {
                        let yq = bp.phi_inv(&bp.u(*q)).unwrap();
                        e.add_scaled(&enc.pres.mul(&enc.xw(&yq, &om), &enc.wy(&bp.u(*a), &px)), c);
                    }
                    e = e.sub(&tx(enc, &bp.ev_l(&x, &om)));
                    out.push((format!("x{p} w{w}"), e, is_pure(p) && is_pure(w)));
                }
            }
            out
        });
        add_family(&mut pres, "(w,x_i)(x,w_i) = ev(w,x)", &|enc| {
            let mut out = vec![];
            for p in 0..m {
                for w in 0..m {
                    let (x, om) = (bp.u(p), bp.u(w));
                    let px = bp.phi(&x).unwrap();
                    let mut e = Elem::zero();
                    for (a, b, c) in &coev_l {
                        let xb = bp.phi(&bp.u(*b)).unwrap();
                        e.add_scaled(&enc.pres.mul(&enc.wy(&om, &xb), &enc.xw(&x, &bp.u(*a))), c);
                    }
                    e = e.sub(&sx(enc, &bp.ev_r(&om, &px)));
                    out.push((format!("x{p} w{w}"), e, is_pure(p) && is_pure(w)));
                }
            }
            out
        });
    }
    pres.detect_rules();
    pres.prepare();
    Ok(pres)
}
