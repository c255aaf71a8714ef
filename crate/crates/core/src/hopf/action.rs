//! The action algebroids `A # H^op` (left, full star) and `H # A` (right),
//! and the pair structure joining them.

use super::{check_crossed_module, CrossedModuleAlgebra};
use crate::algebra::FiniteStarAlgebra;
use crate::bialgebroid::{FullHopfAlgebroid, LeftBialgebroid, PairData, RightBialgebroid};
use crate::error::{Error, Result};
use crate::linalg::{axpy, kron_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::scalar::Q;
use crate::tensor::{add_kron, terms2};

use super::terms3;

#[derive(Clone, Debug)]
pub struct ActionAlgebroid {
    pub crossed: CrossedModuleAlgebra,
    /// `L = A # H^op` with antipode, inverse, star and the displayed right structure.
    pub full: FullHopfAlgebroid,
    /// `R = H # A` over `A`.
    pub right: RightBialgebroid,
    pub pair: PairData,
    /// `R^op` as a left bialgebroid with its own antipode and star.
    pub right_op_full: FullHopfAlgebroid,
}

impl ActionAlgebroid {
    pub fn left(&self) -> &LeftBialgebroid {
        &self.full.left
    }

    pub fn dim(&self) -> usize {
        self.full.dim()
    }
}

struct Ctx<'a> {
    c: &'a CrossedModuleAlgebra,
    na: usize,
    nh: usize,
}

impl Ctx<'_> {
    fn ea(&self, i: usize) -> Vector {
        unit_vec(self.na, i)
    }

    fn eh(&self, i: usize) -> Vector {
        unit_vec(self.nh, i)
    }

    fn hmul(&self, a: &[Q], b: &[Q]) -> Vector {
        self.c.hopf.mul(a, b)
    }

    fn s(&self, i: usize) -> Vector {
        self.c.hopf.antipode.column(i)
    }

    fn s_inv(&self, i: usize) -> Vector {
        self.c.hopf.antipode_inv.column(i)
    }

    fn s_inv2(&self, i: usize) -> Vector {
        self.c.hopf.s_inv(&self.s_inv(i))
    }

    fn star_a(&self, i: usize) -> Vector {
        self.c.alg.star_matrix().expect("star on A").column(i)
    }

    fn star_h(&self, i: usize) -> Vector {
        self.c.hopf.alg.star_matrix().expect("star on H").column(i)
    }

    /// Matrix on `A (x) H` (index `a * nh + h`) from its values on basis tensors.
    fn on_ah(&self, rows: usize, f: impl Fn(usize, usize) -> Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.na * self.nh).map(|k| f(k / self.nh, k % self.nh)).collect();
        Matrix::from_columns(rows, &cols)
    }

    /// Matrix on `H (x) A` (index `h * na + a`).
    fn on_ha(&self, rows: usize, f: impl Fn(usize, usize) -> Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.na * self.nh).map(|k| f(k / self.na, k % self.na)).collect();
        Matrix::from_columns(rows, &cols)
    }
}

fn labels_ah(c: &CrossedModuleAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    for a in &c.alg.basis {
        for h in &c.hopf.alg.basis {
            out.push(format!("{a}#{h}"));
        }
    }
    out
}

fn labels_ha(c: &CrossedModuleAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    for h in &c.hopf.alg.basis {
        for a in &c.alg.basis {
            out.push(format!("{h}#{a}"));
        }
    }
    out
}

/// Build both action algebroids and every structure map on them.
pub fn build_action_algebroid(c: &CrossedModuleAlgebra) -> Result<ActionAlgebroid> {
    let pre = check_crossed_module(c);
    if let Some(f) = pre.failures().first() {
        return Err(Error::Precondition(format!("{}: {:?}", f.name, f.verdict)));
    }
    let x = Ctx { c, na: c.dim(), nh: c.hopf.dim() };
    let (na, nh) = (x.na, x.nh);
    let n = na * nh;
    let h = &c.hopf;

    // L = A # H^op: (a # h)(b # g) = a (b <| h1) # g h2
    let star_l = x.on_ah(n, |a, hh| {
        // (b # h)* = b*(0) <| S(b*(1)) h*1 # h*2
        let mut out = zero_vec(n);
        let bs = c.coact(&x.star_a(a));
        let dh = h.coproduct(&x.star_h(hh));
        for (u, v, y) in terms2(&bs, nh) {
            for (p, q, z) in terms2(&dh, nh) {
                let left = c.act(&x.ea(u), &x.hmul(&x.s(v), &x.eh(p)));
                add_kron(&mut out, &(y * z), &left, &x.eh(q));
            }
        }
        out
    });
    let total_l = FiniteStarAlgebra::from_fn(
        format!("{}#{}^op", c.alg.name, h.name()),
        labels_ah(c),
        |i, j| {
            let (a, hh) = (i / nh, i % nh);
            let (b, g) = (j / nh, j % nh);
            let mut out = zero_vec(n);
            for (p, q, z) in terms2(&h.coproduct(&x.eh(hh)), nh) {
                let left = c.alg.mul(&x.ea(a), &c.act(&x.ea(b), &x.eh(p)));
                add_kron(&mut out, z, &left, &x.hmul(&x.eh(g), &x.eh(q)));
            }
            out
        },
        kron_vec(c.alg.unit(), h.unit()),
        Some(star_l.clone()),
    );
    let s_l = Matrix::from_columns(n, &(0..na).map(|a| kron_vec(&x.ea(a), h.unit())).collect::<Vec<_>>());
    let t_l = c.coaction.clone();
    let delta_l: Vec<Vector> = (0..n)
        .map(|k| {
            let (a, hh) = (k / nh, k % nh);
            let mut out = zero_vec(n * n);
            for (p, q, z) in terms2(&h.coproduct(&x.eh(hh)), nh) {
                add_kron(&mut out, z, &kron_vec(&x.ea(a), &x.eh(p)), &kron_vec(c.alg.unit(), &x.eh(q)));
            }
            out
        })
        .collect();
    let eps_l = x.on_ah(na, |a, hh| crate::linalg::scale_vec(&h.counit(&x.eh(hh)), &x.ea(a)));
    let left = LeftBialgebroid::new(total_l.name.clone(), total_l.clone(), c.alg.clone(), s_l.clone(), t_l.clone(), delta_l, eps_l)?;

    // S(a # h) = a(0) <| S^-2(a(1)) S^-1(h2) # S^-2(a(2)) S^-1(h1)
    let antipode = x.on_ah(n, |a, hh| {
        let mut out = zero_vec(n);
        let a2 = c.coact2(&x.ea(a));
        let dh = h.coproduct(&x.eh(hh));
        for (u, v, w, y) in terms3(&a2, nh, nh) {
            for (p, q, z) in terms2(&dh, nh) {
                let left = c.act(&x.ea(u), &x.hmul(&x.s_inv2(v), &x.s_inv(q)));
                add_kron(&mut out, &(y * z), &left, &x.hmul(&x.s_inv2(w), &x.s_inv(p)));
            }
        }
        out
    });
    // S^-1(a # h) = a(0) <| S(h2) # a(1) S(h1)
    let antipode_inv = x.on_ah(n, |a, hh| {
        let mut out = zero_vec(n);
        let dh = h.coproduct(&x.eh(hh));
        for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
            for (p, q, z) in terms2(&dh, nh) {
                add_kron(&mut out, &(y * z), &c.act(&x.ea(u), &x.s(q)), &x.hmul(&x.eh(v), &x.s(p)));
            }
        }
        out
    });

    // displayed right structure over B^op
    let t_r = Matrix::from_columns(
        n,
        &(0..na)
            .map(|a| {
                let mut out = zero_vec(na);
                for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
                    axpy(&mut out, y, &c.act(&x.ea(u), &x.s(v)));
                }
                kron_vec(&out, h.unit())
            })
            .collect::<Vec<_>>(),
    );
    let delta_r: Vec<Vector> = (0..n)
        .map(|k| {
            let (a, hh) = (k / nh, k % nh);
            let mut out = zero_vec(n * n);
            for (p, q, z) in terms2(&h.coproduct(&x.eh(hh)), nh) {
                for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
                    let first = kron_vec(c.alg.unit(), &x.hmul(&x.eh(p), &x.s_inv(v)));
                    add_kron(&mut out, &(y * z), &first, &kron_vec(&x.ea(u), &x.eh(q)));
                }
            }
            out
        })
        .collect();
    let eps_r = x.on_ah(na, |a, hh| {
        let mut out = zero_vec(na);
        for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
            axpy(&mut out, y, &c.act(&x.ea(u), &x.hmul(&x.s_inv2(v), &x.s_inv(hh))));
        }
        out
    });
    let supplied = RightBialgebroid::new(
        format!("{} (displayed right)", total_l.name),
        total_l.clone(),
        c.alg.opposite(),
        t_l.clone(),
        t_r,
        delta_r,
        eps_r,
    )?;
    let full = FullHopfAlgebroid::new(left.clone(), antipode, antipode_inv, Some(star_l.clone())).with_supplied_right(supplied);

    // R = H # A: (h # a)(g # b) = h g1 # (a <| g2) b
    let star_r = x.on_ha(n, |hh, a| {
        // (h # a)* = h*1 # a* <| h*2
        let mut out = zero_vec(n);
        for (p, q, z) in terms2(&h.coproduct(&x.star_h(hh)), nh) {
            add_kron(&mut out, z, &x.eh(p), &c.act(&x.star_a(a), &x.eh(q)));
        }
        out
    });
    let total_r = FiniteStarAlgebra::from_fn(
        format!("{}#{}", h.name(), c.alg.name),
        labels_ha(c),
        |i, j| {
            let (hh, a) = (i / na, i % na);
            let (g, b) = (j / na, j % na);
            let mut out = zero_vec(n);
            for (p, q, z) in terms2(&h.coproduct(&x.eh(g)), nh) {
                let right = c.alg.mul(&c.act(&x.ea(a), &x.eh(q)), &x.ea(b));
                add_kron(&mut out, z, &x.hmul(&x.eh(hh), &x.eh(p)), &right);
            }
            out
        },
        kron_vec(h.unit(), c.alg.unit()),
        Some(star_r.clone()),
    );
    let s_rr = Matrix::from_columns(n, &(0..na).map(|a| kron_vec(h.unit(), &x.ea(a))).collect::<Vec<_>>());
    // t_R(b) = S^-1 b(1) # b(0)
    let t_rr = Matrix::from_columns(
        n,
        &(0..na)
            .map(|b| {
                let mut out = zero_vec(n);
                for (u, v, y) in terms2(&c.coact(&x.ea(b)), nh) {
                    add_kron(&mut out, y, &x.s_inv(v), &x.ea(u));
                }
                out
            })
            .collect::<Vec<_>>(),
    );
    let eps_rr = x.on_ha(na, |hh, a| crate::linalg::scale_vec(&h.counit(&x.eh(hh)), &x.ea(a)));
    let delta_rr: Vec<Vector> = (0..n)
        .map(|k| {
            let (hh, a) = (k / na, k % na);
            let mut out = zero_vec(n * n);
            for (p, q, z) in terms2(&h.coproduct(&x.eh(hh)), nh) {
                add_kron(&mut out, z, &kron_vec(&x.eh(p), c.alg.unit()), &kron_vec(&x.eh(q), &x.ea(a)));
            }
            out
        })
        .collect();
    let right =
        RightBialgebroid::new(total_r.name.clone(), total_r.clone(), c.alg.clone(), s_rr, t_rr, delta_rr, eps_rr)?;

    // (a # h)^circ = S^-1(h*) # a*, its inverse (h # a) -> a* # S^-1(h*)
    let circ = x.on_ah(n, |a, hh| kron_vec(&h.s_inv(&x.star_h(hh)), &x.star_a(a)));
    let circ_inv = x.on_ha(n, |hh, a| kron_vec(&x.star_a(a), &h.s_inv(&x.star_h(hh))));
    // Phi(a # h) = h S^-1 a(1) # a(0), Phi^-1(h # a) = a(0) # h a(1)
    let phi = x.on_ah(n, |a, hh| {
        let mut out = zero_vec(n);
        for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
            add_kron(&mut out, y, &x.hmul(&x.eh(hh), &x.s_inv(v)), &x.ea(u));
        }
        out
    });
    let phi_inv = x.on_ha(n, |hh, a| {
        let mut out = zero_vec(n);
        for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
            add_kron(&mut out, y, &x.ea(u), &x.hmul(&x.eh(hh), &x.eh(v)));
        }
        out
    });
    let pair = PairData {
        name: format!("({}, {})", left.name, right.name),
        left: left.clone(),
        right: right.clone(),
        circ: Some(circ),
        circ_inv: Some(circ_inv),
        phi: Some(phi),
        phi_inv: Some(phi_inv),
    };

    // R^op: S(h # a) = S^-1(a(1)) S^-1(h2) # a(0) <| S^-1(h1),
    // S^-1(h # a) = S(h2 a(2)) # a(0) <| S(h1 a(1))
    let r_antipode = x.on_ha(n, |hh, a| {
        let mut out = zero_vec(n);
        let dh = h.coproduct(&x.eh(hh));
        for (u, v, y) in terms2(&c.coact(&x.ea(a)), nh) {
            for (p, q, z) in terms2(&dh, nh) {
                add_kron(&mut out, &(y * z), &x.hmul(&x.s_inv(v), &x.s_inv(q)), &c.act(&x.ea(u), &x.s_inv(p)));
            }
        }
        out
    });
    let r_antipode_inv = x.on_ha(n, |hh, a| {
        let mut out = zero_vec(n);
        let dh = h.coproduct(&x.eh(hh));
        for (u, v, w, y) in terms3(&c.coact2(&x.ea(a)), nh, nh) {
            for (p, q, z) in terms2(&dh, nh) {
                let first = h.s(&x.hmul(&x.eh(q), &x.eh(w)));
                let second = c.act(&x.ea(u), &h.s(&x.hmul(&x.eh(p), &x.eh(v))));
                add_kron(&mut out, &(y * z), &first, &second);
            }
        }
        out
    });
    let mut rop = right.as_left_of_opposite();
    rop.total = rop.total.clone().with_star(Some(star_r.clone()));
    let right_op_full = FullHopfAlgebroid::new(rop, r_antipode, r_antipode_inv, Some(star_r));

    Ok(ActionAlgebroid { crossed: c.clone(), full, right, pair, right_op_full })
}

/// Right bialgebroid on `L^op` pulled back from `r` along the anti-algebra
/// isomorphism `phi: L -> R`.
pub fn transport_right(r: &RightBialgebroid, total: &FiniteStarAlgebra, phi: &Matrix, phi_inv: &Matrix) -> RightBialgebroid {
    let n = r.dim();
    let delta = (0..n)
        .map(|i| crate::tensor::apply2(phi_inv, phi_inv, &r.delta_lift(&phi.column(i))))
        .collect();
    RightBialgebroid::new(
        format!("{} (transported)", r.name),
        total.opposite(),
        r.base.clone(),
        phi_inv.mul(&r.s),
        phi_inv.mul(&r.t),
        delta,
        r.eps.mul(phi),
    )
    .expect("transported shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::{check_full_hopf, check_full_star_hopf, check_left_bialgebroid, check_pair, check_right_bialgebroid};
    use crate::hopf::HopfStarAlgebra;

    fn assert_ok(r: &crate::report::Report) {
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn z2_pair_action_algebroid() {
        let c = CrossedModuleAlgebra::pair(&HopfStarAlgebra::cyclic(2));
        let aa = build_action_algebroid(&c).unwrap();
        assert_eq!(aa.dim(), 4);
        assert_ok(&check_left_bialgebroid(aa.left()));
        assert_ok(&check_full_hopf(&aa.full));
        assert_ok(&check_full_star_hopf(&aa.full));
        // (g # g)* = g # g at index 3
        assert_eq!(aa.full.star_of(&unit_vec(4, 3)), unit_vec(4, 3));
        // S(1 # 1) = 1 # 1
        assert_eq!(aa.full.s(&unit_vec(4, 0)), unit_vec(4, 0));
        // eps_L kills 1 # (1 - g), the sign idempotent direction of H
        let v = vec![Q::one(), -Q::one(), Q::zero(), Q::zero()];
        assert_eq!(aa.left().eps_of(&v), vec![Q::zero(), Q::zero()]);
    }

    #[test]
    fn z2_action_pair_and_right_op() {
        let c = CrossedModuleAlgebra::pair(&HopfStarAlgebra::cyclic(2));
        let aa = build_action_algebroid(&c).unwrap();
        assert_ok(&check_right_bialgebroid(&aa.right));
        let (rep, flags) = check_pair(&aa.pair);
        assert_ok(&rep);
        assert!(flags.star_related && flags.reflexive && flags.star_pair && flags.hopf_pair, "{flags:?}");
        assert_ok(&check_full_hopf(&aa.right_op_full));
        assert_ok(&check_full_star_hopf(&aa.right_op_full));
    }

    #[test]
    fn s3_pair_structures_transport_along_phi() {
        let c = CrossedModuleAlgebra::pair(&HopfStarAlgebra::symmetric3());
        let aa = build_action_algebroid(&c).unwrap();
        let p = &aa.pair;
        let (phi, pi) = (p.phi.as_ref().unwrap(), p.phi_inv.as_ref().unwrap());
        // S on R^op is Phi S_L Phi^-1; the star is Phi * Phi^-1 (antilinear)
        assert_eq!(aa.right_op_full.antipode, phi.mul(&aa.full.antipode).mul(pi));
        let st = aa.full.star.as_ref().unwrap();
        assert_eq!(aa.right_op_full.star.as_ref().unwrap(), &phi.mul(st).mul(&pi.conj()));
        let tr = transport_right(&aa.right, &aa.left().total, phi, pi);
        assert_ok(&check_right_bialgebroid(&tr));
    }

    #[test]
    fn weyl_z2_action_algebroid() {
        let c = CrossedModuleAlgebra::weyl(&HopfStarAlgebra::cyclic(2));
        let aa = build_action_algebroid(&c).unwrap();
        assert_ok(&check_full_hopf(&aa.full));
        assert_ok(&check_full_star_hopf(&aa.full));
    }

    #[test]
    fn precondition_propagates() {
        let c = CrossedModuleAlgebra::weyl(&HopfStarAlgebra::symmetric3().dual()).with_trivial_coaction();
        assert!(matches!(build_action_algebroid(&c), Err(Error::Precondition(_))));
    }
}
