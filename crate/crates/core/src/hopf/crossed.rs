//! Braided-commutative algebras in the category of right crossed modules.

use super::{check_hopf_star, cmp, each, terms3, HopfStarAlgebra};
use crate::algebra::{apply_antilinear, check_algebra, FiniteStarAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{axpy, conj_vec, kron_vec, scale_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Q;
use crate::tensor::{add_kron, apply2, terms2};

#[derive(Clone, Debug)]
pub struct CrossedModuleAlgebra {
    pub name: String,
    pub hopf: HopfStarAlgebra,
    pub alg: FiniteStarAlgebra,
    /// Column `a * dim H + h` is `e_a <| e_h`.
    pub action: Matrix,
    /// Column `a` is `delta(e_a)` in `A (x) H`.
    pub coaction: Matrix,
}

impl CrossedModuleAlgebra {
    pub fn new(
        name: impl Into<String>,
        hopf: HopfStarAlgebra,
        alg: FiniteStarAlgebra,
        action: Matrix,
        coaction: Matrix,
    ) -> Result<Self> {
        let (na, nh) = (alg.dim(), hopf.dim());
        if action.rows() != na || action.cols() != na * nh {
            return Err(Error::Dimension(format!("action is {}x{}, expected {na}x{}", action.rows(), action.cols(), na * nh)));
        }
        if coaction.rows() != na * nh || coaction.cols() != na {
            return Err(Error::Dimension(format!(
                "coaction is {}x{}, expected {}x{na}",
                coaction.rows(),
                coaction.cols(),
                na * nh
            )));
        }
        Ok(CrossedModuleAlgebra { name: name.into(), hopf, alg, action, coaction })
    }

    /// `A = H`, `h <| g = S(g1) h g2`, `delta = Delta`.
    pub fn pair(h: &HopfStarAlgebra) -> Self {
        let n = h.dim();
        let mut cols = Vec::with_capacity(n * n);
        for a in 0..n {
            for g in 0..n {
                let mut out = zero_vec(n);
                for (p, q, c) in terms2(&h.delta.column(g), n) {
                    axpy(&mut out, c, &h.alg.mul3(&h.antipode.column(p), &unit_vec(n, a), &unit_vec(n, q)));
                }
                cols.push(out);
            }
        }
        let action = Matrix::from_columns(n, &cols);
        CrossedModuleAlgebra::new(format!("pair({})", h.name()), h.clone(), h.alg.clone(), action, h.delta.clone())
            .expect("pair shapes")
    }

    /// `A = H*` with `a <| h = <a1, h> a2` and the coaction determined by
    /// `<b, a(1)> a(0) = b1 a S(b2)` for `b` in `H*`.
    pub fn weyl(h: &HopfStarAlgebra) -> Self {
        let n = h.dim();
        let d = h.dual();
        let mut act = Vec::with_capacity(n * n);
        for a in 0..n {
            for g in 0..n {
                let mut out = zero_vec(n);
                for (i, j, c) in terms2(&d.delta.column(a), n) {
                    if i == g {
                        out[j] += c;
                    }
                }
                act.push(out);
            }
        }
        let mut coact = Vec::with_capacity(n);
        for a in 0..n {
            let mut out = zero_vec(n * n);
            for j in 0..n {
                let mut adj = zero_vec(n);
                for (p, q, c) in terms2(&d.delta.column(j), n) {
                    axpy(&mut adj, c, &d.alg.mul3(&unit_vec(n, p), &unit_vec(n, a), &d.antipode.column(q)));
                }
                add_kron(&mut out, &Q::one(), &adj, &unit_vec(n, j));
            }
            coact.push(out);
        }
        CrossedModuleAlgebra::new(
            format!("weyl({})", h.name()),
            h.clone(),
            d.alg.clone(),
            Matrix::from_columns(n, &act),
            Matrix::from_columns(n * n, &coact),
        )
        .expect("weyl shapes")
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `a <| h`.
    pub fn act(&self, a: &[Q], h: &[Q]) -> Vector {
        self.action.apply(&kron_vec(a, h))
    }

    /// `a(0) (x) a(1)`.
    pub fn coact(&self, a: &[Q]) -> Vector {
        self.coaction.apply(a)
    }

    /// `a(0) (x) a(1) (x) a(2)`.
    pub fn coact2(&self, a: &[Q]) -> Vector {
        apply2(&self.coaction, &Matrix::identity(self.hopf.dim()), &self.coact(a))
    }

    /// Replace the coaction by `a -> a (x) 1` (mutation testing).
    pub fn with_trivial_coaction(&self) -> Self {
        let na = self.dim();
        let cols: Vec<Vector> = (0..na).map(|a| kron_vec(&unit_vec(na, a), self.hopf.unit())).collect();
        let mut c = self.clone();
        c.coaction = Matrix::from_columns(na * self.hopf.dim(), &cols);
        c.name = format!("{} (trivial coaction)", self.name);
        c
    }

    /// Replace one action entry (mutation testing).
    pub fn with_action_entry(&self, row: usize, col: usize, x: Q) -> Self {
        let mut c = self.clone();
        c.action.set(row, col, x);
        c
    }
}

/// Product in `A (x) H` for two different algebras.
fn mul_ah(c: &CrossedModuleAlgebra, u: &[Q], v: &[Q]) -> Vector {
    let (na, nh) = (c.dim(), c.hopf.dim());
    let mut out = zero_vec(na * nh);
    for (p, q, x) in terms2(u, nh) {
        for (r, s, y) in terms2(v, nh) {
            let a = c.alg.mul(&unit_vec(na, p), &unit_vec(na, r));
            let h = c.hopf.mul(&unit_vec(nh, q), &unit_vec(nh, s));
            add_kron(&mut out, &(x * y), &a, &h);
        }
    }
    out
}

pub fn check_crossed_module(c: &CrossedModuleAlgebra) -> Report {
    let mut r = Report::new(format!("crossed module algebra {}", c.name));
    let h = &c.hopf;
    let (na, nh) = (c.dim(), h.dim());
    let ea = |i: usize| unit_vec(na, i);
    let eh = |i: usize| unit_vec(nh, i);
    let pairs = na * nh;
    r.absorb("hopf", check_hopf_star(h));
    r.absorb("algebra", check_algebra(&c.alg));
    r.dim("A", na);
    r.dim("H", nh);

    r.record(
        "right action (a<|h)<|g = a<|(hg)",
        each(pairs * nh, |k| {
            let (a, hh, g) = (k / (nh * nh), (k / nh) % nh, k % nh);
            let lhs = c.act(&c.act(&ea(a), &eh(hh)), &eh(g));
            let rhs = c.act(&ea(a), &h.mul(&eh(hh), &eh(g)));
            cmp(&format!("on e{a} h{hh} h{g}"), &lhs, &rhs)
        }),
    );
    r.record("unit acts trivially", each(na, |a| cmp(&format!("on e{a}"), &c.act(&ea(a), h.unit()), &ea(a))));
    r.record(
        "module algebra (ab)<|h = (a<|h1)(b<|h2)",
        each(na * na * nh, |k| {
            let (a, b, hh) = (k / (na * nh), (k / nh) % na, k % nh);
            let lhs = c.act(&c.alg.mul(&ea(a), &ea(b)), &eh(hh));
            let mut rhs = zero_vec(na);
            for (p, q, x) in terms2(&h.coproduct(&eh(hh)), nh) {
                axpy(&mut rhs, x, &c.alg.mul(&c.act(&ea(a), &eh(p)), &c.act(&ea(b), &eh(q))));
            }
            cmp(&format!("on e{a} e{b} h{hh}"), &lhs, &rhs)
        }),
    );
    r.record(
        "1<|h = eps(h) 1",
        each(nh, |g| cmp(&format!("on h{g}"), &c.act(c.alg.unit(), &eh(g)), &scale_vec(&h.counit(&eh(g)), c.alg.unit()))),
    );
    let id_a = Matrix::identity(na);
    r.record(
        "coaction coassociative",
        each(na, |a| {
            let d = c.coact(&ea(a));
            cmp(&format!("on e{a}"), &apply2(&c.coaction, &Matrix::identity(nh), &d), &apply2(&id_a, &h.delta, &d))
        }),
    );
    r.record(
        "coaction counital",
        each(na, |a| cmp(&format!("on e{a}"), &apply2(&id_a, &h.eps, &c.coact(&ea(a))), &ea(a))),
    );
    r.record(
        "comodule algebra delta(ab) = delta(a) delta(b)",
        each(na * na, |k| {
            let (a, b) = (k / na, k % na);
            let lhs = c.coact(&c.alg.mul(&ea(a), &ea(b)));
            let rhs = mul_ah(c, &c.coact(&ea(a)), &c.coact(&ea(b)));
            cmp(&format!("on e{a} e{b}"), &lhs, &rhs)
        }),
    );
    r.record("delta(1) = 1 (x) 1", cmp("unit", &c.coact(c.alg.unit()), &kron_vec(c.alg.unit(), h.unit())));

    r.record(
        "Drinfeld-Yetter condition",
        each(pairs, |k| {
            let (a, g) = (k / nh, k % nh);
            let dh = h.coproduct(&eh(g));
            let mut lhs = zero_vec(pairs);
            for (p, q, x) in terms2(&dh, nh) {
                for (u, v, y) in terms2(&c.coact(&c.act(&ea(a), &eh(q))), nh) {
                    add_kron(&mut lhs, &(x * y), &ea(u), &h.mul(&eh(p), &eh(v)));
                }
            }
            let mut rhs = zero_vec(pairs);
            for (u, v, y) in terms2(&c.coact(&ea(a)), nh) {
                for (p, q, x) in terms2(&dh, nh) {
                    add_kron(&mut rhs, &(x * y), &c.act(&ea(u), &eh(p)), &h.mul(&eh(v), &eh(q)));
                }
            }
            cmp(&format!("on e{a} h{g}"), &lhs, &rhs)
        }),
    );
    r.record(
        "Drinfeld-Yetter equivalent form",
        each(pairs, |k| {
            let (a, g) = (k / nh, k % nh);
            let lhs = c.coact(&c.act(&ea(a), &eh(g)));
            let mut rhs = zero_vec(pairs);
            let d2 = h.coproduct2(&eh(g));
            for (u, v, y) in terms2(&c.coact(&ea(a)), nh) {
                for (p, q, s, x) in terms3(&d2, nh, nh) {
                    let right = h.alg.mul3(&h.antipode.column(p), &eh(v), &eh(s));
                    add_kron(&mut rhs, &(x * y), &c.act(&ea(u), &eh(q)), &right);
                }
            }
            cmp(&format!("on e{a} h{g}"), &lhs, &rhs)
        }),
    );
    r.record(
        "braided-commutative b(0)(a<|b(1)) = ab",
        each(na * na, |k| {
            let (a, b) = (k / na, k % na);
            let mut lhs = zero_vec(na);
            for (u, v, y) in terms2(&c.coact(&ea(b)), nh) {
                axpy(&mut lhs, y, &c.alg.mul(&ea(u), &c.act(&ea(a), &eh(v))));
            }
            cmp(&format!("on e{a} e{b}"), &lhs, &c.alg.mul(&ea(a), &ea(b)))
        }),
    );
    r.record(
        "braided-commutative (a<|S^-1 b(1)) b(0) = ba",
        each(na * na, |k| {
            let (a, b) = (k / na, k % na);
            let mut lhs = zero_vec(na);
            for (u, v, y) in terms2(&c.coact(&ea(b)), nh) {
                axpy(&mut lhs, y, &c.alg.mul(&c.act(&ea(a), &h.antipode_inv.column(v)), &ea(u)));
            }
            cmp(&format!("on e{a} e{b}"), &lhs, &c.alg.mul(&ea(b), &ea(a)))
        }),
    );
    match (c.alg.star_matrix(), h.alg.star_matrix()) {
        (Some(ma), Some(mh)) => {
            r.record(
                "unitary coaction delta(a*) = a(0)* (x) a(1)*",
                each(na, |a| {
                    let lhs = c.coact(&ma.column(a));
                    let rhs = apply2(ma, mh, &conj_vec(&c.coact(&ea(a))));
                    cmp(&format!("on e{a}"), &lhs, &rhs)
                }),
            );
            r.record(
                "unitary action (a<|h)* = a*<|S^-1(h*)",
                each(pairs, |k| {
                    let (a, g) = (k / nh, k % nh);
                    let lhs = apply_antilinear(ma, &c.act(&ea(a), &eh(g)));
                    let rhs = c.act(&ma.column(a), &h.s_inv(&mh.column(g)));
                    cmp(&format!("on e{a} h{g}"), &lhs, &rhs)
                }),
            );
        }
        _ => r.fail("stars present", "algebra or Hopf algebra has no star"),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_examples_pass() {
        for h in [HopfStarAlgebra::cyclic(2), HopfStarAlgebra::cyclic(4), HopfStarAlgebra::symmetric3()] {
            let c = CrossedModuleAlgebra::pair(&h);
            let r = check_crossed_module(&c);
            assert!(r.all_pass(), "{r}");
        }
        // commutative H: the adjoint action is trivial
        let c = CrossedModuleAlgebra::pair(&HopfStarAlgebra::cyclic(2));
        assert_eq!(c.act(&unit_vec(2, 1), &unit_vec(2, 1)), unit_vec(2, 1));
    }

    #[test]
    fn weyl_examples_pass() {
        let z2 = HopfStarAlgebra::cyclic(2);
        let r = check_crossed_module(&CrossedModuleAlgebra::weyl(&z2));
        assert!(r.all_pass(), "{r}");
        assert!(r.is_pass("unitary action (a<|h)* = a*<|S^-1(h*)"));
        assert!(r.is_pass("unitary coaction delta(a*) = a(0)* (x) a(1)*"));
        // the dual of a nonabelian group algebra gives a nontrivial coaction
        let fs3 = HopfStarAlgebra::symmetric3().dual();
        let r = check_crossed_module(&CrossedModuleAlgebra::weyl(&fs3));
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn trivial_coaction_breaks_drinfeld_yetter() {
        let fs3 = HopfStarAlgebra::symmetric3().dual();
        let c = CrossedModuleAlgebra::weyl(&fs3).with_trivial_coaction();
        let r = check_crossed_module(&c);
        assert!(!r.is_pass("Drinfeld-Yetter condition"));
        let w = r.failures();
        assert!(w.iter().any(|c| c.name == "Drinfeld-Yetter condition"));
    }
}
