//! Hopf-Galois extensions: coinvariants, the canonical map and the
//! translation map.

use super::{cmp, each, HopfStarAlgebra};
use crate::algebra::{subalgebra, FiniteStarAlgebra};
use crate::bialgebroid::{junction, Mul};
use crate::error::{Error, Result};
use crate::linalg::{conj_vec, is_zero_vec, kron_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{fmt_vec, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, apply2, flip, terms2, BalancedTensor, Junction, TensorChain};

#[derive(Clone, Debug)]
pub struct HopfGaloisExtension {
    pub name: String,
    pub total: FiniteStarAlgebra,
    pub hopf: HopfStarAlgebra,
    /// Column `p` is `delta_R(e_p)` in `P (x) H`.
    pub coaction: Matrix,
    /// `B = P^coH` on its echelon basis.
    pub base: FiniteStarAlgebra,
    /// Columns are the basis of `B` inside `P`.
    pub base_embed: Matrix,
    /// `P (x)_B P`.
    pub tensor: BalancedTensor,
    /// `chi` from quotient coordinates of `P (x)_B P` to `P (x) H`.
    pub chi: Matrix,
    pub chi_inv: Option<Matrix>,
}

impl HopfGaloisExtension {
    pub fn new(name: impl Into<String>, total: FiniteStarAlgebra, hopf: HopfStarAlgebra, coaction: Matrix) -> Result<Self> {
        let name = name.into();
        let (np, nh) = (total.dim(), hopf.dim());
        if coaction.rows() != np * nh || coaction.cols() != np {
            return Err(Error::Dimension(format!("coaction is {}x{}, expected {}x{np}", coaction.rows(), coaction.cols(), np * nh)));
        }
        // B = ker(delta_R - (. (x) 1))
        let unit_leg = Matrix::from_columns(np * nh, &(0..np).map(|p| kron_vec(&unit_vec(np, p), hopf.unit())).collect::<Vec<_>>());
        let coinv = coaction.sub(&unit_leg).kernel();
        let (base, base_embed) = subalgebra(&total, format!("{}^coH", total.name), &coinv)
            .ok_or_else(|| Error::Precondition("coinvariants are not a unital subalgebra".into()))?;
        let tensor = BalancedTensor::new(np, np, &base_junction(&total, &base_embed));
        // chi(q (x) p) = q p(0) (x) p(1)
        let cols: Vec<Vector> = (0..tensor.dim())
            .map(|k| {
                let lift = tensor.section(&unit_vec(tensor.dim(), k));
                chi_ambient(&total, &coaction, nh, &lift)
            })
            .collect();
        let chi = Matrix::from_columns(np * nh, &cols);
        let chi_inv = chi.inverse();
        Ok(HopfGaloisExtension { name, total, hopf, coaction, base, base_embed, tensor, chi, chi_inv })
    }

    /// `P = CZ_n` with generator `u`, `H = CZ_m`, `u^k -> u^k (x) g^(k mod m)`.
    pub fn cyclic(n: usize, m: usize) -> Result<Self> {
        if m == 0 || n % m != 0 {
            return Err(Error::Precondition(format!("CZ{m} coaction on CZ{n} needs m | n")));
        }
        let total = HopfStarAlgebra::cyclic(n).alg;
        let mut total = total;
        total.basis = (0..n).map(|k| format!("u{k}")).collect();
        let hopf = HopfStarAlgebra::cyclic(m);
        let cols: Vec<Vector> = (0..n).map(|k| kron_vec(&unit_vec(n, k), &unit_vec(m, k % m))).collect();
        HopfGaloisExtension::new(format!("CZ{n} over CZ{m}"), total, hopf, Matrix::from_columns(n * m, &cols))
    }

    /// `P = H` with `delta_R = Delta`.
    pub fn regular(h: &HopfStarAlgebra) -> Result<Self> {
        HopfGaloisExtension::new(format!("{} over itself", h.name()), h.alg.clone(), h.clone(), h.delta.clone())
    }

    /// `p -> p (x) 1`.
    pub fn trivial(total: FiniteStarAlgebra, h: &HopfStarAlgebra) -> Result<Self> {
        let np = total.dim();
        let cols: Vec<Vector> = (0..np).map(|p| kron_vec(&unit_vec(np, p), h.unit())).collect();
        HopfGaloisExtension::new(format!("{} trivially over {}", total.name, h.name()), total, h.clone(), Matrix::from_columns(np * h.dim(), &cols))
    }

    pub fn np(&self) -> usize {
        self.total.dim()
    }

    pub fn nh(&self) -> usize {
        self.hopf.dim()
    }

    pub fn coact(&self, p: &[Q]) -> Vector {
        self.coaction.apply(p)
    }

    pub fn is_galois(&self) -> bool {
        self.chi_inv.is_some()
    }

    /// `tau(h)` in quotient coordinates of `P (x)_B P`.
    pub fn tau(&self, h: &[Q]) -> Option<Vector> {
        Some(self.chi_inv.as_ref()?.apply(&kron_vec(self.total.unit(), h)))
    }

    /// A representative of `tau(h)` in `P (x) P`.
    pub fn tau_lift(&self, h: &[Q]) -> Option<Vector> {
        Some(self.tensor.section(&self.tau(h)?))
    }

    /// Coordinates of an element of `B` given inside `P`.
    pub fn base_coordinates(&self, p: &[Q]) -> Option<Vector> {
        self.base_embed.solve(p)
    }
}

/// `m.b = m b` on the left factor, `b.n = b n` on the right.
pub(crate) fn base_junction(total: &FiniteStarAlgebra, embed: &Matrix) -> Junction {
    junction(total, embed, Mul::Right, embed, Mul::Left)
}

fn chi_ambient(total: &FiniteStarAlgebra, coaction: &Matrix, nh: usize, v: &[Q]) -> Vector {
    let np = total.dim();
    let mut out = zero_vec(np * nh);
    for (q, p, c) in terms2(v, np) {
        for (u, h, d) in terms2(&coaction.column(p), nh) {
            add_kron(&mut out, &(c * d), &total.mul(&unit_vec(np, q), &unit_vec(np, u)), &unit_vec(nh, h));
        }
    }
    out
}

pub fn check_hopf_galois(e: &HopfGaloisExtension) -> Report {
    let mut r = Report::new(format!("Hopf-Galois extension {}", e.name));
    let (np, nh) = (e.np(), e.nh());
    let h = &e.hopf;
    let ep = |i: usize| unit_vec(np, i);
    let eh = |i: usize| unit_vec(nh, i);
    let id_p = Matrix::identity(np);
    r.record(
        "coaction coassociative",
        each(np, |p| {
            let d = e.coact(&ep(p));
            cmp(&format!("on e{p}"), &apply2(&e.coaction, &Matrix::identity(nh), &d), &apply2(&id_p, &h.delta, &d))
        }),
    );
    r.record("coaction counital", each(np, |p| cmp(&format!("on e{p}"), &apply2(&id_p, &h.eps, &e.coact(&ep(p))), &ep(p))));
    r.record(
        "comodule algebra",
        each(np * np, |k| {
            let (p, q) = (k / np, k % np);
            let lhs = e.coact(&e.total.mul(&ep(p), &ep(q)));
            let mut rhs = zero_vec(np * nh);
            for (a, x, c) in terms2(&e.coact(&ep(p)), nh) {
                for (b, y, d) in terms2(&e.coact(&ep(q)), nh) {
                    add_kron(&mut rhs, &(c * d), &e.total.mul(&ep(a), &ep(b)), &h.mul(&eh(x), &eh(y)));
                }
            }
            cmp(&format!("on e{p} e{q}"), &lhs, &rhs)
        }),
    );
    r.record("coaction unital", cmp("unit", &e.coact(e.total.unit()), &kron_vec(e.total.unit(), h.unit())));
    if let (Some(mp), Some(mh)) = (e.total.star_matrix(), h.alg.star_matrix()) {
        r.record(
            "unitary coaction",
            each(np, |p| cmp(&format!("on e{p}"), &e.coact(&mp.column(p)), &apply2(mp, mh, &conj_vec(&e.coact(&ep(p)))))),
        );
    }
    r.dim("P", np);
    r.dim("H", nh);
    r.dim("B", e.base.dim());
    r.dim("P (x)_B P", e.tensor.dim());
    r.pass("B is a unital subalgebra");
    r.record(
        "chi well defined on P (x)_B P",
        e.tensor.quotient.relations().basis().iter().enumerate().try_for_each(|(k, rel)| {
            let img = chi_ambient(&e.total, &e.coaction, nh, rel);
            if is_zero_vec(&img) {
                Ok(())
            } else {
                Err(format!("relation {k} maps to {}", fmt_vec(&img)))
            }
        }),
    );
    let Some(_) = &e.chi_inv else {
        r.fail("chi bijective", chi_witness(e));
        return r;
    };
    r.pass("chi bijective");

    let tau: Vec<Vector> = (0..nh).map(|i| e.tau_lift(&eh(i)).expect("galois")).collect();
    let tau_of = |v: &[Q]| e.tau_lift(v).expect("galois");
    // P (x)_B (P (x) H)
    let jp = base_junction(&e.total, &e.base_embed);
    let right_ops: Vec<Matrix> = jp.right.iter().map(|m| m.kron(&Matrix::identity(nh))).collect();
    let x3 = BalancedTensor::new(np, np * nh, &Junction::new(jp.left.clone(), right_ops));
    r.record(
        "tau(h)1 (x) tau(h)2(0) (x) tau(h)2(1) = tau(h1) (x) h2",
        each(nh, |g| {
            let mut lhs = zero_vec(np * np * nh);
            for (a, b, c) in terms2(&tau[g], np) {
                add_kron(&mut lhs, c, &ep(a), &e.coact(&ep(b)));
            }
            let mut rhs = zero_vec(np * np * nh);
            for (p, q, c) in terms2(&h.coproduct(&eh(g)), nh) {
                for (a, b, d) in terms2(&tau[p], np) {
                    add_kron(&mut rhs, &(c * d), &kron_vec(&ep(a), &ep(b)), &eh(q));
                }
            }
            cmp(&format!("on h{g}"), &x3.project(&lhs), &x3.project(&rhs))
        }),
    );
    r.record(
        "tau(h2) (x) S(h1) = tau(h)1(0) (x) tau(h)2 (x) tau(h)1(1)",
        each(nh, |g| {
            let mut lhs = zero_vec(np * np * nh);
            for (p, q, c) in terms2(&h.coproduct(&eh(g)), nh) {
                for (a, b, d) in terms2(&tau[q], np) {
                    add_kron(&mut lhs, &(c * d), &kron_vec(&ep(a), &ep(b)), &h.antipode.column(p));
                }
            }
            let mut rhs = zero_vec(np * np * nh);
            for (a, b, c) in terms2(&tau[g], np) {
                for (u, v, d) in terms2(&e.coact(&ep(a)), nh) {
                    add_kron(&mut rhs, &(c * d), &kron_vec(&ep(u), &ep(b)), &eh(v));
                }
            }
            cmp(&format!("on h{g}"), &x3.project(&lhs), &x3.project(&rhs))
        }),
    );
    r.record(
        "tau(h)1 tau(h)2(0) (x) tau(h)2(1) = 1 (x) h",
        each(nh, |g| {
            let lhs = chi_ambient(&e.total, &e.coaction, nh, &tau[g]);
            cmp(&format!("on h{g}"), &lhs, &kron_vec(e.total.unit(), &eh(g)))
        }),
    );
    r.record(
        "p(0) tau(p(1))1 (x) tau(p(1))2 = 1 (x) p",
        each(np, |p| {
            let mut lhs = zero_vec(np * np);
            for (u, v, c) in terms2(&e.coact(&ep(p)), nh) {
                for (a, b, d) in terms2(&tau[v], np) {
                    add_kron(&mut lhs, &(c * d), &e.total.mul(&ep(u), &ep(a)), &ep(b));
                }
            }
            cmp(&format!("on e{p}"), &e.tensor.project(&lhs), &e.tensor.project_pair(e.total.unit(), &ep(p)))
        }),
    );
    let chain = TensorChain::new(&[np, np, np], &[jp.clone(), jp]);
    r.record(
        "tau(h1)1 (x) tau(h1)2 tau(h2)1 (x) tau(h2)2 = tau(h)1 (x) 1 (x) tau(h)2",
        each(nh, |g| {
            let mut lhs = zero_vec(np * np * np);
            for (p, q, c) in terms2(&h.coproduct(&eh(g)), nh) {
                for (a, b, d) in terms2(&tau[p], np) {
                    for (x, y, f) in terms2(&tau[q], np) {
                        let mid = e.total.mul(&ep(b), &ep(x));
                        add_kron(&mut lhs, &(c * &(d * f)), &kron_vec(&ep(a), &mid), &ep(y));
                    }
                }
            }
            let mut rhs = zero_vec(np * np * np);
            for (a, b, c) in terms2(&tau[g], np) {
                add_kron(&mut rhs, c, &kron_vec(&ep(a), e.total.unit()), &ep(b));
            }
            cmp(&format!("on h{g}"), &chain.project(&lhs), &chain.project(&rhs))
        }),
    );
    match (e.total.star_matrix(), h.alg.star_matrix()) {
        (Some(mp), Some(mh)) => {
            r.record(
                "tau(h*) = tau(S^-1 h)2* (x) tau(S^-1 h)1*",
                each(nh, |g| {
                    let lhs = e.tensor.project(&tau_of(&mh.column(g)));
                    let pre = tau_of(&h.antipode_inv.column(g));
                    let rhs = e.tensor.project(&flip(&apply2(mp, mp, &conj_vec(&pre)), np, np));
                    cmp(&format!("on h{g}"), &lhs, &rhs)
                }),
            );
        }
        _ => r.fail("stars present", "P or H has no star"),
    }
    r
}

/// A vector of `P (x) H` outside the image of `chi`, preferring `1 (x) h`.
fn chi_witness(e: &HopfGaloisExtension) -> String {
    let (np, nh) = (e.np(), e.nh());
    let kernel = e.chi.kernel();
    let cols = e.chi.transpose().row_vecs();
    let image = Subspace::from_vectors(np * nh, cols.iter().map(|v| v.as_slice()));
    for g in 0..nh {
        let v = kron_vec(e.total.unit(), &unit_vec(nh, g));
        if !image.contains(&v) {
            return format!("1 (x) {} is not in the image (rank {} of {}; kernel dim {})", e.hopf.alg.basis[g], image.dim(), np * nh, kernel.dim());
        }
    }
    for i in 0..np * nh {
        if !image.contains(&unit_vec(np * nh, i)) {
            return format!("basis vector {i} of P (x) H is not in the image (kernel dim {})", kernel.dim());
        }
    }
    format!("chi has kernel of dim {} (domain dim {}, codomain dim {})", kernel.dim(), e.tensor.dim(), np * nh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_over_z2() {
        let e = HopfGaloisExtension::cyclic(4, 2).unwrap();
        assert_eq!(e.base.dim(), 2);
        let r = check_hopf_galois(&e);
        assert!(r.all_pass(), "{r}");
        // tau(g) = u^3 (x)_B u
        let t = e.tau(&unit_vec(2, 1)).unwrap();
        assert_eq!(t, e.tensor.project_pair(&unit_vec(4, 3), &unit_vec(4, 1)));
        // chi(u^3 (x) u) = 1 (x) g
        let lift = e.tensor.section(&t);
        let img = chi_ambient(&e.total, &e.coaction, 2, &lift);
        assert_eq!(img, kron_vec(&unit_vec(4, 0), &unit_vec(2, 1)));
    }

    #[test]
    fn regular_extension_translation_map() {
        let h = HopfStarAlgebra::symmetric3();
        let e = HopfGaloisExtension::regular(&h).unwrap();
        assert_eq!(e.base.dim(), 1);
        let r = check_hopf_galois(&e);
        assert!(r.all_pass(), "{r}");
        // tau(h) = S(h1) (x) h2
        for g in 0..6 {
            let mut expect = zero_vec(36);
            for (p, q, c) in terms2(&h.delta.column(g), 6) {
                add_kron(&mut expect, c, &h.antipode.column(p), &unit_vec(6, q));
            }
            assert_eq!(e.tau(&unit_vec(6, g)).unwrap(), e.tensor.project(&expect));
        }
    }

    #[test]
    fn trivial_coaction_is_not_galois() {
        let p = HopfStarAlgebra::cyclic(2).alg;
        let e = HopfGaloisExtension::trivial(p, &HopfStarAlgebra::cyclic(2)).unwrap();
        let r = check_hopf_galois(&e);
        assert!(!r.is_pass("chi bijective"));
    }
}
