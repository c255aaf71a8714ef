//! Galois maps of left and right bialgebroids and the translation data they
//! tabulate when invertible.

use super::{LeftBialgebroid, RightBialgebroid};
use crate::linalg::{axpy, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, flip, terms2, BalancedTensor};

/// A linear map between two balanced quotients, with its inverse if any.
#[derive(Clone, Debug)]
pub struct GaloisMap {
    pub name: String,
    pub domain: BalancedTensor,
    pub codomain: BalancedTensor,
    pub matrix: Matrix,
    pub inverse: Option<Matrix>,
}

impl GaloisMap {
    /// `f(i, j)` is the ambient image of the representative `e_i (x) e_j`.
    pub fn build(name: &str, domain: BalancedTensor, codomain: BalancedTensor, f: impl Fn(usize, usize) -> Vector) -> Self {
        let cols: Vec<Vector> = (0..domain.dim())
            .map(|k| {
                let (i, j) = domain.representative_pair(k);
                codomain.project(&f(i, j))
            })
            .collect();
        let matrix = Matrix::from_columns(codomain.dim(), &cols);
        let inverse = matrix.inverse();
        GaloisMap { name: name.into(), domain, codomain, matrix, inverse }
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    /// Canonical ambient lift of the preimage of an ambient codomain tensor.
    pub fn preimage(&self, v: &[Q]) -> Option<Vector> {
        let inv = self.inverse.as_ref()?;
        Some(self.domain.section(&inv.apply(&self.codomain.project(v))))
    }

    /// Why the map fails to be bijective.
    pub fn witness(&self) -> String {
        let (dd, dc) = (self.domain.dim(), self.codomain.dim());
        if dd != dc {
            return format!("{}: domain dim {dd} differs from codomain dim {dc}", self.name);
        }
        let img = Subspace::from_vectors(dc, self.matrix.transpose().row_vecs().iter().map(|v| v.as_slice()));
        for k in 0..dc {
            let e = unit_vec(dc, k);
            if !img.contains(&e) {
                return format!("{}: rank {} < {dc}; quotient basis vector {k} is not in the image", self.name, img.dim());
            }
        }
        format!("{}: singular", self.name)
    }

    pub fn outcome(&self) -> Outcome {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(self.witness())
        }
    }
}

/// `X (x)_{B^op} Y -> X_(1) (x)_B X_(2) Y`.
pub fn lambda(d: &LeftBialgebroid) -> GaloisMap {
    let n = d.dim();
    GaloisMap::build("lambda", d.lambda_domain(), d.tensor().clone(), |i, j| {
        let ej = unit_vec(n, j);
        let mut out = zero_vec(n * n);
        for (p, q, c) in terms2(d.delta_lift_basis(i), n) {
            add_kron(&mut out, c, &unit_vec(n, p), &d.total.mul(&unit_vec(n, q), &ej));
        }
        out
    })
}

/// `X (x)^B Y -> Y_(1) X (x)_B Y_(2)`.
pub fn mu(d: &LeftBialgebroid) -> GaloisMap {
    let n = d.dim();
    GaloisMap::build("mu", d.mu_domain(), d.tensor().clone(), |i, j| {
        let ei = unit_vec(n, i);
        let mut out = zero_vec(n * n);
        for (p, q, c) in terms2(d.delta_lift_basis(j), n) {
            add_kron(&mut out, c, &d.total.mul(&unit_vec(n, p), &ei), &unit_vec(n, q));
        }
        out
    })
}

/// `X (x)_{A^op} Y -> X Y_[1] (x)_A Y_[2]`.
pub fn lambda_hat(d: &RightBialgebroid) -> GaloisMap {
    let n = d.dim();
    GaloisMap::build("lambda-hat", d.lambda_domain(), d.tensor().clone(), |i, j| {
        let ei = unit_vec(n, i);
        let mut out = zero_vec(n * n);
        for (p, q, c) in terms2(d.delta_lift_basis(j), n) {
            add_kron(&mut out, c, &d.total.mul(&ei, &unit_vec(n, p)), &unit_vec(n, q));
        }
        out
    })
}

/// `X (x)^A Y -> X_[1] (x)_A Y X_[2]`.
pub fn mu_hat(d: &RightBialgebroid) -> GaloisMap {
    let n = d.dim();
    GaloisMap::build("mu-hat", d.mu_domain(), d.tensor().clone(), |i, j| {
        let ej = unit_vec(n, j);
        let mut out = zero_vec(n * n);
        for (p, q, c) in terms2(d.delta_lift_basis(i), n) {
            add_kron(&mut out, c, &unit_vec(n, p), &d.total.mul(&ej, &unit_vec(n, q)));
        }
        out
    })
}

/// Galois maps of a left bialgebroid with their tabulated translation data.
#[derive(Clone, Debug)]
pub struct LeftGalois {
    pub lambda: GaloisMap,
    pub mu: GaloisMap,
    /// Ambient lifts of `X_+ (x) X_-` per basis element.
    pub plus_minus: Option<Vec<Vector>>,
    /// Ambient lifts of `X_[-] (x) X_[+]` per basis element.
    pub minus_plus: Option<Vec<Vector>>,
}

impl LeftGalois {
    pub fn new(d: &LeftBialgebroid) -> Self {
        let n = d.dim();
        let one = d.total.unit().clone();
        let lambda = lambda(d);
        let mu = mu(d);
        let plus_minus = lambda.inverse.as_ref().map(|_| {
            (0..n).map(|i| lambda.preimage(&crate::linalg::kron_vec(&unit_vec(n, i), &one)).unwrap()).collect()
        });
        let minus_plus = mu.inverse.as_ref().map(|_| {
            (0..n).map(|i| mu.preimage(&crate::linalg::kron_vec(&one, &unit_vec(n, i))).unwrap()).collect()
        });
        LeftGalois { lambda, mu, plus_minus, minus_plus }
    }

    /// `X_+ (x) X_-` for an arbitrary element (ambient lift).
    pub fn plus_minus_of(&self, x: &[Q]) -> Option<Vector> {
        combine(self.plus_minus.as_ref()?, x)
    }

    pub fn minus_plus_of(&self, x: &[Q]) -> Option<Vector> {
        combine(self.minus_plus.as_ref()?, x)
    }
}

pub(crate) fn combine(table: &[Vector], x: &[Q]) -> Option<Vector> {
    let mut out = zero_vec(table.first().map_or(0, Vec::len));
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            axpy(&mut out, xi, &table[i]);
        }
    }
    Some(out)
}

fn cmp(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: lhs {} vs rhs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

fn inverse_two_sided(g: &GaloisMap) -> Outcome {
    let inv = g.inverse.as_ref().ok_or_else(|| g.witness())?;
    if g.matrix.mul(inv).is_identity() && inv.mul(&g.matrix).is_identity() {
        Ok(())
    } else {
        Err(format!("{}: inverse fails to be two-sided", g.name))
    }
}

/// Invertibility of lambda and mu and the cancellation identities of the
/// tabulated translation data.
pub fn check_left_galois(d: &LeftBialgebroid, g: &LeftGalois) -> Report {
    let mut r = Report::new(format!("Galois maps of {}", d.name));
    let n = d.dim();
    let alg = &d.total;
    let bt = d.tensor();
    r.dim("lambda domain", g.lambda.domain.dim());
    r.dim("mu domain", g.mu.domain.dim());
    r.record("lambda invertible", g.lambda.outcome());
    r.record("mu invertible", g.mu.outcome());
    if let Some(pm) = &g.plus_minus {
        r.record("lambda inverse is two-sided", inverse_two_sided(&g.lambda));
        r.record(
            "X+(1) (x) X+(2) X- = X (x) 1",
            (0..n).try_for_each(|i| {
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(&pm[i], n) {
                    for (u, v, e) in terms2(d.delta_lift_basis(p), n) {
                        add_kron(&mut w, &(c * e), &unit_vec(n, u), &alg.mul(&unit_vec(n, v), &unit_vec(n, q)));
                    }
                }
                cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(&unit_vec(n, i), alg.unit()))
            }),
        );
        r.record(
            "X+ X- = s(eps X)",
            (0..n).try_for_each(|i| {
                let lhs = contract(alg, &pm[i], false);
                cmp(&format!("on e{i}"), &lhs, &d.s_of(&d.eps.column(i)))
            }),
        );
    }
    if let Some(mp) = &g.minus_plus {
        r.record("mu inverse is two-sided", inverse_two_sided(&g.mu));
        r.record(
            "X[+](1) X[-] (x) X[+](2) = 1 (x) X",
            (0..n).try_for_each(|i| {
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(&mp[i], n) {
                    for (u, v, e) in terms2(d.delta_lift_basis(q), n) {
                        add_kron(&mut w, &(c * e), &alg.mul(&unit_vec(n, u), &unit_vec(n, p)), &unit_vec(n, v));
                    }
                }
                cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(alg.unit(), &unit_vec(n, i)))
            }),
        );
        r.record(
            "X[+] X[-] = t(eps X)",
            (0..n).try_for_each(|i| {
                let lhs = contract(alg, &mp[i], true);
                cmp(&format!("on e{i}"), &lhs, &d.t_of(&d.eps.column(i)))
            }),
        );
    }
    r
}

/// `sum u (x) v -> sum u v` (or `v u` when `reversed`).
pub fn contract(alg: &crate::algebra::FiniteStarAlgebra, v: &[Q], reversed: bool) -> Vector {
    let n = alg.dim();
    let mut out = zero_vec(n);
    for (p, q, c) in terms2(v, n) {
        let prod = if reversed { alg.product(q, p) } else { alg.product(p, q) };
        for (k, x) in prod {
            out[*k] += &(c * x);
        }
    }
    out
}

/// Galois maps of a right bialgebroid.
#[derive(Clone, Debug)]
pub struct RightGalois {
    pub lambda_hat: GaloisMap,
    pub mu_hat: GaloisMap,
    /// `X^-hat (x) X^+hat = lambda-hat^{-1}(1 (x) X)`.
    pub minus_plus: Option<Vec<Vector>>,
    /// `X^[+]hat (x) X^[-]hat = mu-hat^{-1}(X (x) 1)`.
    pub plus_minus: Option<Vec<Vector>>,
}

impl RightGalois {
    pub fn new(d: &RightBialgebroid) -> Self {
        let n = d.dim();
        let one = d.total.unit().clone();
        let lambda_hat = lambda_hat(d);
        let mu_hat = mu_hat(d);
        let minus_plus = lambda_hat.inverse.as_ref().map(|_| {
            (0..n).map(|i| lambda_hat.preimage(&crate::linalg::kron_vec(&one, &unit_vec(n, i))).unwrap()).collect()
        });
        let plus_minus = mu_hat.inverse.as_ref().map(|_| {
            (0..n).map(|i| mu_hat.preimage(&crate::linalg::kron_vec(&unit_vec(n, i), &one)).unwrap()).collect()
        });
        RightGalois { lambda_hat, mu_hat, minus_plus, plus_minus }
    }

    pub fn minus_plus_of(&self, x: &[Q]) -> Option<Vector> {
        combine(self.minus_plus.as_ref()?, x)
    }

    pub fn plus_minus_of(&self, x: &[Q]) -> Option<Vector> {
        combine(self.plus_minus.as_ref()?, x)
    }
}

pub fn check_right_galois(d: &RightBialgebroid, g: &RightGalois) -> Report {
    let mut r = Report::new(format!("Galois maps of {}", d.name));
    let n = d.dim();
    let alg = &d.total;
    let bt = d.tensor();
    r.dim("lambda-hat domain", g.lambda_hat.domain.dim());
    r.dim("mu-hat domain", g.mu_hat.domain.dim());
    r.record("lambda-hat invertible", g.lambda_hat.outcome());
    r.record("mu-hat invertible", g.mu_hat.outcome());
    if let Some(mp) = &g.minus_plus {
        r.record("lambda-hat inverse is two-sided", inverse_two_sided(&g.lambda_hat));
        r.record(
            "X^- X^+[1] (x) X^+[2] = 1 (x) X",
            (0..n).try_for_each(|i| {
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(&mp[i], n) {
                    for (u, v, e) in terms2(d.delta_lift_basis(q), n) {
                        add_kron(&mut w, &(c * e), &alg.mul(&unit_vec(n, p), &unit_vec(n, u)), &unit_vec(n, v));
                    }
                }
                cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(alg.unit(), &unit_vec(n, i)))
            }),
        );
        r.record(
            "X^- X^+ = s_R(eps_R X)",
            (0..n).try_for_each(|i| cmp(&format!("on e{i}"), &contract(alg, &mp[i], false), &d.s_of(&d.eps.column(i)))),
        );
    }
    if let Some(pm) = &g.plus_minus {
        r.record("mu-hat inverse is two-sided", inverse_two_sided(&g.mu_hat));
        r.record(
            "X^[+][1] (x) X^[-] X^[+][2] = X (x) 1",
            (0..n).try_for_each(|i| {
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(&pm[i], n) {
                    for (u, v, e) in terms2(d.delta_lift_basis(p), n) {
                        add_kron(&mut w, &(c * e), &unit_vec(n, u), &alg.mul(&unit_vec(n, q), &unit_vec(n, v)));
                    }
                }
                cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(&unit_vec(n, i), alg.unit()))
            }),
        );
        r.record(
            "X^[-] X^[+] = t_R(eps_R X)",
            (0..n).try_for_each(|i| cmp(&format!("on e{i}"), &contract(alg, &pm[i], true), &d.t_of(&d.eps.column(i)))),
        );
    }
    r
}

/// The cop lemma: translation data of the co-opposite is the flipped data
/// of the original. Requires both Galois maps of `d` to invert.
pub fn check_cop_lemma(d: &LeftBialgebroid, g: &LeftGalois) -> Report {
    let mut r = Report::new(format!("cop translation data of {}", d.name));
    let n = d.dim();
    let c = d.cop();
    let gc = LeftGalois::new(&c);
    r.record("cop lambda invertible iff mu invertible", {
        if gc.lambda.is_invertible() == g.mu.is_invertible() && gc.mu.is_invertible() == g.lambda.is_invertible() {
            Ok(())
        } else {
            Err("invertibility of cop Galois maps does not match".into())
        }
    });
    if let (Some(pm), Some(mpc)) = (&g.plus_minus, &gc.minus_plus) {
        let dom = d.lambda_domain();
        r.record(
            "X_[+]cop (x) X_[-]cop = X+ (x) X-",
            (0..n).try_for_each(|i| {
                cmp(&format!("on e{i}"), &dom.project(&flip(&mpc[i], n, n)), &dom.project(&pm[i]))
            }),
        );
    }
    if let (Some(mp), Some(pmc)) = (&g.minus_plus, &gc.plus_minus) {
        let dom = c.lambda_domain();
        r.record(
            "X+cop (x) X-cop = X[+] (x) X[-]",
            (0..n).try_for_each(|i| cmp(&format!("on e{i}"), &dom.project(&pmc[i]), &dom.project(&flip(&mp[i], n, n)))),
        );
    }
    r
}
