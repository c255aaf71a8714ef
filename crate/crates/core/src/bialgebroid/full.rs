//! Full Hopf algebroids: a left bialgebroid with an invertible anti-algebra
//! antipode, the right bialgebroid it determines, and the optional star.

use std::sync::OnceLock;

use super::galois::{check_left_galois, check_right_galois, LeftGalois, RightGalois};
use super::{check_left_bialgebroid, check_right_bialgebroid, LeftBialgebroid, RightBialgebroid};
use crate::algebra::{apply_antilinear, check_algebra_map, check_antilinear_anti_map, FiniteStarAlgebra};
use crate::linalg::{conj_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, apply2, terms2, TensorChain};

#[derive(Clone, Debug)]
pub struct FullHopfAlgebroid {
    pub left: LeftBialgebroid,
    pub antipode: Matrix,
    pub antipode_inv: Matrix,
    /// Antilinear star as `X -> M conj(X)`.
    pub star: Option<Matrix>,
    /// Right structure supplied with the input, compared against the derived one.
    pub supplied_right: Option<RightBialgebroid>,
    derived: OnceLock<RightBialgebroid>,
}

impl FullHopfAlgebroid {
    pub fn new(left: LeftBialgebroid, antipode: Matrix, antipode_inv: Matrix, star: Option<Matrix>) -> Self {
        FullHopfAlgebroid { left, antipode, antipode_inv, star, supplied_right: None, derived: OnceLock::new() }
    }

    pub fn with_supplied_right(mut self, r: RightBialgebroid) -> Self {
        self.supplied_right = Some(r);
        self
    }

    pub fn name(&self) -> &str {
        &self.left.name
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn total(&self) -> &FiniteStarAlgebra {
        &self.left.total
    }

    pub fn s(&self, x: &[Q]) -> Vector {
        self.antipode.apply(x)
    }

    pub fn s_inv(&self, x: &[Q]) -> Vector {
        self.antipode_inv.apply(x)
    }

    pub fn star_of(&self, x: &[Q]) -> Vector {
        apply_antilinear(self.star.as_ref().expect("no star"), x)
    }

    /// Right bialgebroid over `A = B^op` built from the antipode.
    pub fn derived_right(&self) -> &RightBialgebroid {
        self.derived.get_or_init(|| {
            let l = &self.left;
            let n = l.dim();
            let s_r = l.t.clone();
            let t_r = self.antipode_inv.mul(&l.t);
            let delta = (0..n)
                .map(|i| {
                    let pre = self.s_inv(&unit_vec(n, i));
                    let lift = l.delta_lift(&pre);
                    let mut out = zero_vec(n * n);
                    for (p, q, c) in terms2(&lift, n) {
                        add_kron(&mut out, c, &self.antipode.column(q), &self.antipode.column(p));
                    }
                    out
                })
                .collect();
            let eps = l.eps.mul(&self.antipode);
            RightBialgebroid::new(format!("{} (derived right)", l.name), l.total.clone(), l.base.opposite(), s_r, t_r, delta, eps)
                .expect("derived shapes")
        })
    }

    /// Replace the antipode by its inverse (mutation testing).
    pub fn with_antipode_swapped(&self) -> Self {
        FullHopfAlgebroid::new(self.left.clone(), self.antipode_inv.clone(), self.antipode.clone(), self.star.clone())
    }

    pub fn with_star(mut self, star: Option<Matrix>) -> Self {
        self.star = star;
        self
    }
}

fn cmp(label: &str, lhs: &[Q], rhs: &[Q]) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{label}: lhs {} vs rhs {}", fmt_vec(lhs), fmt_vec(rhs)))
    }
}

fn each(n: usize, f: impl FnMut(usize) -> Outcome) -> Outcome {
    (0..n).try_for_each(f)
}

pub fn check_full_hopf(h: &FullHopfAlgebroid) -> Report {
    let mut r = Report::new(format!("full Hopf algebroid {}", h.name()));
    let l = &h.left;
    let n = l.dim();
    let alg = &l.total;
    r.absorb("left", check_left_bialgebroid(l));
    let inv_ok = h.antipode.mul(&h.antipode_inv).is_identity() && h.antipode_inv.mul(&h.antipode).is_identity();
    r.flag("antipode invertible", inv_ok, "supplied inverse is not a two-sided inverse");
    r.record("antipode is an anti-algebra map", check_algebra_map(&h.antipode, alg, alg, true));
    r.record("S t_L = s_L", cmp("columns", h.antipode.mul(&l.t).data(), l.s.data()));
    let bt = l.tensor();
    r.record(
        "condition (S^-1 X2)1 (x) (S^-1 X2)2 X1 = S^-1 X (x) 1",
        each(n, |i| {
            let mut w = zero_vec(n * n);
            for (p, q, c) in terms2(l.delta_lift_basis(i), n) {
                let inner = l.delta_lift(&h.s_inv(&unit_vec(n, q)));
                for (u, v, e) in terms2(&inner, n) {
                    add_kron(&mut w, &(c * e), &unit_vec(n, u), &alg.mul(&unit_vec(n, v), &unit_vec(n, p)));
                }
            }
            cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(&h.s_inv(&unit_vec(n, i)), alg.unit()))
        }),
    );
    r.record(
        "condition S(X1)1 X2 (x) S(X1)2 = 1 (x) S X",
        each(n, |i| {
            let mut w = zero_vec(n * n);
            for (p, q, c) in terms2(l.delta_lift_basis(i), n) {
                let inner = l.delta_lift(&h.s(&unit_vec(n, p)));
                for (u, v, e) in terms2(&inner, n) {
                    add_kron(&mut w, &(c * e), &alg.mul(&unit_vec(n, u), &unit_vec(n, q)), &unit_vec(n, v));
                }
            }
            cmp(&format!("on e{i}"), &bt.project(&w), &bt.project_pair(alg.unit(), &h.s(&unit_vec(n, i))))
        }),
    );
    if !inv_ok {
        r.note("antipode not invertible; derived right structure skipped");
        return r;
    }

    let rr = h.derived_right();
    r.absorb("derived right", check_right_bialgebroid(rr));
    let rt = rr.tensor();
    r.record(
        "both expressions of the derived right coproduct agree",
        each(n, |i| {
            let lift = l.delta_lift(&h.s(&unit_vec(n, i)));
            let mut w = zero_vec(n * n);
            for (p, q, c) in terms2(&lift, n) {
                add_kron(&mut w, c, &h.antipode_inv.column(q), &h.antipode_inv.column(p));
            }
            cmp(&format!("on e{i}"), &rt.project(&w), &rr.delta_q(&unit_vec(n, i)))
        }),
    );
    if let Some(sup) = &h.supplied_right {
        r.record("supplied right structure matches derived", compare_right(sup, rr));
    }
    let span = |m: &Matrix| Subspace::from_vectors(n, m.transpose().row_vecs().iter().map(|v| v.as_slice()));
    r.flag("s_L(B) = t_R(A)", span(&l.s) == span(&rr.t), "subalgebras differ");
    r.flag("t_L(B) = s_R(A)", span(&l.t) == span(&rr.s), "subalgebras differ");

    let jl = super::junction(alg, &l.t, super::Mul::Left, &l.s, super::Mul::Left);
    let jr = rr.junction();
    let blr = TensorChain::new(&[n, n, n], &[jl.clone(), jr.clone()]);
    let brl = TensorChain::new(&[n, n, n], &[jr, jl]);
    r.record(
        "mixed coassociativity (id (x)_B Delta_R) Delta_L = (Delta_L (x)_A id) Delta_R",
        each(n, |i| {
            let mut lhs = zero_vec(n * n * n);
            for (p, q, c) in terms2(l.delta_lift_basis(i), n) {
                add_kron(&mut lhs, c, &unit_vec(n, p), rr.delta_lift_basis(q));
            }
            let mut rhs = zero_vec(n * n * n);
            for (p, q, c) in terms2(rr.delta_lift_basis(i), n) {
                add_kron(&mut rhs, c, l.delta_lift_basis(p), &unit_vec(n, q));
            }
            cmp(&format!("on e{i}"), &blr.project(&lhs), &blr.project(&rhs))
        }),
    );
    r.record(
        "mixed coassociativity (id (x)_A Delta_L) Delta_R = (Delta_R (x)_B id) Delta_L",
        each(n, |i| {
            let mut lhs = zero_vec(n * n * n);
            for (p, q, c) in terms2(rr.delta_lift_basis(i), n) {
                add_kron(&mut lhs, c, &unit_vec(n, p), l.delta_lift_basis(q));
            }
            let mut rhs = zero_vec(n * n * n);
            for (p, q, c) in terms2(l.delta_lift_basis(i), n) {
                add_kron(&mut rhs, c, rr.delta_lift_basis(p), &unit_vec(n, q));
            }
            cmp(&format!("on e{i}"), &brl.project(&lhs), &brl.project(&rhs))
        }),
    );
    for (label, m) in [("S", &h.antipode), ("S^-1", &h.antipode_inv)] {
        r.record(
            format!("{label}(X)[1] (x)_A {label}(X)[2] = {label}(X2) (x)_A {label}(X1)"),
            each(n, |i| {
                let lhs = rr.delta_q(&m.column(i));
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(l.delta_lift_basis(i), n) {
                    add_kron(&mut w, c, &m.column(q), &m.column(p));
                }
                cmp(&format!("on e{i}"), &lhs, &rt.project(&w))
            }),
        );
        r.record(
            format!("{label}(X)1 (x)_B {label}(X)2 = {label}(X[2]) (x)_B {label}(X[1])"),
            each(n, |i| {
                let lhs = l.delta_q(&m.column(i));
                let mut w = zero_vec(n * n);
                for (p, q, c) in terms2(rr.delta_lift_basis(i), n) {
                    add_kron(&mut w, c, &m.column(q), &m.column(p));
                }
                cmp(&format!("on e{i}"), &lhs, &bt.project(&w))
            }),
        );
    }

    let lg = LeftGalois::new(l);
    r.absorb("left galois", check_left_galois(l, &lg));
    let rg = RightGalois::new(rr);
    r.absorb("right galois", check_right_galois(rr, &rg));
    if let Some(pm) = &lg.plus_minus {
        let dom = &lg.lambda.domain;
        r.record(
            "X+ (x) X- = X[1] (x) S(X[2])",
            each(n, |i| {
                let w = apply2(&Matrix::identity(n), &h.antipode, rr.delta_lift_basis(i));
                cmp(&format!("on e{i}"), &dom.project(&pm[i]), &dom.project(&w))
            }),
        );
        r.record(
            "S(X) = s_R(eps_R(X+)) X-",
            each(n, |i| {
                let mut out = zero_vec(n);
                for (p, q, c) in terms2(&pm[i], n) {
                    let a = rr.s_of(&rr.eps_of(&unit_vec(n, p)));
                    crate::linalg::axpy(&mut out, c, &alg.mul(&a, &unit_vec(n, q)));
                }
                cmp(&format!("on e{i}"), &out, &h.antipode.column(i))
            }),
        );
    }
    if let Some(mp) = &lg.minus_plus {
        let dom = &lg.mu.domain;
        r.record(
            "X[-] (x) X[+] = S^-1(X[1]) (x) X[2]",
            each(n, |i| {
                let w = apply2(&h.antipode_inv, &Matrix::identity(n), rr.delta_lift_basis(i));
                cmp(&format!("on e{i}"), &dom.project(&mp[i]), &dom.project(&w))
            }),
        );
        r.record(
            "S^-1(X) = t_R(eps_R(X[+])) X[-]",
            each(n, |i| {
                let mut out = zero_vec(n);
                for (p, q, c) in terms2(&mp[i], n) {
                    let a = rr.t_of(&rr.eps_of(&unit_vec(n, q)));
                    crate::linalg::axpy(&mut out, c, &alg.mul(&a, &unit_vec(n, p)));
                }
                cmp(&format!("on e{i}"), &out, &h.antipode_inv.column(i))
            }),
        );
    }
    if let Some(mp) = &rg.minus_plus {
        let dom = &rg.lambda_hat.domain;
        r.record(
            "X^- (x) X^+ = S(X1) (x) X2",
            each(n, |i| {
                let w = apply2(&h.antipode, &Matrix::identity(n), l.delta_lift_basis(i));
                cmp(&format!("on e{i}"), &dom.project(&mp[i]), &dom.project(&w))
            }),
        );
    }
    if let Some(pm) = &rg.plus_minus {
        let dom = &rg.mu_hat.domain;
        r.record(
            "X^[+] (x) X^[-] = X1 (x) S^-1(X2)",
            each(n, |i| {
                let w = apply2(&Matrix::identity(n), &h.antipode_inv, l.delta_lift_basis(i));
                cmp(&format!("on e{i}"), &dom.project(&pm[i]), &dom.project(&w))
            }),
        );
    }
    r
}

fn compare_right(a: &RightBialgebroid, b: &RightBialgebroid) -> Outcome {
    let n = a.dim();
    if a.dim() != b.dim() || a.base_dim() != b.base_dim() {
        return Err("dimensions differ".into());
    }
    cmp("source map", a.s.data(), b.s.data())?;
    cmp("target map", a.t.data(), b.t.data())?;
    cmp("counit", a.eps.data(), b.eps.data())?;
    each(n, |i| cmp(&format!("coproduct on e{i}"), &b.tensor().project(&a.delta[i]), &b.delta_q(&unit_vec(n, i))))
}

/// `(f (x) g) v` for antilinear `f`, `g` given as matrices after conjugation.
pub fn apply2_antilinear(f: &Matrix, g: &Matrix, v: &[Q]) -> Vector {
    apply2(f, g, &conj_vec(v))
}

/// Star axioms of a full star Hopf algebroid.
pub fn check_full_star_hopf(h: &FullHopfAlgebroid) -> Report {
    let mut r = Report::new(format!("full star Hopf algebroid {}", h.name()));
    let Some(star) = &h.star else {
        r.fail("star present", "no star supplied");
        return r;
    };
    let l = &h.left;
    let n = l.dim();
    let alg = &l.total;
    let base = &l.base;
    let b = l.base_dim();
    let Some(bstar) = base.star_matrix() else {
        r.fail("base star present", "base algebra has no star");
        return r;
    };
    let involutive = star.mul(&star.conj()).is_identity();
    r.flag("star involutive", involutive, "M conj(M) is not the identity");
    r.record("star antilinear anti-algebra map", check_antilinear_anti_map(star, alg, alg));
    let rr = h.derived_right();
    r.record(
        "s_L(b)* = t_R(b*)",
        each(b, |a| {
            let lhs = apply_antilinear(star, &l.s.column(a));
            let rhs = rr.t_of(&bstar.column(a));
            cmp(&format!("on b{a}"), &lhs, &rhs)
        }),
    );
    r.record(
        "t_L(b)* = s_R(b*)",
        each(b, |a| cmp(&format!("on b{a}"), &apply_antilinear(star, &l.t.column(a)), &rr.s_of(&bstar.column(a)))),
    );
    r.record(
        "eps_L(X*) = eps_R(X)*",
        each(n, |i| {
            let lhs = l.eps_of(&star.column(i));
            let rhs = apply_antilinear(bstar, &rr.eps_of(&unit_vec(n, i)));
            cmp(&format!("on e{i}"), &lhs, &rhs)
        }),
    );
    let rt = rr.tensor();
    r.record(
        "X*[1] (x) X*[2] = X1* (x) X2*",
        each(n, |i| {
            let lhs = rr.delta_q(&star.column(i));
            let rhs = rt.project(&apply2_antilinear(star, star, l.delta_lift_basis(i)));
            cmp(&format!("on e{i}"), &lhs, &rhs)
        }),
    );
    let lg = LeftGalois::new(l);
    let rg = RightGalois::new(rr);
    match (&lg.plus_minus, &rg.plus_minus) {
        (Some(_), Some(_)) => r.record(
            "X*+ (x) X*- = X^[+]* (x) X^[-]*",
            each(n, |i| {
                let dom = &lg.lambda.domain;
                let lhs = dom.project(&lg.plus_minus_of(&star.column(i)).unwrap());
                let rhs = dom.project(&apply2_antilinear(star, star, &rg.plus_minus.as_ref().unwrap()[i]));
                cmp(&format!("on e{i}"), &lhs, &rhs)
            }),
        ),
        _ => r.fail("X*+ (x) X*- = X^[+]* (x) X^[-]*", "lambda or mu-hat not invertible"),
    }
    match (&lg.minus_plus, &rg.minus_plus) {
        (Some(_), Some(_)) => r.record(
            "X*[-] (x) X*[+] = X^-* (x) X^+*",
            each(n, |i| {
                let dom = &lg.mu.domain;
                let lhs = dom.project(&lg.minus_plus_of(&star.column(i)).unwrap());
                let rhs = dom.project(&apply2_antilinear(star, star, &rg.minus_plus.as_ref().unwrap()[i]));
                cmp(&format!("on e{i}"), &lhs, &rhs)
            }),
        ),
        _ => r.fail("X*[-] (x) X*[+] = X^-* (x) X^+*", "mu or lambda-hat not invertible"),
    }
    // S * S * as a plain matrix: S M conj(S M).
    let sm = h.antipode.mul(star);
    let composite = sm.mul(&sm.conj());
    r.flag("S * S * = id", composite.is_identity(), format!("S*S* differs from the identity: {composite:?}"));
    r.record(
        "S^-1 * = * S",
        each(n, |i| {
            let lhs = h.s_inv(&star.column(i));
            let rhs = h.star_of(&h.antipode.column(i));
            cmp(&format!("on e{i}"), &lhs, &rhs)
        }),
    );
    r
}

/// Columns `S(e_i)` transported to another basis (used by basis-change tests).
pub fn conjugate_matrix(p: &Matrix, p_inv: &Matrix, m: &Matrix) -> Matrix {
    p_inv.mul(m).mul(p)
}
