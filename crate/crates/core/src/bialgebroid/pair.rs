//! Left-right pairs over one base: star-related, reflexive, star pairs and
//! Hopf pairs.

use super::galois::LeftGalois;
use super::{LeftBialgebroid, RightBialgebroid};
use crate::algebra::{apply_antilinear, check_algebra_map, check_antilinear_anti_map};
use crate::linalg::{is_zero_vec, Matrix};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{apply2, flip};

use super::full::apply2_antilinear;

#[derive(Clone, Debug)]
pub struct PairData {
    pub name: String,
    pub left: LeftBialgebroid,
    pub right: RightBialgebroid,
    /// Antilinear `X -> M conj(X)` from the left to the right total algebra.
    pub circ: Option<Matrix>,
    pub circ_inv: Option<Matrix>,
    pub phi: Option<Matrix>,
    pub phi_inv: Option<Matrix>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairFlags {
    pub star_related: bool,
    pub anti_star_related: bool,
    pub reflexive: bool,
    pub star_pair: bool,
    pub hopf_pair: bool,
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

/// Star-relatedness of `(l, r)` by the antilinear `m` with inverse `m_inv`.
pub fn star_related_report(l: &LeftBialgebroid, r: &RightBialgebroid, m: &Matrix, m_inv: &Matrix) -> Report {
    let mut rep = Report::new(format!("star-related ({}, {})", l.name, r.name));
    let n = l.dim();
    if r.dim() != n || r.base_dim() != l.base_dim() {
        rep.fail("same base", "dimensions of total or base algebras differ");
        return rep;
    }
    let Some(bstar) = l.base.star_matrix() else {
        rep.fail("base star present", "base has no star");
        return rep;
    };
    let inv = m_inv.mul(&m.conj()).is_identity() && m.mul(&m_inv.conj()).is_identity();
    rep.flag("circ invertible", inv, "supplied inverse does not invert");
    rep.record("circ antilinear anti-algebra map", check_antilinear_anti_map(m, &l.total, &r.total));
    let b = l.base_dim();
    rep.record(
        "s_R(a*) = s_L(a)^circ",
        each(b, |a| cmp(&format!("on a{a}"), &r.s_of(&bstar.column(a)), &apply_antilinear(m, &l.s.column(a)))),
    );
    rep.record(
        "t_R(a*) = t_L(a)^circ",
        each(b, |a| cmp(&format!("on a{a}"), &r.t_of(&bstar.column(a)), &apply_antilinear(m, &l.t.column(a)))),
    );
    rep.record(
        "eps_R(X^circ) = eps_L(X)*",
        each(n, |i| {
            cmp(&format!("on e{i}"), &r.eps_of(&m.column(i)), &apply_antilinear(bstar, &l.eps.column(i)))
        }),
    );
    let rt = r.tensor();
    rep.record(
        "flip (circ (x) circ) Delta_L = Delta_R circ",
        each(n, |i| {
            let lhs = rt.project(&flip(&apply2_antilinear(m, m, l.delta_lift_basis(i)), n, n));
            cmp(&format!("on e{i}"), &lhs, &r.delta_q(&m.column(i)))
        }),
    );
    // the flip map is well defined on the balanced quotient ...
    rep.record(
        "flip (circ (x) circ) well defined on the balanced tensor",
        l.tensor().quotient.relations().sparse_rows().iter().enumerate().try_for_each(|(k, row)| {
            let dense = crate::linalg::to_dense(n * n, row);
            let img = rt.project(&flip(&apply2_antilinear(m, m, &dense), n, n));
            if is_zero_vec(&img) {
                Ok(())
            } else {
                Err(format!("relation {k} maps to nonzero class {}", fmt_vec(&img)))
            }
        }),
    );
    // ... and carries the left Takeuchi product into the right one.
    let tk = l.takeuchi();
    rep.dim("left Takeuchi product", tk.dim());
    rep.record(
        "flip (circ (x) circ) maps Takeuchi products",
        tk.basis().iter().enumerate().try_for_each(|(k, q)| {
            let lift = l.tensor().section(q);
            let img = flip(&apply2_antilinear(m, m, &lift), n, n);
            for a in 0..b {
                let d = r.takeuchi_defect(&img, a);
                if !is_zero_vec(&d) {
                    return Err(format!("Takeuchi basis element {k} fails for base element {a}: {}", fmt_vec(&d)));
                }
            }
            Ok(())
        }),
    );
    rep
}

/// Reflexivity by a linear anti-algebra coalgebra map `phi`.
pub fn reflexive_report(l: &LeftBialgebroid, r: &RightBialgebroid, phi: &Matrix, phi_inv: &Matrix) -> Report {
    let mut rep = Report::new(format!("reflexive ({}, {})", l.name, r.name));
    let n = l.dim();
    let inv = phi.mul(phi_inv).is_identity() && phi_inv.mul(phi).is_identity();
    rep.flag("Phi invertible", inv, "supplied inverse does not invert");
    rep.record("Phi anti-algebra map", check_algebra_map(phi, &l.total, &r.total, true));
    rep.record("Phi s_L = t_R", cmp("columns", phi.mul(&l.s).data(), r.t.data()));
    rep.record("Phi t_L = s_R", cmp("columns", phi.mul(&l.t).data(), r.s.data()));
    let rt = r.tensor();
    rep.record(
        "Phi coalgebra map",
        each(n, |i| {
            let lhs = rt.project(&apply2(phi, phi, l.delta_lift_basis(i)));
            cmp(&format!("on e{i}"), &lhs, &r.delta_q(&phi.column(i)))
        }),
    );
    rep.record("eps_R Phi = eps_L", cmp("counit", r.eps.mul(phi).data(), l.eps.data()));
    rep
}

pub fn check_pair(p: &PairData) -> (Report, PairFlags) {
    let mut rep = Report::new(format!("pair {}", p.name));
    let mut flags = PairFlags::default();
    if let (Some(m), Some(mi)) = (&p.circ, &p.circ_inv) {
        let sr = star_related_report(&p.left, &p.right, m, mi);
        flags.star_related = sr.passed();
        rep.absorb("star-related", sr);
        let anti = star_related_report(&p.left.cop(), &p.right, m, mi);
        flags.anti_star_related = anti.passed();
        rep.note(format!("anti-star-related (cop of the left side is star-related): {}", flags.anti_star_related));
    }
    if let (Some(phi), Some(pi)) = (&p.phi, &p.phi_inv) {
        let rf = reflexive_report(&p.left, &p.right, phi, pi);
        flags.reflexive = rf.passed();
        rep.absorb("reflexive", rf);
    }
    if let (Some(m), Some(mi), Some(phi), Some(pi)) = (&p.circ, &p.circ_inv, &p.phi, &p.phi_inv) {
        // Phi^-1 circ (v) = Pi M conj(v); circ^-1 Phi (v) = Mi conj(Phi) conj(v)
        let lhs = pi.mul(m);
        let rhs = mi.mul(&phi.conj());
        let ok = lhs == rhs;
        rep.flag("star-pair Phi^-1 circ = circ^-1 Phi", ok, describe_mismatch(&lhs, &rhs));
        flags.star_pair = ok && flags.star_related && flags.reflexive;
    }
    let g = LeftGalois::new(&p.left);
    rep.record("Hopf-pair lambda invertible", g.lambda.outcome());
    rep.record("Hopf-pair mu invertible", g.mu.outcome());
    flags.hopf_pair = flags.star_pair && g.lambda.is_invertible() && g.mu.is_invertible();
    rep.note(format!(
        "flags: star-related={} anti-star-related={} reflexive={} star-pair={} hopf-pair={}",
        flags.star_related, flags.anti_star_related, flags.reflexive, flags.star_pair, flags.hopf_pair
    ));
    (rep, flags)
}

fn describe_mismatch(a: &Matrix, b: &Matrix) -> String {
    for j in 0..a.cols() {
        let (x, y) = (a.column(j), b.column(j));
        if x != y {
            return format!("on e{j}: {} vs {}", fmt_vec(&x), fmt_vec(&y));
        }
    }
    "shapes differ".into()
}

/// `theta = Phi^-1 circ`, an antilinear map stored as a matrix after conjugation.
pub fn theta(p: &PairData) -> Option<Matrix> {
    Some(p.phi_inv.as_ref()?.mul(p.circ.as_ref()?))
}

/// `(L^cop, R)` of a full star Hopf algebroid with the star as `circ` and
/// `Phi = S^-1`.
pub fn pair_from_full(h: &super::FullHopfAlgebroid) -> Option<PairData> {
    let star = h.star.clone()?;
    let left = h.left.cop();
    let right = h.derived_right().clone();
    Some(PairData {
        name: format!("({}, {})", left.name, right.name),
        left,
        right,
        circ: Some(star.clone()),
        circ_inv: Some(star),
        phi: Some(h.antipode_inv.clone()),
        phi_inv: Some(h.antipode.clone()),
    })
}
