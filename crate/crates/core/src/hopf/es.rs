//! The Ehresmann-Schauenburg algebroid `L(P, H) = (P (x) P)^coH`.

use super::galois::HopfGaloisExtension;
use super::{check_hopf_galois, cmp, each};
use crate::algebra::subalgebra;
use crate::bialgebroid::{check_full_hopf, check_full_star_hopf, check_left_bialgebroid, check_pair, FullHopfAlgebroid, LeftBialgebroid, PairData, RightBialgebroid};
use crate::error::{Error, Result};
use crate::linalg::{conj_vec, kron_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::report::Report;
use crate::scalar::Q;
use crate::tensor::{add_kron, apply2, flip, terms2, BalancedTensor, Junction};

#[derive(Clone, Debug)]
pub struct EsAlgebroid {
    pub extension: HopfGaloisExtension,
    pub left: LeftBialgebroid,
    /// Columns are the basis of `L(P, H)` inside `P (x) P`.
    pub embed: Matrix,
    /// Present when `H` is commutative: `S` is the flip and the star is `* (x) *`.
    pub full: Option<FullHopfAlgebroid>,
    /// `(L, L^op)` with `circ(p (x) q) = q* (x) p*` and `Phi = id`.
    pub pair: PairData,
    /// Kernel of `L (x) L -> (P (x) P) (x) (P (x) P)` modulo the translation map
    /// balancing, compared against the `(x)_B` relations.
    injectivity: std::result::Result<(), String>,
    circ_closed: std::result::Result<(), String>,
}

struct Ctx<'a> {
    e: &'a HopfGaloisExtension,
    space: Subspace,
    embed: Matrix,
}

impl Ctx<'_> {
    fn np(&self) -> usize {
        self.e.np()
    }

    fn coords(&self, v: &[Q]) -> Result<Vector> {
        self.space.coordinates(v).ok_or_else(|| Error::Precondition("element leaves L(P, H)".into()))
    }

    /// Antilinear map on `P (x) P`, given after conjugation, restricted to `L`.
    fn restrict_antilinear(&self, f: &Matrix) -> Result<Matrix> {
        let n = self.embed.cols();
        let cols = (0..n).map(|i| self.coords(&f.apply(&conj_vec(&self.embed.column(i))))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(n, &cols))
    }

    fn restrict(&self, f: &Matrix) -> Result<Matrix> {
        let n = self.embed.cols();
        let cols = (0..n).map(|i| self.coords(&f.apply(&self.embed.column(i)))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(n, &cols))
    }

    /// `p (x) q -> (p (x) b) (x) (b' (x) q)`-type junctions on `(P (x) P) (x) (P (x) P)`,
    /// balancing the inner factors by `B` with the given sides.
    fn inner_junction(&self, left_right: bool, right_left: bool) -> Junction {
        let np = self.np();
        let id = Matrix::identity(np);
        let p = &self.e.total;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..self.e.base_embed.cols() {
            let b = self.e.base_embed.column(k);
            let lop = if left_right { p.right_mul_matrix(&b) } else { p.left_mul_matrix(&b) };
            let rop = if right_left { p.left_mul_matrix(&b) } else { p.right_mul_matrix(&b) };
            left.push(id.kron(&lop));
            right.push(rop.kron(&id));
        }
        Junction::new(left, right)
    }

    /// Solve for a lift in `L (x) L` of vectors given in `(P (x) P) (x) (P (x) P)`
    /// modulo `inner`; also returns the kernel of the comparison map.
    fn lift(&self, inner: &BalancedTensor, values: &[Vector]) -> Result<(Vec<Vector>, Subspace)> {
        let n = self.embed.cols();
        let cols: Vec<Vector> = (0..n * n)
            .map(|k| inner.project(&kron_vec(&self.embed.column(k / n), &self.embed.column(k % n))))
            .collect();
        let m = Matrix::from_columns(inner.dim(), &cols);
        let lifts = values
            .iter()
            .enumerate()
            .map(|(i, v)| m.solve(&inner.project(v)).ok_or_else(|| Error::Precondition(format!("coproduct of e{i} is not in L (x)_B L"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((lifts, m.kernel()))
    }

    /// `p (x) q -> p(0) (x) tau(p(1))1 (x) tau(p(1))2 (x) q`.
    fn delta_left(&self, v: &[Q]) -> Vector {
        let (np, nh) = (self.np(), self.e.nh());
        let mut out = zero_vec(np.pow(4));
        for (p, q, c) in terms2(v, np) {
            for (u, h, d) in terms2(&self.e.coact(&unit_vec(np, p)), nh) {
                let tau = self.e.tau_lift(&unit_vec(nh, h)).expect("galois");
                for (a, b, f) in terms2(&tau, np) {
                    add_kron(&mut out, &(c * &(d * f)), &kron_vec(&unit_vec(np, u), &unit_vec(np, a)), &kron_vec(&unit_vec(np, b), &unit_vec(np, q)));
                }
            }
        }
        out
    }

    /// `p (x) q -> p (x) tau(q(1))2 (x) tau(q(1))1 (x) q(0)`.
    fn delta_right(&self, v: &[Q]) -> Vector {
        let (np, nh) = (self.np(), self.e.nh());
        let mut out = zero_vec(np.pow(4));
        for (p, q, c) in terms2(v, np) {
            for (u, h, d) in terms2(&self.e.coact(&unit_vec(np, q)), nh) {
                let tau = self.e.tau_lift(&unit_vec(nh, h)).expect("galois");
                for (a, b, f) in terms2(&tau, np) {
                    add_kron(&mut out, &(c * &(d * f)), &kron_vec(&unit_vec(np, p), &unit_vec(np, b)), &kron_vec(&unit_vec(np, a), &unit_vec(np, u)));
                }
            }
        }
        out
    }
}

/// `(P (x) P)^coH` for the diagonal coaction `p (x) q -> p(0) (x) q(0) (x) p(1) q(1)`.
pub fn coinvariant_pairs(e: &HopfGaloisExtension) -> Subspace {
    let (np, nh) = (e.np(), e.nh());
    let cols: Vec<Vector> = (0..np * np)
        .map(|k| {
            let (p, q) = (k / np, k % np);
            let mut v = zero_vec(np * np * nh);
            for (a, x, c) in terms2(&e.coact(&unit_vec(np, p)), nh) {
                for (b, y, d) in terms2(&e.coact(&unit_vec(np, q)), nh) {
                    add_kron(&mut v, &(c * d), &kron_vec(&unit_vec(np, a), &unit_vec(np, b)), &e.hopf.mul(&unit_vec(nh, x), &unit_vec(nh, y)));
                }
            }
            add_kron(&mut v, &-Q::one(), &unit_vec(np * np, k), e.hopf.unit());
            v
        })
        .collect();
    Matrix::from_columns(np * np * nh, &cols).kernel()
}

pub fn build_es_algebroid(e: &HopfGaloisExtension) -> Result<EsAlgebroid> {
    let rep = check_hopf_galois(e);
    if !rep.all_pass() {
        let why: Vec<String> = rep.failures().iter().map(|c| c.name.clone()).collect();
        return Err(Error::Precondition(format!("not a Hopf-Galois extension: {}", why.join(", "))));
    }
    let np = e.np();
    let space = coinvariant_pairs(e);
    // (p (x) q)(r (x) u) = pr (x) uq
    let pp = e.total.tensor(&e.total.opposite());
    let (total, embed) = subalgebra(&pp, format!("L({}, {})", e.total.name, e.hopf.name()), &space)
        .ok_or_else(|| Error::Precondition("coinvariant pairs are not a subalgebra".into()))?;
    let ctx = Ctx { e, space, embed: embed.clone() };
    let n = total.dim();
    let base_cols = |f: &dyn Fn(&[Q]) -> Vector| -> Result<Matrix> {
        let cols = (0..e.base.dim()).map(|k| ctx.coords(&f(&e.base_embed.column(k)))).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(n, &cols))
    };
    let s = base_cols(&|b| kron_vec(b, e.total.unit()))?;
    let t = base_cols(&|b| kron_vec(e.total.unit(), b))?;
    // eps(p (x) q) = pq
    let pq = |v: &[Q], flipped: bool| -> Vector {
        let mut out = zero_vec(np);
        for (p, q, c) in terms2(v, np) {
            let (x, y) = if flipped { (q, p) } else { (p, q) };
            crate::linalg::axpy(&mut out, c, &e.total.mul(&unit_vec(np, x), &unit_vec(np, y)));
        }
        out
    };
    let eps_cols = |flipped: bool| -> Result<Matrix> {
        let cols = (0..n)
            .map(|i| e.base_coordinates(&pq(&embed.column(i), flipped)).ok_or_else(|| Error::Precondition("counit leaves B".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(e.base.dim(), &cols))
    };
    let eps = eps_cols(false)?;

    let inner_l = BalancedTensor::new(np * np, np * np, &ctx.inner_junction(true, true));
    let values: Vec<Vector> = (0..n).map(|i| ctx.delta_left(&embed.column(i))).collect();
    let (delta, kernel) = ctx.lift(&inner_l, &values)?;
    let left = LeftBialgebroid::new(total.name.clone(), total.clone(), e.base.clone(), s.clone(), t.clone(), delta, eps)?;
    let rels = left.tensor().quotient.relations();
    let injectivity = if kernel.contains_subspace(rels) && rels.contains_subspace(&kernel) {
        Ok(())
    } else {
        Err(format!("comparison kernel has dim {}, (x)_B relations dim {}", kernel.dim(), rels.dim()))
    };

    // circ(p (x) q) = q* (x) p*, antilinear on P (x) P
    let circ_ambient = match e.total.star_matrix() {
        Some(m) => {
            let mm = m.kron(m);
            let cols: Vec<Vector> = (0..np * np).map(|k| flip(&mm.column(k), np, np)).collect();
            Some(Matrix::from_columns(np * np, &cols))
        }
        None => None,
    };
    let (circ, circ_closed) = match &circ_ambient {
        Some(f) => match ctx.restrict_antilinear(f) {
            Ok(m) => (Some(m), Ok(())),
            Err(err) => (None, Err(err.to_string())),
        },
        None => (None, Err("P has no star".to_string())),
    };
    let pair = PairData {
        name: format!("({}, {}^op)", left.name, left.name),
        left: left.clone(),
        right: left.op(),
        circ: circ.clone(),
        circ_inv: circ,
        phi: Some(Matrix::identity(n)),
        phi_inv: Some(Matrix::identity(n)),
    };

    let full = if e.hopf.is_commutative() {
        let flip_amb = Matrix::from_columns(np * np, &(0..np * np).map(|k| flip(&unit_vec(np * np, k), np, np)).collect::<Vec<_>>());
        let antipode = ctx.restrict(&flip_amb)?;
        let star = match e.total.star_matrix() {
            Some(m) => Some(ctx.restrict_antilinear(&m.kron(m))?),
            None => None,
        };
        // right structure over B^op: s_R(b) = 1 (x) b, t_R(b) = b (x) 1, eps_R(p (x) q) = qp
        let inner_r = BalancedTensor::new(np * np, np * np, &ctx.inner_junction(false, false));
        let values: Vec<Vector> = (0..n).map(|i| ctx.delta_right(&embed.column(i))).collect();
        let (delta_r, _) = ctx.lift(&inner_r, &values)?;
        let right = RightBialgebroid::new(format!("{} (right)", left.name), total, e.base.opposite(), t, s, delta_r, eps_cols(true)?)?;
        Some(FullHopfAlgebroid::new(left.clone(), antipode.clone(), antipode, star).with_supplied_right(right))
    } else {
        None
    };
    Ok(EsAlgebroid { extension: e.clone(), left, embed, full, pair, injectivity, circ_closed })
}

impl EsAlgebroid {
    pub fn dim(&self) -> usize {
        self.left.dim()
    }
}

pub fn check_es_algebroid(es: &EsAlgebroid) -> Report {
    let mut r = Report::new(format!("Ehresmann-Schauenburg algebroid {}", es.left.name));
    r.dim("L(P, H)", es.dim());
    r.dim("B", es.left.base_dim());
    r.record("coproduct lands in L (x)_B L injectively", es.injectivity.clone());
    r.record("circ preserves L(P, H)", es.circ_closed.clone());
    r.absorb("left", check_left_bialgebroid(&es.left));
    if let Some(full) = &es.full {
        r.absorb("full", check_full_hopf(full));
        r.absorb("full-star", check_full_star_hopf(full));
        if let (Some(star), Some(right)) = (&full.star, &full.supplied_right) {
            let n = es.dim();
            r.record(
                "Delta_R = (star (x) star) Delta_L star",
                each(n, |i| {
                    let lift = es.left.delta_lift(&star.apply(&unit_vec(n, i)));
                    let rhs = right.tensor().project(&apply2(star, star, &conj_vec(&lift)));
                    cmp(&format!("on e{i}"), &right.delta_q(&unit_vec(n, i)), &rhs)
                }),
            );
        }
    } else {
        r.note("H is not commutative; no full structure attempted");
    }
    let (pr, _) = check_pair(&es.pair);
    r.absorb("pair", pr);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfStarAlgebra;

    #[test]
    fn z4_over_z2_es() {
        let e = HopfGaloisExtension::cyclic(4, 2).unwrap();
        let es = build_es_algebroid(&e).unwrap();
        assert_eq!(es.dim(), 8);
        let r = check_es_algebroid(&es);
        assert!(r.all_pass(), "{r}");
        // eps(u (x) u^3) = 1
        let x = kron_vec(&unit_vec(4, 1), &unit_vec(4, 3));
        let c = coinvariant_pairs(&e).coordinates(&x).unwrap();
        assert_eq!(es.left.eps_of(&c), e.base_coordinates(&unit_vec(4, 0)).unwrap());
    }

    #[test]
    fn regular_es_has_trivial_base() {
        let h = HopfStarAlgebra::cyclic(3);
        let e = HopfGaloisExtension::regular(&h).unwrap();
        let es = build_es_algebroid(&e).unwrap();
        assert_eq!(es.dim(), 3);
        assert_eq!(es.left.s, es.left.t);
        let r = check_es_algebroid(&es);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn noncommutative_fibre_gives_pair_only() {
        let h = HopfStarAlgebra::symmetric3();
        let e = HopfGaloisExtension::regular(&h).unwrap();
        let es = build_es_algebroid(&e).unwrap();
        assert!(es.full.is_none());
        let r = check_es_algebroid(&es);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn non_galois_is_rejected() {
        let e = HopfGaloisExtension::trivial(HopfStarAlgebra::cyclic(2).alg, &HopfStarAlgebra::cyclic(2)).unwrap();
        assert!(matches!(build_es_algebroid(&e), Err(Error::Precondition(_))));
    }
}
