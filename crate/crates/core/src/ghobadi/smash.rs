//! The smash product of the enveloping algebra with the Hopf algebra acting
//! on a biparallelisable calculus by `t_ij |> f = Cinv_ij(f)`,
//! `tb_ij |> f = C_ji(f)` and `x_i |> f = d^R_i(f)`.

use crate::algebra::FiniteStarAlgebra;
use crate::calculus::trivial_connection;
use crate::error::Result;
use crate::linalg::{zero_vec, Matrix, Vector};
use crate::report::{Outcome, Report};
use crate::scalar::Q;

use super::families::{build, t_name, tb_name, x_name, Biparallel, Enc, Hand, Which};
use super::maps::{check_generator_map, identity_map, GeneratorMap};
use super::modules::{left_representation, Representation};
use super::{Elem, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    X(usize),
    T(usize, usize),
    Tb(usize, usize),
}

fn gens(r: usize) -> Vec<Gen> {
    let mut out: Vec<Gen> = (0..r).map(Gen::X).collect();
    for i in 0..r {
        for j in 0..r {
            out.push(Gen::T(i, j));
            out.push(Gen::Tb(i, j));
        }
    }
    out
}

fn name(g: Gen) -> String {
    match g {
        Gen::X(i) => x_name(i),
        Gen::T(i, j) => t_name(i, j),
        Gen::Tb(i, j) => tb_name(i, j),
    }
}

/// `Delta(g)` as pairs; `None` stands for the unit.
fn coproduct(g: Gen, r: usize) -> Vec<(Option<Gen>, Option<Gen>)> {
    match g {
        Gen::X(i) => std::iter::once((Some(g), None)).chain((0..r).map(|j| (Some(Gen::T(i, j)), Some(Gen::X(j))))).collect(),
        Gen::T(i, j) => (0..r).map(|k| (Some(Gen::T(i, k)), Some(Gen::T(k, j)))).collect(),
        Gen::Tb(i, j) => (0..r).map(|k| (Some(Gen::Tb(i, k)), Some(Gen::Tb(k, j)))).collect(),
    }
}

fn counit(g: Gen) -> Q {
    match g {
        Gen::T(i, j) | Gen::Tb(i, j) if i == j => Q::one(),
        _ => Q::zero(),
    }
}

/// Action matrices on `A`.
fn action(bp: &Biparallel, g: Gen) -> Matrix {
    let c = &bp.calc;
    match g {
        Gen::X(i) => c.del_r[i].clone(),
        Gen::T(i, j) => c.c_inv[i][j].clone(),
        Gen::Tb(i, j) => c.c[j][i].clone(),
    }
}

fn act(bp: &Biparallel, g: Option<Gen>, f: &[Q]) -> Vector {
    match g {
        Some(g) => action(bp, g).apply(f),
        None => f.to_vec(),
    }
}

/// `S(g) |> f`: `S t_kj = tb_jk`, `S tb_kj = t_jk`, `S x_j = -tb_kj x_k`.
fn antipode_act(bp: &Biparallel, g: Option<Gen>, f: &[Q]) -> Vector {
    let c = &bp.calc;
    match g {
        None => f.to_vec(),
        Some(Gen::T(k, j)) => c.c[k][j].apply(f),
        Some(Gen::Tb(k, j)) => c.c_inv[j][k].apply(f),
        Some(Gen::X(j)) => {
            let mut out = zero_vec(bp.n);
            for k in 0..bp.r {
                let v = c.c[j][k].apply(&c.del_r[k].apply(f));
                crate::linalg::axpy(&mut out, &-Q::one(), &v);
            }
            out
        }
    }
}

fn hopf_relations(p: &mut Presentation, r: usize, base_unit: &Elem) {
    let specs: [(&str, u8); 4] = [
        ("t_ij tb_kj = delta_ik", 0),
        ("tb_ij t_ik = delta_jk", 1),
        ("t_ji tb_jk = delta_ik", 2),
        ("tb_ij t_kj = delta_ik", 3),
    ];
    for (fname, kind) in specs {
        let fam = p.family(fname);
        for a in 0..r {
            for b in 0..r {
                let mut e = Elem::zero();
                for s in 0..r {
                    let (u, v) = match kind {
                        0 => (t_name(a, s), tb_name(b, s)),
                        1 => (tb_name(s, a), t_name(s, b)),
                        2 => (t_name(s, a), tb_name(s, b)),
                        _ => (tb_name(a, s), t_name(b, s)),
                    };
                    e.add_scaled(&p.mul(&p.gen(&u), &p.gen(&v)), &Q::one());
                }
                if a == b {
                    e = e.sub(base_unit);
                }
                p.push(fam, format!("{a}{b}"), e, true);
            }
        }
    }
}

fn gen_elem(p: &Presentation, g: Option<Gen>) -> Elem {
    match g {
        Some(g) => p.gen(&name(g)),
        None => Elem::unit(),
    }
}

/// Smash product presentation: base `A (x) A^op`, letters `x, t, tb`.
pub fn smash_presentation(bp: &Biparallel) -> Presentation {
    let mut p = Presentation::new(
        format!("smash({})", bp.calc.name),
        bp.base_algebra(Hand::Left),
        bp.n,
        bp.letters(Which::IIL),
    );
    let (n, r) = (bp.n, bp.r);
    let all = gens(r);
    let left: Vec<(String, Elem)> = {
        let enc = Enc::new(bp, &p, Hand::Left);
        let mut out = vec![];
        for &g in &all {
            for c in 0..n {
                let cv = bp.e(c);
                let mut e = p.mul(&p.gen(&name(g)), &enc.s(&cv));
                for (h1, h2) in coproduct(g, r) {
                    let term = p.mul(&enc.s(&act(bp, h1, &cv)), &gen_elem(&p, h2));
                    e = e.sub(&term);
                }
                out.push((format!("{} c{c}", name(g)), e));
            }
        }
        out
    };
    let right: Vec<(String, Elem)> = {
        let enc = Enc::new(bp, &p, Hand::Left);
        let mut out = vec![];
        for &g in &all {
            for c in 0..n {
                let cv = bp.e(c);
                let mut e = p.mul(&enc.t(&cv), &p.gen(&name(g)));
                for (h1, h2) in coproduct(g, r) {
                    let term = p.mul(&gen_elem(&p, h1), &enc.t(&antipode_act(bp, h2, &cv)));
                    e = e.sub(&term);
                }
                out.push((format!("{} c{c}", name(g)), e));
            }
        }
        out
    };
    let fam = p.family("h s(c) = s(h1 |> c) h2");
    for (l, e) in left {
        p.push(fam, l, e, true);
    }
    let fam = p.family("t(c) h = h1 t(S(h2) |> c)");
    for (l, e) in right {
        p.push(fam, l, e, true);
    }
    hopf_relations(&mut p, r, &Elem::unit());
    p.detect_rules();
    p.prepare();
    p
}

fn check_module_algebra(bp: &Biparallel) -> (Outcome, Outcome) {
    let alg = bp.alg();
    let n = bp.n;
    let r = bp.r;
    let mut law = Ok(());
    let mut unit = Ok(());
    for g in gens(r) {
        let expected = {
            let mut v = zero_vec(n);
            crate::linalg::axpy(&mut v, &counit(g), &bp.one());
            v
        };
        if action(bp, g).apply(&bp.one()) != expected && unit.is_ok() {
            unit = Err(format!("{} |> 1 != eps 1", name(g)));
        }
        for f in 0..n {
            for h in 0..n {
                let (fv, hv) = (bp.e(f), bp.e(h));
                let lhs = action(bp, g).apply(&alg.mul(&fv, &hv));
                let mut rhs = zero_vec(n);
                for (h1, h2) in coproduct(g, r) {
                    crate::linalg::axpy(&mut rhs, &Q::one(), &alg.mul(&act(bp, h1, &fv), &act(bp, h2, &hv)));
                }
                if lhs != rhs && law.is_ok() {
                    law = Err(format!("{} |> (e{f} e{h}) differs", name(g)));
                }
            }
        }
    }
    (law, unit)
}

/// The Hopf algebra relations act by zero on `A`.
fn check_hopf_action(bp: &Biparallel, smash: &Presentation) -> Outcome {
    let n = bp.n;
    let mut base = vec![Matrix::zeros(n, n); smash.base_dim()];
    base[0] = Matrix::identity(n);
    let letters = smash
        .letters
        .iter()
        .map(|l| gens(bp.r).into_iter().find(|g| &name(*g) == l).map(|g| action(bp, g)).unwrap_or_else(|| Matrix::zeros(n, n)))
        .collect();
    let rho = Representation { name: "H on A".into(), dim: n, base, letters };
    for rel in smash.relations.iter().filter(|r| r.combo.is_none()) {
        if smash.families[rel.family].contains("delta") && !rho.eval(&rel.elem).is_zero() {
            return Err(format!("{} does not act by zero", rel.label));
        }
    }
    Ok(())
}

/// `t` and `tb` over the scalars with the four inverse relations, and the
/// same algebra with products reversed.
fn matrix_hopf(r: usize, reversed: bool) -> Presentation {
    let mut letters = vec![];
    for i in 0..r {
        for j in 0..r {
            letters.push(t_name(i, j));
            letters.push(tb_name(i, j));
        }
    }
    let name = if reversed { "H^op" } else { "H" };
    let mut p = Presentation::new(name, FiniteStarAlgebra::scalars(), 1, letters);
    if reversed {
        let mut tmp = Presentation::new(name, FiniteStarAlgebra::scalars(), 1, p.letters.clone());
        hopf_relations(&mut tmp, r, &Elem::unit());
        for f in &tmp.families {
            p.family(f.clone());
        }
        for rel in &tmp.relations {
            let mut e = Elem::zero();
            for (w, c) in &rel.elem.terms {
                let mut rw: super::Word = w.clone();
                rw.reverse();
                e.add_term(rw, c);
            }
            p.push(rel.family, rel.label.clone(), e, true);
        }
    } else {
        hopf_relations(&mut p, r, &Elem::unit());
    }
    p.detect_rules();
    p.prepare();
    p
}

fn matrix_star(src: &Presentation, tgt: &Presentation, r: usize) -> GeneratorMap {
    let mut letters = vec![Elem::zero(); src.letters.len()];
    for i in 0..r {
        for j in 0..r {
            letters[src.letter(&t_name(i, j)) as usize] = tgt.gen(&tb_name(j, i));
            letters[src.letter(&tb_name(i, j)) as usize] = tgt.gen(&t_name(j, i));
        }
    }
    GeneratorMap { name: "t_ij* = tb_ji".into(), antilinear: true, reverses: false, letters, base: vec![Elem::unit()] }
}

/// Star on the `t, tb` part: relations, and compatibility with `Delta`,
/// `S` and `eps` on generators.
fn check_matrix_star(r: usize, bound: usize, parallel: bool) -> Report {
    let mut rep = Report::new("star on t, tb");
    let h = matrix_hopf(r, false);
    let hop = matrix_hopf(r, true);
    let star = matrix_star(&h, &hop, r);
    check_generator_map(&star, &h, &hop, bound, parallel).record(&mut rep);
    let sw = |g: Gen| match g {
        Gen::T(i, j) => Gen::Tb(j, i),
        Gen::Tb(i, j) => Gen::T(j, i),
        x => x,
    };
    let mut delta = Ok(());
    let mut eps = Ok(());
    let mut anti = Ok(());
    for i in 0..r {
        for j in 0..r {
            for g in [Gen::T(i, j), Gen::Tb(i, j)] {
                // flip Hopf star: Delta(g*) = flip((* (x) *) Delta g)
                let mut lhs: Vec<_> = coproduct(g, r).into_iter().map(|(a, b)| (b.map(sw), a.map(sw))).collect();
                let mut rhs = coproduct(sw(g), r);
                lhs.sort_by_key(|p| format!("{p:?}"));
                rhs.sort_by_key(|p| format!("{p:?}"));
                if lhs != rhs && delta.is_ok() {
                    delta = Err(format!("Delta({}*) differs", name(g)));
                }
                if counit(sw(g)) != counit(g).conj() && eps.is_ok() {
                    eps = Err(format!("eps({}*) differs", name(g)));
                }
                // S t_ij = tb_ji and S tb_ij = t_ji, so S agrees with the star on generators
                let s = sw;
                if s(sw(g)) != sw(s(g)) && anti.is_ok() {
                    anti = Err(format!("S({}*) differs", name(g)));
                }
            }
        }
    }
    rep.record("Delta(h*) = flip((* (x) *) Delta h) on t, tb", delta);
    rep.record("eps commutes with star on t, tb", eps);
    rep.record("S * = * S on t, tb", anti);
    rep
}

pub fn check_smash(bp: &Biparallel, bound: usize, parallel: bool) -> Result<Report> {
    let mut rep = Report::new(format!("smash product for {}", bp.calc.name));
    let pivotal = bp.calc.check().is_pass("(C^T)^-1 = (Cinv)^T");
    rep.flag("transposed inverse condition", pivotal, "C^T is not inverse to Cinv^T");
    let (law, unit) = check_module_algebra(bp);
    rep.record("module algebra law", law);
    rep.record("unit law", unit);
    let smash = smash_presentation(bp);
    rep.record("Hopf relations act on A", check_hopf_action(bp, &smash));
    let iil = build(bp, Which::IIL)?;
    let id = identity_map(&iil, &smash);
    let verdict = check_generator_map(&id, &iil, &smash, bound, parallel);
    verdict.record(&mut rep);
    let k = trivial_connection(&bp.calc.fodc())?;
    let rho = left_representation(bp, &k, &smash)?;
    rep.record("A is a smash module", rho.check_relations(&smash));
    let real = (0..bp.r).all(|i| bp.form_star(&bp.pure(i)) == bp.pure(i));
    if real {
        rep.absorb("", check_matrix_star(bp.r, bound, parallel));
    } else {
        rep.note("w_i* != w_i: the star t_ij -> tb_ji is not available");
    }
    Ok(rep)
}
