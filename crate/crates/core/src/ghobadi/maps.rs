//! Maps defined on generators and the checks that they respect relations,
//! coproducts and each other.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron_vec, unit_vec};
use crate::report::Report;
use crate::scalar::Q;

use super::families::{t_name, tb_name, x_name, y_name, Biparallel, Enc, Hand};
use super::{is_normal, Elem, Membership, Presentation, Word};

/// An algebra map out of a presentation given on letters and base basis
/// elements. Anti-algebra maps land in an opposite presentation, so the
/// stored map is always multiplicative; `reverses` records the original
/// direction for reports.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub name: String,
    pub antilinear: bool,
    pub reverses: bool,
    pub letters: Vec<Elem>,
    pub base: Vec<Elem>,
}

impl GeneratorMap {
    pub fn apply(&self, tgt: &Presentation, e: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (w, c) in &e.terms {
            let c = if self.antilinear { c.conj() } else { c.clone() };
            let mut acc = self.base[w[0] as usize].clone();
            for pair in w[1..].chunks(2) {
                acc = tgt.mul(&acc, &self.letters[pair[0] as usize]);
                if pair[1] != 0 {
                    acc = tgt.mul(&acc, &self.base[pair[1] as usize]);
                }
            }
            out.add_scaled(&acc, &c);
        }
        out
    }
}

/// Applies `f` then `g` to an element.
pub fn compose_apply(f: &GeneratorMap, mid: &Presentation, g: &GeneratorMap, tgt: &Presentation, e: &Elem) -> Elem {
    g.apply(tgt, &f.apply(mid, e))
}

fn base_images(src: &Presentation, f: impl Fn(usize, usize) -> Vec<Q>) -> Vec<Elem> {
    let m = src.right_dim;
    (0..src.base_dim()).map(|b| Elem::base(&f(b / m, b % m))).collect()
}

fn letter_images(src: &Presentation, f: impl Fn(&str) -> Elem) -> Vec<Elem> {
    src.letters.iter().map(|l| f(l)).collect()
}

fn parse(l: &str) -> (char, usize, usize) {
    let digits: Vec<usize> = l.chars().filter(|c| c.is_ascii_digit()).map(|c| c as usize - '0' as usize).collect();
    let kind = if l.starts_with("tb") { 'b' } else { l.chars().next().unwrap() };
    (kind, digits[0], digits.get(1).copied().unwrap_or(0))
}

/// The antilinear anti-algebra map `a -> a*`, `(x,w) -> (w*, x^star)`,
/// `(w,y) -> (y^star^-1, w*)`, `x -> x^star` between opposite-handed
/// presentations, and its inverse direction.
pub fn star_map(bp: &Biparallel, src: &Presentation, tgt: &Presentation, src_hand: Hand) -> Result<GeneratorMap> {
    let st = bp.star_op()?;
    let alg = bp.alg();
    let tgt_hand = if src_hand == Hand::Left { Hand::Right } else { Hand::Left };
    let enc = Enc::new(bp, tgt, tgt_hand);
    let base = base_images(src, |k, l| kron_vec(&alg.star(&bp.e(k)), &alg.star(&bp.e(l))));
    let letters = letter_images(src, |l| {
        let (kind, i, j) = parse(l);
        match kind {
            'x' => enc.y(&st.apply(&bp.pure(i))),
            'y' => enc.x(&st.apply_inv(&bp.pure(i))),
            't' => enc.wy(&bp.form_star(&bp.pure(j)), &st.apply(&bp.pure(i))),
            _ => enc.xw(&st.apply_inv(&bp.pure(j)), &bp.form_star(&bp.pure(i))),
        }
    });
    let name = if src_hand == Hand::Left { "star" } else { "star^-1" };
    Ok(GeneratorMap { name: name.into(), antilinear: true, reverses: true, letters, base })
}

/// `Phi`: `a underline(b) -> underline(a) b`, identity on `(x,w)` and
/// `(w,y)`, `x -> y_j . (x, w_j)`; and `Phi^-1` with `y -> (w_i, y) x_i`.
pub fn phi_map(bp: &Biparallel, src: &Presentation, tgt: &Presentation, src_hand: Hand) -> GeneratorMap {
    let n = bp.n;
    let base = base_images(src, |k, l| unit_vec(n * n, l * n + k));
    let letters = letter_images(src, |l| {
        let (kind, i, j) = parse(l);
        match kind {
            'x' => {
                let mut e = Elem::zero();
                for j in 0..bp.r {
                    e.add_scaled(&tgt.mul(&tgt.gen(&t_name(i, j)), &tgt.gen(&y_name(j))), &Q::one());
                }
                e
            }
            'y' => {
                let mut e = Elem::zero();
                for k in 0..bp.r {
                    e.add_scaled(&tgt.mul(&tgt.gen(&tb_name(k, i)), &tgt.gen(&x_name(k))), &Q::one());
                }
                e
            }
            't' => tgt.gen(&t_name(i, j)),
            _ => tgt.gen(&tb_name(i, j)),
        }
    });
    let name = if src_hand == Hand::Left { "Phi" } else { "Phi^-1" };
    GeneratorMap { name: name.into(), antilinear: false, reverses: true, letters, base }
}

/// Identity on letters with matching names and on the base.
pub fn identity_map(src: &Presentation, tgt: &Presentation) -> GeneratorMap {
    let base = (0..src.base_dim()).map(|b| Elem::word(vec![b as u16])).collect();
    let letters = letter_images(src, |l| tgt.gen(l));
    GeneratorMap { name: "id".into(), antilinear: false, reverses: false, letters, base }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdict {
    pub family: String,
    pub relations: usize,
    pub certified: usize,
    pub zero_images: usize,
    pub inconclusive: usize,
    pub max_degree: usize,
    pub first_inconclusive: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapVerdict {
    pub map: String,
    pub source: String,
    pub target: String,
    pub bound: usize,
    pub families: Vec<FamilyVerdict>,
    pub inconclusive: usize,
    pub max_degree: usize,
    pub certificates_rechecked: bool,
}

/// Pushes every defining relation through `f` and certifies the image.
pub fn check_generator_map(f: &GeneratorMap, src: &Presentation, tgt: &Presentation, bound: usize, parallel: bool) -> MapVerdict {
    let idx: Vec<usize> = (0..src.relations.len()).filter(|&i| src.relations[i].combo.is_none()).collect();
    let run = |&i: &usize| {
        let img = f.apply(tgt, &src.relations[i].elem);
        if img.is_zero() {
            return (i, true, true, Some(0), None);
        }
        match tgt.certify(&img, bound) {
            Membership::Certified(c) => {
                let ok = tgt.verify(&img, &c);
                (i, ok, false, Some(c.degree), if ok { None } else { Some("certificate failed re-check".to_string()) })
            }
            Membership::Inconclusive(r) => (i, true, false, None, Some(r)),
        }
    };
    let results: Vec<_> = if parallel { idx.par_iter().map(run).collect() } else { idx.iter().map(run).collect() };
    let mut fams: BTreeMap<usize, FamilyVerdict> = BTreeMap::new();
    let mut rechecked = true;
    for (i, ok, zero, deg, why) in results {
        let rel = &src.relations[i];
        let fv = fams.entry(rel.family).or_insert_with(|| FamilyVerdict {
            family: src.families[rel.family].clone(),
            relations: 0,
            certified: 0,
            zero_images: 0,
            inconclusive: 0,
            max_degree: 0,
            first_inconclusive: None,
        });
        fv.relations += 1;
        rechecked &= ok;
        match deg {
            Some(d) if ok => {
                fv.certified += 1;
                fv.max_degree = fv.max_degree.max(d);
                if zero {
                    fv.zero_images += 1;
                }
            }
            _ => {
                fv.inconclusive += 1;
                if fv.first_inconclusive.is_none() {
                    fv.first_inconclusive = Some(format!("{}: {}", rel.label, why.unwrap_or_default()));
                }
            }
        }
    }
    let families: Vec<FamilyVerdict> = fams.into_values().collect();
    MapVerdict {
        map: f.name.clone(),
        source: src.name.clone(),
        target: tgt.name.clone(),
        bound,
        inconclusive: families.iter().map(|f| f.inconclusive).sum(),
        max_degree: families.iter().map(|f| f.max_degree).max().unwrap_or(0),
        families,
        certificates_rechecked: rechecked,
    }
}

impl MapVerdict {
    pub fn passed(&self) -> bool {
        self.inconclusive == 0 && self.certificates_rechecked
    }

    pub fn record(&self, rep: &mut Report) {
        let name = format!("{}: {} -> {}", self.map, self.source, self.target);
        let total: usize = self.families.iter().map(|f| f.relations).sum();
        if !self.certificates_rechecked {
            rep.fail(name, "a certificate failed re-expansion");
        } else if self.inconclusive > 0 {
            let first = self.families.iter().find_map(|f| f.first_inconclusive.clone()).unwrap_or_default();
            rep.inconclusive(name, format!("{} of {total} relation images not certified at degree {}; {first}", self.inconclusive, self.bound));
        } else {
            rep.pass(name.clone());
            rep.note(format!("{name}: {total} relations certified, max certificate degree {}", self.max_degree));
        }
    }
}

/// Certifies `lhs - rhs` for the images of every letter and base element.
pub fn check_equal_on_generators(
    name: &str,
    src: &Presentation,
    tgt: &Presentation,
    lhs: &dyn Fn(&Elem) -> Elem,
    rhs: &dyn Fn(&Elem) -> Elem,
    bound: usize,
) -> (Report, usize) {
    let mut rep = Report::new(name);
    let mut gens: Vec<(String, Elem)> = src.letters.iter().map(|l| (l.clone(), src.gen(l))).collect();
    for b in 0..src.base_dim() {
        gens.push((format!("b{b}"), Elem::word(vec![b as u16])));
    }
    let mut max_deg = 0;
    let mut bad = vec![];
    for (label, g) in &gens {
        let diff = lhs(g).sub(&rhs(g));
        if diff.is_zero() {
            continue;
        }
        match tgt.certify(&diff, bound) {
            Membership::Certified(c) if tgt.verify(&diff, &c) => max_deg = max_deg.max(c.degree),
            Membership::Certified(_) => bad.push(format!("{label}: certificate failed re-check")),
            Membership::Inconclusive(r) => bad.push(format!("{label}: {r}")),
        }
    }
    if bad.is_empty() {
        rep.pass("agree on generators");
    } else {
        rep.inconclusive("agree on generators", bad.join("; "));
    }
    (rep, max_deg)
}

/// Elements of a tensor square over the base, as pairs of words.
pub type TensorElem = BTreeMap<(Word, Word), Q>;

fn tensor_add(t: &mut TensorElem, k: (Word, Word), c: &Q) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&k);
    }
}

/// Coproduct given on generators, extended multiplicatively.
pub struct Coproduct {
    pub letters: Vec<TensorElem>,
    pub base: Vec<TensorElem>,
}

fn pure_tensor(a: &Elem, b: &Elem) -> TensorElem {
    let mut t = TensorElem::new();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            tensor_add(&mut t, (wa.clone(), wb.clone()), &(ca * cb));
        }
    }
    t
}

fn tensor_mul(p: &Presentation, a: &TensorElem, b: &TensorElem) -> TensorElem {
    let mut out = TensorElem::new();
    for ((a1, a2), ca) in a {
        for ((b1, b2), cb) in b {
            let x = p.mul(&Elem::word(a1.clone()), &Elem::word(b1.clone()));
            let y = p.mul(&Elem::word(a2.clone()), &Elem::word(b2.clone()));
            let c = ca * cb;
            for (w1, x1) in &x.terms {
                for (w2, x2) in &y.terms {
                    tensor_add(&mut out, (w1.clone(), w2.clone()), &(&c * &(x1 * x2)));
                }
            }
        }
    }
    out
}

impl Coproduct {
    /// `x_i -> x_i (x) 1 + t_ij (x) x_j`, `t -> t (x) t`, `tb -> tb (x) tb`,
    /// `s(a) -> s(a) (x) 1`, `t(a) -> 1 (x) t(a)`.
    pub fn left(bp: &Biparallel, p: &Presentation) -> Coproduct {
        let r = bp.r;
        let n = bp.n;
        let letters = p
            .letters
            .iter()
            .map(|l| {
                let (kind, i, j) = parse(l);
                let mut t = TensorElem::new();
                let add = |t: &mut TensorElem, a: Elem, b: Elem| {
                    for (k, c) in pure_tensor(&a, &b) {
                        tensor_add(t, k, &c);
                    }
                };
                match kind {
                    'x' => {
                        add(&mut t, p.gen(l), Elem::unit());
                        for k in 0..r {
                            add(&mut t, p.gen(&t_name(i, k)), p.gen(&x_name(k)));
                        }
                    }
                    't' => (0..r).for_each(|k| add(&mut t, p.gen(&t_name(i, k)), p.gen(&t_name(k, j)))),
                    _ => (0..r).for_each(|k| add(&mut t, p.gen(&tb_name(i, k)), p.gen(&tb_name(k, j)))),
                }
                t
            })
            .collect();
        let base = (0..p.base_dim())
            .map(|b| pure_tensor(&Elem::word(vec![((b / n) * n) as u16]), &Elem::word(vec![(b % n) as u16])))
            .collect();
        Coproduct { letters, base }
    }

    /// `y_i -> 1 (x) y_i + y_j (x) tb_ji`, `t`, `tb` as on the left,
    /// `s(a) -> 1 (x) s(a)`, `t(a) -> t(a) (x) 1`, on the opposite
    /// presentation.
    pub fn right(bp: &Biparallel, p: &Presentation) -> Coproduct {
        let r = bp.r;
        let n = bp.n;
        let letters = p
            .letters
            .iter()
            .map(|l| {
                let (kind, i, j) = parse(l);
                let mut t = TensorElem::new();
                let add = |t: &mut TensorElem, a: Elem, b: Elem| {
                    for (k, c) in pure_tensor(&a, &b) {
                        tensor_add(t, k, &c);
                    }
                };
                match kind {
                    'y' => {
                        add(&mut t, Elem::unit(), p.gen(l));
                        for k in 0..r {
                            add(&mut t, p.gen(&y_name(k)), p.gen(&tb_name(k, i)));
                        }
                    }
                    't' => (0..r).for_each(|k| add(&mut t, p.gen(&t_name(i, k)), p.gen(&t_name(k, j)))),
                    _ => (0..r).for_each(|k| add(&mut t, p.gen(&tb_name(i, k)), p.gen(&tb_name(k, j)))),
                }
                t
            })
            .collect();
        let base = (0..p.base_dim())
            .map(|b| pure_tensor(&Elem::word(vec![(b % n) as u16]), &Elem::word(vec![((b / n) * n) as u16])))
            .collect();
        Coproduct { letters, base }
    }

    pub fn apply(&self, p: &Presentation, e: &Elem) -> TensorElem {
        let mut out = TensorElem::new();
        for (w, c) in &e.terms {
            let mut acc = self.base[w[0] as usize].clone();
            for pair in w[1..].chunks(2) {
                acc = tensor_mul(p, &acc, &self.letters[pair[0] as usize]);
                if pair[1] != 0 {
                    acc = tensor_mul(p, &acc, &self.base[pair[1] as usize]);
                }
            }
            for (k, x) in acc {
                tensor_add(&mut out, k, &(&x * c));
            }
        }
        out
    }
}

/// Canonical form in `P (x)_A P` for a right-handed (opposite) presentation:
/// base parts `s(e_k)` on the first factor move to `t(e_k)` on the second.
/// Returns the second factors grouped by the normal first word.
fn right_tensor_groups(p: &Presentation, t: &TensorElem) -> BTreeMap<Word, Elem> {
    let n = p.right_dim;
    let mut groups: BTreeMap<Word, Elem> = BTreeMap::new();
    for ((w1, w2), c) in t {
        let nf = p.normal_form(&Elem::word(w1.clone()));
        for (f, x) in &nf.terms {
            let b = f[0] as usize;
            let (k, l) = (b / n, b % n);
            let mut first = f.clone();
            first[0] = l as u16;
            let second = p.mul(&Elem::word(vec![k as u16]), &Elem::word(w2.clone()));
            groups.entry(first).or_default().add_scaled(&second, &(c * x));
        }
    }
    for g in groups.values_mut() {
        *g = p.normal_form(g);
    }
    groups.retain(|_, g| !g.is_zero());
    groups
}

/// Certifies that two tensors agree in `P (x)_A P`: after moving base parts
/// across, each group of second factors must lie in the ideal.
pub fn tensors_agree(p: &Presentation, lhs: &TensorElem, rhs: &TensorElem, bound: usize) -> std::result::Result<usize, String> {
    let mut diff = lhs.clone();
    for (k, c) in rhs {
        tensor_add(&mut diff, k.clone(), &-c);
    }
    let groups = right_tensor_groups(p, &diff);
    let mut deg = 0;
    for (first, g) in &groups {
        if !is_normal(first) {
            return Err(format!("first factor {} is stuck", p.show_word(first)));
        }
        match p.certify(g, bound) {
            Membership::Certified(c) if p.verify(g, &c) => deg = deg.max(c.degree),
            _ => return Err(format!("at first factor {}: {} not certified", p.show_word(first), p.show(g))),
        }
    }
    Ok(deg)
}

/// `flip (f (x) f) Delta_L = Delta_R f` (`flip` for antilinear `f`) on
/// generators, and the plain version for linear maps.
pub fn check_coproducts(
    bp: &Biparallel,
    f: &GeneratorMap,
    src: &Presentation,
    tgt: &Presentation,
    bound: usize,
) -> Result<Report> {
    if tgt.letters.iter().any(|l| l.starts_with('x')) {
        return Err(Error::Precondition("coproduct comparison expects a right-handed target".into()));
    }
    let dl = Coproduct::left(bp, src);
    let dr = Coproduct::right(bp, tgt);
    let mut rep = Report::new(format!("coproducts under {}", f.name));
    let mut gens: Vec<(String, Elem)> = src.letters.iter().map(|l| (l.clone(), src.gen(l))).collect();
    for b in 0..src.base_dim() {
        gens.push((format!("b{b}"), Elem::word(vec![b as u16])));
    }
    let mut all = Ok(0usize);
    for (label, g) in &gens {
        let mut lhs = TensorElem::new();
        for ((w1, w2), c) in dl.apply(src, g) {
            let (a, b) = (f.apply(tgt, &Elem::word(w1)), f.apply(tgt, &Elem::word(w2)));
            let c = if f.antilinear { c.conj() } else { c };
            let t = if f.antilinear { pure_tensor(&b, &a) } else { pure_tensor(&a, &b) };
            for (k, x) in t {
                tensor_add(&mut lhs, k, &(&x * &c));
            }
        }
        let rhs = dr.apply(tgt, &f.apply(tgt, g));
        match tensors_agree(tgt, &lhs, &rhs, bound) {
            Ok(d) => all = all.map(|m| m.max(d)),
            Err(e) => {
                all = Err(format!("{label}: {e}"));
                break;
            }
        }
    }
    match all {
        Ok(d) => {
            rep.pass("coproduct compatibility");
            rep.note(format!("max certificate degree {d}"));
        }
        Err(e) => rep.inconclusive("coproduct compatibility", e),
    }
    Ok(rep)
}
