use hopfcheck::calculus::*;
use hopfcheck::ghobadi::families::*;
use hopfcheck::ghobadi::maps::*;
use hopfcheck::ghobadi::modules::*;
use hopfcheck::ghobadi::smash::*;
use hopfcheck::ghobadi::{Elem, Presentation};
use hopfcheck::scalar::Q;

fn cyclic() -> Biparallel {
    Biparallel::new(&cyclic_graph_calculus(3).unwrap()).unwrap()
}

fn fuzzy() -> Biparallel {
    Biparallel::new(&fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()).unwrap()
}

fn pair(bp: &Biparallel, l: Which, r: Which) -> (Presentation, Presentation) {
    (build(bp, l).unwrap(), build(bp, r).unwrap())
}

#[test]
fn all_presentations_have_rules() {
    for bp in [cyclic(), fuzzy()] {
        for w in Which::ALL {
            let p = build(&bp, w).unwrap();
            assert!(p.missing_rules().is_empty(), "{}: {:?}", p.name, p.missing_rules());
        }
    }
}

#[test]
fn cyclic_counts() {
    let bp = cyclic();
    let l = build(&bp, Which::L).unwrap();
    // base dim 9, four letters x(2) and t(2x2)
    assert_eq!(l.base_dim(), 9);
    assert_eq!(l.letters.len(), 2 + 4);
    assert_eq!(l.instance_count(), 486);
}

fn check_pair_maps(bp: &Biparallel, l: Which, r: Which) {
    let (src, tgt) = pair(bp, l, r);
    let star = star_map(bp, &src, &tgt, Hand::Left).unwrap();
    let phi = phi_map(bp, &src, &tgt, Hand::Left);
    for f in [&star, &phi] {
        let v = check_generator_map(f, &src, &tgt, 6, true);
        assert!(v.passed(), "{}: {:?}", f.name, v.families);
        assert_eq!(v.inconclusive, 0);
        assert!(v.max_degree <= 4);
        assert!(v.certificates_rechecked);
    }
    let star_inv = star_map(bp, &tgt, &src, Hand::Right).unwrap();
    let phi_inv = phi_map(bp, &tgt, &src, Hand::Right);
    for f in [&star_inv, &phi_inv] {
        assert!(check_generator_map(f, &tgt, &src, 6, true).passed(), "{}", f.name);
    }
    let lhs = |e: &Elem| compose_apply(&star, &tgt, &phi_inv, &src, e);
    let rhs = |e: &Elem| compose_apply(&phi, &tgt, &star_inv, &src, e);
    let (rep, _) = check_equal_on_generators("Phi^-1 star = star^-1 Phi", &src, &src, &lhs, &rhs, 6);
    assert!(rep.all_pass(), "{}", rep.to_json());
    let id = |e: &Elem| e.clone();
    let (rep, _) = check_equal_on_generators("Phi^-1 Phi = id", &src, &src, &|e| compose_apply(&phi, &tgt, &phi_inv, &src, e), &id, 6);
    assert!(rep.all_pass(), "{}", rep.to_json());
    let (rep, _) = check_equal_on_generators("star^-1 star = id", &src, &src, &|e| compose_apply(&star, &tgt, &star_inv, &src, e), &id, 6);
    assert!(rep.all_pass(), "{}", rep.to_json());
    for f in [&star, &phi] {
        let rep = check_coproducts(bp, f, &src, &tgt, 6).unwrap();
        assert!(rep.all_pass(), "{}", rep.to_json());
    }
}

#[test]
fn cyclic_star_pair_maps() {
    let bp = cyclic();
    check_pair_maps(&bp, Which::IL, Which::IR);
    check_pair_maps(&bp, Which::IIL, Which::IIR);
}

#[test]
fn fuzzy_star_pair_maps() {
    let bp = fuzzy();
    check_pair_maps(&bp, Which::IL, Which::IR);
    check_pair_maps(&bp, Which::IIL, Which::IIR);
}

#[test]
fn corrupted_star_is_not_certified() {
    let bp = cyclic();
    let (src, tgt) = pair(&bp, Which::IL, Which::IR);
    let star = star_map(&bp, &src, &tgt, Hand::Left).unwrap();
    for k in 0..star.letters.len() {
        let mut g = star.clone();
        g.letters[k] = g.letters[k].scaled(&Q::from_int(2));
        assert!(!check_generator_map(&g, &src, &tgt, 6, true).passed(), "letter {k}");
    }
}

#[test]
fn identity_map_is_trivially_certified() {
    let bp = cyclic();
    let l = build(&bp, Which::L).unwrap();
    let v = check_generator_map(&identity_map(&l, &l), &l, &l, 6, false);
    assert!(v.passed());
    assert!(v.max_degree <= 2);
}

#[test]
fn lone_field_is_inconclusive_but_acts() {
    let bp = cyclic();
    let l = build(&bp, Which::L).unwrap();
    let x = l.gen(&x_name(0));
    assert!(!l.certify(&x, 4).is_certified());
    let k = trivial_connection(&bp.calc.fodc()).unwrap();
    let rho = left_representation(&bp, &k, &l).unwrap();
    assert!(!rho.eval(&x).is_zero());
}

#[test]
fn representations_on_function_algebra() {
    let bp = cyclic();
    let (il, ir) = pair(&bp, Which::IL, Which::IR);
    let l = build(&bp, Which::L).unwrap();
    let k = trivial_connection(&bp.calc.fodc()).unwrap();
    let rep = verify_module_representation(&bp, &k, &[&l, &il], &il, &ir).unwrap();
    assert!(rep.all_pass(), "{}", rep.to_json());
}

#[test]
fn representations_on_forms() {
    let bp = fuzzy();
    let (il, ir) = pair(&bp, Which::IL, Which::IR);
    let k = flat_form_connection(&bp.calc).unwrap();
    let rep = verify_module_representation(&bp, &k, &[&il], &il, &ir).unwrap();
    assert!(rep.all_pass(), "{}", rep.to_json());
}

#[test]
fn broken_leibniz_is_caught() {
    let bp = cyclic();
    let l = build(&bp, Which::L).unwrap();
    let mut k = trivial_connection(&bp.calc.fodc()).unwrap();
    let v = k.nabla.get(0, 1).clone();
    k.nabla.set(0, 1, v + Q::one());
    let rho = left_representation(&bp, &k, &l).unwrap();
    let err = rho.check_relations(&l).unwrap_err();
    assert!(err.contains("x a") || err.contains("x a_"), "{err}");
}

#[test]
fn certified_images_act_as_zero() {
    let bp = cyclic();
    let (il, ir) = pair(&bp, Which::IL, Which::IR);
    let star = star_map(&bp, &il, &ir, Hand::Left).unwrap();
    let k = trivial_connection(&bp.calc.fodc()).unwrap();
    let rho = right_representation(&bp, &k, &ir).unwrap();
    let images: Vec<Elem> = il.relations.iter().take(200).map(|r| star.apply(&ir, &r.elem)).collect();
    assert!(cross_check(&ir, &rho, &images, 6).is_ok());
}

#[test]
fn empty_calculus_presents_the_base() {
    let alg = hopfcheck::algebra::FiniteStarAlgebra::from_fn(
        "C^2",
        vec!["e0".into(), "e1".into()],
        |i, j| if i == j { hopfcheck::linalg::unit_vec(2, i) } else { hopfcheck::linalg::zero_vec(2) },
        vec![Q::one(), Q::one()],
        None,
    );
    let calc = ParallelisableCalculus {
        name: "zero".into(),
        alg,
        rank: 0,
        c: vec![],
        c_inv: vec![],
        del: vec![],
        del_r: vec![],
        omega_star: vec![],
        notes: vec![],
    };
    let bp = Biparallel::new(&calc).unwrap();
    let l = build(&bp, Which::L).unwrap();
    assert!(l.letters.is_empty());
    assert_eq!(l.base_dim(), 4);
    let e = Elem::word(vec![3]);
    assert!(!l.certify(&e, 4).is_certified());
}

#[test]
fn basis_change_keeps_verdicts() {
    let calc = cyclic_graph_calculus(3).unwrap();
    let n = calc.alg.dim();
    let p = hopfcheck::linalg::Matrix::from_fn(n, n, |i, j| if i == j { Q::one() } else if j == i + 1 { Q::from_int(1) } else { Q::zero() });
    let moved = change_calculus_basis(&calc, &p).unwrap();
    let bp = Biparallel::new(&moved).unwrap();
    let (src, tgt) = pair(&bp, Which::IL, Which::IR);
    let star = star_map(&bp, &src, &tgt, Hand::Left).unwrap();
    assert!(check_generator_map(&star, &src, &tgt, 6, true).passed());
}

#[test]
fn fuzzy_smash() {
    let rep = check_smash(&fuzzy(), 6, true).unwrap();
    assert!(rep.all_pass(), "{}", rep.to_json());
}

#[test]
fn cyclic_smash_without_star() {
    let rep = check_smash(&cyclic(), 6, true).unwrap();
    assert!(rep.all_pass(), "{}", rep.to_json());
}
