use hopfcheck::bialgebroid::modules::{search_base_yd, verify_comodule_bar, verify_module_bar, verify_yd_module, Comodule, LeftModule};
use hopfcheck::bialgebroid::pair::theta;
use hopfcheck::bialgebroid::{check_pair, pair_from_full};
use hopfcheck::hopf::{build_action_algebroid, ActionAlgebroid, CrossedModuleAlgebra, HopfStarAlgebra};
use hopfcheck::Q;

fn z2() -> ActionAlgebroid {
    build_action_algebroid(&CrossedModuleAlgebra::pair(&HopfStarAlgebra::cyclic(2))).unwrap()
}

#[test]
fn regular_comodule_is_bar() {
    let a = z2();
    let r = verify_comodule_bar(&a.full, &Comodule::regular(&a.full));
    assert!(r.all_pass(), "{r}");
}

#[test]
fn base_comodule_is_bar() {
    let a = z2();
    let r = verify_comodule_bar(&a.full, &Comodule::base(&a.full));
    assert!(r.all_pass(), "{r}");
}

#[test]
fn broken_right_coaction_is_caught() {
    let a = z2();
    let mut c = Comodule::regular(&a.full);
    let v = &mut c.delta_r[1];
    let k = v.iter().position(|x| !x.is_zero()).unwrap();
    v[k] = Q::zero();
    let r = verify_comodule_bar(&a.full, &c);
    assert!(!r.all_pass());
}

#[test]
fn module_bar_full_star() {
    let a = z2();
    let l = a.left();
    let twist = a.full.antipode.mul(a.full.star.as_ref().unwrap());
    for (m, n) in [
        (LeftModule::regular(l), LeftModule::regular(l)),
        (LeftModule::base(l), LeftModule::regular(l)),
        (LeftModule::base(l), LeftModule::base(l)),
    ] {
        let r = verify_module_bar(l, &twist, &m, &n);
        assert!(r.all_pass(), "{r}");
    }
}

#[test]
fn module_bar_action_pair() {
    let a = z2();
    let twist = theta(&a.pair).unwrap();
    let l = &a.pair.left;
    let r = verify_module_bar(l, &twist, &LeftModule::regular(l), &LeftModule::base(l));
    assert!(r.all_pass(), "{r}");
}

#[test]
fn conjugate_twice_is_original() {
    let a = z2();
    let l = a.left();
    let twist = a.full.antipode.mul(a.full.star.as_ref().unwrap());
    let m = LeftModule::regular(l);
    let back = m.conjugate(&twist).conjugate(&twist);
    assert_eq!(back.action, m.action);
}

#[test]
fn full_star_gives_star_pair() {
    let a = z2();
    let p = pair_from_full(&a.full).unwrap();
    let (r, flags) = check_pair(&p);
    assert!(r.all_pass(), "{r}");
    assert!(flags.star_related && flags.reflexive && flags.star_pair);
}

#[test]
fn yd_search_finds_modules() {
    let a = z2();
    let res = search_base_yd(&a.full, &[Q::zero(), Q::one()], 4);
    assert!(!res.found.is_empty(), "searched {} candidates", res.candidates);
    for y in &res.found {
        let r = verify_yd_module(&a.full, y);
        assert!(r.all_pass(), "{r}");
    }
}

#[test]
fn perturbed_yd_fails() {
    let a = z2();
    let res = search_base_yd(&a.full, &[Q::zero(), Q::one()], 1);
    let mut y = res.found[0].clone();
    let k = y.action[1].rows() - 1;
    let x = y.action[1].get(k, k).clone() + Q::one();
    y.action[1].set(k, k, x);
    let r = verify_yd_module(&a.full, &y);
    assert!(!r.all_pass());
}
