//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hopfcheck::bialgebroid::galois::{lambda, mu};
use hopfcheck::bialgebroid::modules::{search_base_yd, verify_comodule_bar, verify_module_bar, verify_yd_module, Comodule, LeftModule};
use hopfcheck::bialgebroid::{check_full_hopf, check_full_star_hopf, check_left_bialgebroid, check_pair, FullHopfAlgebroid};
use hopfcheck::calculus::{
    check_biinvertible, check_connection, check_fodc, cyclic_graph_calculus, fuzzy_sphere_calculus, trivial_connection, ParallelisableCalculus,
};
use hopfcheck::document::generate;
use hopfcheck::ghobadi::families::{build, Biparallel, Hand, Which};
use hopfcheck::ghobadi::maps::star_map;
use hopfcheck::ghobadi::modules::{left_representation, refute_map, right_representation, verify_module_representation};
use hopfcheck::ghobadi::smash::check_smash;
use hopfcheck::hopf::{
    build_action_algebroid, build_es_algebroid, check_crossed_module, check_es_algebroid, check_hopf_galois, check_hopf_star,
    ActionAlgebroid, CrossedModuleAlgebra, HopfGaloisExtension, HopfStarAlgebra,
};
use hopfcheck::report::Report;
use hopfcheck::suites::{map_pair_report, run, Params, Suite};
use hopfcheck::Q;

type Verdict = Result<String, String>;

fn ensure(ok: bool, witness: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness.into())
    }
}

fn all_pass(label: &str, r: &Report) -> Result<(), String> {
    match r.failures().first() {
        Some(c) => Err(format!("{label}: {} failed ({:?})", c.name, c.verdict)),
        None if r.inconclusive_count() > 0 => Err(format!("{label}: {} inconclusive", r.inconclusive_count())),
        None => Ok(()),
    }
}

fn pair_algebroid(h: &HopfStarAlgebra) -> Result<ActionAlgebroid, String> {
    build_action_algebroid(&CrossedModuleAlgebra::pair(h)).map_err(|e| e.to_string())
}

/// Left bialgebroid, both Galois maps, full and full star checks.
fn action_checks(aa: &ActionAlgebroid) -> Result<(), String> {
    all_pass("left", &check_left_bialgebroid(aa.left()))?;
    lambda(aa.left()).outcome().map_err(|w| format!("lambda: {w}"))?;
    mu(aa.left()).outcome().map_err(|w| format!("mu: {w}"))?;
    all_pass("full", &check_full_hopf(&aa.full))?;
    let st = check_full_star_hopf(&aa.full);
    all_pass("full star", &st)?;
    ensure(st.is_pass("S * S * = id"), "S * S * = id not checked")
}

fn timed(limit: Duration, f: impl FnOnce() -> Result<(), String>) -> Result<Duration, String> {
    let t = Instant::now();
    f()?;
    let dt = t.elapsed();
    ensure(dt < limit, format!("took {dt:.2?}, limit {limit:?}"))?;
    Ok(dt)
}

fn criterion1() -> Verdict {
    let t2 = timed(Duration::from_secs(5), || {
        let aa = pair_algebroid(&HopfStarAlgebra::cyclic(2))?;
        ensure(aa.dim() == 4, format!("dim {}", aa.dim()))?;
        action_checks(&aa)
    })?;
    let t4 = timed(Duration::from_secs(60), || {
        let aa = pair_algebroid(&HopfStarAlgebra::cyclic(4))?;
        ensure(aa.dim() == 16, format!("dim {}", aa.dim()))?;
        action_checks(&aa)
    })?;
    Ok(format!("CZ2 dim 4 in {t2:.2?}, CZ4 dim 16 in {t4:.2?}"))
}

fn criterion2() -> Verdict {
    let aa = pair_algebroid(&HopfStarAlgebra::cyclic(2))?;
    let (rep, flags) = check_pair(&aa.pair);
    all_pass("pair", &rep)?;
    ensure(flags.star_related && flags.reflexive && flags.star_pair && flags.hopf_pair, format!("{flags:?}"))?;
    all_pass("R^op full star", &check_full_star_hopf(&aa.right_op_full))?;
    Ok("star-related, reflexive, star pair and Hopf pair; R^op full star passes".into())
}

fn criterion3() -> Verdict {
    let c = CrossedModuleAlgebra::weyl(&HopfStarAlgebra::cyclic(2));
    let r = check_crossed_module(&c);
    all_pass("crossed", &r)?;
    for name in ["unitary action (a<|h)* = a*<|S^-1(h*)", "unitary coaction delta(a*) = a(0)* (x) a(1)*"] {
        ensure(r.is_pass(name), format!("{name} missing"))?;
    }
    let aa = build_action_algebroid(&c).map_err(|e| e.to_string())?;
    action_checks(&aa)?;
    Ok(format!("A = H* for CZ2, action algebroid dim {}", aa.dim()))
}

fn criterion4() -> Verdict {
    let mut detail = String::new();
    timed(Duration::from_secs(30), || {
        let e = HopfGaloisExtension::cyclic(4, 2).map_err(|e| e.to_string())?;
        ensure(e.base.dim() == 2, format!("dim B = {}", e.base.dim()))?;
        let g = check_hopf_galois(&e);
        all_pass("galois", &g)?;
        ensure(g.is_pass("chi bijective"), "chi")?;
        let taus = g.checks.iter().filter(|c| c.name.contains("tau")).count();
        ensure(taus == 6, format!("{taus} translation checks"))?;
        let es = build_es_algebroid(&e).map_err(|e| e.to_string())?;
        ensure(es.dim() == 8, format!("dim L(P,H) = {}", es.dim()))?;
        all_pass("es", &check_es_algebroid(&es))?;
        all_pass("left", &check_left_bialgebroid(&es.left))?;
        let full = es.full.as_ref().ok_or("no full structure")?;
        all_pass("full star", &check_full_star_hopf(full))?;
        let (rep, flags) = check_pair(&es.pair);
        all_pass("pair", &rep)?;
        ensure(flags.star_related && flags.reflexive && flags.star_pair, format!("{flags:?}"))?;
        detail = format!("dim B = 2, dim L(P,H) = 8, {taus} translation identities");
        Ok(())
    })?;
    Ok(detail)
}

fn criterion5() -> Verdict {
    let aa = pair_algebroid(&HopfStarAlgebra::cyclic(2))?;
    let r = verify_comodule_bar(&aa.full, &Comodule::regular(&aa.full));
    all_pass("comodule bar", &r)?;
    let conj = r.checks.iter().filter(|c| c.name.starts_with("conjugate")).count();
    ensure(conj > 0, "no conjugate coaction checks")?;
    Ok(format!("{} checks, {conj} on the conjugate coaction", r.checks.len()))
}

fn calculi() -> Vec<ParallelisableCalculus> {
    vec![cyclic_graph_calculus(3).unwrap(), fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()]
}

fn criterion6() -> Verdict {
    for p in calculi() {
        let f = p.fodc();
        all_pass(&p.name, &check_fodc(&f))?;
        all_pass(&p.name, &p.check())?;
        let piv = p.pivotal().map_err(|e| e.to_string())?;
        let bp = Biparallel::new(&p).map_err(|e| e.to_string())?;
        ensure(bp.star_op().map(|t| t.is_involutive()).unwrap_or(false), format!("{}: star transport not involutive", p.name))?;
        let k = trivial_connection(&f).map_err(|e| e.to_string())?;
        all_pass("(A, d)", &check_connection(&f, &k))?;
        all_pass("(A, d) biinvertible", &check_biinvertible(&f, &k, &piv))?;
    }
    Ok("Z3 graph and fuzzy sphere 1/2".into())
}

fn criterion7() -> Verdict {
    let bp = Biparallel::new(&cyclic_graph_calculus(3).unwrap()).map_err(|e| e.to_string())?;
    let l = build(&bp, Which::L).map_err(|e| e.to_string())?;
    let il = build(&bp, Which::IL).map_err(|e| e.to_string())?;
    let ir = build(&bp, Which::IR).map_err(|e| e.to_string())?;
    let k = trivial_connection(&bp.calc.fodc()).map_err(|e| e.to_string())?;
    let r = verify_module_representation(&bp, &k, &[&l, &il], &il, &ir).map_err(|e| e.to_string())?;
    all_pass("representations", &r)?;
    let joint = r.checks.iter().filter(|c| c.name.contains("<|")).count();
    ensure(joint == 4, format!("{joint} joint relations"))?;
    ensure(r.checks.iter().any(|c| c.name.starts_with("conjugate module")), "conjugate module not checked")?;
    Ok(format!("{} relations of L, {} of IL, 4 joint relations, conjugate module", l.instance_count(), il.instance_count()))
}

fn criterion8() -> Verdict {
    let params = Params { degree_bound: 6, threads: 4 };
    let mut out = vec![];
    for p in calculi() {
        let bp = Biparallel::new(&p).map_err(|e| e.to_string())?;
        for (lw, rw) in [(Which::IL, Which::IR), (Which::IIL, Which::IIR)] {
            let src = build(&bp, lw).map_err(|e| e.to_string())?;
            let tgt = build(&bp, rw).map_err(|e| e.to_string())?;
            let r = map_pair_report(&bp, &src, &tgt, &params).map_err(|e| e.to_string())?;
            all_pass(&src.name, &r)?;
            let d = r.dims.get("minimal certifying degree").copied().ok_or("degree not recorded")?;
            ensure(d <= 4, format!("{}: degree {d}", src.name))?;
            out.push(format!("{} {d}", lw.name()));
        }
    }
    Ok(format!("0 inconclusive at D = 6; max certifying degrees {}", out.join(", ")))
}

fn criterion9() -> Verdict {
    let bp = Biparallel::new(&fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()).map_err(|e| e.to_string())?;
    let r = check_smash(&bp, 6, true).map_err(|e| e.to_string())?;
    all_pass("smash", &r)?;
    for name in ["module algebra law", "A is a smash module"] {
        ensure(r.is_pass(name), format!("{name} missing"))?;
    }
    ensure(r.checks.iter().any(|c| c.name.starts_with("t_ij* = tb_ji")), "star not checked")?;
    Ok(format!("{} checks", r.checks.len()))
}

fn detects(r: &Report) -> bool {
    r.failures().iter().any(|c| matches!(&c.verdict, hopfcheck::report::Verdict::Fail { witness } if !witness.is_empty()))
}

fn bump(q: &Q) -> Q {
    q + &Q::one()
}

/// Each entry names the single-entry perturbation and reports whether a
/// failing check with a witness was produced.
fn mutations() -> Vec<(&'static str, bool)> {
    let mut out = vec![];
    let z2 = HopfStarAlgebra::cyclic(2);
    out.push(("Hopf: coproduct entry", detects(&check_hopf_star(&z2.with_delta_entry(0, 1, Q::one())))));
    let crossed = CrossedModuleAlgebra::weyl(&z2);
    out.push(("crossed module: action entry", detects(&check_crossed_module(&crossed.with_action_entry(0, 1, Q::one())))));
    let aa = pair_algebroid(&z2).unwrap();
    out.push(("left bialgebroid: counit entry", detects(&check_left_bialgebroid(&aa.left().with_eps_entry(0, 1, Q::from_int(3))))));
    let mut s = aa.full.antipode.clone();
    s.set(0, 1, bump(s.get(0, 1)));
    let broken = FullHopfAlgebroid::new(aa.left().clone(), s, aa.full.antipode_inv.clone(), aa.full.star.clone());
    out.push(("full Hopf: antipode entry", detects(&check_full_hopf(&broken))));
    let mut st = aa.full.star.clone().unwrap();
    st.set(1, 1, bump(st.get(1, 1)));
    out.push(("full star: star entry", detects(&check_full_star_hopf(&aa.full.clone().with_star(Some(st))))));
    let mut pair = aa.pair.clone();
    if let Some(phi) = pair.phi.as_mut() {
        phi.set(0, 0, bump(phi.get(0, 0)));
    }
    out.push(("pair: Phi entry", detects(&check_pair(&pair).0)));
    let mut c = Comodule::regular(&aa.full);
    let k = c.delta_r[1].iter().position(|x| !x.is_zero()).unwrap();
    c.delta_r[1][k] = Q::zero();
    out.push(("comodule bar: right coaction entry", detects(&verify_comodule_bar(&aa.full, &c))));
    let l = aa.left();
    let mut twist = aa.full.antipode.mul(aa.full.star.as_ref().unwrap());
    twist.set(0, 0, bump(twist.get(0, 0)));
    out.push(("module bar: twist entry", detects(&verify_module_bar(l, &twist, &LeftModule::regular(l), &LeftModule::regular(l)))));
    let res = search_base_yd(&aa.full, &[Q::zero(), Q::one()], 1);
    let mut y = res.found[0].clone();
    let last = y.action[1].rows() - 1;
    let v = bump(y.action[1].get(last, last));
    y.action[1].set(last, last, v);
    out.push(("YD: action entry", detects(&verify_yd_module(&aa.full, &y))));
    let e = HopfGaloisExtension::cyclic(4, 2).unwrap();
    // the first entry whose perturbation still has unital coinvariants
    let galois_hit = (0..e.coaction.rows())
        .flat_map(|i| (1..e.coaction.cols()).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let mut co = e.coaction.clone();
            co.set(i, j, bump(co.get(i, j)));
            HopfGaloisExtension::new("perturbed", e.total.clone(), e.hopf.clone(), co).ok()
        })
        .map(|p| detects(&check_hopf_galois(&p)))
        .unwrap_or(false);
    out.push(("Hopf-Galois: coaction entry", galois_hit));
    let es = build_es_algebroid(&e).unwrap();
    out.push(("ES: counit entry", detects(&check_left_bialgebroid(&es.left.with_eps_entry(0, 0, Q::from_int(2))))));

    let p = cyclic_graph_calculus(3).unwrap();
    let mut f = p.fodc();
    f.d.set(0, 0, bump(f.d.get(0, 0)));
    out.push(("calculus: d entry", detects(&check_fodc(&f))));
    let f = p.fodc();
    let mut k = trivial_connection(&f).unwrap();
    k.sigma.set(0, 0, bump(k.sigma.get(0, 0)));
    k.sigma_inv = None;
    out.push(("connection: sigma entry", detects(&check_connection(&f, &k))));

    let bp = Biparallel::new(&p).unwrap();
    let l = build(&bp, Which::L).unwrap();
    let mut k = trivial_connection(&bp.calc.fodc()).unwrap();
    k.nabla.set(0, 1, bump(k.nabla.get(0, 1)));
    let mut r = Report::new("perturbed nabla");
    r.record("L relations", left_representation(&bp, &k, &l).unwrap().check_relations(&l));
    out.push(("representation: nabla entry", detects(&r)));

    let il = build(&bp, Which::IL).unwrap();
    let ir = build(&bp, Which::IR).unwrap();
    let mut star = star_map(&bp, &il, &ir, Hand::Left).unwrap();
    let t00 = il.letter("t00") as usize;
    star.letters[t00].add_term(vec![0], &Q::one());
    let k = trivial_connection(&bp.calc.fodc()).unwrap();
    let rho = right_representation(&bp, &k, &ir).unwrap();
    let mut r = Report::new("perturbed star");
    r.record("images act as zero", refute_map(&star, &il, &ir, &rho));
    out.push(("star map: image of t00", detects(&r)));

    let mut q = fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap();
    let v = bump(q.del_r[0].get(1, 1));
    q.del_r[0].set(1, 1, v);
    let hit = Biparallel::new(&q).and_then(|bp| check_smash(&bp, 6, true)).map(|r| detects(&r)).unwrap_or(false);
    out.push(("smash: right partial entry", hit));
    out
}

fn criterion10() -> Verdict {
    let m = mutations();
    let missed: Vec<&str> = m.iter().filter(|(_, hit)| !hit).map(|(n, _)| *n).collect();
    ensure(missed.is_empty(), format!("undetected: {}", missed.join("; ")))?;
    Ok(format!("{}/{} perturbations detected", m.len(), m.len()))
}

fn has_float(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_f64(),
        serde_json::Value::Array(a) => a.iter().any(has_float),
        serde_json::Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

fn criterion11() -> Verdict {
    let runs: [(Suite, &str, &[&str]); 6] = [
        (Suite::Action, "pair-example", &["Z2"]),
        (Suite::ComoduleBar, "pair-example", &["Z2"]),
        (Suite::Es, "cyclic-galois", &["4", "2"]),
        (Suite::Fodc, "fuzzy-sphere", &["1/2"]),
        (Suite::GhobadiMaps, "cyclic-graph", &["3"]),
        (Suite::Smash, "fuzzy-sphere", &["1/2"]),
    ];
    for (suite, name, args) in runs {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let s = generate(name, &args).map_err(|e| e.to_string())?;
        let reparsed = hopfcheck::document::parse(&s.to_json()).map_err(|e| e.to_string())?;
        ensure(reparsed.to_json() == s.to_json(), format!("{name}: document does not round-trip"))?;
        let a = run(suite, &s, &Params { degree_bound: 6, threads: 1 }).map_err(|e| e.to_string())?.to_json();
        let b = run(suite, &reparsed, &Params { degree_bound: 6, threads: 4 }).map_err(|e| e.to_string())?.to_json();
        ensure(a == b, format!("{suite} on {name}: reports differ between runs"))?;
        let v: serde_json::Value = serde_json::from_str(&a).map_err(|e| e.to_string())?;
        ensure(!has_float(&v), format!("{suite} on {name}: float in report"))?;
    }
    Ok("6 suites byte-identical across reruns and thread counts; no floats".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("action algebroid end-to-end", criterion1),
        ("action pair", criterion2),
        ("Weyl example", criterion3),
        ("Hopf-Galois and ES algebroid", criterion4),
        ("comodule bar", criterion5),
        ("calculi and connections", criterion6),
        ("presented representations", criterion7),
        ("presented star pair maps", criterion8),
        ("smash presentation", criterion9),
        ("mutation sensitivity", criterion10),
        ("determinism and exactness", criterion11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{:.2?}]", k + 1, t.elapsed()),
            Err(w) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({w}) [{:.2?}]", k + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
