//! Named verification suites over parsed input structures.

use std::fmt;
use std::str::FromStr;

use crate::algebra::check_algebra;
use crate::bialgebroid::galois::{lambda, mu};
use crate::bialgebroid::modules::{search_base_yd, verify_comodule_bar, verify_module_bar, verify_yd_module, Comodule, LeftModule};
use crate::bialgebroid::pair::theta;
use crate::bialgebroid::{check_full_hopf, check_full_star_hopf, check_left_bialgebroid, check_pair, check_right_bialgebroid, PairData};
use crate::bimodule::{check_dual, check_pivotal, check_star_transport, star_transport};
use crate::calculus::{
    check_biinvertible, check_connection, check_double_conjugate, check_fodc, conjugate_connection, explicit_fields_match,
    flat_form_connection, trivial_connection, ParallelisableCalculus,
};
use crate::document::Structure;
use crate::error::{Error, Result};
use crate::ghobadi::families::{build, Biparallel, Hand, Which};
use crate::ghobadi::maps::{check_coproducts, check_equal_on_generators, check_generator_map, compose_apply, phi_map, star_map};
use crate::ghobadi::modules::{left_representation, refute_map, right_representation, verify_module_representation};
use crate::ghobadi::smash::check_smash;
use crate::ghobadi::{Elem, Presentation};
use crate::hopf::{
    build_action_algebroid, build_es_algebroid, check_crossed_module, check_es_algebroid, check_hopf_galois, check_hopf_star,
    ActionAlgebroid, EsAlgebroid,
};
use crate::report::Report;
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Fodc,
    Connection,
    BialgebroidLeft,
    BialgebroidRight,
    FullHopf,
    FullStarHopf,
    Pair,
    Action,
    HopfGalois,
    Es,
    GhobadiPresentations,
    GhobadiMaps,
    GhobadiModules,
    Smash,
    Yd,
    ComoduleBar,
    ModuleBar,
}

impl Suite {
    pub const ALL: [Suite; 18] = [
        Suite::Algebra,
        Suite::Fodc,
        Suite::Connection,
        Suite::BialgebroidLeft,
        Suite::BialgebroidRight,
        Suite::FullHopf,
        Suite::FullStarHopf,
        Suite::Pair,
        Suite::Action,
        Suite::HopfGalois,
        Suite::Es,
        Suite::GhobadiPresentations,
        Suite::GhobadiMaps,
        Suite::GhobadiModules,
        Suite::Smash,
        Suite::Yd,
        Suite::ComoduleBar,
        Suite::ModuleBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Fodc => "fodc",
            Suite::Connection => "connection",
            Suite::BialgebroidLeft => "bialgebroid-left",
            Suite::BialgebroidRight => "bialgebroid-right",
            Suite::FullHopf => "full-hopf",
            Suite::FullStarHopf => "full-star-hopf",
            Suite::Pair => "pair",
            Suite::Action => "action",
            Suite::HopfGalois => "hopf-galois",
            Suite::Es => "es",
            Suite::GhobadiPresentations => "ghobadi-presentations",
            Suite::GhobadiMaps => "ghobadi-maps",
            Suite::GhobadiModules => "ghobadi-modules",
            Suite::Smash => "smash",
            Suite::Yd => "yd",
            Suite::ComoduleBar => "comodule-bar",
            Suite::ModuleBar => "module-bar",
        }
    }

    /// Document kinds the suite accepts.
    pub fn accepts(self) -> &'static [&'static str] {
        match self {
            Suite::Algebra => &["algebra", "hopf", "crossed-module", "hopf-galois", "calculus"],
            Suite::Fodc | Suite::Connection | Suite::GhobadiPresentations | Suite::GhobadiMaps | Suite::GhobadiModules | Suite::Smash => {
                &["calculus"]
            }
            Suite::BialgebroidLeft | Suite::BialgebroidRight | Suite::FullHopf | Suite::FullStarHopf | Suite::Pair => {
                &["hopf", "crossed-module", "hopf-galois"]
            }
            Suite::Action | Suite::Yd | Suite::ComoduleBar | Suite::ModuleBar => &["hopf", "crossed-module"],
            Suite::HopfGalois | Suite::Es => &["hopf-galois"],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Unknown(format!("suite {s:?}; known: {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug)]
pub struct Params {
    pub degree_bound: usize,
    /// Worker threads for membership solves; 1 runs sequentially.
    pub threads: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { degree_bound: 6, threads: 1 }
    }
}

/// Runs a suite on a structure. Reports contain no timings, so reruns are
/// byte-identical.
pub fn run(suite: Suite, s: &Structure, params: &Params) -> Result<Report> {
    if !suite.accepts().contains(&s.kind()) {
        return Err(Error::Schema(format!("suite {suite} expects one of {:?}, got a {} document", suite.accepts(), s.kind())));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(suite, s, params))
}

fn dispatch(suite: Suite, s: &Structure, params: &Params) -> Result<Report> {
    let mut rep = Report::new(format!("{suite} suite"));
    match (suite, s) {
        (Suite::Algebra, _) => algebra_suite(&mut rep, s),
        (Suite::Fodc, Structure::Calculus(p)) => rep.absorb("", fodc_suite(p)?),
        (Suite::Connection, Structure::Calculus(p)) => rep.absorb("", connection_suite(p)?),
        (Suite::GhobadiPresentations, Structure::Calculus(p)) => rep.absorb("", presentations_suite(p, params)?),
        (Suite::GhobadiMaps, Structure::Calculus(p)) => rep.absorb("", maps_suite(p, params)?),
        (Suite::GhobadiModules, Structure::Calculus(p)) => rep.absorb("", modules_suite(p)?),
        (Suite::Smash, Structure::Calculus(p)) => {
            let bp = Biparallel::new(p)?;
            rep.absorb("", check_smash(&bp, params.degree_bound, params.threads > 1)?);
        }
        (Suite::HopfGalois, Structure::Galois(g)) => rep.absorb("", check_hopf_galois(g)),
        (Suite::Es, Structure::Galois(g)) => {
            let es = build_es_algebroid(g)?;
            rep.dim("L(P,H)", es.dim());
            rep.dim("B", g.base.dim());
            rep.absorb("", check_es_algebroid(&es));
        }
        (Suite::Action, _) => rep.absorb("", action_suite(&crossed(s)?)?),
        (Suite::Yd, _) => rep.absorb("", yd_suite(&crossed(s)?)),
        (Suite::ComoduleBar, _) => rep.absorb("", comodule_bar_suite(&crossed(s)?)),
        (Suite::ModuleBar, _) => rep.absorb("", module_bar_suite(&crossed(s)?)),
        (_, Structure::Galois(g)) => {
            let es = build_es_algebroid(g)?;
            rep.absorb("", algebroid_suite(suite, Algebroids::Es(&es)));
        }
        _ => {
            let aa = crossed(s)?;
            rep.absorb("", algebroid_suite(suite, Algebroids::Action(&aa)));
        }
    }
    Ok(rep)
}

fn algebra_suite(rep: &mut Report, s: &Structure) {
    match s {
        Structure::Algebra(a) => rep.absorb(&a.name, check_algebra(a)),
        Structure::Hopf(h) => rep.absorb(h.name(), check_hopf_star(h)),
        Structure::Crossed(c) => {
            rep.absorb(&c.alg.name, check_algebra(&c.alg));
            rep.absorb(c.hopf.name(), check_hopf_star(&c.hopf));
        }
        Structure::Galois(g) => {
            rep.absorb(&g.total.name, check_algebra(&g.total));
            rep.absorb(g.hopf.name(), check_hopf_star(&g.hopf));
        }
        Structure::Calculus(p) => rep.absorb(&p.alg.name, check_algebra(&p.alg)),
    }
}

/// The action algebroid of a crossed module; a Hopf document stands for its
/// pair crossed module.
fn crossed(s: &Structure) -> Result<ActionAlgebroid> {
    let c = match s {
        Structure::Crossed(c) => c.clone(),
        Structure::Hopf(h) => crate::hopf::CrossedModuleAlgebra::pair(h),
        _ => return Err(Error::Schema(format!("expected a crossed-module or hopf document, got {}", s.kind()))),
    };
    build_action_algebroid(&c)
}

enum Algebroids<'a> {
    Action(&'a ActionAlgebroid),
    Es(&'a EsAlgebroid),
}

fn pair_report(p: &PairData) -> Report {
    let (mut rep, flags) = check_pair(p);
    rep.flag("star-related", flags.star_related, "not star-related");
    rep.flag("reflexive", flags.reflexive, "not reflexive");
    rep.flag("star pair", flags.star_pair, "Phi^-1 circ != circ^-1 Phi");
    rep.flag("Hopf pair", flags.hopf_pair, "not a Hopf pair");
    rep
}

fn algebroid_suite(suite: Suite, a: Algebroids) -> Report {
    let mut rep = Report::new(suite.name());
    let (left, full, right, pair, right_op) = match a {
        Algebroids::Action(aa) => (aa.left(), Some(&aa.full), Some(&aa.right), &aa.pair, Some(&aa.right_op_full)),
        Algebroids::Es(es) => (&es.left, es.full.as_ref(), None, &es.pair, None),
    };
    rep.dim("total", left.dim());
    rep.dim("base", left.base_dim());
    match suite {
        Suite::BialgebroidLeft => {
            rep.absorb("", check_left_bialgebroid(left));
            rep.record("lambda invertible", lambda(left).outcome());
            rep.record("mu invertible", mu(left).outcome());
        }
        Suite::BialgebroidRight => {
            rep.absorb("right", check_right_bialgebroid(right.unwrap_or(&pair.right)));
        }
        Suite::FullHopf | Suite::FullStarHopf => {
            let check = if suite == Suite::FullHopf { check_full_hopf } else { check_full_star_hopf };
            match full {
                Some(f) => rep.absorb("", check(f)),
                None => rep.note("no full structure: the fibre is not commutative"),
            }
            if let Some(r) = right_op {
                rep.absorb("R^op", check(r));
            }
        }
        Suite::Pair => rep.absorb("", pair_report(pair)),
        _ => {}
    }
    rep
}

/// Crossed module checks, then the left, Galois, full and full star
/// checks on its action algebroid.
fn action_suite(aa: &ActionAlgebroid) -> Result<Report> {
    let mut rep = Report::new(format!("action algebroid {}", aa.full.name()));
    rep.absorb("crossed", check_crossed_module(&aa.crossed));
    rep.dim("total", aa.dim());
    rep.absorb("left", check_left_bialgebroid(aa.left()));
    rep.record("lambda invertible", lambda(aa.left()).outcome());
    rep.record("mu invertible", mu(aa.left()).outcome());
    rep.absorb("full", check_full_hopf(&aa.full));
    rep.absorb("full-star", check_full_star_hopf(&aa.full));
    Ok(rep)
}

fn yd_suite(aa: &ActionAlgebroid) -> Report {
    let mut rep = Report::new("Yetter-Drinfeld modules on the base");
    let res = search_base_yd(&aa.full, &[Q::zero(), Q::one()], 4);
    rep.dim("candidates", res.candidates);
    rep.dim("found", res.found.len());
    if res.truncated {
        rep.inconclusive("search finds a module", "candidate space exceeds the search cap");
        return rep;
    }
    rep.flag("search finds a module", !res.found.is_empty(), "no module found");
    for (k, y) in res.found.iter().enumerate() {
        rep.absorb(&format!("yd{k}"), verify_yd_module(&aa.full, y));
    }
    rep
}

fn comodule_bar_suite(aa: &ActionAlgebroid) -> Report {
    let mut rep = Report::new("comodule bar category");
    rep.absorb("regular", verify_comodule_bar(&aa.full, &Comodule::regular(&aa.full)));
    rep.absorb("base", verify_comodule_bar(&aa.full, &Comodule::base(&aa.full)));
    rep
}

fn module_bar_suite(aa: &ActionAlgebroid) -> Report {
    let mut rep = Report::new("module bar category");
    let l = aa.left();
    if let Some(st) = aa.full.star.as_ref() {
        let twist = aa.full.antipode.mul(st);
        rep.absorb("full regular-regular", verify_module_bar(l, &twist, &LeftModule::regular(l), &LeftModule::regular(l)));
        rep.absorb("full base-regular", verify_module_bar(l, &twist, &LeftModule::base(l), &LeftModule::regular(l)));
        rep.absorb("full base-base", verify_module_bar(l, &twist, &LeftModule::base(l), &LeftModule::base(l)));
    }
    match theta(&aa.pair) {
        Some(t) => {
            let pl = &aa.pair.left;
            rep.absorb("pair regular-base", verify_module_bar(pl, &t, &LeftModule::regular(pl), &LeftModule::base(pl)));
        }
        None => rep.fail("pair twist", "Phi^-1 circ is not available"),
    }
    rep
}

fn fodc_suite(p: &ParallelisableCalculus) -> Result<Report> {
    let mut rep = Report::new(format!("calculus {}", p.name));
    let f = p.fodc();
    rep.dim("A", p.alg.dim());
    rep.dim("Omega", f.omega.dim);
    rep.absorb("", check_fodc(&f));
    rep.absorb("parallel", p.check());
    let (l, r) = (p.right_fields(), p.left_fields());
    rep.absorb("X^R", check_dual(&l));
    rep.absorb("X^L", check_dual(&r));
    rep.record("explicit fields", explicit_fields_match(p));
    match star_transport(&l, &r) {
        Ok(t) => {
            rep.flag("star transport involutive", t.is_involutive(), "star transport is not involutive");
            rep.absorb("", check_star_transport(&l, &r, &t));
        }
        Err(e) => rep.fail("star transport", e.to_string()),
    }
    match p.pivotal() {
        Ok(piv) => rep.absorb("pivotal", check_pivotal(&piv)),
        Err(e) => rep.fail("pivotal", e.to_string()),
    }
    Ok(rep)
}

fn connection_suite(p: &ParallelisableCalculus) -> Result<Report> {
    let mut rep = Report::new(format!("connections on {}", p.name));
    let f = p.fodc();
    let k = trivial_connection(&f)?;
    rep.absorb("(A, d)", check_connection(&f, &k));
    match p.pivotal() {
        Ok(piv) => rep.absorb("(A, d)", check_biinvertible(&f, &k, &piv)),
        Err(e) => rep.fail("(A, d) biinvertible", e.to_string()),
    }
    let c = conjugate_connection(&f, &k)?;
    rep.absorb("bar(A, d)", check_connection(&f, &c));
    rep.record("double conjugate", check_double_conjugate(&f, &k));
    let w = flat_form_connection(p)?;
    rep.absorb("Omega", check_connection(&f, &w));
    Ok(rep)
}

fn presentations_suite(p: &ParallelisableCalculus, params: &Params) -> Result<Report> {
    let bp = Biparallel::new(p)?;
    let mut rep = Report::new(format!("presentations over {}", p.name));
    for w in Which::ALL {
        match build(&bp, w) {
            Ok(pres) => {
                rep.dim(&format!("{} relations", w.name()), pres.instance_count());
                rep.dim(&format!("{} rules", w.name()), pres.rule_count());
                let missing = pres.missing_rules();
                rep.flag(format!("{} straightening rules", w.name()), missing.is_empty(), format!("missing {}", missing.join(", ")));
                let e = Elem::word(vec![0]);
                rep.flag(format!("{} unit is not certified zero", w.name()), !pres.certify(&e, params.degree_bound).is_certified(), "1 = 0");
            }
            Err(e) => rep.note(format!("{}: {e}", w.name())),
        }
    }
    Ok(rep)
}

pub fn map_pair_report(bp: &Biparallel, src: &Presentation, tgt: &Presentation, params: &Params) -> Result<Report> {
    let (bound, par) = (params.degree_bound, params.threads > 1);
    let mut rep = Report::new(format!("{} and {}", src.name, tgt.name));
    let star = star_map(bp, src, tgt, Hand::Left)?;
    let star_inv = star_map(bp, tgt, src, Hand::Right)?;
    let phi = phi_map(bp, src, tgt, Hand::Left);
    let phi_inv = phi_map(bp, tgt, src, Hand::Right);
    let k = trivial_connection(&bp.calc.fodc())?;
    let (rho_src, rho_tgt) = (left_representation(bp, &k, src)?, right_representation(bp, &k, tgt)?);
    rep.record(format!("{} relations on (A, d)", src.name), rho_src.check_relations(src));
    rep.record(format!("{} relations on (A, d)", tgt.name), rho_tgt.check_relations(tgt));
    let mut max = 0;
    for (f, s, t, rho) in [(&star, src, tgt, &rho_tgt), (&phi, src, tgt, &rho_tgt), (&star_inv, tgt, src, &rho_src), (&phi_inv, tgt, src, &rho_src)] {
        let v = check_generator_map(f, s, t, bound, par);
        max = max.max(v.max_degree);
        v.record(&mut rep);
        rep.record(format!("{}: images act as zero on (A, d)", f.name), refute_map(f, s, t, rho));
    }
    let id = |e: &Elem| e.clone();
    let checks: [(&str, Box<dyn Fn(&Elem) -> Elem>, Box<dyn Fn(&Elem) -> Elem>); 3] = [
        (
            "Phi^-1 star = star^-1 Phi",
            Box::new(|e: &Elem| compose_apply(&star, tgt, &phi_inv, src, e)),
            Box::new(|e: &Elem| compose_apply(&phi, tgt, &star_inv, src, e)),
        ),
        ("star^-1 star = id", Box::new(|e: &Elem| compose_apply(&star, tgt, &star_inv, src, e)), Box::new(id)),
        ("Phi^-1 Phi = id", Box::new(|e: &Elem| compose_apply(&phi, tgt, &phi_inv, src, e)), Box::new(id)),
    ];
    for (name, lhs, rhs) in checks {
        let (r, d) = check_equal_on_generators(name, src, src, &lhs, &rhs, bound);
        max = max.max(d);
        rep.absorb("", r);
    }
    for f in [&star, &phi] {
        rep.absorb("", check_coproducts(bp, f, src, tgt, bound)?);
    }
    rep.dim("minimal certifying degree", max);
    Ok(rep)
}

fn maps_suite(p: &ParallelisableCalculus, params: &Params) -> Result<Report> {
    let bp = Biparallel::new(p)?;
    let mut rep = Report::new(format!("star pair maps over {}", p.name));
    let involutive = bp.star_op().map(|t| t.is_involutive()).unwrap_or(false);
    rep.note(format!("star transport on fields is {}involutive", if involutive { "" } else { "not " }));
    for (l, r) in [(Which::IL, Which::IR), (Which::IIL, Which::IIR)] {
        let (src, tgt) = match (build(&bp, l), build(&bp, r)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rep.note(format!("{} / {} skipped: {e}", l.name(), r.name()));
                continue;
            }
        };
        rep.absorb(l.name(), map_pair_report(&bp, &src, &tgt, params)?);
    }
    Ok(rep)
}

fn modules_suite(p: &ParallelisableCalculus) -> Result<Report> {
    let bp = Biparallel::new(p)?;
    let mut rep = Report::new(format!("representations over {}", p.name));
    let l = build(&bp, Which::L)?;
    let (il, ir) = (build(&bp, Which::IL)?, build(&bp, Which::IR)?);
    let mut lefts = vec![&l, &il];
    let iil = build(&bp, Which::IIL).ok();
    if let Some(p) = iil.as_ref() {
        lefts.push(p);
    }
    let f = bp.calc.fodc();
    for k in [trivial_connection(&f)?, flat_form_connection(&bp.calc)?] {
        rep.absorb(&k.e.name, verify_module_representation(&bp, &k, &lefts, &il, &ir)?);
    }
    Ok(rep)
}
