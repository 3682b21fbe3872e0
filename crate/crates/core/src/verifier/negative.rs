//! Deliberately broken relations and constants. Each control passes when
//! the corresponding suite notices the mutation.

use super::{characters, g2, so4, spin7, Check, SuiteConfig, SuiteError, VerificationReport};
use crate::catalog::{Catalog, CatalogData};
use crate::chern::{
    character_vars, exterior_power_character, standard_so_weights, tau, tau_pm, CoordinateSpec, CoordinateSystem,
};
use crate::invariants::{dickson_invariants, verify_invariant_ring, GroupAction};
use crate::maps::load_map;
use crate::maps::pushforward::{load_calculus, zeta_constants};
use crate::polyring::{rational, CoefficientRing, Polynomial};
use crate::presentations::g2::{completeness_check_g2, Detector};
use crate::presentations::Params;

/// Degree bound for the mutated suite runs; enough to reach every
/// mutated relation.
const CONTROL_DEGREE: i64 = 14;

type SuiteFn = fn(&SuiteConfig) -> Result<VerificationReport, SuiteError>;

fn set_relation(data: &mut CatalogData, pres: &[&str], id: &str, text: &str) {
    for p in data.presentations.iter_mut().filter(|p| pres.contains(&p.name.as_str())) {
        for r in p.relations.iter_mut().filter(|r| r.id == id) {
            r.text = text.to_string();
        }
    }
}

fn set_form(data: &mut CatalogData, id: &str, form: &str) {
    if let Some(pf) = data.pushforward.as_mut() {
        for r in pf.relations.iter_mut().filter(|r| r.id == id) {
            r.form = form.to_string();
        }
    }
}

/// Runs `suite` on the mutated catalog. Returns whether the mutation was
/// detected, with the first failing check (or the error) as witness.
fn detects(cfg: &SuiteConfig, mutate: impl FnOnce(&mut CatalogData), suite: SuiteFn) -> (bool, String) {
    let catalog = match cfg.catalog.with_data(mutate) {
        Ok(c) => c,
        Err(e) => return (true, format!("mutated catalog rejected: {e}")),
    };
    let sub = SuiteConfig { catalog, max_degree: Some(CONTROL_DEGREE), seed: cfg.seed };
    match suite(&sub) {
        Ok(r) => match r.checks.iter().find(|c| !c.passed()) {
            Some(c) => (true, format!("failing check {}", c.id)),
            None => (false, "every check passed".into()),
        },
        Err(e) => (true, format!("suite error: {e}")),
    }
}

fn control(id: &str, statement: &str, (detected, witness): (bool, String)) -> Check {
    Check::new(format!("negative.{id}"), "negative control", statement, detected).witness(witness)
}

fn detectors(cat: &Catalog) -> Result<(crate::maps::RingMap, crate::maps::RingMap), SuiteError> {
    Ok((load_map(cat, "res_G2_T", &Params::new())?, load_map(cat, "cycle_G2", &Params::new())?))
}

pub(super) fn verify_negative_controls(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("negative", Some(CONTROL_DEGREE));
    let g2_suite: SuiteFn = g2::verify_g2;
    let spin7_suite: SuiteFn = spin7::verify_spin7;

    rep.push(control(
        "g2_c2_squared",
        "c2^2 = 5c4 in G2 is rejected",
        detects(cfg, |d| set_relation(d, &["G2", "G2_local"], "c2^2=4c4", "c2^2 - 5*c4"), g2_suite),
    ));
    rep.push(control(
        "spin7_A",
        "A = 3 in (13) is rejected",
        detects(
            cfg,
            |d| {
                set_relation(d, &["Spin7"], "(13)", "c6p*(c6p - c6) - c6*(c6p - c6) - c8p*(3*c4p + 4/3*c4)");
                set_form(d, "(13)", "b*zeta6*(c6p - c6) - c8p*(3*c4p + 4/3*c4)");
            },
            spin7_suite,
        ),
    ));
    rep.push(control(
        "spin7_coeff7",
        "5 in place of 6 in (7) is rejected",
        detects(
            cfg,
            |d| {
                set_relation(d, &["Spin7"], "(7)", "c2p*c4p - c2p*c4 - 5*(c6p - c6)");
                set_form(d, "(7)", "a*zeta4*c2p - 5*b*zeta6");
            },
            spin7_suite,
        ),
    ));
    rep.push(control(
        "spin7_zeta3_c4",
        "zeta3 c4' = 0 in place of (3) is rejected",
        detects(
            cfg,
            |d| {
                set_relation(d, &["Spin7"], "(3)", "zeta3*c4p");
                set_form(d, "(3)", "zeta3*c4p");
            },
            spin7_suite,
        ),
    ));
    rep.push(control(
        "so4_y2_sign",
        "y2 -> +2 t1 t2 breaks the restriction triangle",
        detects(
            cfg,
            |d| {
                for m in d.maps.iter_mut().filter(|m| m.name == "res_SO4_T") {
                    m.images.insert("y2".into(), "2*t1*t2".into());
                }
            },
            g2_suite,
        ),
    ));
    let so4_suite: SuiteFn = so4::verify_so4;
    rep.push(control(
        "so4_y2_square",
        "y2^2 = 3d4 in SO4 is rejected",
        detects(cfg, |d| set_relation(d, &["SO4", "SO4_formal"], "y2^2=4d4", "y2^2 - 3*d4"), so4_suite),
    ));
    let char_suite: SuiteFn = characters::verify_characters;
    rep.push(control(
        "characters_weights",
        "swapping the weights of lambda_2^+ and lambda_2^- is rejected",
        detects(
            cfg,
            |d| {
                for w in d.weight_systems.iter_mut() {
                    match w.name.as_str() {
                        "lambda2plus_so4" => w.weights = vec![vec![1, -1], vec![-1, 1], vec![0, 0]],
                        "lambda2minus_so4" => w.weights = vec![vec![1, 1], vec![-1, -1], vec![0, 0]],
                        _ => {}
                    }
                }
            },
            char_suite,
        ),
    ));

    // Mutations outside the catalog.
    let table = spin7::spin7_constants(&cfg.catalog)?;
    let b = table.get("b").cloned().ok_or_else(|| SuiteError::Internal("b not derived".into()))?;
    let calc = load_calculus(&cfg.catalog, &spin7::delta_params(0, 0), &zeta_constants(rational(1, 1), b))?;
    let mut nonzero = Vec::new();
    for r in &cfg.catalog.pushforward()?.relations {
        let rel = calc.ambient().relation(&r.id).map(|x| x.poly.clone());
        let e = calc.evaluate_text(&r.form, rel.as_ref())?;
        if !e.value.is_zero() {
            nonzero.push(r.id.clone());
        }
    }
    rep.push(control(
        "pushforward_a",
        "a = 1 in the push-forward calculus is rejected",
        (!nonzero.is_empty(), format!("nonzero forms: {}", nonzero.join(" "))),
    ));

    let gl3 = GroupAction::from_catalog(&cfg.catalog, "GL3_F2")?;
    let mut ds: Vec<Polynomial> =
        dickson_invariants(3, 2)?.into_iter().map(|d| d.poly.embed(gl3.vars())).collect::<Result<_, _>>()?;
    ds[0] = Polynomial::var(gl3.field(), gl3.vars().clone(), "u1")?.pow(4);
    let r = verify_invariant_ring(&gl3, &ds, 8)?;
    rep.push(control(
        "dickson_substitute",
        "u1^4 in place of D4 does not generate the GL3(F2) invariants",
        (!r.passed(), format!("non-invariant: {}", r.non_invariant.join("; "))),
    ));

    let w = GroupAction::from_catalog(&cfg.catalog, "W_G2")?;
    let v = cfg.catalog.weight_system("V_g2")?;
    let c = |i| crate::chern::chern_class(v, i).change_ring(CoefficientRing::Rationals).and_then(|p| p.embed(w.vars()));
    let r = verify_invariant_ring(&w, &[c(2)?, c(4)?], 6)?;
    let bad: Vec<String> =
        r.degrees.iter().filter(|d| !d.matches()).map(|d| format!("degree {}", d.degree)).collect();
    rep.push(control(
        "weyl_generators",
        "c2, c4 do not generate the Weyl invariants",
        (!r.passed(), format!("mismatch in {}", bad.join(", "))),
    ));

    // C(2k, k) in place of C(2k, k)/2.
    let coords = std::sync::Arc::new(CoordinateSystem::from_spec(CoordinateSpec {
        name: "so4".into(),
        variables: character_vars(2).names().to_vec(),
        eliminate: Default::default(),
    })?);
    let ext = exterior_power_character(&standard_so_weights(coords)?, 2)?;
    let broken = |pos| &tau_pm(pos, 2) + &tau(0, 2).map(|t| t.scale_int(2)).expect("tau_0");
    let sum = &broken(true) + &broken(false);
    rep.push(control(
        "lambda_formula",
        "the half-spin formula without the factor 1/2 misses Lambda^2",
        (!(&sum - &ext).is_zero(), format!("broken sum: {sum}")),
    ));

    let (tor, cyc) = detectors(&cfg.catalog)?;
    let dets: [&dyn Detector; 2] = [&tor, &cyc];
    let g2p = cfg.catalog.presentation("G2", &Params::new())?;
    let mut refused = Vec::new();
    for text in ["c4", "c2^2 - 5*c4", "c7", "c2^4 - 4*c2^2*c4 + c2*c6"] {
        let p = g2p.parse(text)?;
        if completeness_check_g2(&p, 20, &dets).is_err() {
            refused.push(text);
        }
    }
    rep.push(control(
        "completeness_refuses",
        "the completeness check refuses c4, c2^2 - 5c4, c7 and a mixed non-member",
        (refused.len() == 4, format!("refused: {}", refused.join("; "))),
    ));
    Ok(rep)
}
