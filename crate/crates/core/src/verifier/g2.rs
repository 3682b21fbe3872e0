use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, SuiteConfig, SuiteError, Validity, VerificationReport, COMPLETENESS_SAMPLES, DEFAULT_G2_DEGREE};
use crate::maps::{load_map, MapVerification, UnverifiedMap};
use crate::polyring::{monomials_of_degree, CoefficientRing, Coeff, Polynomial};
use crate::presentations::g2::{completeness_check_g2, Detector};
use crate::presentations::{BasisKind, GradedRingPresentation, Params};

const ANCHOR: &str = "G2 theorem";

/// Rank of a family of polynomials over a field.
pub(super) fn rank_of(polys: &[Polynomial], field: CoefficientRing) -> usize {
    let mut monos: Vec<_> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    crate::linalg::Matrix::from_rows(field, monos.len(), rows).rank()
}

/// One check per relation of a map verification.
pub(super) fn relation_checks(prefix: &str, v: &MapVerification, validity: impl Fn(&str) -> Validity) -> Vec<Check> {
    let mut out: Vec<Check> = v
        .relations
        .iter()
        .map(|r| {
            Check::new(
                format!("{prefix}.{}", r.relation),
                r.anchor.clone(),
                format!("relation {} maps to 0 under {}", r.relation, r.map),
                r.verdict,
            )
            .validity(validity(&r.relation))
            .witness(format!("image: {}", r.image_normal_form))
        })
        .collect();
    if !v.degree_errors.is_empty() {
        out.push(
            Check::new(format!("{prefix}.degrees"), "homogeneity of generator images", "images have the right degree", false)
                .witnesses(v.degree_errors.clone()),
        );
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, pres: &GradedRingPresentation, degree: i64) -> Polynomial {
    let mut p = pres.zero();
    for m in monomials_of_degree(pres.vars(), degree) {
        if rng.gen_bool(0.5) {
            let c: i64 = rng.gen_range(-3..=3);
            p = &p + &Polynomial::monomial(pres.ring(), pres.vars().clone(), m, Coeff::from_integer(c.into()))
                .expect("integer coefficient");
        }
    }
    p
}

pub(super) fn verify_g2(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let max = cfg.bound(DEFAULT_G2_DEGREE);
    let cat = &cfg.catalog;
    let none = Params::new();
    let mut rep = VerificationReport::new("g2", Some(max));
    let g2 = cat.presentation("G2", &none)?;
    let so4 = cat.presentation("SO4", &none)?;

    // (a) the restriction formulas: Whitney product and the identification d3' = d3.
    let formula = cat.formula("G2_via_SO4_formal")?;
    let formal = cat.presentation(&formula.target, &none)?;
    let mut total = formal.parse("1")?;
    for t in &formula.whitney {
        total = &total * &formal.parse(t)?;
    }
    for (name, text) in &formula.images {
        let i: i64 = name.trim_start_matches('c').parse().map_err(|_| SuiteError::Internal(format!("bad class {name}")))?;
        let lhs = formal.normal_form(&total.homogeneous_part(i));
        let rhs = formal.normal_form(&formal.parse(text)?);
        rep.push(
            Check::new(
                format!("g2.whitney.{name}"),
                format!("{ANCHOR}: restriction formula for {name}"),
                format!("{name}(V) = {text} by the Whitney formula"),
                lhs == rhs,
            )
            .witness(format!("product: {lhs}"))
            .witness(format!("formula: {rhs}")),
        );
    }
    let res = UnverifiedMap::from_catalog(cat, "res_G2_SO4", &none)?;
    let mut ident = BTreeMap::new();
    ident.insert("d3p".to_string(), formal.generator("d3")?);
    for (i, g) in g2.vars().names().iter().enumerate() {
        let f = formal.parse(&formula.images[g])?.substitute(&ident)?.embed(so4.vars())?;
        let ok = so4.normal_form(&f) == so4.normal_form(&res.images()[i]);
        rep.push(
            Check::new(
                format!("g2.identify.{g}"),
                format!("{ANCHOR}: d3' = d3"),
                format!("restriction of {g} equals its formula with d3' = d3"),
                ok,
            )
            .witness(format!("{g} -> {}", res.images()[i])),
        );
    }

    // (b), (c) relations under the restriction.
    let check = res.check();
    rep.checks.extend(relation_checks("g2.relation", &check, |id| {
        if id.starts_with("2c7") { Validity::ModTorsion } else { Validity::Exact }
    }));
    let res = res.verify().map(|(m, _)| m).ok();
    let c7_img = res.as_ref().map(|m| m.image("c7").cloned()).transpose()?;
    let c7_torsion = c7_img
        .as_ref()
        .map(|p| !p.is_zero() && p.terms().all(|(m, _)| so4.is_torsion_monomial(m)))
        .unwrap_or(false);
    let v_self_dual = cat.weight_system("V_so4")?.is_self_dual();
    rep.push(
        Check::new(
            "g2.torsion.c7",
            format!("{ANCHOR}: 2c7 = 0"),
            "c7 restricts to a 2-torsion monomial and V is self-dual",
            c7_torsion && v_self_dual,
        )
        .validity(Validity::ModTorsion)
        .witness(format!("c7 -> {}", c7_img.map(|p| p.to_string()).unwrap_or_default())),
    );

    // Triangle with the torus.
    let to_t = load_map(cat, "res_SO4_T", &none)?;
    let direct = load_map(cat, "res_G2_T", &none)?;
    let diffs = match &res {
        Some(r) => {
            let (comp, _) = r.then(&to_t)?.verify()?;
            comp.differences(&direct)
        }
        None => vec![("res_G2_SO4".to_string(), g2.zero(), g2.zero())],
    };
    rep.push(
        Check::new(
            "g2.triangle",
            "restriction to the maximal torus factors through SO4",
            "res_G2_T = res_SO4_T o res_G2_SO4 on every generator",
            diffs.is_empty(),
        )
        .witnesses(diffs.iter().map(|(g, a, b)| format!("{g}: {a} vs {b}"))),
    );
    let tg2 = UnverifiedMap::from_catalog(cat, "res_G2_Tg2", &none)?.check();
    rep.push(Check::new(
        "g2.torus.g2_coordinates",
        "weights of V on the G2 torus",
        "relations restrict to 0 in G2 torus coordinates",
        tg2.passed(),
    ));

    // (d) d3' is nonzero, hence equal to d3.
    let cycle = load_map(cat, "cycle_G2", &none)?;
    let w7 = cycle.apply_text("c7")?;
    let b3 = so4.additive_basis(3)?;
    let b3_is_d3 = b3.len() == 1 && b3[0].kind == BasisKind::Torsion && b3[0].monomial.display(so4.vars()) == "d3";
    let c7_formula = formal.parse(&formula.images["c7"])?;
    let mut zero = BTreeMap::new();
    zero.insert("d3p".to_string(), formal.zero());
    let c7_if_zero = formal.normal_form(&c7_formula.substitute(&zero)?);
    rep.push(
        Check::new(
            "g2.d3prime",
            format!("{ANCHOR}: d3' = d3"),
            "d3' = 0 would force c7 -> 0, but cycle(c7) = w7^2 != 0; CH^3 BSO4 = F2<d3>, so d3' = d3",
            !w7.is_zero() && c7_if_zero.is_zero() && b3_is_d3,
        )
        .validity(Validity::ModTorsion)
        .witness(format!("cycle(c7) = {w7}"))
        .witness(format!("c7 with d3' = 0: {c7_if_zero}")),
    );

    // (e) completeness on random members and non-members.
    let tor = direct.clone();
    let detectors: [&dyn Detector; 2] = [&tor, &cycle];
    let (members_ok, nonmembers_ok, notes) = completeness_sweep(cfg.seed, &g2, max, &detectors)?;
    rep.push(
        Check::new(
            "g2.completeness.members",
            format!("{ANCHOR}: the relations generate"),
            format!("{COMPLETENESS_SAMPLES} random ideal elements up to degree {max} get valid certificates"),
            members_ok,
        )
        .witnesses(notes.iter().filter(|n| n.starts_with("member")).cloned()),
    );
    rep.push(
        Check::new(
            "g2.completeness.nonmembers",
            format!("{ANCHOR}: the relations generate"),
            format!("{COMPLETENESS_SAMPLES} random non-members, nonzero under the detectors, are refused"),
            nonmembers_ok,
        )
        .witnesses(notes.iter().filter(|n| n.starts_with("non-member")).cloned()),
    );

    // (f) joint injectivity of the detectors on the additive basis.
    let mut fails = Vec::new();
    let mut total = 0;
    for d in 0..=max {
        let basis = g2.additive_basis(d)?;
        total += basis.len();
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for b in &basis {
            let p = Polynomial::monomial(g2.ring(), g2.vars().clone(), b.monomial.clone(), Coeff::from_integer(1.into()))?;
            match b.kind {
                BasisKind::Free => free.push(direct.apply(&p)?),
                BasisKind::Torsion => torsion.push(cycle.apply(&p)?),
            }
        }
        let irreducible = g2.irreducible_monomials(d).len();
        let rf = rank_of(&free, CoefficientRing::Rationals);
        let rt = rank_of(&torsion, CoefficientRing::PrimeField(2));
        if rf != free.len() || rt != torsion.len() || irreducible != basis.len() {
            fails.push(format!(
                "degree {d}: free {}/{rf}, torsion {}/{rt}, irreducible {irreducible}",
                free.len(),
                torsion.len()
            ));
        }
    }
    rep.push(
        Check::new(
            "g2.basis.injective",
            format!("{ANCHOR}: additive basis"),
            format!("{total} basis monomials through degree {max} have independent images under torus (Q) + cycle (F2)"),
            fails.is_empty(),
        )
        .witnesses(fails),
    );
    Ok(rep)
}

/// Runs the completeness check on seeded random members and non-members.
fn completeness_sweep(
    seed: u64,
    g2: &std::sync::Arc<GradedRingPresentation>,
    max: i64,
    detectors: &[&dyn Detector],
) -> Result<(bool, bool, Vec<String>), SuiteError> {
    let mut notes = Vec::new();
    if max < 4 {
        return Ok((true, true, vec!["member: degree bound below 4, nothing to sample".into()]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g1 = g2.parse("c2^2 - 4*c4")?;
    let gc = g2.parse("c2*c7")?;
    let gt = g2.parse("2*c7")?;
    let degrees: Vec<i64> = (4..=max).filter(|&d| !g2.additive_basis(d).map(|b| b.is_empty()).unwrap_or(true)).collect();
    let member = |rng: &mut ChaCha8Rng, d: i64| {
        let a = random_poly(rng, g2, d - 4);
        let b = random_poly(rng, g2, d - 9);
        let e = random_poly(rng, g2, d - 7);
        &(&(&a * &g1) + &(&b * &gc)) + &(&e * &gt)
    };
    let mut members_ok = true;
    for k in 0..COMPLETENESS_SAMPLES {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let p = member(&mut rng, d);
        match completeness_check_g2(&p, max, detectors) {
            Ok(cert) if cert.expand()? == p => {}
            Ok(_) => {
                members_ok = false;
                notes.push(format!("member {k}: certificate does not expand to {p}"));
            }
            Err(e) => {
                members_ok = false;
                notes.push(format!("member {k}: {p} refused: {e}"));
            }
        }
    }
    let mut nonmembers_ok = true;
    for k in 0..COMPLETENESS_SAMPLES {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let basis = g2.additive_basis(d)?;
        let mut extra = g2.zero();
        while extra.is_zero() {
            for b in &basis {
                if !rng.gen_bool(0.5) {
                    continue;
                }
                let c: i64 = match b.kind {
                    BasisKind::Torsion => 1,
                    BasisKind::Free => *[-3, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).expect("index"),
                };
                extra = &extra
                    + &Polynomial::monomial(g2.ring(), g2.vars().clone(), b.monomial.clone(), Coeff::from_integer(c.into()))?;
            }
        }
        let p = &member(&mut rng, d) + &extra;
        let detected = detectors.iter().any(|det| det.detect(&p).map(|i| !i.is_zero()).unwrap_or(false));
        if !detected {
            nonmembers_ok = false;
            notes.push(format!("non-member {k}: {extra} is invisible to both detectors"));
        }
        if completeness_check_g2(&p, max, detectors).is_ok() {
            nonmembers_ok = false;
            notes.push(format!("non-member {k}: {p} was certified"));
        }
    }
    Ok((members_ok, nonmembers_ok, notes))
}
