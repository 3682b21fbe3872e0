use std::collections::BTreeMap;

use super::g2::relation_checks;
use super::{Check, SuiteConfig, SuiteError, Validity, VerificationReport};
use crate::chern::chern_class;
use crate::maps::UnverifiedMap;
use crate::presentations::Params;

const ANCHOR: &str = "Field's theorem for SO4";

pub(super) fn verify_so4(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let cat = &cfg.catalog;
    let none = Params::new();
    let mut rep = VerificationReport::new("so4", None);
    let so4 = cat.presentation("SO4", &none)?;
    rep.push(Check::new("so4.confluence", ANCHOR, "the rewrite system of the presentation is confluent", so4.is_confluent()));

    let res = UnverifiedMap::from_catalog(cat, "res_SO4_T", &none)?;
    let v = res.check();
    rep.checks.extend(relation_checks("so4.torus", &v, |_| Validity::Exact));

    let t = res.target().clone();
    let w = cat.weight_system("W_so4")?;
    let y2 = &res.images()[so4.vars().require("y2")?];
    let c4 = chern_class(w, 4).embed(t.vars())?.change_ring(t.ring())?;
    let square = &(y2 * y2) - &c4.scale_int(4);
    rep.push(
        Check::new(
            "so4.y2_square",
            format!("{ANCHOR}: y2 restricts to +-2 t1 t2"),
            "y2^2 - 4 d4 restricts to (2 t1 t2)^2 - 4 t1^2 t2^2 = 0",
            square.is_zero() && !y2.is_zero(),
        )
        .witness(format!("y2 -> {y2}")),
    );
    let d3 = &res.images()[so4.vars().require("d3")?];
    rep.push(
        Check::new(
            "so4.d3_torus",
            format!("{ANCHOR}: odd classes die on the torus"),
            "W is self-dual, so d3 restricts to 0",
            w.is_self_dual() && d3.is_zero(),
        )
        .witness(format!("d3 -> {d3}")),
    );

    // Flipping the sign of y2 preserves the ideal of relations.
    let mut flip = BTreeMap::new();
    flip.insert("y2".to_string(), so4.parse("-y2")?);
    let mut bad = Vec::new();
    for r in so4.relations() {
        let f = so4.normal_form(&r.poly.substitute(&flip)?);
        if !f.is_zero() {
            bad.push(format!("{} -> {f}", r.id));
        }
    }
    rep.push(
        Check::new(
            "so4.y2_sign",
            format!("{ANCHOR}: choice of sign of y2"),
            "y2 -> -y2 maps every relation into the ideal (the sign is a presentation automorphism)",
            bad.is_empty(),
        )
        .witnesses(bad),
    );
    Ok(rep)
}
