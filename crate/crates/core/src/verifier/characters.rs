use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Check, SuiteConfig, SuiteError, VerificationReport};
use crate::chern::{
    character_of, character_vars, exterior_power_character, lambda_pm_character, standard_so_weights, tau, tau_pm,
    CoordinateSpec, CoordinateSystem,
};
use crate::polyring::{format_coeff, CoefficientRing, Coeff, Monomial, Polynomial};

const ANCHOR: &str = "half-spin characters";

fn standard_coords(m: usize) -> Result<Arc<CoordinateSystem>, SuiteError> {
    let spec = CoordinateSpec {
        name: format!("so{}", 2 * m),
        variables: character_vars(m).names().to_vec(),
        eliminate: BTreeMap::new(),
    };
    Ok(Arc::new(CoordinateSystem::from_spec(spec)?))
}

/// `prod_j (a_j - a_j^{-1})`, expanded directly.
fn weyl_denominator(m: usize) -> Polynomial {
    let vars = character_vars(m);
    let mut out = Polynomial::one(CoefficientRing::Integers, vars.clone()).into_laurent();
    for j in 0..m {
        let mono = |e: i32, c: i64| {
            let mut exps = vec![0; m];
            exps[j] = e;
            Polynomial::monomial(CoefficientRing::Integers, vars.clone(), Monomial::new(exps, &vars), Coeff::from_integer(c.into()))
                .expect("integer coefficient")
        };
        out = &out * &(&mono(1, 1) + &mono(-1, -1));
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn same(a: &Polynomial, b: &Polynomial) -> bool {
    (a - b).is_zero()
}

pub(super) fn verify_characters(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("characters", Some(4));
    for m in 1..=4usize {
        let std = standard_so_weights(standard_coords(m)?)?;
        let ext = exterior_power_character(&std, m)?;
        let (plus, minus) = (lambda_pm_character(true, m), lambda_pm_character(false, m));
        rep.push(Check::new(
            format!("characters.sum.m{m}"),
            ANCHOR,
            format!("chi(lambda_{m}^+) + chi(lambda_{m}^-) = chi(Lambda^{m} of the standard SO{} representation)", 2 * m),
            same(&(&plus + &minus), &ext),
        ));
        rep.push(Check::new(
            format!("characters.difference.m{m}"),
            ANCHOR,
            format!("chi(lambda_{m}^+) - chi(lambda_{m}^-) = prod_j (a_j - 1/a_j)"),
            same(&(&plus - &minus), &weyl_denominator(m)),
        ));
        let half = Coeff::from_integer((binomial(2 * m as u64, m as u64) / 2).into());
        let dims = (plus.evaluate_at_ones(), minus.evaluate_at_ones());
        rep.push(Check::new(
            format!("characters.dimension.m{m}"),
            ANCHOR,
            format!("dim lambda_{m}^+- = C({}, {m})/2 = {}", 2 * m, format_coeff(&half)),
            dims.0 == half && dims.1 == half,
        ));
    }

    let cat = &cfg.catalog;
    for (name, positive) in [("lambda2plus_so4", true), ("lambda2minus_so4", false)] {
        let chi = character_of(cat.weight_system(name)?);
        rep.push(
            Check::new(
                format!("characters.catalog.{name}"),
                ANCHOR,
                format!("the weights of {name} have character chi(lambda_2^{})", if positive { "+" } else { "-" }),
                same(&chi, &lambda_pm_character(positive, 2)),
            )
            .witness(format!("character: {chi}")),
        );
    }
    let one = Polynomial::one(CoefficientRing::Integers, character_vars(2)).into_laurent();
    let v = character_of(cat.weight_system("V_so4")?);
    let expected = &(&one + &tau(1, 2)?) + &tau_pm(true, 2);
    rep.push(
        Check::new(
            "characters.catalog.V_so4",
            "restriction of the G2 representation to SO4",
            "chi(V) = 1 + tau_1 + tau_2^+, i.e. V = W + lambda_2^+",
            same(&v, &expected),
        )
        .witness(format!("character: {v}")),
    );
    let w = character_of(cat.weight_system("W_so4")?);
    rep.push(Check::new(
        "characters.catalog.W_so4",
        "restriction of the G2 representation to SO4",
        "chi(W) = tau_1",
        same(&w, &tau(1, 2)?),
    ));
    Ok(rep)
}
