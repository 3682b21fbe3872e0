use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::g2::rank_of;
use super::{Check, SuiteConfig, SuiteError, VerificationReport, DEFAULT_DICKSON_DEGREE, DEFAULT_WEYL_DEGREE};
use crate::chern::chern_class;
use crate::invariants::{
    degree_doubling_check, dickson_invariants, hilbert_coefficients, invariant_space, molien_coefficients,
    verify_invariant_ring, GroupAction, InvariantRingReport,
};
use crate::polyring::{format_coeff, CoefficientRing, Coeff, Polynomial};

const DICKSON_ANCHOR: &str = "mod 2 invariants of GL3(F2)";
const WEYL_ANCHOR: &str = "Weyl group invariants of G2";

fn dims_line(r: &InvariantRingReport) -> String {
    r.degrees
        .iter()
        .map(|d| format!("{}:{}/{}", d.degree, d.invariant_dimension, d.generated_dimension))
        .collect::<Vec<_>>()
        .join(" ")
}

fn mismatches(r: &InvariantRingReport, hilbert: &[u64]) -> Vec<String> {
    r.degrees
        .iter()
        .filter(|d| d.invariant_dimension as u64 != hilbert[d.degree as usize])
        .map(|d| format!("degree {}: invariants {}, series {}", d.degree, d.invariant_dimension, hilbert[d.degree as usize]))
        .collect()
}

/// Dickson invariants of GL3(F2): the mod 2 cohomology targets of the
/// torsion-free Spin7 classes.
pub(super) fn verify_dickson(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let max = cfg.bound(DEFAULT_DICKSON_DEGREE);
    let mut rep = VerificationReport::new("dickson", Some(max));
    let g = GroupAction::from_catalog(&cfg.catalog, "GL3_F2")?;
    rep.push(Check::new(
        "dickson.group",
        DICKSON_ANCHOR,
        format!("the generators close to a group of order {}", g.order()),
        g.order() == 168 && g.is_closed(),
    ));

    let ds = dickson_invariants(3, 2)?;
    let degrees: Vec<i64> = ds.iter().map(|d| d.degree).collect();
    rep.push(Check::new(
        "dickson.degrees",
        DICKSON_ANCHOR,
        format!("Dickson invariants have degrees {degrees:?} = 8 - 2^i"),
        degrees == [4, 6, 7],
    ));
    let polys: Vec<Polynomial> = ds.iter().map(|d| d.poly.embed(g.vars())).collect::<Result<_, _>>()?;
    let mut swept = true;
    for p in &polys {
        swept &= g.is_invariant_full_sweep(p)?;
    }
    rep.push(Check::new(
        "dickson.invariance",
        DICKSON_ANCHOR,
        format!("D4, D6, D7 are fixed by all {} group elements", g.elements().len()),
        swept,
    ));

    // Random elements of F2[D4, D6, D7].
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let one = Polynomial::one(g.field(), g.vars().clone());
    let mut random_ok = true;
    for _ in 0..20 {
        let mut acc = Polynomial::zero(g.field(), g.vars().clone());
        for _ in 0..3 {
            let mut t = one.clone();
            for d in &polys {
                t = &t * &d.pow(rng.gen_range(0..2));
            }
            acc = &acc + &t;
        }
        random_ok &= g.is_invariant_full_sweep(&acc)?;
    }
    rep.push(Check::new(
        "dickson.random_elements",
        DICKSON_ANCHOR,
        "20 random polynomials in D4, D6, D7 are invariant",
        random_ok,
    ));

    let ring = verify_invariant_ring(&g, &polys, max)?;
    let hilbert = hilbert_coefficients(&degrees, max);
    let bad = mismatches(&ring, &hilbert);
    rep.push(
        Check::new(
            "dickson.invariant_ring",
            DICKSON_ANCHOR,
            format!("F2[u1,u2,u3]^GL3 = F2[D4, D6, D7] through degree {max}"),
            ring.passed() && bad.is_empty(),
        )
        .witness(format!("degree:invariants/generated {}", dims_line(&ring)))
        .witnesses(bad),
    );

    let doubling = degree_doubling_check(&g, &polys, &["d4", "d6", "d7"], 2 * max)?;
    let bad: Vec<String> = doubling
        .rows
        .iter()
        .filter(|r| r.expected != r.span as u64)
        .map(|r| format!("degree {}: span {} expected {}", r.degree, r.span, r.expected))
        .collect();
    rep.push(
        Check::new(
            "dickson.doubling",
            "degree doubling under the cycle map",
            format!(
                "squares of degrees {:?} are invariant and algebraically independent through degree {}",
                doubling.square_degrees,
                2 * max
            ),
            doubling.passed(),
        )
        .witnesses(bad),
    );
    Ok(rep)
}

/// Invariants of the Weyl group of G2 on the rational torus cohomology.
pub(super) fn verify_weyl(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    let max = cfg.bound(DEFAULT_WEYL_DEGREE);
    let cat = &cfg.catalog;
    let mut rep = VerificationReport::new("weyl", Some(max));
    let g = GroupAction::from_catalog(cat, "W_G2")?;
    rep.push(Check::new(
        "weyl.group",
        WEYL_ANCHOR,
        format!("the generators close to a group of order {}", g.order()),
        g.order() == 12 && g.is_closed(),
    ));
    let ws = cat.weight_system("V_g2")?;
    let q = CoefficientRing::Rationals;
    let c = |i: usize| chern_class(ws, i).change_ring(q).and_then(|p| p.embed(g.vars()));
    let (c2, c4, c6) = (c(2)?, c(4)?, c(6)?);

    let ring = verify_invariant_ring(&g, &[c2.clone(), c6.clone()], max)?;
    let hilbert = hilbert_coefficients(&[2, 6], max);
    let bad = mismatches(&ring, &hilbert);
    rep.push(
        Check::new(
            "weyl.invariant_ring",
            WEYL_ANCHOR,
            format!("Q[t]^W = Q[c2, c6] through degree {max}"),
            ring.passed() && bad.is_empty(),
        )
        .witness(format!("degree:invariants/generated {}", dims_line(&ring)))
        .witnesses(bad),
    );

    let molien = molien_coefficients(&g, max)?;
    let bad: Vec<String> = molien
        .iter()
        .zip(&hilbert)
        .enumerate()
        .filter(|(_, (m, h))| **m != Coeff::from_integer((**h).into()))
        .map(|(d, (m, h))| format!("degree {d}: Molien {} vs {h}", format_coeff(m)))
        .collect();
    rep.push(
        Check::new(
            "weyl.molien",
            WEYL_ANCHOR,
            "the Molien series equals 1/((1-s^2)(1-s^6))",
            bad.is_empty(),
        )
        .witnesses(bad),
    );

    let v6 = invariant_space(&g, 6)?;
    rep.push(Check::new(
        "weyl.degree6",
        WEYL_ANCHOR,
        "the degree 6 invariants are spanned by c2^3 and c6",
        v6.dimension() == 2 && rank_of(&[c2.pow(3), c6.clone()], q) == 2,
    ));
    rep.push(Check::new(
        "weyl.c4",
        WEYL_ANCHOR,
        "c4 = c2^2/4 on the torus, so c4 is not a new generator",
        (&c4.scale_int(4) - &c2.pow(2)).is_zero(),
    ));
    Ok(rep)
}
