//! Acceptance criteria, one printed PASS/FAIL line each
//! (`cargo test --test acceptance`). Runs without the libtest harness so
//! the lines are always shown, sequentially so the timings are not shared.

use std::process::Command;
use std::time::{Duration, Instant};

use chowring::catalog::Catalog;
use chowring::maps::constants::{a_identity, derive_constants};
use chowring::maps::pushforward::{load_calculus, zeta_constants};
use chowring::maps::UnverifiedMap;
use chowring::polyring::rational;
use chowring::presentations::Params;
use chowring::verifier::{run_suite, SuiteConfig, Validity, VerificationReport};

struct Outcome {
    id: usize,
    title: &'static str,
    ok: bool,
    elapsed: Duration,
    budget: Duration,
    note: String,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.ok && self.elapsed <= self.budget
    }

    fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} ({} ms, budget {} ms){}",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_millis(),
            self.budget.as_millis(),
            if self.note.is_empty() { String::new() } else { format!(": {}", self.note) }
        )
    }
}

fn delta(d1: i64, d2: i64) -> Params {
    let mut p = Params::new();
    p.insert("delta1".into(), rational(d1, 1));
    p.insert("delta2".into(), rational(d2, 1));
    p
}

const DELTAS: [(i64, i64); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn suite(name: &str, max_degree: Option<i64>) -> (VerificationReport, Duration) {
    let cfg = SuiteConfig { max_degree, ..Default::default() };
    let r = run_suite(name, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
    let d = Duration::from_millis(r.wall_time_ms);
    (r, d)
}

/// All checks whose id starts with `prefix` pass; returns their count.
fn passing(r: &VerificationReport, prefix: &str) -> (bool, usize) {
    let cs: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with(prefix)).collect();
    (!cs.is_empty() && cs.iter().all(|c| c.passed()), cs.len())
}

fn failures(r: &VerificationReport) -> String {
    r.checks.iter().filter(|c| !c.passed()).map(|c| c.id.clone()).collect::<Vec<_>>().join(" ")
}

fn strip_timing(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"wall_time_ms\"")).collect::<Vec<_>>().join("\n")
}

fn run_binary() -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["verify", "all", "--format", "json"])
        .output()
        .expect("verify binary runs");
    assert!(out.status.success(), "verify all exited with {:?}", out.status);
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn main() {
    let cat = Catalog::builtin();
    let ms = Duration::from_millis;
    let mut out = Vec::new();

    // 1. G2 relations restrict to zero in the SO4 presentation.
    let (v, t) = timed(|| UnverifiedMap::from_catalog(&cat, "res_G2_SO4", &Params::new()).unwrap().check());
    let ids: Vec<&str> = v.relations.iter().map(|r| r.relation.as_str()).collect();
    out.push(Outcome {
        id: 1,
        title: "G2 relations vanish under restriction to SO4",
        ok: v.passed() && ids == ["c2^2=4c4", "c2c7=0", "2c7=0"],
        elapsed: t,
        budget: ms(1000),
        note: format!("{} relations", ids.len()),
    });

    let (g2, g2_time) = suite("g2", None);

    // 2. Completeness on random members and non-members.
    let (m, _) = passing(&g2, "g2.completeness.members");
    let (n, _) = passing(&g2, "g2.completeness.nonmembers");
    out.push(Outcome {
        id: 2,
        title: "G2 completeness certificates (200 members, 200 non-members, degree <= 20)",
        ok: m && n && g2.max_degree == Some(20),
        elapsed: g2_time,
        budget: ms(10_000),
        note: failures(&g2),
    });

    // 3. Joint injectivity of the detectors.
    let (b, _) = passing(&g2, "g2.basis.injective");
    out.push(Outcome {
        id: 3,
        title: "G2 additive basis independent under torus (Q) + cycle map (F2) through degree 20",
        ok: b,
        elapsed: g2_time,
        budget: ms(5000),
        note: String::new(),
    });

    // 4. Free Spin7 relations on the torus.
    let (ok4, t) = timed(|| {
        DELTAS.iter().all(|&(d1, d2)| {
            let v = UnverifiedMap::from_catalog(&cat, "res_Spin7_T", &delta(d1, d2)).unwrap().check();
            ["(6)", "(7)", "(8)", "(10)", "(11)", "(13)"]
                .iter()
                .all(|id| v.relations.iter().any(|r| r.relation == *id && r.verdict))
        })
    });
    out.push(Outcome {
        id: 4,
        title: "Spin7 relations (6) (7) (8) (10) (11) (13) hold in Q[x,y,z]",
        ok: ok4,
        elapsed: t,
        budget: ms(2000),
        note: String::new(),
    });

    // 5. Constants recomputed from weights.
    let (table, t) = timed(|| {
        derive_constants(cat.weight_system("Delta_spin7").unwrap(), cat.weight_system("V_spin7").unwrap()).unwrap()
    });
    let want = [
        ("coeff6", rational(8, 3)),
        ("coeff7", rational(6, 1)),
        ("coeff8_mu", rational(2, 3)),
        ("coeff8_lambda", rational(16, 1)),
        ("coeff10", rational(36, 1)),
        ("coeff11", rational(6, 1)),
        ("A", rational(8, 3)),
        ("B", rational(4, 3)),
        ("a", rational(3, 1)),
        ("b", rational(1, 1)),
    ];
    let ok5 = want.iter().all(|(n, v)| table.get(n) == Some(v)) && a_identity(&table) == Some("16x^12 = 6A x^12");
    out.push(Outcome {
        id: 5,
        title: "derived constants A = 8/3 (16x^12 = 6A x^12), B = 4/3, a = 3, b = 1",
        ok: ok5,
        elapsed: t,
        budget: ms(2000),
        note: String::new(),
    });

    // 6. Torsion relations in the push-forward calculus, every delta.
    let (ok6, t) = timed(|| {
        let consts = zeta_constants(rational(3, 1), rational(1, 1));
        let pf = cat.pushforward().unwrap();
        DELTAS.iter().all(|&(d1, d2)| {
            let calc = load_calculus(&cat, &delta(d1, d2), &consts).unwrap();
            pf.relations.iter().all(|r| {
                let rel = calc.ambient().relation(&r.id).map(|x| x.poly.clone());
                let e = calc.evaluate_text(&r.form, rel.as_ref()).unwrap();
                e.value.is_zero() && e.link
            })
        })
    });
    let (spin7, spin7_time) = suite("spin7", None);
    let labelled = ["(1)", "(2)", "(3)", "(4)", "(5)", "(12)", "(14)"]
        .iter()
        .all(|id| spin7.check(&format!("spin7.pushforward.{id}")).is_some_and(|c| c.passed()))
        && ["(9)", "(12)"].iter().all(|id| {
            spin7
                .check(&format!("spin7.delta.{id}"))
                .is_some_and(|c| c.passed() && c.validity == Validity::BothDeltaValues)
        });
    out.push(Outcome {
        id: 6,
        title: "Spin7 torsion relations (1)-(5), (9), (12), (14) in the push-forward calculus, all deltas",
        ok: ok6 && labelled,
        elapsed: t,
        budget: ms(1000),
        note: String::new(),
    });

    // 7. Independence of the free part through degree 16.
    let (ok7, _) = passing(&spin7, "spin7.independence.free");
    out.push(Outcome {
        id: 7,
        title: "torus images of {1, c2', c4', c6'} x Z(2)[c4, c6, c8'] independent through degree 16",
        ok: ok7 && spin7.max_degree == Some(16),
        elapsed: spin7_time,
        budget: ms(10_000),
        note: failures(&spin7),
    });

    // 8. Half-spin characters.
    let (ch, t) = suite("characters", None);
    let (ok8, _) = passing(&ch, "characters.");
    let m23 = ["sum.m2", "sum.m3", "difference.m2", "difference.m3"]
        .iter()
        .all(|s| ch.check(&format!("characters.{s}")).is_some_and(|c| c.passed()));
    out.push(Outcome {
        id: 8,
        title: "lambda_m^+- formula equals exterior powers (m = 2, 3); chi(V) = 1 + tau_1 + tau_2^+",
        ok: ok8 && m23 && ch.check("characters.catalog.V_so4").is_some(),
        elapsed: t,
        budget: ms(1000),
        note: String::new(),
    });

    // 9. Dickson invariants.
    let (dk, t) = suite("dickson", None);
    out.push(Outcome {
        id: 9,
        title: "Dickson D4, D6, D7: invariant under GL3(F2), generate through degree 14, squares independent",
        ok: dk.passed() && dk.max_degree == Some(14) && dk.checks.len() >= 5,
        elapsed: t,
        budget: ms(10_000),
        note: failures(&dk),
    });

    // 10. Weyl invariants.
    let (wy, t) = suite("weyl", None);
    out.push(Outcome {
        id: 10,
        title: "W(G2) invariants through degree 12 are Q[c2, c6]",
        ok: wy.passed() && wy.max_degree == Some(12),
        elapsed: t,
        budget: ms(5000),
        note: failures(&wy),
    });

    // 11. Negative controls.
    let (neg, t) = suite("negative", None);
    out.push(Outcome {
        id: 11,
        title: "mutated relations and constants are detected",
        ok: neg.passed() && neg.checks.len() >= 5,
        elapsed: t,
        budget: ms(5000),
        note: format!("{} controls {}", neg.checks.len(), failures(&neg)).trim_end().to_string(),
    });

    // 12. Determinism of the CLI report.
    let (same, t) = timed(|| strip_timing(&run_binary()) == strip_timing(&run_binary()));
    out.push(Outcome {
        id: 12,
        title: "`verify all --format json` is byte-identical across runs modulo timing",
        ok: same,
        elapsed: t,
        budget: ms(120_000),
        note: String::new(),
    });

    for o in &out {
        println!("{}", o.line());
    }
    let failed = out.iter().filter(|o| !o.passed()).count();
    println!("acceptance: {}/{} criteria passed", out.len() - failed, out.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
