use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chowring::catalog::Catalog;
use chowring::polyring::{parse_polynomial, rational, CoefficientRing};
use chowring::presentations::Params;
use chowring::verifier::{cross_reference, run_all, run_suite, SuiteConfig, VerificationReport, SUITES};

#[derive(Parser)]
#[command(name = "verify", about = "Verify Chow ring presentations of BG2, BSO4 and BSpin7")]
struct Cli {
    /// Catalog override file (JSON), merged over the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite (g2, so4, spin7, dickson, weyl, characters) or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also run the mutated relations, which must all be detected.
        #[arg(long)]
        negative_controls: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Print the normal form of a polynomial in a presentation.
    NormalForm {
        presentation: String,
        polynomial: String,
        /// Parameter values such as `delta1=1`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    Ok((k.to_string(), v.parse().map_err(|e| format!("{v}: {e}"))?))
}

fn emit(reports: &[VerificationReport], format: Format) -> Result<(), String> {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
            if reports.len() > 1 {
                println!();
                print!("{}", cross_reference(reports));
            }
        }
        Format::Json => {
            if let [r] = reports {
                println!("{}", r.to_json());
            } else {
                println!("{}", serde_json::to_string_pretty(reports).map_err(|e| e.to_string())?);
            }
        }
    }
    if let Ok(dir) = std::env::var("CHOW_VERIFY_REPORT_DIR") {
        std::fs::create_dir_all(&dir).map_err(|e| format!("{dir}: {e}"))?;
        for r in reports {
            let path = PathBuf::from(&dir).join(format!("{}.json", r.suite));
            std::fs::write(&path, r.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    let catalog = Catalog::load(cli.catalog.as_deref()).map_err(|e| e.to_string())?;
    match cli.command {
        Command::Verify { suite, max_degree, format, negative_controls, seed } => {
            let cfg = SuiteConfig { catalog, max_degree, seed };
            let reports = if suite == "all" {
                run_all(&cfg, negative_controls).map_err(|e| e.to_string())?
            } else if SUITES.contains(&suite.as_str()) {
                let mut v = vec![run_suite(&suite, &cfg).map_err(|e| e.to_string())?];
                if negative_controls {
                    v.push(run_suite("negative", &cfg).map_err(|e| e.to_string())?);
                }
                v
            } else {
                return Err(format!("unknown suite `{suite}`; expected one of {} or all", SUITES.join(", ")));
            };
            emit(&reports, format)?;
            Ok(reports.iter().all(VerificationReport::passed))
        }
        Command::NormalForm { presentation, polynomial, params } => {
            let params: Params = params.into_iter().map(|(k, v)| (k, rational(v, 1))).collect();
            let pres = catalog.presentation(&presentation, &params).map_err(|e| e.to_string())?;
            let p = parse_polynomial(&polynomial, pres.ring(), pres.vars())
                .or_else(|_| parse_polynomial(&polynomial, CoefficientRing::Rationals, pres.vars()))
                .map_err(|e| e.to_string())?;
            let p = p.change_ring(pres.ring()).map_err(|e| e.to_string())?;
            println!("{}", pres.normal_form(&p));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
