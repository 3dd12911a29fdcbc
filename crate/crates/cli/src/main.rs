//! Batch front door: check proofs, normalize proofs, evaluate formulae
//! in finite models, audit models against the semantic laws, apply the
//! double-negation translation, and emit the shipped fixtures.
//!
//! Exit status: 0 on success, 1 on any module error (parse failure,
//! invalid model, rejected derivation), 2 on usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use lkmt_core::calculus::{parse_derivation, print_derivation};
use lkmt_core::corpus;
use lkmt_core::kripke::gen::{random_sentence, FormulaGenConfig};
use lkmt_core::kripke::{audit, parse_model, print_model, Evaluator, FiniteModel};
use lkmt_core::nbe::normalize;
use lkmt_core::syntax::{parse_formula, print_formula, Ident};

/// Seed for the audit command's formula sample, fixed for reproducible
/// reports.
const AUDIT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "lkmt",
    version,
    about = "Sequent calculus checker, Kripke model evaluator, and semantic cut elimination"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation file; print its conclusion and normality
    Check { proof: PathBuf },
    /// Normalize a derivation file and write the result
    Normalize { proof: PathBuf, out: PathBuf },
    /// Evaluate a formula at a world of a finite model
    #[command(name = "model-eval")]
    ModelEval {
        model: PathBuf,
        formula: String,
        world: String,
        #[arg(value_enum)]
        relation: Relation,
    },
    /// Audit a model against the semantic laws on sampled formulae
    Audit {
        model: PathBuf,
        #[arg(value_parser = clap::value_parser!(u64).range(1..=6))]
        depth_bound: u64,
    },
    /// Apply the double-negation translation to a formula
    #[command(name = "dn-translate")]
    DnTranslate { formula: String },
    /// Write the shipped fixtures (model and proofs) into a directory
    Fixtures { out_dir: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Relation {
    Forces,
    Refutes,
    Srefutes,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.json) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_model(path: &Path, jsonout: bool) -> anyhow::Result<(FiniteModel, Vec<(Ident, Ident)>)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading model file {}", path.display()))?;
    let (model, added) = parse_model(&text).map_err(|e| anyhow!("{}: {}", path.display(), e))?;
    if !jsonout && !added.is_empty() {
        let pairs: Vec<String> = added.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        eprintln!("leq closure added: {}", pairs.join(", "));
    }
    Ok((model, added))
}

fn run(cmd: Command, jsonout: bool) -> anyhow::Result<()> {
    match cmd {
        Command::Check { proof } => {
            let text = fs::read_to_string(&proof)
                .with_context(|| format!("reading derivation file {}", proof.display()))?;
            let d = parse_derivation(&text).map_err(|e| anyhow!("{}: {}", proof.display(), e))?;
            let conclusion = d.check().map_err(|e| anyhow!("{}: {}", proof.display(), e))?;
            let normal = d.is_normal();
            if jsonout {
                println!(
                    "{}",
                    json!({
                        "conclusion": conclusion.to_string(),
                        "normal": normal,
                        "cuts": d.cut_count(),
                        "axiom_guarded_cuts": d.axiom_guarded_cut_count(),
                    })
                );
            } else {
                println!("conclusion: {conclusion}");
                println!("status: {}", if normal { "normal" } else { "non-normal" });
                println!(
                    "cuts: {} ({} axiom-guarded)",
                    d.cut_count(),
                    d.axiom_guarded_cut_count()
                );
            }
            Ok(())
        }
        Command::Normalize { proof, out } => {
            let text = fs::read_to_string(&proof)
                .with_context(|| format!("reading derivation file {}", proof.display()))?;
            let d = parse_derivation(&text).map_err(|e| anyhow!("{}: {}", proof.display(), e))?;
            let before = d.cut_count();
            let n = normalize(&d).map_err(|e| anyhow!("{}: {}", proof.display(), e))?;
            let after = n.cut_count();
            fs::write(&out, print_derivation(&n))
                .with_context(|| format!("writing {}", out.display()))?;
            if jsonout {
                println!(
                    "{}",
                    json!({
                        "out": out.display().to_string(),
                        "conclusion": n.conclusion.to_string(),
                        "cuts_before": before,
                        "cuts_after": after,
                        "normal": n.is_normal(),
                    })
                );
            } else {
                println!("wrote {}", out.display());
                println!("conclusion: {}", n.conclusion);
                println!("cuts: {before} -> {after} (axiom-guarded)");
            }
            Ok(())
        }
        Command::ModelEval {
            model,
            formula,
            world,
            relation,
        } => {
            let (m, added) = load_model(&model, jsonout)?;
            let consts: BTreeSet<Ident> = m.all_elements();
            let f = parse_formula(&formula, &consts)
                .map_err(|e| anyhow!("in formula '{}': {}", formula, e))?;
            let ev = Evaluator::new(&m);
            let value = match relation {
                Relation::Forces => ev.forces(&world, &f),
                Relation::Refutes => ev.refutes(&world, &f),
                Relation::Srefutes => ev.srefutes(&world, &f),
            }
            .map_err(|e| anyhow!("{e}"))?;
            if jsonout {
                println!(
                    "{}",
                    json!({
                        "result": value,
                        "closure_added": added
                            .iter()
                            .map(|(a, b)| json!([a, b]))
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("{value}");
            }
            Ok(())
        }
        Command::Audit { model, depth_bound } => {
            let (m, added) = load_model(&model, jsonout)?;
            let elements: Vec<Ident> = m.all_elements().into_iter().collect();
            let cfg = FormulaGenConfig::ground(depth_bound as usize, elements);
            let mut rng = StdRng::seed_from_u64(AUDIT_SEED);
            let formulas: Vec<_> = (0..400).map(|_| random_sentence(&mut rng, &cfg)).collect();
            let report = audit(&m, &formulas);
            if jsonout {
                println!(
                    "{}",
                    json!({
                        "passed": report.passed(),
                        "closure_added": added
                            .iter()
                            .map(|(a, b)| json!([a, b]))
                            .collect::<Vec<_>>(),
                        "clauses": report
                            .clauses
                            .iter()
                            .map(|c| json!({
                                "name": c.name,
                                "checked": c.checked,
                                "passed": c.passed(),
                                "failures": c.failures,
                            }))
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                print!("{report}");
                println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
            }
            Ok(())
        }
        Command::DnTranslate { formula } => {
            let consts = BTreeSet::new();
            let f = parse_formula(&formula, &consts)
                .map_err(|e| anyhow!("in formula '{}': {}", formula, e))?;
            let out = print_formula(&f.dn_translate());
            if jsonout {
                println!("{}", json!({ "formula": out }));
            } else {
                println!("{out}");
            }
            Ok(())
        }
        Command::Fixtures { out_dir } => {
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            let files = write_fixtures(&out_dir)?;
            if jsonout {
                println!("{}", json!({ "written": files }));
            } else {
                for f in files {
                    println!("wrote {f}");
                }
            }
            Ok(())
        }
    }
}

fn write_fixtures(dir: &Path) -> anyhow::Result<Vec<String>> {
    let mut written = Vec::new();
    let mut emit = |name: &str, contents: String| -> anyhow::Result<()> {
        let path = dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
        Ok(())
    };
    emit("dp.model", print_model(&corpus::dp_model()))?;
    emit("peirce.lkp", print_derivation(&corpus::peirce_cut_free()))?;
    emit("peirce_cut.lkp", print_derivation(&corpus::peirce_with_cut()))?;
    emit("cut_contr.lkp", print_derivation(&corpus::contraction_cut()))?;
    for (name, d) in corpus::cut_corpus() {
        if name == "cut-modus-ponens" || name == "cut-dneg-elim" {
            emit(
                &format!("{}.lkp", name.replace('-', "_")),
                print_derivation(&d),
            )?;
        }
    }
    Ok(written)
}
