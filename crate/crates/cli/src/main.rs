use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use demazure::criteria::{central_decompose, check_reflexive_criteria, fan_criteria_report, DEFAULT_BOX};
use demazure::io::{
    analyze_subject, emit_report, emit_roots, emit_text, parse_batch, parse_matrix_document, roots_of_subject,
    subject_of, AnalysisReport, InputDocument, Subject,
};
use demazure::polytope::{is_reflexive, lattice_isomorphism};
use demazure::roots::RaySet;
use demazure::verify::{run_verify, VerifyConfig};
use demazure::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "demazure", version, about = "Demazure roots of toric fans and reflexive polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text", env = "DEMAZURE_FORMAT")]
    format: Format,
    /// Worker threads for `verify` and `batch`.
    #[arg(long, global = true, default_value_t = 1, env = "DEMAZURE_JOBS")]
    jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0, env = "DEMAZURE_SEED")]
    seed: u64,
    /// Coordinate bound of the polygon enumeration box.
    #[arg(long = "box", global = true, default_value_t = DEFAULT_BOX, env = "DEMAZURE_BOX")]
    bound: i64,
    /// Extra inputs for `verify`: a directory of `.poly` files or a batch file.
    #[arg(long, global = true, env = "DEMAZURE_CORPUS")]
    corpus: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis report for each input.
    Analyze { inputs: Vec<PathBuf> },
    /// List the roots with their kind and facet.
    Roots { input: PathBuf },
    /// Reductivity criteria.
    Criteria { input: PathBuf },
    /// Split a centrally symmetric reflexive polytope.
    Decompose { input: PathBuf },
    /// Search for a unimodular map between two polytopes.
    Iso { a: PathBuf, b: PathBuf },
    /// Run the regression suite over the bundled corpus and all reflexive polygons.
    Verify,
    /// Reports for every document in a concatenated file.
    Batch { input: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parse() || matches!(e, Error::RaggedMatrix { .. }) {
            2
        } else if e.is_violation() {
            4
        } else {
            3
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 3,
        message: format!("{}: {e}", path.display()),
    })
}

fn label(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load(path: &Path) -> CliResult<InputDocument> {
    Ok(parse_matrix_document(&read(path)?, &label(path))?)
}

fn load_subject(path: &Path) -> CliResult<(InputDocument, Subject)> {
    let doc = load(path)?;
    let s = subject_of(&doc)?;
    Ok((doc, s))
}

fn polytope(path: &Path) -> CliResult<demazure::LatticePolytope> {
    match load_subject(path)?.1 {
        Subject::Polytope(p) => Ok(p),
        Subject::Fan(_) => Err(Error::PreconditionFailed(format!("{} holds rays, not a polytope", path.display())).into()),
    }
}

fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => emit_report(report) + "\n",
        Format::Text => emit_text(report),
    }
}

/// Prints reports and maps collected violations to exit code 4.
fn finish(reports: &[AnalysisReport], format: Format) -> CliResult<()> {
    for r in reports {
        print!("{}", render(r, format));
    }
    let n: usize = reports.iter().map(|r| r.violations.len()).sum();
    if n > 0 {
        return Err(Failure {
            code: 4,
            message: format!("{n} theorem violations"),
        });
    }
    Ok(())
}

fn extra_corpus(path: &Path) -> CliResult<Vec<(String, Subject)>> {
    let mut out = Vec::new();
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| Failure {
                code: 3,
                message: format!("{}: {e}", path.display()),
            })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "poly"))
            .collect();
        files.sort();
        for f in files {
            let (doc, s) = load_subject(&f)?;
            out.push((doc.label, s));
        }
    } else {
        for doc in parse_batch(&read(path)?, &label(path))? {
            let s = subject_of(&doc)?;
            out.push((doc.label, s));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Analyze { inputs } => {
            let mut reports = Vec::new();
            for path in inputs {
                let (doc, s) = load_subject(path)?;
                reports.push(analyze_subject(&doc.label, &s)?);
            }
            finish(&reports, cli.format)
        }
        Command::Roots { input } => {
            let (_, s) = load_subject(input)?;
            let rs = roots_of_subject(&s)?;
            match cli.format {
                Format::Text => print!("{}", emit_roots(&rs)),
                Format::Json => {
                    let roots: Vec<serde_json::Value> = rs
                        .all()
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "root": r.m,
                                "eta": rs.eta(r),
                                "kind": format!("{:?}", r.kind),
                            })
                        })
                        .collect();
                    println!("{}", json(&serde_json::Value::Array(roots)));
                }
            }
            Ok(())
        }
        Command::Criteria { input } => {
            let (_, s) = load_subject(input)?;
            let report = match &s {
                Subject::Polytope(p) if is_reflexive(p)? => check_reflexive_criteria(p)?,
                Subject::Polytope(p) => {
                    let rays = RaySet::of_polytope(p)?;
                    fan_criteria_report(&rays, &roots_of_subject(&s)?)?
                }
                Subject::Fan(rays) => fan_criteria_report(rays, &roots_of_subject(&s)?)?,
            };
            match cli.format {
                Format::Json => println!("{}", json(&serde_json::to_value(&report).expect("serializable"))),
                Format::Text => {
                    println!("reductive: {}", report.reductive);
                    println!("aut dim: {}", report.aut_dim);
                    println!("fan: {:?}", report.fan);
                    if let Some(eq) = report.reflexive_equivalent {
                        println!("equivalent (a)-(g): {:?}", eq.values());
                    }
                    if let Some(suff) = report.sufficient {
                        println!("sufficient i-vii: {:?}", suff.values());
                    }
                }
            }
            Ok(())
        }
        Command::Decompose { input } => {
            let p = polytope(input)?;
            let split = central_decompose(&p)?;
            match cli.format {
                Format::Json => println!("{}", json(&serde_json::to_value(&split).expect("serializable"))),
                Format::Text => {
                    println!("k: {}", split.k);
                    println!("G dim: {}", split.g_dim);
                    for v in &split.g_vertices {
                        println!("G vertex: {v}");
                    }
                }
            }
            Ok(())
        }
        Command::Iso { a, b } => {
            let (p, q) = (polytope(a)?, polytope(b)?);
            match lattice_isomorphism(&p, &q)? {
                Some(map) => match cli.format {
                    Format::Json => println!("{}", json(&serde_json::json!({"map": map.matrix}))),
                    Format::Text => {
                        println!("map found");
                        for i in 0..p.dim() {
                            println!("{}", map.matrix.row(i));
                        }
                    }
                },
                None => match cli.format {
                    Format::Json => println!("{}", json(&serde_json::json!({"map": null}))),
                    Format::Text => println!("none"),
                },
            }
            Ok(())
        }
        Command::Verify => {
            let extra = match &cli.corpus {
                Some(path) => extra_corpus(path)?,
                None => Vec::new(),
            };
            let config = VerifyConfig {
                jobs: cli.jobs,
                seed: cli.seed,
                bound: cli.bound,
                extra,
            };
            let report = run_verify(&config)?;
            match cli.format {
                Format::Json => println!("{}", json(&report.to_json())),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.violation_count() > 0 {
                return Err(Failure {
                    code: 4,
                    message: report.summary(),
                });
            }
            Ok(())
        }
        Command::Batch { input } => {
            let docs = parse_batch(&read(input)?, &label(input))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.jobs.max(1))
                .build()
                .map_err(|e| Failure {
                    code: 3,
                    message: e.to_string(),
                })?;
            let reports: Vec<Result<AnalysisReport, Error>> = pool.install(|| {
                docs.par_iter()
                    .map(|d| subject_of(d).and_then(|s| analyze_subject(&d.label, &s)))
                    .collect()
            });
            let mut ok = Vec::new();
            let mut first_error = None;
            for (doc, r) in docs.iter().zip(reports) {
                match r {
                    Ok(r) => ok.push(r),
                    Err(e) => {
                        eprintln!("{}: {e}", doc.label);
                        first_error.get_or_insert(e);
                    }
                }
            }
            finish(&ok, cli.format)?;
            match first_error {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
