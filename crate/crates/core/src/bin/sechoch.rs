//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification identity failed, 2 invalid input,
//! 3 resource cap, 4 a bracket operand is not a cocycle.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sechoch::cohomology::{self, CohomologyError, Limits, DEFAULT_MAX_COORDINATES};
use sechoch::io::{self, IoError};
use sechoch::operators::{self, OperatorError};
use sechoch::structures::{validate_triple, StructureError, TripleContext};
use sechoch::verify::{self, Suite, VerifyConfig, VerifyError};
use sechoch::{fixtures, Cochain, Field};

#[derive(Parser)]
#[command(name = "sechoch", version, about = "Secondary Hochschild cochains and their operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dim C, Z, B, H per degree as TSV, followed by a JSON report.
    Cohomology {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Bimodule file `{dim, left_action, right_action}` replacing M.
        #[arg(long)]
        coefficients: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_COORDINATES)]
        max_coordinates: usize,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Degree of f; requires --m.
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Degree of g; requires --n.
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_COORDINATES)]
        max_coordinates: usize,
    },
    /// Bracket of two cocycles via ∘, via Δ, or both with a class comparison.
    Bracket {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Also write bracket_circle.json / bracket_bv.json here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print a bundled triple file (T1..T5).
    Fixture {
        name: String,
        /// Work over GF(p) instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print a seeded random cocycle file.
    Cocycle {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Circle,
    Bv,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Structure(StructureError::Axioms(list)) => {
                let mut msg = String::from("triple fails validation:");
                for v in list {
                    msg.push_str(&format!("\n  {v}"));
                }
                Failure::new(2, msg)
            }
            other => Failure::new(2, other.to_string()),
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        let code = match e {
            CohomologyError::ResourceCap { .. } => 3,
            CohomologyError::NotCocycle { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        Failure::new(2, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Cohomology(c) => c.into(),
            other => Failure::new(2, other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn load_triple(path: &Path, coefficients: Option<&Path>) -> Result<TripleContext, Failure> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(IoError::from)?;
    let mut raw = io::candidate_from_json(&v)?;
    if let Some(c) = coefficients {
        let mv: Value = serde_json::from_str(&read(c)?).map_err(IoError::from)?;
        raw.module = io::module_from_json(raw.field, raw.a.dim(), &mv)?;
    }
    Ok(validate_triple(raw).map_err(IoError::from)?)
}

fn load_cochain(ctx: &TripleContext, path: &Path) -> Result<Cochain, Failure> {
    Ok(io::parse_cochain(ctx, &read(path)?)?)
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::new(2, format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| Failure::new(2, format!("{}: {e}", p.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Cohomology {
            triple,
            max_degree,
            coefficients,
            max_coordinates,
        } => {
            let ctx = load_triple(&triple, coefficients.as_deref())?;
            let report = cohomology::cohomology_dims(&ctx, max_degree, &Limits { max_coordinates })?;
            print!("{}", report.to_tsv());
            println!("{}", io::canonical(&serde_json::to_value(&report).expect("report serializes")));
            Ok(0)
        }
        Command::Verify {
            triple,
            suite,
            n,
            m,
            trials,
            seed,
            max_coordinates,
        } => {
            let ctx = load_triple(&triple, None)?;
            let cfg = VerifyConfig {
                suite,
                degrees: n.zip(m),
                trials,
                seed,
                limits: Limits { max_coordinates },
                ..Default::default()
            };
            let report = verify::run(&ctx, &cfg)?;
            print!("{}", report.to_text());
            println!("{}", io::canonical(&report.to_json()));
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Bracket {
            triple,
            f,
            g,
            method,
            out_dir,
        } => {
            let ctx = load_triple(&triple, None)?;
            if method != Method::Circle {
                ctx.require_form().map_err(OperatorError::from)?;
            }
            ctx.require_regular().map_err(OperatorError::from)?;
            let f = load_cochain(&ctx, &f)?;
            let g = load_cochain(&ctx, &g)?;
            for (which, x) in [("f", &f), ("g", &g)] {
                let dx = operators::differential(&ctx, x)?;
                if !dx.is_zero() {
                    return Err(Failure::new(
                        4,
                        format!("{which} is not a cocycle: ‖δ{which}‖₀ = {}", dx.nnz()),
                    ));
                }
            }
            let mut out = serde_json::Map::new();
            if method != Method::Bv {
                let z1 = operators::bracket(&ctx, &f, &g)?;
                if let Some(d) = &out_dir {
                    write_file(d, "bracket_circle.json", &io::cochain_to_canonical(&z1))?;
                }
                out.insert("circle".into(), io::cochain_to_json(&z1));
            }
            if method != Method::Circle {
                let z2 = operators::bv_bracket(&ctx, &f, &g)?;
                if let Some(d) = &out_dir {
                    write_file(d, "bracket_bv.json", &io::cochain_to_canonical(&z2))?;
                }
                out.insert("bv".into(), io::cochain_to_json(&z2));
            }
            if method == Method::Both {
                let cmp = cohomology::bracket_class_compare(&ctx, &f, &g)?;
                println!("classes_equal\t{}", cmp.classes_equal());
                out.insert("classes_equal".into(), json!(cmp.classes_equal()));
                out.insert(
                    "witness".into(),
                    cmp.difference.witness().map_or(Value::Null, io::cochain_to_json),
                );
            }
            println!("{}", io::canonical(&Value::Object(out)));
            Ok(0)
        }
        Command::Fixture { name, prime } => {
            let field = match prime {
                Some(p) => Field::prime(p).map_err(|e| Failure::new(2, e.to_string()))?,
                None => Field::Rational,
            };
            let ctx = fixtures::by_name(&name, field)
                .ok_or_else(|| Failure::new(2, format!("unknown fixture `{name}`; expected T1..T5")))?;
            println!("{}", io::triple_to_canonical(&ctx));
            Ok(0)
        }
        Command::Cocycle { triple, degree, seed } => {
            let ctx = load_triple(&triple, None)?;
            let z = cohomology::sample_cocycle(&ctx, degree, seed)?;
            println!("{}", io::cochain_to_canonical(&z));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
