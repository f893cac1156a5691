//! `desargues`: involutions induced on projective lines by pencils of
//! quadrics, over exact fields.
//!
//! One JSON document per invocation on standard output; diagnostics and the
//! optional `--verbose` summary go to standard error. Exit codes: 0 success,
//! 1 verification failure (the report is still printed), 2 input/usage error.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use desargues_core::harness::{
    classical_desargues_scenario, fuzz_campaign, verify_butterfly, verify_main_theorem,
    verify_prop1, verify_prop3,
};
use desargues_core::pencil::restrict;
use desargues_core::{
    AffineConfig, Diagnosis, FieldDescriptor, Involution, LineInPV, Pencil, Scalar,
    ScenarioReport,
};
use serde_json::{json, Map, Value};

use io::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "desargues", version, about = "Exact Desargues involutions of pencils of quadrics")]
struct Cli {
    /// Human-readable summary on standard error
    #[arg(long, global = true)]
    verbose: bool,
    /// Add a unix timestamp to the report (off by default so output is
    /// byte-identical across runs)
    #[arg(long, global = true)]
    timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Coefficient field: Q or gfp:P (odd prime P)
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args)]
struct PencilLineArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Pencil file: {"R": {"dim": n, "m": [[..]]}, "S": {..}}
    #[arg(long)]
    pencil: PathBuf,
    /// Line file: {"e1": [..], "e2": [..]}
    #[arg(long)]
    line: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a binary symmetric form {"a": .., "b": .., "c": ..}
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        form: PathBuf,
        /// Report isotropic points in a quadratic extension when needed
        #[arg(long)]
        allow_extension: bool,
    },
    /// Restrict both pencil generators to a line
    Restrict(PencilLineArgs),
    /// The involution a pencil induces on a line, with its fixed points
    Involution {
        #[command(flatten)]
        args: PencilLineArgs,
        #[arg(long)]
        allow_extension: bool,
    },
    /// Fixed points of an involution {"a": .., "b": .., "c": ..}
    FixedPoints {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        involution: PathBuf,
        #[arg(long)]
        allow_extension: bool,
    },
    /// Regular / LineInQuadric / CommonZero verdict for a pencil and a line
    Diagnose(PencilLineArgs),
    /// Run a named verification scenario
    Verify {
        /// prop1 | main | prop3 | butterfly | desargues-classic
        #[arg(long)]
        scenario: String,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        pencil: Option<PathBuf>,
        #[arg(long)]
        line: Option<PathBuf>,
        /// Scenario configuration file (butterfly, desargues-classic)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Pencil members to sample per scenario
        #[arg(long, default_value_t = 20)]
        members: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded fuzz campaign of the regularity theorem over a finite field
    Fuzz {
        #[command(flatten)]
        field: FieldArg,
        /// Ambient projective dimension
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, mut doc: Value, pass: bool) -> ExitCode {
    if cli.timestamp {
        if let Value::Object(m) = &mut doc {
            let now = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            m.insert("timestamp".into(), json!(now));
        }
    }
    println!("{doc}");
    if cli.verbose {
        eprintln!("result: {}", if pass { "pass" } else { "fail" });
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_pencil_line(args: &PencilLineArgs) -> CliResult<(FieldDescriptor, Pencil, LineInPV)> {
    let field = io::parse_field_flag(&args.field.field)?;
    let pencil = io::pencil_from_value(&io::load_json(&args.pencil)?, &field, "")?;
    let line = io::line_from_value(&io::load_json(&args.line)?, &field, "")?;
    if pencil.dim() != line.dim() {
        return Err(CliError::Invariant(format!(
            "pencil is {}x{} but line vectors have {} coordinates",
            pencil.dim(),
            pencil.dim(),
            line.dim()
        )));
    }
    Ok((field, pencil, line))
}

/// Scale so the first nonzero coefficient is 1; a stable representative of
/// the projective class.
fn normalize_involution(inv: &Involution) -> Involution {
    let lead = [&inv.a, &inv.b, &inv.c]
        .into_iter()
        .find(|s| !s.is_zero())
        .cloned()
        .expect("involution is nonzero");
    Involution::new(
        inv.a.checked_div(&lead).unwrap(),
        inv.b.checked_div(&lead).unwrap(),
        inv.c.checked_div(&lead).unwrap(),
    )
    .expect("scaling preserves invertibility")
}

fn map_string(inv: &Involution) -> String {
    let (a, b, c) = (&inv.a, &inv.b, &inv.c);
    if b.is_zero() && c.is_zero() {
        return "x -> -x".into();
    }
    if a.is_zero() && !c.is_zero() {
        let k = b.checked_div(c).unwrap();
        if k == k.field().from_i64(-1) {
            return "x -> -1/x".into();
        }
        if k.is_one() {
            return "x -> 1/x".into();
        }
        return format!("x -> ({k})/x");
    }
    format!("x -> ({a}*x + {b})/({c}*x - {a})")
}

fn diagnosis_to_value(d: &Diagnosis, base: &FieldDescriptor) -> Value {
    match d {
        Diagnosis::Regular => json!({"verdict": "Regular"}),
        Diagnosis::LineInQuadric { a, b } => json!({
            "verdict": "LineInQuadric",
            "a": io::scalar_to_value(a),
            "b": io::scalar_to_value(b),
        }),
        Diagnosis::CommonZero { point, field } => {
            let mut doc = Map::new();
            doc.insert("verdict".into(), json!("CommonZero"));
            doc.insert("point".into(), io::point_to_value(point));
            if field != base {
                doc.insert("field".into(), io::field_to_value(field));
            }
            Value::Object(doc)
        }
    }
}

fn fixed_points_value(inv: &Involution, allow_extension: bool) -> CliResult<Value> {
    let (pts, ext) = inv
        .fixed_points(allow_extension)
        .map_err(|e| CliError::Invariant(format!("fixed points: {e}")))?;
    Ok(json!({
        "points": pts.iter().map(io::point_to_value).collect::<Vec<_>>(),
        "field": io::field_to_value(&ext),
    }))
}

/// A config file may pin its own field descriptor; otherwise the --field
/// flag applies.
fn config_field(cfg: &Value, flag: &FieldDescriptor) -> CliResult<FieldDescriptor> {
    match cfg.get("field") {
        Some(v) => io::field_from_value(v, "field"),
        None => Ok(flag.clone()),
    }
}

fn scenario_config(
    config: &Option<PathBuf>,
    scenario: &str,
) -> CliResult<Value> {
    let Some(path) = config else {
        return Err(CliError::Schema(format!(
            "--scenario {scenario} requires --config"
        )));
    };
    io::load_json(path)
}

fn butterfly_config(v: &Value, field: &FieldDescriptor) -> CliResult<AffineConfig> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Schema("dim must be an integer".into()))? as usize;
    let base_point = io::vector_from_value(
        v.get("base_point")
            .ok_or_else(|| CliError::Schema("base_point missing".into()))?,
        field,
        "base_point",
    )?;
    let direction = io::vector_from_value(
        v.get("direction")
            .ok_or_else(|| CliError::Schema("direction missing".into()))?,
        field,
        "direction",
    )?;
    let marked = io::vector_from_value(
        v.get("marked")
            .ok_or_else(|| CliError::Schema("marked missing".into()))?,
        field,
        "marked",
    )?;
    let pencil = io::pencil_from_value(
        v.get("pencil")
            .ok_or_else(|| CliError::Schema("pencil missing".into()))?,
        field,
        "pencil",
    )?;
    AffineConfig::new(dim, base_point, direction, marked, pencil)
        .map_err(|e| CliError::Invariant(format!("config: {e}")))
}

fn desargues_points(v: &Value, field: &FieldDescriptor) -> CliResult<[[Scalar; 3]; 4]> {
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Schema("points must be an array".into()))?;
    if pts.len() != 4 {
        return Err(CliError::Schema(format!(
            "points has {} entries, need 4",
            pts.len()
        )));
    }
    let mut out: Vec<[Scalar; 3]> = Vec::with_capacity(4);
    for (i, p) in pts.iter().enumerate() {
        let coords = io::vector_from_value(p, field, &format!("points[{i}]"))?;
        let coords: [Scalar; 3] = coords.try_into().map_err(|_| {
            CliError::Schema(format!("points[{i}] needs 3 homogeneous coordinates"))
        })?;
        out.push(coords);
    }
    Ok(out.try_into().expect("length checked"))
}

fn merged_report(name: &str, field: &FieldDescriptor, parts: Vec<(String, ScenarioReport)>) -> Value {
    let mut checks: Vec<Value> = Vec::new();
    let mut pass = true;
    for (prefix, rep) in &parts {
        pass &= rep.pass();
        for c in &rep.checks {
            checks.push(json!({
                "name": format!("{prefix}{}", c.name),
                "pass": c.pass,
                "witness": c.witness,
            }));
        }
    }
    let mut doc = Map::new();
    doc.insert("scenario".into(), json!(name));
    doc.insert("field".into(), json!(field.name()));
    doc.insert(
        "instance".into(),
        json!(parts
            .iter()
            .map(|(_, r)| r.instance.clone())
            .collect::<Vec<_>>()
            .join("; ")),
    );
    doc.insert("seed".into(), Value::Null);
    doc.insert("checks".into(), Value::Array(checks));
    doc.insert("pass".into(), json!(pass));
    Value::Object(doc)
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Classify {
            field,
            form,
            allow_extension,
        } => {
            let field = io::parse_field_flag(&field.field)?;
            let f = io::form2_from_value(&io::load_json(form)?, &field, "")?;
            let mut doc = Map::new();
            doc.insert("classification".into(), json!(format!("{:?}", f.classify())));
            doc.insert("det".into(), io::scalar_to_value(&f.det()));
            doc.insert(
                "discriminant".into(),
                io::scalar_to_value(&f.discriminant()),
            );
            if !f.is_zero() {
                let (pts, ext) = f
                    .isotropic_points(*allow_extension)
                    .map_err(|e| CliError::Invariant(format!("isotropic points: {e}")))?;
                doc.insert(
                    "isotropic_points".into(),
                    json!({
                        "points": pts.iter().map(io::point_to_value).collect::<Vec<_>>(),
                        "field": io::field_to_value(&ext),
                    }),
                );
            }
            Ok(emit(cli, Value::Object(doc), true))
        }
        Command::Restrict(args) => {
            let (field, pencil, line) = load_pencil_line(args)?;
            let r = restrict(pencil.r(), &line)
                .map_err(|e| CliError::Invariant(format!("restrict R: {e}")))?;
            let s = restrict(pencil.s(), &line)
                .map_err(|e| CliError::Invariant(format!("restrict S: {e}")))?;
            let (_, gram_det) = pencil
                .restricted_gram(&line)
                .map_err(|e| CliError::Invariant(format!("gram: {e}")))?;
            let _ = field;
            let doc = json!({
                "R": io::form2_to_value(&r),
                "S": io::form2_to_value(&s),
                "gram_det": io::scalar_to_value(&gram_det),
            });
            Ok(emit(cli, doc, true))
        }
        Command::Involution {
            args,
            allow_extension,
        } => {
            let (base, pencil, line) = load_pencil_line(args)?;
            let diag = pencil
                .diagnose(&line)
                .map_err(|e| CliError::Invariant(format!("diagnose: {e}")))?;
            if diag != Diagnosis::Regular {
                let doc = json!({
                    "error": "NotRegular",
                    "diagnosis": diagnosis_to_value(&diag, &base),
                });
                return Ok(emit(cli, doc, false));
            }
            let inv = pencil
                .induced_involution(&line)
                .map_err(|e| CliError::Invariant(format!("involution: {e}")))?;
            let inv = normalize_involution(&inv);
            let doc = json!({
                "involution": io::involution_to_value(&inv),
                "map": map_string(&inv),
                "fixed_points": fixed_points_value(&inv, *allow_extension)?,
            });
            Ok(emit(cli, doc, true))
        }
        Command::FixedPoints {
            field,
            involution,
            allow_extension,
        } => {
            let field = io::parse_field_flag(&field.field)?;
            let inv = io::involution_from_value(&io::load_json(involution)?, &field, "")?;
            let fp = fixed_points_value(&inv, *allow_extension)?;
            Ok(emit(cli, json!({"fixed_points": fp}), true))
        }
        Command::Diagnose(args) => {
            let (base, pencil, line) = load_pencil_line(args)?;
            let diag = pencil
                .diagnose(&line)
                .map_err(|e| CliError::Invariant(format!("diagnose: {e}")))?;
            Ok(emit(cli, diagnosis_to_value(&diag, &base), true))
        }
        Command::Verify {
            scenario,
            field,
            pencil,
            line,
            config,
            members,
            trials,
            seed,
        } => {
            let base = io::parse_field_flag(&field.field)?;
            let need_pencil_line = |p: &Option<PathBuf>,
                                    l: &Option<PathBuf>|
             -> CliResult<(Pencil, LineInPV)> {
                let (Some(p), Some(l)) = (p, l) else {
                    return Err(CliError::Schema(format!(
                        "--scenario {scenario} requires --pencil and --line"
                    )));
                };
                let pencil = io::pencil_from_value(&io::load_json(p)?, &base, "")?;
                let line = io::line_from_value(&io::load_json(l)?, &base, "")?;
                Ok((pencil, line))
            };
            let report = match scenario.as_str() {
                "prop1" => verify_prop1(&base, *trials, *seed),
                "main" => {
                    let (pencil, line) = need_pencil_line(pencil, line)?;
                    verify_main_theorem(&pencil, &line, *members)
                }
                "prop3" => {
                    let (pencil, line) = need_pencil_line(pencil, line)?;
                    if pencil
                        .diagnose(&line)
                        .map_err(|e| CliError::Invariant(format!("diagnose: {e}")))?
                        != Diagnosis::Regular
                    {
                        return Err(CliError::Invariant(
                            "prop3 needs a regular instance; run diagnose".into(),
                        ));
                    }
                    verify_prop3(&pencil, &line, *members)
                }
                "butterfly" => {
                    let cfg = scenario_config(config, scenario)?;
                    let base = config_field(&cfg, &base)?;
                    let cfg = butterfly_config(&cfg, &base)?;
                    verify_butterfly(&cfg, *members)
                        .map_err(|e| CliError::Invariant(format!("butterfly: {e}")))?
                }
                "desargues-classic" => {
                    let cfg = scenario_config(config, scenario)?;
                    let base = config_field(&cfg, &base)?;
                    let points = desargues_points(&cfg, &base)?;
                    let (pencil, suggested) = classical_desargues_scenario(&points)
                        .map_err(|e| CliError::Invariant(format!("points: {e}")))?;
                    let lines: Vec<LineInPV> = match cfg.get("line") {
                        Some(lv) => vec![io::line_from_value(lv, &base, "line")?],
                        None => suggested,
                    };
                    let parts: Vec<(String, ScenarioReport)> = lines
                        .iter()
                        .enumerate()
                        .map(|(i, l)| {
                            (
                                format!("line{i}-"),
                                verify_main_theorem(&pencil, l, *members),
                            )
                        })
                        .collect();
                    let doc = merged_report("desargues-classic", &base, parts);
                    let pass = doc["pass"].as_bool().unwrap_or(false);
                    if cli.verbose {
                        eprintln!("scenario desargues-classic over {}", base.name());
                    }
                    return Ok(emit(cli, doc, pass));
                }
                other => {
                    return Err(CliError::Schema(format!(
                        "--scenario {other}: expected prop1|main|prop3|butterfly|desargues-classic"
                    )))
                }
            };
            if cli.verbose {
                eprintln!(
                    "scenario {} over {}: {} checks",
                    report.scenario,
                    report.field,
                    report.checks.len()
                );
            }
            let pass = report.pass();
            Ok(emit(cli, io::report_to_value(&report), pass))
        }
        Command::Fuzz {
            field,
            dim,
            trials,
            seed,
        } => {
            let base = io::parse_field_flag(&field.field)?;
            if base == FieldDescriptor::rationals() {
                return Err(CliError::Schema(
                    "--field gfp:P required: fuzzing samples a finite field".into(),
                ));
            }
            let report = fuzz_campaign(&base, *dim, *trials, *seed);
            if cli.verbose {
                eprintln!(
                    "fuzz over {} in P^{dim}: {trials} trials, seed {seed}",
                    base.name()
                );
            }
            let pass = report.pass();
            Ok(emit(cli, io::report_to_value(&report), pass))
        }
    }
}
