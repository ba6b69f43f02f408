use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use nilalg::algcore::{brute_iso, is_isomorphism, Algebra, Identity, LinearMap, DEFAULT_BUDGET};
use nilalg::catalog::{self, Report};
use nilalg::cohomology::{self, Flavor, SkewForm};
use nilalg::degeneration::WitnessFile;
use nilalg::{Error, FieldSpec, Matrix};

#[derive(Parser)]
#[command(name = "nilalg", version, about = "Exact computations with small nilpotent binary Lie algebras")]
struct Cli {
    /// Seed for the randomized guards.
    #[arg(long, global = true, default_value_t = nilalg::DEFAULT_SEED)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Field for catalog references: Q, Qi or Fp.
    #[arg(long, global = true, default_value = "Q")]
    field: FieldSpec,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie, Malcev, binary Lie and CD flags with the first counterexample.
    Identities { alg: String },
    /// Isomorphism invariants.
    Invariants { alg: String },
    /// Second cohomology: dimensions and an H² basis.
    Cohomology {
        alg: String,
        #[arg(long, default_value = "bl")]
        flavor: Flavor,
    },
    /// Central extension by cocycles.
    Extend {
        alg: String,
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The radical of a cocycle.
    ThetaPerp {
        alg: String,
        #[arg(long)]
        cocycle: String,
    },
    /// Membership of a cocycle subspace in T_s and U_s.
    SubspaceTests {
        alg: String,
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
    },
    /// Action of an automorphism on a cocycle.
    Act {
        alg: String,
        /// JSON array of rows; column i is the image of e_i.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        cocycle: String,
    },
    /// Check a parametrized-basis witness file.
    Degeneration { witness: PathBuf },
    /// Isomorphism test by a given map or exhaustive search over a prime field.
    Iso {
        a: String,
        b: String,
        #[arg(long, conflicts_with = "brute")]
        map: Option<PathBuf>,
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Number of isomorphism classes of 6-dimensional nilpotent binary Lie algebras.
    Count,
    /// Re-derive the recorded results.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        section: Section,
    },
    /// Write the catalog directory.
    Export {
        #[arg(long, default_value = "catalog")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Section {
    Tables,
    Thm2,
    Thm1,
    Sec3,
    Degen,
    All,
}

/// A completed command: its output and whether every check held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

fn load(cli: &Cli, s: &str) -> Result<Algebra, Error> {
    catalog::resolve(s, cli.field, None, None)
}

fn forms(a: &Algebra, exprs: &[String]) -> Result<Vec<SkewForm>, Error> {
    exprs.iter().map(|e| SkewForm::parse(a.field(), a.dim(), e)).collect()
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input {
        location: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// A square matrix from a JSON array of rows of numbers or scalar strings.
fn read_matrix(path: &Path, field: FieldSpec) -> Result<LinearMap, Error> {
    let bad = |loc: String, reason: &str| Error::Input {
        location: format!("{}: {loc}", path.display()),
        reason: reason.to_string(),
    };
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Error::Input {
        location: format!("{}: line {} column {}", path.display(), e.line(), e.column()),
        reason: e.to_string(),
    })?;
    let rows = v.as_array().ok_or_else(|| bad("top level".into(), "expected an array of rows"))?;
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| bad(format!("[{i}]"), "expected an array"))?;
        let mut row = Vec::new();
        for (j, x) in r.iter().enumerate() {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(bad(format!("[{i}][{j}]"), "expected a number or string")),
            };
            row.push(field.parse_scalar(&s).map_err(|e| bad(format!("[{i}][{j}]"), &e.to_string()))?);
        }
        out.push(row);
    }
    let m = Matrix::from_rows(field, out)?;
    if !m.is_square() {
        return Err(bad("top level".into(), "matrix is not square"));
    }
    Ok(LinearMap::new(m))
}

fn identities(cli: &Cli, alg: &str) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let mut text = Vec::new();
    let mut js = serde_json::Map::new();
    for id in Identity::ALL {
        let c = a.check_identity(id, cli.seed);
        text.push(match &c {
            nilalg::IdentityCheck::Holds => format!("{id}: holds"),
            nilalg::IdentityCheck::Counterexample(x) => format!("{id}: counterexample {x}"),
        });
        js.insert(id.name().to_string(), serde_json::to_value(&c).expect("serializable"));
    }
    Ok(Outcome::ok(text.join("\n"), Value::Object(js)))
}

fn invariants(cli: &Cli, alg: &str) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let f = a.fingerprint(cli.seed);
    let flags = [
        ("Lie", f.identity_flags.lie),
        ("Malcev", f.identity_flags.malcev),
        ("BinaryLie", f.identity_flags.binary_lie),
        ("CD", f.identity_flags.cd),
    ];
    let dims: Vec<String> = f.power_dims.iter().map(|d| d.to_string()).collect();
    let text = format!(
        "dim {}\npower dims {}\nann dim {}\nder dim {}\nH2_BL dim {}\nH2_M dim {}\n{}",
        f.dim,
        dims.join(","),
        f.ann_dim,
        f.der_dim,
        f.h2bl_dim,
        f.h2m_dim,
        flags.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Outcome::ok(text, serde_json::to_value(&f).expect("serializable")))
}

fn cohomology_cmd(cli: &Cli, alg: &str, flavor: Flavor) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let s = cohomology::h2(&a, flavor, cli.seed);
    let basis: Vec<String> = s.h2_basis().iter().map(|b| b.to_string()).collect();
    let tag = match flavor {
        Flavor::BinaryLie => "BL",
        Flavor::Malcev => "M",
    };
    let text = format!(
        "Z2_{tag} dim {}\nB2 dim {}\nH2_{tag} dim {}\nbasis: {}",
        s.z2.dim(),
        s.b2.dim(),
        s.h2_dim(),
        basis.iter().map(|b| format!("[{b}]")).collect::<Vec<_>>().join(", ")
    );
    let js = json!({
        "flavor": flavor.name(),
        "z2_dim": s.z2.dim(),
        "b2_dim": s.b2.dim(),
        "h2_dim": s.h2_dim(),
        "h2_basis": basis,
        "guard_passed": s.guard_passed,
    });
    Ok(Outcome {
        text,
        json: js,
        ok: s.guard_passed,
    })
}

fn extend_cmd(cli: &Cli, alg: &str, exprs: &[String], out: Option<&Path>) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let thetas = forms(&a, exprs)?;
    let e = match cohomology::extend(&a, &thetas) {
        Ok(e) => e,
        Err(Error::NotACocycle(t)) => {
            return Ok(Outcome {
                text: format!("refused: {t} is not a binary Lie cocycle"),
                json: json!({ "refused": t }),
                ok: false,
            })
        }
        Err(e) => return Err(e),
    };
    let body = e.to_json();
    match out {
        Some(p) => {
            fs::write(p, &body).map_err(|err| Error::Input {
                location: p.display().to_string(),
                reason: err.to_string(),
            })?;
            Ok(Outcome::ok(
                format!("wrote {} ({e})", p.display()),
                json!({ "path": p.display().to_string(), "algebra": serde_json::to_value(e.to_file()).expect("serializable") }),
            ))
        }
        None => Ok(Outcome::ok(
            body.trim_end().to_string(),
            serde_json::to_value(e.to_file()).expect("serializable"),
        )),
    }
}

fn theta_perp(cli: &Cli, alg: &str, expr: &str) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let t = SkewForm::parse(a.field(), a.dim(), expr)?;
    let p = cohomology::theta_perp(&a, &t)?;
    Ok(Outcome::ok(
        format!("dim {}: {p}", p.dim()),
        json!({ "dim": p.dim(), "basis": serde_json::to_value(p.basis()).expect("serializable") }),
    ))
}

fn subspace_tests(cli: &Cli, alg: &str, exprs: &[String]) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let t = cohomology::subspace_tests(&a, &forms(&a, exprs)?)?;
    let text = format!(
        "independent: {}\njoint perp meets Ann trivially: {}\nin T_s: {}\nin U_s: {}\nextension has annihilator component: {}",
        t.independent, t.joint_perp_meets_ann_trivially, t.in_ts, t.in_us, t.has_ann_component
    );
    Ok(Outcome::ok(text, serde_json::to_value(&t).expect("serializable")))
}

fn act_cmd(cli: &Cli, alg: &str, matrix: &Path, expr: &str) -> Result<Outcome, Error> {
    let a = load(cli, alg)?;
    let phi = read_matrix(matrix, a.field())?;
    let t = SkewForm::parse(a.field(), a.dim(), expr)?;
    let r = cohomology::act(&a, &phi, &t)?;
    let s = cohomology::h2(&a, Flavor::BinaryLie, cli.seed);
    let class = if s.is_cocycle(&r) {
        Some(s.representative(&r)?.to_string())
    } else {
        None
    };
    let mut text = format!("phi.theta = {r}");
    if let Some(c) = &class {
        text.push_str(&format!("\nclass representative: {c}"));
    }
    Ok(Outcome::ok(text, json!({ "result": r.to_string(), "class_representative": class })))
}

fn degeneration_cmd(path: &Path) -> Result<Outcome, Error> {
    let w = WitnessFile::from_json(&read(path)?).map_err(|e| match e {
        Error::Input { location, reason } => Error::Input {
            location: format!("{}: {location}", path.display()),
            reason,
        },
        other => other,
    })?;
    let outcomes = catalog::run_witness(&w, path.parent())?;
    let ok = outcomes.iter().all(|o| o.check.verified);
    let mut text = Vec::new();
    for o in &outcomes {
        let at = o.epsilon.as_ref().map(|e| format!(" (eps = {e})")).unwrap_or_default();
        if o.check.verified {
            text.push(format!("verified{at}"));
        } else {
            text.push(format!("not verified{at}: {} failing constants", o.check.failures.len()));
            text.extend(o.check.failures.iter().map(|f| format!("  {f}")));
        }
    }
    Ok(Outcome {
        text: text.join("\n"),
        json: json!({ "verified": ok, "samples": outcomes }),
        ok,
    })
}

fn rows_json(m: &LinearMap) -> Value {
    serde_json::to_value(m.matrix().to_rows()).expect("serializable")
}

fn iso_cmd(cli: &Cli, a: &str, b: &str, map: Option<&Path>, brute: bool, budget: u64) -> Result<Outcome, Error> {
    let (a, b) = (load(cli, a)?, load(cli, b)?);
    if let Some(p) = map {
        let m = read_matrix(p, a.field())?;
        let ok = is_isomorphism(&m, &a, &b)?;
        let text = if ok { "isomorphism" } else { "not an isomorphism" };
        return Ok(Outcome {
            text: text.into(),
            json: json!({ "isomorphism": ok }),
            ok,
        });
    }
    if !brute {
        return Err(Error::Unsupported("pass --map <file> or --brute".into()));
    }
    let s = brute_iso(&a, &b, budget)?;
    let ok = s.iso.is_some();
    let text = match &s.iso {
        Some(m) => format!("isomorphic ({} candidates)\n{}", s.candidates, m.matrix()),
        None => format!("not isomorphic: {} ({} candidates)", s.certificate, s.candidates),
    };
    Ok(Outcome {
        text,
        json: json!({
            "isomorphic": ok,
            "candidates": s.candidates,
            "certificate": s.certificate,
            "map": s.iso.as_ref().map(rows_json),
        }),
        ok,
    })
}

fn count_cmd(cli: &Cli) -> Result<Outcome, Error> {
    let c = catalog::count_classes(cli.field)?;
    Ok(Outcome::ok(
        format!("{}\nnon-Malcev: {}\nMalcev remainder: {}", c.total, c.nonmalcev, c.malcev_remainder),
        json!({
            "field": cli.field,
            "total": c.total,
            "nonmalcev": c.nonmalcev,
            "malcev_remainder": c.malcev_remainder,
        }),
    ))
}

fn reports(section: Section, field: FieldSpec, seed: u64) -> Vec<Report> {
    let wanted = |s: Section| section == Section::All || section == s;
    let mut jobs: Vec<Box<dyn Fn() -> Report + Send + Sync>> = Vec::new();
    if wanted(Section::Tables) {
        jobs.push(Box::new(move || catalog::verify_tables(field, seed)));
    }
    if wanted(Section::Thm2) {
        for f in [FieldSpec::Rational, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            jobs.push(Box::new(move || catalog::verify_b61_isomorphism(f, seed)));
        }
    }
    if wanted(Section::Thm1) {
        jobs.push(Box::new(move || catalog::verify_counts(seed)));
    }
    if wanted(Section::Sec3) {
        jobs.push(Box::new(move || catalog::verify_cd(field, seed)));
    }
    if wanted(Section::Degen) {
        jobs.push(Box::new(move || catalog::verify_degenerations(seed)));
    }
    jobs.par_iter().map(|j| j()).collect()
}

fn verify_cmd(cli: &Cli, section: Section) -> Result<Outcome, Error> {
    let rs = reports(section, cli.field, cli.seed);
    let ok = rs.iter().all(Report::passed);
    let text = rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Outcome {
        text,
        json: json!({ "passed": ok, "sections": rs }),
        ok,
    })
}

fn export_cmd(dir: &Path) -> Result<Outcome, Error> {
    let files = catalog::export_files()?;
    let io = |p: &Path, e: std::io::Error| Error::Input {
        location: p.display().to_string(),
        reason: e.to_string(),
    };
    for (rel, body) in &files {
        let p = dir.join(rel);
        if let Some(parent) = p.parent() {
            fs::create_dir_all(parent).map_err(|e| io(parent, e))?;
        }
        fs::write(&p, body).map_err(|e| io(&p, e))?;
    }
    Ok(Outcome::ok(
        format!("wrote {} files to {}", files.len(), dir.display()),
        json!({ "dir": dir.display().to_string(), "files": files.len() }),
    ))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Identities { alg } => identities(cli, alg),
        Command::Invariants { alg } => invariants(cli, alg),
        Command::Cohomology { alg, flavor } => cohomology_cmd(cli, alg, *flavor),
        Command::Extend { alg, cocycles, out } => extend_cmd(cli, alg, cocycles, out.as_deref()),
        Command::ThetaPerp { alg, cocycle } => theta_perp(cli, alg, cocycle),
        Command::SubspaceTests { alg, cocycles } => subspace_tests(cli, alg, cocycles),
        Command::Act { alg, matrix, cocycle } => act_cmd(cli, alg, matrix, cocycle),
        Command::Degeneration { witness } => degeneration_cmd(witness),
        Command::Iso { a, b, map, brute, budget } => iso_cmd(cli, a, b, map.as_deref(), *brute, *budget),
        Command::Count => count_cmd(cli),
        Command::VerifyPaper { section } => verify_cmd(cli, *section),
        Command::Export { dir } => export_cmd(dir),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

#[derive(Serialize)]
struct ErrorJson {
    error: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NILALG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&o.json).expect("serializable"));
            } else {
                emit(&o.text);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let body = ErrorJson { error: e.to_string() };
                emit(&serde_json::to_string_pretty(&body).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
