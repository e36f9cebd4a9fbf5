//! Command-line front end: read a form file, run one analysis (or all of
//! them), and emit a JSON report.
//!
//! Every report carries the canonical hash of the input form and the
//! configuration, including the seed that drives all random choices, so a
//! fixed command line always produces the same bytes.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::clifford::{CliffordAlgebra, Side, Subalgebra};
use crate::duality::{
    build_a_sigma, clifford_hilbert, graded_dims, koszul_verify, quadric_hilbert, QuadraticPresentation,
    DEFAULT_AMBIENT_CAP,
    MAX_DEGREE,
};
use crate::error::{Error, Result};
use crate::exact::rank::{generic_rank, random_point};
use crate::exact::rational::format_rational;
use crate::exact::{QMatrix, Rational};
use crate::factorization::{periodicity_check, MatrixFactorization};
use crate::form::QuadraticForm;
use crate::modules::{build_bk, convk_identity, hom_over_b0, projectivity_check, tensor_iso_report};
use crate::sod::{central_reduction_report, fibration_sod, intersection_sod, pushforward_table, Base};

/// Largest n for which structure reports of the Clifford algebra are built.
pub const STRUCTURE_MAX_N: usize = 8;
/// Largest n for the module computations.
pub const MODULES_MAX_N: usize = 6;
/// Largest n for the matrix factorization.
pub const MF_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Clifford,
    Strata,
    Dual,
    Koszul,
    Modules,
    Mf,
    Sod,
    Analyze,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Clifford => "clifford",
            Command::Strata => "strata",
            Command::Dual => "dual",
            Command::Koszul => "koszul",
            Command::Modules => "modules",
            Command::Mf => "mf",
            Command::Sod => "sod",
            Command::Analyze => "analyze",
        }
    }

    const SECTIONS: [Command; 7] = [
        Command::Clifford,
        Command::Strata,
        Command::Dual,
        Command::Koszul,
        Command::Modules,
        Command::Mf,
        Command::Sod,
    ];
}

#[derive(Clone, Debug, Parser)]
#[command(name = "cliffib", about = "Exact analysis of quadric fibrations", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Sub {
    /// Clifford algebra at a point: dimension, central element, structure.
    Clifford(Args),
    /// Discriminant, corank strata and simple degenerations.
    Strata(Args),
    /// Quadratic algebra of the quadric and its Koszul dual.
    Dual(Args),
    /// Koszul complexes of the quadric algebra and its dual.
    Koszul(Args),
    /// Modules B_k over the even Clifford algebra.
    Modules(Args),
    /// Clifford matrix factorization.
    Mf(Args),
    /// Semiorthogonal decomposition shapes and central reduction.
    Sod(Args),
    /// Every analysis above.
    Analyze(Args),
}

#[derive(Clone, Debug, clap::Args)]
pub struct Args {
    /// Form file (JSON with `n`, `base_vars`, `gram`).
    pub form: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 10_000)]
    pub bound: i64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub pretty: bool,
}

impl Sub {
    fn split(&self) -> (Command, &Args) {
        match self {
            Sub::Clifford(a) => (Command::Clifford, a),
            Sub::Strata(a) => (Command::Strata, a),
            Sub::Dual(a) => (Command::Dual, a),
            Sub::Koszul(a) => (Command::Koszul, a),
            Sub::Modules(a) => (Command::Modules, a),
            Sub::Mf(a) => (Command::Mf, a),
            Sub::Sod(a) => (Command::Sod, a),
            Sub::Analyze(a) => (Command::Analyze, a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub degree_cap: usize,
    pub trials: usize,
    pub bound: i64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub pretty: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_cap: 8,
            trials: 3,
            bound: 10_000,
            seed: 0,
            out: None,
            pretty: false,
        }
    }
}

impl Config {
    fn from_args(a: &Args) -> Result<Self> {
        let c = Config {
            degree_cap: a.degree,
            trials: a.trials,
            bound: a.bound,
            seed: a.seed.unwrap_or(0),
            out: a.out.clone(),
            pretty: a.pretty,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree_cap == 0 || self.trials == 0 || self.bound <= 0 {
            return Err(Error::Input("--degree, --trials and --bound must be positive".into()));
        }
        if self.degree_cap > MAX_DEGREE {
            return Err(Error::ResourceLimit {
                what: "degree".into(),
                needed: self.degree_cap,
                cap: MAX_DEGREE,
            });
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "degree_cap": self.degree_cap,
            "specialization_trials": self.trials,
            "random_bound": self.bound,
            "seed": self.seed,
        })
    }
}

fn cap(what: &str, needed: usize, cap: usize) -> Result<()> {
    if needed > cap {
        return Err(Error::ResourceLimit {
            what: what.into(),
            needed,
            cap,
        });
    }
    Ok(())
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(what.into()))
    }
}

/// Shared state for one run: the form, a seeded generator and a sample
/// base point (empty over a point base).
struct Context<'a> {
    form: &'a QuadraticForm,
    config: &'a Config,
    rng: ChaCha8Rng,
    point: Vec<Rational>,
}

impl<'a> Context<'a> {
    fn new(form: &'a QuadraticForm, config: &'a Config) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let point = random_point(form.base_vars().len(), config.bound, &mut rng);
        Context {
            form,
            config,
            rng,
            point,
        }
    }

    fn gram(&self) -> Result<QMatrix> {
        self.form.gram_at(&self.point)
    }

    fn point_json(&self) -> Value {
        json!(self.point.iter().map(format_rational).collect::<Vec<_>>())
    }

    /// A fresh generator per section keeps sections independent of the
    /// order in which they run.
    fn section_rng(&self, cmd: Command) -> ChaCha8Rng {
        let salt = Command::SECTIONS.iter().position(|c| *c == cmd).unwrap_or(7) as u64;
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt + 1))
    }
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn clifford_section(ctx: &mut Context) -> Result<Value> {
    let n = ctx.form.n();
    cap("generators for structure reports", n, STRUCTURE_MAX_N)?;
    let g = ctx.gram()?;
    let alg = CliffordAlgebra::new(g.clone())?;
    let d = alg.central_element();
    let d2 = alg.multiply(&d.element, &d.element);
    let expected = d.expected_square();
    let square_ok = d2 == crate::clifford::CliffordElement::scalar(expected.clone());
    invariant(square_ok, "square of the central element")?;
    let corank = n - g.rank();
    let quotient = if corank == 1 {
        let which = if n % 2 == 0 { Subalgebra::Even } else { Subalgebra::Full };
        Some(alg.quotient_by_d(which)?.to_json())
    } else {
        None
    };
    Ok(json!({
        "point": ctx.point_json(),
        "gram": matrix_json(&g),
        "dimension": alg.dim(),
        "corank": corank,
        "central_element": d.element.to_string(),
        "central_square": format_rational(&expected),
        "full": alg.structure_report(Subalgebra::Full).to_json(),
        "even": alg.structure_report(Subalgebra::Even).to_json(),
        "quotient_by_d": quotient,
    }))
}

fn strata_section(ctx: &mut Context) -> Result<Value> {
    let f = ctx.form;
    let nb = f.base_vars().len();
    let samples: Vec<Vec<Rational>> = (0..ctx.config.trials)
        .map(|_| random_point(nb, ctx.config.bound, &mut ctx.rng))
        .collect();
    let report = f.strata_report(&samples)?;
    invariant(report.nesting_verified, "corank strata are cut out by the minors")?;
    let mut rng = ctx.section_rng(Command::Strata);
    let rank = generic_rank(f.gram(), ctx.config.trials, ctx.config.bound, &mut rng);
    let mut v = report.to_json();
    v["generic_rank"] = serde_json::to_value(rank.report()).expect("serializable");
    Ok(v)
}

/// Quadric algebra at the sample point; the tensor square is its degree 2
/// ambient, so oversized forms are refused before it is built.
fn presentation(ctx: &mut Context) -> Result<QuadraticPresentation> {
    let n = ctx.form.n();
    cap("tensor square of the generators", n * n, DEFAULT_AMBIENT_CAP)?;
    build_a_sigma(&ctx.gram()?)
}

fn dual_section(ctx: &mut Context) -> Result<Value> {
    let n = ctx.form.n();
    let p = presentation(ctx)?;
    let d = p.dual();
    let deg = ctx.config.degree_cap;
    let a = graded_dims(&p, deg, DEFAULT_AMBIENT_CAP)?;
    let b = graded_dims(&d, deg, DEFAULT_AMBIENT_CAP)?;
    let qa: Vec<u64> = (0..=deg).map(|k| quadric_hilbert(n, k)).collect();
    let cb: Vec<u64> = (0..=deg).map(|k| clifford_hilbert(n, k)).collect();
    let a_ok = a.dims.iter().zip(&qa).all(|(x, y)| *x as u64 == *y);
    let b_ok = b.dims.iter().zip(&cb).all(|(x, y)| *x as u64 == *y);
    invariant(a_ok && b_ok, "graded dimensions of the quadric algebra or its dual")?;
    Ok(json!({
        "point": ctx.point_json(),
        "relations": p.relation_strings("x"),
        "dual_relations": d.relation_strings("y"),
        "dims": a.dims,
        "dual_dims": b.dims,
        "expected_dims": qa,
        "expected_dual_dims": cb,
    }))
}

fn koszul_section(ctx: &mut Context) -> Result<Value> {
    let p = presentation(ctx)?;
    let r = koszul_verify(&p, ctx.config.degree_cap, DEFAULT_AMBIENT_CAP)?;
    invariant(r.d_squared_zero && r.euler_consistent, "Koszul complex bookkeeping")?;
    invariant(r.koszul_up_to_degree, "quadric algebra is Koszul")?;
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["point"] = ctx.point_json();
    Ok(v)
}

fn modules_section(ctx: &mut Context) -> Result<Value> {
    let n = ctx.form.n();
    cap("generators for module computations", n, MODULES_MAX_N)?;
    let g = ctx.gram()?;
    let nondegenerate = !g.determinant().is_zero();
    let alg = CliffordAlgebra::new(g)?;
    let mut rng = ctx.section_rng(Command::Modules);
    let mut dims = Vec::new();
    let mut actions_ok = true;
    for k in -2..=2 {
        let m = build_bk(&alg, k, Side::Right);
        actions_ok &= m.verify_action(&alg, 5, &mut rng);
        dims.push(json!({"k": k, "dim": m.dim()}));
    }
    invariant(actions_ok, "B_0 acts on B_k")?;
    let mut tensors = Vec::new();
    let mut homs = Vec::new();
    for k in 0..=1 {
        for l in 0..=1 {
            let t = tensor_iso_report(&alg, k, l, &mut rng)?;
            if nondegenerate {
                invariant(t.isomorphism_found && t.multiplication_is_isomorphism, "B_k ⊗ B_l ≅ B_{k+l}")?;
            }
            tensors.push(serde_json::to_value(&t).expect("serializable"));
            let h = hom_over_b0(&build_bk(&alg, k, Side::Right), &build_bk(&alg, l, Side::Right))?;
            homs.push(json!({"k": k, "l": l, "dim": h.dim}));
        }
    }
    let convk = [1, 0, -1, -2]
        .iter()
        .map(|k| convk_identity(n, *k).map(|r| serde_json::to_value(r).expect("serializable")))
        .collect::<Result<Vec<_>>>()?;
    let proj = projectivity_check(&alg, &build_bk(&alg, 1, Side::Right))?;
    Ok(json!({
        "point": ctx.point_json(),
        "nondegenerate": nondegenerate,
        "dims": dims,
        "tensor_products": tensors,
        "homs": homs,
        "convk": convk,
        "b1_projective": proj,
    }))
}

fn mf_section(ctx: &mut Context) -> Result<Value> {
    let n = ctx.form.n();
    cap("generators for matrix factorization", n, MF_MAX_N)?;
    let mut rng = ctx.section_rng(Command::Mf);
    let left = MatrixFactorization::build(ctx.form, Side::Left)?;
    let right = MatrixFactorization::build(ctx.form, Side::Right)?;
    let report = left.report(ctx.config.trials, ctx.config.bound, &mut rng);
    invariant(report.determinant.holds, "det φ · det ψ = q^N")?;
    // rational points on the quadric over the sample base point
    let g = ctx.gram()?;
    let periodicity = match crate::form::find_isotropic_vector(&g) {
        Some(v) => {
            let mut p = ctx.point.clone();
            p.extend(v);
            let r = periodicity_check(ctx.form, &[p])?;
            invariant(r.holds, "cokernel dimensions of the two parities and sides")?;
            serde_json::to_value(r).expect("serializable")
        }
        None => Value::Null,
    };
    Ok(json!({
        "left": report,
        "right_identity_verified": right.identity_holds(),
        "periodicity": periodicity,
    }))
}

fn sod_section(ctx: &mut Context) -> Result<Value> {
    let n = ctx.form.n();
    let f = ctx.form;
    let base = if f.is_point_base() {
        Base::Point {
            corank: f.corank_at(&[])?,
        }
    } else {
        Base::Other(format!("base with coordinates {}", f.base_vars().join(", ")))
    };
    let fibration = if n >= 2 {
        serde_json::to_value(fibration_sod(n, &base)?).expect("serializable")
    } else {
        Value::Null
    };
    let table = pushforward_table(n, (2 - n as i64 - 2)..=ctx.config.degree_cap as i64);
    let a = graded_dims(&presentation(ctx)?, ctx.config.degree_cap, DEFAULT_AMBIENT_CAP)?;
    let table_ok = table
        .iter()
        .filter(|r| r.m >= 0)
        .all(|r| r.rank == a.dims[r.m as usize] as u64);
    invariant(table_ok, "pushforward ranks agree with the quadric algebra")?;
    let central = if n <= STRUCTURE_MAX_N {
        let r = central_reduction_report(f, &[ctx.point.clone()])?;
        invariant(r.points.iter().all(|p| p.matches), "pointwise Azumaya certificate")?;
        serde_json::to_value(r).expect("serializable")
    } else {
        Value::Null
    };
    let intersection = if f.is_pencil() && n >= 2 {
        serde_json::to_value(intersection_sod(n, 2)?).expect("serializable")
    } else {
        Value::Null
    };
    Ok(json!({
        "fibration": fibration,
        "pushforward": table,
        "central_reduction": central,
        "pencil_intersection": intersection,
    }))
}

fn section(cmd: Command, ctx: &mut Context) -> Result<Value> {
    match cmd {
        Command::Clifford => clifford_section(ctx),
        Command::Strata => strata_section(ctx),
        Command::Dual => dual_section(ctx),
        Command::Koszul => koszul_section(ctx),
        Command::Modules => modules_section(ctx),
        Command::Mf => mf_section(ctx),
        Command::Sod => sod_section(ctx),
        Command::Analyze => unreachable!("analyze is expanded by the caller"),
    }
}

/// Runs one command on a parsed form.
pub fn run(cmd: Command, form: &QuadraticForm, config: &Config) -> Result<Value> {
    config.validate()?;
    let mut ctx = Context::new(form, config);
    let body = if cmd == Command::Analyze {
        let mut sections = serde_json::Map::new();
        for c in Command::SECTIONS {
            sections.insert(c.name().into(), section(c, &mut ctx)?);
        }
        Value::Object(sections)
    } else {
        section(cmd, &mut ctx)?
    };
    Ok(json!({
        "command": cmd.name(),
        "input_hash": form.canonical_hash(),
        "form": serde_json::to_value(form.to_file()).expect("serializable"),
        "config": config.to_json(),
        "report": body,
    }))
}

pub fn render(report: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(report)
    } else {
        serde_json::to_string(report)
    }
    .expect("serializable");
    s.push('\n');
    s
}

fn load(path: &PathBuf) -> Result<QuadraticForm> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    QuadraticForm::from_json(&text)
}

/// Output of one invocation: the exit code plus what goes to stdout and
/// stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn summary(cmd: Command, report: &Value) -> String {
    format!(
        "{}: ok (input {})",
        cmd.name(),
        report["input_hash"].as_str().unwrap_or("?")
    )
}

/// Parses the command line and runs it without touching the process state
/// beyond the `--out` file.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome {
                code,
                stdout: if code == 0 { e.to_string() } else { String::new() },
                stderr: if code == 0 { String::new() } else { e.to_string() },
            };
        }
    };
    let (cmd, args) = cli.command.split();
    let result = Config::from_args(args).and_then(|config| {
        let form = load(&args.form)?;
        let report = run(cmd, &form, &config)?;
        Ok((config, report))
    });
    match result {
        Ok((config, report)) => {
            let text = render(&report, config.pretty);
            match &config.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome {
                        code: 0,
                        stdout: summary(cmd, &report) + "\n",
                        stderr: String::new(),
                    },
                    Err(e) => Outcome {
                        code: 1,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
