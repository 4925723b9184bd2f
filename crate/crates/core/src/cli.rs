//! Command-line front end.
//!
//! Exit codes: `0` when every check passes, `1` when a checked property
//! fails, `2` on usage or validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Once;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::dual::{equiv_on_witnesses, eval_points, norm_lower_bound, norm_single, reduce_euclidean, DualElement};
use crate::error::{Error, Result};
use crate::flatness::{check_fl_base_independence, check_fl_property, check_flat_identity, test_flatness};
use crate::laws;
use crate::monotone::{
    enumerate_maximal_extensions, extend_maximal, is_maximal_in, is_monotone, mu_closure, polar, Pair, PairSet,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::problem::Problem;
use crate::quasilin::check_cauchy_schwarz;
use crate::rational::{self, Rational};
use crate::report::CheckReport;
use crate::repro::worked_examples;
use crate::spaces::{Point, SpaceHandle};
use crate::varfun::{i_functional, mf_membership, prox_step_with, Membership, ProxMethod, ProxOptions};

pub const SCHEMA: &str = "hadamono/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    ClosedForm,
    GridRefine,
}

#[derive(Parser, Debug)]
#[command(name = "hadamono", version, about = "Exact computations with monotone sets in Hadamard spaces")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for every sampler.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct SetArgs {
    file: PathBuf,
    /// Pair set name.
    #[arg(long)]
    set: String,
    /// Ground set name.
    #[arg(long)]
    ground: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a pair set is monotone.
    CheckMonotone {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Polar of a pair set within a ground set.
    Polar(SetArgs),
    /// Closure (double polar) of a pair set within a ground set.
    Closure(SetArgs),
    /// Greedy maximal monotone extension within a ground set.
    Extend {
        #[command(flatten)]
        sets: SetArgs,
        /// Comma-separated ground-set indices giving the insertion order.
        #[arg(long)]
        order: Option<String>,
    },
    /// All maximal monotone extensions within a ground set.
    EnumerateExtensions {
        #[command(flatten)]
        sets: SetArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Flat identity on one tuple, or a seeded sampling test.
    CheckFlat {
        file: Option<PathBuf>,
        /// Space to sample when no file is given: `spoke-tree` or `euclidean:N`.
        #[arg(long)]
        space: Option<String>,
        #[arg(long, requires_all = ["y", "a", "b", "lambda"])]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Skip the known spoke-tree counterexample in sampling mode.
        #[arg(long)]
        no_inject: bool,
    },
    /// F_l-property of a pair set on a sample.
    CheckFl {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        sample: String,
    },
    /// CN inequality for one tuple.
    CheckCn {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        t: String,
    },
    /// Cauchy–Schwarz for two bound vectors.
    CheckCs {
        file: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Lower bound of a dual norm over witness points.
    DualNorm {
        file: PathBuf,
        #[arg(long)]
        dual: String,
        /// Grid name or comma-separated point names; defaults to all named points.
        #[arg(long)]
        witnesses: Option<String>,
    },
    /// Agreement of two dual elements on witness points.
    DualEquiv {
        file: PathBuf,
        #[arg(long)]
        dual: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        witnesses: Option<String>,
    },
    /// Grid value of the functional I_f.
    Ifun {
        #[command(flatten)]
        var: VarArgs,
    },
    /// Three-valued membership of a pair in M^f.
    MfMember {
        #[command(flatten)]
        var: VarArgs,
    },
    /// Proximal step.
    Prox {
        file: PathBuf,
        #[arg(long)]
        objective: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "0")]
        ydual: String,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// Seeded sweeps over the algebraic laws.
    CheckLaws {
        file: Option<PathBuf>,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// Exact reproduction of the worked spoke-tree examples.
    ReproPaper,
}

#[derive(clap::Args, Debug)]
struct VarArgs {
    file: PathBuf,
    #[arg(long)]
    objective: String,
    #[arg(long)]
    x: String,
    #[arg(long, default_value = "0")]
    xdual: String,
    #[arg(long, default_value = "0")]
    ydual: String,
    /// Grid name or comma-separated point names.
    #[arg(long)]
    grid: String,
}

struct Out<'a, W: Write> {
    format: Format,
    seed: u64,
    w: &'a mut W,
}

impl<W: Write> Out<'_, W> {
    /// Writes one report and returns its exit code.
    fn emit(&mut self, command: &str, passed: Option<bool>, payload: Value, text: &str) -> Result<i32> {
        let io = |e: std::io::Error| Error::Validation(format!("cannot write output: {e}"));
        match self.format {
            Format::Text => {
                write!(self.w, "{text}").map_err(io)?;
                if !text.ends_with('\n') {
                    writeln!(self.w).map_err(io)?;
                }
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("command".into(), json!(command));
                m.insert("seed".into(), json!(self.seed));
                if let Some(p) = passed {
                    m.insert("passed".into(), json!(p));
                }
                if let Value::Object(extra) = payload {
                    m.extend(extra);
                }
                let s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                writeln!(self.w, "{s}").map_err(io)?;
            }
        }
        Ok(match passed {
            Some(false) => 1,
            _ => 0,
        })
    }

    fn report(&mut self, command: &str, r: &CheckReport) -> Result<i32> {
        self.emit(command, Some(r.passed), json!({ "report": r }), &r.to_string())
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn load(path: &Path) -> Result<Problem> {
    Problem::from_file(path)
}

fn parse_space(s: &str) -> Result<SpaceHandle> {
    let space = match s {
        "spoke-tree" | "spoke_tree" => SpaceHandle::SpokeTree,
        other => {
            let dim = other
                .strip_prefix("euclidean:")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Validation(format!("unknown space {other:?}; use spoke-tree or euclidean:N")))?;
            SpaceHandle::euclidean(dim)
        }
    };
    space.validate()?;
    Ok(space)
}

/// A point name, or an inline JSON point.
fn point_arg(pb: &Problem, s: &str) -> Result<Point> {
    if s.trim_start().starts_with('{') {
        let p: Point = serde_json::from_str(s).map_err(|e| Error::Parse(format!("point {s}: {e}")))?;
        pb.space()?.check(&p)?;
        Ok(p)
    } else {
        pb.lookup_point(s)
    }
}

/// A dual name, `0`, or an inline JSON dual.
fn dual_arg(pb: &Problem, s: &str) -> Result<DualElement> {
    if s.trim_start().starts_with('{') {
        let d: DualElement = serde_json::from_str(s).map_err(|e| Error::Parse(format!("dual {s}: {e}")))?;
        d.check(&pb.space()?)?;
        Ok(d)
    } else {
        pb.lookup_dual(s)
    }
}

fn witnesses_arg(pb: &Problem, spec: Option<&str>, duals: &[&DualElement]) -> Result<Vec<Point>> {
    match spec {
        Some(s) => pb.lookup_points(s),
        None => {
            let mut pts: Vec<Point> = pb.points.values().cloned().collect();
            for d in duals {
                for p in d.points() {
                    if !pts.contains(p) {
                        pts.push(p.clone());
                    }
                }
            }
            Ok(pts)
        }
    }
}

fn set_text(title: &str, s: &PairSet) -> String {
    let mut t = format!("{title}: {} pair(s)\n", s.len());
    for p in s.iter() {
        t.push_str(&format!("  {}  {}\n", p.point, p.dual));
    }
    t
}

fn set_payload(op: &str, file: &Path, set: &str, ground: &str, result: &PairSet) -> Value {
    json!({
        "source": { "operation": op, "file": file.display().to_string(), "set": set, "ground": ground },
        "result": result,
    })
}

fn load_sets(a: &SetArgs) -> Result<(SpaceHandle, PairSet, PairSet)> {
    let pb = load(&a.file)?;
    let space = pb.space()?;
    let m = pb.lookup_pair_set(&a.set)?;
    let g = pb.lookup_ground_set(&a.ground)?;
    if !m.is_subset(&g) {
        return Err(Error::NotSubset(format!("{:?} is not within {:?}", a.set, a.ground)));
    }
    Ok((space, m, g))
}

fn configure_threads() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| {
        if let Some(n) = std::env::var("HADAMONO_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    });
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let mut o = Out { format: cli.format, seed: cli.seed, w: out };
    match dispatch(cli.command, &mut o) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch<W: Write>(command: Command, o: &mut Out<'_, W>) -> Result<i32> {
    let seed = o.seed;
    match command {
        Command::CheckMonotone { file, set } => {
            let pb = load(&file)?;
            let r = is_monotone(&pb.space()?, &pb.lookup_pair_set(&set)?)?;
            o.report("check-monotone", &r)
        }
        Command::Polar(a) => {
            let (space, m, g) = load_sets(&a)?;
            let r = polar(&space, &m, &g)?;
            o.emit("polar", None, set_payload("polar", &a.file, &a.set, &a.ground, &r), &set_text("polar", &r))
        }
        Command::Closure(a) => {
            let (space, m, g) = load_sets(&a)?;
            let r = mu_closure(&space, &m, &g)?;
            o.emit("closure", None, set_payload("closure", &a.file, &a.set, &a.ground, &r), &set_text("closure", &r))
        }
        Command::Extend { sets, order } => {
            let (space, m, g) = load_sets(&sets)?;
            let order: Option<Vec<usize>> = order
                .map(|s| {
                    s.split(',')
                        .map(|i| i.trim().parse::<usize>().map_err(|e| Error::Parse(format!("--order {i:?}: {e}"))))
                        .collect()
                })
                .transpose()?;
            let r = extend_maximal(&space, &m, &g, order.as_deref())?;
            let maximal = is_maximal_in(&space, &r, &g)?;
            let mut payload = set_payload("extend", &sets.file, &sets.set, &sets.ground, &r);
            payload["maximal"] = json!(maximal);
            o.emit("extend", Some(maximal), payload, &set_text("maximal extension", &r))
        }
        Command::EnumerateExtensions { sets, limit } => {
            let (space, m, g) = load_sets(&sets)?;
            let exts = enumerate_maximal_extensions(&space, &m, &g, limit)?;
            let mut text = format!("{} maximal extension(s)\n", exts.len());
            for (i, e) in exts.iter().enumerate() {
                text.push_str(&set_text(&format!("extension {i}"), e));
            }
            let payload = json!({
                "source": { "operation": "enumerate-extensions", "file": sets.file.display().to_string(), "set": sets.set, "ground": sets.ground },
                "count": exts.len(),
                "extensions": exts,
            });
            o.emit("enumerate-extensions", None, payload, &text)
        }
        Command::CheckFlat { file, space, x, y, a, b, lambda, samples, no_inject } => {
            let pb = match &file {
                Some(f) => load(f)?,
                None => Problem { space: space.as_deref().map(parse_space).transpose()?, ..Problem::default() },
            };
            let space = pb.space()?;
            let r = match (x, y, a, b, lambda) {
                (Some(x), Some(y), Some(a), Some(b), Some(l)) => check_flat_identity(
                    &space,
                    &point_arg(&pb, &x)?,
                    &point_arg(&pb, &y)?,
                    &point_arg(&pb, &a)?,
                    &point_arg(&pb, &b)?,
                    &rational::parse(&l)?,
                )?,
                _ => test_flatness(&space, seed, samples, !no_inject)?,
            };
            o.report("check-flat", &r)
        }
        Command::CheckFl { file, set, sample } => {
            let pb = load(&file)?;
            let space = pb.space()?;
            let m = pb.lookup_pair_set(&set)?;
            let s = pb.lookup_sample(&sample)?;
            match &s.second_base {
                None => o.report("check-fl", &check_fl_property(&space, &m, &s)?),
                Some(q) => {
                    let r = check_fl_base_independence(&space, &m, &s.base, q, &s.lambdas)?;
                    let passed = r.at_p.passed && r.at_q.passed;
                    let text = format!("{}\n{}\n{}\n", r.at_p, r.at_q, r.agreement);
                    let consistent = r.agreement.passed;
                    o.emit(
                        "check-fl",
                        Some(passed && consistent),
                        json!({ "report": r.at_p, "second_base": r.at_q, "agreement": r.agreement }),
                        &text,
                    )
                }
            }
        }
        Command::CheckCn { file, x, y, z, t } => {
            let pb = load(&file)?;
            let r = pb.space()?.check_cn(
                &point_arg(&pb, &x)?,
                &point_arg(&pb, &y)?,
                &point_arg(&pb, &z)?,
                &rational::parse(&t)?,
            )?;
            o.report("check-cn", &r)
        }
        Command::CheckCs { file, v, w } => {
            let pb = load(&file)?;
            let r = check_cauchy_schwarz(&pb.space()?, &pb.lookup_vector(&v)?, &pb.lookup_vector(&w)?)?;
            o.report("check-cs", &r)
        }
        Command::DualNorm { file, dual, witnesses } => {
            let pb = load(&file)?;
            let space = pb.space()?;
            let phi = dual_arg(&pb, &dual)?;
            let pts = witnesses_arg(&pb, witnesses.as_deref(), &[&phi])?;
            let lower = norm_lower_bound(&space, &phi, &pts)?;
            let single = match phi.terms.as_slice() {
                [t] => Some(norm_single(&space, &t.alpha, &t.t, &t.tail, &t.head)?),
                _ => None,
            };
            let mut text = format!("norm lower bound {lower:.12e} over {} witness point(s)\n", pts.len());
            if let Some(s) = single {
                text.push_str(&format!("single-term norm {s:.12e}\n"));
            }
            o.emit(
                "dual-norm",
                None,
                json!({ "lower_bound": lower, "single_term_norm": single, "witnesses": pts.len() }),
                &text,
            )
        }
        Command::DualEquiv { file, dual, other, witnesses } => {
            let pb = load(&file)?;
            let space = pb.space()?;
            let phi = dual_arg(&pb, &dual)?;
            let psi = dual_arg(&pb, &other)?;
            let pts = witnesses_arg(&pb, witnesses.as_deref(), &[&phi, &psi])?;
            let same = equiv_on_witnesses(&space, &phi, &psi, &pts)?;
            let mut payload = json!({ "equivalent": same, "witnesses": pts.len() });
            let mut text =
                format!("{} on {} witness point(s)\n", if same { "EQUIVALENT" } else { "DIFFERENT" }, pts.len());
            if !same {
                'outer: for x in &pts {
                    for y in &pts {
                        let (a, b) = (eval_points(&phi, x, y), eval_points(&psi, x, y));
                        if a != b {
                            payload["witness"] = json!({ "tail": x, "head": y, "dual": rational::format(&a), "other": rational::format(&b) });
                            text.push_str(&format!(
                                "  on {x}{y}: {} vs {}\n",
                                rational::format(&a),
                                rational::format(&b)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            if let SpaceHandle::Euclidean { .. } = space {
                let fmt = |v: Vec<Rational>| v.iter().map(rational::format).collect::<Vec<_>>();
                let (r1, r2) = (fmt(reduce_euclidean(&space, &phi)?), fmt(reduce_euclidean(&space, &psi)?));
                text.push_str(&format!("  reduced: ({}) vs ({})\n", r1.join(", "), r2.join(", ")));
                payload["reduced"] = json!([r1, r2]);
            }
            o.emit("dual-equiv", Some(same), payload, &text)
        }
        Command::Ifun { var } => {
            let pb = load(&var.file)?;
            let space = pb.space()?;
            let r = i_functional(
                &space,
                &pb.lookup_objective(&var.objective)?,
                &point_arg(&pb, &var.x)?,
                &dual_arg(&pb, &var.xdual)?,
                &dual_arg(&pb, &var.ydual)?,
                &pb.lookup_points(&var.grid)?,
            )?;
            let text = format!("I_f grid value {} at {}\n", rational::format(&r.value), r.argmin);
            o.emit("ifun", None, json!({ "result": r }), &text)
        }
        Command::MfMember { var } => {
            let pb = load(&var.file)?;
            let space = pb.space()?;
            let pair = Pair::new(point_arg(&pb, &var.x)?, dual_arg(&pb, &var.xdual)?);
            let r = mf_membership(
                &space,
                &pb.lookup_objective(&var.objective)?,
                &pair,
                &dual_arg(&pb, &var.ydual)?,
                &pb.lookup_points(&var.grid)?,
            )?;
            let verdict = match r.verdict {
                Membership::CertifiedOut => "certified out",
                Membership::Consistent => "consistent",
                Membership::ExactIn => "exact in",
            };
            let mut text = format!(
                "{verdict}: grid value {} at {}, f(x) = {}",
                rational::format(&r.grid.value),
                r.grid.argmin,
                rational::format(&r.f_at_x)
            );
            if let Some(e) = &r.exact_inf {
                text.push_str(&format!(", exact infimum {e}"));
            }
            o.emit("mf-member", None, json!({ "result": r }), &text)
        }
        Command::Prox { file, objective, y, ydual, p, method } => {
            let pb = load(&file)?;
            let space = pb.space()?;
            let method = match method {
                Method::Auto => ProxMethod::Auto,
                Method::ClosedForm => ProxMethod::ClosedForm,
                Method::GridRefine => ProxMethod::GridRefine,
            };
            let opts = ProxOptions { method, seed, ..ProxOptions::default() };
            let r = prox_step_with(
                &space,
                &pb.lookup_objective(&objective)?,
                &point_arg(&pb, &y)?,
                &dual_arg(&pb, &ydual)?,
                &point_arg(&pb, &p)?,
                &opts,
            )?;
            let mut text = format!(
                "minimizer {} value {} ({:.12e})\n{}\n",
                r.minimizer,
                rational::format(&r.value_exact),
                r.value,
                r.certificate
            );
            if r.heuristic {
                text.push_str("heuristic: the sampled F_l check failed, so strong convexity is not guaranteed\n");
            }
            o.emit("prox", Some(r.certificate.passed), json!({ "result": to_value(&r) }), &text)
        }
        Command::CheckLaws { file, space, instances } => {
            let spaces = match (&file, &space) {
                (Some(f), _) => vec![load(f)?.space()?],
                (None, Some(s)) => vec![parse_space(s)?],
                (None, None) => vec![SpaceHandle::SpokeTree, SpaceHandle::euclidean(2)],
            };
            let mut reports = Vec::new();
            let mut text = String::new();
            for s in &spaces {
                for r in laws::all_laws(s, seed, instances)? {
                    text.push_str(&format!("[{s}] {r}\n"));
                    reports.push(json!({ "space": s, "report": r }));
                }
            }
            let passed = reports.iter().all(|r| r["report"]["passed"] == json!(true));
            o.emit("check-laws", Some(passed), json!({ "reports": reports }), &text)
        }
        Command::ReproPaper => {
            let r = worked_examples(seed)?;
            let mut text = String::new();
            for i in &r.items {
                text.push_str(&format!(
                    "{} {}: expected {}, got {}\n",
                    if i.passed { "PASS" } else { "FAIL" },
                    i.id,
                    i.expected,
                    i.actual
                ));
            }
            o.emit("repro-paper", Some(r.passed), json!({ "items": r.items }), &text)
        }
    }
}
