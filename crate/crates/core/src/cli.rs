//! Command-line front end. Every command prints its artifact (or writes it to
//! `--out`) and a JSON [`RunReport`] on stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::abp::{abp_to_formula, abp_validate, abp_value, is_planar_layer, linear_ladder, planarize, AbpJson};
use crate::error::{Error, Result};
use crate::fibonacci::{cyclic_fib_closed_form, cyclic_fib_poly, fib_closed_form, fib_poly, ENUMERATION_CAP};
use crate::formula::{parse_formula, Formula};
use crate::hypercube::{
    hypercube_eval_capped, hypercube_eval_elimination, permanent, ryser_hypercube_permanent, verify_f4_identity,
    width3_to_vnp1, HypercubeJson, RyserStage, DEFAULT_BIT_CAP,
};
use crate::ring::{parse_rat, AffineForm, EpsScalar, LabelClass, MPoly, Rat, Var};
use crate::width2::{
    compile_width2, error_bound, error_degree_of, fib_degeneration, interpolate_exact, length_bound,
    program_value_within, verify_claim, QProgram, QProgramJson, EXACT_BUDGET,
};
use crate::width3::{boc_compile, boc_length, to_weakest_abp, width3_value, Width3Json};

/// Overrides the brute-force hypercube bit cap.
pub const ENV_BIT_CAP: &str = "NARROW_ABP_BIT_CAP";
/// Overrides the term budget for full symbolic expansion.
pub const ENV_TERM_BUDGET: &str = "NARROW_ABP_TERM_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
/// A requested verification did not run because a cap was hit.
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ok,
    Failed,
    /// Skipped because a size cap was exceeded.
    Skipped,
}

impl Verdict {
    fn of(b: bool) -> Verdict {
        if b {
            Verdict::Ok
        } else {
            Verdict::Failed
        }
    }
}

/// What a command did and what it verified.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the primary input text.
    pub input_digest: String,
    pub output: Option<PathBuf>,
    /// Only checks that actually ran appear as `ok` or `failed`.
    pub verdicts: BTreeMap<String, Verdict>,
    pub measures: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub wall_ms: f64,
}

impl RunReport {
    fn new(command: String, input: &str) -> RunReport {
        RunReport {
            command,
            input_digest: hex::encode(Sha256::digest(input.as_bytes())),
            output: None,
            verdicts: BTreeMap::new(),
            measures: BTreeMap::new(),
            seed: None,
            wall_ms: 0.0,
        }
    }

    fn verdict(&mut self, name: &str, v: Verdict) {
        self.verdicts.insert(name.to_string(), v);
    }

    fn measure(&mut self, name: &str, v: impl Into<Value>) {
        self.measures.insert(name.to_string(), v.into());
    }

    pub fn exit_code(&self) -> i32 {
        let vs: Vec<Verdict> = self.verdicts.values().copied().collect();
        if vs.contains(&Verdict::Failed) {
            EXIT_FAILED
        } else if vs.contains(&Verdict::Skipped) {
            EXIT_CAP
        } else {
            EXIT_OK
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "narrow-abp", version, about = "Narrow algebraic branching programs from formulas")]
pub struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckLevel {
    None,
    Bounds,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Program,
    Abp,
    Formula,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a formula to a width-2 program in Q(alpha f) + O(eps).
    Compile2 {
        /// Formula text, or a file holding formula text or formula JSON.
        formula: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, value_enum, default_value = "bounds")]
        check: CheckLevel,
        /// Also emit the planar width-2 ABP for the (1,1) entry.
        #[arg(long)]
        planar: bool,
        /// Interpolate the exact polynomial from the program.
        #[arg(long)]
        recover: bool,
        /// Emit the forms of the Fibonacci degeneration.
        #[arg(long)]
        fib: bool,
    },
    /// Compile a formula to an exact width-3 program.
    Compile3 {
        formula: String,
        #[arg(long, value_enum, default_value = "program")]
        emit: Emit,
    },
    /// Hypercube sum for the n x n permanent.
    Ryser {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "affine")]
        stage: String,
    },
    /// Hypercube sum of affine forms simulating the width-3 program of a formula.
    Vnp1 {
        formula: String,
        #[arg(long)]
        two_variable: bool,
        /// Verify by bit elimination instead of enumeration (no bit cap).
        #[arg(long)]
        eliminate: bool,
    },
    /// The generalized Fibonacci polynomial F_n (or its cyclic variant).
    Fib {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cyclic: bool,
        /// Comma-separated values for x1, ..., xn.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Check the identity over GF(4) at all 16 points.
    VerifyF4,
    /// Planar width-2 ABP for the (1,1) entry of a program JSON file.
    Planarize { program: PathBuf },
    /// Width-2 weakest ABP for an affine form.
    Ladder { form: String },
}

fn read_input(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn load_formula(arg: &str) -> Result<(String, Formula)> {
    let text = read_input(arg)?;
    let f = if text.trim_start().starts_with('{') { Formula::from_json_str(&text)? } else { parse_formula(&text)? };
    Ok((text, f))
}

fn env_cap(name: &str, default: usize) -> usize {
    std::env::var(name).ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn eval_formula_scaled(f: &Formula, alpha: &Rat) -> MPoly {
    f.eval().scale_rat(alpha)
}

fn cmd_compile2(r: &mut RunReport, formula: &str, alpha: &str, check: CheckLevel, planar: bool, recover: bool, fib: bool) -> Result<Value> {
    let (text, f) = load_formula(formula)?;
    *r = RunReport::new(r.command.clone(), &text);
    let alpha = parse_rat(alpha)?;
    let q = compile_width2(&f, &alpha);
    let d = f.depth();
    r.measure("depth", d);
    r.measure("length", q.len());
    r.measure("length_bound", length_bound(d).to_string());
    let mut out = json!({ "program": QProgramJson::from_program(&q, false) });
    if check != CheckLevel::None {
        let e = error_degree_of(&q);
        r.measure("error_degree", e.degree);
        r.measure("error_degree_exact", e.exact);
        r.measure("error_bound", error_bound(d).to_string());
        let ok = (q.len() as u128) <= length_bound(d) && (e.degree.max(0) as u128) <= error_bound(d);
        r.verdict("bounds", Verdict::of(ok));
    }
    if check == CheckLevel::Full {
        let cert = verify_claim(&q);
        if let Err(err) = &cert {
            r.measure("cert_failure", err.to_string());
        }
        r.verdict("cert", Verdict::of(cert.is_ok()));
        let target = q.claim().map(|c| c.target.clone());
        r.verdict("oracle", Verdict::of(target.as_ref() == Some(&eval_formula_scaled(&f, &alpha))));
        out["program"] = serde_json::to_value(QProgramJson::from_program(&q, cert.is_ok())).unwrap();
    }
    if recover {
        let e = error_degree_of(&q).degree.max(0);
        let p = interpolate_exact(&q, e)?;
        r.verdict("recovered", Verdict::of(p == eval_formula_scaled(&f, &alpha)));
        out["recovered"] = json!(p.to_string());
    }
    if fib {
        let deg = fib_degeneration(&q)?;
        r.measure("fib_index", deg.m);
        out["fib"] = json!({ "m": deg.m, "forms": deg.forms.iter().map(|l| l.to_string()).collect::<Vec<_>>() });
    }
    if planar {
        let one = [EpsScalar::one(), EpsScalar::zero()];
        let abp = planarize(&q, one.clone(), one)?;
        r.verdict("planar", Verdict::of(abp.matrices.iter().all(is_planar_layer)));
        let budget = env_cap(ENV_TERM_BUDGET, EXACT_BUDGET);
        match program_value_within(&q, budget) {
            Ok(v) => r.verdict("planar_value", Verdict::of(abp_value(&abp)? == *v.get(0, 0))),
            Err(_) => r.verdict("planar_value", Verdict::Skipped),
        }
        out["planar_abp"] = serde_json::to_value(AbpJson::from_abp(&abp)).unwrap();
    }
    Ok(out)
}

fn cmd_compile3(r: &mut RunReport, formula: &str, emit: Emit) -> Result<Value> {
    let (text, f) = load_formula(formula)?;
    *r = RunReport::new(r.command.clone(), &text);
    let p = boc_compile(&f);
    let target = f.eval();
    r.measure("length", p.len());
    r.measure("length_recurrence", boc_length(&f));
    r.verdict("length", Verdict::of(p.len() == boc_length(&f)));
    r.verdict("oracle", Verdict::of(width3_value(&p) == target));
    Ok(match emit {
        Emit::Program => serde_json::to_value(Width3Json::from_program(&p)).unwrap(),
        Emit::Abp | Emit::Formula => {
            let abp = to_weakest_abp(&p)?;
            r.verdict("weakest", Verdict::of(abp_validate(&abp, LabelClass::Weakest).is_valid()));
            r.verdict("abp_value", Verdict::of(abp_value(&abp)? == target));
            if emit == Emit::Abp {
                serde_json::to_value(AbpJson::from_abp(&abp)).unwrap()
            } else {
                let g = abp_to_formula(&abp)?;
                r.measure("formula_size", g.size());
                r.verdict("formula_value", Verdict::of(g.eval() == target));
                serde_json::from_str(&g.to_json_string()).unwrap()
            }
        }
    })
}

fn check_hypercube(r: &mut RunReport, h: &crate::hypercube::HypercubeSum, expect: &MPoly, eliminate: bool) {
    r.measure("bits", h.bits.len());
    r.measure("factors", h.factor_count());
    if eliminate {
        r.verdict("oracle", Verdict::of(hypercube_eval_elimination(h) == *expect));
        return;
    }
    let cap = env_cap(ENV_BIT_CAP, DEFAULT_BIT_CAP);
    match hypercube_eval_capped(h, cap) {
        Ok(v) => r.verdict("oracle", Verdict::of(v == *expect)),
        Err(Error::CapExceeded { .. }) => r.verdict("oracle", Verdict::Skipped),
        Err(_) => r.verdict("oracle", Verdict::Failed),
    }
}

fn cmd_fib(r: &mut RunReport, n: usize, cyclic: bool, eval: Option<&str>) -> Result<Value> {
    let p = if cyclic { cyclic_fib_poly(n) } else { fib_poly(n) };
    let closed = if cyclic { cyclic_fib_closed_form(n) } else { fib_closed_form(n) };
    match closed {
        Ok(c) => r.verdict("closed_form", Verdict::of(c == p)),
        Err(Error::CapExceeded { .. }) => r.verdict("closed_form", Verdict::Skipped),
        Err(e) => return Err(e),
    }
    r.measure("terms", p.len());
    r.measure("enumeration_cap", ENUMERATION_CAP);
    let mut out = json!({ "n": n, "cyclic": cyclic, "poly": p.to_string() });
    if let Some(vals) = eval {
        let vals = vals.split(',').map(|s| parse_rat(s.trim())).collect::<Result<Vec<_>>>()?;
        if vals.len() != n {
            return Err(Error::Invalid(format!("--eval needs {n} values, got {}", vals.len())));
        }
        let map: BTreeMap<Var, Rat> = vals.into_iter().enumerate().map(|(i, v)| (i as Var + 1, v)).collect();
        out["value"] = json!(p.substitute_rat(&map).to_string());
    }
    Ok(out)
}

fn run_command(cli: &Cli, r: &mut RunReport) -> Result<Value> {
    match &cli.command {
        Command::Compile2 { formula, alpha, check, planar, recover, fib } => {
            cmd_compile2(r, formula, alpha, *check, *planar, *recover, *fib)
        }
        Command::Compile3 { formula, emit } => cmd_compile3(r, formula, *emit),
        Command::Ryser { n, stage } => {
            let st = RyserStage::from_name(stage).ok_or_else(|| Error::Invalid(format!("unknown stage {stage}")))?;
            let h = ryser_hypercube_permanent(*n, st)?;
            check_hypercube(r, &h, &permanent(*n), false);
            Ok(serde_json::to_value(HypercubeJson::from_sum(&h)).unwrap())
        }
        Command::Vnp1 { formula, two_variable, eliminate } => {
            let (text, f) = load_formula(formula)?;
            *r = RunReport::new(r.command.clone(), &text);
            let p = boc_compile(&f);
            let (h, layout) = width3_to_vnp1(&p, *two_variable)?;
            r.measure("path_bits", layout.path_bit_count());
            r.measure("max_vars_per_factor", crate::hypercube::max_vars_per_factor(&h));
            r.verdict("affine", Verdict::of(h.is_affine()));
            check_hypercube(r, &h, &width3_value(&p), *eliminate);
            Ok(serde_json::to_value(HypercubeJson::from_sum(&h)).unwrap())
        }
        Command::Fib { n, cyclic, eval } => cmd_fib(r, *n, *cyclic, eval.as_deref()),
        Command::VerifyF4 => {
            let ok = verify_f4_identity();
            r.verdict("f4_identity", Verdict::of(ok));
            Ok(json!({ "f4_identity": ok }))
        }
        Command::Planarize { program } => {
            let text = read_input(&program.to_string_lossy())?;
            *r = RunReport::new(r.command.clone(), &text);
            let q: QProgram = QProgramJson::parse(&text)?.to_program()?;
            let one = [EpsScalar::one(), EpsScalar::zero()];
            let abp = planarize(&q, one.clone(), one)?;
            r.verdict("planar", Verdict::of(abp.matrices.iter().all(is_planar_layer)));
            match program_value_within(&q, env_cap(ENV_TERM_BUDGET, EXACT_BUDGET)) {
                Ok(v) => r.verdict("value", Verdict::of(abp_value(&abp)? == *v.get(0, 0))),
                Err(_) => r.verdict("value", Verdict::Skipped),
            }
            Ok(serde_json::to_value(AbpJson::from_abp(&abp)).unwrap())
        }
        Command::Ladder { form } => {
            let l = AffineForm::parse(&read_input(form)?)?;
            let abp = linear_ladder(&l)?;
            r.verdict("weakest", Verdict::of(abp_validate(&abp, LabelClass::Weakest).is_valid()));
            r.verdict("value", Verdict::of(abp_value(&abp)? == l.to_mpoly()));
            Ok(serde_json::to_value(AbpJson::from_abp(&abp)).unwrap())
        }
    }
}

/// Runs a parsed command and returns the report with the artifact.
pub fn execute(cli: &Cli, echo: String) -> Result<(RunReport, Value)> {
    let start = Instant::now();
    let mut r = RunReport::new(echo.clone(), &echo);
    let out = run_command(cli, &mut r)?;
    r.output = cli.out.clone();
    r.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((r, out))
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let args: Vec<OsString> = args.into_iter().collect();
    let echo = args.iter().map(|a| a.to_string_lossy()).collect::<Vec<_>>().join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli, echo) {
        Ok((report, artifact)) => {
            let text = serde_json::to_string_pretty(&artifact).unwrap();
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: {}: {e}", p.display());
                        return EXIT_ERROR;
                    }
                }
                None => println!("{text}"),
            }
            eprintln!("{}", serde_json::to_string_pretty(&report).unwrap());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::CapExceeded { .. }) {
                EXIT_CAP
            } else {
                EXIT_ERROR
            }
        }
    }
}
