//! `tamesym`: command-line access to the log-volume-form checks.
//!
//! Exit codes: 0 when the command ran and its checks held, 1 for bad input,
//! 2 when the two verdicts disagree or a self-check invariant fails.

mod report;
mod selfcheck;

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use tamesym::analysis::{classify_case, prop6_verify_with};
use tamesym::arith::factor;
use tamesym::expr::{parse_form, parse_map, parse_rational_function};
use tamesym::geom::{intersection_cycle_with_retries, principal_divisor, Curve, Intersector};
use tamesym::ktheory::{equals, tame_of_functions, tame_symbol_with};
use tamesym::symplectic::{fiber_count_with_redraws, gen_corpus, is_symplectic_form, FormKind, RationalMap};
use tamesym::{Shear, ZeroCycle};

use report::*;

#[derive(Parser)]
#[command(name = "tamesym", version, about = "Decide whether a rational map of the plane preserves dx/x ∧ dy/y")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the coordinate shear and every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Jacobian test and the tame-symbol test on a map `(f, g)`.
    Check {
        /// Map text such as "(x*y, y)", or "-" for stdin.
        map: String,
        /// Also count fibers at this many random targets.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Tame symbol of `div f` and `div g`.
    Tame { f: String, g: String },
    /// Principal divisor of a rational function on P^2.
    Divisor { f: String },
    /// Intersection cycle of two plane curves given by forms in X, Y, Z.
    Intersect { c: String, d: String },
    /// Generic fiber counts of a map at seeded random targets.
    Fibers {
        map: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Print a seeded corpus, one map per line with its expected label.
    Corpus {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Run the invariant suite on seeded random inputs.
    Selfcheck {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
}

/// Failure classes, mapped to exit codes in `main`.
enum Failure {
    Input(anyhow::Error),
    Check(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.into())
    }
}

struct Session {
    json: bool,
    seed: u64,
    timings: bool,
    stdin_used: bool,
}

impl Session {
    fn shear(&self) -> Shear {
        Shear::from_seed(self.seed)
    }

    /// The argument itself, or standard input for "-" (once).
    fn text(&mut self, arg: &str) -> Result<String> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin_used {
            bail!("standard input can be read only once");
        }
        self.stdin_used = true;
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s.trim().to_string())
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        let out = if self.json {
            serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
        } else {
            text()
        };
        // a closed pipe (`| head`) is not worth a panic
        let _ = std::io::stdout().lock().write_all(out.as_bytes());
    }
}

fn map_echo(phi: &RationalMap) -> [String; 2] {
    [phi.f().to_string(), phi.g().to_string()]
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn fibers_out(phi: &RationalMap, seed: u64, trials: usize, shear: &Shear) -> Result<Vec<FiberOut>> {
    let rows = fiber_count_with_redraws(phi, seed, trials, shear)?;
    Ok(rows
        .into_iter()
        .map(|((a, b), fc, redraws)| FiberOut {
            target: [a.to_string(), b.to_string()],
            count: fc.count,
            generic: fc.is_generic(),
            redraws,
        })
        .collect())
}

fn fibers_text(rows: &[FiberOut]) -> String {
    rows.iter()
        .map(|r| {
            let flag = if r.generic { "" } else { " (not generic)" };
            format!("  ({}, {}) -> {}{flag}\n", r.target[0], r.target[1], r.count)
        })
        .collect()
}

fn divisor_text(d: &[DivisorTerm]) -> String {
    let parts: Vec<String> = d.iter().map(|t| format!("{}: {}", t.curve, t.multiplicity)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn tame_text(t: &[TameComponent], zs: &[ZeroCycle]) -> String {
    if t.is_empty() {
        return "  0\n".into();
    }
    t.iter().zip(zs).map(|(c, z)| format!("  {}: {z}\n", c.label)).collect()
}

fn cmd_check(s: &mut Session, map: &str, trials: Option<usize>) -> Result<(), Failure> {
    let phi = parse_map(&s.text(map)?)?;
    let shear = s.shear();
    let t0 = Instant::now();
    let form = is_symplectic_form(&phi)?;
    let t_form = ms(t0);
    let t1 = Instant::now();
    let mut ix = Intersector::new(&shear);
    let tame = tame_of_functions(&mut ix, phi.f(), phi.g())?;
    let reference = tame_of_functions(&mut ix, &tamesym::RationalFunction::x(), &tamesym::RationalFunction::y())
        ?;
    let k2 = equals(&tame, &reference)?;
    let t_k2 = ms(t1);
    let d = principal_divisor(phi.f())?;
    let e = principal_divisor(phi.g())?;
    let prop6 = if k2 {
        Some(Prop6Out::from(&prop6_verify_with(&mut ix, &phi)?))
    } else {
        None
    };
    let fibers = trials.map(|n| fibers_out(&phi, s.seed, n, &shear)).transpose()?;
    let agreement = (form.kind == FormKind::Preserves) == k2;
    let zs: Vec<ZeroCycle> = tame.components().map(|(_, z)| z.clone()).collect();
    let report = CheckReport {
        map: map_echo(&phi),
        form_verdict: form.kind.to_string(),
        ratio: form.ratio.to_string(),
        k2_verdict: k2,
        agreement,
        divisor_f: divisor_out(&d),
        divisor_g: divisor_out(&e),
        tame: tame_out(&tame),
        case: classify_case(&d, &e).to_string(),
        prop6,
        fibers,
        seed: s.seed,
        timings_ms: s.timings.then(|| Timings {
            form: t_form,
            k2: t_k2,
            total: ms(t0),
        }),
    };
    s.emit(&report, || {
        let mut out = format!(
            "map: ({}, {})\nform: {}\nratio: {}\nk2: {}\nagreement: {}\ndiv f: {}\ndiv g: {}\ntame:\n{}case: {}\n",
            report.map[0],
            report.map[1],
            report.form_verdict,
            report.ratio,
            report.k2_verdict,
            report.agreement,
            divisor_text(&report.divisor_f),
            divisor_text(&report.divisor_g),
            tame_text(&report.tame, &zs),
            report.case,
        );
        if let Some(p) = &report.prop6 {
            out += &format!(
                "base-locus check: hypotheses {}, conclusion {}{}\n",
                if p.hypotheses_hold { "hold" } else { "fail" },
                if p.conclusion_holds { "holds" } else { "fails" },
                if p.violation { " (violation)" } else { "" }
            );
        }
        if let Some(rows) = &report.fibers {
            out += &format!("fibers:\n{}", fibers_text(rows));
        }
        out += &format!("seed: {}\n", report.seed);
        if let Some(t) = &report.timings_ms {
            out += &format!("time: form {:.1} ms, k2 {:.1} ms, total {:.1} ms\n", t.form, t.k2, t.total);
        }
        out
    });
    if agreement {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "the Jacobian test says {} but the tame-symbol test says {k2}",
            report.form_verdict
        )))
    }
}

#[derive(Serialize)]
struct TameReport {
    f: String,
    g: String,
    tame: Vec<TameComponent>,
    seed: u64,
}

fn cmd_tame(s: &mut Session, f: &str, g: &str) -> Result<(), Failure> {
    let f = parse_rational_function(&s.text(f)?)?;
    let g = parse_rational_function(&s.text(g)?)?;
    let (d, e) = (principal_divisor(&f)?, principal_divisor(&g)?);
    let t = tame_symbol_with(&mut Intersector::new(&s.shear()), &d, &e)?;
    let zs: Vec<ZeroCycle> = t.components().map(|(_, z)| z.clone()).collect();
    let report = TameReport {
        f: f.to_string(),
        g: g.to_string(),
        tame: tame_out(&t),
        seed: s.seed,
    };
    s.emit(&report, || tame_text(&report.tame, &zs));
    Ok(())
}

#[derive(Serialize)]
struct DivisorReport {
    function: String,
    divisor: Vec<DivisorTerm>,
}

fn cmd_divisor(s: &mut Session, f: &str) -> Result<(), Failure> {
    let f = parse_rational_function(&s.text(f)?)?;
    let d = principal_divisor(&f)?;
    let report = DivisorReport {
        function: f.to_string(),
        divisor: divisor_out(&d),
    };
    s.emit(&report, || format!("{d}\n"));
    Ok(())
}

#[derive(Serialize)]
struct IntersectReport {
    c: String,
    d: String,
    cycle: Vec<CycleTerm>,
    degree: i64,
    shear_retries: usize,
    seed: u64,
}

/// Irreducible components of a form, with multiplicities.
fn components(form: &tamesym::Poly) -> Result<Vec<(Curve, i64)>> {
    let fz = factor(form)?;
    fz.factors
        .iter()
        .map(|(p, m)| Ok((Curve::new(p)?, *m as i64)))
        .collect()
}

fn cmd_intersect(s: &mut Session, c: &str, d: &str) -> Result<(), Failure> {
    let c = parse_form(&s.text(c)?)?;
    let d = parse_form(&s.text(d)?)?;
    if c.is_constant() || d.is_constant() {
        return Err(anyhow!("both forms must be nonconstant").into());
    }
    let shear = s.shear();
    let mut cycle = ZeroCycle::zero();
    let mut retries = 0;
    for (a, m) in components(&c)? {
        for (b, n) in components(&d)? {
            let i = intersection_cycle_with_retries(&a, &b, &shear)
                .with_context(|| format!("curves {a} and {b}"))?;
            retries += i.retries;
            cycle.add_assign(&i.cycle.scale(m * n));
        }
    }
    let report = IntersectReport {
        c: c.to_string(),
        d: d.to_string(),
        cycle: cycle_out(&cycle),
        degree: cycle.degree(),
        shear_retries: retries,
        seed: s.seed,
    };
    s.emit(&report, || format!("{cycle}\n"));
    Ok(())
}

#[derive(Serialize)]
struct FibersReport {
    map: [String; 2],
    fibers: Vec<FiberOut>,
    seed: u64,
}

fn cmd_fibers(s: &mut Session, map: &str, trials: usize) -> Result<(), Failure> {
    let phi = parse_map(&s.text(map)?)?;
    let rows = fibers_out(&phi, s.seed, trials, &s.shear())?;
    let report = FibersReport {
        map: map_echo(&phi),
        fibers: rows,
        seed: s.seed,
    };
    s.emit(&report, || fibers_text(&report.fibers));
    Ok(())
}

fn cmd_corpus(s: &mut Session, count: usize, max_degree: u32) -> Result<(), Failure> {
    if max_degree == 0 {
        return Err(anyhow!("--max-degree must be positive").into());
    }
    let lines: Vec<CorpusLine> = gen_corpus(s.seed, count, max_degree)
        .into_iter()
        .map(|e| CorpusLine {
            map: map_echo(&e.map),
            expected: e.expected,
            recipe: e.recipe,
        })
        .collect();
    s.emit(&lines, || {
        lines
            .iter()
            .map(|l| {
                let label = if l.expected { "symplectic" } else { "non-symplectic" };
                format!("({}, {})\t{label}\t{}\n", l.map[0], l.map[1], l.recipe)
            })
            .collect()
    });
    Ok(())
}

fn cmd_selfcheck(s: &mut Session, trials: usize, max_degree: u32) -> Result<(), Failure> {
    let report = selfcheck::run(s.seed, trials, max_degree.max(1));
    s.emit(&report, || {
        let mut out = String::new();
        for t in &report.invariants {
            let verdict = if t.failed == 0 { "ok" } else { "FAIL" };
            out += &format!("{verdict:4} {:<28} {} passed, {} failed\n", t.name, t.passed, t.failed);
            for f in &t.failures {
                out += &format!("     {f}\n");
            }
        }
        out
    });
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check("some invariants failed".into()))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut s = Session {
        json: cli.json,
        seed: cli.seed,
        timings: cli.timings,
        stdin_used: false,
    };
    match cli.command {
        Command::Check { map, trials } => cmd_check(&mut s, &map, trials),
        Command::Tame { f, g } => cmd_tame(&mut s, &f, &g),
        Command::Divisor { f } => cmd_divisor(&mut s, &f),
        Command::Intersect { c, d } => cmd_intersect(&mut s, &c, &d),
        Command::Fibers { map, trials } => cmd_fibers(&mut s, &map, trials),
        Command::Corpus { count, max_degree } => cmd_corpus(&mut s, count, max_degree),
        Command::Selfcheck { trials, max_degree } => cmd_selfcheck(&mut s, trials, max_degree),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(cli);
    match &outcome {
        Ok(()) => {}
        Err(Failure::Input(e)) => eprintln!("error: {e:#}"),
        Err(Failure::Check(msg)) => eprintln!("check failed: {msg}"),
    }
    ExitCode::from(exit_code(&outcome))
}

fn exit_code(outcome: &Result<(), Failure>) -> u8 {
    match outcome {
        Ok(()) => 0,
        Err(Failure::Input(_)) => 1,
        Err(Failure::Check(_)) => 2,
    }
}
