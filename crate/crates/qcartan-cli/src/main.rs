//! `qcartan`: tables, quivers, torus checks, compatible pairs and the
//! verification suites from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use qcartan::pairs::pair_matrices;
use qcartan::quiver::parse_height;
use qcartan::suites::{self, Outcome, RunOptions, Suite};
use qcartan::tcartan::{inverse_via_eta, TildeBTable};
use qcartan::torus::wt_q;
use qcartan::weyl::{hasse_quiver, parse_word};
use qcartan::{build_datum, CartanDatum, CartanType, DynkinQuiver, RepVertex, Torus};

#[derive(Parser)]
#[command(name = "qcartan", version, about = "Inverse quantum Cartan matrices, AR-quivers and quantum tori")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled quivers and random words.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of the inverse t-quantized Cartan matrix.
    Tables(TablesArgs),
    /// AR-quiver, repetition quiver window or Hasse quiver.
    Quiver(QuiverArgs),
    /// Quantum torus checks and element evaluation.
    Torus(TorusArgs),
    /// The pair (Lambda, B) of an index sequence.
    Pair(PairArgs),
    /// Run verification suites; exit status 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Delta,
    Tfb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Ar,
    Rep,
    Hasse,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorusCheck {
    #[value(name = "calN")]
    CalN,
    Nnkr,
    Ya,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long = "type")]
    ty: CartanType,
    #[arg(long, value_enum, default_value = "delta")]
    what: What,
    /// Largest degree for `--what tfb` (default 2h).
    #[arg(long)]
    max_u: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct QuiverArgs {
    #[arg(long = "type")]
    ty: CartanType,
    /// Comma list, `linear` or `sink-source`.
    #[arg(long, default_value = "linear")]
    height: String,
    #[arg(long, value_enum, default_value = "ar")]
    emit: Emit,
    /// `lo,hi` for `--emit rep` (default one period around the heights).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TorusArgs {
    #[arg(long = "type")]
    ty: CartanType,
    #[arg(long, default_value = "linear")]
    height: String,
    #[arg(long, value_enum)]
    check: Option<TorusCheck>,
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Element literal such as `q^1*X[1,1] + q^-1*X[1,7]^-1`.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long = "type")]
    ty: CartanType,
    /// Comma-separated 1-based letters.
    #[arg(long)]
    word: String,
    /// Exit with status 1 unless the pair is compatible.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "type")]
    ty: CartanType,
    /// Suites to run (default: all).
    #[arg(long, value_delimiter = ',')]
    suite: Vec<Suite>,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    height: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Number of sampled quivers per quiver-based suite.
    #[arg(long, default_value_t = 3)]
    quivers: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once(',')
        .with_context(|| format!("window `{s}` is not `lo,hi`"))?;
    let lo: i64 = a.trim().parse().with_context(|| format!("bad window bound `{a}`"))?;
    let hi: i64 = b.trim().parse().with_context(|| format!("bad window bound `{b}`"))?;
    if lo > hi {
        bail!("empty window {lo},{hi}");
    }
    Ok((lo, hi))
}

fn quiver(dt: &CartanDatum, height: &str) -> Result<DynkinQuiver> {
    let xi = parse_height(dt, height)?;
    Ok(DynkinQuiver::new(dt.clone(), xi)?)
}

fn table_for(dt: &CartanDatum) -> Result<TildeBTable> {
    Ok(inverse_via_eta(&quiver(dt, "linear")?))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn coords(v: &qcartan::LatticeVec) -> String {
    v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn run_tables(a: &TablesArgs) -> Result<String> {
    let dt = build_datum(a.ty);
    let tb = table_for(&dt)?;
    let max_u = match a.what {
        What::Delta => None,
        What::Tfb => Some(a.max_u.unwrap_or(2 * dt.h)),
    };
    match a.format {
        Format::Json => Ok(pretty(&tb.to_json(max_u))),
        Format::Csv => {
            let mut s = String::from("i,j,u,coef\n");
            for i in 0..dt.n {
                for j in 0..dt.n {
                    let row = match max_u {
                        None => tb.delta[i][j].clone(),
                        Some(m) => tb.series(i, j, m),
                    };
                    for (u, c) in row.iter().enumerate() {
                        writeln!(s, "{},{},{u},{c}", i + 1, j + 1)?;
                    }
                }
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = format!("type {} h={}\n", a.ty, dt.h);
            for i in 0..dt.n {
                for j in 0..dt.n {
                    match max_u {
                        None => writeln!(s, "delta[{},{}] = {}", i + 1, j + 1, tb.delta_poly(i, j))?,
                        Some(m) => writeln!(s, "b[{},{}] = {:?}", i + 1, j + 1, tb.series(i, j, m))?,
                    }
                }
            }
            Ok(s)
        }
        Format::Dot => bail!("tables support json, csv and text"),
    }
}

fn run_quiver(a: &QuiverArgs) -> Result<String> {
    let dt = build_datum(a.ty);
    let q = quiver(&dt, &a.height)?;
    let (verts, arrows): (Vec<(RepVertex, String)>, Vec<(RepVertex, RepVertex, i64)>) = match a.emit {
        Emit::Ar => {
            let ar = q.ar_quiver();
            if a.format == Format::Dot {
                return Ok(ar.to_dot());
            }
            let v = ar.vertices.iter().map(|(v, r)| (*v, coords(r))).collect();
            (v, ar.arrows.clone())
        }
        Emit::Rep => {
            let (lo, hi) = match &a.window {
                Some(w) => parse_window(w)?,
                None => suites::window(&q, 1),
            };
            let mut v = Vec::new();
            for p in (lo..=hi).rev() {
                for i in 0..dt.n {
                    if q.valid(i, p) {
                        let x = q.phi(i, p)?;
                        v.push((RepVertex::new(i, p), format!("{} @{}", coords(&x.root), x.level)));
                    }
                }
            }
            let mut arr = Vec::new();
            for (s, _) in &v {
                for j in dt.neighbors(s.i) {
                    let t = RepVertex::new(j, s.p + 1);
                    if t.p <= hi {
                        arr.push((*s, t, -dt.c[s.i][j]));
                    }
                }
            }
            (v, arr)
        }
        Emit::Hasse => {
            let w = q.longest_word();
            let hq = hasse_quiver(&dt, &w)?;
            let pos = q.adapted_positions(&w)?;
            let v = pos.iter().zip(&hq.vertices).map(|(p, r)| (*p, coords(r))).collect();
            let arr = hq.arrows.iter().map(|&(s, t, m)| (pos[s], pos[t], m)).collect();
            (v, arr)
        }
    };
    match a.format {
        Format::Json => {
            let vs: Vec<_> = verts
                .iter()
                .map(|(v, l)| json!({"i": v.i + 1, "p": v.p, "label": l}))
                .collect();
            let es: Vec<_> = arrows
                .iter()
                .map(|(s, t, m)| json!({"from": [s.i + 1, s.p], "to": [t.i + 1, t.p], "mult": m}))
                .collect();
            Ok(pretty(&json!({"type": a.ty.to_string(), "xi": q.xi, "vertices": vs, "arrows": es})))
        }
        Format::Dot => {
            let mut s = String::from("digraph q {\n  rankdir=LR;\n");
            for (v, l) in &verts {
                writeln!(s, "  \"{}_{}\" [label=\"{v}: {l}\"];", v.i + 1, v.p)?;
            }
            for (x, y, m) in &arrows {
                let attr = if *m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
                writeln!(s, "  \"{}_{}\" -> \"{}_{}\"{attr};", x.i + 1, x.p, y.i + 1, y.p)?;
            }
            s.push_str("}\n");
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            for (v, l) in &verts {
                writeln!(s, "{v}: {l}")?;
            }
            for (x, y, m) in &arrows {
                writeln!(s, "{x} -> {y} x{m}")?;
            }
            Ok(s)
        }
        Format::Csv => bail!("quivers support json, dot and text"),
    }
}

fn report(outcomes: &[Outcome], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let rows: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "suite": o.suite.name(),
                        "case": o.case,
                        "checked": o.checked,
                        "passed": o.passed(),
                        "failure": o.failure,
                    })
                })
                .collect();
            let all = outcomes.iter().all(Outcome::passed);
            Ok(pretty(&json!({"passed": all, "outcomes": rows})))
        }
        Format::Text => Ok(outcomes.iter().map(|o| format!("{o}\n")).collect()),
        _ => bail!("reports support json and text"),
    }
}

fn run_torus(a: &TorusArgs) -> Result<(String, bool)> {
    let dt = build_datum(a.ty);
    let q = quiver(&dt, &a.height)?;
    let t = Torus::for_quiver(&q);
    if let Some(lit) = &a.element {
        let e = t.parse_element(lit)?;
        let bar = t.bar(&e);
        let weights: Vec<String> = e.supports().iter().map(|m| coords(&wt_q(&q, m))).collect();
        let invariant = bar == e;
        let out = match a.format {
            Format::Json => pretty(&json!({
                "element": e.to_string(),
                "bar": bar.to_string(),
                "bar_invariant": invariant,
                "weights": weights,
            })),
            Format::Text => format!(
                "element: {e}\nbar: {bar}\nbar-invariant: {invariant}\nweights: {}\n",
                weights.join(" | ")
            ),
            _ => bail!("torus output supports json and text"),
        };
        return Ok((out, true));
    }
    let check = a.check.context("torus needs --check or --element")?;
    let win = a.window.as_deref().map(parse_window).transpose()?;
    let o = match check {
        TorusCheck::CalN => {
            let (lo, hi) = win.unwrap_or_else(|| suites::window(&q, 4));
            suites::cal_n(&q, &t, lo, hi)
        }
        TorusCheck::Nnkr => suites::nnkr(&q, &t),
        TorusCheck::Ya => {
            let (lo, hi) = win.unwrap_or_else(|| suites::window(&q, 2));
            suites::ya(&q, &t, lo, hi)
        }
    };
    let ok = o.passed();
    Ok((report(&[o], a.format)?, ok))
}

fn run_pair(a: &PairArgs) -> Result<(String, bool)> {
    let dt = build_datum(a.ty);
    let w = parse_word(&a.word, dt.n)?;
    let pm = pair_matrices(&dt, &w)?;
    let compatible = pm.check_compatible();
    // The other normalization: Lambda B = +2 d delta.
    let product = pm.product();
    let positive = pm
        .index
        .je
        .iter()
        .enumerate()
        .all(|(c, &s)| (0..w.len()).all(|k| product[k][c] == if k == s { 2 * pm.d_col[c] } else { 0 }));
    let columns: Vec<usize> = pm.index.je.iter().map(|s| s + 1).collect();
    let out = match a.format {
        Format::Json => pretty(&json!({
            "type": a.ty.to_string(),
            "word": w.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "columns": columns,
            "lambda": pm.lambda,
            "b": pm.b,
            "product_diag": pm.product_diag(),
            "compatible": compatible,
            "compatible_positive_normalization": positive,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "lambda:")?;
            for row in &pm.lambda {
                writeln!(s, "  {row:?}")?;
            }
            writeln!(s, "b (columns {columns:?}):")?;
            for row in &pm.b {
                writeln!(s, "  {row:?}")?;
            }
            writeln!(s, "product diagonal: {:?}", pm.product_diag())?;
            writeln!(s, "compatible (-2d): {compatible}")?;
            writeln!(s, "compatible (+2d): {positive}")?;
            s
        }
        _ => bail!("pair output supports json and text"),
    };
    Ok((out, !a.check || compatible))
}

fn run_verify(a: &VerifyArgs, seed: u64) -> Result<(String, bool)> {
    let dt = build_datum(a.ty);
    let opts = RunOptions {
        quivers: a.quivers,
        seed,
        word: a.word.as_deref().map(|w| parse_word(w, dt.n)).transpose()?,
        height: a.height.as_deref().map(|h| parse_height(&dt, h)).transpose()?,
        window: a.window.as_deref().map(parse_window).transpose()?,
    };
    let selected: Vec<Suite> = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite.clone()
    };
    // With no explicit selection, skip suites that do not apply to the type.
    let explicit = !a.suite.is_empty();
    let results: Vec<Result<Vec<Outcome>>> = selected
        .par_iter()
        .map(|&s| match suites::run(s, a.ty, &opts) {
            Err(qcartan::Error::Unsupported(_)) if !explicit => Ok(Vec::new()),
            r => r.map_err(anyhow::Error::from),
        })
        .collect();
    let mut outcomes = Vec::new();
    for r in results {
        outcomes.extend(r?);
    }
    let ok = outcomes.iter().all(Outcome::passed);
    let mut out = report(&outcomes, a.format)?;
    if a.format == Format::Text {
        let failed = outcomes.iter().filter(|o| !o.passed()).count();
        writeln!(out, "{}: {} cases, {failed} failed", if ok { "PASS" } else { "FAIL" }, outcomes.len())?;
    }
    Ok((out, ok))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("QCARTAN_THREADS") {
        match n.parse::<usize>() {
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) => {
                eprintln!("error: QCARTAN_THREADS must be a number, got `{n}`");
                return ExitCode::from(2);
            }
        }
    }
    let res = match &cli.cmd {
        Command::Tables(a) => run_tables(a).map(|s| (s, true)),
        Command::Quiver(a) => run_quiver(a).map(|s| (s, true)),
        Command::Torus(a) => run_torus(a),
        Command::Pair(a) => run_pair(a),
        Command::Verify(a) => run_verify(a, cli.seed),
    };
    match res.and_then(|(text, ok)| emit(&cli.out, &text).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
