//! `omegadr`: reductions in `Omega^1_R / dR`, cocycle values, commutation
//! tables and verification suites from the command line.
//!
//! [`run`] does all the work and returns the text for both streams plus the
//! exit code, so tests can drive it without spawning a process.

pub mod verify;

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use omegadr_core::families::{gegenbauer_series, qk_fourpoint_poly};
use omegadr_core::omega::{oracle_reduce, Window};
use omegadr_core::poly::{polys_to_csv, Poly};
use omegadr_core::rational::{frac, q};
use omegadr_core::text::parse_t_polynomial;
use omegadr_core::{
    basis_of, cocycle_gamma, commutation_table, dimension_report, independence_certificate,
    parse_element, parse_rational, poly_seq, preset_curve, reduce_mod_dr, CurveSpec, DiffClass,
    Expression, FourPointParam, LieData, PolySeqSpec, PresetId, Rational,
};
use serde_json::json;

pub use omegadr_core::parse_expression;
pub use verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "omegadr", version, about = "Exact Omega^1/dR computations for u^m = p(t)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Elliptic,
    Djkm,
    Threepoint,
    Fourpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    PollaczekP,
    PollaczekQ,
    Gegenbauer,
    FourpointQ,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational of the form p or p/q"))
}

fn window_arg(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok(Window::new(lo, hi))
}

/// `N` for `-N..=N`, or `LO:HI`.
fn range_arg(s: &str) -> Result<(i64, i64), String> {
    match s.split_once(':') {
        Some((lo, hi)) => {
            let lo = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
            let hi = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
            Ok((lo, hi))
        }
        None => {
            let n: i64 = s.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
            if n < 0 {
                return Err("range N must be >= 0".into());
            }
            Ok((-n, n))
        }
    }
}

/// Either `--m` with `--p`, or `--preset` with its parameters.
#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Exponent of u in u^m = p(t).
    #[arg(long = "m", conflicts_with = "preset", requires = "p")]
    pub m: Option<i64>,
    /// Monic p(t), e.g. "t^3-t^2+t".
    #[arg(long = "p", conflicts_with = "preset", requires = "m", allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, value_enum)]
    pub preset: Option<PresetName>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    /// 4-point parameter a, giving b = (a+1)/(a-1).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, conflicts_with = "b")]
    pub a: Option<Rational>,
}

impl CurveArgs {
    pub fn is_given(&self) -> bool {
        self.m.is_some() || self.preset.is_some()
    }

    pub fn resolve(&self) -> Result<CurveSpec, String> {
        if let (Some(m), Some(p)) = (self.m, &self.p) {
            let coeffs = parse_t_polynomial(p).map_err(|e| format!("--p: {e}"))?;
            return CurveSpec::new(m, coeffs).map_err(|e| e.to_string());
        }
        let need = |v: &Option<Rational>, flag: &str, name: &str| {
            v.clone().ok_or_else(|| format!("--preset {name} requires --{flag}"))
        };
        let id = match self.preset {
            None => return Err("a curve is required: give --m and --p, or --preset".into()),
            Some(PresetName::Elliptic) => PresetId::Elliptic(need(&self.b, "b", "elliptic")?),
            Some(PresetName::Djkm) => {
                PresetId::Djkm(need(&self.b, "b", "djkm")?, need(&self.c, "c", "djkm")?)
            }
            Some(PresetName::Threepoint) => PresetId::ThreePoint,
            Some(PresetName::Fourpoint) => match (&self.b, &self.a) {
                (Some(b), None) => PresetId::FourPoint(FourPointParam::B(b.clone())),
                (None, Some(a)) => PresetId::FourPoint(FourPointParam::A(a.clone())),
                _ => return Err("--preset fourpoint requires exactly one of --b, --a".into()),
            },
        };
        preset_curve(&id).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the basis of Omega^1/dR.
    Basis {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Reduce a differential to basis coordinates.
    Reduce {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Use the window oracle on LO:HI instead of the rewriter.
        #[arg(long, value_parser = window_arg, allow_hyphen_values = true)]
        window: Option<Window>,
    },
    /// Evaluate the cocycle class of f dg.
    Cocycle {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Commutation table [x (x) t^i u^a, y (x) t^j u^b].
    Table {
        #[command(flatten)]
        curve: CurveArgs,
        /// `sl2` or `file:PATH` with structure constants.
        #[arg(long, default_value = "sl2")]
        lie: String,
        /// N for -N..N, or LO:HI.
        #[arg(long, default_value = "2", value_parser = range_arg, allow_hyphen_values = true)]
        range: (i64, i64),
        /// Comma-separated u-grades.
        #[arg(long, default_value = "0", value_delimiter = ',')]
        grades: Vec<u32>,
    },
    /// Run the seeded verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
    },
    /// Show a preset curve, or a polynomial family as CSV.
    Preset {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum)]
        seq: Option<SeqName>,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// Certified dimension next to the genus/puncture formulas.
    Dims {
        #[command(flatten)]
        curve: CurveArgs,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn data(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: 0 }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 2 }
    }

    fn failed(stdout: String, msg: impl Into<String>) -> Self {
        Output { stdout, stderr: msg.into(), code: 1 }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn class_out(class: &DiffClass, format: Format) -> String {
    match format {
        Format::Json => pretty(&class.to_json()),
        Format::Text => format!("{class}\n"),
    }
}

pub fn run(cli: &Cli) -> Output {
    let format = cli.format;
    match &cli.command {
        Command::Basis { curve } => with_curve(curve, |c| basis_cmd(&c, format)),
        Command::Reduce { curve, expr, window } => {
            with_curve(curve, |c| reduce_cmd(&c, expr, *window, format))
        }
        Command::Cocycle { curve, f, g } => with_curve(curve, |c| {
            let f = match parse_element(f, &c) {
                Ok(f) => f,
                Err(e) => return Output::usage(format!("--f: {e}")),
            };
            let g = match parse_element(g, &c) {
                Ok(g) => g,
                Err(e) => return Output::usage(format!("--g: {e}")),
            };
            Output::data(class_out(&cocycle_gamma(&f, &g, &c), format))
        }),
        Command::Table { curve, lie, range, grades } => {
            with_curve(curve, |c| table_cmd(&c, lie, *range, grades, format))
        }
        Command::Verify { suite, seed } => verify_cmd(*suite, *seed, format),
        Command::Preset { curve, seq, k_max } => match seq {
            Some(seq) => seq_cmd(*seq, *k_max, format),
            None => with_curve(curve, |c| preset_cmd(&c, format)),
        },
        Command::Dims { curve } => with_curve(curve, |c| {
            let report = dimension_report(&c);
            let value = serde_json::to_value(&report).expect("report serializes");
            match format {
                Format::Json => Output::data(pretty(&value)),
                Format::Text => Output::data(key_values(&value)),
            }
        }),
    }
}

fn with_curve(args: &CurveArgs, f: impl FnOnce(CurveSpec) -> Output) -> Output {
    match args.resolve() {
        Ok(c) => f(c),
        Err(e) => Output::usage(e),
    }
}

/// `key: value` lines for a flat JSON object.
fn key_values(v: &serde_json::Value) -> String {
    let Some(obj) = v.as_object() else { return format!("{v}\n") };
    let width = obj.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in obj {
        let shown = match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {shown}\n"));
    }
    out
}

fn basis_cmd(c: &CurveSpec, format: Format) -> Output {
    let basis = basis_of(c);
    let cert = independence_certificate(c);
    let labels: Vec<String> = basis.iter().map(|l| l.to_string()).collect();
    let reps: Vec<String> = basis
        .iter()
        .map(|l| DiffClass::single(*l, q(1)).representative().to_string())
        .collect();
    let stdout = match format {
        Format::Json => pretty(&json!({
            "curve": c.summary(),
            "dimension": basis.len(),
            "basis": labels,
            "representatives": reps,
            "certificate": cert.pass,
        })),
        Format::Text => {
            let width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
            labels
                .iter()
                .zip(&reps)
                .map(|(l, r)| format!("{l:<width$}  {r}\n"))
                .collect()
        }
    };
    if cert.pass {
        Output::data(stdout)
    } else {
        Output::failed(stdout, "independence certificate failed\n")
    }
}

fn reduce_cmd(c: &CurveSpec, expr: &str, window: Option<Window>, format: Format) -> Output {
    let w = match parse_expression(expr, c) {
        Ok(Expression::Differential(w)) => w,
        Ok(Expression::Element(_)) => {
            return Output::usage("--expr must be a differential (use dt, du or d(...))")
        }
        Err(e) => return Output::usage(format!("--expr: {e}")),
    };
    let class = match window {
        None => reduce_mod_dr(&w, c),
        Some(win) => match oracle_reduce(&w, c, win) {
            Ok(class) => class,
            Err(e) => return Output::failed(String::new(), format!("{e}\n")),
        },
    };
    Output::data(class_out(&class, format))
}

fn load_lie(spec: &str) -> Result<LieData, String> {
    if spec == "sl2" {
        return Ok(LieData::sl2());
    }
    match spec.strip_prefix("file:") {
        Some(path) => LieData::from_json_file(Path::new(path)).map_err(|e| e.to_string()),
        None => Err(format!("--lie must be sl2 or file:PATH (got `{spec}`)")),
    }
}

fn table_cmd(c: &CurveSpec, lie: &str, range: (i64, i64), grades: &[u32], format: Format) -> Output {
    let lie = match load_lie(lie) {
        Ok(l) => l,
        Err(e) => return Output::usage(e),
    };
    if let Some(g) = grades.iter().find(|&&g| g >= c.m()) {
        return Output::usage(format!("grade {g} is not below m = {}", c.m()));
    }
    let table = commutation_table(&lie, c, range.0..=range.1, grades);
    let violations = table.affine_violations(&lie);
    let stdout = match format {
        Format::Json => pretty(&table.to_json()),
        Format::Text => table.render_text(),
    };
    if violations.is_empty() {
        Output::data(stdout)
    } else {
        let mut msg = String::from("grade-0 rows disagree with the affine relations:\n");
        for v in violations {
            msg.push_str(&format!("  {v}\n"));
        }
        Output::failed(stdout, msg)
    }
}

fn preset_cmd(c: &CurveSpec, format: Format) -> Output {
    let summary = c.summary();
    match format {
        Format::Json => Output::data(pretty(&serde_json::to_value(&summary).expect("summary"))),
        Format::Text => Output::data(format!(
            "{c}\nm       {}\ndegree  {}\ncoeffs  [{}]\n",
            summary.m,
            summary.d,
            summary.coeffs.join(", ")
        )),
    }
}

fn seq_cmd(seq: SeqName, k_max: usize, format: Format) -> Output {
    let (name, polys): (&str, Result<Vec<Poly>, String>) = match seq {
        SeqName::PollaczekP | SeqName::PollaczekQ => {
            let (p, qs) = PolySeqSpec::elliptic_transfer(q(-1));
            let spec = if seq == SeqName::PollaczekP { p } else { qs };
            let name = if seq == SeqName::PollaczekP { "p" } else { "q" };
            (name, poly_seq(&spec, k_max).map_err(|e| e.to_string()))
        }
        SeqName::Gegenbauer => {
            let rec = poly_seq(&PolySeqSpec::gegenbauer(frac(-1, 2)), k_max);
            let out = match rec {
                Ok(r) if r == gegenbauer_series(&frac(-1, 2), k_max) => Ok(r),
                Ok(_) => Err("recursion disagrees with the generating series".to_string()),
                Err(e) => Err(e.to_string()),
            };
            ("P", out)
        }
        SeqName::FourpointQ => (
            "Q",
            (0..=k_max as i64)
                .map(|k| qk_fourpoint_poly(k).map_err(|e| e.to_string()))
                .collect(),
        ),
    };
    match polys {
        Err(e) => Output::failed(String::new(), format!("{e}\n")),
        Ok(polys) => match format {
            Format::Text => Output::data(polys_to_csv(name, &polys)),
            Format::Json => Output::data(pretty(&json!({
                "name": name,
                "polys": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }))),
        },
    }
}

fn verify_cmd(suite: Suite, seed: u64, format: Format) -> Output {
    let report = run_suite(suite, seed);
    let stdout = match format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
        Format::Text => report.render_text(),
    };
    if report.pass {
        Output::data(stdout)
    } else {
        Output::failed(stdout, format!("{} check(s) failed\n", report.failed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_windows() {
        assert_eq!(range_arg("2"), Ok((-2, 2)));
        assert_eq!(range_arg("-3:1"), Ok((-3, 1)));
        assert!(range_arg("-1").is_err());
        assert_eq!(window_arg("-4:5"), Ok(Window::new(-4, 5)));
        assert!(window_arg("5:4").is_err());
        assert!(rational_arg("1/0").is_err());
    }

    #[test]
    fn curve_resolution() {
        let cli = Cli::try_parse_from(["omegadr", "basis", "--preset", "fourpoint", "--a", "3"]).unwrap();
        let Command::Basis { curve } = &cli.command else { panic!("basis") };
        assert_eq!(curve.resolve().unwrap(), CurveSpec::from_ints(2, &[1, -4, 1]).unwrap());
        let cli = Cli::try_parse_from(["omegadr", "basis", "--preset", "djkm", "--b", "2"]).unwrap();
        let out = run(&cli);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("--c"));
        assert!(Cli::try_parse_from(["omegadr", "basis", "--m", "2"]).is_err());
    }
}
