//! Command-line surface. Each command renders its output to a string and
//! reports an exit code; the binary only parses arguments and writes.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::Bounds;
use crate::complex::{EnumerationCap, HochsterComplex};
use crate::error::{Error, Result};
use crate::homology::{ChainComplexData, Method};
use crate::lattice::{MultiDegree, Veronese};
use crate::morse::morse_bounds;
use crate::render;
use crate::theorems::{theorem_prediction, verify_slice, SliceOptions};
use crate::verify::{run_suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "veronese-betti", version, about = "Multigraded Betti numbers of Veronese embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BettiMethod {
    Auto,
    Oracle,
    Predict,
}

#[derive(Debug, clap::Args)]
pub struct Shape {
    /// Veronese degree (≥ 2)
    #[arg(long = "d")]
    pub d: u64,
    /// Projective dimension (≥ 2)
    #[arg(long = "m", default_value_t = 2)]
    pub m: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the lex-ordered generators with their indices.
    Points {
        #[command(flatten)]
        shape: Shape,
    },
    /// Table of A_j and l̃_j for j = 1..=j_max.
    Bounds {
        #[command(flatten)]
        shape: Shape,
        #[arg(long = "j-max")]
        j_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All β_{p,b} for one degree.
    Betti {
        #[command(flatten)]
        shape: Shape,
        /// Comma-separated coordinates, e.g. 8,4,3
        #[arg(long = "b")]
        b: String,
        #[arg(long, value_enum, default_value_t = BettiMethod::Auto)]
        method: BettiMethod,
        /// Confirm every prediction with the oracle.
        #[arg(long)]
        check: bool,
        #[arg(long = "max-faces")]
        max_faces: Option<usize>,
    },
    /// Classify every degree with |b| = dj for one p.
    Scan {
        #[command(flatten)]
        shape: Shape,
        #[arg(long = "j")]
        j: usize,
        #[arg(long = "p")]
        p: usize,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        format: ScanFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        check: bool,
        #[arg(long = "max-faces")]
        max_faces: Option<usize>,
    },
    /// Cross-check bounds, theorems and Morse inequalities against the oracle.
    Verify {
        #[command(flatten)]
        shape: Shape,
        #[arg(long = "j-max")]
        j_max: usize,
        #[arg(long = "p-max")]
        p_max: usize,
        #[arg(long = "max-faces")]
        max_faces: Option<usize>,
        /// Shift every A_j by this amount (harness self-test).
        #[arg(long = "corrupt-a-j", hide = true, default_value_t = 0, allow_hyphen_values = true)]
        corrupt_a_j: i64,
    },
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            exit_code: EXIT_OK,
            out: None,
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CapExceeded(_) => EXIT_INFEASIBLE,
        Error::Internal(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn cap_with(max_faces: Option<usize>) -> EnumerationCap {
    let mut cap = EnumerationCap::default();
    if let Some(n) = max_faces {
        cap.max_faces = n;
    }
    cap
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Points { shape } => cmd_points(shape.d, shape.m).map(Outcome::ok),
        Command::Bounds {
            shape,
            j_max,
            format,
            out,
        } => cmd_bounds(shape.d, shape.m, j_max, format).map(|s| Outcome {
            out,
            ..Outcome::ok(s)
        }),
        Command::Betti {
            shape,
            b,
            method,
            check,
            max_faces,
        } => cmd_betti(shape.d, shape.m, &b.parse()?, method, check, &cap_with(max_faces)),
        Command::Scan {
            shape,
            j,
            p,
            format,
            out,
            check,
            max_faces,
        } => cmd_scan(shape.d, shape.m, j, p, format, check, &cap_with(max_faces))
            .map(|o| Outcome { out, ..o }),
        Command::Verify {
            shape,
            j_max,
            p_max,
            max_faces,
            corrupt_a_j,
        } => cmd_verify(
            shape.d,
            shape.m,
            j_max,
            p_max,
            &SuiteOptions {
                cap: cap_with(max_faces),
                upper_bound_shift: corrupt_a_j,
            },
        ),
    }
}

pub fn cmd_points(d: u64, m: usize) -> Result<String> {
    let v = Veronese::with(m, d)?;
    let mut s = String::new();
    for (i, a) in v.points().iter().enumerate() {
        let _ = writeln!(s, "{}: {a}", i + 1);
    }
    Ok(s)
}

pub fn cmd_bounds(d: u64, m: usize, j_max: usize, format: TableFormat) -> Result<String> {
    if j_max == 0 {
        return Err(Error::InvalidParameters("j_max must be at least 1".into()));
    }
    let v = Veronese::with(m, d)?;
    let table = Bounds::new(&v)?.table(j_max)?;
    let l = |x: Option<i64>| x.map_or(String::from("-"), |x| x.to_string());
    let mut s = String::new();
    match format {
        TableFormat::Csv => {
            s.push_str("j,A_j,l_tilde_j\n");
            for r in &table.rows {
                let lt = r.l_tilde.map_or(String::new(), |x| x.to_string());
                let _ = writeln!(s, "{},{},{}", r.j, r.a, lt);
            }
        }
        TableFormat::Text => {
            let _ = writeln!(s, "# m = {m}, d = {d}, l_tilde defined for j >= {}", table.threshold);
            let _ = writeln!(s, "{:>4} {:>8} {:>8}", "j", "A_j", "l_tilde");
            for r in &table.rows {
                let _ = writeln!(s, "{:>4} {:>8} {:>8}", r.j, r.a, l(r.l_tilde));
            }
        }
    }
    Ok(s)
}

pub fn cmd_betti(
    d: u64,
    m: usize,
    b: &MultiDegree,
    method: BettiMethod,
    check: bool,
    cap: &EnumerationCap,
) -> Result<Outcome> {
    let v = Veronese::with(m, d)?;
    let j = v.level(b)?;
    let bounds = Bounds::new(&v)?;
    let status = bounds.vanishing_status(b)?;
    let prediction = if method == BettiMethod::Oracle || status.vanishes() {
        None
    } else {
        theorem_prediction(&v, b)?
    };
    let want_oracle = method == BettiMethod::Oracle || (method == BettiMethod::Auto && (check || !status.vanishes() && prediction.is_none()));
    let (faces, oracle) = if want_oracle {
        let faces = HochsterComplex::new(&v, b.clone())?.enumerate(cap);
        match faces {
            Ok(f) => {
                let h = ChainComplexData::build(&f)?.reduced_betti_numbers();
                (Some(f), Some(h))
            }
            Err(e @ Error::CapExceeded(_)) if method == BettiMethod::Oracle => return Err(e),
            Err(Error::CapExceeded(_)) => (None, None),
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };
    let morse = match &faces {
        Some(f) if !f.vertices().is_empty() => Some(morse_bounds(f)?),
        _ => None,
    };

    let mut s = String::new();
    let _ = writeln!(s, "b = {b}, j = {j}, m = {m}, d = {d}");
    let _ = writeln!(s, "vanishing: {}", status.as_str());
    if let Some(t) = &prediction {
        let _ = writeln!(s, "theorem: {} (p = {})", t.source, t.p);
    }
    let mut exit_code = EXIT_OK;
    for p in 0..=j {
        let computed = oracle.as_ref().map(|h| h.get(p).copied().unwrap_or(0));
        let predicted = if method == BettiMethod::Oracle {
            None
        } else if status.vanishes() {
            Some((0, Method::Theorem))
        } else if let Some(t) = &prediction {
            Some((t.betti(p), Method::Theorem))
        } else {
            // N_{p-1} = 0 forces β_p = 0
            morse
                .as_ref()
                .filter(|_| p >= 1).map(|mb| mb.get(p - 1).map_or(0, |x| x.value))
                .filter(|&n| n == 0)
                .map(|_| (0, Method::MorseBound))
        };
        let line = match (predicted, computed) {
            (Some((x, how)), Some(y)) if x == y => format!("{x}  [{how}, confirmed by oracle]"),
            (Some((x, how)), Some(y)) => {
                exit_code = EXIT_MISMATCH;
                format!("MISMATCH: {how} predicts {x}, oracle gives {y}")
            }
            (Some((x, how)), None) => format!("{x}  [{how}]"),
            (None, Some(y)) => format!("{y}  [oracle]"),
            (None, None) => {
                if exit_code == EXIT_OK {
                    exit_code = if method == BettiMethod::Predict { EXIT_OK } else { EXIT_INFEASIBLE };
                }
                "unknown".to_string()
            }
        };
        let _ = writeln!(s, "beta_{p} = {line}");
    }
    Ok(Outcome {
        output: s,
        exit_code,
        out: None,
    })
}

pub fn cmd_scan(
    d: u64,
    m: usize,
    j: usize,
    p: usize,
    format: ScanFormat,
    check: bool,
    cap: &EnumerationCap,
) -> Result<Outcome> {
    let v = Veronese::with(m, d)?;
    let bounds = Bounds::new(&v)?;
    let report = verify_slice(&bounds, j, &[p], &SliceOptions { cap: *cap, check })?;
    let output = match format {
        ScanFormat::Csv => render::to_csv(&report, m + 1),
        ScanFormat::Json => render::to_json(&report, m + 1),
        ScanFormat::Svg => render::to_svg(&report, m, d, p)?,
    };
    let exit_code = if !report.is_consistent() {
        EXIT_MISMATCH
    } else if report.infeasible > 0 {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        output,
        exit_code,
        out: None,
    })
}

pub fn cmd_verify(d: u64, m: usize, j_max: usize, p_max: usize, opts: &SuiteOptions) -> Result<Outcome> {
    let v = Veronese::with(m, d)?;
    let report = run_suite(&v, j_max, p_max, opts)?;
    let exit_code = if !report.ok() {
        EXIT_MISMATCH
    } else if report.skipped() > 0 {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    let mut output = format!("verify m = {m}, d = {d}, j <= {j_max}, p <= {p_max}\n{report}");
    output.push_str(if report.ok() { "all confirmed\n" } else { "MISMATCH\n" });
    Ok(Outcome {
        output,
        exit_code,
        out: None,
    })
}
