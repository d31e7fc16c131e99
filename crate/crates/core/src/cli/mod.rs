//! Command-line front end.

mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::classes::{enumerate_hn_types, stratum_codim, twist_exponent, KClass};
use crate::curve::{CurveVolumes, VolMode, ZetaDatum};
use crate::error::{HnsError, Result};
use crate::hall::{certificate_to_json, element_from_json, peel, HallElement};
use crate::quiver::{QuiverConfig, QuiverDatum, Stability};
use crate::scalars::render_rational;

pub use verify::{default_level, verify_inversion, verify_p1, verify_quiver, Check};

#[derive(Parser, Debug)]
#[command(
    name = "hnstrata",
    version,
    about = "Exact Harder-Narasimhan strata computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    P1,
    Quiver,
    Inversion,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List HN types of a weight with first slope at least the given bound.
    HnTypes {
        #[arg(long, value_name = "R,D", allow_hyphen_values = true)]
        class: KClass,
        #[arg(long, value_name = "MU", allow_hyphen_values = true)]
        min_slope: Rational64,
        /// Drop types ending in a torsion part.
        #[arg(long)]
        vec_only: bool,
        #[arg(long, default_value_t = 2)]
        genus: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Volume of the semistable locus of a class on a curve.
    Volss {
        #[arg(long, value_name = "FILE")]
        zeta: PathBuf,
        #[arg(long, value_name = "R,D", allow_hyphen_values = true)]
        class: KClass,
        /// `exact` or `trunc:K`.
        #[arg(long, default_value = "exact")]
        mode: VolMode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Peel the noise strata off a semistable function; prints the certificate.
    Peel {
        #[arg(long)]
        genus: i64,
        #[arg(long, value_name = "R,D", allow_hyphen_values = true)]
        target: KClass,
        /// Hall element (JSON) added to the semistable function of the target.
        #[arg(long, value_name = "FILE")]
        noise: PathBuf,
    },
    /// Run oracle comparisons.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Lowest first slope included (P1) or truncation level (inversion).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
        /// Quiver TOML file.
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
        /// Zeta datum TOML file.
        #[arg(long, value_name = "FILE")]
        zeta: Option<PathBuf>,
        #[arg(long, value_name = "R,D", allow_hyphen_values = true)]
        class: Option<KClass>,
    },
}

/// Parses and runs; returns the process exit code (0 ok, 1 verification
/// failure, 2 bad input).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())?;
    if !s.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn pair(k: &KClass) -> Value {
    json!([k.r, k.d])
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| HnsError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| HnsError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn table_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:<w$}", c, w = *w))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut s = line(header.to_vec());
    s.push('\n');
    for r in rows {
        s.push_str(&line(r.iter().map(|c| c.as_str()).collect()));
        s.push('\n');
    }
    s
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::HnTypes {
            class,
            min_slope,
            vec_only,
            genus,
            format,
        } => cmd_hn_types(*class, *min_slope, *vec_only, *genus, *format, out).map(|_| 0),
        Command::Volss {
            zeta,
            class,
            mode,
            format,
        } => cmd_volss(&ZetaDatum::from_file(zeta)?, *class, *mode, *format, out).map(|_| 0),
        Command::Peel { genus, target, noise } => {
            let text = std::fs::read_to_string(noise)
                .map_err(|e| HnsError::Io(format!("{}: {}", noise.display(), e)))?;
            cmd_peel(*genus, *target, &element_from_json(&text)?, out).map(|_| 0)
        }
        Command::Verify {
            suite,
            q,
            window,
            file,
            zeta,
            class,
        } => {
            let mut checks = Vec::new();
            if matches!(suite, Suite::P1 | Suite::All) {
                checks.extend(verify_p1(*q, window.unwrap_or(-6))?);
            }
            if matches!(suite, Suite::Quiver | Suite::All) {
                let configs = match file {
                    Some(f) => vec![QuiverConfig::from_file(f)?],
                    None => vec![
                        QuiverConfig {
                            quiver: QuiverDatum::a2(),
                            theta: None,
                        },
                        QuiverConfig {
                            quiver: QuiverDatum::kronecker(),
                            theta: None,
                        },
                    ],
                };
                for c in configs {
                    let theta = c.theta.unwrap_or_else(|| {
                        let mut v = vec![0; c.quiver.vertices()];
                        v[0] = 1;
                        Stability::from_ints(&v)
                    });
                    checks.extend(verify_quiver(&c.quiver, &theta, *q)?);
                }
            }
            if matches!(suite, Suite::Inversion | Suite::All) {
                let z = match zeta {
                    Some(f) => ZetaDatum::from_file(f)?,
                    None => ZetaDatum::p1(*q)?,
                };
                let classes = match class {
                    Some(c) => vec![*c],
                    None => vec![KClass::new(1, 0), KClass::new(2, 0), KClass::new(2, 1)],
                };
                for c in classes {
                    checks.extend(verify_inversion(&z, c, window.unwrap_or(default_level(c)))?);
                }
            }
            cmd_report(&checks, out)
        }
    }
}

pub fn cmd_hn_types(
    class: KClass,
    min_slope: Rational64,
    vec_only: bool,
    genus: i64,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    class.require_cone()?;
    let types = enumerate_hn_types(class, min_slope, vec_only);
    let text = match format {
        Format::Json => {
            let rows: Vec<Value> = types
                .iter()
                .map(|t| {
                    json!({
                        "parts": t.parts().iter().map(pair).collect::<Vec<_>>(),
                        "vertices": t.vertices().iter().map(pair).collect::<Vec<_>>(),
                        "codim": stratum_codim(t, genus),
                        "v_exp": twist_exponent(t.parts(), genus),
                    })
                })
                .collect();
            let doc = json!({
                "schema": 1,
                "weight": pair(&class),
                "min_slope": min_slope.to_string(),
                "vec_only": vec_only,
                "genus": genus,
                "types": rows,
            });
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Csv | Format::Table => {
            let header = ["type", "vertices", "codim", "v_exp"];
            let rows: Vec<Vec<String>> = types
                .iter()
                .map(|t| {
                    let v: Vec<String> = t.vertices().iter().map(|k| k.to_string()).collect();
                    vec![
                        t.to_string(),
                        v.join(" "),
                        stratum_codim(t, genus).to_string(),
                        twist_exponent(t.parts(), genus).to_string(),
                    ]
                })
                .collect();
            if format == Format::Csv {
                csv_string(&header, &rows)?
            } else {
                table_string(&header, &rows)
            }
        }
    };
    write_out(out, &text)
}

pub fn cmd_volss(
    zeta: &ZetaDatum,
    class: KClass,
    mode: VolMode,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let vols = CurveVolumes::new(zeta.clone());
    let r = vols.vol_ss(class, mode)?;
    let window = r.window.map(|n| n.to_string()).unwrap_or_default();
    let text = match format {
        Format::Json => {
            let doc = json!({
                "schema": 1,
                "class": pair(&class),
                "q": zeta.q(),
                "genus": zeta.genus(),
                "mode": r.mode.to_string(),
                "value": r.value.to_string(),
                "error_bound": render_rational(&r.error_bound),
                "window": r.window,
            });
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        Format::Csv | Format::Table => {
            let header = ["class", "q", "genus", "mode", "value", "error_bound", "window"];
            let rows = vec![vec![
                class.to_string(),
                zeta.q().to_string(),
                zeta.genus().to_string(),
                r.mode.to_string(),
                r.value.to_string(),
                render_rational(&r.error_bound),
                window,
            ]];
            if format == Format::Csv {
                csv_string(&header, &rows)?
            } else {
                table_string(&header, &rows)
            }
        }
    };
    write_out(out, &text)
}

pub fn cmd_peel(genus: i64, target: KClass, noise: &HallElement, out: &mut dyn Write) -> Result<()> {
    let e = HallElement::semistable(target, noise.level())?.add(noise)?;
    let cert = peel(target, &e, genus)?;
    write_out(out, &certificate_to_json(&cert))
}

/// Prints one line per check; exit code 1 if any failed.
pub fn cmd_report(checks: &[Check], out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    for c in checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!c.pass);
        write_out(out, &format!("{} [{}] {}: {}", tag, c.suite, c.name, c.detail))?;
    }
    let summary = if failed == 0 { "PASS" } else { "FAIL" };
    write_out(
        out,
        &format!("{}: {} checks, {} failed", summary, checks.len(), failed),
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<i32>, String) {
        let cli = Cli::try_parse_from(std::iter::once("hnstrata").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(&cli, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn hn_types_row_counts() {
        let (_, s) = run_args(&[
            "hn-types",
            "--class",
            "2,0",
            "--min-slope",
            "-1",
            "--format",
            "csv",
        ]);
        assert_eq!(s.lines().count(), 6);
        let (_, s) = run_args(&[
            "hn-types",
            "--class",
            "1,0",
            "--min-slope",
            "0",
            "--format",
            "csv",
        ]);
        assert_eq!(s.lines().count(), 2);
        let (_, s) = run_args(&[
            "hn-types",
            "--class",
            "2,0",
            "--min-slope",
            "-1",
            "--vec-only",
            "--format",
            "csv",
        ]);
        assert_eq!(s.lines().count(), 3);
    }

    #[test]
    fn hn_types_json_is_stable() {
        let args = [
            "hn-types",
            "--class",
            "2,0",
            "--min-slope",
            "-1/2",
            "--format",
            "json",
        ];
        let (_, a) = run_args(&args);
        let (_, b) = run_args(&args);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["min_slope"], "-1/2");
    }

    #[test]
    fn rejects_bad_class() {
        assert!(Cli::try_parse_from(["hnstrata", "hn-types", "--class", "2", "--min-slope", "0"]).is_err());
        assert_eq!(
            main_with_args(["hnstrata", "hn-types", "--class", "x,y", "--min-slope", "0"]),
            2
        );
    }
}
