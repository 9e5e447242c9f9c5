//! Command-line front end with machine-readable JSON and CSV output.
//!
//! Exit codes: 0 success, 1 domain error (inadmissible space, cotangent
//! case), 2 usage error, 3 verification failure or exhausted precision.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::catalog::{self, describe, DensityKind, Family, SpaceDescriptor};
use crate::error::Error;
use crate::exact::{PiScaledRational, Rational};
use crate::heat::coefficient_table;
use crate::oracle::{self, QuadratureConfig, VerificationReport};
use crate::render::{decimal_string, digits_to_bits, pi_scaled_to_float};
use crate::zeta::{self, SpectralParams};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Parser, Debug)]
#[command(name = "rank1heat", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SpaceArgs {
    /// Family tag: so, su, sp or f4.
    #[arg(long)]
    family: String,
    /// Family parameter n (omit for f4).
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Decimal digits used for decimal renderings.
    #[arg(long, default_value_t = 30)]
    precision: u32,
}

#[derive(Args, Debug, Clone)]
struct ScaleArgs {
    /// Representation dimension chi(1).
    #[arg(long = "chi-dim", default_value_t = 1)]
    chi_dim: u32,
    /// Vol(Gamma\G), as an integer or rational p/q.
    #[arg(long, default_value = "1")]
    volume: String,
    /// Multiplicity of the zero eigenvalue.
    #[arg(long, default_value_t = 0)]
    n0: u32,
}

#[derive(Args, Debug, Clone)]
struct QuadArgs {
    /// Working precision in decimal digits.
    #[arg(long)]
    digits: Option<u32>,
    /// Relative tolerance for pass/fail.
    #[arg(long)]
    tol: Option<f64>,
    /// Largest grid point for extraction.
    #[arg(long)]
    t0: Option<f64>,
    /// Geometric ratio of the extraction grid.
    #[arg(long = "grid-ratio")]
    grid_ratio: Option<f64>,
    /// Richardson extrapolation depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Optional key=value file with quadrature defaults; flags override it.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List admissible spaces, or describe one.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Dimension bound for listings.
        #[arg(long, default_value_t = 16)]
        dmax: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the density polynomial coefficients a_{2j}.
    Poly {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residues and special values of the spectral zeta function.
    Zeta {
        #[command(flatten)]
        space: SpaceArgs,
        /// Emit the residues at all pole locations.
        #[arg(long, conflicts_with = "special")]
        residues: bool,
        /// Emit the special value at s = -N.
        #[arg(long)]
        special: Option<u32>,
        /// Number of half-integer poles listed for odd orthogonal spaces.
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact heat coefficient table A_0 .. A_kmax.
    Coeffs {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        kmax: u32,
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerically verify the exact table against the density integral.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        kmax: u32,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ExactValueJson {
    /// Rational coefficient, rendered as `p/q` or `p`.
    pub coeff: String,
    pub pi_half_exp: i64,
    pub decimal: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct SpaceJson {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub d: u32,
    pub rho0: String,
    pub c_g: ExactValueJson,
    pub density_kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_g: Option<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct EntryJson {
    pub k: u32,
    pub value: ExactValueJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0_term: Option<i64>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct VerifyEntryJson {
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactValueJson>,
    pub extracted: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(untagged)]
pub enum PayloadJson {
    Entries { entries: Vec<EntryJson> },
    Verify {
        tolerance: f64,
        digits: u32,
        entries: Vec<VerifyEntryJson>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pass: Option<bool>,
    },
    Space {},
}

#[derive(Serialize, Deserialize, Debug)]
pub struct OutputRecord {
    pub schema_version: String,
    pub space: SpaceJson,
    pub payload: PayloadJson,
}

fn density_tag(kind: DensityKind) -> &'static str {
    match kind {
        DensityKind::TanhFull => "tanh_full",
        DensityKind::TanhHalf => "tanh_half",
        DensityKind::CothHalf => "coth_half",
        DensityKind::Polynomial => "polynomial",
    }
}

pub fn exact_value_json(v: &PiScaledRational, precision: u32) -> ExactValueJson {
    let bits = digits_to_bits(precision);
    ExactValueJson {
        coeff: v.coeff().to_string(),
        pi_half_exp: v.pi_half_exp(),
        decimal: decimal_string(&pi_scaled_to_float(v, bits), precision),
    }
}

/// Reconstruct the exact value from an emitted record.
pub fn exact_value_from_json(v: &ExactValueJson) -> Result<PiScaledRational, Error> {
    let coeff = Rational::from_str(&v.coeff)
        .map_err(|e| Error::InvalidArgument(format!("bad rational '{}': {e}", v.coeff)))?;
    Ok(PiScaledRational::new(coeff, v.pi_half_exp))
}

fn space_json(desc: &SpaceDescriptor, precision: u32) -> SpaceJson {
    SpaceJson {
        family: desc.family.tag().to_string(),
        n: desc.n,
        d: desc.d,
        rho0: desc.rho0.to_string(),
        c_g: exact_value_json(&desc.c_g, precision),
        density_kind: density_tag(desc.density_kind).to_string(),
        a_g: desc.a_g_kind.map(|k| {
            match k {
                catalog::AGKind::Pi => "pi",
                catalog::AGKind::PiHalf => "pi_half",
            }
            .to_string()
        }),
    }
}

fn parse_volume(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s)
        .map_err(|e| Error::InvalidArgument(format!("bad volume '{s}': {e}")))
        .and_then(|v| {
            if v > Rational::from_integer(0.into()) {
                Ok(v)
            } else {
                Err(Error::InvalidArgument("volume must be positive".into()))
            }
        })
}

fn spectral_params(scale: &ScaleArgs) -> Result<SpectralParams, Error> {
    if scale.chi_dim == 0 {
        return Err(Error::InvalidArgument("chi-dim must be positive".into()));
    }
    Ok(SpectralParams {
        chi_dim: scale.chi_dim,
        volume: parse_volume(&scale.volume)?,
        n0: scale.n0,
    })
}

fn resolve_space(args: &SpaceArgs) -> Result<SpaceDescriptor, Error> {
    describe(Family::parse(&args.family)?, args.n)
}

fn parse_config_file(path: &str) -> Result<Vec<(String, String)>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read config '{path}': {e}")))?;
    let mut pairs = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!("config line without '=': '{line}'"))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

struct VerifySettings {
    config: QuadratureConfig,
    tolerance: f64,
}

fn build_quadrature(args: &QuadArgs, desc: &SpaceDescriptor) -> Result<VerifySettings, Error> {
    let mut digits = 60u32;
    let mut tol = 1e-8f64;
    let mut t0 = QuadratureConfig::for_space(desc, digits).t_grid[0];
    let mut ratio = 0.5f64;
    let mut depth = 6usize;
    let mut tail: Option<f64> = None;
    if let Some(path) = &args.config {
        for (key, value) in parse_config_file(path)? {
            let bad = |e: std::num::ParseFloatError| {
                Error::InvalidArgument(format!("config {key}={value}: {e}"))
            };
            match key.as_str() {
                "digits" => {
                    digits = value.parse().map_err(|e| {
                        Error::InvalidArgument(format!("config digits={value}: {e}"))
                    })?
                }
                "tol" => tol = value.parse().map_err(bad)?,
                "t0" => t0 = value.parse().map_err(bad)?,
                "grid_ratio" => ratio = value.parse().map_err(bad)?,
                "richardson_depth" => {
                    depth = value.parse().map_err(|e| {
                        Error::InvalidArgument(format!("config richardson_depth={value}: {e}"))
                    })?
                }
                "tail_epsilon" => tail = Some(value.parse().map_err(bad)?),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown config key '{other}'"
                    )))
                }
            }
        }
    }
    if let Some(d) = args.digits {
        digits = d;
    }
    if let Some(t) = args.tol {
        tol = t;
    }
    if let Some(t) = args.t0 {
        t0 = t;
    }
    if let Some(r) = args.grid_ratio {
        ratio = r;
    }
    if let Some(d) = args.depth {
        depth = d;
    }
    if !(0.0..1.0).contains(&ratio) || ratio <= 0.0 {
        return Err(Error::InvalidArgument("grid-ratio must lie in (0, 1)".into()));
    }
    let mut config = QuadratureConfig::builder(digits, t0, ratio, depth);
    if let Some(tail) = tail {
        config.tail_epsilon = tail;
    }
    config.validate()?;
    Ok(VerifySettings { config, tolerance: tol })
}

fn scaled_entries(
    values: impl IntoIterator<Item = (u32, PiScaledRational)>,
    scale: &Rational,
    precision: u32,
) -> Vec<EntryJson> {
    values
        .into_iter()
        .map(|(k, v)| EntryJson {
            k,
            value: exact_value_json(&v.mul_rational(scale), precision),
            location: None,
            branch: None,
            n0_term: None,
        })
        .collect()
}

fn write_entries_csv<W: Write>(out: &mut W, entries: &[EntryJson]) -> std::io::Result<()> {
    writeln!(out, "k,coeff_num,coeff_den,pi_half_exp,decimal")?;
    for e in entries {
        let (num, den) = split_rational(&e.value.coeff);
        writeln!(
            out,
            "{},{},{},{},{}",
            e.k, num, den, e.value.pi_half_exp, e.value.decimal
        )?;
    }
    Ok(())
}

fn split_rational(s: &str) -> (String, String) {
    match s.split_once('/') {
        Some((n, d)) => (n.to_string(), d.to_string()),
        None => (s.to_string(), "1".to_string()),
    }
}

fn emit_record<W: Write>(
    out: &mut W,
    format: &str,
    record: &OutputRecord,
) -> std::io::Result<()> {
    match format {
        "csv" => match &record.payload {
            PayloadJson::Entries { entries } => write_entries_csv(out, entries),
            PayloadJson::Verify {
                entries, ..
            } => {
                writeln!(
                    out,
                    "k,exact_coeff_num,exact_coeff_den,pi_half_exp,exact_decimal,extracted,rel_error,pass"
                )?;
                for e in entries {
                    let (num, den, h, dec) = match &e.exact {
                        Some(x) => {
                            let (n, d) = split_rational(&x.coeff);
                            (n, d, x.pi_half_exp.to_string(), x.decimal.clone())
                        }
                        None => ("".into(), "".into(), "".into(), "".into()),
                    };
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        e.k,
                        num,
                        den,
                        h,
                        dec,
                        e.extracted,
                        e.rel_error.map(|r| format!("{r:e}")).unwrap_or_default(),
                        e.pass.map(|p| p.to_string()).unwrap_or_default()
                    )?;
                }
                Ok(())
            }
            PayloadJson::Space {} => {
                writeln!(out, "family,n,d,rho0,cg_coeff,cg_pi_half_exp,density_kind")?;
                let s = &record.space;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    s.family,
                    s.n.map(|n| n.to_string()).unwrap_or_default(),
                    s.d,
                    s.rho0,
                    s.c_g.coeff,
                    s.c_g.pi_half_exp,
                    s.density_kind
                )
            }
        },
        _ => writeln!(out, "{}", serde_json::to_string(record).expect("serializable")),
    }
}

fn verify_report_record(report: &VerificationReport, precision: u32) -> OutputRecord {
    let digits = report.config.decimal_digits;
    let entries = report
        .per_k
        .iter()
        .map(|c| VerifyEntryJson {
            k: c.k,
            exact: c.exact.as_ref().map(|f| ExactValueJson {
                coeff: String::new(),
                pi_half_exp: 0,
                decimal: decimal_string(f, digits.min(precision.max(17))),
            }),
            extracted: decimal_string(&c.extracted, digits.min(precision.max(17))),
            rel_error: c.rel_error,
            pass: c.pass,
        })
        .collect();
    OutputRecord {
        schema_version: SCHEMA_VERSION.to_string(),
        space: space_json(&report.desc, precision),
        payload: PayloadJson::Verify {
            tolerance: report.tolerance,
            digits,
            entries,
            pass: report.pass,
        },
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::PrecisionExhausted { .. } => 3,
        _ => 1,
    }
}

fn run_command<W: Write>(command: Command, out: &mut W) -> Result<i32, Error> {
    match command {
        Command::Catalog { family, n, dmax, output } => {
            let spaces = match family {
                Some(tag) => vec![describe(Family::parse(&tag)?, n)?],
                None => catalog::admissible_spaces(dmax),
            };
            for desc in spaces {
                let record = OutputRecord {
                    schema_version: SCHEMA_VERSION.to_string(),
                    space: space_json(&desc, output.precision),
                    payload: PayloadJson::Space {},
                };
                emit_record(out, &output.format, &record).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Poly { space, output } => {
            let desc = resolve_space(&space)?;
            let poly = catalog::plancherel_polynomial(&desc);
            let entries = scaled_entries(
                poly.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (j as u32, PiScaledRational::from_rational(a.clone()))),
                &Rational::from_integer(1.into()),
                output.precision,
            );
            let record = OutputRecord {
                schema_version: SCHEMA_VERSION.to_string(),
                space: space_json(&desc, output.precision),
                payload: PayloadJson::Entries { entries },
            };
            emit_record(out, &output.format, &record).map_err(io_err)?;
            Ok(0)
        }
        Command::Zeta { space, residues, special, kmax, scale, output } => {
            let desc = resolve_space(&space)?;
            let params = spectral_params(&scale)?;
            let scale_q = params.scale();
            let mut entries: Vec<EntryJson>;
            if residues {
                if desc.density_kind == DensityKind::Polynomial {
                    entries = Vec::new();
                    for k in 0..=kmax {
                        let value = zeta::residue_at_half(&desc, k)?.mul_rational(&scale_q);
                        let location = Rational::new((desc.d as i64 - 2 * k as i64).into(), 2.into());
                        entries.push(EntryJson {
                            k,
                            value: exact_value_json(&value, output.precision),
                            location: Some(location.to_string()),
                            branch: None,
                            n0_term: None,
                        });
                    }
                } else {
                    entries = Vec::new();
                    for m in 1..=desc.d / 2 {
                        let value = zeta::residue_at(&desc, m)?.mul_rational(&scale_q);
                        entries.push(EntryJson {
                            k: m,
                            value: exact_value_json(&value, output.precision),
                            location: Some(m.to_string()),
                            branch: None,
                            n0_term: None,
                        });
                    }
                }
            } else if let Some(n) = special {
                let result = zeta::special_value(&desc, n, &params)?;
                entries = vec![EntryJson {
                    k: n,
                    value: exact_value_json(&result.value.mul_rational(&scale_q), output.precision),
                    location: Some(result.location.to_string()),
                    branch: None,
                    n0_term: Some(result.n0_term),
                }];
            } else {
                return Err(Error::InvalidArgument(
                    "zeta requires --residues or --special N".into(),
                ));
            }
            let record = OutputRecord {
                schema_version: SCHEMA_VERSION.to_string(),
                space: space_json(&desc, output.precision),
                payload: PayloadJson::Entries { entries },
            };
            emit_record(out, &output.format, &record).map_err(io_err)?;
            Ok(0)
        }
        Command::Coeffs { space, kmax, scale, output } => {
            let desc = resolve_space(&space)?;
            let params = spectral_params(&scale)?;
            let table = coefficient_table(&desc, kmax, &params)?;
            let scale_q = params.scale();
            let entries: Vec<EntryJson> = table
                .entries
                .iter()
                .map(|e| EntryJson {
                    k: e.k,
                    value: exact_value_json(&e.value.mul_rational(&scale_q), output.precision),
                    location: None,
                    branch: Some(format!("{:?}", e.branch)),
                    n0_term: None,
                })
                .collect();
            let record = OutputRecord {
                schema_version: SCHEMA_VERSION.to_string(),
                space: space_json(&desc, output.precision),
                payload: PayloadJson::Entries { entries },
            };
            emit_record(out, &output.format, &record).map_err(io_err)?;
            Ok(0)
        }
        Command::Verify { space, kmax, quad, scale, output } => {
            let desc = resolve_space(&space)?;
            let params = spectral_params(&scale)?;
            let settings = build_quadrature(&quad, &desc)?;
            let report = oracle::verify(&desc, &params, kmax, settings.tolerance, &settings.config)?;
            // attach exact rational renderings where available
            let mut record = verify_report_record(&report, output.precision);
            if let PayloadJson::Verify { entries, .. } = &mut record.payload {
                if !desc.is_cotangent() {
                    let table = coefficient_table(&desc, kmax, &params)?;
                    let scale_q = params.scale();
                    for e in entries.iter_mut() {
                        if let Some(exact) = &mut e.exact {
                            let v = table.value(e.k).mul_rational(&scale_q);
                            exact.coeff = v.coeff().to_string();
                            exact.pi_half_exp = v.pi_half_exp();
                        }
                    }
                }
            }
            emit_record(out, &output.format, &record).map_err(io_err)?;
            Ok(if report.pass == Some(false) { 3 } else { 0 })
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("output error: {e}"))
}

/// Parse `argv` and run, writing records to `out` and diagnostics to stderr.
/// Returns the process exit code.
pub fn run_with_output<I, S, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output with code 0
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with_output(argv, &mut lock)
}
