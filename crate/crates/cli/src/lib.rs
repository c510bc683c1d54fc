//! Command-line front end: single queries, invariant audits and asymptotic
//! sweep tables. Everything is exact; rationals print as `num/den` and all
//! output is byte-deterministic.

use clap::{Parser, Subcommand, ValueEnum};
use hurwitz_core::aggregate::aggregate_covers;
use hurwitz_core::enumerate::{enumerate_covers, hurwitz_complex};
use hurwitz_core::oracle::monodromy_count;
use hurwitz_core::rational::{factorial, format_rational, is_odd_integer};
use hurwitz_core::real::{enumerate_colourings, hurwitz_real, mult_real, SignSplitting};
use hurwitz_core::serialize::{cover_to_dot, cover_to_json, cover_to_text};
use hurwitz_core::zigzag::{
    bends, construct_zigzag_witness, is_zigzag, lower_bound, zigzag_exists, zigzag_number,
};
use hurwitz_core::{Caps, Partition, Rational};
use num::bigint::{BigInt, BigUint};
use num::Zero;
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Exact double Hurwitz number calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output serialization.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximal degree searched (also env MAX_DEGREE).
    #[arg(long, global = true, env = "MAX_DEGREE")]
    max_degree: Option<u64>,

    /// Maximal number of simple branch points (also env MAX_BRANCH_POINTS).
    #[arg(long, global = true, env = "MAX_BRANCH_POINTS")]
    max_branch_points: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// (lambda, 1^2m), (mu, 1^2m)
    Ones,
    /// (lambda, 2^m), (mu, 1^2m)
    Mixed,
    /// (lambda, 2^m), (mu, 2^m)
    Twos,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The complex double Hurwitz number H^C_g(lambda, mu).
    Complex {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// The real double Hurwitz number H^R_g(lambda, mu; s).
    Real {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// Sign splitting as a string over +-, one sign per branch point.
        #[arg(long)]
        signs: Option<String>,
        /// Use the canonical splitting with the first k points positive.
        #[arg(long)]
        p: Option<usize>,
    },
    /// The zigzag number Z_g(lambda, mu).
    Zigzag {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// Also emit one constructed zigzag cover.
        #[arg(long)]
        witness: bool,
    },
    /// Whether any zigzag cover of the given type exists.
    Exists {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// The factorial lower bound for Z_g(lambda, mu).
    Bound {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Bends(k, lambda, mu).
    Bends {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// The symmetric-group monodromy count, for cross-validation.
    Oracle {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// List all tropical covers of the given type.
    Covers {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// Emit DOT graphs instead of records.
        #[arg(long)]
        dot: bool,
    },
    /// Asymptotic sweep: z, z', z'', h^C, h', h'' and the lower bound for
    /// m = 0..m_max.
    Sweep {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        /// Which padded family drives the lower bound and the m_0 report.
        #[arg(long, value_enum, default_value_t = Variant::Ones)]
        variant: Variant,
        /// Append per-row wall-clock times (non-deterministic output).
        #[arg(long)]
        timings: bool,
    },
    /// Run the full invariant suite over a small range.
    Audit {
        /// Maximal degree of the audited types.
        #[arg(long, default_value_t = 4)]
        degree: u64,
        /// Maximal number of branch points of the audited types.
        #[arg(long, default_value_t = 6)]
        branch_points: usize,
    },
}

/// One row of a sweep table. All values are exact; `lower_bound` is absent
/// when the bound's hypotheses fail for the padded pair.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub m: usize,
    pub z: u128,
    pub z_prime: u128,
    pub z_dblprime: u128,
    pub h_complex: Rational,
    pub h_prime: Rational,
    pub h_dblprime: Rational,
    pub lower_bound: Option<BigInt>,
    pub bound_holds: bool,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub m0: Option<usize>,
    pub truncated: Option<String>,
}

fn padded(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
    variant: Variant,
) -> (Partition, Partition) {
    match variant {
        Variant::Ones => (lambda.pad_ones(m), mu.pad_ones(m)),
        Variant::Mixed => (lambda.pad_twos(m), mu.pad_ones(m)),
        Variant::Twos => (lambda.pad_twos(m), mu.pad_twos(m)),
    }
}

fn variant_exponent(variant: Variant) -> u32 {
    match variant {
        Variant::Ones => 4,
        Variant::Mixed => 3,
        Variant::Twos => 2,
    }
}

fn variant_z(row: &SweepRow, variant: Variant) -> u128 {
    match variant {
        Variant::Ones => row.z,
        Variant::Mixed => row.z_prime,
        Variant::Twos => row.z_dblprime,
    }
}

/// Computes the sweep table. A cap overflow stops the table early and is
/// reported through `truncated` rather than as an error.
pub fn sweep(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    m_max: usize,
    variant: Variant,
    caps: Caps,
) -> hurwitz_core::Result<SweepResult> {
    let mut rows = Vec::new();
    let mut truncated = None;
    'outer: for m in 0..=m_max {
        let start = std::time::Instant::now();
        let mut cells: Vec<(u128, Rational)> = Vec::new();
        for v in [Variant::Ones, Variant::Mixed, Variant::Twos] {
            let (l, u) = padded(lambda, mu, m, v);
            hurwitz_core::require_not_excluded(&l, &u, genus)?;
            match aggregate_covers(genus, &l, &u, caps) {
                Ok(agg) => cells.push((agg.odd_classes, agg.hurwitz)),
                Err(e @ hurwitz_core::Error::CapExceeded { .. }) => {
                    truncated = Some(e.to_string());
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
        let (bl, bu) = padded(lambda, mu, m, variant);
        let bound = lower_bound(genus, &bl, &bu).ok();
        rows.push(SweepRow {
            m,
            z: cells[0].0,
            z_prime: cells[1].0,
            z_dblprime: cells[2].0,
            h_complex: cells[0].1.clone(),
            h_prime: cells[1].1.clone(),
            h_dblprime: cells[2].1.clone(),
            lower_bound: bound,
            bound_holds: false,
            runtime_ms: start.elapsed().as_millis(),
        });
    }

    // smallest m_0 with z(m) >= (m - m_0)!^e for every computed m >= m_0
    let e = variant_exponent(variant);
    let mut m0 = None;
    'candidates: for t in 0..=m_max {
        for row in &rows {
            if row.m < t {
                continue;
            }
            let needed = factorial((row.m - t) as u64).pow(e);
            if BigUint::from(variant_z(row, variant)) < needed {
                continue 'candidates;
            }
        }
        m0 = Some(t);
        break;
    }
    if let Some(t) = m0 {
        for row in &mut rows {
            row.bound_holds = row.m >= t;
        }
    }
    Ok(SweepResult {
        rows,
        m0,
        truncated,
    })
}

/// One audit line: invariant name, pass flag, detail.
pub type AuditLine = (String, bool, String);

/// Runs the invariant suite over all non-excluded types with degree and
/// branch point count at most the given limits.
pub fn audit(max_degree: u64, max_branch_points: usize) -> hurwitz_core::Result<Vec<AuditLine>> {
    let caps = Caps {
        max_degree,
        max_branch_points,
    };
    let mut inputs = Vec::new();
    for d in 1..=max_degree {
        for lambda in Partition::all_of(d) {
            for mu in Partition::all_of(d) {
                for g in 0..=((max_branch_points as u64) / 2 + 1) {
                    let r = hurwitz_core::simple_branch_count(&lambda, &mu, g)?;
                    if r < 1 || r as usize > max_branch_points {
                        continue;
                    }
                    if hurwitz_core::excluded_configuration(&lambda, &mu, g)? {
                        continue;
                    }
                    inputs.push((g, lambda.clone(), mu.clone(), r as usize));
                }
            }
        }
    }

    let mut oracle_fail = Vec::new();
    let mut sandwich_fail = Vec::new();
    let mut invariance_fail = Vec::new();
    let mut oddmult_fail = Vec::new();
    let mut existence_fail = Vec::new();
    let mut bound_fail = Vec::new();
    let mut real_checked = 0usize;

    for (g, lambda, mu, r) in &inputs {
        let (g, r) = (*g, *r);
        let tag = format!("g={g} ({lambda})->({mu})");
        let covers = enumerate_covers(g, lambda, mu, caps)?;
        let h_c = hurwitz_complex(g, lambda, mu, caps)?;
        if monodromy_count(g, lambda, mu, caps)? != h_c {
            oracle_fail.push(tag.clone());
        }
        let z: BigInt = covers
            .iter()
            .filter(|c| is_zigzag(c).unwrap_or(false))
            .count()
            .into();
        if !h_c.is_integer() {
            sandwich_fail.push(format!("{tag}: H^C not an integer"));
            continue;
        }
        let h_c_int = h_c.to_integer();
        for p in 0..=r {
            let s1 = SignSplitting::canonical(p, r);
            let h1 = hurwitz_real(g, lambda, mu, &s1, caps)?;
            real_checked += 1;
            if !(z <= h1 && h1 <= h_c_int)
                || (&h1 - &z) % 2 != BigInt::zero()
                || (&h_c_int - &h1) % 2 != BigInt::zero()
            {
                sandwich_fail.push(format!("{tag} p={p}"));
            }
            // a second splitting with the same number of positive signs
            if p > 0 && p < r {
                let mut signs: Vec<char> = vec!['-'; r];
                for slot in signs.iter_mut().rev().take(p) {
                    *slot = '+';
                }
                let s2: SignSplitting = signs.iter().collect::<String>().parse()?;
                if hurwitz_real(g, lambda, mu, &s2, caps)? != h1 {
                    invariance_fail.push(format!("{tag} p={p}"));
                }
            }
        }
        for c in &covers {
            let odd = is_odd_integer(&c.mult_complex());
            if is_zigzag(c)? != odd {
                oddmult_fail.push(tag.clone());
            }
            for p in 0..=r {
                let s = SignSplitting::canonical(p, r);
                for rho in enumerate_colourings(c, &s)? {
                    if (mult_real(c, &rho) % 2 != BigInt::zero()) != odd {
                        oddmult_fail.push(format!("{tag} p={p}"));
                    }
                }
            }
        }
        if zigzag_exists(g, lambda, mu)? != (z > BigInt::zero()) {
            existence_fail.push(tag.clone());
        }
        if let Ok(b) = lower_bound(g, lambda, mu) {
            if b > z {
                bound_fail.push(tag.clone());
            }
        }
    }

    let n = inputs.len();
    let line = |name: &str, fails: Vec<String>, detail: String| -> AuditLine {
        if fails.is_empty() {
            (name.to_string(), true, detail)
        } else {
            (name.to_string(), false, fails.join("; "))
        }
    };
    Ok(vec![
        line("oracle-equality", oracle_fail, format!("{n} types")),
        line(
            "sandwich-and-parity",
            sandwich_fail,
            format!("{real_checked} real values"),
        ),
        line("splitting-invariance", invariance_fail, format!("{n} types")),
        line("odd-multiplicity", oddmult_fail, format!("{n} types")),
        line("existence-predicate", existence_fail, format!("{n} types")),
        line("lower-bound", bound_fail, format!("{n} types")),
    ])
}

fn fmt_bigint(b: &BigInt) -> String {
    b.to_string()
}

fn emit_scalar(format: Format, out: &mut String, value: &str) {
    match format {
        Format::Text => writeln!(out, "{value}").unwrap(),
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::json!({ "value": value })
        )
        .unwrap(),
        Format::Csv => {
            writeln!(out, "value").unwrap();
            writeln!(out, "{value}").unwrap();
        }
    }
}

fn caps_from(cli: &Cli, default: Caps) -> Caps {
    Caps {
        max_degree: cli.max_degree.unwrap_or(default.max_degree),
        max_branch_points: cli.max_branch_points.unwrap_or(default.max_branch_points),
    }
}

fn render_sweep(format: Format, timings: bool, result: &SweepResult, out: &mut String) {
    match format {
        Format::Text => {
            for row in &result.rows {
                write!(
                    out,
                    "m={} z={} z'={} z''={} h={} h'={} h''={} bound={} holds={}",
                    row.m,
                    row.z,
                    row.z_prime,
                    row.z_dblprime,
                    format_rational(&row.h_complex),
                    format_rational(&row.h_prime),
                    format_rational(&row.h_dblprime),
                    row.lower_bound
                        .as_ref()
                        .map_or_else(|| "-".to_string(), fmt_bigint),
                    if row.bound_holds { "yes" } else { "no" },
                )
                .unwrap();
                if timings {
                    write!(out, " runtime_ms={}", row.runtime_ms).unwrap();
                }
                writeln!(out).unwrap();
            }
            match result.m0 {
                Some(t) => writeln!(out, "m_0 = {t}").unwrap(),
                None => writeln!(out, "m_0 = none").unwrap(),
            }
            if let Some(msg) = &result.truncated {
                writeln!(out, "# truncated: {msg}").unwrap();
            }
        }
        Format::Csv => {
            write!(
                out,
                "m,z,z_prime,z_dblprime,h_complex,h_prime,h_dblprime,lower_bound,bound_holds"
            )
            .unwrap();
            if timings {
                write!(out, ",runtime_ms").unwrap();
            }
            writeln!(out).unwrap();
            for row in &result.rows {
                write!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    row.m,
                    row.z,
                    row.z_prime,
                    row.z_dblprime,
                    format_rational(&row.h_complex),
                    format_rational(&row.h_prime),
                    format_rational(&row.h_dblprime),
                    row.lower_bound
                        .as_ref()
                        .map_or_else(|| "-".to_string(), fmt_bigint),
                    u8::from(row.bound_holds),
                )
                .unwrap();
                if timings {
                    write!(out, ",{}", row.runtime_ms).unwrap();
                }
                writeln!(out).unwrap();
            }
            if let Some(msg) = &result.truncated {
                writeln!(out, "# truncated: {msg}").unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = result
                .rows
                .iter()
                .map(|row| {
                    let mut v = serde_json::json!({
                        "m": row.m,
                        "z": row.z.to_string(),
                        "z_prime": row.z_prime.to_string(),
                        "z_dblprime": row.z_dblprime.to_string(),
                        "h_complex": format_rational(&row.h_complex),
                        "h_prime": format_rational(&row.h_prime),
                        "h_dblprime": format_rational(&row.h_dblprime),
                        "lower_bound": row.lower_bound.as_ref().map(fmt_bigint),
                        "bound_holds": row.bound_holds,
                    });
                    if timings {
                        v["runtime_ms"] =
                            serde_json::json!(row.runtime_ms.to_string());
                    }
                    v
                })
                .collect();
            let doc = serde_json::json!({
                "rows": rows,
                "m_0": result.m0,
                "truncated": result.truncated,
            });
            writeln!(out, "{doc}").unwrap();
        }
    }
}

fn execute(cli: &Cli, out: &mut String) -> hurwitz_core::Result<i32> {
    let caps = caps_from(cli, Caps::ENUMERATION);
    match &cli.cmd {
        Cmd::Complex { genus, lambda, mu } => {
            let h = hurwitz_complex(*genus, lambda, mu, caps)?;
            emit_scalar(cli.format, out, &format_rational(&h));
        }
        Cmd::Real {
            genus,
            lambda,
            mu,
            signs,
            p,
        } => {
            let r = hurwitz_core::simple_branch_count(lambda, mu, *genus)?;
            let s = match (signs, p) {
                (Some(s), None) => s.parse::<SignSplitting>()?,
                (None, Some(p)) => {
                    if r < 0 || *p > r as usize {
                        return Err(hurwitz_core::Error::InvalidInput(format!(
                            "p = {p} out of range for r = {r}"
                        )));
                    }
                    SignSplitting::canonical(*p, r as usize)
                }
                _ => {
                    return Err(hurwitz_core::Error::InvalidInput(
                        "exactly one of --signs and --p is required".into(),
                    ))
                }
            };
            let h = hurwitz_real(*genus, lambda, mu, &s, caps)?;
            emit_scalar(cli.format, out, &fmt_bigint(&h));
        }
        Cmd::Zigzag {
            genus,
            lambda,
            mu,
            witness,
        } => {
            let z = zigzag_number(*genus, lambda, mu, caps)?;
            if !witness {
                emit_scalar(cli.format, out, &z.to_string());
            } else {
                let w = construct_zigzag_witness(*genus, lambda, mu)?;
                match cli.format {
                    Format::Json => {
                        let doc = serde_json::json!({
                            "value": z.to_string(),
                            "witness": cover_to_json(&w),
                        });
                        writeln!(out, "{doc}").unwrap();
                    }
                    _ => {
                        emit_scalar(cli.format, out, &z.to_string());
                        writeln!(out).unwrap();
                        write!(out, "{}", cover_to_text(&w)).unwrap();
                    }
                }
            }
        }
        Cmd::Exists { genus, lambda, mu } => {
            let e = zigzag_exists(*genus, lambda, mu)?;
            emit_scalar(cli.format, out, if e { "true" } else { "false" });
        }
        Cmd::Bound { genus, lambda, mu } => {
            let b = lower_bound(*genus, lambda, mu)?;
            emit_scalar(cli.format, out, &fmt_bigint(&b));
        }
        Cmd::Bends { k, lambda, mu } => {
            let b = bends(*k, lambda, mu)?;
            emit_scalar(cli.format, out, &b.to_string());
        }
        Cmd::Oracle { genus, lambda, mu } => {
            let oracle_caps = caps_from(cli, Caps::ORACLE);
            let h = monodromy_count(*genus, lambda, mu, oracle_caps)?;
            emit_scalar(cli.format, out, &format_rational(&h));
        }
        Cmd::Covers {
            genus,
            lambda,
            mu,
            dot,
        } => {
            let covers = enumerate_covers(*genus, lambda, mu, caps)?;
            if *dot {
                for c in &covers {
                    write!(out, "{}", cover_to_dot(c)).unwrap();
                }
            } else {
                match cli.format {
                    Format::Text => {
                        for (i, c) in covers.iter().enumerate() {
                            if i > 0 {
                                writeln!(out).unwrap();
                            }
                            write!(out, "{}", cover_to_text(c)).unwrap();
                        }
                    }
                    Format::Json => {
                        let doc = serde_json::Value::Array(
                            covers.iter().map(cover_to_json).collect(),
                        );
                        writeln!(out, "{doc}").unwrap();
                    }
                    Format::Csv => {
                        writeln!(out, "index,degree,genus,aut,mult_complex").unwrap();
                        for (i, c) in covers.iter().enumerate() {
                            writeln!(
                                out,
                                "{},{},{},{},{}",
                                i,
                                c.degree(),
                                c.genus,
                                c.automorphism_count(),
                                format_rational(&c.mult_complex()),
                            )
                            .unwrap();
                        }
                    }
                }
            }
        }
        Cmd::Sweep {
            genus,
            lambda,
            mu,
            m_max,
            variant,
            timings,
        } => {
            let result = sweep(*genus, lambda, mu, *m_max, *variant, caps)?;
            render_sweep(cli.format, *timings, &result, out);
        }
        Cmd::Audit {
            degree,
            branch_points,
        } => {
            let lines = audit(*degree, *branch_points)?;
            let mut failed = false;
            for (name, pass, detail) in &lines {
                if *pass {
                    writeln!(out, "PASS {name} ({detail})").unwrap();
                } else {
                    failed = true;
                    writeln!(out, "FAIL {name}: {detail}").unwrap();
                }
            }
            if failed {
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses and runs an invocation; returns the exit status plus whatever was
/// written to stdout and stderr.
pub fn run<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (EXIT_OK, rendered, String::new())
                }
                _ => (EXIT_USAGE, String::new(), rendered),
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => (code, out, String::new()),
        Err(e) => (EXIT_USAGE, out, format!("error: {e}\n")),
    }
}
