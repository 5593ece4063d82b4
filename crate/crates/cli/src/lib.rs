//! Command implementations behind the `qsync` binary.
//!
//! Each command returns its fully rendered output so that identical
//! invocations produce identical bytes.

pub mod records;

use std::fmt::Write as _;

use qsync_core::arith;
use qsync_core::chain::{self, FactorChain, ParameterTable, QsyncParams};
use qsync_core::cyclic::{CyclicCode, DEFAULT_DISTANCE_CAP};
use qsync_core::poly::Poly;
use qsync_core::qr::{self, DualityReport, QrFamily};
use qsync_core::syncsim::{Simulator, TrialConfig, TrialMode, TrialSummary};
use serde::Serialize;
use thiserror::Error;

pub use records::{CodeRecord, FactorRecord, MinDistance};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qsync_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rendered output plus the process exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, exit_code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn opt_text<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |x| x.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct QrOutput {
    pub p: u64,
    pub field_modulus: String,
    pub alpha: String,
    pub codes: Vec<CodeRecord>,
    pub duality: Option<DualityReport>,
}

/// Exact distance when `k <= cap`; otherwise the square-root bound, flagged inexact.
fn qr_distance(code: &CyclicCode, p: u64, cap: usize) -> CliResult<MinDistance> {
    match code.min_distance(cap) {
        Ok(d) => Ok(MinDistance {
            value: d as u64,
            exact: true,
        }),
        Err(qsync_core::Error::DimensionExceedsCap { .. }) => Ok(MinDistance {
            value: qr::square_root_bound(p),
            exact: false,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_qr(p: u64, verify_duality: bool, min_distance: bool, cap: usize, format: Format) -> CliResult<Output> {
    let family = QrFamily::build(p)?;
    let duality = if verify_duality {
        Some(family.duality_report()?)
    } else {
        None
    };
    let named = [
        ("g_R", family.residue_code()),
        ("g_NR", family.nonresidue_code()),
        ("g_R_bar", family.residue_bar_code()),
        ("g_NR_bar", family.nonresidue_bar_code()),
    ];
    let mut codes = Vec::new();
    for (label, code) in named {
        let d = if min_distance {
            Some(qr_distance(code, p, cap)?)
        } else {
            None
        };
        codes.push(CodeRecord::new(label, code, d));
    }
    let out = QrOutput {
        p,
        field_modulus: family.field().modulus().to_string(),
        alpha: family.alpha().rep().to_string(),
        codes,
        duality,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            "label,n,k,generator,generator_hex,dual_generator,dual_containing,min_distance,exact",
            out.codes.iter().map(|c| {
                format!(
                    "{},{},{},{},{},{},{},{},{}",
                    c.label,
                    c.n,
                    c.k,
                    c.generator,
                    c.generator_hex,
                    c.dual_generator,
                    c.dual_containing,
                    opt(c.min_distance.map(|d| d.value)),
                    opt(c.min_distance.map(|d| d.exact)),
                )
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "QR codes of length {p} over GF(2)[x]/({})", out.field_modulus).ok();
            for c in &out.codes {
                writeln!(s, "{:<9} [{}, {}]  {}", c.label, c.n, c.k, c.generator).ok();
                writeln!(s, "          hex {}  dual-containing {}", c.generator_hex, c.dual_containing).ok();
                if let Some(d) = c.min_distance {
                    let kind = if d.exact { "d =" } else { "d >=" };
                    writeln!(s, "          {kind} {}", d.value).ok();
                }
            }
            if let Some(r) = &out.duality {
                writeln!(s, "duality relations hold: {}", r.all_hold()).ok();
            }
            s
        }
    };
    let failed = out.duality.is_some_and(|r| !r.all_hold());
    Ok(Output {
        body,
        exit_code: if failed { 1 } else { 0 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ChainTable {
    Factors,
    Codes,
    Theorem2,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainOutput {
    pub l: u32,
    pub p: u64,
    pub factors: Vec<FactorRecord>,
    /// `codes[z]` deletes `z` factors from `g_R`.
    pub codes: Vec<CodeRecord>,
    pub theorem2: ParameterTable,
}

fn factor_records(chain: &FactorChain) -> Vec<FactorRecord> {
    chain
        .factors()
        .iter()
        .map(|f| FactorRecord {
            rep: f.rep,
            coset: arith::cyclotomic_coset(f.rep, chain.p()),
            degree: f.poly.degree().unwrap_or(0),
            poly: f.poly.to_string(),
            hex: f.poly.to_hex(),
        })
        .collect()
}

pub fn cmd_chain(l: u32, table: ChainTable, z_max: Option<usize>, format: Format) -> CliResult<Output> {
    let chain = chain::mersenne_chain(l)?;
    let mut codes: Vec<CodeRecord> = chain
        .codes()
        .iter()
        .enumerate()
        .map(|(z, c)| CodeRecord::new(format!("z={z}"), c, None))
        .collect();
    let whole = chain.supercode(chain.factors().len())?;
    codes.push(CodeRecord::new(format!("z={}", chain.factors().len()), &whole, None));
    let out = ChainOutput {
        l,
        p: chain.p(),
        factors: factor_records(&chain),
        codes,
        theorem2: chain::parameter_table(l, z_max)?,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => match table {
            ChainTable::Factors => csv(
                "rep,degree,poly,hex,coset",
                out.factors.iter().map(|f| {
                    let coset: Vec<String> = f.coset.iter().map(u64::to_string).collect();
                    format!("{},{},{},{},{}", f.rep, f.degree, f.poly, f.hex, coset.join(" "))
                }),
            ),
            ChainTable::Codes => csv(
                "z,n,k,generator_hex,dual_containing",
                out.codes.iter().enumerate().map(|(z, c)| {
                    format!("{z},{},{},{},{}", c.n, c.k, c.generator_hex, c.dual_containing)
                }),
            ),
            ChainTable::Theorem2 => csv(
                "z,k1,k2,dim_q,ord_f,max_misalignment",
                out.theorem2.rows.iter().map(|r| {
                    format!("{},{},{},{},{},{}", r.z, r.k1, r.k2, r.dim_q, r.ord_f, r.max_misalignment)
                }),
            ),
        },
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "p = 2^{l} - 1 = {}: {} factors of g_R", out.p, out.factors.len()).ok();
            for f in &out.factors {
                writeln!(s, "  M_{:<4} {}", f.rep, f.poly).ok();
            }
            for (z, c) in out.codes.iter().enumerate() {
                writeln!(s, "  z = {z}: [{}, {}] dual-containing {}", c.n, c.k, c.dual_containing).ok();
            }
            writeln!(s, "parameter rows (z <= {}):", out.theorem2.z_bound).ok();
            for r in &out.theorem2.rows {
                writeln!(
                    s,
                    "  z = {}: (c_l, c_r)-[[{} + c_l + c_r, {}]], c_l + c_r < {}",
                    r.z, out.p, r.dim_q, r.ord_f
                )
                .ok();
            }
            for note in &out.theorem2.notes {
                writeln!(s, "  note: {note}").ok();
            }
            s
        }
    };
    Ok(Output::ok(body))
}

/// `C2` deletes `z` factors from `g_R`, `C1` deletes `z + y`.
pub fn build_params(p: u64, z: usize, y: usize, c_l: usize, c_r: usize, cap: usize) -> CliResult<QsyncParams> {
    let chain = chain::residue_chain(p)?;
    let (c1, c2) = chain.pair(z, y)?;
    Ok(QsyncParams::derive(&c1, &c2, c_l, c_r, Some(cap))?)
}

fn params_csv_row(q: &QsyncParams) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        q.n,
        q.c_l,
        q.c_r,
        q.length,
        q.k1,
        q.k2,
        q.dim_q,
        q.g1.to_hex(),
        q.g2.to_hex(),
        q.f.to_hex(),
        q.ord_f,
        opt(q.d1),
        opt(q.d2),
        opt(q.t_bit),
    )
}

const PARAMS_HEADER: &str = "n,c_l,c_r,length,k1,k2,dim_q,g1_hex,g2_hex,f_hex,ord_f,d1,d2,t_bit";

pub fn cmd_params(p: u64, z: usize, y: usize, c_l: usize, c_r: usize, cap: usize, format: Format) -> CliResult<Output> {
    let q = build_params(p, z, y, c_l, c_r, cap)?;
    let body = match format {
        Format::Json => json(&q)?,
        Format::Csv => csv(PARAMS_HEADER, [params_csv_row(&q)]),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "({}, {})-[[{}, {}]]", q.c_l, q.c_r, q.length, q.dim_q).ok();
            writeln!(s, "C1 = <{}>  [{}, {}]  d = {}", q.g1, q.n, q.k1, opt_text(q.d1)).ok();
            writeln!(s, "C2 = <{}>  [{}, {}]  d = {}", q.g2, q.n, q.k2, opt_text(q.d2)).ok();
            writeln!(s, "f = {}  ord(f) = {}", q.f, q.ord_f).ok();
            writeln!(
                s,
                "bit errors corrected: {}  phase errors corrected: {}",
                opt_text(q.t_bit),
                opt_text(q.t_phase)
            )
            .ok();
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulateArgs {
    pub p: u64,
    pub z: usize,
    pub y: usize,
    pub c_l: usize,
    pub c_r: usize,
    pub trials: u64,
    pub max_errors: Option<usize>,
    pub seed: u64,
    pub stress: bool,
    pub cap: usize,
}

/// Runs the trials; exit status 0 iff a guaranteed-mode run recovered every trial.
pub fn cmd_simulate(args: SimulateArgs, format: Format) -> CliResult<Output> {
    let q = build_params(args.p, args.z, args.y, args.c_l, args.c_r, args.cap)?;
    let sim = Simulator::new(q)?;
    let mode = if args.stress {
        TrialMode::Stress
    } else {
        TrialMode::Guaranteed
    };
    let config = TrialConfig {
        trials: args.trials,
        max_errors: args.max_errors.unwrap_or(sim.decoder().radius()),
        seed: args.seed,
        mode,
    };
    let summary: TrialSummary = sim.run(&config)?;
    let body = match format {
        Format::Json => json(&summary)?,
        Format::Csv => csv(
            "trial_index,theta,reason,error_positions",
            summary.failures.iter().map(|f| {
                let pos: Vec<String> = f.error_positions.iter().map(usize::to_string).collect();
                format!("{},{},{:?},{}", f.trial_index, f.theta, f.reason, pos.join(" "))
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            let q = &summary.params;
            writeln!(s, "({}, {})-[[{}, {}]], ord(f) = {}", q.c_l, q.c_r, q.length, q.dim_q, q.ord_f).ok();
            writeln!(
                s,
                "{:?} mode, max errors {}, seed {}: {}/{} recovered",
                summary.mode, summary.max_errors, summary.seed, summary.successes, summary.trials
            )
            .ok();
            for f in &summary.failures {
                writeln!(s, "  trial {} theta {}: {} at {:?}", f.trial_index, f.theta, f.reason, f.error_positions).ok();
            }
            s
        }
    };
    let perfect = summary.successes == summary.trials;
    Ok(Output {
        body,
        exit_code: if mode == TrialMode::Guaranteed && !perfect { 1 } else { 0 },
    })
}

pub fn cmd_mindist(n: usize, generator: &str, cap: usize, format: Format) -> CliResult<Output> {
    let g = Poly::parse_any(generator)?;
    let code = CyclicCode::new(n, g)?;
    let d = code.min_distance(cap)?;
    let record = CodeRecord::new(
        "code",
        &code,
        Some(MinDistance {
            value: d as u64,
            exact: true,
        }),
    );
    let body = match format {
        Format::Json => json(&record)?,
        Format::Csv => csv(
            "n,k,generator_hex,min_distance",
            [format!("{},{},{},{d}", record.n, record.k, record.generator_hex)],
        ),
        Format::Text => format!("[{}, {}, {d}]  {}\n", record.n, record.k, record.generator),
    };
    Ok(Output::ok(body))
}

pub const DEFAULT_CAP: usize = DEFAULT_DISTANCE_CAP;
