//! The `satfarey` command line: level exports, verification, and reports.
//!
//! Exit status is 0 on success, 1 when a verification-style check fails
//! (builder mismatch, theorem violation), and 2 on usage errors.

use crate::core::level::{build_filter, build_incremental, index_sum, level_delta, phi_range};
use crate::core::ratio::{Box2, Ratio};
use crate::core::regions::{gap_records_at, region_of, W_CELLS};
use crate::csvio::{self, BaselineRow, CountRow};
use crate::report::{self, default_density_boxes, density_report};
use crate::verify;
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable inputs, unwritable outputs: exit status 2.
    Usage(String),
    /// A check failed: exit status 1.
    Check(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Check(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "satfarey",
    version,
    about = "Saturated Farey levels: construction, verification, and distribution data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for sweeps (default: SATFAREY_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Filter,
    Incremental,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one level and write its fractions CSV.
    Generate {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Write the consecutive-pair CSV of one level.
    Pairs {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Insertion counts over an order range.
    Phi {
        #[arg(long, default_value_t = 3)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// The index identity at one order.
    IndexSum {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Insertions and vanished gaps when passing to one order.
    Delta {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Interval counts against the predicted main term.
    Count {
        #[arg(long)]
        q: u64,
        /// Thresholds as exact rationals or decimals, e.g. 0.25,1/2,0.75,1.
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Empirical vs theoretical density report (JSON).
    Density {
        #[arg(long)]
        q: u64,
        /// Inline box "x0,x1,y0,y1" (repeatable); defaults to six built-in boxes.
        #[arg(long = "box")]
        boxes: Vec<String>,
        /// JSON file with an array of [x0, x1, y0, y1] arrays.
        #[arg(long)]
        boxes_file: Option<PathBuf>,
        #[arg(long, default_value_t = crate::quad::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Region and polygon membership of one scaled pair.
    Regions {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        q1: u64,
        #[arg(long)]
        q2: u64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Farey-pair box fractions against Lebesgue area.
    FareyBaseline {
        #[arg(long)]
        q: u64,
        /// Inline box "x0,x1,y0,y1" (repeatable); defaults to four built-in boxes.
        #[arg(long = "box")]
        boxes: Vec<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 300)]
        q_max: u64,
        /// Separate ceiling for the per-gap region inclusion sweep.
        #[arg(long)]
        inclusions_q_max: Option<u64>,
        /// Separate ceiling for the per-gap signature/continuant/polygon sweep.
        #[arg(long)]
        gaps_q_max: Option<u64>,
    },
}

fn open_out(path: &str) -> Result<Box<dyn Write>, CliError> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout())))
    } else {
        let file = File::create(path).map_err(|e| usage(format!("cannot write {path}: {e}")))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn parse_ratio(s: &str) -> Result<Ratio, CliError> {
    s.parse::<Ratio>()
        .map_err(|e| usage(format!("bad rational {s:?}: {e}")))
}

fn parse_inline_box(spec: &str) -> Result<Box2, CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(usage(format!("box {spec:?} must be x0,x1,y0,y1")));
    }
    let vals: Vec<Ratio> = parts
        .iter()
        .map(|p| parse_ratio(p))
        .collect::<Result<_, _>>()?;
    Box2::new(vals[0], vals[1], vals[2], vals[3])
        .map_err(|e| usage(format!("bad box {spec:?}: {e}")))
}

/// Boxes from a JSON array of `[x0, x1, y0, y1]` entries; coordinates may
/// be strings (parsed exactly) or numbers (read through their shortest
/// decimal form).
fn parse_boxes_file(path: &PathBuf) -> Result<Vec<Box2>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("bad JSON in {}: {e}", path.display())))?;
    let arr = value
        .as_array()
        .ok_or_else(|| usage("boxes file must be a JSON array"))?;
    let mut boxes = Vec::with_capacity(arr.len());
    for entry in arr {
        let coords = entry
            .as_array()
            .filter(|c| c.len() == 4)
            .ok_or_else(|| usage("each box must be an array of four coordinates"))?;
        let mut vals = Vec::with_capacity(4);
        for c in coords {
            let r = match c {
                serde_json::Value::String(s) => parse_ratio(s)?,
                serde_json::Value::Number(n) => {
                    let f = n
                        .as_f64()
                        .ok_or_else(|| usage("bad number in boxes file"))?;
                    parse_ratio(&crate::fmtnum::g12(f))?
                }
                _ => return Err(usage("box coordinates must be numbers or strings")),
            };
            vals.push(r);
        }
        boxes.push(
            Box2::new(vals[0], vals[1], vals[2], vals[3])
                .map_err(|e| usage(format!("bad box in file: {e}")))?,
        );
    }
    Ok(boxes)
}

fn default_baseline_boxes() -> Vec<Box2> {
    [
        ((55, 100), (70, 100), (55, 100), (70, 100)),
        ((75, 100), (95, 100), (30, 100), (50, 100)),
        ((30, 100), (50, 100), (75, 100), (95, 100)),
        ((80, 100), (1, 1), (60, 100), (80, 100)),
    ]
    .into_iter()
    .map(|(x0, x1, y0, y1)| Box2::from_ints(x0, x1, y0, y1).expect("valid baseline box"))
    .collect()
}

fn check_order(q: u64) -> Result<(), CliError> {
    if q < 3 {
        Err(usage(format!("order must be at least 3, got {q}")))
    } else {
        Ok(())
    }
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads.or_else(|| {
        std::env::var("SATFAREY_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    }) {
        // Ignore failure: the global pool may already exist (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }

    match cli.command {
        Command::Generate { q, method, out } => {
            check_order(q)?;
            let level = match method {
                Method::Filter => build_filter(q).map_err(|e| usage(e.to_string()))?,
                Method::Incremental => build_incremental(q).map_err(|e| usage(e.to_string()))?,
                Method::Both => {
                    let filtered = build_filter(q).map_err(|e| usage(e.to_string()))?;
                    let incremental = build_incremental(q).map_err(|e| usage(e.to_string()))?;
                    if filtered.elements() != incremental.elements() {
                        return Err(CliError::Check(format!(
                            "builder mismatch at order {q}: filter yields {} elements, incremental {}",
                            filtered.s(),
                            incremental.s()
                        )));
                    }
                    filtered
                }
            };
            let mut out = open_out(&out)?;
            csvio::write_fractions_csv(&mut out, &level)?;
            out.flush()?;
        }
        Command::Pairs { q, out } => {
            check_order(q)?;
            let records = gap_records_at(q).map_err(|e| usage(e.to_string()))?;
            let mut out = open_out(&out)?;
            csvio::write_pairs_csv(&mut out, q, records.iter())?;
            out.flush()?;
        }
        Command::Phi { from, to, out } => {
            if from < 3 || to < from {
                return Err(usage("need 3 <= from <= to"));
            }
            let rows = phi_range(from, to).map_err(|e| usage(e.to_string()))?;
            let mut out = open_out(&out)?;
            csvio::write_phi_csv(&mut out, &rows)?;
            out.flush()?;
        }
        Command::IndexSum { q, out } => {
            check_order(q)?;
            let level = build_filter(q).map_err(|e| usage(e.to_string()))?;
            let sum = index_sum(&level);
            let mut out = open_out(&out)?;
            csvio::write_index_csv(&mut out, q, sum, level.s())?;
            out.flush()?;
            if sum != 3 * level.s() - 1 {
                return Err(CliError::Check(format!(
                    "index identity fails at order {q}: {sum} != 3*{} - 1",
                    level.s()
                )));
            }
        }
        Command::Delta { q, out } => {
            if q < 4 {
                return Err(usage("level deltas start at order 4"));
            }
            let delta = level_delta(q).map_err(|e| usage(e.to_string()))?;
            let mut out = open_out(&out)?;
            csvio::write_delta_csv(&mut out, &delta)?;
            out.flush()?;
        }
        Command::Count { q, beta, out } => {
            check_order(q)?;
            let level = build_filter(q).map_err(|e| usage(e.to_string()))?;
            let mut rows = Vec::with_capacity(beta.len());
            for spec in &beta {
                let b = parse_ratio(spec)?;
                if b.is_negative() || b > Ratio::ONE {
                    return Err(usage(format!("beta must lie in [0, 1], got {spec}")));
                }
                rows.push(CountRow {
                    beta: b.to_f64(),
                    count: level.count_interval(b),
                    predicted: report::predicted_count(q, b.to_f64()),
                });
            }
            let mut out = open_out(&out)?;
            csvio::write_counts_csv(&mut out, q, &rows)?;
            out.flush()?;
        }
        Command::Density {
            q,
            boxes,
            boxes_file,
            tol,
            out,
        } => {
            check_order(q)?;
            let mut all = Vec::new();
            for spec in &boxes {
                all.push(parse_inline_box(spec)?);
            }
            if let Some(path) = &boxes_file {
                all.extend(parse_boxes_file(path)?);
            }
            if all.is_empty() {
                all = default_density_boxes();
            }
            let level = build_filter(q).map_err(|e| usage(e.to_string()))?;
            let report = density_report(&level, &all, tol)
                .map_err(|e| usage(format!("density report failed: {e}")))?;
            let mut out = open_out(&out)?;
            csvio::write_density_json(&mut out, &report)?;
            out.flush()?;
        }
        Command::Regions { q, q1, q2, out } => {
            check_order(q)?;
            let label = region_of(q1, q2, q);
            let wcells: Vec<&str> = W_CELLS
                .iter()
                .filter(|p| p.contains_scaled(q1, q2, q))
                .map(|p| p.name)
                .collect();
            let mut out = open_out(&out)?;
            writeln!(out, "Q,q1,q2,in_v,cells,wcells")?;
            let cells: Vec<&str> = label.cells().map(|c| c.name()).collect();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                q,
                q1,
                q2,
                label.in_v,
                if cells.is_empty() {
                    "-".to_string()
                } else {
                    cells.join("+")
                },
                if wcells.is_empty() {
                    "-".to_string()
                } else {
                    wcells.join("+")
                }
            )?;
            out.flush()?;
        }
        Command::FareyBaseline { q, boxes, out } => {
            check_order(q)?;
            let parsed: Vec<Box2> = if boxes.is_empty() {
                default_baseline_boxes()
            } else {
                boxes
                    .iter()
                    .map(|s| parse_inline_box(s))
                    .collect::<Result<_, _>>()?
            };
            if parsed.iter().any(Box2::is_degenerate) {
                return Err(usage("baseline boxes must have positive area"));
            }
            let mut rows = Vec::with_capacity(parsed.len());
            for bounds in parsed {
                let mut inside = 0u64;
                let mut total = 0u64;
                crate::core::gaps::for_each_farey_pair(q, |a, b| {
                    total += 1;
                    if bounds.contains_scaled(a, b, q) {
                        inside += 1;
                    }
                });
                rows.push(BaselineRow {
                    bounds,
                    inside,
                    total,
                });
            }
            let mut out = open_out(&out)?;
            csvio::write_baseline_csv(&mut out, q, &rows)?;
            out.flush()?;
        }
        Command::Verify {
            q_max,
            inclusions_q_max,
            gaps_q_max,
        } => {
            check_order(q_max)?;
            run_verify(
                q_max,
                inclusions_q_max.unwrap_or(q_max),
                gaps_q_max.unwrap_or(q_max),
            )?;
        }
    }
    Ok(())
}

fn run_verify(q_max: u64, inclusions_q_max: u64, gaps_q_max: u64) -> Result<(), CliError> {
    let mut failures = Vec::new();
    let mut report = |name: &str, summary: verify::SweepSummary| {
        if summary.ok() {
            println!(
                "check {name} (orders {}..={}): ok, {} checked",
                summary.q_min, summary.q_max, summary.checked
            );
        } else {
            println!(
                "check {name} (orders {}..={}): FAILED, {} violations ({})",
                summary.q_min,
                summary.q_max,
                summary.violations,
                summary.first_failure.clone().unwrap_or_default()
            );
            failures.push(name.to_string());
        }
    };

    report(
        "builder-equivalence",
        verify::oracle_equivalence_sweep(q_max),
    );
    report("modular-partition", verify::partition_sweep(3, q_max));
    report("index-identity", verify::index_identity_sweep(3, q_max));
    report("gap-laws", verify::gap_laws_sweep(4, gaps_q_max));
    report(
        "region-inclusions",
        verify::inclusions_sweep(4, inclusions_q_max),
    );

    // Fixed small anchors.
    let phi_expected: [u64; 18] = [1, 1, 1, 1, 2, 1, 1, 4, 1, 1, 4, 2, 3, 4, 1, 4, 4, 5];
    let rows = phi_range(3, 20).map_err(|e| usage(e.to_string()))?;
    let phis: Vec<u64> = rows.iter().map(|&(_, p, _)| p).collect();
    if phis == phi_expected {
        println!("check phi-table (orders 3..=20): ok");
    } else {
        println!("check phi-table (orders 3..=20): FAILED, got {phis:?}");
        failures.push("phi-table".to_string());
    }

    let h59 = crate::core::Fraction::new(5, 9).expect("5/9").height();
    let h49 = crate::core::Fraction::new(4, 9).expect("4/9").height();
    if h59 == 16 && h49 == 20 {
        println!("check height-anchors: ok");
    } else {
        println!("check height-anchors: FAILED, h(5/9) = {h59}, h(4/9) = {h49}");
        failures.push("height-anchors".to_string());
    }

    if failures.is_empty() {
        println!("verification passed");
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "verification failed: {}",
            failures.join(", ")
        )))
    }
}
