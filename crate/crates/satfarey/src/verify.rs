//! Whole-range verification sweeps.
//!
//! Whole-level checks (builder equivalence, partition, index identity)
//! parallelize over independent orders. The per-gap sweeps instead split
//! the order range into contiguous chunks of balanced cubic cost and run
//! one incremental builder per chunk, so a range of levels costs one
//! insertion pass rather than a rebuild per order.

use crate::core::gaps::{
    admissible_signatures, continuant, gap_record_between, gap_span, GapRecord,
};
use crate::core::level::index_sum;
use crate::core::level::{build_filter, verify_modular_partition, IncrementalBuilder};
use crate::core::regions::{pair_inclusion_holds, wcell_of};
use rayon::prelude::*;

/// Outcome of one sweep: orders covered, units checked, failures seen.
#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub q_min: u64,
    pub q_max: u64,
    pub checked: u64,
    pub violations: u64,
    /// Description of the first failure, for diagnostics.
    pub first_failure: Option<String>,
}

impl SweepSummary {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    fn merge(mut self, other: SweepSummary) -> SweepSummary {
        self.checked += other.checked;
        self.violations += other.violations;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }

    fn over_range(mut self, q_min: u64, q_max: u64) -> SweepSummary {
        self.q_min = q_min;
        self.q_max = q_max;
        self
    }
}

fn sweep<F>(q_min: u64, q_max: u64, per_order: F) -> SweepSummary
where
    F: Fn(u64) -> SweepSummary + Sync + Send,
{
    (q_min..=q_max)
        .into_par_iter()
        .map(per_order)
        .reduce(SweepSummary::default, SweepSummary::merge)
        .over_range(q_min, q_max)
}

/// Incremental construction against the filter, order by order; levels
/// must agree element for element.
pub fn oracle_equivalence_sweep(q_max: u64) -> SweepSummary {
    let mut summary = SweepSummary {
        q_min: 3,
        q_max,
        ..Default::default()
    };
    let mut builder = IncrementalBuilder::new();
    for order in 3..=q_max {
        builder.advance_to(order);
        let incremental = builder.snapshot();
        let filtered = build_filter(order).expect("order >= 3");
        summary.checked += 1;
        if incremental.elements() != filtered.elements() {
            summary.violations += 1;
            if summary.first_failure.is_none() {
                summary.first_failure = Some(format!("builders disagree at order {order}"));
            }
        }
    }
    summary
}

/// Unimodular adjacency across whole levels.
pub fn partition_sweep(q_min: u64, q_max: u64) -> SweepSummary {
    sweep(q_min, q_max, |order| {
        let level = build_filter(order).expect("order >= 3");
        let mut s = SweepSummary {
            checked: 1,
            ..Default::default()
        };
        if let Err(i) = verify_modular_partition(&level) {
            s.violations = 1;
            s.first_failure = Some(format!("partition breaks at order {order}, index {i}"));
        }
        s
    })
}

/// The index identity `Σ ν_i = 3 S_Q − 1` across whole levels.
pub fn index_identity_sweep(q_min: u64, q_max: u64) -> SweepSummary {
    sweep(q_min, q_max, |order| {
        let level = build_filter(order).expect("order >= 3");
        let mut s = SweepSummary {
            checked: 1,
            ..Default::default()
        };
        let total = index_sum(&level);
        if total != 3 * level.s() - 1 {
            s.violations = 1;
            s.first_failure = Some(format!(
                "index sum {total} != 3*{} - 1 at order {order}",
                level.s()
            ));
        }
        s
    })
}

/// Splits `[q_min, q_max]` into contiguous chunks of roughly equal summed
/// quadratic per-order cost.
fn cubic_chunks(q_min: u64, q_max: u64, parts: u64) -> Vec<(u64, u64)> {
    let lo = q_min as f64;
    let hi = q_max as f64;
    let total = hi.powi(3) - lo.powi(3);
    let mut bounds = vec![q_min];
    for k in 1..parts {
        let cut = (lo.powi(3) + total * k as f64 / parts as f64).cbrt() as u64;
        if cut > *bounds.last().expect("nonempty") && cut < q_max {
            bounds.push(cut);
        }
    }
    bounds.push(q_max + 1);
    bounds.windows(2).map(|w| (w[0], w[1] - 1)).collect()
}

/// Runs a per-gap check over every level in the range, one incremental
/// insertion pass per chunk.
fn per_gap_sweep<F>(q_min: u64, q_max: u64, check: F) -> SweepSummary
where
    F: Fn(&GapRecord, &mut SweepSummary) + Sync + Send,
{
    let q_min = q_min.max(4);
    if q_max < q_min {
        return SweepSummary {
            q_min,
            q_max,
            ..Default::default()
        };
    }
    let parts = (rayon::current_num_threads() as u64 * 2).max(1);
    let chunks = cubic_chunks(q_min, q_max, parts);
    let merged = chunks
        .into_par_iter()
        .map(|(from, to)| {
            let mut builder = IncrementalBuilder::new();
            builder.advance_to(from - 1);
            let mut s = SweepSummary::default();
            for order in from..=to {
                builder.advance();
                builder.for_each_pair(|l, r| {
                    let rec = gap_record_between(order, l, r);
                    s.checked += 1;
                    check(&rec, &mut s);
                });
            }
            s
        })
        .reduce(SweepSummary::default, SweepSummary::merge);
    merged.over_range(q_min, q_max)
}

/// Region inclusions for every gap of every order in the range. Only the
/// endpoints and the span matter here, so the chain is counted rather
/// than materialized.
pub fn inclusions_sweep(q_min: u64, q_max: u64) -> SweepSummary {
    let q_min = q_min.max(4);
    if q_max < q_min {
        return SweepSummary {
            q_min,
            q_max,
            ..Default::default()
        };
    }
    let parts = (rayon::current_num_threads() as u64 * 2).max(1);
    let merged = cubic_chunks(q_min, q_max, parts)
        .into_par_iter()
        .map(|(from, to)| {
            let mut builder = IncrementalBuilder::new();
            builder.advance_to(from - 1);
            let mut s = SweepSummary::default();
            for order in from..=to {
                builder.advance();
                builder.for_each_pair(|l, r| {
                    s.checked += 1;
                    let span = gap_span(order, l, r);
                    if !pair_inclusion_holds(l.1, r.1, order, span) {
                        s.violations += 1;
                        if s.first_failure.is_none() {
                            s.first_failure = Some(format!(
                                "inclusion fails at order {order}: pair ({}, {}), r = {span}",
                                l.1, r.1
                            ));
                        }
                    }
                });
            }
            s
        })
        .reduce(SweepSummary::default, SweepSummary::merge);
    merged.over_range(q_min, q_max)
}

/// Per-gap combinatorial laws: unit continuants, admissible signatures for
/// chains of up to five steps, and membership in the tabulated polygons.
pub fn gap_laws_sweep(q_min: u64, q_max: u64) -> SweepSummary {
    per_gap_sweep(q_min, q_max, |rec, s| {
        let fail = |msg: String, s: &mut SweepSummary| {
            s.violations += 1;
            if s.first_failure.is_none() {
                s.first_failure = Some(msg);
            }
        };
        let order = rec.q();
        let sig: Vec<i64> = rec.signature().iter().map(|&v| v as i64).collect();
        if continuant(&sig) != 1 {
            fail(
                format!("continuant != 1 at order {order}: {:?}", rec.signature()),
                s,
            );
        }
        if let Some(list) = admissible_signatures(rec.r()) {
            if !list.contains(&rec.signature()) {
                fail(
                    format!(
                        "inadmissible signature {:?} at order {order}",
                        rec.signature()
                    ),
                    s,
                );
            }
        }
        let class = wcell_of(rec);
        if class.verified == Some(false) {
            fail(
                format!(
                    "pair {:?} escapes {} at order {order}",
                    rec.endpoints(),
                    class.label()
                ),
                s,
            );
        }
    })
}
