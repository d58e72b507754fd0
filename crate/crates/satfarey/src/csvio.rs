//! Byte-stable CSV and JSON writers for the exported data sets.
//!
//! Schemas:
//!
//! - fractions: `Q,idx,a,q,inv,h`, one row per element, ascending;
//! - pairs: `Q,q1,q2,r,mediant_pos,cell,wcell` (`mediant_pos` empty when
//!   `r = 1`; `cell` one of `V1,V2,V3,boundary`);
//! - delta: `Q,kind,a,q` with `kind ∈ {inserted, vanished_left,
//!   vanished_right}` (`0,1` stands for the virtual left endpoint);
//! - phi: `Q,phi,S`;
//! - counts: `Q,beta,count,predicted,ratio`;
//! - baseline: `Q,x0,x1,y0,y1,inside,total,fraction,area,fraction_over_area`;
//! - index: `Q,index_sum,S,three_s_minus_one`;
//! - density report: JSON
//!   `{"q":…,"fitted_constant":…,"entries":[{"box":[x0,x1,y0,y1],"cell":i,
//!   "empirical":…,"theoretical":…,"ratio":…}]}`.
//!
//! Floats print with 12 significant digits so identical runs produce
//! identical bytes.

use crate::core::gaps::GapRecord;
use crate::core::level::{LevelDelta, SaturatedLevel};
use crate::core::ratio::Box2;
use crate::core::regions::{region_of, wcell_of};
use crate::fmtnum::g12;
use crate::report::DensityReport;
use std::io::{self, Write};

pub fn write_fractions_csv(out: &mut dyn Write, level: &SaturatedLevel) -> io::Result<()> {
    writeln!(out, "Q,idx,a,q,inv,h")?;
    for (i, e) in level.elements().iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            level.q(),
            i + 1,
            e.num(),
            e.den(),
            e.inv(),
            e.height()
        )?;
    }
    Ok(())
}

pub fn write_pairs_csv<'a>(
    out: &mut dyn Write,
    order: u64,
    records: impl Iterator<Item = &'a GapRecord>,
) -> io::Result<()> {
    writeln!(out, "Q,q1,q2,r,mediant_pos,cell,wcell")?;
    for rec in records {
        let (q1, q2) = rec.endpoints();
        let label = region_of(q1, q2, order);
        let class = wcell_of(rec);
        let pos = rec.mediant_pos().map(|p| p.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            order,
            q1,
            q2,
            rec.r(),
            pos,
            label.cell_name(),
            class.label()
        )?;
    }
    Ok(())
}

pub fn write_delta_csv(out: &mut dyn Write, delta: &LevelDelta) -> io::Result<()> {
    writeln!(out, "Q,kind,a,q")?;
    for f in &delta.inserted {
        writeln!(out, "{},inserted,{},{}", delta.q_level, f.num(), f.den())?;
    }
    for gap in &delta.vanished {
        let (la, lq) = gap.left_raw();
        writeln!(out, "{},vanished_left,{},{}", delta.q_level, la, lq)?;
        writeln!(
            out,
            "{},vanished_right,{},{}",
            delta.q_level,
            gap.right.num(),
            gap.right.den()
        )?;
    }
    Ok(())
}

pub fn write_phi_csv(out: &mut dyn Write, rows: &[(u64, u64, u64)]) -> io::Result<()> {
    writeln!(out, "Q,phi,S")?;
    for &(order, phi, s) in rows {
        writeln!(out, "{order},{phi},{s}")?;
    }
    Ok(())
}

pub fn write_index_csv(out: &mut dyn Write, order: u64, sum: u64, s: u64) -> io::Result<()> {
    writeln!(out, "Q,index_sum,S,three_s_minus_one")?;
    writeln!(out, "{order},{sum},{s},{}", 3 * s - 1)
}

pub struct CountRow {
    pub beta: f64,
    pub count: u64,
    pub predicted: f64,
}

pub fn write_counts_csv(out: &mut dyn Write, order: u64, rows: &[CountRow]) -> io::Result<()> {
    writeln!(out, "Q,beta,count,predicted,ratio")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            order,
            g12(row.beta),
            row.count,
            g12(row.predicted),
            g12(row.count as f64 / row.predicted)
        )?;
    }
    Ok(())
}

pub struct BaselineRow {
    pub bounds: Box2,
    pub inside: u64,
    pub total: u64,
}

pub fn write_baseline_csv(out: &mut dyn Write, order: u64, rows: &[BaselineRow]) -> io::Result<()> {
    writeln!(
        out,
        "Q,x0,x1,y0,y1,inside,total,fraction,area,fraction_over_area"
    )?;
    for row in rows {
        let fraction = row.inside as f64 / row.total as f64;
        let area = row.bounds.area();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            order,
            g12(row.bounds.x0.to_f64()),
            g12(row.bounds.x1.to_f64()),
            g12(row.bounds.y0.to_f64()),
            g12(row.bounds.y1.to_f64()),
            row.inside,
            row.total,
            g12(fraction),
            g12(area),
            g12(fraction / area)
        )?;
    }
    Ok(())
}

pub fn write_density_json(out: &mut dyn Write, report: &DensityReport) -> io::Result<()> {
    writeln!(out, "{{")?;
    writeln!(out, "  \"q\": {},", report.q_level)?;
    writeln!(
        out,
        "  \"fitted_constant\": {},",
        g12(report.fitted_constant)
    )?;
    writeln!(out, "  \"entries\": [")?;
    let n = report.entries.len();
    for (i, e) in report.entries.iter().enumerate() {
        let b = &e.bounds;
        write!(
            out,
            "    {{\"box\": [{}, {}, {}, {}], \"cell\": {}, \"empirical\": {}, \"theoretical\": {}, \"ratio\": {}}}",
            g12(b.x0.to_f64()),
            g12(b.x1.to_f64()),
            g12(b.y0.to_f64()),
            g12(b.y1.to_f64()),
            e.cell.index(),
            g12(e.empirical),
            g12(e.theoretical),
            g12(e.ratio)
        )?;
        writeln!(out, "{}", if i + 1 < n { "," } else { "" })?;
    }
    writeln!(out, "  ]")?;
    writeln!(out, "}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::level::build_filter;

    #[test]
    fn fractions_csv_golden_small() {
        let level = build_filter(5).unwrap();
        let mut buf = Vec::new();
        write_fractions_csv(&mut buf, &level).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "Q,idx,a,q,inv,h\n5,1,1,3,1,5\n5,2,1,2,1,4\n5,3,1,1,1,3\n"
        );
    }

    #[test]
    fn delta_csv_golden_with_virtual_endpoint() {
        let delta = crate::core::level::level_delta(4).unwrap();
        let mut buf = Vec::new();
        write_delta_csv(&mut buf, &delta).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "Q,kind,a,q\n4,inserted,1,2\n4,vanished_left,0,1\n4,vanished_right,1,1\n"
        );
    }

    #[test]
    fn writers_are_deterministic() {
        let level = build_filter(40).unwrap();
        let records = crate::core::gap_records(&level);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_pairs_csv(&mut a, level.q(), records.iter()).unwrap();
        write_pairs_csv(&mut b, level.q(), records.iter()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().filter(|&&c| c == b'\n').count() as u64, level.s());
    }
}
