//! CSV output for decomposition, pattern and space measurements.

use std::io::Write;

use crate::decomposition::LevelStats;
use crate::error::Result;
use crate::oracle::SpaceReport;
use crate::patterns::{pattern_envelope, PatternCensus};

pub fn write_level_stats<W: Write>(out: W, stats: &[LevelStats]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "level",
        "target",
        "regions",
        "max_vertices",
        "total_vertices",
        "total_boundary",
        "max_boundary",
        "total_holes",
        "max_holes",
        "total_walk",
        "max_walk",
    ])?;
    for s in stats {
        w.write_record(
            [
                s.level,
                s.target,
                s.regions,
                s.max_vertices,
                s.total_vertices,
                s.total_boundary,
                s.max_boundary,
                s.total_holes,
                s.max_holes,
                s.total_walk,
                s.max_walk,
            ]
            .map(|v| v.to_string()),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pattern_census<W: Write>(out: W, census: &[PatternCensus]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["region", "hole", "walk_len", "inside", "distinct", "envelope"])?;
    for c in census {
        w.write_record([
            c.region.to_string(),
            c.hole.to_string(),
            c.walk_len.to_string(),
            c.inside.to_string(),
            c.distinct.to_string(),
            pattern_envelope(c.walk_len).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per (n, item); `total` and `index` rows close each report.
pub fn write_space_reports<W: Write>(out: W, reports: &[(usize, SpaceReport)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["oracle", "n", "item", "words"])?;
    for (n, rep) in reports {
        let n = n.to_string();
        let tail = [("total", rep.total()), ("index", rep.index_words)];
        for (item, words) in rep.items.iter().chain(tail.iter()) {
            w.write_record([rep.oracle, &n, item, &words.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of log y against log x.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
