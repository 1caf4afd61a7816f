//! Campaign output formats and aggregate tables.
//!
//! Raw results go to CSV with one row per (cell, method). Aggregates come
//! in two styles: a robustness summary (classification counts per method
//! and distribution) and a power table grouped by distribution, equal vs
//! unequal unpaired sizes, and the sign of the pair correlation, averaged
//! over every cell in the group. Power is only recorded for cells whose
//! null-hypothesis rejection rate was robust; a `-` marks groups with no
//! robust cell. A stricter all-or-nothing column is emitted alongside for
//! comparison: it gaps the whole group as soon as any cell is non-robust.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};
use crate::rng::{CellParams, DistributionKind};
use crate::sim::{CampaignReport, Robustness, RobustnessBand};
use crate::ttest::Method;

pub const RESULTS_HEADER: &str =
    "n_a,n_b,n_c,rho,dist,delta,method,replicates,rejections,errors,nhrr,classification";

/// One (cell, method) record, as stored in the results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub params: CellParams,
    pub method: Method,
    pub replicates: u64,
    pub rejections: u64,
    pub errors: u64,
    pub nhrr: f64,
    pub classification: Option<Robustness>,
}

/// Flattens a campaign report into result rows (design order, methods in
/// configuration order).
pub fn result_rows(report: &CampaignReport) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for cell in &report.cells {
        for tally in &cell.tallies {
            rows.push(ResultRow {
                params: cell.params,
                method: tally.method,
                replicates: cell.replicates as u64,
                rejections: tally.rejections,
                errors: tally.errors,
                nhrr: tally.nhrr,
                classification: tally.classification,
            });
        }
    }
    rows
}

/// Writes the raw results CSV.
pub fn write_results_csv<W: Write>(mut w: W, rows: &[ResultRow]) -> Result<()> {
    writeln!(w, "{RESULTS_HEADER}")?;
    for row in rows {
        let p = &row.params;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            p.n_a,
            p.n_b,
            p.n_c,
            p.rho,
            p.dist,
            p.delta,
            row.method,
            row.replicates,
            row.rejections,
            row.errors,
            row.nhrr,
            row.classification.map_or("degenerate", |c| c.as_str()),
        )?;
    }
    Ok(())
}

/// Reads a results CSV produced by [`write_results_csv`].
pub fn read_results_csv<R: Read>(reader: R) -> Result<Vec<ResultRow>> {
    let mut lines = BufReader::new(reader).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MissingHeader("empty results file".into()))??;
    if header.trim_end() != RESULTS_HEADER {
        return Err(Error::Config(format!(
            "unexpected results header `{}`",
            header.trim_end()
        )));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let row = i + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::Parse {
                row,
                message: format!("expected 12 fields, found {}", fields.len()),
            });
        }
        let parse_err = |what: &str, v: &str| Error::Parse {
            row,
            message: format!("invalid {what} `{v}`"),
        };
        let n_a = fields[0].parse().map_err(|_| parse_err("n_a", fields[0]))?;
        let n_b = fields[1].parse().map_err(|_| parse_err("n_b", fields[1]))?;
        let n_c = fields[2].parse().map_err(|_| parse_err("n_c", fields[2]))?;
        let rho = fields[3].parse().map_err(|_| parse_err("rho", fields[3]))?;
        let dist: DistributionKind = fields[4].parse()?;
        let delta = fields[5]
            .parse()
            .map_err(|_| parse_err("delta", fields[5]))?;
        let method: Method = fields[6].parse()?;
        let replicates = fields[7]
            .parse()
            .map_err(|_| parse_err("replicates", fields[7]))?;
        let rejections = fields[8]
            .parse()
            .map_err(|_| parse_err("rejections", fields[8]))?;
        let errors = fields[9]
            .parse()
            .map_err(|_| parse_err("errors", fields[9]))?;
        let nhrr = fields[10]
            .parse()
            .map_err(|_| parse_err("nhrr", fields[10]))?;
        let classification = match fields[11] {
            "robust" => Some(Robustness::Robust),
            "liberal" => Some(Robustness::Liberal),
            "conservative" => Some(Robustness::Conservative),
            "degenerate" => None,
            other => return Err(parse_err("classification", other)),
        };
        rows.push(ResultRow {
            params: CellParams {
                n_a,
                n_b,
                n_c,
                rho,
                dist,
                delta,
            },
            method,
            replicates,
            rejections,
            errors,
            nhrr,
            classification,
        });
    }
    Ok(rows)
}

/// Classification counts for one method under one distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessCount {
    pub dist: DistributionKind,
    pub method: Method,
    pub cells: usize,
    pub robust: usize,
    pub liberal: usize,
    pub conservative: usize,
}

/// Counts robust/liberal/conservative cells per (distribution, method),
/// reclassifying the stored rates against `band`.
pub fn robustness_summary(rows: &[ResultRow], band: RobustnessBand) -> Vec<RobustnessCount> {
    let mut out: Vec<RobustnessCount> = Vec::new();
    for row in rows {
        let entry = match out
            .iter_mut()
            .find(|c| c.dist == row.params.dist && c.method == row.method)
        {
            Some(entry) => entry,
            None => {
                out.push(RobustnessCount {
                    dist: row.params.dist,
                    method: row.method,
                    cells: 0,
                    robust: 0,
                    liberal: 0,
                    conservative: 0,
                });
                out.last_mut().unwrap()
            }
        };
        entry.cells += 1;
        if row.nhrr.is_nan() {
            continue;
        }
        match band.classify(row.nhrr) {
            Robustness::Robust => entry.robust += 1,
            Robustness::Liberal => entry.liberal += 1,
            Robustness::Conservative => entry.conservative += 1,
        }
    }
    out
}

pub fn write_robustness_csv<W: Write>(mut w: W, counts: &[RobustnessCount]) -> Result<()> {
    writeln!(w, "dist,method,cells,robust,liberal,conservative")?;
    for c in counts {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            c.dist, c.method, c.cells, c.robust, c.liberal, c.conservative
        )?;
    }
    Ok(())
}

pub fn write_robustness_text<W: Write>(mut w: W, counts: &[RobustnessCount]) -> Result<()> {
    writeln!(
        w,
        "{:<12} {:<6} {:>6} {:>7} {:>8} {:>13}",
        "dist", "method", "cells", "robust", "liberal", "conservative"
    )?;
    for c in counts {
        writeln!(
            w,
            "{:<12} {:<6} {:>6} {:>7} {:>8} {:>13}",
            c.dist.as_str(),
            c.method.as_str(),
            c.cells,
            c.robust,
            c.liberal,
            c.conservative
        )?;
    }
    Ok(())
}

/// Sign bucket of the pair correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoSign {
    Positive,
    Zero,
    Negative,
}

impl RhoSign {
    pub fn of(rho: f64) -> RhoSign {
        if rho > 0.0 {
            RhoSign::Positive
        } else if rho < 0.0 {
            RhoSign::Negative
        } else {
            RhoSign::Zero
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            RhoSign::Positive => ">0",
            RhoSign::Zero => "0",
            RhoSign::Negative => "<0",
        }
    }
}

/// Average power of one method over one design group.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerRow {
    pub dist: DistributionKind,
    pub equal_sizes: bool,
    pub rho_sign: RhoSign,
    pub method: Method,
    pub cells: usize,
    pub robust_cells: usize,
    /// Mean H1 rejection rate over the cells whose H0 rate is robust;
    /// `None` when no cell in the group qualifies.
    pub power: Option<f64>,
    /// All-or-nothing variant: mean over every cell, gapped as soon as one
    /// cell in the group is non-robust.
    pub power_strict: Option<f64>,
}

/// Aggregates power from matched H0 and H1 campaigns.
///
/// The two row sets must line up pairwise: same cells in the same order,
/// same methods, differing only in `delta`. Robustness is judged on the H0
/// rate against `band`; the group mean weights every qualifying cell
/// equally.
pub fn aggregate_power(
    h0: &[ResultRow],
    h1: &[ResultRow],
    band: RobustnessBand,
) -> Result<Vec<PowerRow>> {
    if h0.len() != h1.len() {
        return Err(Error::DesignMismatch(format!(
            "H0 has {} rows, H1 has {}",
            h0.len(),
            h1.len()
        )));
    }
    for (i, (a, b)) in h0.iter().zip(h1).enumerate() {
        let pa = CellParams {
            delta: 0.0,
            ..a.params
        };
        let pb = CellParams {
            delta: 0.0,
            ..b.params
        };
        if pa != pb || a.method != b.method {
            return Err(Error::DesignMismatch(format!(
                "row {} differs between H0 and H1",
                i + 1
            )));
        }
    }

    // Group keys in first-appearance order for distributions; fixed order
    // for sizes and correlation sign.
    let mut dists: Vec<DistributionKind> = Vec::new();
    for row in h0 {
        if !dists.contains(&row.params.dist) {
            dists.push(row.params.dist);
        }
    }
    let mut methods: Vec<Method> = Vec::new();
    for row in h0 {
        if !methods.contains(&row.method) {
            methods.push(row.method);
        }
    }

    let mut out = Vec::new();
    for &dist in &dists {
        for &equal_sizes in &[true, false] {
            for &rho_sign in &[RhoSign::Positive, RhoSign::Zero, RhoSign::Negative] {
                for &method in &methods {
                    let mut cells = 0usize;
                    let mut robust_cells = 0usize;
                    let mut robust_sum = 0.0;
                    let mut all_sum = 0.0;
                    for (a, b) in h0.iter().zip(h1) {
                        if a.method != method
                            || a.params.dist != dist
                            || (a.params.n_a == a.params.n_b) != equal_sizes
                            || RhoSign::of(a.params.rho) != rho_sign
                        {
                            continue;
                        }
                        cells += 1;
                        all_sum += b.nhrr;
                        if !a.nhrr.is_nan() && band.classify(a.nhrr) == Robustness::Robust {
                            robust_cells += 1;
                            robust_sum += b.nhrr;
                        }
                    }
                    if cells == 0 {
                        continue;
                    }
                    out.push(PowerRow {
                        dist,
                        equal_sizes,
                        rho_sign,
                        method,
                        cells,
                        robust_cells,
                        power: (robust_cells > 0).then(|| robust_sum / robust_cells as f64),
                        power_strict: (robust_cells == cells).then(|| all_sum / cells as f64),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn power_cell(v: Option<f64>) -> String {
    match v {
        Some(p) => format!("{p:.3}"),
        None => "-".to_string(),
    }
}

/// Writes the power table as CSV: one row per (dist, sizes, rho sign) with
/// six method columns, followed by the strict all-or-nothing columns.
pub fn write_power_csv<W: Write>(mut w: W, rows: &[PowerRow]) -> Result<()> {
    write!(w, "dist,sizes,rho")?;
    for m in Method::ALL {
        write!(w, ",{m}")?;
    }
    for m in Method::ALL {
        write!(w, ",{m}_strict")?;
    }
    writeln!(w)?;
    for group in group_keys(rows) {
        let (dist, equal_sizes, rho_sign) = group;
        write!(
            w,
            "{},{},{}",
            dist,
            if equal_sizes { "equal" } else { "unequal" },
            rho_sign.as_str()
        )?;
        for m in Method::ALL {
            match find(rows, group, m) {
                Some(r) => write!(w, ",{}", power_cell(r.power))?,
                None => write!(w, ",")?,
            }
        }
        for m in Method::ALL {
            match find(rows, group, m) {
                Some(r) => write!(w, ",{}", power_cell(r.power_strict))?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Writes the power table as fixed-width text.
pub fn write_power_text<W: Write>(mut w: W, rows: &[PowerRow]) -> Result<()> {
    write!(w, "{:<12} {:<8} {:<4}", "dist", "sizes", "rho")?;
    for m in Method::ALL {
        write!(w, " {:>6}", m.as_str())?;
    }
    writeln!(w)?;
    for group in group_keys(rows) {
        let (dist, equal_sizes, rho_sign) = group;
        write!(
            w,
            "{:<12} {:<8} {:<4}",
            dist.as_str(),
            if equal_sizes { "equal" } else { "unequal" },
            rho_sign.as_str()
        )?;
        for m in Method::ALL {
            let cell = find(rows, group, m).map_or(String::new(), |r| power_cell(r.power));
            write!(w, " {cell:>6}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

fn group_keys(rows: &[PowerRow]) -> Vec<(DistributionKind, bool, RhoSign)> {
    let mut keys = Vec::new();
    for r in rows {
        let key = (r.dist, r.equal_sizes, r.rho_sign);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys
}

fn find(
    rows: &[PowerRow],
    key: (DistributionKind, bool, RhoSign),
    method: Method,
) -> Option<&PowerRow> {
    rows.iter()
        .find(|r| (r.dist, r.equal_sizes, r.rho_sign) == key && r.method == method)
}
