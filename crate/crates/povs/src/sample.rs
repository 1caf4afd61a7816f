//! Data model, CSV ingestion, validation and sufficient statistics for
//! partially overlapping samples.
//!
//! A partially overlapping sample holds `n_c` paired observations plus
//! `n_a` observations exclusive to Sample 1 and `n_b` exclusive to
//! Sample 2, so Sample j has `n_j = n_{a|b} + n_c` observations in total.

use std::io::{BufRead, BufReader, Read};

use crate::error::{Error, Result};

/// Two samples that share paired observations and each carry additional
/// unpaired observations.
#[derive(Debug, Clone, PartialEq)]
pub struct PartiallyOverlappingSample {
    /// Observations present in both samples, as (sample 1, sample 2).
    pub paired: Vec<(f64, f64)>,
    /// Observations exclusive to Sample 1.
    pub unpaired_a: Vec<f64>,
    /// Observations exclusive to Sample 2.
    pub unpaired_b: Vec<f64>,
}

impl PartiallyOverlappingSample {
    pub fn new(paired: Vec<(f64, f64)>, unpaired_a: Vec<f64>, unpaired_b: Vec<f64>) -> Self {
        Self {
            paired,
            unpaired_a,
            unpaired_b,
        }
    }

    /// Number of unpaired observations exclusive to Sample 1.
    pub fn n_a(&self) -> usize {
        self.unpaired_a.len()
    }

    /// Number of unpaired observations exclusive to Sample 2.
    pub fn n_b(&self) -> usize {
        self.unpaired_b.len()
    }

    /// Number of pairs.
    pub fn n_c(&self) -> usize {
        self.paired.len()
    }

    /// Total size of Sample 1.
    pub fn n_1(&self) -> usize {
        self.n_a() + self.n_c()
    }

    /// Total size of Sample 2.
    pub fn n_2(&self) -> usize {
        self.n_b() + self.n_c()
    }

    /// Pooled size `N = n_a + n_b + 2 n_c`.
    pub fn n_pooled(&self) -> usize {
        self.n_a() + self.n_b() + 2 * self.n_c()
    }

    /// All of Sample 1: paired first coordinates, then unpaired values.
    pub fn sample_1(&self) -> impl Iterator<Item = f64> + Clone + '_ {
        self.paired
            .iter()
            .map(|&(x, _)| x)
            .chain(self.unpaired_a.iter().copied())
    }

    /// All of Sample 2: paired second coordinates, then unpaired values.
    pub fn sample_2(&self) -> impl Iterator<Item = f64> + Clone + '_ {
        self.paired
            .iter()
            .map(|&(_, y)| y)
            .chain(self.unpaired_b.iter().copied())
    }
}

/// Sufficient statistics for every test statistic in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub n_a: usize,
    pub n_b: usize,
    pub n_c: usize,
    pub n_1: usize,
    pub n_2: usize,
    pub mean_1: f64,
    pub mean_2: f64,
    /// Sample variance of Sample 1 (denominator `n_1 - 1`).
    pub var_1: f64,
    /// Sample variance of Sample 2 (denominator `n_2 - 1`).
    pub var_2: f64,
    /// Pearson correlation of the paired observations; 0 when fewer than
    /// two pairs exist or a paired coordinate is constant.
    pub r: f64,
    /// Pooled size `N = n_a + n_b + 2 n_c`.
    pub n_pooled: usize,
}

/// Severity of a validation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Fatal,
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn is_fatal(&self) -> bool {
        self.severity == Severity::Fatal
    }

    fn warning(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
        }
    }

    fn fatal(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Fatal,
            message: message.into(),
        }
    }
}

/// Reads a sample from CSV with header `group1,group2`.
///
/// An empty field marks an observation missing from that group: rows with
/// both fields present become pairs, rows with only one become unpaired
/// observations. Input order is preserved within each list. Data rows are
/// numbered from 1 in error messages.
pub fn ingest_csv<R: Read>(reader: R) -> Result<PartiallyOverlappingSample> {
    let mut lines = BufReader::new(reader).lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(Error::MissingHeader(
                "empty input, expected header `group1,group2`".into(),
            ))
        }
    };
    let header = header.trim_start_matches('\u{feff}');
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["group1", "group2"] {
        return Err(Error::MissingHeader(format!(
            "expected header `group1,group2`, got `{}`",
            header.trim_end()
        )));
    }

    let mut sample = PartiallyOverlappingSample::new(Vec::new(), Vec::new(), Vec::new());
    let mut row = 0usize;
    for line in lines {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        row += 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                row,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let parse = |field: &str| -> Result<Option<f64>> {
            if field.is_empty() {
                return Ok(None);
            }
            match field.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some(v)),
                _ => Err(Error::Parse {
                    row,
                    message: format!("invalid number `{field}`"),
                }),
            }
        };
        match (parse(fields[0])?, parse(fields[1])?) {
            (Some(x), Some(y)) => sample.paired.push((x, y)),
            (Some(x), None) => sample.unpaired_a.push(x),
            (None, Some(y)) => sample.unpaired_b.push(y),
            (None, None) => {
                return Err(Error::Parse {
                    row,
                    message: "both fields empty".into(),
                })
            }
        }
    }
    Ok(sample)
}

/// Pearson product-moment correlation of paired observations.
///
/// Errors when fewer than two pairs are given or either coordinate is
/// constant; callers that want the neutral fallback map that case to 0.
pub fn pearson_r(pairs: &[(f64, f64)]) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "Pearson correlation needs at least 2 pairs, got {}",
            pairs.len()
        )));
    }
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in pairs {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate(
            "Pearson correlation undefined for a constant coordinate".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Computes the sufficient statistics of a sample.
///
/// Means and variances run over the full Sample j (its paired coordinate
/// plus its unpaired observations). The correlation falls back to 0 when
/// it is undefined (fewer than two pairs, or a constant paired coordinate).
pub fn summarize(s: &PartiallyOverlappingSample) -> Result<SampleSummary> {
    if s.n_1() < 2 || s.n_2() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 observations per sample, got n_1={}, n_2={}",
            s.n_1(),
            s.n_2()
        )));
    }
    let (mean_1, var_1) = mean_var(s.sample_1());
    let (mean_2, var_2) = mean_var(s.sample_2());
    let r = if s.n_c() >= 2 {
        pearson_r(&s.paired).unwrap_or(0.0)
    } else {
        0.0
    };
    Ok(SampleSummary {
        n_a: s.n_a(),
        n_b: s.n_b(),
        n_c: s.n_c(),
        n_1: s.n_1(),
        n_2: s.n_2(),
        mean_1,
        mean_2,
        var_1,
        var_2,
        r,
        n_pooled: s.n_pooled(),
    })
}

/// Checks a sample and reports warnings and fatal problems.
///
/// Fatal: a sample with fewer than 2 observations. Warnings: correlation
/// forced to 0 (fewer than two pairs, or a constant paired coordinate) and
/// zero variance within a sample.
pub fn validate(s: &PartiallyOverlappingSample) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if s.n_1() < 2 {
        out.push(Diagnostic::fatal(format!(
            "Sample 1 too small (n_1 = {})",
            s.n_1()
        )));
    }
    if s.n_2() < 2 {
        out.push(Diagnostic::fatal(format!(
            "Sample 2 too small (n_2 = {})",
            s.n_2()
        )));
    }
    match s.n_c() {
        0 => out.push(Diagnostic::warning(
            "no paired observations, r treated as 0",
        )),
        1 => out.push(Diagnostic::warning(
            "r undefined for a single pair, treated as 0",
        )),
        _ => {
            let xs_const = is_constant(s.paired.iter().map(|&(x, _)| x));
            let ys_const = is_constant(s.paired.iter().map(|&(_, y)| y));
            if xs_const || ys_const {
                out.push(Diagnostic::warning(
                    "paired observations have a constant coordinate, r treated as 0",
                ));
            }
        }
    }
    if s.n_1() >= 2 && is_constant(s.sample_1()) {
        out.push(Diagnostic::warning("Sample 1 has zero variance"));
    }
    if s.n_2() >= 2 && is_constant(s.sample_2()) {
        out.push(Diagnostic::warning("Sample 2 has zero variance"));
    }
    out
}

fn is_constant(values: impl Iterator<Item = f64>) -> bool {
    let mut values = values;
    match values.next() {
        None => true,
        Some(first) => values.all(|v| v == first),
    }
}

// Two-pass mean and sample variance (n - 1 denominator).
fn mean_var(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    let mean = values.clone().sum::<f64>() / n as f64;
    let ss = values.map(|v| (v - mean) * (v - mean)).sum::<f64>();
    (mean, ss / (n as f64 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv(s: &str) -> Result<PartiallyOverlappingSample> {
        ingest_csv(s.as_bytes())
    }

    #[test]
    fn ingest_counts_rows_by_shape() {
        let s = csv("group1,group2\n1,2\n3,4\n5,\n,6\n").unwrap();
        assert_eq!(s.n_c(), 2);
        assert_eq!(s.n_a(), 1);
        assert_eq!(s.n_b(), 1);
        assert_eq!(s.paired, vec![(1.0, 2.0), (3.0, 4.0)]);
        assert_eq!(s.unpaired_a, vec![5.0]);
        assert_eq!(s.unpaired_b, vec![6.0]);
    }

    #[test]
    fn ingest_single_pair() {
        let s = csv("group1,group2\n1,2\n").unwrap();
        assert_eq!((s.n_c(), s.n_a(), s.n_b()), (1, 0, 0));
    }

    #[test]
    fn ingest_rejects_empty_row_with_row_number() {
        let err = csv("group1,group2\n1,2\n,\n").unwrap_err();
        assert_eq!(err.to_string(), "row 2: both fields empty");
    }

    #[test]
    fn ingest_rejects_non_numeric_with_row_number() {
        let err = csv("group1,group2\n1,2\n3,x\n").unwrap_err();
        assert_eq!(err.to_string(), "row 2: invalid number `x`");
        let err = csv("group1,group2\nnan,2\n").unwrap_err();
        assert!(err.to_string().starts_with("row 1:"));
    }

    #[test]
    fn ingest_rejects_missing_header() {
        assert!(matches!(csv(""), Err(Error::MissingHeader(_))));
        assert!(matches!(csv("a,b\n1,2\n"), Err(Error::MissingHeader(_))));
    }

    #[test]
    fn ingest_accepts_scientific_notation_and_crlf() {
        let s = csv("group1,group2\r\n1e-3,2.5E2\r\n").unwrap();
        assert_eq!(s.paired, vec![(0.001, 250.0)]);
    }

    #[test]
    fn summarize_hand_example() {
        let s = PartiallyOverlappingSample::new(vec![(1.0, 2.0), (2.0, 4.0)], vec![3.0], vec![6.0]);
        let sum = summarize(&s).unwrap();
        assert_eq!(sum.n_1, 3);
        assert_eq!(sum.n_2, 3);
        assert_eq!(sum.mean_1, 2.0);
        assert_eq!(sum.mean_2, 4.0);
        assert_eq!(sum.var_1, 1.0);
        assert_eq!(sum.var_2, 4.0);
        assert_eq!(sum.n_pooled, 6);
    }

    #[test]
    fn summarize_constant_sample() {
        let s = PartiallyOverlappingSample::new(vec![(7.0, 7.0), (7.0, 7.0)], vec![7.0], vec![7.0]);
        let sum = summarize(&s).unwrap();
        assert_eq!(sum.mean_1, 7.0);
        assert_eq!(sum.mean_2, 7.0);
        assert_eq!(sum.var_1, 0.0);
        assert_eq!(sum.var_2, 0.0);
        assert_eq!(sum.r, 0.0); // constant coordinates: forced to 0
    }

    #[test]
    fn summarize_no_pairs_gives_zero_r() {
        let s = PartiallyOverlappingSample::new(vec![], vec![1.0, 2.0], vec![3.0, 4.0]);
        let sum = summarize(&s).unwrap();
        assert_eq!(sum.r, 0.0);
        assert_eq!(sum.n_c, 0);
    }

    #[test]
    fn summarize_insufficient_data() {
        let s = PartiallyOverlappingSample::new(vec![], vec![1.0], vec![2.0, 3.0]);
        assert!(matches!(summarize(&s), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn summarize_order_invariant() {
        let a = PartiallyOverlappingSample::new(
            vec![(1.0, 5.0), (2.0, 3.0), (4.0, 8.0)],
            vec![0.5, 9.0],
            vec![2.2],
        );
        let b = PartiallyOverlappingSample::new(
            vec![(4.0, 8.0), (1.0, 5.0), (2.0, 3.0)],
            vec![9.0, 0.5],
            vec![2.2],
        );
        let sa = summarize(&a).unwrap();
        let sb = summarize(&b).unwrap();
        assert!((sa.mean_1 - sb.mean_1).abs() < 1e-12);
        assert!((sa.var_1 - sb.var_1).abs() < 1e-12);
        assert!((sa.var_2 - sb.var_2).abs() < 1e-12);
        assert!((sa.r - sb.r).abs() < 1e-12);
    }

    #[test]
    fn summarize_shift_invariance() {
        let s = PartiallyOverlappingSample::new(
            vec![(1.0, 5.0), (2.0, 3.0), (4.0, 8.0)],
            vec![0.5, 9.0],
            vec![2.2],
        );
        let c = 13.75;
        let shifted = PartiallyOverlappingSample::new(
            s.paired.iter().map(|&(x, y)| (x + c, y + c)).collect(),
            s.unpaired_a.iter().map(|&x| x + c).collect(),
            s.unpaired_b.iter().map(|&x| x + c).collect(),
        );
        let a = summarize(&s).unwrap();
        let b = summarize(&shifted).unwrap();
        assert!((b.mean_1 - a.mean_1 - c).abs() < 1e-12);
        assert!((b.mean_2 - a.mean_2 - c).abs() < 1e-12);
        assert!((b.var_1 - a.var_1).abs() < 1e-12);
        assert!((b.var_2 - a.var_2).abs() < 1e-12);
        assert!((b.r - a.r).abs() < 1e-12);
    }

    #[test]
    fn pooled_count_identity() {
        for (nc, na, nb) in [(0, 2, 2), (3, 0, 0), (2, 1, 4)] {
            let s = PartiallyOverlappingSample::new(
                (0..nc).map(|i| (i as f64, i as f64 + 0.5)).collect(),
                (0..na).map(|i| i as f64 + 10.0).collect(),
                (0..nb).map(|i| i as f64 + 20.0).collect(),
            );
            assert_eq!(s.n_pooled(), na + nb + 2 * nc);
        }
    }

    #[test]
    fn pearson_perfect_and_inverse() {
        assert_eq!(
            pearson_r(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).unwrap(),
            1.0
        );
        assert_eq!(
            pearson_r(&[(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)]).unwrap(),
            -1.0
        );
    }

    #[test]
    fn pearson_product_moment_value() {
        // Direct product-moment evaluation: r = 6 / sqrt(6 * 14) = 3/sqrt(21).
        let r = pearson_r(&[(1.0, 2.0), (2.0, 1.0), (3.0, 4.0)]).unwrap();
        let want = 3.0 / 21.0_f64.sqrt();
        assert!((want - 0.654_653_670_707_977_1).abs() < 1e-15);
        assert!((r - want).abs() < 1e-12, "r = {r}");
    }

    #[test]
    fn pearson_degenerate_inputs() {
        assert!(matches!(
            pearson_r(&[(1.0, 2.0)]),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            pearson_r(&[(1.0, 2.0), (1.0, 3.0)]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn validate_single_pair_warns() {
        let s = PartiallyOverlappingSample::new(vec![(1.0, 2.0)], vec![3.0], vec![4.0]);
        let diags = validate(&s);
        assert!(diags
            .iter()
            .any(|d| !d.is_fatal() && d.message.contains("single pair")));
    }

    #[test]
    fn validate_small_sample_fatal() {
        let s = PartiallyOverlappingSample::new(vec![], vec![1.0], vec![2.0, 3.0]);
        let diags = validate(&s);
        assert!(diags
            .iter()
            .any(|d| d.is_fatal() && d.message.contains("Sample 1 too small")));
    }

    #[test]
    fn validate_clean_sample_has_no_diagnostics() {
        let s = PartiallyOverlappingSample::new(
            vec![(1.0, 2.0), (2.0, 1.0), (3.0, 4.0)],
            vec![0.5],
            vec![5.5],
        );
        assert!(validate(&s).is_empty());
    }
}
