//! The six partially overlapping samples test statistics.
//!
//! Two parametric statistics interpolate between the paired t-test and the
//! two independent-samples t-tests: one assumes equal variances and is
//! referenced against `v1` degrees of freedom, the other allows unequal
//! variances and uses `v2` (a Welch-style interpolation). Substituting
//! pooled ranks for the raw values gives the RNK variants; substituting
//! Van der Waerden normal scores gives the INT variants. All six share the
//! same two formulas, applied to different sufficient statistics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{summarize, validate, PartiallyOverlappingSample, SampleSummary};
use crate::special::t_p_two_sided;
use crate::transform::{pooled_ranks, scores_from_ranks_with_offset, transformed_summary};

/// Guard against variance brackets collapsing to 0 from cancellation
/// (e.g. r -> 1 with every observation paired).
const DENOM_FLOOR: f64 = 1e-300;

/// One of the six test methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Parametric, equal variances assumed.
    New1,
    /// Parametric, variances free.
    New2,
    /// Pooled ranks substituted into the equal-variance statistic.
    Rnk1,
    /// Pooled ranks substituted into the unequal-variance statistic.
    Rnk2,
    /// Van der Waerden scores in the equal-variance statistic.
    Int1,
    /// Van der Waerden scores in the unequal-variance statistic.
    Int2,
}

/// Which values a method consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputScale {
    Raw,
    Ranks,
    Scores,
}

impl Method {
    /// All methods, in canonical reporting order.
    pub const ALL: [Method; 6] = [
        Method::New1,
        Method::New2,
        Method::Rnk1,
        Method::Rnk2,
        Method::Int1,
        Method::Int2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::New1 => "new1",
            Method::New2 => "new2",
            Method::Rnk1 => "rnk1",
            Method::Rnk2 => "rnk2",
            Method::Int1 => "int1",
            Method::Int2 => "int2",
        }
    }

    /// True for the equal-variance family (statistic `T1`, df `v1`).
    pub fn assumes_equal_variances(&self) -> bool {
        matches!(self, Method::New1 | Method::Rnk1 | Method::Int1)
    }

    pub fn input_scale(&self) -> InputScale {
        match self {
            Method::New1 | Method::New2 => InputScale::Raw,
            Method::Rnk1 | Method::Rnk2 => InputScale::Ranks,
            Method::Int1 | Method::Int2 => InputScale::Scores,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "new1" => Ok(Method::New1),
            "new2" => Ok(Method::New2),
            "rnk1" => Ok(Method::Rnk1),
            "rnk2" => Ok(Method::Rnk2),
            "int1" => Ok(Method::Int1),
            "int2" => Ok(Method::Int2),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Outcome of one test on one sample.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    pub method: Method,
    pub statistic: f64,
    pub df: f64,
    pub p_value: f64,
    pub reject: bool,
    pub alpha: f64,
    pub warnings: Vec<String>,
}

/// Equal-variance statistic: the mean difference over a pooled standard
/// error whose bracket interpolates between the paired and independent
/// designs through the paired-count weight `n_c / (n_1 n_2)` and `r`.
pub fn t_new1(sum: &SampleSummary) -> Result<f64> {
    let n1 = sum.n_1 as f64;
    let n2 = sum.n_2 as f64;
    let nc = sum.n_c as f64;
    let sp2 = ((n1 - 1.0) * sum.var_1 + (n2 - 1.0) * sum.var_2) / (n1 + n2 - 2.0);
    let bracket = 1.0 / n1 + 1.0 / n2 - 2.0 * sum.r * nc / (n1 * n2);
    if sp2 <= 0.0 {
        return Err(Error::Degenerate(
            "pooled variance is zero (all observations tied)".into(),
        ));
    }
    if bracket <= DENOM_FLOOR {
        return Err(Error::Degenerate(format!(
            "variance bracket is not positive ({bracket:e})"
        )));
    }
    Ok((sum.mean_1 - sum.mean_2) / (sp2.sqrt() * bracket.sqrt()))
}

/// Degrees of freedom `v1` for the equal-variance statistic; depends only
/// on the counts. Reduces to `n_c - 1` when everything is paired and to
/// `n_a + n_b - 2` when nothing is.
pub fn df_v1(n_a: usize, n_b: usize, n_c: usize) -> Result<f64> {
    let na = n_a as f64;
    let nb = n_b as f64;
    let nc = n_c as f64;
    let df = (nc - 1.0) + (na + nb + nc - 1.0) / (na + nb + 2.0 * nc) * (na + nb);
    if df <= 0.0 {
        return Err(Error::Degenerate(format!(
            "non-positive degrees of freedom v1 = {df} (n_a={n_a}, n_b={n_b}, n_c={n_c})"
        )));
    }
    Ok(df)
}

/// Unequal-variance statistic: like [`t_new1`] but with each sample's own
/// variance in the standard error.
pub fn t_new2(sum: &SampleSummary) -> Result<f64> {
    let n1 = sum.n_1 as f64;
    let n2 = sum.n_2 as f64;
    let nc = sum.n_c as f64;
    let s1 = sum.var_1.sqrt();
    let s2 = sum.var_2.sqrt();
    let bracket = sum.var_1 / n1 + sum.var_2 / n2 - 2.0 * sum.r * (s1 * s2 * nc) / (n1 * n2);
    if bracket <= DENOM_FLOOR {
        return Err(Error::Degenerate(format!(
            "variance bracket is not positive ({bracket:e})"
        )));
    }
    Ok((sum.mean_1 - sum.mean_2) / bracket.sqrt())
}

/// Degrees of freedom `v2`: a Welch-style interpolation built on the
/// Satterthwaite effective df `gamma` of the same summary. Reduces to
/// `n_c - 1` when everything is paired and to `gamma` when nothing is.
pub fn df_v2(sum: &SampleSummary) -> Result<f64> {
    let n1 = sum.n_1 as f64;
    let n2 = sum.n_2 as f64;
    let na = sum.n_a as f64;
    let nb = sum.n_b as f64;
    let nc = sum.n_c as f64;
    let w1 = sum.var_1 / n1;
    let w2 = sum.var_2 / n2;
    if w1 + w2 <= 0.0 {
        return Err(Error::Degenerate("both sample variances are zero".into()));
    }
    let gamma = (w1 + w2) * (w1 + w2) / (w1 * w1 / (n1 - 1.0) + w2 * w2 / (n2 - 1.0));
    let df = (nc - 1.0) + (gamma - nc + 1.0) / (na + nb + 2.0 * nc) * (na + nb);
    if df <= 0.0 {
        return Err(Error::Degenerate(format!(
            "non-positive degrees of freedom v2 = {df}"
        )));
    }
    Ok(df)
}

/// Runs one method on a sample at significance level `alpha`.
pub fn run_test(s: &PartiallyOverlappingSample, method: Method, alpha: f64) -> Result<TestResult> {
    run_tests(s, &[method], alpha)
        .pop()
        .expect("one method requested")
}

/// Runs several methods on one sample, computing each transform at most
/// once. Results come back in the order the methods were given, each with
/// its own error if it failed.
pub fn run_tests(
    s: &PartiallyOverlappingSample,
    methods: &[Method],
    alpha: f64,
) -> Vec<Result<TestResult>> {
    run_tests_with_offset(s, methods, alpha, 0.0)
}

/// [`run_tests`] with a non-default rank offset `c` in the normal-score
/// transform (exploration only; 0 is the Van der Waerden default).
pub fn run_tests_with_offset(
    s: &PartiallyOverlappingSample,
    methods: &[Method],
    alpha: f64,
    score_offset: f64,
) -> Vec<Result<TestResult>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return methods
            .iter()
            .map(|&m| {
                Err(Error::Domain(format!("alpha must be in (0, 1), got {alpha}")).for_method(m))
            })
            .collect();
    }

    let diagnostics = validate(s);
    let fatal: Vec<&str> = diagnostics
        .iter()
        .filter(|d| d.is_fatal())
        .map(|d| d.message.as_str())
        .collect();
    if !fatal.is_empty() {
        let message = fatal.join("; ");
        return methods
            .iter()
            .map(|&m| Err(Error::InsufficientData(message.clone()).for_method(m)))
            .collect();
    }
    let warnings: Vec<String> = diagnostics.into_iter().map(|d| d.message).collect();

    // Shared, lazily computed summaries per input scale.
    let mut raw: Option<Result<SampleSummary>> = None;
    let mut ranked = None;
    let mut rank_sum: Option<Result<SampleSummary>> = None;
    let mut score_sum: Option<Result<SampleSummary>> = None;

    let mut results = Vec::with_capacity(methods.len());
    for &method in methods {
        let summary = match method.input_scale() {
            InputScale::Raw => raw.get_or_insert_with(|| summarize(s)),
            InputScale::Ranks => {
                let ranked = ranked.get_or_insert_with(|| pooled_ranks(s));
                rank_sum.get_or_insert_with(|| transformed_summary(ranked))
            }
            InputScale::Scores => {
                let ranked = ranked.get_or_insert_with(|| pooled_ranks(s));
                score_sum.get_or_insert_with(|| {
                    scores_from_ranks_with_offset(ranked, score_offset)
                        .and_then(|t| transformed_summary(&t))
                })
            }
        };
        results.push(match summary {
            Err(e) => Err(Error::Degenerate(e.to_string()).for_method(method)),
            Ok(summary) => {
                evaluate(summary, method, alpha, &warnings).map_err(|e| e.for_method(method))
            }
        });
    }
    results
}

fn evaluate(
    sum: &SampleSummary,
    method: Method,
    alpha: f64,
    warnings: &[String],
) -> Result<TestResult> {
    let (statistic, df) = if method.assumes_equal_variances() {
        (t_new1(sum)?, df_v1(sum.n_a, sum.n_b, sum.n_c)?)
    } else {
        (t_new2(sum)?, df_v2(sum)?)
    };
    let p_value = t_p_two_sided(statistic, df)?;
    Ok(TestResult {
        method,
        statistic,
        df,
        p_value,
        reject: p_value < alpha,
        alpha,
        warnings: warnings.to_vec(),
    })
}
