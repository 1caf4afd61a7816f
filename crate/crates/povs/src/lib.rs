//! Test statistics for two samples that contain both paired and
//! independent observations ("partially overlapping samples"), plus a
//! Monte Carlo engine for studying their Type I error robustness and
//! power.
//!
//! Six methods share two formulas. The parametric statistics interpolate
//! between the paired t-test and an independent-samples t-test, assuming
//! equal variances (`new1`, with degrees of freedom `v1`) or not (`new2`,
//! with Welch-style `v2`). Replacing the raw values by pooled ranks gives
//! the nonparametric `rnk1`/`rnk2`; replacing them by Van der Waerden
//! normal scores gives the distribution-free `int1`/`int2`.
//!
//! ```
//! use povs::{run_test, Method, PartiallyOverlappingSample};
//!
//! let sample = PartiallyOverlappingSample::new(
//!     vec![(5.1, 6.2), (4.3, 5.0), (6.0, 7.4), (5.5, 5.9)], // paired
//!     vec![4.8, 5.7],                                       // only sample 1
//!     vec![6.8, 5.4],                                       // only sample 2
//! );
//! let result = run_test(&sample, Method::New1, 0.05).unwrap();
//! assert!(result.p_value < 0.05);
//! ```
//!
//! The simulation side enumerates a factorial design over group sizes,
//! pair correlation and marginal distribution, runs a configured number of
//! replicates per cell on deterministic substreams, and reports null
//! hypothesis rejection rates with robustness classifications and
//! aggregated power tables. See the `examples/` directory for one runnable
//! example per capability, and the `povs` binary for the CLI.

pub mod cli;
pub mod error;
pub mod report;
pub mod rng;
pub mod sample;
pub mod sim;
pub mod special;
pub mod transform;
pub mod ttest;

pub use error::{Error, Result};
pub use sample::{
    ingest_csv, pearson_r, summarize, validate, Diagnostic, PartiallyOverlappingSample,
    SampleSummary, Severity,
};
pub use sim::{
    enumerate_design, run_campaign, run_cell, CampaignConfig, CampaignReport, CellResult,
    MethodTally, Robustness, RobustnessBand,
};
pub use transform::{
    pooled_ranks, transformed_summary, vdw_scores, TransformKind, TransformedSample,
};
pub use ttest::{df_v1, df_v2, run_test, run_tests, t_new1, t_new2, Method, TestResult};

pub use rng::{
    correlated_pair, gen_cell_sample, substream_seed, transform_deviate, CellParams,
    DistributionKind, Mt19937,
};
