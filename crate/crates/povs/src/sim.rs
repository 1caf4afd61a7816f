//! Factorial simulation campaigns.
//!
//! A campaign enumerates the design grid, runs a fixed number of replicates
//! per cell on per-replicate substreams, tallies the null hypothesis
//! rejection rate (NHRR) per method, and classifies each rate against the
//! robustness band. Cells are independent work units and run in parallel;
//! the output is a pure function of the configuration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{gen_cell_sample, CellParams, DistributionKind, Mt19937};
use crate::ttest::{run_tests_with_offset, Method};

/// Full description of a campaign. Serialized as JSON field-for-field, and
/// embedded in every report for provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub n_a_grid: Vec<usize>,
    pub n_b_grid: Vec<usize>,
    pub n_c_grid: Vec<usize>,
    pub rho_grid: Vec<f64>,
    pub distributions: Vec<DistributionKind>,
    /// Location shift added to Sample 2 (0 under the null hypothesis).
    pub delta: f64,
    pub replicates: usize,
    pub alpha: f64,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    /// Rank offset `c` of the normal-score transform; 0 is the Van der
    /// Waerden default used everywhere in the study.
    pub score_offset: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            n_a_grid: vec![5, 10, 30, 50, 100, 500],
            n_b_grid: vec![5, 10, 30, 50, 100, 500],
            n_c_grid: vec![5, 10, 30, 50, 100, 500],
            rho_grid: vec![-0.75, -0.50, -0.25, 0.00, 0.25, 0.50, 0.75],
            distributions: vec![DistributionKind::Normal],
            delta: 0.0,
            replicates: 10_000,
            alpha: 0.05,
            master_seed: 5489,
            methods: Method::ALL.to_vec(),
            score_offset: 0.0,
        }
    }
}

impl CampaignConfig {
    /// Checks grids, replicate count, alpha and correlations.
    pub fn validate(&self) -> Result<()> {
        if self.n_a_grid.is_empty() {
            return Err(Error::EmptyGrid("n_a_grid"));
        }
        if self.n_b_grid.is_empty() {
            return Err(Error::EmptyGrid("n_b_grid"));
        }
        if self.n_c_grid.is_empty() {
            return Err(Error::EmptyGrid("n_c_grid"));
        }
        if self.rho_grid.is_empty() {
            return Err(Error::EmptyGrid("rho_grid"));
        }
        if self.distributions.is_empty() {
            return Err(Error::EmptyGrid("distributions"));
        }
        if self.methods.is_empty() {
            return Err(Error::EmptyGrid("methods"));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha must be in (0, 1), got {}",
                self.alpha
            )));
        }
        for &rho in &self.rho_grid {
            if !(-1.0..=1.0).contains(&rho) {
                return Err(Error::Config(format!(
                    "rho grid value {rho} outside [-1, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// The Type I error robustness band (defaults to [0.025, 0.075], endpoints
/// inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustnessBand {
    pub lower: f64,
    pub upper: f64,
}

impl Default for RobustnessBand {
    fn default() -> Self {
        RobustnessBand {
            lower: 0.025,
            upper: 0.075,
        }
    }
}

/// Classification of an NHRR against the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Robustness {
    Conservative,
    Robust,
    Liberal,
}

impl Robustness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Robustness::Conservative => "conservative",
            Robustness::Robust => "robust",
            Robustness::Liberal => "liberal",
        }
    }
}

impl RobustnessBand {
    /// Inclusive at both endpoints.
    pub fn classify(&self, nhrr: f64) -> Robustness {
        if nhrr < self.lower {
            Robustness::Conservative
        } else if nhrr > self.upper {
            Robustness::Liberal
        } else {
            Robustness::Robust
        }
    }
}

/// Per-method tally within one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodTally {
    pub method: Method,
    pub rejections: u64,
    /// Replicates where the method failed (degenerate statistic); these
    /// are excluded from the NHRR denominator.
    pub errors: u64,
    /// `rejections / (replicates - errors)`; NaN if every replicate failed.
    pub nhrr: f64,
    /// Classification against the default band; `None` flags a
    /// pathological cell where every replicate failed.
    pub classification: Option<Robustness>,
}

/// Result of one cell of the design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub cell_index: usize,
    pub params: CellParams,
    pub replicates: usize,
    pub tallies: Vec<MethodTally>,
}

/// A finished campaign: the configuration it came from plus every cell in
/// design order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub cells: Vec<CellResult>,
}

/// Enumerates the factorial design in documented lexicographic order:
/// distribution, then `n_a`, then `n_b`, then `n_c`, then `rho`. A cell's
/// index is its position in this order.
pub fn enumerate_design(cfg: &CampaignConfig) -> Result<Vec<CellParams>> {
    cfg.validate()?;
    let mut cells = Vec::with_capacity(
        cfg.distributions.len()
            * cfg.n_a_grid.len()
            * cfg.n_b_grid.len()
            * cfg.n_c_grid.len()
            * cfg.rho_grid.len(),
    );
    for &dist in &cfg.distributions {
        for &n_a in &cfg.n_a_grid {
            for &n_b in &cfg.n_b_grid {
                for &n_c in &cfg.n_c_grid {
                    for &rho in &cfg.rho_grid {
                        cells.push(CellParams {
                            n_a,
                            n_b,
                            n_c,
                            rho,
                            dist,
                            delta: cfg.delta,
                        });
                    }
                }
            }
        }
    }
    Ok(cells)
}

/// Runs every replicate of one cell and tallies per-method rejections.
///
/// Replicate `i` runs on the substream `(master_seed, cell_index, i)`, so
/// the result does not depend on which worker executes it.
pub fn run_cell(params: &CellParams, cell_index: usize, cfg: &CampaignConfig) -> CellResult {
    let mut rejections = vec![0u64; cfg.methods.len()];
    let mut errors = vec![0u64; cfg.methods.len()];

    for rep in 0..cfg.replicates {
        let mut rng = Mt19937::for_stream(cfg.master_seed, cell_index as u64, rep as u64);
        let sample = gen_cell_sample(params, &mut rng)
            .expect("cell parameters are validated before the campaign starts");
        let outcomes = run_tests_with_offset(&sample, &cfg.methods, cfg.alpha, cfg.score_offset);
        for (i, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Ok(result) if result.reject => rejections[i] += 1,
                Ok(_) => {}
                Err(_) => errors[i] += 1,
            }
        }
    }

    let band = RobustnessBand::default();
    let tallies = cfg
        .methods
        .iter()
        .zip(rejections.iter().zip(&errors))
        .map(|(&method, (&rej, &err))| {
            let valid = cfg.replicates as u64 - err;
            let nhrr = if valid > 0 {
                rej as f64 / valid as f64
            } else {
                f64::NAN
            };
            MethodTally {
                method,
                rejections: rej,
                errors: err,
                nhrr,
                classification: (valid > 0).then(|| band.classify(nhrr)),
            }
        })
        .collect();

    CellResult {
        cell_index,
        params: *params,
        replicates: cfg.replicates,
        tallies,
    }
}

/// Runs a whole campaign. Cells execute in parallel on the current rayon
/// pool; the report lists them in design order regardless of scheduling.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let cells = enumerate_design(cfg)?;
    let results: Vec<CellResult> = cells
        .par_iter()
        .enumerate()
        .map(|(index, params)| run_cell(params, index, cfg))
        .collect();
    Ok(CampaignReport {
        config: cfg.clone(),
        cells: results,
    })
}
