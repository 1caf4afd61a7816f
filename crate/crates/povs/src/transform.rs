//! Pooled ranking and the Van der Waerden normal-score transform.
//!
//! Both transforms pool all `N = n_a + n_b + 2 n_c` observations, rank them
//! ascending (ties get the midrank), and return each transformed value to
//! the structural slot of its source observation, so the paired/unpaired
//! layout of the input is preserved exactly.

use crate::error::Result;
use crate::sample::{summarize, PartiallyOverlappingSample, SampleSummary};
use crate::special::normal_quantile;

/// What a [`TransformedSample`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// Midranks in `[1, N]`.
    Ranks,
    /// Normal scores `Phi^-1(y / (N + 1))` of the midranks.
    VdwScores,
}

/// A sample whose values have been replaced by ranks or normal scores,
/// with the original structure intact.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedSample {
    values: PartiallyOverlappingSample,
    kind: TransformKind,
    tie_count: usize,
}

impl TransformedSample {
    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// Number of observations that shared a value with an earlier one
    /// (0 when all pooled values are distinct).
    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    /// Pooled size `N`.
    pub fn n_pooled(&self) -> usize {
        self.values.n_pooled()
    }

    /// The transformed values in the source sample's layout.
    pub fn values(&self) -> &PartiallyOverlappingSample {
        &self.values
    }

    pub fn paired(&self) -> &[(f64, f64)] {
        &self.values.paired
    }

    pub fn unpaired_a(&self) -> &[f64] {
        &self.values.unpaired_a
    }

    pub fn unpaired_b(&self) -> &[f64] {
        &self.values.unpaired_b
    }
}

/// Ranks the pooled observations ascending, ties as midranks.
pub fn pooled_ranks(s: &PartiallyOverlappingSample) -> TransformedSample {
    let n_c = s.n_c();
    let n_a = s.n_a();
    let n = s.n_pooled();

    // Flat layout: paired firsts, paired seconds, unpaired a, unpaired b.
    let mut pooled = Vec::with_capacity(n);
    pooled.extend(s.paired.iter().map(|&(x, _)| x));
    pooled.extend(s.paired.iter().map(|&(_, y)| y));
    pooled.extend(&s.unpaired_a);
    pooled.extend(&s.unpaired_b);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));

    let mut ranks = vec![0.0; n];
    let mut tie_count = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start..end (0-based) hold ranks start+1..end.
        let midrank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = midrank;
        }
        tie_count += end - start - 1;
        start = end;
    }

    let values = PartiallyOverlappingSample::new(
        (0..n_c).map(|i| (ranks[i], ranks[n_c + i])).collect(),
        ranks[2 * n_c..2 * n_c + n_a].to_vec(),
        ranks[2 * n_c + n_a..].to_vec(),
    );
    TransformedSample {
        values,
        kind: TransformKind::Ranks,
        tie_count,
    }
}

/// Van der Waerden scores: `Phi^-1(y_i / (N + 1))` of the midranks.
pub fn vdw_scores(s: &PartiallyOverlappingSample) -> TransformedSample {
    scores_from_ranks(&pooled_ranks(s))
}

/// Normal scores with a general rank offset `c`:
/// `Phi^-1((y_i - c) / (N - 2c + 1))`. `c = 0` is the Van der Waerden
/// transform; other values are exposed for exploration only.
pub fn vdw_scores_with_offset(s: &PartiallyOverlappingSample, c: f64) -> Result<TransformedSample> {
    scores_from_ranks_with_offset(&pooled_ranks(s), c)
}

/// Converts an already-ranked sample to Van der Waerden scores.
pub fn scores_from_ranks(ranks: &TransformedSample) -> TransformedSample {
    // y/(N+1) is always inside (0, 1), so the quantile cannot fail.
    scores_from_ranks_with_offset(ranks, 0.0).expect("midrank fractions lie inside (0, 1)")
}

/// Converts a ranked sample to normal scores with rank offset `c`.
pub fn scores_from_ranks_with_offset(
    ranks: &TransformedSample,
    c: f64,
) -> Result<TransformedSample> {
    debug_assert_eq!(ranks.kind, TransformKind::Ranks);
    let n = ranks.n_pooled() as f64;
    let score = |y: f64| normal_quantile((y - c) / (n - 2.0 * c + 1.0));
    let paired = ranks
        .values
        .paired
        .iter()
        .map(|&(x, y)| Ok((score(x)?, score(y)?)))
        .collect::<Result<Vec<_>>>()?;
    let unpaired_a = ranks
        .values
        .unpaired_a
        .iter()
        .map(|&x| score(x))
        .collect::<Result<Vec<_>>>()?;
    let unpaired_b = ranks
        .values
        .unpaired_b
        .iter()
        .map(|&x| score(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformedSample {
        values: PartiallyOverlappingSample::new(paired, unpaired_a, unpaired_b),
        kind: TransformKind::VdwScores,
        tie_count: ranks.tie_count,
    })
}

/// Sufficient statistics of a transformed sample: the same computation as
/// [`summarize`], applied to the ranks or scores (including the Pearson
/// correlation of the transformed pairs).
pub fn transformed_summary(t: &TransformedSample) -> Result<SampleSummary> {
    summarize(&t.values)
}
