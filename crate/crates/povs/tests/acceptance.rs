//! Acceptance suite. One test per criterion; each prints a PASS line
//! (visible with `--nocapture`).
//!
//! Criterion 7 (full-scale reproduction of the reference power table) is
//! `#[ignore]`d: it is an overnight job, not a gate. Run it with
//! `cargo test --release --test acceptance -- --ignored --nocapture`.

use std::collections::BTreeMap;

use povs::report::{aggregate_power, result_rows};
use povs::rng::{transform_deviate, DistributionKind, Mt19937};
use povs::sim::{run_campaign, run_cell, CampaignConfig, Robustness, RobustnessBand};
use povs::transform::{pooled_ranks, vdw_scores};
use povs::ttest::{df_v1, df_v2, run_test, t_new1, t_new2, Method};
use povs::{summarize, CellParams, PartiallyOverlappingSample};

/// Straight-line evaluation of the six statistics on the golden sample,
/// written against the formulas alone. The p-value route is quadrature of
/// the t density, independent of the incomplete beta path in the library.
mod oracle {
    pub const PAIRED: [(f64, f64); 4] = [(5.1, 6.2), (4.3, 5.0), (6.0, 7.4), (5.5, 5.9)];
    pub const ONLY_1: [f64; 2] = [4.8, 5.7];
    pub const ONLY_2: [f64; 2] = [6.8, 5.4];

    fn mean(xs: &[f64]) -> f64 {
        xs.iter().sum::<f64>() / xs.len() as f64
    }

    fn sample_var(xs: &[f64]) -> f64 {
        let m = mean(xs);
        xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
    }

    fn pearson(pairs: &[(f64, f64)]) -> f64 {
        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let (mx, my) = (mean(&xs), mean(&ys));
        let sxy: f64 = pairs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
        sxy / (sxx * syy).sqrt()
    }

    // Ordinary ascending ranks of the pooled 12 values (no ties in the
    // golden data).
    fn ranks(pooled: &[f64]) -> Vec<f64> {
        let mut order: Vec<usize> = (0..pooled.len()).collect();
        order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
        let mut out = vec![0.0; pooled.len()];
        for (pos, &i) in order.iter().enumerate() {
            out[i] = (pos + 1) as f64;
        }
        out
    }

    // Normal CDF by Taylor series (central range only; the golden scores
    // need quantiles of k/13, all well inside it).
    fn phi(x: f64) -> f64 {
        let pdf = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut term = x;
        let mut sum = x;
        let mut k = 0u32;
        while term.abs() > 1e-18 * sum.abs().max(1.0) && k < 500 {
            k += 1;
            term *= x * x / (2 * k + 1) as f64;
            sum += term;
        }
        0.5 + pdf * sum
    }

    fn quantile(p: f64) -> f64 {
        let (mut lo, mut hi) = (-8.0_f64, 8.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    // Adaptive Simpson quadrature with Richardson correction.
    #[allow(clippy::too_many_arguments)]
    fn adaptive(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return whole; // interval exhausted in f64
        }
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            let eps = (0.5 * eps).max(1e-18);
            adaptive(f, a, m, fa, flm, fm, left, eps, depth - 1)
                + adaptive(f, m, b, fm, frm, fb, right, eps, depth - 1)
        }
    }

    fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let fa = f(a);
        let fb = f(b);
        let fm = f(0.5 * (a + b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        adaptive(f, a, b, fa, fm, fb, whole, 1e-15, 30)
    }

    // Two-sided p-value by quadrature. Substituting u = sqrt(v) tan(theta)
    // into the t density turns P(|T| >= t) into a ratio of integrals of
    // cos^(v-1) over finite intervals, so no tail truncation is needed:
    //   p = int_{atan(t/sqrt v)}^{pi/2} cos^(v-1) / int_0^{pi/2} cos^(v-1).
    fn t_p_two_sided(t: f64, v: f64) -> f64 {
        let g = move |theta: f64| theta.cos().powf(v - 1.0);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let theta_t = (t.abs() / v.sqrt()).atan();
        integrate(&g, theta_t, half_pi) / integrate(&g, 0.0, half_pi)
    }

    fn stats(paired: &[(f64, f64)], only_1: &[f64], only_2: &[f64]) -> (f64, f64, f64, f64, f64) {
        let s1: Vec<f64> = paired
            .iter()
            .map(|p| p.0)
            .chain(only_1.iter().copied())
            .collect();
        let s2: Vec<f64> = paired
            .iter()
            .map(|p| p.1)
            .chain(only_2.iter().copied())
            .collect();
        (
            mean(&s1),
            mean(&s2),
            sample_var(&s1),
            sample_var(&s2),
            pearson(paired),
        )
    }

    // The six (statistic, df, p) triples in reporting order.
    pub fn six_triples() -> [(f64, f64, f64); 6] {
        let n_a = 2.0;
        let n_b = 2.0;
        let n_c = 4.0;
        let n_1 = 6.0;
        let n_2 = 6.0;

        // Rank and score versions of the sample, structure preserved.
        let mut pooled: Vec<f64> = PAIRED.iter().map(|p| p.0).collect();
        pooled.extend(PAIRED.iter().map(|p| p.1));
        pooled.extend(ONLY_1);
        pooled.extend(ONLY_2);
        let rk = ranks(&pooled);
        let n = pooled.len() as f64;
        let sc: Vec<f64> = rk.iter().map(|&y| quantile(y / (n + 1.0))).collect();

        let layout = |v: &[f64]| -> ([(f64, f64); 4], [f64; 2], [f64; 2]) {
            (
                [(v[0], v[4]), (v[1], v[5]), (v[2], v[6]), (v[3], v[7])],
                [v[8], v[9]],
                [v[10], v[11]],
            )
        };
        let raw: Vec<f64> = pooled.clone();
        let mut out = [(0.0, 0.0, 0.0); 6];
        for (slot, values) in [(0usize, &raw), (2, &rk), (4, &sc)] {
            let (paired, only_1, only_2) = layout(values);
            let (m1, m2, v1, v2, r) = stats(&paired, &only_1, &only_2);

            let sp = (((n_1 - 1.0) * v1 + (n_2 - 1.0) * v2) / (n_1 + n_2 - 2.0)).sqrt();
            let t1 =
                (m1 - m2) / (sp * (1.0 / n_1 + 1.0 / n_2 - 2.0 * r * n_c / (n_1 * n_2)).sqrt());
            let df1 = (n_c - 1.0) + (n_a + n_b + n_c - 1.0) / (n_a + n_b + 2.0 * n_c) * (n_a + n_b);

            let t2 = (m1 - m2)
                / (v1 / n_1 + v2 / n_2 - 2.0 * r * (v1.sqrt() * v2.sqrt() * n_c) / (n_1 * n_2))
                    .sqrt();
            let w1 = v1 / n_1;
            let w2 = v2 / n_2;
            let gamma = (w1 + w2) * (w1 + w2) / (w1 * w1 / (n_1 - 1.0) + w2 * w2 / (n_2 - 1.0));
            let df2 = (n_c - 1.0) + (gamma - n_c + 1.0) / (n_a + n_b + 2.0 * n_c) * (n_a + n_b);

            out[slot] = (t1, df1, t_p_two_sided(t1, df1));
            out[slot + 1] = (t2, df2, t_p_two_sided(t2, df2));
        }
        out
    }
}

fn golden_sample() -> PartiallyOverlappingSample {
    PartiallyOverlappingSample::new(
        oracle::PAIRED.to_vec(),
        oracle::ONLY_1.to_vec(),
        oracle::ONLY_2.to_vec(),
    )
}

fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn read_golden_results() -> Vec<(Method, f64, f64, f64)> {
    let text = std::fs::read_to_string(data_path("golden_results.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "method,statistic,df,p_value");
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_1_golden_oracle_equivalence() {
    let triples = oracle::six_triples();
    let frozen = read_golden_results();
    let sample = golden_sample();
    assert_eq!(frozen.len(), 6);
    for (i, (method, (ot, odf, op))) in Method::ALL.iter().zip(triples).enumerate() {
        // Straight-line oracle agrees with the committed golden file.
        let (fm, ft, fdf, fp) = frozen[i];
        assert_eq!(fm, *method);
        assert!(
            (ot - ft).abs() <= 1e-10,
            "{method} oracle stat {ot} vs frozen {ft}"
        );
        assert!(
            (odf - fdf).abs() <= 1e-10,
            "{method} oracle df {odf} vs frozen {fdf}"
        );
        assert!(
            (op - fp).abs() <= 1e-10,
            "{method} oracle p {op} vs frozen {fp}"
        );

        // Library agrees with the straight-line oracle.
        let res = run_test(&sample, *method, 0.05).unwrap();
        assert!(
            (res.statistic - ot).abs() <= 1e-10,
            "{method} statistic {} vs oracle {ot}",
            res.statistic
        );
        assert!(
            (res.df - odf).abs() <= 1e-10,
            "{method} df {} vs oracle {odf}",
            res.df
        );
        assert!(
            (res.p_value - op).abs() <= 1e-10,
            "{method} p {} vs oracle {op}",
            res.p_value
        );
    }
    println!("[ACCEPTANCE] criterion 1 (golden oracle equivalence at 1e-10): PASS");
}

#[test]
fn criterion_2_reduction_suite() {
    let mut rng = Mt19937::from_seed(20_2020);
    let mut value = |scale: f64, shift: f64| shift + scale * rng.next_std_normal();

    // n_c = 0: pooled t and Welch, both to 1e-12.
    for case in 0..1000 {
        let n_a = 2 + (case % 29);
        let n_b = 2 + ((case * 7) % 29);
        let shift = (case % 5) as f64 - 2.0;
        let scale = 0.5 + (case % 7) as f64;
        let a: Vec<f64> = (0..n_a).map(|_| value(scale, shift)).collect();
        let b: Vec<f64> = (0..n_b).map(|_| value(1.0, 0.0)).collect();
        let s = PartiallyOverlappingSample::new(vec![], a.clone(), b.clone());
        let sum = summarize(&s).unwrap();

        let (n1, n2) = (n_a as f64, n_b as f64);
        let sp2 = ((n1 - 1.0) * sum.var_1 + (n2 - 1.0) * sum.var_2) / (n1 + n2 - 2.0);
        let pooled_t = (sum.mean_1 - sum.mean_2) / (sp2 * (1.0 / n1 + 1.0 / n2)).sqrt();
        assert!(
            (t_new1(&sum).unwrap() - pooled_t).abs() <= 1e-12,
            "case {case}"
        );
        assert!(
            (df_v1(n_a, n_b, 0).unwrap() - (n1 + n2 - 2.0)).abs() <= 1e-12,
            "case {case}"
        );

        let welch_t = (sum.mean_1 - sum.mean_2) / (sum.var_1 / n1 + sum.var_2 / n2).sqrt();
        let (w1, w2) = (sum.var_1 / n1, sum.var_2 / n2);
        let welch_df = (w1 + w2) * (w1 + w2) / (w1 * w1 / (n1 - 1.0) + w2 * w2 / (n2 - 1.0));
        assert!(
            (t_new2(&sum).unwrap() - welch_t).abs() <= 1e-12,
            "case {case}"
        );
        assert!(
            (df_v2(&sum).unwrap() - welch_df).abs() <= 1e-12,
            "case {case}"
        );
    }

    // n_a = n_b = 0: df collapses to n_c - 1 exactly; the unequal-variance
    // statistic is exactly the paired t. Two pairs always correlate at
    // exactly +-1 (which the equal-variance bracket rejects), so n_c >= 3.
    for case in 0..1000 {
        let n_c = 3 + (case % 28);
        let pairs: Vec<(f64, f64)> = (0..n_c)
            .map(|_| {
                let x = value(1.0, 0.0);
                (x, 0.6 * x + value(0.8, 0.1))
            })
            .collect();
        let s = PartiallyOverlappingSample::new(pairs.clone(), vec![], vec![]);
        let sum = summarize(&s).unwrap();
        assert_eq!(df_v1(0, 0, n_c).unwrap(), (n_c - 1) as f64, "case {case}");
        assert_eq!(df_v2(&sum).unwrap(), (n_c - 1) as f64, "case {case}");

        let diffs: Vec<f64> = pairs.iter().map(|&(x, y)| x - y).collect();
        let dm = diffs.iter().sum::<f64>() / diffs.len() as f64;
        let dv =
            diffs.iter().map(|d| (d - dm) * (d - dm)).sum::<f64>() / (diffs.len() as f64 - 1.0);
        let paired_t = dm / (dv / diffs.len() as f64).sqrt();
        assert!(
            (t_new2(&sum).unwrap() - paired_t).abs() <= 1e-12 * paired_t.abs().max(1.0),
            "case {case}"
        );

        // The equal-variance statistic matches the paired t built on the
        // pooled variance: denominator Sp * sqrt(2 (1 - r) / n_c).
        let n = n_c as f64;
        let sp2 = ((n - 1.0) * sum.var_1 + (n - 1.0) * sum.var_2) / (2.0 * n - 2.0);
        let pooled_paired_t =
            (sum.mean_1 - sum.mean_2) / (sp2 * 2.0 * (1.0 - sum.r) / n).sqrt();
        assert!(
            (t_new1(&sum).unwrap() - pooled_paired_t).abs()
                <= 1e-12 * pooled_paired_t.abs().max(1.0),
            "case {case}"
        );
    }
    println!("[ACCEPTANCE] criterion 2 (reductions to pooled t / Welch / paired t): PASS");
}

#[test]
fn criterion_3_mt19937_reference_vector() {
    let text = std::fs::read_to_string(data_path("mt19937_seed5489_first1000.txt")).unwrap();
    let want: Vec<u32> = text.lines().map(|l| l.trim().parse().unwrap()).collect();
    assert_eq!(want.len(), 1000);
    assert_eq!(want[0], 3_499_211_612);
    let mut rng = Mt19937::from_seed(5489);
    for (i, &w) in want.iter().enumerate() {
        assert_eq!(rng.next_u32(), w, "output {i}");
    }
    println!("[ACCEPTANCE] criterion 3 (MT19937 seed-5489 first 1000 outputs): PASS");
}

fn desk_h0_config() -> CampaignConfig {
    CampaignConfig {
        n_a_grid: vec![5, 10, 30],
        n_b_grid: vec![5, 10, 30],
        n_c_grid: vec![5, 10, 30],
        rho_grid: vec![-0.5, 0.0, 0.5],
        distributions: vec![DistributionKind::Normal, DistributionKind::Gumbel],
        delta: 0.0,
        replicates: 2000,
        master_seed: 5489,
        ..CampaignConfig::default()
    }
}

#[test]
fn criterion_4_desk_scale_type_i_error_robustness() {
    let cfg = desk_h0_config();
    let report = run_campaign(&cfg).unwrap();
    let band = RobustnessBand::default();

    // Wide band widened for 2000-replicate binomial noise.
    let mut outside_wide: BTreeMap<&str, usize> = BTreeMap::new();
    let mut rerun_cells: Vec<usize> = Vec::new();
    for cell in &report.cells {
        let mut suspect = false;
        for tally in &cell.tallies {
            if !(0.02..=0.08).contains(&tally.nhrr) {
                *outside_wide.entry(tally.method.as_str()).or_default() += 1;
            }
            if band.classify(tally.nhrr) != Robustness::Robust {
                suspect = true;
            }
        }
        if suspect {
            rerun_cells.push(cell.cell_index);
        }
    }
    let cells = report.cells.len();
    for method in Method::ALL {
        let outside = outside_wide.get(method.as_str()).copied().unwrap_or(0);
        assert!(
            outside as f64 <= 0.05 * cells as f64,
            "{method}: {outside} of {cells} cells outside [0.02, 0.08]"
        );
    }
    assert!(
        rerun_cells.len() <= 20,
        "{} cells outside [0.025, 0.075] at 2000 replicates; robustness claim fails",
        rerun_cells.len()
    );

    // Rerun every suspect cell at 10,000 replicates, plus the cell with
    // the worst rate per distribution as a spot check, and require the
    // tight band to hold there.
    for dist in [DistributionKind::Normal, DistributionKind::Gumbel] {
        let worst = report
            .cells
            .iter()
            .filter(|c| c.params.dist == dist)
            .max_by(|a, b| {
                let da = a
                    .tallies
                    .iter()
                    .map(|t| (t.nhrr - 0.05).abs())
                    .fold(0.0, f64::max);
                let db = b
                    .tallies
                    .iter()
                    .map(|t| (t.nhrr - 0.05).abs())
                    .fold(0.0, f64::max);
                da.total_cmp(&db)
            })
            .unwrap()
            .cell_index;
        if !rerun_cells.contains(&worst) {
            rerun_cells.push(worst);
        }
    }
    let cfg_10k = CampaignConfig {
        replicates: 10_000,
        ..desk_h0_config()
    };
    for &index in &rerun_cells {
        let cell = &report.cells[index];
        let rerun = run_cell(&cell.params, index, &cfg_10k);
        for tally in &rerun.tallies {
            assert_eq!(
                band.classify(tally.nhrr),
                Robustness::Robust,
                "{:?} {} at 10000 replicates: {}",
                cell.params,
                tally.method,
                tally.nhrr
            );
        }
    }
    println!(
        "[ACCEPTANCE] criterion 4 (desk-scale Type I error robustness, {} cells, {} rerun at 10k): PASS",
        cells,
        rerun_cells.len()
    );
}

#[test]
fn criterion_5_new2_liberal_under_lognormal_imbalance() {
    let cfg = CampaignConfig {
        replicates: 10_000,
        master_seed: 5489,
        ..CampaignConfig::default()
    };
    let band = RobustnessBand::default();
    let mut new2_liberal_somewhere = false;
    for (index, &(n_a, n_b)) in [(5usize, 100usize), (100, 5)].iter().enumerate() {
        let params = CellParams {
            n_a,
            n_b,
            n_c: 5,
            rho: 0.0,
            dist: DistributionKind::Lognormal,
            delta: 0.0,
        };
        let result = run_cell(&params, index, &cfg);
        for tally in &result.tallies {
            match tally.method {
                Method::New2 => {
                    if tally.nhrr > band.upper {
                        new2_liberal_somewhere = true;
                    }
                }
                Method::Rnk2 | Method::Int2 => {
                    assert_eq!(
                        band.classify(tally.nhrr),
                        Robustness::Robust,
                        "{} at (n_a={n_a}, n_b={n_b}): {}",
                        tally.method,
                        tally.nhrr
                    );
                }
                _ => {}
            }
        }
    }
    assert!(
        new2_liberal_somewhere,
        "new2 never exceeded the band under lognormal size imbalance"
    );
    println!(
        "[ACCEPTANCE] criterion 5 (new2 liberal under lognormal imbalance, rnk2/int2 robust): PASS"
    );
}

#[test]
fn criterion_6_desk_scale_power_ordering() {
    let cfg = CampaignConfig {
        replicates: 10_000,
        master_seed: 5489,
        ..CampaignConfig::default()
    };
    let cell = |dist| CellParams {
        n_a: 10,
        n_b: 10,
        n_c: 10,
        rho: 0.5,
        dist,
        delta: 0.5,
    };
    let nhrr_of = |result: &povs::CellResult, method: Method| {
        result
            .tallies
            .iter()
            .find(|t| t.method == method)
            .unwrap()
            .nhrr
    };

    let lognormal = run_cell(&cell(DistributionKind::Lognormal), 0, &cfg);
    let new1 = nhrr_of(&lognormal, Method::New1);
    let rnk1 = nhrr_of(&lognormal, Method::Rnk1);
    let int1 = nhrr_of(&lognormal, Method::Int1);
    assert!(
        int1 >= new1 + 0.10,
        "lognormal: int1 power {int1} not 0.10 above new1 {new1}"
    );
    assert!(
        rnk1 >= new1 + 0.10,
        "lognormal: rnk1 power {rnk1} not 0.10 above new1 {new1}"
    );
    assert!(
        (int1 - rnk1).abs() <= 0.05,
        "lognormal: int1 {int1} and rnk1 {rnk1} differ by more than 0.05"
    );

    let normal = run_cell(&cell(DistributionKind::Normal), 1, &cfg);
    let new1 = nhrr_of(&normal, Method::New1);
    let int1 = nhrr_of(&normal, Method::Int1);
    assert!(
        new1 >= int1 - 0.02,
        "normal: new1 power {new1} more than 0.02 below int1 {int1}"
    );
    println!("[ACCEPTANCE] criterion 6 (desk-scale power ordering): PASS");
}

/// Reference aggregate powers for the full design (alpha = .05, shift .5,
/// two-sided, averaged over all n_c), by distribution, size group and
/// correlation sign. `None` marks entries excluded for non-robustness.
#[allow(clippy::type_complexity)]
fn reference_power_table() -> Vec<(DistributionKind, bool, &'static str, [Option<f64>; 6])> {
    use DistributionKind::*;
    let v = |x: f64| Some(x);
    vec![
        (
            Normal,
            true,
            ">0",
            [v(0.865), v(0.864), v(0.856), v(0.855), v(0.855), v(0.854)],
        ),
        (
            Normal,
            true,
            "0",
            [v(0.819), v(0.819), v(0.811), v(0.811), v(0.811), v(0.811)],
        ),
        (
            Normal,
            true,
            "<0",
            [v(0.779), v(0.779), v(0.772), v(0.771), v(0.770), v(0.769)],
        ),
        (
            Normal,
            false,
            ">0",
            [v(0.839), v(0.832), v(0.829), v(0.824), v(0.827), v(0.824)],
        ),
        (
            Normal,
            false,
            "0",
            [v(0.806), v(0.798), v(0.795), v(0.790), v(0.795), v(0.790)],
        ),
        (
            Normal,
            false,
            "<0",
            [v(0.774), v(0.767), v(0.763), v(0.760), v(0.761), v(0.758)],
        ),
        (
            Gumbel,
            true,
            ">0",
            [v(0.783), v(0.782), v(0.815), v(0.814), v(0.824), v(0.823)],
        ),
        (
            Gumbel,
            true,
            "0",
            [v(0.720), v(0.718), v(0.761), v(0.760), v(0.774), v(0.774)],
        ),
        (
            Gumbel,
            true,
            "<0",
            [v(0.678), v(0.678), v(0.719), v(0.719), v(0.727), v(0.726)],
        ),
        (
            Gumbel,
            false,
            ">0",
            [v(0.740), v(0.735), v(0.779), v(0.776), v(0.789), v(0.786)],
        ),
        (
            Gumbel,
            false,
            "0",
            [v(0.693), v(0.689), v(0.740), v(0.736), v(0.749), v(0.747)],
        ),
        (
            Gumbel,
            false,
            "<0",
            [v(0.655), v(0.651), v(0.702), v(0.699), v(0.712), v(0.710)],
        ),
        (
            Exponential,
            true,
            ">0",
            [v(0.867), v(0.864), v(0.938), v(0.937), v(0.946), v(0.944)],
        ),
        (
            Exponential,
            true,
            "0",
            [v(0.824), v(0.824), v(0.915), v(0.914), v(0.926), v(0.925)],
        ),
        (
            Exponential,
            true,
            "<0",
            [v(0.795), v(0.795), v(0.894), v(0.894), v(0.906), v(0.906)],
        ),
        (
            Exponential,
            false,
            ">0",
            [v(0.841), None, v(0.933), v(0.930), v(0.943), v(0.938)],
        ),
        (
            Exponential,
            false,
            "0",
            [v(0.811), None, v(0.919), v(0.917), v(0.930), v(0.926)],
        ),
        (
            Exponential,
            false,
            "<0",
            [v(0.786), None, v(0.904), v(0.903), v(0.918), v(0.915)],
        ),
    ]
}

/// Full-scale reproduction: 1512 cells x 10,000 replicates per
/// distribution, under both hypotheses. Overnight job; not a gate.
#[test]
#[ignore]
fn criterion_7_full_scale_power_reproduction() {
    let dists = vec![
        DistributionKind::Normal,
        DistributionKind::Gumbel,
        DistributionKind::Exponential,
    ];
    let h0_cfg = CampaignConfig {
        distributions: dists.clone(),
        delta: 0.0,
        ..CampaignConfig::default()
    };
    let h1_cfg = CampaignConfig {
        distributions: dists,
        delta: 0.5,
        ..CampaignConfig::default()
    };
    let h0 = result_rows(&run_campaign(&h0_cfg).unwrap());
    let h1 = result_rows(&run_campaign(&h1_cfg).unwrap());
    let rows = aggregate_power(&h0, &h1, RobustnessBand::default()).unwrap();

    let mut worst: f64 = 0.0;
    for (dist, equal_sizes, rho_sign, reference) in reference_power_table() {
        for (method, want) in Method::ALL.iter().zip(reference) {
            let Some(want) = want else { continue };
            let row = rows
                .iter()
                .find(|r| {
                    r.dist == dist
                        && r.equal_sizes == equal_sizes
                        && r.rho_sign.as_str() == rho_sign
                        && r.method == *method
                })
                .unwrap();
            let got = row.power.expect("reference entry should be robust here");
            let diff = (got - want).abs();
            worst = worst.max(diff);
            assert!(
                diff <= 0.02,
                "{dist} {} rho {rho_sign} {method}: power {got:.3} vs reference {want:.3}",
                if equal_sizes { "equal" } else { "unequal" },
            );
        }
    }
    println!(
        "[ACCEPTANCE] criterion 7 (full-scale power reproduction, worst |diff| = {worst:.4}): PASS"
    );
}

#[test]
fn criterion_8_property_suites() {
    let mut rng = Mt19937::from_seed(808);

    // Rank-sum identity and monotone invariance on random samples.
    for case in 0..200 {
        let n_c = case % 5;
        let n_a = 2 + (case % 4);
        let n_b = 2 + ((case * 3) % 4);
        let paired: Vec<(f64, f64)> = (0..n_c)
            .map(|_| (rng.next_std_normal(), rng.next_std_normal()))
            .collect();
        let unpaired_a: Vec<f64> = (0..n_a).map(|_| rng.next_std_normal()).collect();
        let unpaired_b: Vec<f64> = (0..n_b).map(|_| rng.next_std_normal()).collect();
        let s = PartiallyOverlappingSample::new(paired, unpaired_a, unpaired_b);

        let ranked = pooled_ranks(&s);
        let n = ranked.n_pooled() as f64;
        let sum: f64 = ranked
            .paired()
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .chain(ranked.unpaired_a().iter().copied())
            .chain(ranked.unpaired_b().iter().copied())
            .sum();
        assert!((sum - n * (n + 1.0) / 2.0).abs() < 1e-9, "case {case}");

        // A strictly increasing map leaves ranks and scores untouched.
        let g = |x: f64| x.exp() + 2.0 * x;
        let gs = PartiallyOverlappingSample::new(
            s.paired.iter().map(|&(x, y)| (g(x), g(y))).collect(),
            s.unpaired_a.iter().map(|&x| g(x)).collect(),
            s.unpaired_b.iter().map(|&x| g(x)).collect(),
        );
        assert_eq!(pooled_ranks(&gs).values(), ranked.values(), "case {case}");
        assert_eq!(
            vdw_scores(&gs).values(),
            vdw_scores(&s).values(),
            "case {case}"
        );

        // Swapping the groups negates every statistic and preserves df, p.
        let swapped = PartiallyOverlappingSample::new(
            s.paired.iter().map(|&(x, y)| (y, x)).collect(),
            s.unpaired_b.clone(),
            s.unpaired_a.clone(),
        );
        for method in Method::ALL {
            let a = run_test(&s, method, 0.05).unwrap();
            let b = run_test(&swapped, method, 0.05).unwrap();
            assert!(
                (a.statistic + b.statistic).abs() <= 1e-12,
                "case {case} {method}: {} vs {}",
                a.statistic,
                b.statistic
            );
            assert!((a.df - b.df).abs() <= 1e-12, "case {case} {method}");
            assert!(
                (a.p_value - b.p_value).abs() <= 1e-12,
                "case {case} {method}"
            );
        }
    }

    // Distribution moment checks at one million deviates.
    for dist in DistributionKind::ALL {
        let mut rng = Mt19937::from_seed(424_242);
        let draws: Vec<f64> = (0..1_000_000)
            .map(|_| transform_deviate(rng.next_std_normal(), dist))
            .collect();
        let n = draws.len() as f64;
        let mean = draws.iter().sum::<f64>() / n;
        let m2 = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let m3 = draws.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
        let m4 = draws.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n;
        let skew = m3 / m2.powf(1.5);
        let kurt = m4 / (m2 * m2);
        match dist {
            DistributionKind::Normal | DistributionKind::Gumbel => {
                assert!(
                    (skew - dist.reference_skewness()).abs() <= 0.05,
                    "{dist} skewness {skew}"
                );
                assert!(
                    (kurt - dist.reference_kurtosis()).abs() <= 0.5,
                    "{dist} kurtosis {kurt}"
                );
            }
            DistributionKind::Exponential => {
                assert!((skew - 2.0).abs() <= 0.05, "{dist} skewness {skew}");
            }
            DistributionKind::Lognormal => {
                assert!((skew - 6.18).abs() <= 1.0, "{dist} skewness {skew}");
            }
        }
    }
    println!(
        "[ACCEPTANCE] criterion 8 (rank-sum, monotone invariance, antisymmetry, moments): PASS"
    );
}
