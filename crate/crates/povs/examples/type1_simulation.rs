//! A small null-hypothesis campaign: estimate each method's Type I error
//! rate over a factorial design and classify it against the robustness
//! band.
//!
//!     cargo run --release --example type1_simulation

use povs::rng::DistributionKind;
use povs::{run_campaign, CampaignConfig, Method};

fn main() {
    let cfg = CampaignConfig {
        n_a_grid: vec![5, 10],
        n_b_grid: vec![5, 10],
        n_c_grid: vec![5, 10],
        rho_grid: vec![-0.5, 0.0, 0.5],
        distributions: vec![DistributionKind::Normal, DistributionKind::Lognormal],
        delta: 0.0,
        replicates: 1000,
        master_seed: 20_170_816,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&cfg).expect("config is valid");

    println!(
        "{} cells x {} replicates under H0, alpha = {}\n",
        report.cells.len(),
        cfg.replicates,
        cfg.alpha
    );
    println!(
        "{:<12} {:>4} {:>4} {:>4} {:>5}  NHRR per method",
        "dist", "n_a", "n_b", "n_c", "rho"
    );
    for cell in &report.cells {
        let p = &cell.params;
        print!(
            "{:<12} {:>4} {:>4} {:>4} {:>5}  ",
            p.dist.as_str(),
            p.n_a,
            p.n_b,
            p.n_c,
            p.rho
        );
        for tally in &cell.tallies {
            print!("{}={:.3} ", tally.method, tally.nhrr);
        }
        println!();
    }

    // Cells outside the band, per method.
    println!("\nnon-robust cells per method (band 2.5%..7.5%):");
    for method in Method::ALL {
        let outside = report
            .cells
            .iter()
            .flat_map(|c| &c.tallies)
            .filter(|t| t.method == method && t.classification != Some(povs::Robustness::Robust))
            .count();
        println!("  {method}: {outside} of {}", report.cells.len());
    }
}
