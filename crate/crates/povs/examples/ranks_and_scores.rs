//! Show the pooled-rank and Van der Waerden normal-score transforms, and
//! their invariance under monotone maps of the data.
//!
//!     cargo run --example ranks_and_scores

use povs::{pooled_ranks, vdw_scores, PartiallyOverlappingSample};

fn main() {
    let sample =
        PartiallyOverlappingSample::new(vec![(2.4, 9.1), (7.7, 3.3)], vec![1.2, 5.0], vec![6.8]);

    let ranks = pooled_ranks(&sample);
    let scores = vdw_scores(&sample);
    let n = ranks.n_pooled();

    println!("pooled size N = {n}, ties involved: {}", ranks.tie_count());
    println!(
        "\n{:<12} {:>8} {:>8} {:>10}",
        "slot", "value", "rank", "score"
    );
    for (i, (&(x, y), (&(rx, ry), &(sx, sy)))) in sample
        .paired
        .iter()
        .zip(ranks.paired().iter().zip(scores.paired()))
        .enumerate()
    {
        println!("{:<12} {x:>8} {rx:>8} {sx:>10.4}", format!("pair[{i}].1"));
        println!("{:<12} {y:>8} {ry:>8} {sy:>10.4}", format!("pair[{i}].2"));
    }
    for (i, (&v, (&r, &s))) in sample
        .unpaired_a
        .iter()
        .zip(ranks.unpaired_a().iter().zip(scores.unpaired_a()))
        .enumerate()
    {
        println!("{:<12} {v:>8} {r:>8} {s:>10.4}", format!("only_1[{i}]"));
    }
    for (i, (&v, (&r, &s))) in sample
        .unpaired_b
        .iter()
        .zip(ranks.unpaired_b().iter().zip(scores.unpaired_b()))
        .enumerate()
    {
        println!("{:<12} {v:>8} {r:>8} {s:>10.4}", format!("only_2[{i}]"));
    }

    // Rank sum is N(N+1)/2 regardless of the data.
    let rank_sum: f64 = ranks
        .paired()
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .chain(ranks.unpaired_a().iter().copied())
        .chain(ranks.unpaired_b().iter().copied())
        .sum();
    println!("\nrank sum = {rank_sum} (N(N+1)/2 = {})", n * (n + 1) / 2);

    // Any strictly increasing transform leaves both transforms unchanged.
    let logged = PartiallyOverlappingSample::new(
        sample
            .paired
            .iter()
            .map(|&(x, y)| (x.ln(), y.ln()))
            .collect(),
        sample.unpaired_a.iter().map(|&x| x.ln()).collect(),
        sample.unpaired_b.iter().map(|&x| x.ln()).collect(),
    );
    assert_eq!(pooled_ranks(&logged).values(), ranks.values());
    assert_eq!(vdw_scores(&logged).values(), scores.values());
    println!("log-transforming the data changes neither ranks nor scores");
}
