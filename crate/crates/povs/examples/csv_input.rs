//! Read a partially overlapping sample from CSV and test it.
//!
//!     cargo run --example csv_input [path/to/file.csv]
//!
//! The CSV needs a `group1,group2` header; an empty field means that row
//! has no observation in that group. Without an argument, a built-in
//! sample is used.

use povs::{ingest_csv, run_tests, validate, Method};

const BUILTIN: &str = "\
group1,group2
12.1,13.9
10.4,11.8
11.7,12.0
9.9,
13.4,
,14.2
,12.8
";

fn main() {
    let sample = match std::env::args().nth(1) {
        Some(path) => {
            let file = std::fs::File::open(&path).expect("input file should open");
            ingest_csv(file).expect("input file should parse")
        }
        None => ingest_csv(BUILTIN.as_bytes()).unwrap(),
    };

    for diagnostic in validate(&sample) {
        println!(
            "{}: {}",
            if diagnostic.is_fatal() {
                "fatal"
            } else {
                "warning"
            },
            diagnostic.message
        );
    }

    for result in run_tests(&sample, &Method::ALL, 0.05) {
        match result {
            Ok(r) => println!(
                "{}: t = {:.4}, df = {:.4}, p = {:.4}{}",
                r.method,
                r.statistic,
                r.df,
                r.p_value,
                if r.reject { "  *" } else { "" }
            ),
            Err(e) => println!("{e}"),
        }
    }
}
