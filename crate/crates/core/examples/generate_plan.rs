//! Build a balanced plan for an arbitrary number of elements and check it.
//!
//! Usage: cargo run --example generate_plan -- [elements] [analyses]

use anomaly_scheme::codebook::{build_codebook, AlphabetSize};
use anomaly_scheme::engine::verify_exhaustive;
use anomaly_scheme::plan::{plan_from_codebook, render_plan};

fn main() -> anomaly_scheme::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args
        .next()
        .transpose()
        .expect("elements must be a number")
        .unwrap_or(39);
    let k = args
        .next()
        .transpose()
        .expect("analyses must be a number")
        .unwrap_or(4);

    let cb = build_codebook(n, k, AlphabetSize::THREE, true)?;
    let plan = plan_from_codebook(&cb);
    println!("{}", render_plan(&plan));
    println!("row sums: {:?}", cb.row_sums());
    println!("verification: {}", verify_exhaustive(&plan));
    Ok(())
}
