//! Ask the exhaustive oracle which element counts admit a balanced plan,
//! and compare with the fast builder.

use anomaly_scheme::capacity::{feasibility_oracle, Feasibility};
use anomaly_scheme::codebook::{build_codebook, AlphabetSize};

fn main() -> anomaly_scheme::Result<()> {
    let s = AlphabetSize::THREE;
    for k in 2..=4 {
        print!("k={k}:");
        for n in 1..=13 {
            let oracle = feasibility_oracle(s, k, n, true)?;
            let built = build_codebook(n, k, s, true).is_ok();
            assert_eq!(oracle.is_feasible(), built);
            print!(
                " {n}{}",
                if matches!(oracle, Feasibility::Feasible(_)) {
                    "+"
                } else {
                    "-"
                }
            );
        }
        println!();
    }
    Ok(())
}
