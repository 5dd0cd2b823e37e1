//! A five-state instrument: every analysis reports one of -2..=2 instead of
//! left/balance/right. Ten elements fit in two analyses.

use anomaly_scheme::codebook::{build_codebook, AlphabetSize};
use anomaly_scheme::engine::{decode, simulate, verify_exhaustive, Hypothesis, Polarity};
use anomaly_scheme::plan::{plan_from_codebook, render_plan};

fn main() -> anomaly_scheme::Result<()> {
    let s = AlphabetSize::new(5)?;
    let cb = build_codebook(10, 2, s, true)?;
    let plan = plan_from_codebook(&cb);
    println!("{}", render_plan(&plan));
    for (i, code) in cb.codes().iter().enumerate() {
        println!("element {:>2}: {code}", i + 1);
    }

    let h = Hypothesis::anomaly(7, Polarity::Negative);
    let outcome = simulate(&plan, &h)?;
    println!("\n{h:?} reads {outcome}");
    println!("decoded: {}", decode(&plan, &outcome)?.describe(s));
    println!("verification: {}", verify_exhaustive(&plan));
    Ok(())
}
