//! The classic puzzle: twelve coins, one counterfeit, three weighings.
//!
//! Prints the fixed plan, then simulates every possible counterfeit and
//! decodes the pan readings back to the coin.

use anomaly_scheme::engine::{decode, simulate, Hypothesis};
use anomaly_scheme::plan::{paper_plan_12, render_plan};

fn main() -> anomaly_scheme::Result<()> {
    let plan = paper_plan_12();
    println!("{}", render_plan(&plan));

    for h in Hypothesis::all(plan.elements()) {
        let outcome = simulate(&plan, &h)?;
        let verdict = decode(&plan, &outcome)?;
        assert_eq!(verdict, h);
        println!("{outcome}  ->  {}", verdict.describe(plan.states()));
    }
    Ok(())
}
