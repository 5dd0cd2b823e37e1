//! Decoding raw outcomes, including readings no single anomaly can produce.

use anomaly_scheme::codebook::StateVector;
use anomaly_scheme::engine::{simulate_with, Hypothesis, Polarity, ScaleModel, SyndromeTable};
use anomaly_scheme::plan::paper_plan_12;

fn main() -> anomaly_scheme::Result<()> {
    let plan = paper_plan_12();
    let table = SyndromeTable::new(&plan);

    for o in [vec![-1, -1, 1], vec![0, 0, 1], vec![0, 0, 0], vec![1, 1, 1]] {
        let o = StateVector::new(o);
        match table.decode(&o) {
            Ok(v) => println!("{o}: {}", v.describe(plan.states())),
            Err(e) => println!("{o}: {e}"),
        }
    }

    // Physical weights give the same readings as the algebraic model.
    let scale = ScaleModel::new(1000, 3)?;
    let h = Hypothesis::anomaly(5, Polarity::Negative);
    println!(
        "coin 5 light on a real scale: {}",
        simulate_with(&plan, &h, &scale)?
    );
    Ok(())
}
