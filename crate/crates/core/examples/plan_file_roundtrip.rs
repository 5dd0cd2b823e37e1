//! Write a plan to disk in the canonical text format and load it back.

use anomaly_scheme::codebook::{build_codebook, AlphabetSize};
use anomaly_scheme::plan::{deserialize_plan, plan_from_codebook, serialize_plan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cb = build_codebook(12, 3, AlphabetSize::THREE, true)?;
    let plan = plan_from_codebook(&cb).with_title(Some("twelve, generated".into()));

    let path = std::env::temp_dir().join("anomaly-plan-example.json");
    std::fs::write(&path, serialize_plan(&plan))?;
    println!("wrote {}", path.display());
    println!("{}", std::fs::read_to_string(&path)?);

    let back = deserialize_plan(&std::fs::read(&path)?)?;
    assert_eq!(back, plan);
    println!("reloaded plan is identical");
    Ok(())
}
