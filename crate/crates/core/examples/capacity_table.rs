//! How many elements can k analyses handle? Closed form against both
//! recurrences, plus brute-force enumeration where it is cheap.

use anomaly_scheme::capacity::{capacity_cross_check, CapacityQuery};
use anomaly_scheme::codebook::AlphabetSize;

fn main() -> anomaly_scheme::Result<()> {
    for s in [3, 5, 7] {
        let s = AlphabetSize::new(s)?;
        println!("s = {s}");
        println!("  k  capacity  enumerated");
        for k in 1..=8 {
            let r = capacity_cross_check(&CapacityQuery::new(s, k)?)?;
            assert!(r.consistent());
            let enumerated = r.enumerated.map_or("-".to_string(), |e| e.to_string());
            println!("  {k}  {:>8}  {enumerated:>10}", r.closed_form);
        }
    }
    Ok(())
}
