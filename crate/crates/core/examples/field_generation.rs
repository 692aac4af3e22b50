//! Grows fields in the one-obstacle demo scene and writes the field dump,
//! ready for a 3D scatter plot.
//!
//! ```bash
//! cargo run -p mereo-plan --example field_generation -- fields.txt
//! ```

use std::collections::BTreeMap;

use mereo_plan::field::generate_field_traced;
use mereo_plan::{dump_fields, fixtures};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = fixtures::one_obstacle();
    let mut accepted_per_orientation = BTreeMap::new();
    let fs = generate_field_traced(&scene, |step| {
        *accepted_per_orientation.entry(format!("{:?}", step.orientation)).or_insert(0) += step.accepted;
    })?;

    let mut by_generation: BTreeMap<u64, usize> = BTreeMap::new();
    for f in fs.iter() {
        *by_generation.entry((f.d / scene.params.growth_step).round() as u64).or_default() += 1;
    }
    println!("{} fields, truncated={}", fs.len(), fs.truncated);
    for (generation, n) in &by_generation {
        println!("  generation {generation:>2}: {n} fields");
    }
    println!("accepted per orientation: {accepted_per_orientation:?}");

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, dump_fields(&fs, "one_obstacle"))?;
        println!("wrote {path}");
    }
    Ok(())
}
