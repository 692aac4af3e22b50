//! Plans the three bundled demo scenes and prints a per-stage summary.
//!
//! ```bash
//! cargo run -p mereo-plan --example plan_figure_scenes
//! ```

use mereo_plan::{fixtures, plan, Path};

fn describe(p: &Path) -> String {
    format!("{:>3} waypoints, length {:>8.2}", p.len(), p.length())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, scene) in fixtures::demo_scenes() {
        let out = plan(&scene)?;
        println!("{name}: {} fields", out.fields.len());
        println!("  raw      {}", describe(&out.raw));
        println!("  filtered {} ({} guard points)", describe(&out.filtered), out.filtered.guard_points.len());
        println!("  smoothed {}", describe(&out.smoothed));
        if let Some(r) = &out.smoothed.smoothing {
            println!(
                "  smoothing: {} sweeps, converged={}, colliding segments {:?}",
                r.sweeps, r.converged, r.colliding_segments
            );
        }
        for q in &out.raw.waypoints {
            println!("    {:?}", q.to_array());
        }
    }
    Ok(())
}
