//! A wall spanning the whole gate: the search reports where it got stuck
//! instead of returning a path through the wall.

use mereo_plan::{fixtures, plan, PlanError};

fn main() {
    let scene = fixtures::separating_wall();
    match plan(&scene) {
        Err(PlanError::Stuck { trace }) => {
            println!("stuck after visiting {} fields; last few: {:?}", trace.len(), &trace[trace.len().saturating_sub(5)..]);
        }
        Err(e) => println!("failed: {e}"),
        Ok(out) => println!("unexpected path with {} waypoints", out.raw.len()),
    }
}
