//! Filters and smooths a hand-made zigzag path, printing every stage.

use mereo_plan::planner::{filter_path, smooth_path, Path, Stage};
use mereo_plan::{PlanConfig, Point3};

fn show(p: &Path) {
    println!("{} ({} waypoints, length {:.3})", p.stage.as_str(), p.len(), p.length());
    for q in &p.waypoints {
        println!("  ({:7.3}, {:7.3}, {:7.3})", q.x, q.y, q.z);
    }
}

fn main() {
    let goal = Point3::new(0.0, 0.0, 0.0);
    let raw = Path {
        waypoints: vec![
            Point3::new(12.0, 0.0, 0.0),
            Point3::new(9.0, 4.0, 1.0),
            Point3::new(10.0, 6.0, 0.0),
            Point3::new(6.0, 2.0, 2.0),
            Point3::new(3.0, 3.0, 0.0),
            goal,
        ],
        stage: Stage::Raw,
        guard_points: Vec::new(),
        smoothing: None,
    };
    show(&raw);
    let filtered = filter_path(&raw, goal, &[]);
    show(&filtered);
    let smoothed = smooth_path(&filtered, &PlanConfig::default(), &[]);
    show(&smoothed);
    let report = smoothed.smoothing.unwrap();
    println!("{} sweeps, per-sweep max change: {:?}", report.sweeps, &report.max_changes[..report.sweeps.min(5)]);
}
