//! Bundled demo scenes on a 240-unit gate with the goal at its center,
//! plus a scene whose start is cut off from the goal by a wall.
//!
//! The gate extent is an assumption: only the goal position (120, 120, 120)
//! is fixed by the original setting.

use crate::geometry::{Box3, Point3};
use crate::scene::{PlanConfig, Scene};

pub const GATE_EDGE: f64 = 240.0;
pub const GOAL: Point3 = Point3::new(120.0, 120.0, 120.0);
pub const START: Point3 = Point3::new(10.0, 10.0, 10.0);

fn base(obstacles: Vec<Box3>) -> Scene {
    Scene::new(
        Box3::from_corners([0.0; 3], [GATE_EDGE; 3]),
        obstacles,
        START,
        GOAL,
        PlanConfig::preset("paper-120").expect("known preset"),
    )
}

/// Goal at the center of an empty gate.
pub fn no_obstacles() -> Scene {
    base(Vec::new())
}

/// Goal at the center, one obstacle between it and the start corner.
pub fn one_obstacle() -> Scene {
    base(vec![Box3::from_corners([50.0, 50.0, 50.0], [95.0, 95.0, 95.0])])
}

/// Goal at the center, three obstacles spread around the gate.
pub fn three_obstacles() -> Scene {
    base(vec![
        Box3::from_corners([40.0, 40.0, 20.0], [70.0, 70.0, 100.0]),
        Box3::from_corners([150.0, 60.0, 100.0], [190.0, 100.0, 160.0]),
        Box3::from_corners([80.0, 150.0, 40.0], [110.0, 200.0, 90.0]),
    ])
}

/// A slab spanning the whole gate between start and goal.
pub fn separating_wall() -> Scene {
    let mut s = base(vec![Box3::from_corners([100.0, 0.0, 0.0], [110.0, GATE_EDGE, GATE_EDGE])]);
    s.start = Point3::new(30.0, 120.0, 120.0);
    s.goal = Point3::new(180.0, 120.0, 120.0);
    s
}

/// The three figure scenes with their file names.
pub fn demo_scenes() -> Vec<(&'static str, Scene)> {
    vec![
        ("no_obstacles", no_obstacles()),
        ("one_obstacle", one_obstacle()),
        ("three_obstacles", three_obstacles()),
    ]
}
