#![allow(dead_code)]

use mereo_plan::geometry::{Box3, Point3, Segment3};
use mereo_plan::{PlanConfig, Scene, validate_scene};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

/// Random gate with 1 to 4 box obstacles; start and goal are rejection
/// sampled until the scene validates.
pub fn random_scene(rng: &mut SmallRng) -> Scene {
    let edge = 60.0;
    let gate = Box3::from_corners([0.0; 3], [edge; 3]);
    let params = PlanConfig {
        growth_step: 3.0,
        min_separation: 3.0,
        goal_tolerance: 3.0,
        ..PlanConfig::default()
    };
    loop {
        let n = rng.gen_range(1..=4);
        let obstacles: Vec<Box3> = (0..n)
            .map(|_| {
                let size = [rng.gen_range(5.0..25.0), rng.gen_range(5.0..25.0), rng.gen_range(5.0..25.0)];
                let min = [
                    rng.gen_range(0.0..edge - size[0]),
                    rng.gen_range(0.0..edge - size[1]),
                    rng.gen_range(0.0..edge - size[2]),
                ];
                Box3::from_corners(min, [min[0] + size[0], min[1] + size[1], min[2] + size[2]])
            })
            .collect();
        let mut point = || Point3::new(rng.gen_range(0.0..edge), rng.gen_range(0.0..edge), rng.gen_range(0.0..edge));
        let scene = Scene::new(gate, obstacles, point(), point(), params);
        if validate_scene(&scene).is_empty() {
            return scene;
        }
    }
}

pub fn rng(seed: u64) -> SmallRng {
    SmallRng::seed_from_u64(seed)
}

/// Dense sampling oracle: true when any of `samples + 1` evenly spaced
/// points of the segment lies in a box.
pub fn sampled_hit(s: &Segment3, boxes: &[Box3], samples: usize) -> bool {
    (0..=samples).any(|i| {
        let q = s.a.lerp(s.b, i as f64 / samples as f64);
        boxes.iter().any(|b| b.contains(&q))
    })
}
