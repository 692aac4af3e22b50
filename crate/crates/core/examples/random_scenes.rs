//! Plans a batch of random box scenes and reports how the pipeline fares.
//!
//! ```bash
//! cargo run -p mereo-plan --release --example random_scenes -- 20
//! ```

use mereo_plan::geometry::{Box3, Point3};
use mereo_plan::{plan, validate_scene, PlanConfig, PlanError, Scene};

// xorshift64*, enough for scene sampling
struct Rng(u64);

impl Rng {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        (self.0.wrapping_mul(0x2545_f491_4f6c_dd1d) >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn random_scene(rng: &mut Rng) -> Scene {
    let edge = 60.0;
    let params = PlanConfig {
        growth_step: 3.0,
        min_separation: 3.0,
        goal_tolerance: 3.0,
        ..PlanConfig::default()
    };
    loop {
        let n = 1 + (rng.next_f64() * 4.0) as usize;
        let obstacles = (0..n)
            .map(|_| {
                let s = [rng.range(5.0, 25.0), rng.range(5.0, 25.0), rng.range(5.0, 25.0)];
                let m = [rng.range(0.0, edge - s[0]), rng.range(0.0, edge - s[1]), rng.range(0.0, edge - s[2])];
                Box3::from_corners(m, [m[0] + s[0], m[1] + s[1], m[2] + s[2]])
            })
            .collect();
        let start = Point3::new(rng.range(0.0, edge), rng.range(0.0, edge), rng.range(0.0, edge));
        let goal = Point3::new(rng.range(0.0, edge), rng.range(0.0, edge), rng.range(0.0, edge));
        let scene = Scene::new(Box3::from_corners([0.0; 3], [edge; 3]), obstacles, start, goal, params);
        if validate_scene(&scene).is_empty() {
            return scene;
        }
    }
}

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    let mut rng = Rng(0x9e37_79b9_7f4a_7c15);
    let (mut ok, mut stuck, mut unreachable) = (0, 0, 0);
    for i in 0..count {
        let scene = random_scene(&mut rng);
        match plan(&scene) {
            Ok(out) => {
                ok += 1;
                println!(
                    "scene {i:>3}: {:>5} fields, raw {:>2} / filtered {:>2} waypoints, lengths {:.1} / {:.1}",
                    out.fields.len(),
                    out.raw.len(),
                    out.filtered.len(),
                    out.raw.length(),
                    out.filtered.length()
                );
            }
            Err(PlanError::Stuck { trace }) => {
                stuck += 1;
                println!("scene {i:>3}: stuck after {} fields", trace.len());
            }
            Err(PlanError::NoReachableField { .. }) => {
                unreachable += 1;
                println!("scene {i:>3}: no field visible from start");
            }
            Err(e) => println!("scene {i:>3}: {e}"),
        }
    }
    println!("planned {ok}, stuck {stuck}, unreachable {unreachable}");
}
