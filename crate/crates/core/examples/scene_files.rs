//! Loads a scene file, shows validation output, and round-trips it.

use mereo_plan::{load_scene, validate_scene, SceneError};

const SCENE: &str = r#"{
    "gate": {"min": [0, 0, 0], "max": [240, 240, 240]},
    "start": [10, 10, 10],
    "goal": [120, 120, 120],
    "obstacles": [
        {"min": [40, 40, 20], "max": [70, 70, 100]},
        {"min": [200, 200, 200], "max": [300, 260, 260]}
    ],
    "params": {"growth_step": 15, "min_separation": 15}
}"#;

fn main() {
    let scene = load_scene(SCENE).expect("valid scene");
    for v in validate_scene(&scene) {
        println!("{v}");
    }
    println!("clipped obstacles: {:?}", scene.clipped_obstacles());
    println!("goal tolerance defaults to the growth step: {}", scene.params.goal_tolerance);

    let text = scene.to_text();
    assert_eq!(load_scene(&text).unwrap(), scene);
    println!("{text}");

    let broken = SCENE.replace("[120, 120, 120]", "[50, 50, 50]");
    match load_scene(&broken) {
        Err(SceneError::Invalid(violations)) => {
            for v in violations.iter().filter(|v| v.is_error()) {
                println!("rejected: {v}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }
}
