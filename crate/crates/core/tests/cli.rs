mod common;

use std::fs;
use std::path::Path;

use mereo_plan::cli::{self, EXIT_INVALID_SCENE, EXIT_OK, EXIT_PLAN_FAILED};
use mereo_plan::{fixtures, load_scene, Box3};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let status = cli::run(args.iter().copied(), &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn summary_value(summary: &str, key: &str) -> f64 {
    summary
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing"))
        .parse()
        .unwrap()
}

fn write_scene(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn plan_writes_all_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "empty.json", &fixtures::no_obstacles().to_text());
    let out = tmp.path().join("out");
    let (status, stdout, _) = run(&["mereo-plan", "plan", "--scene", &scene, "--out-dir", out.to_str().unwrap()]);
    assert_eq!(status, EXIT_OK);
    for f in ["fields.txt", "path_raw.txt", "path_filtered.txt", "path_smoothed.txt", "summary.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
    assert!(!out.join("trace.txt").exists());
    assert!(summary_value(&stdout, "filtered_length") <= summary_value(&stdout, "raw_length"));
    assert_eq!(summary_value(&stdout, "fields"), 4913.0);

    let fields = fs::read_to_string(out.join("fields.txt")).unwrap();
    assert!(fields.starts_with("# scene=empty.json"));
    assert_eq!(fields.lines().nth(1), Some("0 120 120 120 0"));
}

#[test]
fn validate_reports_goal_in_obstacle() {
    let tmp = tempfile::tempdir().unwrap();
    let mut s = fixtures::no_obstacles();
    s.obstacles.push(Box3::from_corners([100.0; 3], [130.0; 3]));
    let scene = write_scene(tmp.path(), "bad.json", &s.to_text());
    let (status, stdout, stderr) = run(&["mereo-plan", "validate", "--scene", &scene]);
    assert_eq!(status, EXIT_INVALID_SCENE);
    assert!(stdout.contains("goal-in-obstacle"));
    assert!(stderr.contains("goal-in-obstacle"));

    let (status, _, _) = run(&["mereo-plan", "plan", "--scene", &scene, "--out-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(status, EXIT_INVALID_SCENE);
}

#[test]
fn validate_clean_scene() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "ok.json", &fixtures::three_obstacles().to_text());
    let (status, stdout, _) = run(&["mereo-plan", "validate", "--scene", &scene]);
    assert_eq!((status, stdout.trim()), (EXIT_OK, "ok"));
}

#[test]
fn malformed_scene_is_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "typo.json", r#"{"gate": {"min": [0,0,0], "max": [1,1,1]}, "strat": [0,0,0]}"#);
    assert_eq!(run(&["mereo-plan", "validate", "--scene", &scene]).0, EXIT_INVALID_SCENE);
}

#[test]
fn invalid_override_is_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "s.json", &fixtures::no_obstacles().to_text());
    let (status, stdout, _) = run(&["mereo-plan", "validate", "--scene", &scene, "--alpha", "0.95"]);
    assert_eq!(status, EXIT_INVALID_SCENE);
    assert!(stdout.contains("invalid-param"));
}

#[test]
fn separating_wall_exits_three_with_trace() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "wall.json", &fixtures::separating_wall().to_text());
    let out = tmp.path().join("out");
    let (status, _, stderr) = run(&[
        "mereo-plan", "plan", "--scene", &scene, "--out-dir", out.to_str().unwrap(), "--emit-trace",
    ]);
    assert_eq!(status, EXIT_PLAN_FAILED);
    assert!(stderr.contains("stuck"));
    let trace = fs::read_to_string(out.join("trace.txt")).unwrap();
    assert!(trace.lines().count() > 1);
}

#[test]
fn fields_command_only_dumps_fields() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "s.json", &fixtures::one_obstacle().to_text());
    let out = tmp.path().join("out");
    let (status, stdout, _) = run(&[
        "mereo-plan", "fields", "--scene", &scene, "--out-dir", out.to_str().unwrap(), "--max-fields", "100",
    ]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(stdout.trim(), "fields=100 truncated=true");
    let names: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, ["fields.txt"]);
}

#[test]
fn fallback_replaces_colliding_smoothed_path() {
    let tmp = tempfile::tempdir().unwrap();
    let scene = write_scene(tmp.path(), "one.json", &fixtures::one_obstacle().to_text());
    let plain = tmp.path().join("plain");
    let fallback = tmp.path().join("fallback");
    let (status, _, stderr) = run(&["mereo-plan", "plan", "--scene", &scene, "--out-dir", plain.to_str().unwrap()]);
    assert_eq!(status, EXIT_OK);
    assert!(stderr.contains("touches obstacles"));
    let (status, _, _) = run(&[
        "mereo-plan", "plan", "--scene", &scene, "--out-dir", fallback.to_str().unwrap(),
        "--fallback-on-smooth-collision",
    ]);
    assert_eq!(status, EXIT_OK);
    let body = |dir: &Path, f: &str| {
        fs::read_to_string(dir.join(f)).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(body(&fallback, "path_smoothed.txt"), body(&fallback, "path_filtered.txt"));
    assert_ne!(body(&plain, "path_smoothed.txt"), body(&plain, "path_filtered.txt"));
}

#[test]
fn preset_override_changes_parameters() {
    let tmp = tempfile::tempdir().unwrap();
    let mut s = fixtures::no_obstacles();
    s.params = mereo_plan::PlanConfig { max_fields: 10, ..s.params };
    let scene = write_scene(tmp.path(), "s.json", &s.to_text());
    let out = tmp.path().join("out");
    let (status, stdout, _) = run(&[
        "mereo-plan", "fields", "--scene", &scene, "--out-dir", out.to_str().unwrap(), "--preset", "paper-120",
    ]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(stdout.trim(), "fields=4913 truncated=false");
}

#[test]
fn demo_writes_loadable_scenes() {
    let tmp = tempfile::tempdir().unwrap();
    let (status, _, _) = run(&["mereo-plan", "demo", "--out-dir", tmp.path().to_str().unwrap()]);
    assert_eq!(status, EXIT_OK);
    for (name, scene) in fixtures::demo_scenes() {
        let text = fs::read_to_string(tmp.path().join(format!("{name}.json"))).unwrap();
        assert_eq!(load_scene(&text).unwrap(), scene);
        assert!(tmp.path().join(name).join("path_smoothed.txt").exists());
    }
}
