//! Plot-ready text outputs: path files, search traces and run summaries.

use std::fmt::Write as _;

use serde::Serialize;

use crate::field::FieldSet;
use crate::geometry::Point3;
use crate::planner::{Path, PlanOutput};

/// Path file: a `#` header, then one `index x y z` line per waypoint.
pub fn path_text(path: &Path, scene_name: &str) -> String {
    let mut out = format!(
        "# stage={} scene={scene_name} waypoints={} length={}",
        path.stage.as_str(),
        path.len(),
        path.length()
    );
    if !path.guard_points.is_empty() {
        let guards: Vec<String> = path.guard_points.iter().map(usize::to_string).collect();
        write!(out, " guards={}", guards.join(",")).unwrap();
    }
    out.push('\n');
    for (i, q) in path.waypoints.iter().enumerate() {
        writeln!(out, "{i} {} {} {}", q.x, q.y, q.z).unwrap();
    }
    out
}

#[derive(Serialize)]
struct PathDocument<'a> {
    stage: &'static str,
    scene: &'a str,
    waypoints: &'a [Point3],
    guard_points: &'a [usize],
}

/// The same path as a JSON document.
pub fn path_document(path: &Path, scene_name: &str) -> String {
    let doc = PathDocument {
        stage: path.stage.as_str(),
        scene: scene_name,
        waypoints: &path.waypoints,
        guard_points: &path.guard_points,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("path serializes");
    s.push('\n');
    s
}

/// Search trace: one `step seq x y z d` line per visited field.
pub fn trace_text(trace: &[usize], fields: &FieldSet, scene_name: &str) -> String {
    let mut out = format!("# trace scene={scene_name} steps={}\n", trace.len());
    for (step, &seq) in trace.iter().enumerate() {
        let f = &fields.fields[seq];
        let q = f.position;
        writeln!(out, "{step} {seq} {} {} {} {}", q.x, q.y, q.z, f.d).unwrap();
    }
    out
}

/// `key=value` run summary. `warnings` are appended one per line.
pub fn summary_text(out: &PlanOutput, scene_name: &str, warnings: &[String]) -> String {
    let mut s = format!("scene={scene_name}\n");
    writeln!(s, "fields={}", out.fields.len()).unwrap();
    writeln!(s, "fields_truncated={}", out.fields.truncated).unwrap();
    for p in [&out.raw, &out.filtered, &out.smoothed] {
        let stage = p.stage.as_str();
        writeln!(s, "{stage}_waypoints={}", p.len()).unwrap();
        writeln!(s, "{stage}_length={}", p.length()).unwrap();
    }
    writeln!(s, "guard_points={}", out.filtered.guard_points.len()).unwrap();
    if let Some(r) = &out.smoothed.smoothing {
        writeln!(s, "smooth_sweeps={}", r.sweeps).unwrap();
        writeln!(s, "smooth_converged={}", r.converged).unwrap();
    }
    for w in warnings {
        writeln!(s, "warning={w}").unwrap();
    }
    s
}
