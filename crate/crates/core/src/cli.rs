//! Command-line front end. `run` returns the process exit status:
//!
//! | status | meaning |
//! |--------|---------|
//! | 0 | success |
//! | 1 | usage error |
//! | 2 | scene validation error |
//! | 3 | planning failure (stuck, no reachable field) |
//! | 4 | I/O error |

use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::export::{path_document, path_text, summary_text, trace_text};
use crate::field::{dump_fields, generate_field};
use crate::fixtures;
use crate::planner::{plan_with_fields, Path, PlanError, Stage};
use crate::scene::{parse_scene, validate_scene, PlanConfig, Scene, SceneError, Violation, PRESETS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_SCENE: i32 = 2;
pub const EXIT_PLAN_FAILED: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "mereo-plan", version, about = "Rough-mereological potential field path planner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate fields and write raw, filtered and smoothed paths.
    Plan(PlanArgs),
    /// Generate fields and write only the field dump.
    Fields(FieldsArgs),
    /// Print scene violations.
    Validate(ValidateArgs),
    /// Write the bundled demo scenes and plan each of them.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub scene: PathBuf,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Write the filtered path as the smoothed output when smoothing
    /// introduces a collision.
    #[arg(long)]
    pub fallback_on_smooth_collision: bool,
    /// Write the search trace (also on failure).
    #[arg(long)]
    pub emit_trace: bool,
    /// Also write each path as a JSON document.
    #[arg(long)]
    pub structured: bool,
}

#[derive(Debug, Args)]
pub struct FieldsArgs {
    #[arg(long)]
    pub scene: PathBuf,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub scene: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, default_value = "demo")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub emit_trace: bool,
}

/// Parameter overrides, applied after the scene file and the preset.
#[derive(Debug, Default, Clone, Args)]
pub struct Overrides {
    /// Replace the scene's parameters with a named preset.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
    pub preset: Option<String>,
    #[arg(long)]
    pub growth_step: Option<f64>,
    #[arg(long)]
    pub min_separation: Option<f64>,
    #[arg(long)]
    pub max_fields: Option<usize>,
    #[arg(long)]
    pub w_step: Option<f64>,
    #[arg(long)]
    pub w_goal: Option<f64>,
    #[arg(long)]
    pub goal_tolerance: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long = "smooth-tol")]
    pub smooth_tolerance: Option<f64>,
    #[arg(long = "smooth-iters")]
    pub smooth_max_iters: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, base: PlanConfig) -> PlanConfig {
        let mut p = self
            .preset
            .as_deref()
            .and_then(PlanConfig::preset)
            .unwrap_or(base);
        let set = |dst: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *dst = v;
            }
        };
        set(&mut p.growth_step, self.growth_step);
        set(&mut p.min_separation, self.min_separation);
        set(&mut p.weights.w_step, self.w_step);
        set(&mut p.weights.w_goal, self.w_goal);
        set(&mut p.goal_tolerance, self.goal_tolerance);
        set(&mut p.alpha, self.alpha);
        set(&mut p.beta, self.beta);
        set(&mut p.smooth_tolerance, self.smooth_tolerance);
        if let Some(n) = self.max_fields {
            p.max_fields = n;
        }
        if let Some(n) = self.smooth_max_iters {
            p.smooth_max_iters = n;
        }
        p
    }
}

/// A failure carrying its exit status.
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn new(status: i32, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn io(path: &FsPath, e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Plan(a) => cmd_plan(a, stdout, stderr),
        Command::Fields(a) => cmd_fields(a, stdout),
        Command::Validate(a) => cmd_validate(a, stdout),
        Command::Demo(a) => cmd_demo(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.status
        }
    }
}

fn read_scene(path: &FsPath, overrides: &Overrides) -> Result<(Scene, Vec<Violation>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let mut scene = parse_scene(&text).map_err(|e| Failure::new(EXIT_INVALID_SCENE, e.to_string()))?;
    scene.params = overrides.apply(scene.params);
    let violations = validate_scene(&scene);
    Ok((scene, violations))
}

fn require_valid(violations: &[Violation]) -> Result<(), Failure> {
    if violations.iter().any(Violation::is_error) {
        let listed: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::new(EXIT_INVALID_SCENE, listed.join("\n")));
    }
    Ok(())
}

fn write_file(dir: &FsPath, name: &str, contents: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::io(&path, e))
}

fn scene_label(path: &FsPath) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_validate(a: &ValidateArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (_, violations) = read_scene(&a.scene, &a.overrides)?;
    for v in &violations {
        let _ = writeln!(stdout, "{v}");
    }
    if violations.is_empty() {
        let _ = writeln!(stdout, "ok");
    }
    require_valid(&violations)
}

fn cmd_fields(a: &FieldsArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (scene, violations) = read_scene(&a.scene, &a.overrides)?;
    require_valid(&violations)?;
    let fs = generate_field(&scene).map_err(scene_failure)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| Failure::io(&a.out_dir, e))?;
    write_file(&a.out_dir, "fields.txt", &dump_fields(&fs, &scene_label(&a.scene)))?;
    let _ = writeln!(stdout, "fields={} truncated={}", fs.len(), fs.truncated);
    Ok(())
}

fn scene_failure(e: SceneError) -> Failure {
    Failure::new(EXIT_INVALID_SCENE, e.to_string())
}

struct PlanJob<'a> {
    scene: &'a Scene,
    label: String,
    violations: Vec<Violation>,
    out_dir: &'a FsPath,
    fallback: bool,
    emit_trace: bool,
    structured: bool,
}

fn cmd_plan(a: &PlanArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let (scene, violations) = read_scene(&a.scene, &a.overrides)?;
    require_valid(&violations)?;
    run_plan(
        PlanJob {
            scene: &scene,
            label: scene_label(&a.scene),
            violations,
            out_dir: &a.out_dir,
            fallback: a.fallback_on_smooth_collision,
            emit_trace: a.emit_trace,
            structured: a.structured,
        },
        stdout,
        stderr,
    )
}

fn run_plan(job: PlanJob<'_>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let dir = job.out_dir;
    fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    let fields = generate_field(job.scene).map_err(scene_failure)?;
    write_file(dir, "fields.txt", &dump_fields(&fields, &job.label))?;

    let out = match plan_with_fields(job.scene, fields.clone()) {
        Ok(out) => out,
        Err(e) => {
            if job.emit_trace {
                write_file(dir, "trace.txt", &trace_text(e.trace(), &fields, &job.label))?;
            }
            let status = match e {
                PlanError::Scene(_) => EXIT_INVALID_SCENE,
                _ => EXIT_PLAN_FAILED,
            };
            return Err(Failure::new(status, e.to_string()));
        }
    };

    let mut warnings: Vec<String> = job
        .violations
        .iter()
        .map(|v| format!("{} {}", v.code, v.element))
        .collect();
    if fields.truncated {
        warnings.push(format!("field budget of {} reached", job.scene.params.max_fields));
    }
    let mut smoothed = out.smoothed.clone();
    if let Some(r) = &out.smoothed.smoothing {
        if !r.converged {
            warnings.push(format!("smoothing stopped after {} sweeps without converging", r.sweeps));
        }
        if r.has_collision() {
            warnings.push(format!("smoothed path touches obstacles on segments {:?}", r.colliding_segments));
            if job.fallback {
                warnings.push("smoothed output replaced by the filtered path".into());
                smoothed = Path {
                    stage: Stage::Smoothed,
                    guard_points: Vec::new(),
                    ..out.filtered.clone()
                };
            }
        }
    }

    for p in [&out.raw, &out.filtered, &smoothed] {
        let stage = p.stage.as_str();
        write_file(dir, &format!("path_{stage}.txt"), &path_text(p, &job.label))?;
        if job.structured {
            write_file(dir, &format!("path_{stage}.json"), &path_document(p, &job.label))?;
        }
    }
    if job.emit_trace {
        write_file(dir, "trace.txt", &trace_text(&out.search.trace, &fields, &job.label))?;
    }
    let summary = summary_text(&out, &job.label, &warnings);
    write_file(dir, "summary.txt", &summary)?;
    let _ = stdout.write_all(summary.as_bytes());
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    Ok(())
}

fn cmd_demo(a: &DemoArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    fs::create_dir_all(&a.out_dir).map_err(|e| Failure::io(&a.out_dir, e))?;
    for (name, scene) in fixtures::demo_scenes() {
        let file = format!("{name}.json");
        write_file(&a.out_dir, &file, &scene.to_text())?;
        let dir = a.out_dir.join(name);
        let _ = writeln!(stdout, "== {name}");
        run_plan(
            PlanJob {
                scene: &scene,
                label: file,
                violations: validate_scene(&scene),
                out_dir: &dir,
                fallback: false,
                emit_trace: a.emit_trace,
                structured: false,
            },
            stdout,
            stderr,
        )?;
    }
    Ok(())
}
