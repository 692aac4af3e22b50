//! Scene description: gate, obstacles, start, goal and planner parameters,
//! together with the JSON scene file format and its validation.
//!
//! A scene file looks like
//!
//! ```json
//! {
//!   "gate": { "min": [0, 0, 0], "max": [240, 240, 240] },
//!   "start": [10, 10, 10],
//!   "goal": [120, 120, 120],
//!   "obstacles": [ { "min": [40, 40, 40], "max": [80, 80, 80] } ],
//!   "params": { "growth_step": 15, "min_separation": 15 }
//! }
//! ```
//!
//! `obstacles` and every key of `params` are optional. Unknown keys are
//! rejected.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Box3, Point3, Weights};

/// Planner parameters. Defaults mirror a unit-scale map; see
/// [`PlanConfig::preset`] for larger maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanConfig {
    /// Distance increment assigned to each field generation.
    pub growth_step: f64,
    /// Minimum Euclidean spacing between accepted fields.
    pub min_separation: f64,
    /// Hard budget on accepted fields.
    pub max_fields: usize,
    pub weights: Weights,
    /// The search stops once the actual field is this close to the goal.
    pub goal_tolerance: f64,
    /// Smoother anchor weight (pull toward the filtered waypoint).
    pub alpha: f64,
    /// Smoother curvature weight (pull toward the neighbors' midpoint).
    pub beta: f64,
    pub smooth_tolerance: f64,
    pub smooth_max_iters: usize,
}

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig {
            growth_step: 0.5,
            min_separation: 0.5,
            max_fields: 200_000,
            weights: Weights::default(),
            goal_tolerance: 0.5,
            alpha: 0.5,
            beta: 0.1,
            smooth_tolerance: 1e-6,
            smooth_max_iters: 10_000,
        }
    }
}

/// Names accepted by [`PlanConfig::preset`].
pub const PRESETS: &[&str] = &["default", "paper-120"];

impl PlanConfig {
    /// Named parameter sets. `paper-120` keeps a 15-unit separation for
    /// maps around 240 units wide; the growth step is raised to match so
    /// that the seed's children clear the separation radius.
    pub fn preset(name: &str) -> Option<PlanConfig> {
        match name {
            "default" => Some(PlanConfig::default()),
            "paper-120" => Some(PlanConfig {
                growth_step: 15.0,
                min_separation: 15.0,
                goal_tolerance: 15.0,
                ..PlanConfig::default()
            }),
            _ => None,
        }
    }

    /// Parameter problems as `(parameter, description)` pairs.
    pub fn problems(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut positive = |name: &'static str, v: f64| {
            if !(v.is_finite() && v > 0.0) {
                out.push((name, format!("{name} must be positive and finite, got {v}")));
            }
        };
        positive("growth_step", self.growth_step);
        positive("min_separation", self.min_separation);
        positive("w_step", self.weights.w_step);
        positive("w_goal", self.weights.w_goal);
        positive("goal_tolerance", self.goal_tolerance);
        positive("smooth_tolerance", self.smooth_tolerance);
        if self.max_fields == 0 {
            out.push(("max_fields", "max_fields must be at least 1".into()));
        }
        if self.smooth_max_iters == 0 {
            out.push(("smooth_max_iters", "smooth_max_iters must be at least 1".into()));
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v > 0.0 && v < 1.0) {
                out.push((name, format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        let sum = self.alpha + self.beta;
        if sum.is_nan() || sum >= 1.0 {
            out.push(("alpha + beta", format!("alpha + beta must be below 1, got {sum}")));
        }
        out
    }
}

/// A validated planning problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub gate: Box3,
    pub obstacles: Vec<Box3>,
    pub start: Point3,
    pub goal: Point3,
    pub params: PlanConfig,
}

impl Scene {
    pub fn new(gate: Box3, obstacles: Vec<Box3>, start: Point3, goal: Point3, params: PlanConfig) -> Self {
        Scene {
            gate,
            obstacles,
            start,
            goal,
            params,
        }
    }

    /// Obstacles clipped to the gate. Obstacles whose clipped part has no
    /// volume are dropped.
    pub fn clipped_obstacles(&self) -> Vec<Box3> {
        self.obstacles
            .iter()
            .filter_map(|o| o.intersection(&self.gate))
            .filter(|b| b.volume() > 0.0)
            .collect()
    }

    pub fn with_params(mut self, params: PlanConfig) -> Self {
        self.params = params;
        self
    }

    /// Serializes to the scene file format with every parameter written out.
    pub fn to_text(&self) -> String {
        let file = SceneFile::from(self);
        let mut s = serde_json::to_string_pretty(&file).expect("scene serializes");
        s.push('\n');
        s
    }

    /// Stable 64-bit identity of the scene contents (FNV-1a over the
    /// serialized text).
    pub fn fingerprint(&self) -> u64 {
        self.to_text()
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
                (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// Machine-readable validation reasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReasonCode {
    DegenerateGate,
    MalformedBox,
    NonFiniteCoordinate,
    StartOutsideGate,
    GoalOutsideGate,
    StartInObstacle,
    GoalInObstacle,
    ObstacleOutsideGate,
    ObstacleClipped,
    InvalidParam,
}

impl ReasonCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReasonCode::DegenerateGate => "degenerate-gate",
            ReasonCode::MalformedBox => "malformed-box",
            ReasonCode::NonFiniteCoordinate => "non-finite-coordinate",
            ReasonCode::StartOutsideGate => "start-outside-gate",
            ReasonCode::GoalOutsideGate => "goal-outside-gate",
            ReasonCode::StartInObstacle => "start-in-obstacle",
            ReasonCode::GoalInObstacle => "goal-in-obstacle",
            ReasonCode::ObstacleOutsideGate => "obstacle-outside-gate",
            ReasonCode::ObstacleClipped => "obstacle-clipped",
            ReasonCode::InvalidParam => "invalid-param",
        }
    }

    pub fn severity(&self) -> Severity {
        match self {
            ReasonCode::ObstacleOutsideGate | ReasonCode::ObstacleClipped => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which part of the scene a violation refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Gate,
    Start,
    Goal,
    Obstacle(usize),
    Param(&'static str),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Gate => f.write_str("gate"),
            Element::Start => f.write_str("start"),
            Element::Goal => f.write_str("goal"),
            Element::Obstacle(i) => write!(f, "obstacles[{i}]"),
            Element::Param(name) => write!(f, "params.{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub code: ReasonCode,
    pub element: Element,
    pub detail: String,
}

impl Violation {
    fn new(code: ReasonCode, element: Element, detail: impl Into<String>) -> Self {
        Violation {
            code,
            element,
            detail: detail.into(),
        }
    }

    pub fn severity(&self) -> Severity {
        self.code.severity()
    }

    pub fn is_error(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity() {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}: {} ({}): {}", self.code, self.element, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("malformed scene file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scene: {}", summarize(.0))]
    Invalid(Vec<Violation>),
}

fn summarize(v: &[Violation]) -> String {
    v.iter()
        .filter(|v| v.is_error())
        .map(|v| format!("{} ({})", v.code, v.element))
        .collect::<Vec<_>>()
        .join(", ")
}

impl SceneError {
    /// Error-level violations, empty for parse errors.
    pub fn violations(&self) -> &[Violation] {
        match self {
            SceneError::Invalid(v) => v,
            SceneError::Parse(_) => &[],
        }
    }
}

/// Checks every scene invariant. Warnings (obstacles outside or partially
/// outside the gate) are reported alongside errors.
pub fn validate_scene(scene: &Scene) -> Vec<Violation> {
    use ReasonCode::*;
    let mut out = Vec::new();

    let gate = &scene.gate;
    if !gate.is_well_formed() {
        out.push(Violation::new(MalformedBox, Element::Gate, "gate min exceeds max or is not finite"));
    } else if gate.volume() <= 0.0 {
        out.push(Violation::new(DegenerateGate, Element::Gate, "gate has zero volume"));
    }

    for (element, p) in [(Element::Start, scene.start), (Element::Goal, scene.goal)] {
        if !p.is_finite() {
            out.push(Violation::new(NonFiniteCoordinate, element, "coordinate is not finite"));
            continue;
        }
        if !gate.contains(&p) {
            let code = if element == Element::Start { StartOutsideGate } else { GoalOutsideGate };
            out.push(Violation::new(code, element, format!("{:?} lies outside the gate", p.to_array())));
        }
    }

    for (i, o) in scene.obstacles.iter().enumerate() {
        if !o.is_well_formed() {
            out.push(Violation::new(MalformedBox, Element::Obstacle(i), "obstacle min exceeds max or is not finite"));
            continue;
        }
        match o.intersection(gate).filter(|b| b.volume() > 0.0) {
            None => out.push(Violation::new(
                ObstacleOutsideGate,
                Element::Obstacle(i),
                "obstacle has no volume inside the gate and is ignored",
            )),
            Some(clipped) => {
                if clipped != *o {
                    out.push(Violation::new(
                        ObstacleClipped,
                        Element::Obstacle(i),
                        "obstacle extends past the gate and is clipped",
                    ));
                }
                for (element, p) in [(Element::Start, scene.start), (Element::Goal, scene.goal)] {
                    if clipped.contains(&p) {
                        let code = if element == Element::Start { StartInObstacle } else { GoalInObstacle };
                        out.push(Violation::new(code, element, format!("inside obstacles[{i}]")));
                    }
                }
            }
        }
    }

    for (name, problem) in scene.params.problems() {
        out.push(Violation::new(InvalidParam, Element::Param(name), problem));
    }
    out
}

/// Parses and validates a scene file. Absent parameters take their defaults;
/// an absent `goal_tolerance` follows `growth_step`.
pub fn load_scene(contents: &str) -> Result<Scene, SceneError> {
    let file: SceneFile = serde_json::from_str(contents)?;
    let scene = file.into_scene();
    let violations = validate_scene(&scene);
    if violations.iter().any(Violation::is_error) {
        return Err(SceneError::Invalid(violations));
    }
    Ok(scene)
}

/// Parses a scene file without validating it.
pub fn parse_scene(contents: &str) -> Result<Scene, SceneError> {
    let file: SceneFile = serde_json::from_str(contents)?;
    Ok(file.into_scene())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    gate: Box3,
    start: Point3,
    goal: Point3,
    #[serde(default)]
    obstacles: Vec<Box3>,
    #[serde(default)]
    params: ParamsFile,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    growth_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_separation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_fields: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_goal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    goal_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    smooth_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    smooth_max_iters: Option<usize>,
}

impl SceneFile {
    fn into_scene(self) -> Scene {
        let d = PlanConfig::default();
        let p = self.params;
        let growth_step = p.growth_step.unwrap_or(d.growth_step);
        let params = PlanConfig {
            growth_step,
            min_separation: p.min_separation.unwrap_or(d.min_separation),
            max_fields: p.max_fields.unwrap_or(d.max_fields),
            weights: Weights::new(
                p.w_step.unwrap_or(d.weights.w_step),
                p.w_goal.unwrap_or(d.weights.w_goal),
            ),
            goal_tolerance: p.goal_tolerance.unwrap_or(growth_step),
            alpha: p.alpha.unwrap_or(d.alpha),
            beta: p.beta.unwrap_or(d.beta),
            smooth_tolerance: p.smooth_tolerance.unwrap_or(d.smooth_tolerance),
            smooth_max_iters: p.smooth_max_iters.unwrap_or(d.smooth_max_iters),
        };
        Scene::new(self.gate, self.obstacles, self.start, self.goal, params)
    }
}

impl From<&Scene> for SceneFile {
    fn from(s: &Scene) -> Self {
        let p = &s.params;
        SceneFile {
            gate: s.gate,
            start: s.start,
            goal: s.goal,
            obstacles: s.obstacles.clone(),
            params: ParamsFile {
                growth_step: Some(p.growth_step),
                min_separation: Some(p.min_separation),
                max_fields: Some(p.max_fields),
                w_step: Some(p.weights.w_step),
                w_goal: Some(p.weights.w_goal),
                goal_tolerance: Some(p.goal_tolerance),
                alpha: Some(p.alpha),
                beta: Some(p.beta),
                smooth_tolerance: Some(p.smooth_tolerance),
                smooth_max_iters: Some(p.smooth_max_iters),
            },
        }
    }
}
