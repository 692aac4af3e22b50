//! Path extraction over a generated field set, distance-monotone filtering,
//! and iterative smoothing.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::field::{generate_field, FieldSet, PotentialField};
use crate::geometry::{euclidean_distance, segment_clear_of, weighted_distance, Box3, Point3, Segment3};
use crate::scene::{PlanConfig, Scene, SceneError};

/// Distances closer than this count as identical when filtering.
pub const DISTANCE_TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Raw,
    Filtered,
    Smoothed,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::Filtered => "filtered",
            Stage::Smoothed => "smoothed",
        }
    }
}

/// Outcome of the smoothing iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingReport {
    pub sweeps: usize,
    pub converged: bool,
    /// Largest coordinate change of each sweep.
    pub max_changes: Vec<f64>,
    /// Indices `i` of segments `i -> i + 1` that touch an obstacle.
    pub colliding_segments: Vec<usize>,
}

impl SmoothingReport {
    pub fn has_collision(&self) -> bool {
        !self.colliding_segments.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub waypoints: Vec<Point3>,
    pub stage: Stage,
    /// Waypoints kept by the filter only to preserve line of sight. Their
    /// distance to the goal need not decrease.
    pub guard_points: Vec<usize>,
    pub smoothing: Option<SmoothingReport>,
}

impl Path {
    fn new(waypoints: Vec<Point3>, stage: Stage) -> Self {
        Path {
            waypoints,
            stage,
            guard_points: Vec::new(),
            smoothing: None,
        }
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    /// Total polyline length.
    pub fn length(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|w| euclidean_distance(&w[0], &w[1]))
            .sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment3> + '_ {
        self.waypoints.windows(2).map(|w| Segment3::new(w[0], w[1]))
    }

    /// True when no segment touches any of the boxes.
    pub fn is_clear_of(&self, obstacles: &[Box3]) -> bool {
        self.segments().all(|s| segment_clear_of(&s, obstacles))
    }
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("no field is visible from the start")]
    NoReachableField { trace: Vec<usize> },
    #[error("search stuck after visiting {} fields without reaching the goal", .trace.len())]
    Stuck { trace: Vec<usize> },
}

impl PlanError {
    /// Field sequence numbers visited before the failure.
    pub fn trace(&self) -> &[usize] {
        match self {
            PlanError::NoReachableField { trace } | PlanError::Stuck { trace } => trace,
            PlanError::Scene(_) => &[],
        }
    }
}

/// Search bookkeeping: the current ("actual") field, which fields were
/// already chosen, and the order in which they were chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchState {
    pub actual_field: PotentialField,
    pub visited: Vec<bool>,
    pub trace: Vec<usize>,
}

impl SearchState {
    fn enter(&mut self, f: PotentialField) {
        debug_assert!(!self.visited[f.seq]);
        self.visited[f.seq] = true;
        self.trace.push(f.seq);
        self.actual_field = f;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub path: Path,
    pub state: SearchState,
}

// Total order on candidates: score, then creation order, then position.
#[derive(PartialEq)]
struct Ranked {
    score: f64,
    seq: usize,
    pos: [f64; 3],
}

impl Eq for Ranked {}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then(self.seq.cmp(&other.seq))
            .then_with(|| {
                self.pos
                    .iter()
                    .zip(other.pos.iter())
                    .map(|(a, b)| a.total_cmp(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Best-first selection: lowest rank among `candidates` for which `visible`
/// holds. Ranks are only computed once per call.
fn pick(
    candidates: impl Iterator<Item = Ranked>,
    mut visible: impl FnMut(usize) -> bool,
) -> Option<usize> {
    let mut heap: BinaryHeap<Reverse<Ranked>> = candidates.map(Reverse).collect();
    while let Some(Reverse(r)) = heap.pop() {
        if visible(r.seq) {
            return Some(r.seq);
        }
    }
    None
}

fn push_distinct(waypoints: &mut Vec<Point3>, p: Point3) {
    if waypoints.last() != Some(&p) {
        waypoints.push(p);
    }
}

/// Walks the field set from the start towards the goal.
///
/// The first actual field is the field nearest the start with a clear line
/// of sight. Each step then moves to the unvisited, visible field with the
/// lowest weighted distance until the actual field is within
/// `goal_tolerance` of the goal.
pub fn search(fs: &FieldSet, scene: &Scene) -> Result<SearchOutcome, PlanError> {
    let cfg = &scene.params;
    let obstacles = scene.clipped_obstacles();
    let goal = scene.goal;
    let start = scene.start;
    let fields = &fs.fields;
    let clear = |a: &Point3, b: &Point3| segment_clear_of(&Segment3::new(*a, *b), &obstacles);

    let first = pick(
        fields.iter().map(|f| Ranked {
            score: euclidean_distance(&start, &f.position),
            seq: f.seq,
            pos: f.position.to_array(),
        }),
        |s| clear(&start, &fields[s].position),
    )
    .ok_or(PlanError::NoReachableField { trace: Vec::new() })?;

    let mut state = SearchState {
        actual_field: fields[first],
        visited: vec![false; fields.len()],
        trace: Vec::new(),
    };
    state.enter(fields[first]);
    let mut waypoints = vec![start];
    push_distinct(&mut waypoints, fields[first].position);

    while euclidean_distance(&state.actual_field.position, &goal) > cfg.goal_tolerance {
        let here = state.actual_field.position;
        let visited = &state.visited;
        let next = pick(
            fields.iter().filter(|f| !visited[f.seq]).map(|f| Ranked {
                score: weighted_distance(&here, &f.position, &goal, &cfg.weights),
                seq: f.seq,
                pos: f.position.to_array(),
            }),
            |s| clear(&here, &fields[s].position),
        );
        match next {
            Some(s) => {
                state.enter(fields[s]);
                push_distinct(&mut waypoints, fields[s].position);
            }
            None => return Err(PlanError::Stuck { trace: state.trace }),
        }
    }

    if clear(&state.actual_field.position, &goal) {
        push_distinct(&mut waypoints, goal);
    }
    Ok(SearchOutcome {
        path: Path::new(waypoints, Stage::Raw),
        state,
    })
}

/// Raw path from start to goal over `fs`; see [`search`].
pub fn search_path(fs: &FieldSet, scene: &Scene) -> Result<Path, PlanError> {
    search(fs, scene).map(|o| o.path)
}

/// Drops waypoints whose distance to the goal does not strictly decrease.
///
/// Runs of equal distance keep the waypoint whose neighbors are closest to
/// the goal (sum of predecessor and successor distances). Endpoints are
/// always kept, and a dropped waypoint is put back when bridging over it
/// would cross an obstacle; such waypoints are listed in `guard_points`.
pub fn filter_path(p: &Path, goal: Point3, obstacles: &[Box3]) -> Path {
    let pts = &p.waypoints;
    let n = pts.len();
    if n <= 2 {
        return Path::new(pts.clone(), Stage::Filtered);
    }
    let dist: Vec<f64> = pts.iter().map(|q| euclidean_distance(q, &goal)).collect();

    let mut kept = vec![0usize];
    let mut last = dist[0];
    let mut i = 1;
    while i < n - 1 {
        if dist[i] > last - DISTANCE_TIE {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < n - 1 && (dist[j + 1] - dist[i]).abs() <= DISTANCE_TIE {
            j += 1;
        }
        let best = (i..=j)
            .min_by(|&a, &b| (dist[a - 1] + dist[a + 1]).total_cmp(&(dist[b - 1] + dist[b + 1])))
            .expect("nonempty run");
        kept.push(best);
        last = dist[i];
        i = j + 1;
    }
    while kept.len() > 1 && dist[*kept.last().unwrap()] <= dist[n - 1] + DISTANCE_TIE {
        kept.pop();
    }
    kept.push(n - 1);

    // restore line of sight from raw waypoints, furthest reachable first
    let clear = |a: usize, b: usize| segment_clear_of(&Segment3::new(pts[a], pts[b]), obstacles);
    let mut out = vec![kept[0]];
    let mut guards = Vec::new();
    for &b in &kept[1..] {
        let mut cur = *out.last().unwrap();
        while !clear(cur, b) {
            let j = (cur + 1..b).rev().find(|&j| clear(cur, j)).unwrap_or(cur + 1);
            guards.push(out.len());
            out.push(j);
            cur = j;
        }
        out.push(b);
    }

    Path {
        waypoints: out.iter().map(|&k| pts[k]).collect(),
        stage: Stage::Filtered,
        guard_points: guards,
        smoothing: None,
    }
}

/// Relaxes interior waypoints towards their neighbors while anchoring them
/// to the input: `y_k += alpha (x_k - y_k) + beta (y_{k-1} + y_{k+1} - 2 y_k)`,
/// swept in place until the largest change of a sweep falls below
/// `smooth_tolerance` or `smooth_max_iters` sweeps have run. Endpoints never
/// move. Segments of the result that touch an obstacle are reported, not
/// repaired.
pub fn smooth_path(p: &Path, cfg: &PlanConfig, obstacles: &[Box3]) -> Path {
    let x: Vec<[f64; 3]> = p.waypoints.iter().map(|q| q.to_array()).collect();
    let mut y = x.clone();
    let n = y.len();
    let mut report = SmoothingReport {
        sweeps: 0,
        converged: true,
        max_changes: Vec::new(),
        colliding_segments: Vec::new(),
    };

    if n > 2 {
        report.converged = false;
        for _ in 0..cfg.smooth_max_iters {
            let mut max_change = 0.0_f64;
            for k in 1..n - 1 {
                for c in 0..3 {
                    let old = y[k][c];
                    let new = old
                        + cfg.alpha * (x[k][c] - old)
                        + cfg.beta * (y[k - 1][c] + y[k + 1][c] - 2.0 * old);
                    max_change = max_change.max((new - old).abs());
                    y[k][c] = new;
                }
            }
            report.sweeps += 1;
            report.max_changes.push(max_change);
            if max_change < cfg.smooth_tolerance {
                report.converged = true;
                break;
            }
        }
    }

    let waypoints: Vec<Point3> = y.into_iter().map(Point3::from).collect();
    report.colliding_segments = waypoints
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !segment_clear_of(&Segment3::new(w[0], w[1]), obstacles))
        .map(|(i, _)| i)
        .collect();

    Path {
        waypoints,
        stage: Stage::Smoothed,
        guard_points: Vec::new(),
        smoothing: Some(report),
    }
}

/// Every artifact of one planning run.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutput {
    pub fields: FieldSet,
    pub search: SearchState,
    pub raw: Path,
    pub filtered: Path,
    pub smoothed: Path,
}

/// Field generation, search, filtering and smoothing in sequence.
pub fn plan(scene: &Scene) -> Result<PlanOutput, PlanError> {
    let fields = generate_field(scene)?;
    plan_with_fields(scene, fields)
}

/// [`plan`] over an already generated field set.
pub fn plan_with_fields(scene: &Scene, fields: FieldSet) -> Result<PlanOutput, PlanError> {
    let obstacles = scene.clipped_obstacles();
    let SearchOutcome { path: raw, state } = search(&fields, scene)?;
    let filtered = filter_path(&raw, scene.goal, &obstacles);
    let smoothed = smooth_path(&filtered, &scene.params, &obstacles);
    Ok(PlanOutput {
        fields,
        search: state,
        raw,
        filtered,
        smoothed,
    })
}
