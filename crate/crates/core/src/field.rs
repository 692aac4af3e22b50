//! Potential field generation around the goal.
//!
//! Fields grow breadth-first from a seed at the goal. Each processed field
//! proposes 24 candidates on the faces, edges and corners of a cube around
//! it (the straight up/down moves are not part of the tables), in one of two
//! fixed orders that alternate from one processed field to the next.
//! Candidates outside the gate, inside an obstacle, or closer than
//! `min_separation` to an existing field are dropped.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::geometry::{Box3, Point3};
use crate::scene::{validate_scene, PlanConfig, Scene, SceneError, Violation};

/// Enumeration order of the neighbor table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Anticlockwise,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::Anticlockwise,
            Orientation::Anticlockwise => Orientation::Clockwise,
        }
    }
}

const RING_CLOCKWISE: [(i8, i8); 8] = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1)];
const RING_ANTICLOCKWISE: [(i8, i8); 8] = [(-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0)];
// same plane first, then below, then above
const LAYERS: [i8; 3] = [0, -1, 1];

/// Unit offsets of the 24-entry table for `o`, in table order.
pub fn neighbor_directions(o: Orientation) -> [[i8; 3]; 24] {
    let ring = match o {
        Orientation::Clockwise => &RING_CLOCKWISE,
        Orientation::Anticlockwise => &RING_ANTICLOCKWISE,
    };
    let mut out = [[0i8; 3]; 24];
    for (l, dz) in LAYERS.iter().enumerate() {
        for (k, (dx, dy)) in ring.iter().enumerate() {
            out[l * 8 + k] = [*dx, *dy, *dz];
        }
    }
    out
}

/// The 24 candidate positions around `center` at the given offset.
pub fn generate_neighbors(center: Point3, offset: f64, o: Orientation) -> [Point3; 24] {
    neighbor_directions(o).map(|[dx, dy, dz]| {
        center.offset(
            f64::from(dx) * offset,
            f64::from(dy) * offset,
            f64::from(dz) * offset,
        )
    })
}

/// A generated field `p(x, y, z, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialField {
    pub position: Point3,
    /// Generation distance: zero at the seed, parent's value plus the
    /// growth step for every child.
    pub d: f64,
    /// Creation order, 0 for the seed.
    pub seq: usize,
    /// Sequence number of the field that proposed this one.
    pub parent: Option<usize>,
}

/// Accepted fields in creation order.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSet {
    pub fields: Vec<PotentialField>,
    /// [`Scene::fingerprint`] of the generating scene.
    pub scene_id: u64,
    pub params_used: PlanConfig,
    /// Set when generation stopped on the `max_fields` budget.
    pub truncated: bool,
}

impl FieldSet {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn seed(&self) -> &PotentialField {
        &self.fields[0]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PotentialField> {
        self.fields.iter()
    }
}

/// One processed field, reported to the trace hook of
/// [`generate_field_traced`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpandStep {
    /// 0 for the seed, counting up by one per processed field.
    pub index: usize,
    pub parent_seq: usize,
    pub orientation: Orientation,
    pub offset: f64,
    pub accepted: usize,
}

pub fn generate_field(scene: &Scene) -> Result<FieldSet, SceneError> {
    generate_field_traced(scene, |_| {})
}

/// Like [`generate_field`], calling `on_step` after each processed field.
pub fn generate_field_traced(
    scene: &Scene,
    mut on_step: impl FnMut(&ExpandStep),
) -> Result<FieldSet, SceneError> {
    let violations: Vec<Violation> = validate_scene(scene);
    if violations.iter().any(Violation::is_error) {
        return Err(SceneError::Invalid(violations));
    }

    let cfg = scene.params;
    let obstacles = scene.clipped_obstacles();
    let mut index = SeparationIndex::new(cfg.min_separation);
    let mut fields = vec![PotentialField {
        position: scene.goal,
        d: 0.0,
        seq: 0,
        parent: None,
    }];
    index.insert(scene.goal, 0);

    let mut queue = VecDeque::from([0usize]);
    let mut orientation = Orientation::Clockwise;
    let mut processed = 0usize;
    let mut truncated = false;

    'expand: while let Some(k) = queue.pop_front() {
        let parent = fields[k];
        let d = parent.d + cfg.growth_step;
        let mut accepted = 0;
        for candidate in generate_neighbors(parent.position, d, orientation) {
            if !admissible(&candidate, &scene.gate, &obstacles) {
                continue;
            }
            if index.any_within(&candidate, &fields) {
                continue;
            }
            if fields.len() >= cfg.max_fields {
                truncated = true;
                on_step(&ExpandStep {
                    index: processed,
                    parent_seq: parent.seq,
                    orientation,
                    offset: d,
                    accepted,
                });
                break 'expand;
            }
            let seq = fields.len();
            fields.push(PotentialField {
                position: candidate,
                d,
                seq,
                parent: Some(parent.seq),
            });
            index.insert(candidate, seq);
            queue.push_back(seq);
            accepted += 1;
        }
        on_step(&ExpandStep {
            index: processed,
            parent_seq: parent.seq,
            orientation,
            offset: d,
            accepted,
        });
        processed += 1;
        orientation = orientation.flipped();
    }

    Ok(FieldSet {
        fields,
        scene_id: scene.fingerprint(),
        params_used: cfg,
        truncated,
    })
}

fn admissible(p: &Point3, gate: &Box3, obstacles: &[Box3]) -> bool {
    gate.contains(p) && !obstacles.iter().any(|o| o.contains(p))
}

/// Uniform hash grid with cell edge `min_separation`: any field closer than
/// the separation lies in one of the 27 cells around a query point.
struct SeparationIndex {
    cell: f64,
    radius: f64,
    buckets: HashMap<[i64; 3], Vec<usize>>,
}

impl SeparationIndex {
    fn new(min_separation: f64) -> Self {
        SeparationIndex {
            cell: min_separation,
            radius: min_separation,
            buckets: HashMap::new(),
        }
    }

    fn key(&self, p: &Point3) -> [i64; 3] {
        p.to_array().map(|c| (c / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: Point3, seq: usize) {
        let key = self.key(&p);
        self.buckets.entry(key).or_default().push(seq);
    }

    fn any_within(&self, p: &Point3, fields: &[PotentialField]) -> bool {
        let [kx, ky, kz] = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(bucket) = self.buckets.get(&[kx + dx, ky + dy, kz + dz]) else {
                        continue;
                    };
                    if bucket
                        .iter()
                        .any(|&s| fields[s].position.distance(p) < self.radius)
                    {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Field dump: a `#` header line followed by one `seq x y z d` record per
/// field in creation order.
pub fn dump_fields(fs: &FieldSet, scene_name: &str) -> String {
    let p = &fs.params_used;
    let mut out = format!(
        "# scene={scene_name} growth_step={} min_separation={} max_fields={} fields={} truncated={}\n",
        p.growth_step,
        p.min_separation,
        p.max_fields,
        fs.len(),
        fs.truncated
    );
    for f in &fs.fields {
        let q = f.position;
        writeln!(out, "{} {} {} {} {}", f.seq, q.x, q.y, q.z, f.d).unwrap();
    }
    out
}
