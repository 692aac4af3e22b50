//! Path planning in a bounded 3D gate with rough-mereological potential
//! fields.
//!
//! A [`Scene`] describes the gate, box obstacles, start and goal. Fields are
//! grown outward from the goal by [`generate_field`], a path is read off them
//! by [`search_path`], then thinned by [`filter_path`] and relaxed by
//! [`smooth_path`]. [`plan`] runs the whole pipeline.
//!
//! ```
//! use mereo_plan::{fixtures, plan};
//!
//! let scene = fixtures::three_obstacles();
//! let out = plan(&scene).unwrap();
//! assert!(out.filtered.len() <= out.raw.len());
//! ```

pub mod cli;
pub mod export;
pub mod field;
pub mod fixtures;
pub mod geometry;
pub mod planner;
pub mod scene;

pub use field::{dump_fields, generate_field, generate_neighbors, FieldSet, Orientation, PotentialField};
pub use geometry::{
    euclidean_distance, mereo_proximity, rough_inclusion_degree, segment_intersects_box, weighted_distance, Box3,
    GeometryError, Point3, Segment3, Weights,
};
pub use planner::{filter_path, plan, search_path, smooth_path, Path, PlanError, PlanOutput, Stage};
pub use scene::{load_scene, validate_scene, PlanConfig, ReasonCode, Scene, SceneError, Violation};
