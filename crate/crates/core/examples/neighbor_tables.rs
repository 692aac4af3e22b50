//! Prints both 24-entry neighbor tables around the origin.

use mereo_plan::{generate_neighbors, Orientation, Point3};

fn main() {
    for o in [Orientation::Clockwise, Orientation::Anticlockwise] {
        println!("{o:?}");
        for (k, p) in generate_neighbors(Point3::default(), 1.0, o).iter().enumerate() {
            println!("  p_{k:<2} ({:>2}, {:>2}, {:>2})", p.x, p.y, p.z);
        }
    }
}
