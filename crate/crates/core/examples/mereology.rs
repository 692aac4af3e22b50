//! Rough inclusion and mereological proximity of a few box pairs.

use mereo_plan::{mereo_proximity, rough_inclusion_degree, Box3};

fn main() -> Result<(), mereo_plan::GeometryError> {
    let unit = Box3::from_corners([0.0; 3], [1.0; 3]);
    let pairs = [
        ("identical", unit, unit),
        ("half shifted", unit, Box3::from_corners([0.5, 0.0, 0.0], [1.5, 1.0, 1.0])),
        ("inside a double", unit, Box3::from_corners([0.0; 3], [2.0, 1.0, 1.0])),
        ("touching", unit, Box3::from_corners([1.0, 0.0, 0.0], [2.0, 1.0, 1.0])),
    ];
    println!("{:<16} {:>8} {:>8} {:>8}", "pair", "mu(X,Y)", "mu(Y,X)", "K");
    for (name, x, y) in pairs {
        println!(
            "{name:<16} {:>8.3} {:>8.3} {:>8.3}",
            rough_inclusion_degree(&x, &y)?,
            rough_inclusion_degree(&y, &x)?,
            mereo_proximity(&x, &y)?
        );
    }
    Ok(())
}
