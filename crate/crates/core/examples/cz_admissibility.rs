//! The CZ admissibility test and its hypothesis gate.

use gammaspace::{cz_admissible, PiecewisePowerWeight};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let weights = [
        ("phi = 1", PiecewisePowerWeight::unit()),
        ("phi = t^-1/2", PiecewisePowerWeight::power(inf, 1.0, -0.5)?),
        ("finite mass", PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, -2.0)])?),
        ("phi = t", PiecewisePowerWeight::power(inf, 1.0, 1.0)?),
    ];
    for (name, w) in weights {
        match cz_admissible(2.0, &w) {
            Ok(r) => println!("{name:>13}: admissible {} c* = {:?}", r.admissible, r.c_star),
            Err(e) => println!("{name:>13}: {e}"),
        }
    }
    Ok(())
}
