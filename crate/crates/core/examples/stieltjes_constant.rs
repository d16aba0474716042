//! Constants of the weighted Stieltjes inequality in both index ranges.

use gammaspace::inequalities::{stieltjes_constant_with, SearchOptions};
use gammaspace::{stieltjes_constant, PiecewisePower};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let one = PiecewisePower::power(inf, 1.0, 0.0)?;
    println!("u = v = 1, p = q = 2: {:.9}", stieltjes_constant(2.0, 2.0, &one, &one)?);

    let u = PiecewisePower::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, -0.5)])?;
    for lambda in [1.0, 10.0] {
        let r = stieltjes_constant_with(2.0, 2.0, &u.dilate(lambda), &one.dilate(lambda), &SearchOptions::default())?;
        let s = r.surrogate.expect("sup form");
        println!("dilated by {lambda}: K = {:.9} (surrogate {:.6})", r.value, s.value);
    }
    let cut = PiecewisePower::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, -3.0)])?;
    println!("q < p, (p, q) = (3, 2): {:.6}", stieltjes_constant(3.0, 2.0, &cut, &one)?);
    Ok(())
}
