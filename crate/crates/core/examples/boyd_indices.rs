//! Dilation norms and Boyd indices.

use gammaspace::{boyd_indices, dilation_norm, PiecewisePowerWeight};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let w = PiecewisePowerWeight::power(inf, 1.0, 0.5)?;
    for t in [0.25, 1.0, 16.0] {
        println!("h({t}) = {:.9}", dilation_norm(2.0, &w, t)?);
    }
    let two = PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, 0.5)])?;
    for (name, w) in [("t^1/2", w), ("two regimes", two)] {
        let r = boyd_indices(2.0, &w)?;
        println!(
            "{name}: i = {:.6}, I = {:.6}, drift {:.1e}/{:.1e}, chain ok {}",
            r.i_lower, r.i_upper, r.drift_lower, r.drift_upper, r.chain_ok
        );
    }
    Ok(())
}
