//! Samples the dual weight `ψ` and compares its local slope with the
//! endpoint exponents.

use gammaspace::asymptote::Endpoint;
use gammaspace::{dual_weight, PiecewisePowerWeight};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    for (p, alpha) in [(2.0, 0.0), (3.0, 1.0), (1.5, -0.5)] {
        let psi = dual_weight(p, &PiecewisePowerWeight::power(inf, 1.0, alpha)?)?;
        println!("p = {p}, phi = t^{alpha}: psi ~ t^{:.6} at 0", psi.asymptote(Endpoint::Zero).power);
        for s in psi.sample(&[1e-4, 1.0, 1e4]) {
            println!("  psi({:e}) = {:.9e}  local slope {:.6}", s.t, s.psi, s.local_slope);
        }
    }
    let w = PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, -2.0)])?;
    let psi = dual_weight(2.0, &w)?;
    println!("finite mass: psi exponents {:.3} at 0, {:?} at infinity", psi.asym0, psi.asym_inf);
    Ok(())
}
