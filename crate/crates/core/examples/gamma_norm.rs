//! Gamma norms of step functions, compared with the fundamental function
//! on indicators.

use gammaspace::{gamma_norm, weighted_lp_norm, GammaSpace, PiecewisePowerWeight, StepFunction};

fn main() -> gammaspace::Result<()> {
    let w = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5)?;
    let p = 2.0;
    let space = GammaSpace::new(p, w.clone())?;
    for a in [0.1, 1.0, 10.0] {
        let chi = StepFunction::indicator(a);
        println!("rho(chi(0,{a})) = {:.9}  fundamental = {:.9}", gamma_norm(p, &w, &chi)?, space.fundamental(a)?);
    }
    let f = StepFunction::new(vec![0.0, 0.5, 1.0, 4.0], vec![1.0, 3.0, 0.5])?;
    println!("rho(f) = {:.9}", gamma_norm(p, &w, &f)?);
    println!("rho(2f) = {:.9}", gamma_norm(p, &w, &f.scale(2.0))?);
    println!("rho(f*) = {:.9}", gamma_norm(p, &w, &f.rearrange().into_step())?);
    println!("weighted L2 norm of f = {:.9}", weighted_lp_norm(p, &w, &f)?);
    Ok(())
}
