//! Validates a few weights and prints the bracket `Φ_p(t)` and the
//! fundamental function `Φ_p(t)^{1/p}`.

use gammaspace::{validate_nontrivial, GammaSpace, PiecewisePowerWeight};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let candidates = [
        ("phi = 1", PiecewisePowerWeight::unit()),
        ("phi = t", PiecewisePowerWeight::power(inf, 1.0, 1.0)?),
        ("phi = t^-1/2", PiecewisePowerWeight::power(inf, 1.0, -0.5)?),
        ("two regimes", PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, 0.5)])?),
    ];
    let p = 2.0;
    for (name, w) in candidates {
        let flags = validate_nontrivial(&w, p);
        match flags.reason {
            Some(r) => println!("{name:>14}: rejected ({r})"),
            None => {
                let space = GammaSpace::new(p, w)?;
                print!("{name:>14}: cz hypothesis {}  ", flags.cz_hypothesis);
                for t in [0.01, 1.0, 100.0] {
                    print!("Phi({t}) = {:.6}  ", space.bracket(t)?);
                }
                println!("||chi(0,1)|| = {:.6}", space.fundamental(1.0)?);
            }
        }
    }
    Ok(())
}
