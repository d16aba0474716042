//! Compares the dual-norm formula with the brute-force associate norm
//! oracle, including its grid-doubling stability.

use gammaspace::{associate_norm_oracle, dual_norm, OracleConfig, PiecewisePowerWeight, StepFunction};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let weights = [
        ("phi = 1", PiecewisePowerWeight::unit()),
        ("phi = t^1/2", PiecewisePowerWeight::power(inf, 1.0, 0.5)?),
        ("finite mass", PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.0), (1.0, -2.0)])?),
    ];
    let g = StepFunction::new(vec![0.0, 0.5, 2.0, 5.0], vec![3.0, 1.0, 0.25])?;
    let config = OracleConfig::default();
    for (name, w) in &weights {
        let d = dual_norm(2.0, w, &g)?;
        let o = associate_norm_oracle(2.0, w, &g, &config)?;
        let o2 = associate_norm_oracle(2.0, w, &g, &config.doubled())?;
        println!(
            "{name:>12}: dual norm {d:.6}  oracle {:.6} ({:?}, {} sweeps)  ratio {:.4}  doubled {:.4}",
            o.value,
            o.family,
            o.sweeps,
            o.value / d,
            o2.value / d
        );
    }
    let o = associate_norm_oracle(2.0, &PiecewisePowerWeight::unit(), &StepFunction::indicator(1.0), &config)?;
    println!("golden: oracle {:.9} vs 1/sqrt(2) = {:.9}", o.value, 0.5f64.sqrt());
    Ok(())
}
