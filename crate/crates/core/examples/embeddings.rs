//! Embedding norms between Gamma spaces with a sampled cross-check.

use gammaspace::{embedding_empirical_check, embedding_norm, PiecewisePowerWeight};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let unit = PiecewisePowerWeight::unit();
    let sqrt = PiecewisePowerWeight::power(inf, 1.0, 0.5)?;
    println!("identical spaces: {}", embedding_norm(2.0, &unit, 2.0, &unit)?);
    let n = embedding_norm(2.0, &unit, 3.0, &sqrt)?;
    let e = embedding_empirical_check(2.0, &unit, 3.0, &sqrt, 500, 0)?;
    println!("(2, 1) into (3, t^1/2): norm {n:.9}, sampled max {:.9}, dual form {:?}", e.max_ratio, e.dual_form_max_ratio);
    let e = embedding_empirical_check(2.0, &unit, 3.0, &unit, 2000, 0)?;
    println!("(2, 1) into (3, 1): norm {}, witness ratio {:.3} at support {:.3e}", embedding_norm(2.0, &unit, 3.0, &unit)?, e.max_ratio, e.argmax_support);
    let bump = PiecewisePowerWeight::from_breaks(inf, &[1.0], &[(1.0, 0.5), (1.0, -0.5)])?;
    println!("(3, 1) into (2, bump): {:.6}", embedding_norm(3.0, &unit, 2.0, &bump)?);
    Ok(())
}
