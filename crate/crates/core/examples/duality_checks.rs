//! The inequalities behind the duality theorem: the key lemma, the
//! `Pψ`-to-bracket ratio, the duality over `Ω` and the balance equation.

use gammaspace::duality::LemmaSide;
use gammaspace::{appendix_balance, lemma41_check, omega_duality_ratio, phps_ratio, PiecewisePowerWeight, StepFunction};

fn main() -> gammaspace::Result<()> {
    let w = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5)?;
    let p = 2.0;
    let f_dec = StepFunction::new(vec![0.0, 1.0, 3.0], vec![2.0, 0.5])?;
    let f_inc = StepFunction::new(vec![0.0, 1.0, 3.0], vec![0.5, 2.0])?;
    let g = StepFunction::new(vec![0.0, 0.5, 4.0], vec![1.0, 3.0])?;
    for (side, f) in [(LemmaSide::I, &f_dec), (LemmaSide::Ii, &f_inc)] {
        let c = lemma41_check(p, &w, f, &g, side)?;
        println!("lemma {side:?}: lhs {:.6}  rhs {:.6}  holds with C = {}: {}", c.lhs, c.rhs, c.constant, c.holds());
    }
    for t in [1e-3, 1.0, 1e3] {
        println!("P psi / Phi-ratio at {t:e}: {:.6}", phps_ratio(p, &w, t)?);
    }
    println!("omega duality ratio: {:.6}", omega_duality_ratio(p, &w, &g)?);
    for t in [1e-3, 1.0, 1e3] {
        let a = appendix_balance(p, &w, t)?;
        println!(
            "balance at {t:e}: residual {:.6}  tail domination {} ({:.4e} >= {:.4e})",
            a.m2_residual, a.domination_ok, a.domination_lhs, a.domination_rhs
        );
    }
    Ok(())
}
