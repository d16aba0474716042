//! The averaging operator `P`, its adjoint `Q`, the weighted tail `Q_p`,
//! the bracket identity `t · P(Q_p φ)(t) = Φ_p(t)` and the Stieltjes
//! sandwich `(Pf + Qf)/2 ≤ Sf ≤ Pf + Qf`.

use gammaspace::operators::Evaluable;
use gammaspace::{hardy_p, hardy_q, p_phi, p_q_p_phi, phi_bracket, q_sub_p, stieltjes, PiecewisePowerWeight, StepFunction};

fn main() -> gammaspace::Result<()> {
    let w = PiecewisePowerWeight::from_breaks(f64::INFINITY, &[1.0], &[(1.0, 0.0), (1.0, 0.5)])?;
    let p = 2.0;
    for t in [0.1, 1.0, 10.0] {
        let lhs = t * p_q_p_phi(&w, p, t)?;
        println!(
            "t = {t:>4}: P phi = {:.6}  Q_p phi = {:.6}  t P(Q_p phi) = {lhs:.9}  Phi = {:.9}",
            p_phi(&w, t)?,
            q_sub_p(&w, p, t)?,
            phi_bracket(&w, p, t)?
        );
    }
    let f = StepFunction::new(vec![0.0, 0.5, 2.0, 3.0], vec![2.0, 0.5, 1.0])?;
    let (pf, qf) = (hardy_p(&f), hardy_q(&f, f64::INFINITY));
    for t in [0.1, 1.0, 2.5, 10.0] {
        let (a, b, s) = (pf.eval(t), qf.eval(t), stieltjes(&f, t));
        println!("t = {t:>4}: (Pf+Qf)/2 = {:.6} <= Sf = {s:.6} <= Pf+Qf = {:.6}", 0.5 * (a + b), a + b);
    }
    Ok(())
}
