//! Hardy-inequality constants for `P` and `Q` and a sampled check of the
//! inequalities they control.

use gammaspace::inequalities::{hardy_p_sides, hardy_q_sides};
use gammaspace::sampling::StepSampler;
use gammaspace::{hardy_p_constant, hardy_q_constant, PiecewisePower};

fn main() -> gammaspace::Result<()> {
    let inf = f64::INFINITY;
    let one = PiecewisePower::power(inf, 1.0, 0.0)?;
    println!("u = v = 1, p = q = 2: P {:.9}  Q {:.9}", hardy_p_constant(2.0, 2.0, &one, &one, inf)?, hardy_q_constant(2.0, 2.0, &one, &one, inf)?);
    println!("same on (0, 1): P {:.9}  Q {:.9}", hardy_p_constant(2.0, 2.0, &one, &one, 1.0)?, hardy_q_constant(2.0, 2.0, &one, &one, 1.0)?);
    let v = PiecewisePower::power(inf, 1.0, -1.0)?;
    println!("v = 1/t: P {}", hardy_p_constant(2.0, 2.0, &one, &v, inf)?);

    let (p, q) = (2.0, 4.0);
    let u = PiecewisePower::power(inf, 1.0, 0.25)?;
    let v = one.clone();
    let bp = hardy_p_constant(p, q, &u, &v, inf)?;
    let v_q = PiecewisePower::power(inf, 1.0, -0.25)?;
    let bq = hardy_q_constant(p, q, &one, &v_q, inf)?;
    let mut sampler = StepSampler::new(1);
    let (mut mp, mut mq): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let f = sampler.step();
        mp = mp.max(hardy_p_sides(p, q, &u, &v, inf, &f)?.ratio());
        mq = mq.max(hardy_q_sides(p, q, &one, &v_q, inf, &f)?.ratio());
    }
    // Sharp constants lie between B and k B.
    let pp = p / (p - 1.0);
    let k = (1.0 + q / pp).powf(1.0 / q) * (1.0 + pp / q).powf(1.0 / pp);
    println!("band factor k = {k:.6}");
    println!("(p, q) = (2, 4): P with u = t^1/4, v = 1: {bp:.6} sampled {mp:.6}; Q with u = 1, v = t^-1/4: {bq:.6} sampled {mq:.6}");
    Ok(())
}
