//! Decreasing rearrangement, distribution function and `f**` of a step
//! function, and subadditivity of `f ↦ f**`.

use gammaspace::functions::subadditivity_gap;
use gammaspace::StepFunction;

fn main() -> gammaspace::Result<()> {
    let f = StepFunction::new(vec![0.0, 1.0, 2.0, 4.0], vec![1.0, 3.0, 2.0])?;
    let g = StepFunction::boxcar(0.5, 3.0, 2.5)?;
    let fstar = f.rearrange();
    println!("f      breaks {:?} values {:?}", f.breaks(), f.values());
    println!("f*     breaks {:?} values {:?}", fstar.breaks(), fstar.values());
    for lam in [0.5, 1.5, 2.5] {
        println!("|{{f > {lam}}}| = {}", f.distribution(lam));
    }
    for t in [0.5, 1.0, 3.0, 10.0] {
        println!(
            "t = {t:>4}: f**(t) = {:.6}, gap f**+g**-(f+g)** = {:.3e}",
            f.double_star(t),
            subadditivity_gap(&f, &g, t)
        );
    }
    Ok(())
}
