//! Cross-checks between independent routes to the same quantity.

mod common;

use common::{log_points, mixed_battery, step, INF};
use gammaspace::grid::golden_max;
use gammaspace::inequalities::{embedding_norm_with, hardy_p_sides, stieltjes_sides, ConstantForm, SearchOptions};
use gammaspace::sampling::StepSampler;
use gammaspace::*;

#[test]
fn dilation_norm_matches_decreasing_samples() {
    for (p, w) in mixed_battery().into_iter().filter(|(_, w)| w.b().is_infinite()) {
        let mut sampler = StepSampler::new(21);
        let fs: Vec<StepFunction> = (0..60).map(|_| sampler.decreasing().into_step()).collect();
        for s in [0.1, 0.5, 2.0, 10.0] {
            let h = dilation_norm(p, &w, s).unwrap();
            let best = fs
                .iter()
                .map(|f| gamma_norm(p, &w, &f.dilate(s)).unwrap() / gamma_norm(p, &w, f).unwrap())
                .fold(0.0, f64::max);
            assert!(best >= h / 64.0 && best <= 64.0 * h, "p {p}, s {s}: sampled {best}, h {h}");
        }
    }
}

#[test]
fn sup_form_embedding_is_the_indicator_supremum() {
    let unit = PiecewisePowerWeight::unit();
    let cases = [
        (2.0, unit.clone(), 3.0, PiecewisePowerWeight::power(INF, 1.0, 0.5).unwrap()),
        (
            2.0,
            PiecewisePowerWeight::from_breaks(INF, &[1.0], &[(1.0, 0.0), (1.0, 0.5)]).unwrap(),
            2.5,
            PiecewisePowerWeight::from_breaks(INF, &[1.0], &[(1.0, 0.5), (1.0, 0.75)]).unwrap(),
        ),
    ];
    for (p, w1, q, w2) in cases {
        let rep = embedding_norm_with(p, &w1, q, &w2, &SearchOptions::default()).unwrap();
        assert_eq!(rep.constant.form, ConstantForm::Supremum);
        let ratio = |x: f64| {
            let chi = StepFunction::indicator(10f64.powf(x));
            gamma_norm(q, &w2, &chi).unwrap() / gamma_norm(p, &w1, &chi).unwrap()
        };
        let grid = log_points(-6.0, 6.0, 240);
        let (k, _) = grid
            .iter()
            .map(|t| ratio(t.log10()))
            .enumerate()
            .fold((0, 0.0), |acc, (k, r)| if r > acc.1 { (k, r) } else { acc });
        let lo = grid[k.saturating_sub(1)].log10();
        let hi = grid[(k + 1).min(grid.len() - 1)].log10();
        let (_, best) = golden_max(ratio, lo, hi, 200);
        assert!((rep.constant.value - best).abs() <= 1e-9 * best, "{} vs {best}", rep.constant.value);
    }
}

#[test]
fn integral_form_embedding_is_finite_and_dominates_samples() {
    let unit = PiecewisePowerWeight::unit();
    let bump = PiecewisePowerWeight::from_breaks(INF, &[1.0], &[(1.0, 0.5), (1.0, -0.5)]).unwrap();
    let rep = embedding_norm_with(3.0, &unit, 2.0, &bump, &SearchOptions::default()).unwrap();
    assert_eq!(rep.constant.form, ConstantForm::Integral);
    let c = rep.constant.value;
    assert!(c.is_finite() && c > 0.0);
    let e = embedding_empirical_check(3.0, &unit, 2.0, &bump, 500, 9).unwrap();
    assert!(e.max_ratio > 0.0 && e.max_ratio <= 64.0 * c, "sampled {} vs {c}", e.max_ratio);
}

#[test]
fn hardy_and_stieltjes_envelopes_on_weighted_data() {
    let u = PiecewisePower::power(INF, 1.0, 0.25).unwrap();
    let v = PiecewisePower::power(INF, 1.0, 0.0).unwrap();
    let bp = hardy_p_constant(2.0, 4.0, &u, &v, INF).unwrap();
    let us = PiecewisePower::from_breaks(INF, &[1.0], &[(1.0, 0.0), (1.0, -0.5)]).unwrap();
    let vs = PiecewisePower::from_breaks(INF, &[1.0], &[(1.0, 0.0), (1.0, -0.5)]).unwrap();
    let ks = stieltjes_constant(2.0, 2.0, &us, &vs).unwrap();
    assert!(bp.is_finite() && ks.is_finite());
    let mut sampler = StepSampler::new(13);
    let (mut mp, mut ms): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let f = sampler.step();
        mp = mp.max(hardy_p_sides(2.0, 4.0, &u, &v, INF, &f).unwrap().ratio());
        ms = ms.max(stieltjes_sides(2.0, 2.0, &us, &vs, &f).unwrap().ratio());
    }
    assert!(mp <= 64.0 * bp && ms <= 64.0 * ks, "P {mp} vs {bp}, S {ms} vs {ks}");
    // Indicators come within the equivalence factor of the constant.
    assert!(mp >= bp / 64.0 && ms >= ks / 64.0);
}

#[test]
fn fundamental_function_identity() {
    // ρ(χ_(0,t)) ρ'(χ_(0,t)) = t, with ρ' from the associate norm oracle.
    let config = OracleConfig::default();
    for (p, w) in mixed_battery() {
        for t in [1e-2, 0.3, 1.0, 5.0, 1e2].into_iter().filter(|&t| t < w.b()) {
            let chi = StepFunction::indicator(t);
            let norm = GammaSpace::new(p, w.clone()).unwrap().fundamental(t).unwrap();
            let dual = associate_norm_oracle(p, &w, &chi, &config).unwrap().value;
            let delta = (norm * dual / t - 1.0).abs();
            assert!(delta <= 0.02, "p {p}, t {t}: delta {delta}");
        }
    }
}

#[test]
fn dual_norm_bounds_pairings() {
    // Hölder in the Köthe sense: ∫ f g ≤ ρ(f) ρ'(g) ≤ C ρ(f) ||g||_dual.
    let mut sampler = StepSampler::new(17);
    for (p, w) in mixed_battery() {
        for _ in 0..20 {
            let f = sampler.step().restrict(w.b());
            let g = sampler.decreasing().into_step();
            let pairing = f.inner(&g.restrict(w.b()));
            let bound = gamma_norm(p, &w, &f).unwrap() * dual_norm(p, &w, &g).unwrap();
            assert!(pairing <= 100.0 * bound, "p {p}: {pairing} > 100 * {bound}");
        }
    }
    let f = step(&[0.0, 1.0], &[1.0]);
    assert!(f.inner(&f) <= gamma_norm(2.0, &PiecewisePowerWeight::unit(), &f).unwrap() * 0.5f64.sqrt() + 1e-12);
}
