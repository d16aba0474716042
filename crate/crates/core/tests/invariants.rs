//! Property-based invariants of rearrangements, operators and norms.

mod common;

use common::INF;
use gammaspace::operators::Evaluable;
use gammaspace::quadrature::Quadrature;
use gammaspace::*;
use proptest::prelude::*;

fn step_fn() -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((0.01f64..3.0, prop_oneof![1 => Just(0.0), 4 => 0.05f64..10.0]), 1..6).prop_map(|pieces| {
        let mut breaks = vec![0.0];
        let mut values = Vec::new();
        for (width, value) in pieces {
            breaks.push(breaks.last().unwrap() + width);
            values.push(value);
        }
        StepFunction::new(breaks, values).unwrap()
    })
}

/// `φ = t^α` on `(0, 1)` and `c t^β` beyond, non-trivial for `p`.
fn weight(p: f64) -> impl Strategy<Value = PiecewisePowerWeight> {
    (-0.9..p - 1.05, -0.9..p - 1.05, 0.2f64..5.0).prop_map(|(a, b, c)| {
        PiecewisePowerWeight::from_breaks(INF, &[1.0], &[(1.0, a), (c, b)]).unwrap()
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rearrangement_is_equimeasurable(f in step_fn(), lam in 0.0f64..10.0) {
        let fstar = f.rearrange();
        prop_assert!(fstar.as_step().is_nonincreasing());
        prop_assert!(close(f.distribution(lam), fstar.as_step().distribution(lam), 1e-12));
        prop_assert!(close(f.integral(), fstar.as_step().integral(), 1e-12));
    }

    #[test]
    fn double_star_is_subadditive(f in step_fn(), g in step_fn(), t in 1e-3f64..20.0) {
        let sum = f.add(&g);
        prop_assert!(sum.double_star(t) <= (f.double_star(t) + g.double_star(t)) * (1.0 + 1e-12));
    }

    #[test]
    fn stieltjes_sandwich(f in step_fn(), t in 1e-3f64..100.0) {
        let (a, b) = (hardy_p(&f).eval(t), hardy_q(&f, INF).eval(t));
        let s = stieltjes(&f, t);
        let eps = 1e-12 * (a + b);
        prop_assert!(0.5 * (a + b) <= s + eps && s <= a + b + eps);
    }

    #[test]
    fn bracket_identity(p in 1.2f64..4.0, w in weight(4.0), t in 1e-4f64..1e4) {
        let flags = validate_nontrivial(&w, p);
        prop_assume!(flags.nontrivial);
        prop_assert!(close(t * p_q_p_phi(&w, p, t).unwrap(), phi_bracket(&w, p, t).unwrap(), 1e-9));
    }

    #[test]
    fn q_is_adjoint_of_p(f in step_fn(), g in step_fn()) {
        // ∫ (Pf) g against ∫ f (Qg), the latter by adaptive quadrature per piece of f.
        let left = hardy_p(&f).inner(&g);
        let qg = hardy_q(&g, INF);
        let quad = Quadrature::with_tol(1e-11);
        let mut right = 0.0;
        for (lo, hi, v) in f.pieces() {
            if v > 0.0 {
                let mut cuts: Vec<f64> = g.breaks().iter().copied().filter(|&x| x > lo && x < hi).collect();
                cuts.insert(0, lo);
                cuts.push(hi);
                for w in cuts.windows(2) {
                    let q = |t: f64| qg.eval(t);
                    right += v * if w[0] == 0.0 {
                        quad.integrate_from_zero(&q, w[1], Some(0.0)).unwrap()
                    } else {
                        quad.integrate(&q, w[0], w[1]).unwrap()
                    };
                }
            }
        }
        prop_assert!(close(left, right, 1e-7), "{left} vs {right}");
    }

    #[test]
    fn gamma_norm_is_a_lattice_norm(w in weight(2.0), f in step_fn(), g in step_fn(), c in 0.1f64..10.0) {
        let p = 2.0;
        let n = |h: &StepFunction| gamma_norm(p, &w, h).unwrap();
        prop_assert!(n(&f.add(&g)) <= (n(&f) + n(&g)) * (1.0 + 1e-9));
        prop_assert!(n(&f) <= n(&f.add(&g)) * (1.0 + 1e-9));
        prop_assert!(close(n(&f.scale(c)), c * n(&f), 1e-9));
        prop_assert!(close(n(&f), n(&f.rearrange().into_step()), 1e-9));
    }

    #[test]
    fn dilation_norm_is_submultiplicative(p in 1.3f64..4.0, w in weight(1.3), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let (s, t) = (10f64.powf(s), 10f64.powf(t));
        let h = |x: f64| dilation_norm(p, &w, x).unwrap();
        prop_assert!(h(s * t) <= h(s) * h(t) * 1.01);
        prop_assert!(close(h(1.0), 1.0, 1e-9));
    }

    #[test]
    fn dual_weight_commutes_with_dilation(p in 1.3f64..4.0, w in weight(1.3), lambda in -2.0f64..2.0, t in -3.0f64..3.0) {
        // The dual weight of φ(λ·) is ψ(λ·).
        let (lambda, t) = (10f64.powf(lambda), 10f64.powf(t));
        let a = dual_weight(p, &w).unwrap();
        let b = dual_weight(p, &w.dilate(lambda)).unwrap();
        prop_assert!(close(b.value(t / lambda), a.value(t), 1e-9));
    }
}
