mod common;

use std::sync::Arc;

use common::*;
use deltaop::kernel::AdaptiveQuadrature;
use deltaop::operator::{apply_delta, apply_delta_taylor, exp_delta_decomposed, exp_delta_series};
use deltaop::semigroup::{
    decay_profile, evolve_cauchy, exp_integral_adaptive, exp_shifted, max_admissible_time, solve_cauchy, InitialData,
    Profile,
};
use deltaop::verify::{coefficient_ode_oracle, laguerre_class_check, random_p_plus, CLASS_TOL};
use deltaop::{Error, Series};
use num_complex::Complex64;

#[test]
fn three_routes_agree_on_the_grid() {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    for &theta in &THETAS {
        let quad = AdaptiveQuadrature::new(theta).unwrap();
        for &omega in &OMEGAS {
            for &a in &TIMES {
                let f = random_poly(&mut r);
                let dec = exp_delta_decomposed(&f, theta, omega, a);
                let ser = exp_delta_series(&f, theta, omega, a);
                assert!(ser.converged);
                for z in sector_points(&mut r, 20) {
                    let d = dec.eval(z);
                    let i = exp_integral_adaptive(|x| f.eval(c(x)), omega, a, &quad, z).unwrap().value;
                    worst = worst.max(rel(ser.value.eval(z), d)).max(rel(i, d));
                }
            }
        }
    }
    assert!(worst < 1e-7, "worst relative disagreement {worst:e}");
}

#[test]
fn semigroup_property_in_time() {
    let g = p(&[0.5, -1.0, 0.25, 1.0, 0.3]);
    let data = InitialData::poly(0.0, g.clone()).unwrap();
    for &theta in &THETAS {
        for &omega in &OMEGAS {
            let (t1, t2) = (0.3, 0.45);
            let mid = exp_delta_decomposed(&g, theta, omega, t1);
            let zs = [c(0.7), Complex64::new(-1.0, 2.0)];
            let direct = solve_cauchy(&data, theta, omega, t1 + t2, &zs, None).unwrap();
            let stepped = solve_cauchy(&InitialData::poly(0.0, mid).unwrap(), theta, omega, t2, &zs, None).unwrap();
            for (a, b) in direct.iter().zip(&stepped) {
                assert!(rel(*b, *a) < 1e-8);
            }
        }
    }
}

#[test]
fn pde_residual_of_polynomial_solutions() {
    let g = p(&[1.0, 2.0, -0.5, 0.1]);
    for &theta in &THETAS {
        for &omega in &OMEGAS {
            let (t, z) = (0.6, Complex64::new(0.8, -0.4));
            let sol = |t: f64| exp_delta_decomposed(&g, theta, omega, t);
            let rhs = apply_delta(&sol(t), theta, omega).eval(z);
            let e1 = (time_derivative(|s| sol(s).eval(z), t, 1e-3) - rhs).norm() / rhs.norm();
            let e2 = (time_derivative(|s| sol(s).eval(z), t, 5e-4) - rhs).norm() / rhs.norm();
            assert!(e1 < 1e-4 && e2 < 1e-4);
            // second-order differences: halving δ divides the error by about four
            if e1 > 1e-11 {
                assert!((e1 / e2 - 4.0).abs() < 0.5, "ratio {}", e1 / e2);
            }
        }
    }
}

#[test]
fn pde_residual_with_exponential_decay() {
    let data = InitialData::poly(0.8, p(&[1.0, -1.0, 0.5])).unwrap();
    let (theta, omega, t) = (1.5, 0.4, 0.5);
    let z = c(1.2);
    let at = |s: f64| solve_cauchy(&data, theta, omega, s, &[z], None).unwrap()[0];
    let taylor = evolve_cauchy(&data, theta, omega, t).unwrap().taylor(80);
    let rhs = apply_delta_taylor(&taylor, theta, omega).eval(z);
    let err = (time_derivative(at, t, 1e-3) - rhs).norm() / rhs.norm();
    assert!(err < 1e-4, "{err:e}");
}

#[test]
fn coefficient_ode_matches_closed_form() {
    let mut r = rng(5);
    for &theta in &THETAS {
        for &omega in &OMEGAS {
            for &t in &TIMES {
                let g = random_poly(&mut r);
                let exact = exp_delta_decomposed(&g, theta, omega, t);
                let ode = coefficient_ode_oracle(&g, theta, omega, t, 2000).unwrap();
                assert!(ode.max_coeff_diff(&exact) <= 1e-7 * exact.max_abs_coeff());
            }
        }
    }
}

#[test]
fn shift_formula_matches_direct_integral() {
    let g = p(&[1.0, 0.5, -0.2]);
    for &(u, theta, omega, a) in &[(-1.0, 1.0, 0.0, 0.5), (-0.5, 2.5, 0.7, 0.3), (0.3, 0.5, -0.5, 0.8)] {
        let closed = exp_shifted(&g, u, theta, omega, a).unwrap();
        let quad = AdaptiveQuadrature::new(theta).unwrap();
        for &z in &[c(0.5), Complex64::new(1.0, 0.5), c(2.0)] {
            let direct = exp_integral_adaptive(|x| (u * x).exp() * g.eval(c(x)), omega, a, &quad, z).unwrap().value;
            assert!(rel(direct, closed.eval(z)) < 1e-7, "u={u} z={z}");
        }
    }
}

#[test]
fn exponential_symbol_keeps_laguerre_class_for_any_drift() {
    let mut r = rng(23);
    for &omega in &[-1.0, -0.3, 0.3, 1.0] {
        for &theta in &THETAS {
            for _ in 0..20 {
                let g = random_p_plus(&mut r, 6);
                let out = exp_delta_decomposed(&g, theta, omega, 0.7);
                assert!(laguerre_class_check(&out, CLASS_TOL).in_class);
            }
        }
    }
}

#[test]
fn evaluable_data_use_the_kernel_route() {
    // h = e^{0.3z}, available only pointwise
    let h: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(|z: Complex64| (0.3 * z).exp());
    let data = InitialData::new(1.0, Profile::Function(h)).unwrap();
    let (theta, omega, t) = (1.0, 0.0, 1.0);
    // e^{−0.7z} under exp(tΔ_1): (1+0.7t)^{−1}exp(−0.7z/(1+0.7t))
    let zs = [c(0.5), c(2.0)];
    let out = solve_cauchy(&data, theta, omega, t, &zs, None).unwrap();
    for (z, v) in zs.iter().zip(out) {
        let expect = (-0.7 * z / 1.7).exp() / 1.7;
        assert!(rel(v, expect) < 1e-8);
    }
}

#[test]
fn series_data_respect_the_admissible_time() {
    let h = Series::exponential(c(1.0), 0.5, 60).with_bound(0.5);
    let data = InitialData::new(0.2, Profile::Series(h)).unwrap();
    let limit = max_admissible_time(0.2, 0.5, 0.0);
    assert!((limit - 1.0 / 0.3).abs() < 1e-12);
    assert!(evolve_cauchy(&data, 1.0, 0.0, 0.9 * limit).is_ok());
    assert!(matches!(evolve_cauchy(&data, 1.0, 0.0, 1.1 * limit), Err(Error::AdmissibleTime { .. })));
}

#[test]
fn decay_profile_example() {
    let data = InitialData::poly(1.0, p(&[1.0])).unwrap();
    let prof = decay_profile(&data, 1.0, 0.0, &[1.0, 10.0, 100.0], 2.0).unwrap();
    assert!(prof.decay_claim_applies && prof.strictly_decreasing());
    assert!(prof.norms[2] <= 0.05 * prof.norms[0]);
    let neg = decay_profile(&InitialData::poly(1.0, p(&[1.0])).unwrap(), 2.0, -0.5, &[1.0, 10.0, 100.0], 2.0).unwrap();
    assert!(neg.strictly_decreasing(), "{:?}", neg.norms);
}
