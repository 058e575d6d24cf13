use proptest::prelude::*;
use shellswitch::spacetime::surface_stress;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn large_radius_density_is_the_mass_jump(
        mu_out in 0.1f64..10.0,
        frac in 0.0f64..0.99,
        x in 50.0f64..1e6,
    ) {
        let mu_in = frac * mu_out;
        let r = x * mu_out;
        let s = surface_stress(mu_in, mu_out, r).unwrap();
        let jump = mu_out - mu_in;
        let rel = (s.rho * 4.0 * PI * r * r - jump).abs() / jump;
        prop_assert!(rel <= 2.0 * mu_out / r, "relative error {} at R/μ = {}", rel, x);
        prop_assert!(s.rho > 0.0);
    }

    #[test]
    fn tangential_pressure_fades_at_large_radius(mu_out in 0.1f64..10.0, frac in 0.0f64..0.99) {
        let mu_in = frac * mu_out;
        let near = surface_stress(mu_in, mu_out, 1e3 * mu_out).unwrap();
        let far = surface_stress(mu_in, mu_out, 1e6 * mu_out).unwrap();
        prop_assert!(far.p_tangential.abs() < near.p_tangential.abs());
        // P ~ (μ_out − μ_in)²/(R²) up to constants; times 8πR it still vanishes.
        prop_assert!(far.p_tangential.abs() * 8.0 * PI * 1e6 * mu_out < 1e-3);
    }

    #[test]
    fn tangential_pressure_diverges_at_the_outer_horizon(mu_out in 0.1f64..10.0, frac in 0.0f64..0.9) {
        let mu_in = frac * mu_out;
        let horizon = 2.0 * mu_out;
        let mut last = f64::NEG_INFINITY;
        let mut first = 0.0;
        for k in 1..=12 {
            let r = horizon * (1.0 + 10f64.powi(-k));
            let p = surface_stress(mu_in, mu_out, r).unwrap().p_tangential;
            prop_assert!(p > last, "P not increasing toward the horizon at R = {}", r);
            if k == 2 {
                first = p;
            }
            last = p;
        }
        prop_assert!(last / first > 1e4);
    }
}

#[test]
fn equal_masses_carry_no_stress() {
    let s = surface_stress(2.0, 2.0, 9.0).unwrap();
    assert_eq!(s.rho, 0.0);
    assert_eq!(s.p_tangential, 0.0);
}

#[test]
fn shell_inside_a_horizon_is_rejected() {
    assert!(surface_stress(0.0, 3.0, 6.0).is_err());
    assert!(surface_stress(0.0, 3.0, 5.0).is_err());
}
