use std::ffi::{CStr, CString};
use std::ptr;

use shellswitch_ffi::*;

const M2: &str = r#"{"patches":[{"mass":0,"r_min":0,"r_max":4},{"mass":1.9999,"r_min":4,"r_max":10.072},{"mass":3,"r_min":10.072,"r_max":null}]}"#;
const SEARCH: &str = r#"{"m":1.9999,"M":3,"R2":4,"r_i":12,"p":9,"q":10}"#;

fn last_error() -> String {
    unsafe { CStr::from_ptr(shs_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn c(re: f64, im: f64) -> ShsComplex {
    ShsComplex { re, im }
}

#[test]
fn spacetime_handle_round_trip() {
    let json = CString::new(M2).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(shs_spacetime_from_json(json.as_ptr(), -1.0, &mut h), ShsStatus::Ok);
        assert!(!h.is_null());
        let mut n = 0usize;
        assert_eq!(shs_spacetime_shell_count(h, &mut n), ShsStatus::Ok);
        assert_eq!(n, 2);
        let mut lapse = 0.0;
        assert_eq!(shs_spacetime_lapse(h, 2, &mut lapse), ShsStatus::Ok);
        assert_eq!(lapse, 1.0);
        assert_eq!(shs_spacetime_lapse(h, 1, &mut lapse), ShsStatus::Ok);
        assert!((lapse - 1.2212).abs() < 1e-4);
        assert_eq!(shs_spacetime_lapse(h, 3, &mut lapse), ShsStatus::InvalidInput);
        assert!(last_error().contains("out of range"));

        let mut s = ShsStress::default();
        assert_eq!(shs_spacetime_stress(h, 1, &mut s), ShsStatus::Ok);
        assert!((s.rho - 1.111e-3).abs() < 1e-6);
        assert_eq!(s.p_radial, 0.0);

        let mut p = ShsPeriod::default();
        assert_eq!(shs_oscillation_period(h, 12.0, &mut p), ShsStatus::Ok);
        assert!(p.dt_global > p.dtau && p.dtau > 0.0);

        let mut dt = 0.0;
        assert_eq!(shs_null_crossing_time(h, 0.0, 12.0, &mut dt), ShsStatus::Ok);
        assert!(dt > 12.0);
        shs_spacetime_free(h);
    }
}

#[test]
fn invalid_spacetimes_report_status_and_message() {
    let bad =
        CString::new(r#"{"patches":[{"mass":0,"r_min":0,"r_max":5},{"mass":3,"r_min":5,"r_max":null}]}"#).unwrap();
    let broken = CString::new("{\"patches\": [").unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(shs_spacetime_from_json(bad.as_ptr(), -1.0, &mut h), ShsStatus::Invalid);
        assert!(h.is_null());
        assert!(last_error().contains("shell 0"));
        assert_eq!(
            shs_spacetime_from_json(broken.as_ptr(), -1.0, &mut h),
            ShsStatus::InvalidInput
        );
        assert_eq!(
            shs_spacetime_from_json(ptr::null(), -1.0, &mut h),
            ShsStatus::NullPointer
        );
        assert_eq!(
            shs_spacetime_shell_count(ptr::null(), ptr::null_mut()),
            ShsStatus::NullPointer
        );
        shs_spacetime_free(ptr::null_mut());
    }
}

#[test]
fn solve_and_switch() {
    let json = CString::new(SEARCH).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(
            shs_search_solve(json.as_ptr(), 2, &mut h),
            ShsStatus::Ok,
            "{}",
            last_error()
        );
        let mut d = ShsSolutionData::default();
        assert_eq!(shs_solution_get(h, &mut d), ShsStatus::Ok);
        assert!((d.r1 - 10.072).abs() < 0.01);
        assert!((d.f - 0.329464).abs() < 1e-3);
        assert_eq!((d.p, d.q), (9, 10));
        let mut m = ShsMeeting::default();
        assert_eq!(shs_solution_meeting(h, &mut m), ShsStatus::Ok);
        assert!((m.r_t - 11.9382).abs() < 1e-3);
        assert!(m.t_a1 < m.t_a2);

        let x = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let z = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];
        let psi = [c(1.0, 0.0), c(0.0, 0.0)];
        let mut state = [c(0.0, 0.0); 4];
        assert_eq!(
            shs_run_switch(h, 2, x.as_ptr(), z.as_ptr(), psi.as_ptr(), state.as_mut_ptr()),
            ShsStatus::Ok
        );
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(state, [c(0.0, 0.0), c(-s, 0.0), c(0.0, 0.0), c(s, 0.0)]);

        let mut target = [c(9.0, 9.0); 2];
        let mut prob = -1.0;
        assert_eq!(
            shs_measure_control_diagonal(2, state.as_ptr(), ShsSign::Minus as i32, target.as_mut_ptr(), &mut prob),
            ShsStatus::Ok
        );
        assert!((prob - 1.0).abs() < 1e-15);
        assert!((target[1].re.abs() - 1.0).abs() < 1e-15);
        assert_eq!(
            shs_measure_control_diagonal(2, state.as_ptr(), ShsSign::Plus as i32, target.as_mut_ptr(), &mut prob),
            ShsStatus::ImpossibleOutcome
        );
        assert_eq!(prob, 0.0);
        assert_eq!(
            shs_measure_control_diagonal(2, state.as_ptr(), 7, target.as_mut_ptr(), &mut prob),
            ShsStatus::InvalidInput
        );
        shs_solution_free(h);
    }
}

#[test]
fn unattainable_ratio_is_infeasible() {
    let json = CString::new(r#"{"m":1.9999,"M":3,"R2":4,"r_i":12,"p":10,"q":9,"grid":40}"#).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(shs_search_solve(json.as_ptr(), 1, &mut h), ShsStatus::Infeasible);
        assert!(h.is_null());
        assert!(last_error().contains("not attainable"));
    }
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/shellswitch.h")).unwrap();
    for name in [
        "shs_spacetime_from_json",
        "shs_spacetime_free",
        "shs_search_solve",
        "shs_run_switch",
        "shs_measure_control_diagonal",
        "shs_last_error",
        "SHS_STATUS_INFEASIBLE",
        "typedef struct ShsSpacetime ShsSpacetime;",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
