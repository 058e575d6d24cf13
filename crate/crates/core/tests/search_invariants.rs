use proptest::prelude::*;
use shellswitch::search::{
    find_meeting_radius, period_pair, period_ratio_curve, solve_switch_configuration, SearchConfig,
};
use shellswitch::switch::{schedule, TbPolicy};
use shellswitch::SearchError;

fn with_ratio(p: u64, q: u64) -> SearchConfig {
    SearchConfig {
        p,
        q,
        ..SearchConfig::reference()
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let config = SearchConfig::reference();
    let one = solve_switch_configuration(&config, 1).unwrap();
    for jobs in [2, 3, 8] {
        let many = solve_switch_configuration(&config, jobs).unwrap();
        assert_eq!(one.curve, many.curve);
        assert_eq!(one.solution, many.solution);
    }
}

#[test]
fn curve_points_sit_on_the_equal_rate_contour() {
    let config = SearchConfig::reference();
    let curve = period_ratio_curve(&config, 0).unwrap();
    // Grid points where the M2 drop is unbound are dropped.
    assert!(curve.len() > 100);
    for w in curve.windows(2) {
        assert!(w[1].r1 > w[0].r1);
    }
    for point in curve.iter().step_by(17) {
        let pair = period_pair(point.r1, point.f, &config).unwrap();
        assert!(pair.proper_residual().abs() < 1e-10, "residual at R1 = {}", point.r1);
        assert_eq!(pair.period_ratio(), point.ratio);
    }
}

#[test]
fn reference_solution_meets_and_schedules() {
    let config = SearchConfig::reference();
    let solution = solve_switch_configuration(&config, 0).unwrap().solution;
    solution.verify(1e-10).unwrap();
    let meeting = find_meeting_radius(&solution, &config).unwrap();
    assert!(meeting.tau_mismatch.abs() < 1e-8);
    assert!(meeting.t_a1 < meeting.t_a2);
    let sched = schedule(&solution, &meeting, TbPolicy::Midpoint).unwrap();
    assert!(sched.t_a1 < sched.t_b && sched.t_b < sched.t_a2);
    assert!((10.0 * solution.dt1 - 9.0 * solution.dt2).abs() / sched.t_f < 1e-8);
    assert!(schedule(&solution, &meeting, TbPolicy::Absolute(meeting.t_a1)).is_err());
    assert!(schedule(&solution, &meeting, TbPolicy::Fraction(1.0)).is_err());
}

#[test]
fn unreachable_ratio_reports_the_attainable_range() {
    match solve_switch_configuration(&with_ratio(10, 9), 0) {
        Err(SearchError::Unattainable { min, max, .. }) => {
            assert!(min < max && max < 1.0);
        }
        other => panic!("expected an unattainable ratio, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn scaled_ratio_gives_the_same_solution(k in 2u64..50) {
        let base = solve_switch_configuration(&with_ratio(9, 10), 1).unwrap().solution;
        let scaled = solve_switch_configuration(&with_ratio(9 * k, 10 * k), 1).unwrap().solution;
        prop_assert_eq!(scaled.r1, base.r1);
        prop_assert_eq!(scaled.f, base.f);
        prop_assert_eq!((scaled.p, scaled.q), (9, 10));
    }

    #[test]
    fn attainable_ratios_are_solved_within_tolerance(p in 76u64..=93) {
        let config = with_ratio(p, 100);
        let solution = solve_switch_configuration(&config, 0).unwrap().solution;
        prop_assert!(solution.proper_residual.abs() < config.tol);
        prop_assert!(solution.ratio_residual.abs() < config.tol);
    }
}
