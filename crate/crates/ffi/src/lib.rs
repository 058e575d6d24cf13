//! C ABI over `shellswitch`.
//!
//! Every function returns a [`ShsStatus`]; results go through out-pointers.
//! On failure, [`shs_last_error`] returns a message for the calling thread.
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shellswitch::error::{GeodesicError, SearchError, SpacetimeError, SwitchError};
use shellswitch::geodesic::{null_crossing_time, Orbit};
use shellswitch::search::{
    find_meeting_radius, solve_switch_configuration, MeetingEvent, SearchConfig, SwitchSolution,
};
use shellswitch::spacetime::{ShellSpacetime, SpacetimeConfig};
use shellswitch::switch::{
    measure_control_diagonal, run_switch, schedule, JointState, OperatorSpec, Sign, TbPolicy, C64,
};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShsStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed input: bad JSON, UTF-8, dimensions or indices.
    InvalidInput = 2,
    /// Input parsed but describes an invalid spacetime or motion.
    Invalid = 3,
    /// The search has no solution.
    Infeasible = 4,
    /// Zero-probability measurement outcome.
    ImpossibleOutcome = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShsComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShsSign {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShsStress {
    pub shell_radius: f64,
    pub inner_mass: f64,
    pub outer_mass: f64,
    /// Jump of the extrinsic curvature, `(t, θ, φ)` components.
    pub k_jump: [f64; 3],
    pub s: [f64; 3],
    pub rho: f64,
    pub p_tangential: f64,
    pub p_radial: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShsPeriod {
    pub dt_global: f64,
    pub dtau: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShsSolutionData {
    pub r1: f64,
    pub f: f64,
    pub r: f64,
    pub dt1: f64,
    pub dtau1: f64,
    pub dt2: f64,
    pub dtau2: f64,
    pub ratio: f64,
    pub proper_residual: f64,
    pub ratio_residual: f64,
    pub t_f: f64,
    pub p: u64,
    pub q: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShsMeeting {
    pub r_t: f64,
    pub tau_a: f64,
    pub t_a1: f64,
    pub t_a2: f64,
    pub tau_mismatch: f64,
    pub excursion_ordered: bool,
}

/// Opaque spacetime handle.
pub struct ShsSpacetime(ShellSpacetime);

/// Opaque handle to a solved switch configuration and its meeting event.
pub struct ShsSolution {
    solution: SwitchSolution,
    meeting: MeetingEvent,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(ShsStatus, String);

impl From<SpacetimeError> for Fail {
    fn from(e: SpacetimeError) -> Self {
        let status = match e {
            SpacetimeError::PatchIndex { .. } | SpacetimeError::ShellIndex { .. } => ShsStatus::InvalidInput,
            _ => ShsStatus::Invalid,
        };
        Fail(status, e.to_string())
    }
}

impl From<GeodesicError> for Fail {
    fn from(e: GeodesicError) -> Self {
        Fail(ShsStatus::Invalid, e.to_string())
    }
}

impl From<SearchError> for Fail {
    fn from(e: SearchError) -> Self {
        let status = match e {
            SearchError::Config(_) => ShsStatus::InvalidInput,
            _ => ShsStatus::Infeasible,
        };
        Fail(status, e.to_string())
    }
}

impl From<SwitchError> for Fail {
    fn from(e: SwitchError) -> Self {
        let status = match e {
            SwitchError::Ordering { .. } | SwitchError::Rejoin { .. } => ShsStatus::Invalid,
            _ => ShsStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ShsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ShsStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ShsStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(ShsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(ShsStatus::InvalidInput, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn complex_slice(p: *const ShsComplex, len: usize, what: &str) -> Result<Vec<C64>, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len)
        .iter()
        .map(|z| C64::new(z.re, z.im))
        .collect())
}

unsafe fn write_complex(p: *mut ShsComplex, values: &[C64], what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    let dst = std::slice::from_raw_parts_mut(p, values.len());
    for (d, z) in dst.iter_mut().zip(values) {
        *d = ShsComplex { re: z.re, im: z.im };
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn shs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a spacetime from `{"patches": [...]}` JSON. `margin` is the
/// relative horizon margin for shells (negative selects the default).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shs_spacetime_from_json(
    json: *const c_char,
    margin: f64,
    out_handle: *mut *mut ShsSpacetime,
) -> ShsStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        *slot = ptr::null_mut();
        let text = read_str(json, "json")?;
        let config = SpacetimeConfig::from_json(text).map_err(|e| Fail(ShsStatus::InvalidInput, e.to_string()))?;
        let st = if margin < 0.0 {
            config.build()?
        } else {
            config.build_with_margin(margin)?
        };
        *slot = Box::into_raw(Box::new(ShsSpacetime(st)));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`shs_spacetime_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn shs_spacetime_free(handle: *mut ShsSpacetime) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_spacetime_shell_count(handle: *const ShsSpacetime, count: *mut usize) -> ShsStatus {
    guard(|| {
        let st = deref(handle, "handle")?;
        *out(count, "count")? = st.0.shells().len();
        Ok(())
    })
}

/// Lapse factor of patch `index` (global time = lapse × local time).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_spacetime_lapse(handle: *const ShsSpacetime, index: usize, lapse: *mut f64) -> ShsStatus {
    guard(|| {
        let st = deref(handle, "handle")?;
        *out(lapse, "lapse")? = st.0.lapse_factor(index)?;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_spacetime_stress(
    handle: *const ShsSpacetime,
    shell_index: usize,
    stress: *mut ShsStress,
) -> ShsStatus {
    guard(|| {
        let st = deref(handle, "handle")?;
        let s = st.0.shell_stress(shell_index)?;
        *out(stress, "stress")? = ShsStress {
            shell_radius: s.shell_radius,
            inner_mass: s.inner_mass,
            outer_mass: s.outer_mass,
            k_jump: s.k_jump,
            s: s.s,
            rho: s.rho,
            p_tangential: s.p_tangential,
            p_radial: s.p_radial,
        };
        Ok(())
    })
}

/// Period of a particle dropped from rest at `release_radius`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_oscillation_period(
    handle: *const ShsSpacetime,
    release_radius: f64,
    period: *mut ShsPeriod,
) -> ShsStatus {
    guard(|| {
        let st = deref(handle, "handle")?;
        let p = Orbit::new(&st.0, release_radius)?.period();
        *out(period, "period")? = ShsPeriod {
            dt_global: p.dt_global,
            dtau: p.dtau,
        };
        Ok(())
    })
}

/// Global time for a radial light ray between `r_a` and `r_b`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_null_crossing_time(
    handle: *const ShsSpacetime,
    r_a: f64,
    r_b: f64,
    dt: *mut f64,
) -> ShsStatus {
    guard(|| {
        let st = deref(handle, "handle")?;
        *out(dt, "dt")? = null_crossing_time(&st.0, r_a, r_b)?;
        Ok(())
    })
}

/// Solves the switch geometry for a search config (JSON) and locates the
/// meeting radius. `jobs` sizes the worker pool (0: all cores).
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out_handle` writable.
#[no_mangle]
pub unsafe extern "C" fn shs_search_solve(
    config_json: *const c_char,
    jobs: usize,
    out_handle: *mut *mut ShsSolution,
) -> ShsStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        *slot = ptr::null_mut();
        let text = read_str(config_json, "config_json")?;
        let config = SearchConfig::from_json(text).map_err(|e| Fail(ShsStatus::InvalidInput, e.to_string()))?;
        let solution = solve_switch_configuration(&config, jobs)?.solution;
        let meeting = find_meeting_radius(&solution, &config)?;
        *slot = Box::into_raw(Box::new(ShsSolution { solution, meeting }));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`shs_search_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn shs_solution_free(handle: *mut ShsSolution) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_solution_get(handle: *const ShsSolution, data: *mut ShsSolutionData) -> ShsStatus {
    guard(|| {
        let s = &deref(handle, "handle")?.solution;
        *out(data, "data")? = ShsSolutionData {
            r1: s.r1,
            f: s.f,
            r: s.r,
            dt1: s.dt1,
            dtau1: s.dtau1,
            dt2: s.dt2,
            dtau2: s.dtau2,
            ratio: s.ratio,
            proper_residual: s.proper_residual,
            ratio_residual: s.ratio_residual,
            t_f: s.t_f,
            p: s.p,
            q: s.q,
        };
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn shs_solution_meeting(handle: *const ShsSolution, meeting: *mut ShsMeeting) -> ShsStatus {
    guard(|| {
        let m = &deref(handle, "handle")?.meeting;
        *out(meeting, "meeting")? = ShsMeeting {
            r_t: m.r_t,
            tau_a: m.tau_a,
            t_a1: m.t_a1,
            t_a2: m.t_a2,
            tau_mismatch: m.tau_mismatch,
            excursion_ordered: m.excursion_ordered,
        };
        Ok(())
    })
}

/// Runs the switch on a solved configuration with `t_B` at the midpoint of
/// `(t_A1, t_A2)`. `a` and `b` are row-major `dim × dim` matrices, `psi` has
/// `dim` entries. Writes `2·dim` amplitudes to `state`: the `M1` block, then
/// the `M2` block.
///
/// # Safety
/// All arrays must have the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn shs_run_switch(
    handle: *const ShsSolution,
    dim: usize,
    a: *const ShsComplex,
    b: *const ShsComplex,
    psi: *const ShsComplex,
    state: *mut ShsComplex,
) -> ShsStatus {
    guard(|| {
        let h = deref(handle, "handle")?;
        if dim == 0 {
            return Err(Fail(ShsStatus::InvalidInput, "dimension must be positive".into()));
        }
        let a = OperatorSpec::new(dim, complex_slice(a, dim * dim, "a")?)?;
        let b = OperatorSpec::new(dim, complex_slice(b, dim * dim, "b")?)?;
        let psi = complex_slice(psi, dim, "psi")?;
        let sched = schedule(&h.solution, &h.meeting, TbPolicy::Midpoint)?;
        let joint = run_switch(&a, &b, &psi, &sched)?;
        write_complex(state, &joint.to_vector(), "state")
    })
}

/// Projects the control of a joint state (`2·dim` amplitudes, as written by
/// [`shs_run_switch`]) onto `|±⟩`. Writes the normalized target (`dim`
/// entries) and the probability. `sign` is a [`ShsSign`] value. A zero-probability outcome returns
/// `IMPOSSIBLE_OUTCOME` with probability 0 and the target left untouched.
///
/// # Safety
/// Arrays must have the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn shs_measure_control_diagonal(
    dim: usize,
    state: *const ShsComplex,
    sign: i32,
    target: *mut ShsComplex,
    probability: *mut f64,
) -> ShsStatus {
    guard(|| {
        if dim == 0 {
            return Err(Fail(ShsStatus::InvalidInput, "dimension must be positive".into()));
        }
        let v = complex_slice(state, 2 * dim, "state")?;
        let prob = out(probability, "probability")?;
        let root2 = std::f64::consts::SQRT_2;
        let joint = JointState::from_branches(
            v[..dim].iter().map(|z| z * root2).collect(),
            v[dim..].iter().map(|z| z * root2).collect(),
        )?;
        let sign = match sign {
            s if s == ShsSign::Plus as i32 => Sign::Plus,
            s if s == ShsSign::Minus as i32 => Sign::Minus,
            other => {
                return Err(Fail(
                    ShsStatus::InvalidInput,
                    format!("sign must be 0 (+) or 1 (-), got {other}"),
                ))
            }
        };
        let m = measure_control_diagonal(&joint, sign);
        *prob = m.probability;
        if m.impossible {
            return Err(Fail(
                ShsStatus::ImpossibleOutcome,
                "outcome has probability zero".into(),
            ));
        }
        write_complex(target, &m.target, "target")
    })
}
