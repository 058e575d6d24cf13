use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpacetimeError {
    #[error("patch {index}: {reason}")]
    InvalidPatch { index: usize, reason: String },
    #[error("spacetime has no patches")]
    Empty,
    #[error("innermost patch must start at r = 0, found r_min = {r_min}")]
    MissingCenter { r_min: f64 },
    #[error("innermost patch must be flat (mass 0) when shells are present, found mass {mass}")]
    NonzeroInnermostMass { mass: f64 },
    #[error("patches {inner} and {outer} do not meet: r_max = {r_max}, r_min = {r_min}")]
    Discontinuous {
        inner: usize,
        outer: usize,
        r_max: f64,
        r_min: f64,
    },
    #[error("only the outermost patch may be unbounded (patch {index})")]
    UnboundedInterior { index: usize },
    #[error("outermost patch must be unbounded")]
    BoundedExterior,
    #[error("shell {shell_index} at R = {radius} is at or inside the horizon 2μ = {horizon} of its outer patch")]
    HorizonViolation {
        shell_index: usize,
        radius: f64,
        horizon: f64,
    },
    #[error("patch index {index} out of range ({count} patches)")]
    PatchIndex { index: usize, count: usize },
    #[error("shell index {index} out of range ({count} shells)")]
    ShellIndex { index: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeodesicError {
    #[error("release radius {r} is at or inside the horizon 2μ = {horizon}")]
    ReleaseInsideHorizon { r: f64, horizon: f64 },
    #[error("radius {r} is at or inside the horizon 2μ = {horizon}")]
    Horizon { r: f64, horizon: f64 },
    #[error("geodesic is unbound in this patch (E = {energy})")]
    Unbound { energy: f64 },
    #[error("radius {r_exit} lies beyond the turning point {r_turn}")]
    Unreachable { r_exit: f64, r_turn: f64 },
    #[error("cannot move {direction} from r = {r_entry} to r = {r_exit} without turning")]
    WrongDirection {
        direction: &'static str,
        r_entry: f64,
        r_exit: f64,
    },
    #[error("particle is stationary (dr/dτ = 0) but asked to move from {r_entry} to {r_exit}")]
    Stationary { r_entry: f64, r_exit: f64 },
    #[error("parameter η = {eta} outside the valid domain [0, {limit})")]
    EtaDomain { eta: f64, limit: f64 },
    #[error("invalid cycloid parameters: {0}")]
    InvalidCycloid(String),
    #[error("radius {r} is outside patch {patch} ([{r_min}, {r_max}])")]
    OutsidePatch {
        r: f64,
        patch: usize,
        r_min: f64,
        r_max: f64,
    },
    #[error("state at r = {r} is not on shell {shell_index} (R = {radius})")]
    NotAtShell { r: f64, shell_index: usize, radius: f64 },
    #[error("spacetime has no gravitating patch: a particle released at rest never moves")]
    NoRestoringForce,
    #[error("static observers need r_b > r_a > 2M (got r_a = {r_a}, r_b = {r_b}, M = {mass})")]
    RadiusOrdering { r_a: f64, r_b: f64, mass: f64 },
    #[error("sample count must be positive")]
    SampleCount,
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error(transparent)]
    Spacetime(#[from] SpacetimeError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("geometry invalid at R1 = {r1}, f = {f}: {reason}")]
    Domain { r1: f64, f: f64, reason: String },
    #[error("no sign change of the proper-time ratio residual for f in [{f_lo}, {f_hi}] at R1 = {r1}")]
    NoContourBracket { r1: f64, f_lo: f64, f_hi: f64 },
    #[error("ratio {target} is not attainable; the scanned curve spans [{min}, {max}]")]
    Unattainable { target: f64, min: f64, max: f64 },
    #[error("root finder did not converge: {0}")]
    NotConverged(String),
    #[error("no meeting radius: {0}")]
    NoMeeting(String),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwitchError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("operator is empty or not square")]
    Shape,
    #[error("t_B = {t_b} must lie strictly between t_A1 = {t_a1} and t_A2 = {t_a2}")]
    Ordering { t_a1: f64, t_b: f64, t_a2: f64 },
    #[error("rejoin mismatch: q·Δt1 = {lhs}, p·Δt2 = {rhs}")]
    Rejoin { lhs: f64, rhs: f64 },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
}
