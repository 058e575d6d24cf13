//! Concentric static patches glued along thin shells.
//!
//! Patch `k` carries the Schwarzschild metric of mass `μ_k` (Minkowski when
//! `μ_k = 0`) on `r_min ≤ r ≤ r_max`, written in its own coordinate time
//! `t_k`. Continuity of the induced metric on shell `j` fixes the ratio of the
//! time coordinates on either side; chaining these ratios outward gives the
//! lapse `Λ_k` with `t = Λ_k · t_k`, where `t` is the exterior (outermost
//! patch) coordinate time.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::SpacetimeError;
use crate::numeric::metric_factor;

/// Default relative distance a shell must keep from its outer horizon.
pub const DEFAULT_HORIZON_MARGIN: f64 = 1e-9;

/// One static patch. `r_max = None` marks the unbounded outermost patch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatchSpec {
    pub mass: f64,
    pub r_min: f64,
    pub r_max: Option<f64>,
}

impl PatchSpec {
    pub fn new(mass: f64, r_min: f64, r_max: Option<f64>) -> Self {
        Self { mass, r_min, r_max }
    }

    pub fn bounded(mass: f64, r_min: f64, r_max: f64) -> Self {
        Self::new(mass, r_min, Some(r_max))
    }

    pub fn unbounded(mass: f64, r_min: f64) -> Self {
        Self::new(mass, r_min, None)
    }

    pub fn is_flat(&self) -> bool {
        self.mass == 0.0
    }

    pub fn horizon(&self) -> f64 {
        2.0 * self.mass
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.r_min && self.r_max.is_none_or(|max| r <= max)
    }

    fn check(&self, index: usize) -> Result<(), SpacetimeError> {
        let invalid = |reason: String| SpacetimeError::InvalidPatch { index, reason };
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(invalid(format!("mass must be finite and ≥ 0, got {}", self.mass)));
        }
        if !(self.r_min.is_finite() && self.r_min >= 0.0) {
            return Err(invalid(format!("r_min must be finite and ≥ 0, got {}", self.r_min)));
        }
        if let Some(max) = self.r_max {
            if !(max.is_finite() && max > self.r_min) {
                return Err(invalid(format!(
                    "r_max must be finite and greater than r_min = {}, got {max}",
                    self.r_min
                )));
            }
        }
        Ok(())
    }
}

/// Non-fatal findings attached to a built spacetime.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Outer mass below inner mass: the shell has negative surface energy.
    NegativeSurfaceDensity { shell_index: usize, radius: f64, rho: f64 },
}

/// Validated glued spacetime. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellSpacetime {
    patches: Vec<PatchSpec>,
    shells: Vec<f64>,
    lapses: Vec<f64>,
    diagnostics: Vec<Diagnostic>,
}

/// Parses `{ "patches": [ { "mass", "r_min", "r_max" } ] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeConfig {
    pub patches: Vec<PatchSpec>,
}

impl SpacetimeConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn build(&self) -> Result<ShellSpacetime, SpacetimeError> {
        build_spacetime(self.patches.clone())
    }

    pub fn build_with_margin(&self, margin: f64) -> Result<ShellSpacetime, SpacetimeError> {
        build_spacetime_with_margin(self.patches.clone(), margin)
    }
}

pub fn build_spacetime(patches: Vec<PatchSpec>) -> Result<ShellSpacetime, SpacetimeError> {
    build_spacetime_with_margin(patches, DEFAULT_HORIZON_MARGIN)
}

/// Builds a spacetime, rejecting any shell with `R_j − 2μ_out ≤ margin · R_j`.
pub fn build_spacetime_with_margin(patches: Vec<PatchSpec>, margin: f64) -> Result<ShellSpacetime, SpacetimeError> {
    let first = patches.first().ok_or(SpacetimeError::Empty)?;
    for (i, p) in patches.iter().enumerate() {
        p.check(i)?;
    }
    if first.r_min != 0.0 {
        return Err(SpacetimeError::MissingCenter { r_min: first.r_min });
    }
    if patches.len() > 1 && !first.is_flat() {
        return Err(SpacetimeError::NonzeroInnermostMass { mass: first.mass });
    }
    let last = patches.len() - 1;
    if patches[last].r_max.is_some() {
        return Err(SpacetimeError::BoundedExterior);
    }

    let mut shells = Vec::with_capacity(last);
    for j in 0..last {
        let inner = &patches[j];
        let outer = &patches[j + 1];
        let r_max = inner.r_max.ok_or(SpacetimeError::UnboundedInterior { index: j })?;
        let r_min = outer.r_min;
        if (r_max - r_min).abs() > 1e-12 * r_max.max(r_min) {
            return Err(SpacetimeError::Discontinuous {
                inner: j,
                outer: j + 1,
                r_max,
                r_min,
            });
        }
        let radius = r_min;
        if radius - outer.horizon() <= margin * radius || radius - inner.horizon() <= 0.0 {
            return Err(SpacetimeError::HorizonViolation {
                shell_index: j,
                radius,
                horizon: outer.horizon().max(inner.horizon()),
            });
        }
        shells.push(radius);
    }

    let mut lapses = vec![1.0; patches.len()];
    for j in (0..last).rev() {
        lapses[j] = lapses[j + 1] * shell_time_factor(patches[j].mass, patches[j + 1].mass, shells[j]);
    }

    let mut spacetime = ShellSpacetime {
        patches,
        shells,
        lapses,
        diagnostics: Vec::new(),
    };
    for j in 0..spacetime.shells.len() {
        let stress = spacetime.shell_stress(j)?;
        if stress.rho < 0.0 {
            spacetime.diagnostics.push(Diagnostic::NegativeSurfaceDensity {
                shell_index: j,
                radius: stress.shell_radius,
                rho: stress.rho,
            });
        }
    }
    Ok(spacetime)
}

/// `t_out / t_in` across a shell: `√((1 − 2μ_in/R)/(1 − 2μ_out/R))`.
fn shell_time_factor(inner_mass: f64, outer_mass: f64, radius: f64) -> f64 {
    (metric_factor(inner_mass, radius) / metric_factor(outer_mass, radius)).sqrt()
}

impl ShellSpacetime {
    /// Flat core of radius `shell_radius` inside a Schwarzschild exterior of mass
    /// `mass`.
    pub fn one_shell(mass: f64, shell_radius: f64) -> Result<Self, SpacetimeError> {
        build_spacetime(vec![
            PatchSpec::bounded(0.0, 0.0, shell_radius),
            PatchSpec::unbounded(mass, shell_radius),
        ])
    }

    /// Flat core inside `inner_radius`, mass `inner_mass` between the shells,
    /// mass `outer_mass` outside `outer_radius`.
    pub fn two_shell(
        outer_mass: f64,
        inner_mass: f64,
        outer_radius: f64,
        inner_radius: f64,
    ) -> Result<Self, SpacetimeError> {
        build_spacetime(vec![
            PatchSpec::bounded(0.0, 0.0, inner_radius),
            PatchSpec::bounded(inner_mass, inner_radius, outer_radius),
            PatchSpec::unbounded(outer_mass, outer_radius),
        ])
    }

    pub fn patches(&self) -> &[PatchSpec] {
        &self.patches
    }

    pub fn patch(&self, index: usize) -> Result<&PatchSpec, SpacetimeError> {
        self.patches.get(index).ok_or(SpacetimeError::PatchIndex {
            index,
            count: self.patches.len(),
        })
    }

    pub fn shells(&self) -> &[f64] {
        &self.shells
    }

    pub fn shell_radius(&self, index: usize) -> Result<f64, SpacetimeError> {
        self.shells.get(index).copied().ok_or(SpacetimeError::ShellIndex {
            index,
            count: self.shells.len(),
        })
    }

    pub fn lapses(&self) -> &[f64] {
        &self.lapses
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn exterior_index(&self) -> usize {
        self.patches.len() - 1
    }

    pub fn exterior_mass(&self) -> f64 {
        self.patches[self.exterior_index()].mass
    }

    /// Radius of the outermost shell, or 0 for a single patch.
    pub fn outer_shell_radius(&self) -> f64 {
        self.shells.last().copied().unwrap_or(0.0)
    }

    /// Index of the patch containing `r`; a radius on a shell belongs to the
    /// outer patch.
    pub fn patch_index_at(&self, r: f64) -> usize {
        self.shells.iter().take_while(|&&s| r >= s).count()
    }

    /// `Λ_k` with global `t = Λ_k · t_k`.
    pub fn lapse_factor(&self, patch_index: usize) -> Result<f64, SpacetimeError> {
        self.lapses.get(patch_index).copied().ok_or(SpacetimeError::PatchIndex {
            index: patch_index,
            count: self.patches.len(),
        })
    }

    /// Replaces one lapse factor without re-deriving it. Only useful for
    /// checking that a broken time identification is caught by
    /// [`ShellSpacetime::induced_metric_gap`].
    pub fn with_lapse_override(mut self, patch_index: usize, lapse: f64) -> Result<Self, SpacetimeError> {
        let count = self.lapses.len();
        let slot = self.lapses.get_mut(patch_index).ok_or(SpacetimeError::PatchIndex {
            index: patch_index,
            count,
        })?;
        *slot = lapse;
        Ok(self)
    }

    /// Largest componentwise difference between the metrics induced on shell
    /// `shell_index` from either side, in coordinates `(t, θ, φ)` with `t` the
    /// global time, at θ = π/2.
    pub fn induced_metric_gap(&self, shell_index: usize) -> Result<f64, SpacetimeError> {
        let radius = self.shell_radius(shell_index)?;
        let side = |k: usize| {
            let lapse = self.lapses[k];
            let h_tt = -metric_factor(self.patches[k].mass, radius) / (lapse * lapse);
            let theta = PI / 2.0;
            [h_tt, radius * radius, radius * radius * theta.sin().powi(2)]
        };
        let inner = side(shell_index);
        let outer = side(shell_index + 1);
        Ok(inner
            .iter()
            .zip(outer.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Surface stress-energy of shell `shell_index`.
    pub fn shell_stress(&self, shell_index: usize) -> Result<SurfaceStress, SpacetimeError> {
        let radius = self.shell_radius(shell_index)?;
        surface_stress(
            self.patches[shell_index].mass,
            self.patches[shell_index + 1].mass,
            radius,
        )
        .map_err(|_| SpacetimeError::HorizonViolation {
            shell_index,
            radius,
            horizon: 2.0 * self.patches[shell_index + 1].mass,
        })
    }
}

/// Thin-shell stress-energy, reported as the coefficients multiplying δ(ℓ).
///
/// Tensor components are covariant, in coordinates `(t, θ, φ)` on the shell,
/// where `t` is the outer patch's time and the angles are evaluated at θ = π/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceStress {
    pub shell_radius: f64,
    pub inner_mass: f64,
    pub outer_mass: f64,
    /// `[K_tt], [K_θθ], [K_φφ]` (outer minus inner).
    pub k_jump: [f64; 3],
    /// `S_tt, S_θθ, S_φφ`.
    pub s: [f64; 3],
    pub rho: f64,
    pub p_tangential: f64,
    pub p_radial: f64,
}

/// Stress of a shell at `radius` between patches of mass `inner_mass` (inside)
/// and `outer_mass` (outside).
///
/// Fails when `radius` is at or inside either horizon.
pub fn surface_stress(inner_mass: f64, outer_mass: f64, radius: f64) -> Result<SurfaceStress, SpacetimeError> {
    let f_in = metric_factor(inner_mass, radius);
    let f_out = metric_factor(outer_mass, radius);
    if !(f_in > 0.0 && f_out > 0.0) {
        return Err(SpacetimeError::HorizonViolation {
            shell_index: 0,
            radius,
            horizon: 2.0 * outer_mass.max(inner_mass),
        });
    }
    let sq_in = f_in.sqrt();
    let sq_out = f_out.sqrt();
    let r2 = radius * radius;

    // Static-patch extrinsic curvature for outward normal, in the outer time:
    // K_tt = −(μ/R²)·√f_side·(f_out/f_side), K_θθ = R·√f_side.
    let k_tt_out = -(outer_mass / r2) * sq_out;
    let k_tt_in = -(inner_mass / r2) * sq_out * (sq_out / sq_in);
    let k_ang_out = radius * sq_out;
    let k_ang_in = radius * sq_in;
    let jump_tt = k_tt_out - k_tt_in;
    let jump_ang = k_ang_out - k_ang_in;
    let k_jump = [jump_tt, jump_ang, jump_ang];

    let h = [-f_out, r2, r2];
    let trace = jump_tt / h[0] + 2.0 * jump_ang / r2;
    let s = [0, 1, 2].map(|i| -(k_jump[i] - trace * h[i]) / (8.0 * PI));

    // ρ = S_tt / f_out and P = S_θθ / R², written without the cancelling
    // trace so that large-R shells keep their digits.
    let rho = (sq_in - sq_out) / (4.0 * PI * radius);
    let p_tangential = ((radius - outer_mass) / sq_out - (radius - inner_mass) / sq_in) / (8.0 * PI * r2);

    Ok(SurfaceStress {
        shell_radius: radius,
        inner_mass,
        outer_mass,
        k_jump,
        s,
        rho,
        p_tangential,
        p_radial: 0.0,
    })
}
