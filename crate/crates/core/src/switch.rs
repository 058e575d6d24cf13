//! Event schedule and state-vector evolution of the gravitational quantum
//! switch.
//!
//! The control is the geometry, with basis `|M1⟩, |M2⟩`, prepared in
//! `(|M1⟩ + |M2⟩)/√2`. Each geometry branch carries its own copy of the target
//! state, evolved by the operations that act in that branch in the order of
//! their global times.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::SwitchError;
use crate::geodesic::static_proper_time;
use crate::search::{MeetingEvent, SwitchSolution};

pub type C64 = Complex64;

/// Relative tolerance on `q·Δt¹ = p·Δt²`.
pub const REJOIN_TOLERANCE: f64 = 1e-8;
/// Tolerance on `U†U = 1` for the unitary flag.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense square operator on the target space, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    dim: usize,
    data: Vec<C64>,
    unitary: bool,
}

impl OperatorSpec {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self, SwitchError> {
        if dim == 0 {
            return Err(SwitchError::Shape);
        }
        if data.len() != dim * dim {
            return Err(SwitchError::Dimension {
                expected: dim * dim,
                found: data.len(),
            });
        }
        let mut op = Self {
            dim,
            data,
            unitary: false,
        };
        op.unitary = op.unitarity_defect() <= UNITARY_TOLERANCE;
        Ok(op)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, SwitchError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(SwitchError::Shape);
        }
        Self::new(dim, rows.concat())
    }

    /// Parses `[[ [re, im], … ], …]`.
    pub fn from_json(text: &str) -> Result<Self, OperatorParseError> {
        let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text).map_err(OperatorParseError::Json)?;
        let rows: Vec<Vec<C64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| C64::new(re, im)).collect())
            .collect();
        Self::from_rows(&rows).map_err(OperatorParseError::Shape)
    }

    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        self.data
            .chunks(self.dim)
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect()
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Self {
            dim,
            data,
            unitary: true,
        }
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]).unwrap()
    }

    /// Named preset: `I2`, `X`, `Y`, `Z`, `H`.
    pub fn preset(name: &str) -> Option<Self> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match name {
            "I" | "I2" => Some(Self::identity(2)),
            "X" => Some(Self::pauli_x()),
            "Y" => Some(Self::pauli_y()),
            "Z" => Some(Self::pauli_z()),
            "H" => Some(Self::from_rows(&[vec![h, h], vec![h, -h]]).unwrap()),
            _ => None,
        }
    }

    /// Haar-distributed unitary from a seeded generator: Gram–Schmidt on the
    /// columns of a complex Gaussian matrix.
    pub fn random_unitary(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_unitary_with(dim, &mut rng)
    }

    pub fn random_unitary_with<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut cols: Vec<Vec<C64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                    .collect()
            })
            .collect();
        for j in 0..dim {
            for k in 0..j {
                let proj = inner(&cols[k], &cols[j]);
                let (done, rest) = cols.split_at_mut(j);
                for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * y;
                }
            }
            let n = norm_sq(&cols[j]).sqrt();
            for x in cols[j].iter_mut() {
                *x /= n;
            }
        }
        let mut data = vec![ZERO; dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                data[i * dim + j] = *z;
            }
        }
        Self::new(dim, data).expect("square by construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    /// `max |(U†U − 1)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                if i == j {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>, SwitchError> {
        if v.len() != self.dim {
            return Err(SwitchError::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, SwitchError> {
        if rhs.dim != self.dim {
            return Err(SwitchError::Dimension {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let d = self.dim;
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                data[i * d + j] = (0..d).map(|k| self.entry(i, k) * rhs.entry(k, j)).sum();
            }
        }
        Self::new(d, data)
    }
}

#[derive(Debug)]
pub enum OperatorParseError {
    Json(serde_json::Error),
    Shape(SwitchError),
}

impl std::fmt::Display for OperatorParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorParseError::Json(e) => write!(f, "{e}"),
            OperatorParseError::Shape(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OperatorParseError {}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sq(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`; 1 when the states agree up to a global phase.
pub fn fidelity(a: &[C64], b: &[C64]) -> f64 {
    inner(a, b).norm_sqr() / (norm_sq(a) * norm_sq(b))
}

/// Computational basis vector `|k⟩` of dimension `dim`.
pub fn basis_state(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[k] = ONE;
    v
}

/// Random unit vector from a seeded generator.
pub fn random_state<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let n = norm_sq(&v).sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// Geometry branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    M1,
    M2,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::M1, Branch::M2];

    fn index(self) -> usize {
        match self {
            Branch::M1 => 0,
            Branch::M2 => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::M1 => "M1",
            Branch::M2 => "M2",
        }
    }
}

/// Joint control⊗target state `(|M1⟩⊗b₁ + |M2⟩⊗b₂)/√2`.
///
/// Keeping the branch vectors without the `1/√2` lets sums like `b₁ ± b₂`
/// cancel exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    branches: [Vec<C64>; 2],
}

impl JointState {
    /// Both branches holding `psi`.
    pub fn prepare(psi: &[C64]) -> Self {
        Self {
            branches: [psi.to_vec(), psi.to_vec()],
        }
    }

    pub fn from_branches(m1: Vec<C64>, m2: Vec<C64>) -> Result<Self, SwitchError> {
        if m1.len() != m2.len() {
            return Err(SwitchError::Dimension {
                expected: m1.len(),
                found: m2.len(),
            });
        }
        Ok(Self { branches: [m1, m2] })
    }

    pub fn dim(&self) -> usize {
        self.branches[0].len()
    }

    /// Target vector in branch `b`, without the `1/√2` amplitude.
    pub fn branch(&self, b: Branch) -> &[C64] {
        &self.branches[b.index()]
    }

    /// Amplitudes in the basis `|M1⟩|0⟩, …, |M1⟩|d−1⟩, |M2⟩|0⟩, …`.
    pub fn to_vector(&self) -> Vec<C64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.branches
            .iter()
            .flat_map(|b| b.iter().map(move |z| z * s))
            .collect()
    }

    pub fn norm(&self) -> f64 {
        (0.5 * (norm_sq(&self.branches[0]) + norm_sq(&self.branches[1]))).sqrt()
    }

    /// Schmidt rank across the control/target split (1 or 2; 0 for the zero
    /// vector). Rank 2 means the branches are not parallel to within
    /// `1 − |⟨b₁|b₂⟩|²/(‖b₁‖²‖b₂‖²) > tol`.
    pub fn schmidt_rank(&self, tol: f64) -> usize {
        let [a, b] = &self.branches;
        let (na, nb) = (norm_sq(a), norm_sq(b));
        if na == 0.0 && nb == 0.0 {
            return 0;
        }
        if na == 0.0 || nb == 0.0 {
            return 1;
        }
        if 1.0 - fidelity(a, b) > tol {
            2
        } else {
            1
        }
    }

    /// Relabels `M1 ↔ M2`.
    pub fn swapped(&self) -> Self {
        Self {
            branches: [self.branches[1].clone(), self.branches[0].clone()],
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let enc = |v: &[C64]| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        serde_json::json!({
            "M1": enc(&self.branches[0].iter().map(|z| z * s).collect::<Vec<_>>()),
            "M2": enc(&self.branches[1].iter().map(|z| z * s).collect::<Vec<_>>()),
        })
    }
}

/// Outcome of projecting the control onto `|±⟩ = (|M1⟩ ± |M2⟩)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOutcome {
    pub sign: Sign,
    pub probability: f64,
    /// Normalized post-measurement target state; empty when the outcome has
    /// probability zero.
    pub target: Vec<C64>,
    pub impossible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Probability `‖b₁ ± b₂‖²/4` and target `(b₁ ± b₂)/‖b₁ ± b₂‖`.
pub fn measure_control_diagonal(joint: &JointState, sign: Sign) -> DiagonalOutcome {
    let [a, b] = &joint.branches;
    let combined: Vec<C64> = match sign {
        Sign::Plus => a.iter().zip(b).map(|(x, y)| x + y).collect(),
        Sign::Minus => a.iter().zip(b).map(|(x, y)| x - y).collect(),
    };
    let n2 = norm_sq(&combined);
    let total = norm_sq(a) + norm_sq(b);
    let probability = if total > 0.0 { n2 / (2.0 * total) } else { 0.0 };
    if n2 == 0.0 {
        return DiagonalOutcome {
            sign,
            probability: 0.0,
            target: Vec::new(),
            impossible: true,
        };
    }
    let n = n2.sqrt();
    DiagonalOutcome {
        sign,
        probability,
        target: combined.into_iter().map(|z| z / n).collect(),
        impossible: false,
    }
}

/// Where `t_B` goes inside `(t_A¹, t_A²)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TbPolicy {
    #[default]
    Midpoint,
    /// `t_A¹ + x·(t_A² − t_A¹)`.
    Fraction(f64),
    Absolute(f64),
}

/// Global times of the operational events.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventSchedule {
    pub tau_a: f64,
    pub t_a1: f64,
    pub t_a2: f64,
    pub t_b: f64,
    /// Proper time of a static clock at `r_t` at global time `t_B`.
    pub tau_b: f64,
    pub t_f: f64,
    pub r_t: f64,
    pub far_side: bool,
}

/// Builds the schedule and checks `t_A¹ < t_B < t_A²` and the rejoin
/// identity.
pub fn schedule(
    solution: &SwitchSolution,
    meeting: &MeetingEvent,
    policy: TbPolicy,
) -> Result<EventSchedule, SwitchError> {
    let (t_a1, t_a2) = (meeting.t_a1, meeting.t_a2);
    let t_b = match policy {
        TbPolicy::Midpoint => 0.5 * (t_a1 + t_a2),
        TbPolicy::Fraction(x) => t_a1 + x * (t_a2 - t_a1),
        TbPolicy::Absolute(t) => t,
    };
    if !(t_a1 < t_b && t_b < t_a2) {
        return Err(SwitchError::Ordering { t_a1, t_b, t_a2 });
    }
    let lhs = solution.q as f64 * solution.dt1;
    let rhs = solution.p as f64 * solution.dt2;
    if !((lhs - rhs).abs() <= REJOIN_TOLERANCE * lhs) {
        return Err(SwitchError::Rejoin { lhs, rhs });
    }
    let tau_b =
        static_proper_time(solution.big_m, meeting.r_t, t_b).map_err(|_| SwitchError::Ordering { t_a1, t_b, t_a2 })?;
    Ok(EventSchedule {
        tau_a: meeting.tau_a,
        t_a1,
        t_a2,
        t_b,
        tau_b,
        t_f: lhs,
        r_t: meeting.r_t,
        far_side: meeting.side == "far",
    })
}

/// One operation slot controlled by the geometry: possibly a different
/// operator and a different global time in each branch. `None` leaves that
/// branch untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledSlot {
    pub label: String,
    pub ops: [Option<OperatorSpec>; 2],
    pub times: [f64; 2],
}

impl ControlledSlot {
    /// Same operator in both branches.
    pub fn uniform(label: &str, op: &OperatorSpec, t_m1: f64, t_m2: f64) -> Self {
        Self {
            label: label.into(),
            ops: [Some(op.clone()), Some(op.clone())],
            times: [t_m1, t_m2],
        }
    }

    pub fn only(label: &str, branch: Branch, op: &OperatorSpec, t: f64) -> Self {
        let mut ops = [None, None];
        ops[branch.index()] = Some(op.clone());
        Self {
            label: label.into(),
            ops,
            times: [t, t],
        }
    }
}

/// Operations applied in a branch, in application order.
pub fn branch_order(slots: &[ControlledSlot], branch: Branch) -> Vec<(f64, &ControlledSlot)> {
    let k = branch.index();
    let mut order: Vec<(f64, &ControlledSlot)> = slots
        .iter()
        .filter(|s| s.ops[k].is_some())
        .map(|s| (s.times[k], s))
        .collect();
    // Stable: equal times keep slot order.
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    order
}

/// Applies every slot in each branch in ascending global time.
pub fn run_general_protocol(slots: &[ControlledSlot], psi: &[C64]) -> Result<JointState, SwitchError> {
    let mut state = JointState::prepare(psi);
    for branch in Branch::BOTH {
        let k = branch.index();
        for (_, slot) in branch_order(slots, branch) {
            let op = slot.ops[k].as_ref().expect("filtered");
            state.branches[k] = op.apply(&state.branches[k])?;
        }
    }
    Ok(state)
}

/// `A` at `t_A¹` in M1 and `t_A²` in M2, `B` at `t_B` in both.
pub fn switch_slots(a: &OperatorSpec, b: &OperatorSpec, schedule: &EventSchedule) -> Vec<ControlledSlot> {
    vec![
        ControlledSlot::uniform("A", a, schedule.t_a1, schedule.t_a2),
        ControlledSlot::uniform("B", b, schedule.t_b, schedule.t_b),
    ]
}

/// Like [`switch_slots`], but agent A applies `c` in M1 and `d` in M2.
pub fn lambda_controlled_slots(
    c: &OperatorSpec,
    d: &OperatorSpec,
    b: &OperatorSpec,
    schedule: &EventSchedule,
) -> Vec<ControlledSlot> {
    vec![
        ControlledSlot {
            label: "A".into(),
            ops: [Some(c.clone()), Some(d.clone())],
            times: [schedule.t_a1, schedule.t_a2],
        },
        ControlledSlot::uniform("B", b, schedule.t_b, schedule.t_b),
    ]
}

/// Three-layer circuit with `|0⟩ ↔ M1`: `d` on M2 first, then `b` on both,
/// then `c` on M1, giving `(CB|ψ⟩|M1⟩ + BD|ψ⟩|M2⟩)/√2`. Layers sit at times
/// 1, 2, 3.
pub fn qsg_circuit(c: &OperatorSpec, b: &OperatorSpec, d: &OperatorSpec) -> Vec<ControlledSlot> {
    vec![
        ControlledSlot::only("A(λ2)", Branch::M2, d, 1.0),
        ControlledSlot::uniform("B", b, 2.0, 2.0),
        ControlledSlot::only("A(λ1)", Branch::M1, c, 3.0),
    ]
}

/// Tabletop pattern with each operation applied at two times `t1 < t2`: B then
/// A on M1, A then B on M2.
pub fn qs_circuit_opt(a: &OperatorSpec, b: &OperatorSpec, t1: f64, t2: f64) -> Vec<ControlledSlot> {
    vec![
        ControlledSlot::only("B", Branch::M1, b, t1),
        ControlledSlot::only("A", Branch::M2, a, t1),
        ControlledSlot::only("B", Branch::M2, b, t2),
        ControlledSlot::only("A", Branch::M1, a, t2),
    ]
}

/// `(|M1⟩⊗BA|ψ⟩ + |M2⟩⊗AB|ψ⟩)/√2` with the per-branch order read from the
/// schedule.
pub fn run_switch(
    a: &OperatorSpec,
    b: &OperatorSpec,
    psi: &[C64],
    schedule: &EventSchedule,
) -> Result<JointState, SwitchError> {
    if a.dim() != b.dim() {
        return Err(SwitchError::Dimension {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = norm_sq(psi).sqrt();
    if (n - 1.0).abs() > 1e-12 {
        return Err(SwitchError::NotNormalized(n));
    }
    run_general_protocol(&switch_slots(a, b, schedule), psi)
}

/// One line per branch, e.g. `M1: A@t=1404.2 -> B@t=1478.6`.
pub fn order_summary(slots: &[ControlledSlot]) -> String {
    let mut out = String::new();
    for branch in Branch::BOTH {
        let steps: Vec<String> = branch_order(slots, branch)
            .iter()
            .map(|(t, s)| format!("{}@t={}", s.label, t))
            .collect();
        let _ = writeln!(out, "{}: {}", branch.name(), steps.join(" -> "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched() -> EventSchedule {
        EventSchedule {
            tau_a: 1.0,
            t_a1: 1.0,
            t_a2: 3.0,
            t_b: 2.0,
            tau_b: 2.0,
            t_f: 10.0,
            r_t: 11.0,
            far_side: true,
        }
    }

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn pauli_switch() {
        let psi = basis_state(2, 0);
        let j = run_switch(&OperatorSpec::pauli_x(), &OperatorSpec::pauli_z(), &psi, &sched()).unwrap();
        assert_eq!(j.branch(Branch::M1), &[ZERO, -ONE]);
        assert_eq!(j.branch(Branch::M2), &[ZERO, ONE]);
        let minus = measure_control_diagonal(&j, Sign::Minus);
        let plus = measure_control_diagonal(&j, Sign::Plus);
        assert_eq!(minus.probability, 1.0);
        assert_eq!(plus.probability, 0.0);
        assert!(plus.impossible);
        assert_eq!(minus.target, vec![ZERO, -ONE]);
        // ZX|0⟩ and XZ|0⟩ are parallel: the output is a product state even
        // though the operations do not commute on |0⟩.
        assert_eq!(j.schmidt_rank(1e-12), 1);
        let h = OperatorSpec::preset("H").unwrap();
        let k = run_switch(&h, &OperatorSpec::pauli_z(), &psi, &sched()).unwrap();
        assert_eq!(k.schmidt_rank(1e-12), 2);
    }

    #[test]
    fn commuting_operations_factor_out() {
        let a = OperatorSpec::random_unitary(3, 7);
        let psi = random_state(3, &mut ChaCha8Rng::seed_from_u64(1));
        let j = run_switch(&a, &a, &psi, &sched()).unwrap();
        let aa = a.compose(&a).unwrap().apply(&psi).unwrap();
        assert!(close(j.branch(Branch::M1), &aa, 1e-14));
        assert!(close(j.branch(Branch::M2), &aa, 1e-14));
        assert_eq!(j.schmidt_rank(1e-12), 1);
        let plus = measure_control_diagonal(&j, Sign::Plus);
        assert!((plus.probability - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_unitary_is_unitary_and_seeded() {
        for d in 1..6 {
            let u = OperatorSpec::random_unitary(d, 42);
            assert!(u.unitarity_defect() < 1e-13);
            assert!(u.is_unitary());
            assert_eq!(u, OperatorSpec::random_unitary(d, 42));
        }
    }

    #[test]
    fn lambda_controlled_reduces_to_switch() {
        let a = OperatorSpec::random_unitary(2, 3);
        let b = OperatorSpec::random_unitary(2, 4);
        let psi = basis_state(2, 1);
        let s = sched();
        let lam = run_general_protocol(&lambda_controlled_slots(&a, &a, &b, &s), &psi).unwrap();
        assert_eq!(lam, run_switch(&a, &b, &psi, &s).unwrap());
    }

    #[test]
    fn broken_switch_pattern() {
        let (x, y, z) = (
            OperatorSpec::pauli_x(),
            OperatorSpec::pauli_y(),
            OperatorSpec::pauli_z(),
        );
        let j = run_general_protocol(&qsg_circuit(&x, &z, &y), &basis_state(2, 0)).unwrap();
        assert_eq!(j.branch(Branch::M1), &[ZERO, ONE]);
        assert_eq!(j.branch(Branch::M2), &[ZERO, -I]);
    }

    #[test]
    fn literal_circuit_with_equal_operations_is_relabelled_switch() {
        let a = OperatorSpec::random_unitary(2, 10);
        let b = OperatorSpec::random_unitary(2, 11);
        let psi = basis_state(2, 0);
        let lit = run_general_protocol(&qsg_circuit(&a, &b, &a), &psi).unwrap();
        let sw = run_switch(&a, &b, &psi, &sched()).unwrap();
        assert_eq!(lit.swapped(), sw);
    }

    #[test]
    fn tabletop_circuit_matches_switch_up_to_labels() {
        let a = OperatorSpec::random_unitary(3, 20);
        let b = OperatorSpec::random_unitary(3, 21);
        let psi = basis_state(3, 2);
        let opt = run_general_protocol(&qs_circuit_opt(&a, &b, 1.0, 2.0), &psi).unwrap();
        let sw = run_switch(&a, &b, &psi, &sched()).unwrap();
        assert_eq!(opt.swapped(), sw);
    }

    #[test]
    fn order_follows_schedule() {
        let s = sched();
        let slots = switch_slots(&OperatorSpec::pauli_x(), &OperatorSpec::pauli_z(), &s);
        let summary = order_summary(&slots);
        assert_eq!(summary, "M1: A@t=1 -> B@t=2\nM2: B@t=2 -> A@t=3\n");
    }

    #[test]
    fn dimension_mismatch() {
        let s = sched();
        let err = run_switch(
            &OperatorSpec::identity(3),
            &OperatorSpec::pauli_x(),
            &basis_state(3, 0),
            &s,
        );
        assert!(matches!(err, Err(SwitchError::Dimension { .. })));
        let err = run_switch(
            &OperatorSpec::pauli_x(),
            &OperatorSpec::pauli_z(),
            &basis_state(3, 0),
            &s,
        );
        assert!(matches!(err, Err(SwitchError::Dimension { .. })));
    }

    #[test]
    fn operator_json_round_trip() {
        let y = OperatorSpec::pauli_y();
        let text = serde_json::to_string(&y.to_rows()).unwrap();
        assert_eq!(OperatorSpec::from_json(&text).unwrap(), y);
        assert!(OperatorSpec::from_json("[[[1,0],[0,0]]]").is_err());
        let nonunitary = OperatorSpec::from_json("[[[2,0]]]").unwrap();
        assert!(!nonunitary.is_unitary());
    }

    #[test]
    fn schedule_checks() {
        let sol = SwitchSolution {
            m: 1.9999,
            big_m: 3.0,
            r2: 4.0,
            r_i: 12.0,
            p: 9,
            q: 10,
            r1: 10.0,
            f: 0.3,
            r: 6.1,
            dt1: 9.0,
            dtau1: 1.0,
            dt2: 10.0,
            dtau2: 1.0,
            ratio: 0.9,
            proper_residual: 0.0,
            ratio_residual: 0.0,
            t_f: 90.0,
        };
        let meet = MeetingEvent {
            r_t: 11.0,
            tau_a: 5.0,
            t_a1: 10.0,
            t_a2: 20.0,
            gamma1_direction: "inbound",
            gamma2_direction: "outbound",
            side: "far",
            tau_mismatch: 0.0,
            excursion_ordered: true,
        };
        let s = schedule(&sol, &meet, TbPolicy::Midpoint).unwrap();
        assert_eq!(s.t_b, 15.0);
        assert!((s.tau_b - (5.0f64 / 11.0).sqrt() * 15.0).abs() < 1e-12);
        assert_eq!(s.t_f, 90.0);
        assert!(matches!(
            schedule(&sol, &meet, TbPolicy::Absolute(10.0)),
            Err(SwitchError::Ordering { .. })
        ));
        let bad = SwitchSolution { dt2: 10.1, ..sol };
        assert!(matches!(
            schedule(&bad, &meet, TbPolicy::Midpoint),
            Err(SwitchError::Rejoin { .. })
        ));
    }
}
