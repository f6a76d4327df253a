//! Unambiguous discrimination of two nonorthogonal qubit states via a
//! three-step walk.
//!
//! The problem: given one of the two equally probable states
//! {∣0⟩, α∣0⟩ + β∣1⟩}, identify it with zero error probability, accepting
//! an inconclusive outcome some of the time. The pair is encoded on the
//! coin as ∣ψ±⟩ = cos(φ/2)∣H⟩ ± sin(φ/2)∣V⟩ with cos φ = α, and the walk
//! routes the three measurement outcomes to three distinct positions:
//!
//! * x = +1 → the coin was ∣ψ+⟩ (the state ∣0⟩),
//! * x = −1 → the coin was ∣ψ−⟩ (the state α∣0⟩ + β∣1⟩),
//! * x = +3 → inconclusive.
//!
//! Only the input coin state and the coin angle at x = 1 in step 2 depend
//! on the pair being discriminated; the rest of the schedule is fixed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use serde::Serialize;

use crate::coin::{Protocol, StepSpec};
use crate::error::{Error, Result};
use crate::state::{CoinState, WalkState};

/// Which of the two encoded states ∣ψ±⟩ is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Problem parameters: the overlap α of the state pair, β = √(1−α²), and
/// the encoding angle φ = arccos α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UsdParams {
    alpha: f64,
    beta: f64,
    phi: f64,
}

impl UsdParams {
    /// From the overlap coefficient; requires 0 ≤ α < 1. α = 1 (identical
    /// states) is rejected: the schedule degenerates and discrimination is
    /// vacuous.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(UsdParams {
            alpha,
            beta: (1.0 - alpha * alpha).sqrt(),
            phi: alpha.acos(),
        })
    }

    /// From the encoding angle φ ∈ (0, π/2]; α = cos φ.
    ///
    /// Preferred when the problem is stated through φ, since it avoids
    /// rounding α first and recovering φ from the rounded value.
    pub fn from_phi(phi: f64) -> Result<Self> {
        if !phi.is_finite() || phi <= 0.0 || phi > FRAC_PI_2 {
            return Err(Error::PhiOutOfRange(phi));
        }
        let alpha = phi.cos().max(0.0);
        Ok(UsdParams {
            alpha,
            beta: phi.sin(),
            phi,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// ∣ψ±⟩ = cos(φ/2)∣H⟩ ± sin(φ/2)∣V⟩. The pair overlaps at
    /// ⟨ψ+∣ψ−⟩ = cos²(φ/2) − sin²(φ/2) = α.
    pub fn prepare_coin(&self, sign: Sign) -> CoinState {
        let (s, c) = (self.phi / 2.0).sin_cos();
        CoinState::from_real(c, sign.factor() * s)
    }

    /// Normalized a∣ψ+⟩ + b∣ψ−⟩ for real a, b.
    pub fn prepare_superposition(&self, a: f64, b: f64) -> Result<CoinState> {
        let norm_sqr = a * a + b * b + 2.0 * a * b * self.alpha;
        if norm_sqr <= 1e-12 {
            return Err(Error::DegenerateSuperposition { a, b });
        }
        let (s, c) = (self.phi / 2.0).sin_cos();
        let n = norm_sqr.sqrt();
        Ok(CoinState::from_real((a + b) * c / n, (a - b) * s / n))
    }

    /// Probability of a conclusive outcome: η = 2 sin²(φ/2) = 1 − α.
    pub fn success_probability(&self) -> f64 {
        1.0 - self.alpha
    }

    /// Build the three-step schedule for this parameter set.
    pub fn compile(&self) -> UsdProtocol {
        // θ₁,₂ = ½ arccos √(1 − tan²(φ/2)); the radicand underflows to a
        // tiny negative at φ = π/2, hence the clamps.
        let t = (self.phi / 2.0).tan();
        let radicand = (1.0 - t * t).max(0.0);
        let theta_1_2 = 0.5 * radicand.sqrt().min(1.0).acos();

        let angles = UsdAngles {
            theta_m1_2: FRAC_PI_4,
            theta_1_2,
            theta_0_3: FRAC_PI_8,
        };
        let steps = vec![
            StepSpec::new(),
            StepSpec::new()
                .with_angle(-1, angles.theta_m1_2)
                .with_angle(1, angles.theta_1_2),
            StepSpec::new().with_angle(0, angles.theta_0_3),
        ];
        UsdProtocol {
            params: *self,
            protocol: Protocol::new(steps).expect("three steps"),
            angles,
        }
    }
}

/// The wave-plate schedule of the compiled walk, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UsdAngles {
    /// Step 2, x = −1: fixed at π/4 (swap coin).
    pub theta_m1_2: f64,
    /// Step 2, x = +1: the only problem-dependent angle.
    pub theta_1_2: f64,
    /// Step 3, x = 0: fixed at π/8 (Hadamard coin).
    pub theta_0_3: f64,
}

/// A compiled three-step discrimination walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UsdProtocol {
    params: UsdParams,
    protocol: Protocol,
    angles: UsdAngles,
}

impl UsdProtocol {
    pub fn params(&self) -> &UsdParams {
        &self.params
    }

    pub fn protocol(&self) -> &Protocol {
        &self.protocol
    }

    pub fn angles(&self) -> &UsdAngles {
        &self.angles
    }

    /// Run the walker from ∣x=0⟩ ⊗ `coin0` through the three steps.
    pub fn run_walk(&self, coin0: &CoinState) -> Result<WalkState> {
        WalkState::localized(0, *coin0).run(&self.protocol)
    }

    /// Evolve `coin0` and classify the outcome probabilities.
    pub fn discriminate(&self, coin0: &CoinState) -> Result<Vec<Outcome>> {
        classify_outcomes(&self.run_walk(coin0)?)
    }
}

/// The three measurement outcomes of the discrimination walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    ConclusivePlus,
    ConclusiveMinus,
    Inconclusive,
}

impl OutcomeKind {
    pub const ALL: [OutcomeKind; 3] = [
        OutcomeKind::ConclusivePlus,
        OutcomeKind::ConclusiveMinus,
        OutcomeKind::Inconclusive,
    ];

    /// The walker position carrying this outcome.
    pub fn position(&self) -> i64 {
        match self {
            OutcomeKind::ConclusivePlus => 1,
            OutcomeKind::ConclusiveMinus => -1,
            OutcomeKind::Inconclusive => 3,
        }
    }

    /// Label in the ∣ψ±⟩ basis.
    pub fn psi_label(&self) -> &'static str {
        match self {
            OutcomeKind::ConclusivePlus => "psi_plus",
            OutcomeKind::ConclusiveMinus => "psi_minus",
            OutcomeKind::Inconclusive => "inconclusive",
        }
    }

    /// Label in the {∣0⟩, α∣0⟩+β∣1⟩} basis of the original problem.
    pub fn state_label(&self) -> &'static str {
        match self {
            OutcomeKind::ConclusivePlus => "|0>",
            OutcomeKind::ConclusiveMinus => "alpha|0> + beta|1>",
            OutcomeKind::Inconclusive => "no information",
        }
    }
}

/// One outcome with its probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outcome {
    pub kind: OutcomeKind,
    pub probability: f64,
}

/// Read the outcome probabilities off a final walk state.
///
/// The probabilities are taken by exact position match on {+1, −1, +3};
/// any weight elsewhere above 1e-9 signals a broken protocol and is
/// reported as [`Error::Leakage`] rather than silently renormalized.
pub fn classify_outcomes(state: &WalkState) -> Result<Vec<Outcome>> {
    let dist = state.position_distribution();
    let outcome_positions = [1, -1, 3];
    let leaked: f64 = dist
        .iter()
        .filter(|(x, _)| !outcome_positions.contains(x))
        .map(|(_, p)| p)
        .sum();
    if leaked > 1e-9 {
        return Err(Error::Leakage { leaked });
    }
    Ok(OutcomeKind::ALL
        .iter()
        .map(|&kind| Outcome {
            kind,
            probability: dist.get(&kind.position()).copied().unwrap_or(0.0),
        })
        .collect())
}
