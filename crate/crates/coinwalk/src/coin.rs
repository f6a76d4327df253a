//! Coin operations, per-step coin layouts, and walk protocols.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::math::Mat2;
use crate::state::UNITARITY_TOL;

// Slack on the closed angle interval so that 45° entered in degrees and
// converted to radians always passes.
const ANGLE_SLACK: f64 = 1e-12;

/// A unitary acting on the coin qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoinOp {
    m: Mat2,
}

impl CoinOp {
    /// The coin matrix for half-wave-plate angle θ:
    ///
    /// ```text
    /// [ cos 2θ   sin 2θ ]
    /// [ sin 2θ  −cos 2θ ]
    /// ```
    ///
    /// Real, symmetric, involutory, determinant −1. Any finite θ is
    /// accepted here; the [0, π/4] domain is enforced when a [`StepSpec`]
    /// is validated.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = (2.0 * theta).sin_cos();
        CoinOp {
            m: Mat2::from_real([[c, s], [s, -c]]),
        }
    }

    pub const fn identity() -> Self {
        CoinOp { m: Mat2::identity() }
    }

    /// Wrap an arbitrary matrix, rejecting it unless unitary to 1e-10.
    ///
    /// `x` only labels the error message with the position the coin was
    /// destined for.
    pub fn from_matrix(m: Mat2, x: i64) -> Result<Self> {
        let deviation = m.unitarity_deviation();
        if deviation > UNITARITY_TOL {
            return Err(Error::NonUnitaryCoin { x, deviation });
        }
        Ok(CoinOp { m })
    }

    /// Skip the unitarity check; validation happens again at apply time.
    #[cfg(test)]
    pub(crate) fn unchecked(m: Mat2) -> Self {
        CoinOp { m }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        CoinOp { m: self.m.adjoint() }
    }
}

/// What happens to the coin at one position during one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CoinAction {
    /// Half-wave-plate coin at angle θ (radians), θ ∈ [0, π/4].
    Angle(f64),
    /// Leave the coin untouched (the default for unlisted positions).
    Identity,
    /// An arbitrary unitary coin.
    Custom(CoinOp),
}

/// The coin layout of a single walk step: a map position → action.
///
/// Positions without an entry get the identity, so an empty spec is the
/// all-identity step.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StepSpec {
    coins: BTreeMap<i64, CoinAction>,
}

impl StepSpec {
    pub fn new() -> Self {
        StepSpec::default()
    }

    pub fn with_angle(mut self, x: i64, theta: f64) -> Self {
        self.coins.insert(x, CoinAction::Angle(theta));
        self
    }

    pub fn with_identity(mut self, x: i64) -> Self {
        self.coins.insert(x, CoinAction::Identity);
        self
    }

    pub fn with_custom(mut self, x: i64, op: CoinOp) -> Self {
        self.coins.insert(x, CoinAction::Custom(op));
        self
    }

    pub fn set(&mut self, x: i64, action: CoinAction) {
        self.coins.insert(x, action);
    }

    pub fn coins(&self) -> &BTreeMap<i64, CoinAction> {
        &self.coins
    }

    pub fn is_empty(&self) -> bool {
        self.coins.is_empty()
    }

    /// Check the angle domain and custom-coin unitarity.
    pub fn validate(&self) -> Result<()> {
        for (&x, action) in &self.coins {
            match action {
                CoinAction::Angle(theta) => {
                    if !theta.is_finite() || *theta < 0.0 || *theta > FRAC_PI_4 + ANGLE_SLACK {
                        return Err(Error::AngleOutOfRange { x, theta: *theta });
                    }
                }
                CoinAction::Custom(op) => {
                    // Re-check: a CoinOp may have been built from a matrix
                    // that was mutated via serde or constructed directly.
                    let deviation = op.matrix().unitarity_deviation();
                    if deviation > UNITARITY_TOL {
                        return Err(Error::NonUnitaryCoin { x, deviation });
                    }
                }
                CoinAction::Identity => {}
            }
        }
        Ok(())
    }

    /// Resolve the action at `x` into a concrete coin operator.
    pub fn coin_at(&self, x: i64) -> CoinOp {
        match self.coins.get(&x) {
            Some(CoinAction::Angle(theta)) => CoinOp::from_angle(*theta),
            Some(CoinAction::Custom(op)) => *op,
            Some(CoinAction::Identity) | None => CoinOp::identity(),
        }
    }
}

/// An ordered list of steps; the whole walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Protocol {
    steps: Vec<StepSpec>,
}

impl Protocol {
    pub fn new(steps: Vec<StepSpec>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyProtocol);
        }
        Ok(Protocol { steps })
    }

    pub fn steps(&self) -> &[StepSpec] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.steps.iter().try_for_each(StepSpec::validate)
    }
}
