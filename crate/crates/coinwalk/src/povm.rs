//! Generalized-measurement elements realized by a walk.
//!
//! Measuring the walker at position i after a walk started from ∣x=0⟩
//! performs a generalized measurement on the coin: the element is
//! E_i = K_i†K_i with the Kraus operator K_i = ⟨i∣U∣0⟩ acting on the coin
//! space. Unitarity of the walk gives completeness, Σ_i K_i†K_i = 1.
//!
//! Two extraction routes are provided. [`kraus_from_walk`] reads K_i off
//! forward walks of the two coin basis states. [`reversed_walk_element`]
//! runs the walk backwards from ∣i⟩ instead and reconstructs the element
//! along a chosen coin direction; for the discrimination walk, whose Kraus
//! operators are rank-1, both routes agree exactly.

use num_complex::Complex64;
use serde::Serialize;

use crate::coin::Protocol;
use crate::error::Result;
use crate::math::Mat2;
use crate::state::{CoinState, WalkState};
use crate::usd::UsdParams;

/// The coin-space operator ⟨i∣U∣0⟩ induced by detecting the walker at
/// `outcome_position`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KrausOp {
    pub m: Mat2,
    pub outcome_position: i64,
}

/// A positive-semidefinite element of the measurement, E = K†K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PovmElement {
    pub e: Mat2,
    pub outcome_position: i64,
}

impl PovmElement {
    pub fn hermiticity_deviation(&self) -> f64 {
        self.e.hermiticity_deviation()
    }

    /// Smallest eigenvalue (closed form); ≥ −1e-12 for a valid element.
    pub fn min_eigenvalue(&self) -> f64 {
        self.e.hermitian_eigenvalues().0
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.e.hermitian_eigenvalues().1
    }

    /// The Born-rule probability ⟨c∣E∣c⟩ of this outcome on coin state `c`.
    pub fn expectation(&self, coin: &CoinState) -> f64 {
        let ec = coin.apply(&self.e);
        coin.inner(&ec).re
    }

    /// ‖E∣c⟩‖ — the zero-error residual when `c` is the excluded state.
    pub fn apply_norm(&self, coin: &CoinState) -> f64 {
        coin.apply(&self.e).norm()
    }
}

/// Extract K_i from forward walks: column c ∈ {H, V} is the coin
/// amplitude pair at position i after running ∣0⟩⊗∣c⟩ through the
/// protocol. Unreachable positions give the zero matrix.
pub fn kraus_from_walk(protocol: &Protocol, i: i64) -> Result<KrausOp> {
    let col_h = WalkState::localized(0, CoinState::HORIZONTAL)
        .run(protocol)?
        .amp(i);
    let col_v = WalkState::localized(0, CoinState::VERTICAL)
        .run(protocol)?
        .amp(i);
    Ok(KrausOp {
        m: Mat2::from_columns(col_h.as_array(), col_v.as_array()),
        outcome_position: i,
    })
}

/// E = K†K. Hermitian and positive semidefinite by construction.
pub fn povm_element(k: &KrausOp) -> PovmElement {
    PovmElement {
        e: k.m.adjoint() * k.m,
        outcome_position: k.outcome_position,
    }
}

/// Reconstruct the element for outcome `i` by running the walk backwards.
///
/// Each reversed step applies T† and then the adjoint coins, starting
/// from ∣i⟩ ⊗ ∣c⟩ for the two coin basis states and working through the
/// steps in reverse order. Projecting the walker onto ⟨x=0∣ assembles the
/// 2×2 operator M = ⟨0∣U†∣i⟩ = K_i†. The returned element is the outer
/// product of ψ̃ = M∣ψ_i⟩ rescaled by tr(MM†)/‖ψ̃‖², i.e. the rank-1
/// restriction of K_i†K_i along ψ_i carrying the outcome's full weight.
/// When K_i is itself rank-1 (every outcome of the discrimination walk)
/// this equals `povm_element(kraus_from_walk(...))` exactly.
pub fn reversed_walk_element(
    protocol: &Protocol,
    i: i64,
    psi_i: &CoinState,
) -> Result<PovmElement> {
    let mut columns = [[Complex64::from(0.0); 2]; 2];
    for (c, basis) in [CoinState::HORIZONTAL, CoinState::VERTICAL]
        .iter()
        .enumerate()
    {
        let mut state = WalkState::localized(i, *basis);
        for spec in protocol.steps().iter().rev() {
            state = state.shift_back().apply_coins_adjoint(spec)?;
        }
        columns[c] = state.amp(0).as_array();
    }
    let m = Mat2::from_columns(columns[0], columns[1]);

    let psi_tilde = psi_i.apply(&m);
    let weight = psi_tilde.norm_sqr();
    if weight <= 1e-30 {
        return Ok(PovmElement {
            e: Mat2::zero(),
            outcome_position: i,
        });
    }
    let gram_trace = (m * m.adjoint()).trace().re;
    let e = Mat2::outer(psi_tilde.as_array(), psi_tilde.as_array()).scale(gram_trace / weight);
    Ok(PovmElement {
        e,
        outcome_position: i,
    })
}

/// The analytic elements of the discrimination measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UsdElements {
    pub e_plus: PovmElement,
    pub e_minus: PovmElement,
    pub e_inconclusive: PovmElement,
}

impl UsdElements {
    pub fn as_array(&self) -> [PovmElement; 3] {
        [self.e_plus, self.e_minus, self.e_inconclusive]
    }
}

/// Closed forms:
///
/// * E_± = (sin(φ/2)∣H⟩ ± cos(φ/2)∣V⟩)(h.c.) / (2cos²(φ/2)),
/// * E_inconclusive = (1 − tan²(φ/2)) ∣H⟩⟨H∣ (fixed by completeness).
pub fn closed_form_usd_elements(params: &UsdParams) -> UsdElements {
    let (s, c) = (params.phi() / 2.0).sin_cos();
    let scale = 1.0 / (2.0 * c * c);
    let plus = [Complex64::from(s), Complex64::from(c)];
    let minus = [Complex64::from(-s), Complex64::from(c)];
    let t = s / c;
    let e3 = (1.0 - t * t).max(0.0);
    UsdElements {
        e_plus: PovmElement {
            e: Mat2::outer(plus, plus).scale(scale),
            outcome_position: 1,
        },
        e_minus: PovmElement {
            e: Mat2::outer(minus, minus).scale(scale),
            outcome_position: -1,
        },
        e_inconclusive: PovmElement {
            e: Mat2::from_real([[e3, 0.0], [0.0, 0.0]]),
            outcome_position: 3,
        },
    }
}

/// Extract the three discrimination elements from the walk itself.
pub fn walk_usd_elements(protocol: &Protocol) -> Result<UsdElements> {
    Ok(UsdElements {
        e_plus: povm_element(&kraus_from_walk(protocol, 1)?),
        e_minus: povm_element(&kraus_from_walk(protocol, -1)?),
        e_inconclusive: povm_element(&kraus_from_walk(protocol, 3)?),
    })
}

/// How far a set of elements is from a complete, positive measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    /// Max-norm of ΣE_i − 1.
    pub max_deviation: f64,
    /// (outcome position, smallest eigenvalue) per element.
    pub min_eigenvalues: Vec<(i64, f64)>,
    /// deviation ≤ 1e-10 and every eigenvalue ≥ −1e-12.
    pub pass: bool,
}

pub fn verify_completeness(elements: &[PovmElement]) -> CompletenessReport {
    let sum = elements
        .iter()
        .fold(Mat2::zero(), |acc, el| acc + el.e);
    let max_deviation = (sum - Mat2::identity()).max_abs();
    let min_eigenvalues: Vec<(i64, f64)> = elements
        .iter()
        .map(|el| (el.outcome_position, el.min_eigenvalue()))
        .collect();
    let pass = max_deviation <= 1e-10
        && min_eigenvalues.iter().all(|&(_, ev)| ev >= -1e-12);
    CompletenessReport {
        max_deviation,
        min_eigenvalues,
        pass,
    }
}
