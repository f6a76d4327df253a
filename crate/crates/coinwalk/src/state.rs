//! State vectors for a walker with a two-level coin on the integer line.
//!
//! A [`WalkState`] stores the joint wavefunction as a dense array of coin
//! amplitude pairs plus an offset, so positions are arbitrary signed
//! integers and the array grows by one slot per side per step. States are
//! immutable; every operation returns a new state.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::math::{Mat2, C_ONE, C_ZERO};

/// Tolerance for norm-preservation checks.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for unitarity of user-supplied coin matrices.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Positions with probability below this are omitted from distributions.
pub const PRUNE_EPS: f64 = 1e-15;

/// Amplitudes of the coin qubit on the basis {∣H⟩, ∣V⟩}.
///
/// Also used for the raw (unnormalized) amplitude pair carried at a single
/// lattice site, where ∣h∣² + ∣v∣² is the weight of that position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoinState {
    pub h: Complex64,
    pub v: Complex64,
}

impl CoinState {
    /// ∣H⟩
    pub const HORIZONTAL: CoinState = CoinState { h: C_ONE, v: C_ZERO };
    /// ∣V⟩
    pub const VERTICAL: CoinState = CoinState { h: C_ZERO, v: C_ONE };

    pub const ZERO: CoinState = CoinState { h: C_ZERO, v: C_ZERO };

    pub fn new(h: Complex64, v: Complex64) -> Self {
        CoinState { h, v }
    }

    pub fn from_real(h: f64, v: f64) -> Self {
        CoinState { h: h.into(), v: v.into() }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self∣other⟩ with the conjugate on `self`.
    pub fn inner(&self, other: &CoinState) -> Complex64 {
        self.h.conj() * other.h + self.v.conj() * other.v
    }

    /// ∣⟨self∣other⟩∣² for unit vectors; insensitive to global phase.
    pub fn fidelity(&self, other: &CoinState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Rescale to unit norm. The caller guarantees the norm is nonzero.
    pub fn normalized(&self) -> CoinState {
        let n = self.norm();
        debug_assert!(n > 0.0, "normalizing a zero coin state");
        CoinState { h: self.h / n, v: self.v / n }
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn apply(&self, m: &Mat2) -> CoinState {
        let [h, v] = m.mul_vec([self.h, self.v]);
        CoinState { h, v }
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.h, self.v]
    }
}

/// The walker+coin wavefunction over lattice positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkState {
    /// Lattice position of `amps[0]`.
    offset: i64,
    amps: Vec<CoinState>,
}

impl WalkState {
    /// The walker at position `x` carrying the coin state `coin`.
    pub fn localized(x: i64, coin: CoinState) -> Self {
        WalkState { offset: x, amps: vec![coin] }
    }

    /// Build directly from a dense amplitude block starting at `offset`.
    pub fn from_amplitudes(offset: i64, amps: Vec<CoinState>) -> Self {
        assert!(!amps.is_empty(), "a walk state needs at least one site");
        WalkState { offset, amps }
    }

    /// Amplitude pair at position `x` (zero outside the stored block).
    pub fn amp(&self, x: i64) -> CoinState {
        let idx = x - self.offset;
        if idx >= 0 && (idx as usize) < self.amps.len() {
            self.amps[idx as usize]
        } else {
            CoinState::ZERO
        }
    }

    /// Inclusive bounds of the stored block.
    pub fn support(&self) -> (i64, i64) {
        (self.offset, self.offset + self.amps.len() as i64 - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &CoinState)> {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, a)| (self.offset + i as i64, a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(CoinState::norm_sqr).sum()
    }

    /// ⟨self∣other⟩, aligned by absolute lattice position.
    pub fn inner(&self, other: &WalkState) -> Complex64 {
        let (lo, hi) = self.support();
        let mut acc = C_ZERO;
        for x in lo..=hi {
            let a = self.amp(x);
            let b = other.amp(x);
            acc += a.h.conj() * b.h + a.v.conj() * b.v;
        }
        acc
    }

    /// ∣⟨self∣other⟩∣²; the phase-insensitive comparison used in tests.
    pub fn fidelity(&self, other: &WalkState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// P(x) = ∣h(x)∣² + ∣v(x)∣², omitting positions below [`PRUNE_EPS`].
    ///
    /// The state itself is never pruned; only the returned map is.
    pub fn position_distribution(&self) -> BTreeMap<i64, f64> {
        self.iter()
            .map(|(x, a)| (x, a.norm_sqr()))
            .filter(|&(_, p)| p >= PRUNE_EPS)
            .collect()
    }

    /// Normalized conditional coin state at `x` together with its weight P(x).
    pub fn coin_state_at(&self, x: i64) -> Result<(CoinState, f64)> {
        let a = self.amp(x);
        let p = a.norm_sqr();
        if p <= PRUNE_EPS {
            return Err(Error::ZeroWeight(x));
        }
        Ok((a.normalized(), p))
    }

    pub(crate) fn offset(&self) -> i64 {
        self.offset
    }

    pub(crate) fn amps(&self) -> &[CoinState] {
        &self.amps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn localized_state_has_unit_norm_and_point_distribution() {
        let s = WalkState::localized(0, CoinState::HORIZONTAL);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0);
        let dist = s.position_distribution();
        assert_eq!(dist.len(), 1);
        assert_abs_diff_eq!(dist[&0], 1.0);
    }

    #[test]
    fn amp_outside_support_is_zero() {
        let s = WalkState::localized(2, CoinState::VERTICAL);
        assert_eq!(s.amp(3), CoinState::ZERO);
        assert_eq!(s.amp(-7), CoinState::ZERO);
        assert_eq!(s.support(), (2, 2));
    }

    #[test]
    fn coin_state_at_zero_weight_errors() {
        let s = WalkState::localized(0, CoinState::HORIZONTAL);
        match s.coin_state_at(2) {
            Err(Error::ZeroWeight(2)) => {}
            other => panic!("expected ZeroWeight(2), got {other:?}"),
        }
    }

    #[test]
    fn coin_state_at_returns_normalized_state_and_weight() {
        let half = CoinState::from_real(0.5, 0.0);
        let rest = CoinState::from_real(0.0, (0.75f64).sqrt());
        let s = WalkState::from_amplitudes(0, vec![half, rest]);
        let (coin, w) = s.coin_state_at(0).unwrap();
        assert_abs_diff_eq!(w, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(coin.fidelity(&CoinState::HORIZONTAL), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn distribution_prunes_tiny_weights_but_state_keeps_them() {
        let tiny = CoinState::from_real(1e-9, 0.0); // weight 1e-18 < PRUNE_EPS
        let main = CoinState::from_real(0.0, 1.0);
        let s = WalkState::from_amplitudes(0, vec![tiny, main]);
        assert_eq!(s.position_distribution().len(), 1);
        assert!(s.amp(0).h.norm() > 0.0);
    }

    #[test]
    fn inner_product_aligns_positions() {
        let a = WalkState::localized(1, CoinState::HORIZONTAL);
        let b = WalkState::from_amplitudes(
            0,
            vec![CoinState::ZERO, CoinState::HORIZONTAL],
        );
        assert_abs_diff_eq!(a.inner(&b).re, 1.0, epsilon = 1e-15);
        let c = WalkState::localized(0, CoinState::HORIZONTAL);
        assert_abs_diff_eq!(a.inner(&c).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn overlap_of_orthogonal_coins_vanishes() {
        assert_eq!(
            CoinState::HORIZONTAL.inner(&CoinState::VERTICAL),
            C_ZERO
        );
        assert_abs_diff_eq!(
            CoinState::HORIZONTAL.fidelity(&CoinState::VERTICAL),
            0.0
        );
    }
}
