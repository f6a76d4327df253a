//! Step evolution: coin application, the conditional shift, and their
//! composition into full walks.

use crate::coin::{Protocol, StepSpec};
use crate::error::Result;
use crate::state::{CoinState, WalkState};

impl WalkState {
    /// Apply the step's coins: at every listed position the amplitude pair
    /// is left-multiplied by that position's coin matrix; everything else
    /// is untouched. Validates the spec first.
    pub fn apply_coins(&self, spec: &StepSpec) -> Result<WalkState> {
        spec.validate()?;
        let mut amps = self.amps().to_vec();
        let offset = self.offset();
        for (&x, _) in spec.coins() {
            let idx = x - offset;
            if idx >= 0 && (idx as usize) < amps.len() {
                amps[idx as usize] = amps[idx as usize].apply(spec.coin_at(x).matrix());
            }
        }
        Ok(WalkState::from_amplitudes(offset, amps))
    }

    /// Same positions, adjoint coins; used to run a walk backwards.
    pub fn apply_coins_adjoint(&self, spec: &StepSpec) -> Result<WalkState> {
        spec.validate()?;
        let mut amps = self.amps().to_vec();
        let offset = self.offset();
        for (&x, _) in spec.coins() {
            let idx = x - offset;
            if idx >= 0 && (idx as usize) < amps.len() {
                amps[idx as usize] =
                    amps[idx as usize].apply(spec.coin_at(x).adjoint().matrix());
            }
        }
        Ok(WalkState::from_amplitudes(offset, amps))
    }

    /// The conditional shift T: H-amplitude moves to x+1, V-amplitude to
    /// x−1. The stored block widens by one site on each side.
    pub fn shift(&self) -> WalkState {
        let old = self.amps();
        let mut amps = vec![CoinState::ZERO; old.len() + 2];
        for (i, a) in old.iter().enumerate() {
            amps[i + 2].h = a.h; // x → x+1
            amps[i].v = a.v; // x → x−1
        }
        WalkState::from_amplitudes(self.offset() - 1, amps)
    }

    /// The adjoint shift T†: H-amplitude moves to x−1, V-amplitude to x+1.
    pub fn shift_back(&self) -> WalkState {
        let old = self.amps();
        let mut amps = vec![CoinState::ZERO; old.len() + 2];
        for (i, a) in old.iter().enumerate() {
            amps[i].h = a.h; // x → x−1
            amps[i + 2].v = a.v; // x → x+1
        }
        WalkState::from_amplitudes(self.offset() - 1, amps)
    }

    /// One full step: coins, then the conditional shift.
    pub fn step(&self, spec: &StepSpec) -> Result<WalkState> {
        Ok(self.apply_coins(spec)?.shift())
    }

    /// Run a whole protocol, step by step.
    pub fn run(&self, protocol: &Protocol) -> Result<WalkState> {
        let mut state = self.clone();
        for spec in protocol.steps() {
            state = state.step(spec)?;
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{CoinAction, CoinOp};
    use crate::error::Error;
    use crate::math::C_ONE;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn shift_moves_h_up() {
        let s = WalkState::localized(0, CoinState::HORIZONTAL).shift();
        assert_abs_diff_eq!(s.amp(1).h.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn shift_splits_a_superposed_coin() {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let s = WalkState::localized(0, CoinState::from_real(c, c)).shift();
        assert_abs_diff_eq!(s.amp(1).h.re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(-1).v.re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn shift_prepares_the_first_step_state() {
        // cos(φ/2)∣0⟩∣H⟩ + sin(φ/2)∣0⟩∣V⟩ → cos(φ/2)∣1⟩∣H⟩ + sin(φ/2)∣−1⟩∣V⟩
        let phi = 1.1;
        let (sn, cs) = (phi / 2.0).sin_cos();
        let s = WalkState::localized(0, CoinState::from_real(cs, sn)).shift();
        assert_abs_diff_eq!(s.amp(1).h.re, cs, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(-1).v.re, sn, epsilon = 1e-15);
        assert_eq!(s.amp(0), CoinState::ZERO);
    }

    #[test]
    fn shift_back_inverts_shift() {
        let c = 0.6;
        let s = WalkState::localized(
            2,
            CoinState::new(Complex64::new(c, 0.3), Complex64::new(0.0, -0.74)),
        );
        let round = s.shift().shift_back();
        // Support widened twice, amplitudes identical in place.
        for x in -2..=6 {
            let a = s.amp(x);
            let b = round.amp(x);
            assert_abs_diff_eq!((a.h - b.h).norm(), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!((a.v - b.v).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn hadamard_coin_at_origin() {
        let spec = StepSpec::new().with_angle(0, FRAC_PI_8);
        let s = WalkState::localized(0, CoinState::HORIZONTAL)
            .apply_coins(&spec)
            .unwrap();
        let c = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amp(0).h.re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(0).v.re, c, epsilon = 1e-15);
    }

    #[test]
    fn swap_coin_turns_v_into_h() {
        let spec = StepSpec::new().with_angle(-1, FRAC_PI_4);
        let s = WalkState::localized(-1, CoinState::VERTICAL)
            .apply_coins(&spec)
            .unwrap();
        assert_abs_diff_eq!(s.amp(-1).h.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(-1).v.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn empty_spec_leaves_state_unchanged() {
        let s = WalkState::localized(0, CoinState::from_real(0.6, 0.8));
        let t = s.apply_coins(&StepSpec::new()).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn coins_outside_support_are_noops() {
        let s = WalkState::localized(0, CoinState::HORIZONTAL);
        let spec = StepSpec::new().with_angle(7, 0.2);
        let t = s.apply_coins(&spec).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn non_unitary_custom_coin_is_rejected_on_apply() {
        let bad = Mat2([[C_ONE, C_ONE], [Complex64::from(0.0), C_ONE]]);
        let mut spec = StepSpec::new();
        spec.set(0, CoinAction::Custom(CoinOp::unchecked(bad)));
        let s = WalkState::localized(0, CoinState::HORIZONTAL);
        match s.apply_coins(&spec) {
            Err(Error::NonUnitaryCoin { .. }) => {}
            other => panic!("expected NonUnitaryCoin, got {other:?}"),
        }
    }

    #[test]
    fn step_is_coins_then_shift() {
        let spec = StepSpec::new().with_angle(0, FRAC_PI_8);
        let s = WalkState::localized(0, CoinState::HORIZONTAL);
        let a = s.step(&spec).unwrap();
        let b = s.apply_coins(&spec).unwrap().shift();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_protocol_equals_single_shift() {
        let protocol = Protocol::new(vec![StepSpec::new()]).unwrap();
        let s = WalkState::localized(0, CoinState::from_real(0.6, 0.8));
        assert_eq!(s.run(&protocol).unwrap(), s.shift());
    }

    #[test]
    fn support_grows_one_per_side_per_step() {
        let spec = StepSpec::new().with_angle(0, 0.3);
        let protocol = Protocol::new(vec![spec.clone(), spec.clone(), spec]).unwrap();
        let s = WalkState::localized(0, CoinState::HORIZONTAL)
            .run(&protocol)
            .unwrap();
        assert_eq!(s.support(), (-3, 3));
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }
}
