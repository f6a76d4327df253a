//! Embedded reference dataset from the tabletop photonic realization of
//! the three-step discrimination walk.
//!
//! These are measured values, shipped for side-by-side comparison only —
//! the simulator never asserts equality against them, since they carry
//! apparatus imperfections (finite interference visibility, component
//! errors) that are deliberately not modeled here.

use serde::Serialize;

use crate::angles::DegMin;
use crate::usd::Sign;

/// One row of the reference angle/efficiency table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    /// The overlap coefficient as printed (3 decimals).
    pub alpha_printed: f64,
    /// Encoding angle in degrees; exact, the rows are laid out on it.
    pub phi_deg: f64,
    /// Which of ∣ψ±⟩ was prepared.
    pub state: Sign,
    /// Wave-plate setting at x = −1, step 2.
    pub theta_m1_2: DegMin,
    /// Wave-plate setting at x = +1, step 2 (problem-dependent).
    pub theta_1_2: DegMin,
    /// Wave-plate setting at x = 0, step 3.
    pub theta_0_3: DegMin,
    /// Measured success probability and its statistical uncertainty.
    pub eta_measured: f64,
    pub eta_uncertainty: f64,
    /// Measured 1-norm distance to theory and its uncertainty.
    pub d_measured: f64,
    pub d_uncertainty: f64,
}

const fn row(
    alpha_printed: f64,
    phi_deg: f64,
    state: Sign,
    theta_1_2: DegMin,
    eta_measured: f64,
    eta_uncertainty: f64,
    d_measured: f64,
    d_uncertainty: f64,
) -> Table1Row {
    Table1Row {
        alpha_printed,
        phi_deg,
        state,
        theta_m1_2: DegMin::new(45, 0),
        theta_1_2,
        theta_0_3: DegMin::new(22, 30),
        eta_measured,
        eta_uncertainty,
        d_measured,
        d_uncertainty,
    }
}

/// The full reference table: six values of φ, each measured with both
/// ∣ψ+⟩ and ∣ψ−⟩ prepared.
pub const TABLE1: [Table1Row; 12] = [
    row(0.707, 45.0, Sign::Plus, DegMin::new(12, 14), 0.2861, 0.0030, 0.0171, 0.0046),
    row(0.588, 54.0, Sign::Plus, DegMin::new(15, 19), 0.4037, 0.0038, 0.0184, 0.0047),
    row(0.454, 63.0, Sign::Plus, DegMin::new(18, 54), 0.5362, 0.0045, 0.0192, 0.0047),
    row(0.309, 72.0, Sign::Plus, DegMin::new(23, 18), 0.6834, 0.0054, 0.0127, 0.0046),
    row(0.156, 81.0, Sign::Plus, DegMin::new(29, 20), 0.8384, 0.0062, 0.0066, 0.0044),
    row(0.0, 90.0, Sign::Plus, DegMin::new(45, 0), 0.9940, 0.0070, 0.0060, 0.0035),
    row(0.707, 45.0, Sign::Minus, DegMin::new(12, 14), 0.2875, 0.0031, 0.0152, 0.0045),
    row(0.588, 54.0, Sign::Minus, DegMin::new(15, 19), 0.4066, 0.0039, 0.0156, 0.0047),
    row(0.454, 63.0, Sign::Minus, DegMin::new(18, 54), 0.5365, 0.0045, 0.0183, 0.0046),
    row(0.309, 72.0, Sign::Minus, DegMin::new(23, 18), 0.6854, 0.0055, 0.0136, 0.0049),
    row(0.156, 81.0, Sign::Minus, DegMin::new(29, 20), 0.8394, 0.0063, 0.0071, 0.0043),
    row(0.0, 90.0, Sign::Minus, DegMin::new(45, 0), 0.9920, 0.0071, 0.0080, 0.0036),
];

/// A measured outcome probability with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredProb {
    pub position: i64,
    pub probability: f64,
    pub uncertainty: f64,
}

/// Measured conclusive-outcome probabilities for the equal-weight
/// superposition input (∣H⟩) at φ = 45°.
pub const FIG2D_MEASURED: [MeasuredProb; 2] = [
    MeasuredProb { position: 1, probability: 0.0854, uncertainty: 0.0015 },
    MeasuredProb { position: -1, probability: 0.0850, uncertainty: 0.0015 },
];

/// Interference visibility per step of the reference apparatus.
/// Metadata only; the simulation is ideal.
pub const INTERFEROMETER_VISIBILITY: f64 = 0.998;

/// Coincidence counts behind each reference row: ~1000 s⁻¹ collected
/// over 40 s.
pub const REFERENCE_SHOTS: u64 = 40_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::to_deg_min;

    #[test]
    fn twelve_rows_six_phis_two_signs() {
        assert_eq!(TABLE1.len(), 12);
        let plus = TABLE1.iter().filter(|r| r.state == Sign::Plus).count();
        assert_eq!(plus, 6);
        for pair in TABLE1[..6].iter().zip(&TABLE1[6..]) {
            assert_eq!(pair.0.phi_deg, pair.1.phi_deg);
            assert_eq!(pair.0.theta_1_2, pair.1.theta_1_2);
        }
    }

    #[test]
    fn printed_alpha_is_the_rounded_cosine() {
        for r in &TABLE1 {
            let alpha = r.phi_deg.to_radians().cos();
            assert!((alpha - r.alpha_printed).abs() < 5e-4);
        }
    }

    #[test]
    fn printed_angles_round_trip_through_the_formatter() {
        for r in &TABLE1 {
            for dm in [r.theta_m1_2, r.theta_1_2, r.theta_0_3] {
                assert_eq!(to_deg_min(dm.as_degrees()), dm);
            }
        }
    }
}
