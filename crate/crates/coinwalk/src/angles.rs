//! Degree/arcminute formatting for wave-plate angles.
//!
//! Radians are the only unit inside the library; degrees and the
//! degree-arcminute form exist at the I/O boundary where experimentalists
//! read and write wave-plate settings.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// An angle rounded to whole arcminutes, e.g. 12°14′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegMin {
    pub degrees: u32,
    pub minutes: u32,
}

impl DegMin {
    pub const fn new(degrees: u32, minutes: u32) -> Self {
        DegMin { degrees, minutes }
    }

    pub fn as_degrees(&self) -> f64 {
        self.degrees as f64 + self.minutes as f64 / 60.0
    }

    /// Absolute gap to another reading, in arcminutes.
    pub fn arcmin_distance(&self, other: &DegMin) -> u32 {
        let a = self.degrees * 60 + self.minutes;
        let b = other.degrees * 60 + other.minutes;
        a.abs_diff(b)
    }
}

/// Round a nonnegative angle in degrees to the nearest arcminute; half a
/// minute rounds away from zero, and 60′ carries into the degree field.
pub fn to_deg_min(degrees: f64) -> DegMin {
    debug_assert!(degrees >= 0.0 && degrees.is_finite());
    let total_minutes = (degrees * 60.0).round() as u32;
    DegMin {
        degrees: total_minutes / 60,
        minutes: total_minutes % 60,
    }
}

impl fmt::Display for DegMin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\u{00b0}{}\u{2032}", self.degrees, self.minutes)
    }
}

impl FromStr for DegMin {
    type Err = String;

    /// Accepts `12°14′` as well as the ASCII spelling `12d14m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_end_matches(['\u{2032}', '\'', 'm']);
        let (d, m) = s
            .split_once(['\u{00b0}', 'd'])
            .ok_or_else(|| format!("missing degree separator in {s:?}"))?;
        let degrees: u32 = d.parse().map_err(|e| format!("bad degrees {d:?}: {e}"))?;
        let minutes: u32 = m.parse().map_err(|e| format!("bad minutes {m:?}: {e}"))?;
        if minutes >= 60 {
            return Err(format!("minutes {minutes} out of range"));
        }
        Ok(DegMin { degrees, minutes })
    }
}
