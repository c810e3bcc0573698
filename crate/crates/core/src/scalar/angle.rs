use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// An angle, stored in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AngleMeasure {
    radians: f64,
}

/// Degree / minute / second triple. `minutes` and `seconds` are always in
/// `[0, 60)`; the sign lives on `degrees` (or `negative` for angles above -1°).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dms {
    pub negative: bool,
    pub degrees: i64,
    pub minutes: i64,
    pub seconds: f64,
}

impl AngleMeasure {
    pub fn from_radians(radians: f64) -> Self {
        AngleMeasure { radians }
    }

    pub fn from_degrees(degrees: f64) -> Self {
        AngleMeasure {
            radians: degrees.to_radians(),
        }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn degrees(&self) -> f64 {
        self.radians.to_degrees()
    }

    pub fn to_dms(&self) -> Dms {
        radians_to_dms(*self)
    }
}

/// Converts degrees, minutes and seconds to an angle.
pub fn dms_to_radians(degrees: i64, minutes: i64, seconds: f64) -> Result<AngleMeasure> {
    if !(0..60).contains(&minutes) {
        return Err(GeomError::domain(format!(
            "minutes must lie in [0, 60), got {minutes}"
        )));
    }
    if !(0.0..60.0).contains(&seconds) {
        return Err(GeomError::domain(format!(
            "seconds must lie in [0, 60), got {seconds}"
        )));
    }
    let magnitude = degrees.unsigned_abs() as f64 + minutes as f64 / 60.0 + seconds / 3600.0;
    let signed = if degrees < 0 { -magnitude } else { magnitude };
    Ok(AngleMeasure::from_radians(signed * PI / 180.0))
}

pub fn radians_to_dms(angle: AngleMeasure) -> Dms {
    let total_deg = angle.degrees();
    let negative = total_deg < 0.0;
    // Work in integer-rounded micro-arcseconds so 59.9999999" carries over.
    let micro = (total_deg.abs() * 3600.0 * 1e6).round();
    let whole_seconds = (micro / 1e6).floor();
    let mut seconds = (micro - whole_seconds * 1e6) / 1e6;
    let whole_seconds = whole_seconds as i64;
    let degrees = whole_seconds / 3600;
    let minutes = (whole_seconds % 3600) / 60;
    seconds += (whole_seconds % 60) as f64;
    Dms {
        negative,
        degrees: if negative { -degrees } else { degrees },
        minutes,
        seconds,
    }
}

impl Dms {
    pub fn to_angle(&self) -> Result<AngleMeasure> {
        let a = dms_to_radians(self.degrees.abs(), self.minutes, self.seconds)?;
        Ok(if self.negative {
            AngleMeasure::from_radians(-a.radians())
        } else {
            a
        })
    }
}

impl std::fmt::Display for Dms {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.negative && self.degrees == 0 { "-" } else { "" };
        write!(
            f,
            "{sign}{}°{:02}′{:05.2}″",
            self.degrees, self.minutes, self.seconds
        )
    }
}
