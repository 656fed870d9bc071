//! Physical constants, exchange statistics and geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant and particle mass. Both default to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "hbar".into(),
                reason: format!("must be positive, got {hbar}"),
            });
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "mass".into(),
                reason: format!("must be positive, got {mass}"),
            });
        }
        Ok(PhysicalConstants { hbar, mass })
    }

    /// ħ²/m, the natural energy × length² scale.
    pub fn hbar2_over_m(&self) -> f64 {
        self.hbar * self.hbar / self.mass
    }

    /// ħ/√(2m), the factor linking v′ and W.
    pub fn hbar_over_sqrt_2m(&self) -> f64 {
        self.hbar / (2.0 * self.mass).sqrt()
    }
}

/// Exchange statistics ζ: +1 for bosons, −1 for fermions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    #[default]
    Boson,
    Fermion,
}

impl Statistics {
    pub fn zeta(self) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => -1.0,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Statistics::Boson => 1,
            Statistics::Fermion => -1,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Statistics::Boson),
            -1 => Ok(Statistics::Fermion),
            _ => Err(Error::Invalid(format!("zeta must be +1 or -1, got {sign}"))),
        }
    }
}

/// Where the particles live.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Line,
    Ring { circumference: f64 },
    Box { half_width: f64 },
}

impl Geometry {
    pub fn is_ring(&self) -> bool {
        matches!(self, Geometry::Ring { .. })
    }

    pub fn period(&self) -> Option<f64> {
        match *self {
            Geometry::Ring { circumference } => Some(circumference),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Geometry::Line => "line".into(),
            Geometry::Ring { circumference } => format!("ring(L={circumference})"),
            Geometry::Box { half_width } => format!("box(a={half_width})"),
        }
    }
}
