//! One-body factors exp(v(x)) and their superpotentials W(x).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::units::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    VForm,
    WForm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OneBodyKind {
    Zero,
    /// v = −(mω/2ħ)x², W = √(m/2)ωx.
    Harmonic {
        omega: f64,
    },
    /// v = −(mω/2ħ)(L/π)² sin²(πx/L).
    TrigTrap {
        omega: f64,
        period: f64,
    },
}

/// v and W written independently in closed form, so the map
/// W = −(ħ/√(2m))v′ between them is checkable rather than definitional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneBodyProfile {
    pub kind: OneBodyKind,
    pub constants: PhysicalConstants,
    pub representation: Representation,
}

impl OneBodyProfile {
    pub fn new(kind: OneBodyKind, constants: PhysicalConstants) -> Self {
        OneBodyProfile {
            kind,
            constants,
            representation: Representation::Both,
        }
    }

    pub fn zero(constants: PhysicalConstants) -> Self {
        Self::new(OneBodyKind::Zero, constants)
    }

    pub fn harmonic(omega: f64, constants: PhysicalConstants) -> Self {
        Self::new(OneBodyKind::Harmonic { omega }, constants)
    }

    pub fn trig_trap(omega: f64, period: f64, constants: PhysicalConstants) -> Self {
        Self::new(OneBodyKind::TrigTrap { omega, period }, constants)
    }

    pub fn with_representation(mut self, representation: Representation) -> Self {
        self.representation = representation;
        self
    }

    pub fn has_v(&self) -> bool {
        self.representation != Representation::WForm
    }

    pub fn has_w(&self) -> bool {
        self.representation != Representation::VForm
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, OneBodyKind::Zero)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OneBodyKind::Zero => "zero",
            OneBodyKind::Harmonic { .. } => "harmonic",
            OneBodyKind::TrigTrap { .. } => "trig-trap",
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        match self.kind {
            OneBodyKind::Zero => {}
            OneBodyKind::Harmonic { omega } => {
                out.insert("omega".into(), omega);
            }
            OneBodyKind::TrigTrap { omega, period } => {
                out.insert("omega".into(), omega);
                out.insert("L".into(), period);
            }
        }
        out
    }

    pub fn period(&self) -> Option<f64> {
        match self.kind {
            OneBodyKind::TrigTrap { period, .. } => Some(period),
            _ => None,
        }
    }

    /// Harmonic frequency if W is linear in x.
    pub fn linear_omega(&self) -> Option<f64> {
        match self.kind {
            OneBodyKind::Zero => Some(0.0),
            OneBodyKind::Harmonic { omega } => Some(omega),
            OneBodyKind::TrigTrap { .. } => None,
        }
    }

    fn mw_over_hbar(&self, omega: f64) -> f64 {
        self.constants.mass * omega / self.constants.hbar
    }

    pub fn v(&self, x: f64) -> f64 {
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => -0.5 * self.mw_over_hbar(omega) * x * x,
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                let s = (k * x).sin();
                -0.5 * self.mw_over_hbar(omega) * s * s / (k * k)
            }
        }
    }

    pub fn v_prime(&self, x: f64) -> f64 {
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => -self.mw_over_hbar(omega) * x,
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                -0.5 * self.mw_over_hbar(omega) * (2.0 * k * x).sin() / k
            }
        }
    }

    pub fn v_second(&self, x: f64) -> f64 {
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => -self.mw_over_hbar(omega),
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                -self.mw_over_hbar(omega) * (2.0 * k * x).cos()
            }
        }
    }

    /// v(x + dx) − v(x) without cancellation.
    pub fn v_diff(&self, x: f64, dx: f64) -> f64 {
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => {
                -0.5 * self.mw_over_hbar(omega) * dx * (2.0 * x + dx)
            }
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                -0.5 * self.mw_over_hbar(omega) * (k * dx).sin() * (k * (2.0 * x + dx)).sin()
                    / (k * k)
            }
        }
    }

    pub fn w(&self, x: f64) -> f64 {
        let s = (0.5 * self.constants.mass).sqrt();
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => s * omega * x,
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                s * omega * (2.0 * k * x).sin() / (2.0 * k)
            }
        }
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        let s = (0.5 * self.constants.mass).sqrt();
        match self.kind {
            OneBodyKind::Zero => 0.0,
            OneBodyKind::Harmonic { omega } => s * omega,
            OneBodyKind::TrigTrap { omega, period } => {
                let k = PI / period;
                s * omega * (2.0 * k * x).cos()
            }
        }
    }

    /// U = W² − (ħ/√(2m))W′.
    pub fn u_from_w(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w - self.constants.hbar_over_sqrt_2m() * self.w_prime(x)
    }

    /// U = (ħ²/2m)[(v′)² + v″].
    pub fn u_from_v(&self, x: f64) -> f64 {
        let vp = self.v_prime(x);
        0.5 * self.constants.hbar2_over_m() * (vp * vp + self.v_second(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_riccati_example() {
        let p = OneBodyProfile::harmonic(1.0, PhysicalConstants::default());
        assert!((p.u_from_w(2.0) - 1.5).abs() < 1e-15);
        assert!(p.u_from_v(1.0).abs() < 1e-15);
    }

    #[test]
    fn v_diff_matches_difference() {
        let c = PhysicalConstants::default();
        for p in [
            OneBodyProfile::harmonic(1.3, c),
            OneBodyProfile::trig_trap(0.8, 5.0, c),
        ] {
            let d = p.v(0.7 + 0.01) - p.v(0.7);
            assert!((p.v_diff(0.7, 0.01) - d).abs() < 1e-15);
        }
    }

    #[test]
    fn w_matches_v_prime() {
        let c = PhysicalConstants::new(0.7, 1.9).unwrap();
        for p in [
            OneBodyProfile::harmonic(1.3, c),
            OneBodyProfile::trig_trap(0.8, 5.0, c),
        ] {
            for &x in &[-1.2, 0.4, 2.9] {
                let w = -c.hbar_over_sqrt_2m() * p.v_prime(x);
                assert!((w - p.w(x)).abs() < 1e-14);
                assert!((p.u_from_w(x) - p.u_from_v(x)).abs() < 1e-12);
            }
        }
    }
}
