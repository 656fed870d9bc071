//! Odd prepotentials V(x) entering the generalized momenta.
//!
//! A [`PrepotentialShape`] is V measured in units of ζħ, so V = ζħ·s(x) and
//! s equals the log-derivative f′/f of the matching pair function.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::pair::DeltaStrength;
use crate::special::bessel_ratio;
use crate::units::{PhysicalConstants, Statistics};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied odd shape with closed-form value and derivative.
#[derive(Clone)]
pub struct CustomShape {
    pub name: String,
    pub value: RealFn,
    pub derivative: RealFn,
    /// Non-integrable pole at the origin (1/x-like).
    pub pole_at_origin: bool,
    pub period: Option<f64>,
}

impl fmt::Debug for CustomShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomShape")
            .field("name", &self.name)
            .finish()
    }
}

impl PartialEq for CustomShape {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && Arc::ptr_eq(&self.value, &other.value)
            && Arc::ptr_eq(&self.derivative, &other.derivative)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrepotentialShape {
    Zero,
    /// λ/x.
    Rational {
        lambda: f64,
    },
    /// g·sgn(x).
    Sgn {
        g: f64,
    },
    /// λk·cot(kx), k = π/L.
    Cot {
        lambda: f64,
        period: f64,
    },
    /// λa·coth(ax).
    Coth {
        lambda: f64,
        a: f64,
    },
    /// Log-derivative of I₀(2√g ℓ e^{−|x|/(2ℓ)}).
    Toda {
        g: f64,
        ell: f64,
    },
    /// base(x) − βx.
    Shifted {
        base: Box<PrepotentialShape>,
        beta: f64,
    },
    Custom(CustomShape),
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl PrepotentialShape {
    pub fn shifted(self, beta: f64) -> Self {
        if beta == 0.0 {
            return self;
        }
        PrepotentialShape::Shifted {
            base: Box::new(self),
            beta,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            PrepotentialShape::Zero => 0.0,
            PrepotentialShape::Rational { lambda } => lambda / x,
            PrepotentialShape::Sgn { g } => g * sgn(x),
            PrepotentialShape::Cot { lambda, period } => {
                let k = PI / period;
                lambda * k / (k * x).tan()
            }
            PrepotentialShape::Coth { lambda, a } => lambda * a / (a * x).tanh(),
            PrepotentialShape::Toda { g, ell } => {
                let s = g.sqrt();
                let u = (-x.abs() / (2.0 * ell)).exp();
                -s * u * bessel_ratio(2.0 * s * ell * u) * sgn(x)
            }
            PrepotentialShape::Shifted { base, beta } => base.value(x) - beta * x,
            PrepotentialShape::Custom(c) => (c.value)(x),
        }
    }

    /// Derivative away from singular points (delta parts excluded).
    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            PrepotentialShape::Zero | PrepotentialShape::Sgn { .. } => 0.0,
            PrepotentialShape::Rational { lambda } => -lambda / (x * x),
            PrepotentialShape::Cot { lambda, period } => {
                let k = PI / period;
                let s = (k * x).sin();
                -lambda * k * k / (s * s)
            }
            PrepotentialShape::Coth { lambda, a } => {
                let s = (a * x).sinh();
                -lambda * a * a / (s * s)
            }
            PrepotentialShape::Toda { g, ell } => {
                // s′ + s² = g e^{−|x|/ℓ}
                let v = self.value(x);
                g * (-x.abs() / ell).exp() - v * v
            }
            PrepotentialShape::Shifted { base, beta } => base.derivative(x) - beta,
            PrepotentialShape::Custom(c) => (c.derivative)(x),
        }
    }

    pub fn period(&self) -> Option<f64> {
        match self {
            PrepotentialShape::Cot { period, .. } => Some(*period),
            PrepotentialShape::Custom(c) => c.period,
            _ => None,
        }
    }

    /// Non-integrable 1/x pole at the origin.
    pub fn pole_at_origin(&self) -> bool {
        match self {
            PrepotentialShape::Rational { lambda }
            | PrepotentialShape::Cot { lambda, .. }
            | PrepotentialShape::Coth { lambda, .. } => *lambda != 0.0,
            PrepotentialShape::Shifted { base, .. } => base.pole_at_origin(),
            PrepotentialShape::Custom(c) => c.pole_at_origin,
            _ => false,
        }
    }

    /// Jump s(0⁺) − s(0⁻) for shapes with a finite discontinuity.
    pub fn jump_at_origin(&self) -> Option<f64> {
        match self {
            PrepotentialShape::Sgn { g } if *g != 0.0 => Some(2.0 * g),
            PrepotentialShape::Toda { g, ell } if *g != 0.0 => {
                let s = g.sqrt();
                Some(-2.0 * s * bessel_ratio(2.0 * s * ell))
            }
            PrepotentialShape::Shifted { base, .. } => base.jump_at_origin(),
            _ => None,
        }
    }

    pub fn singular_at_origin(&self) -> bool {
        self.pole_at_origin() || self.jump_at_origin().is_some()
    }

    pub fn one_sided(&self, side: f64) -> f64 {
        if self.pole_at_origin() {
            return side * f64::INFINITY;
        }
        match self {
            PrepotentialShape::Sgn { g } => side * g,
            PrepotentialShape::Toda { g, ell } => {
                let s = g.sqrt();
                -side * s * bessel_ratio(2.0 * s * ell)
            }
            PrepotentialShape::Shifted { base, .. } => base.one_sided(side),
            _ => self.value(0.0),
        }
    }

    pub fn name(&self) -> String {
        match self {
            PrepotentialShape::Zero => "zero".into(),
            PrepotentialShape::Rational { .. } => "rational".into(),
            PrepotentialShape::Sgn { .. } => "sgn".into(),
            PrepotentialShape::Cot { .. } => "cot".into(),
            PrepotentialShape::Coth { .. } => "coth".into(),
            PrepotentialShape::Toda { .. } => "toda".into(),
            PrepotentialShape::Shifted { base, .. } => format!("{}-linear", base.name()),
            PrepotentialShape::Custom(c) => c.name.clone(),
        }
    }

    pub fn collect_params(&self, out: &mut BTreeMap<String, f64>) {
        match self {
            PrepotentialShape::Zero | PrepotentialShape::Custom(_) => {}
            PrepotentialShape::Rational { lambda } => {
                out.insert("lambda".into(), *lambda);
            }
            PrepotentialShape::Sgn { g } => {
                out.insert("g".into(), *g);
            }
            PrepotentialShape::Cot { lambda, period } => {
                out.insert("lambda".into(), *lambda);
                out.insert("L".into(), *period);
            }
            PrepotentialShape::Coth { lambda, a } => {
                out.insert("lambda".into(), *lambda);
                out.insert("a".into(), *a);
            }
            PrepotentialShape::Toda { g, ell } => {
                out.insert("g".into(), *g);
                out.insert("ell".into(), *ell);
            }
            PrepotentialShape::Shifted { base, beta } => {
                base.collect_params(out);
                out.insert("beta".into(), *beta);
            }
        }
    }

    /// Q(x)/ħ² with V(x)V(y)+V(y)V(z)+V(z)V(x) = Q(x)+Q(y)+Q(z) on x+y+z = 0,
    /// or None when the shape is not in a reducible family.
    pub fn reduced_q(&self, x: f64) -> Option<f64> {
        match self {
            PrepotentialShape::Zero | PrepotentialShape::Rational { .. } => Some(0.0),
            // sgn·sgn summed cyclically is −1
            PrepotentialShape::Sgn { g } => Some(-g * g / 3.0),
            // cot·cot summed cyclically is +1
            PrepotentialShape::Cot { lambda, period } => {
                let k = PI / period;
                Some(lambda * lambda * k * k / 3.0)
            }
            // coth·coth summed cyclically is −1
            PrepotentialShape::Coth { lambda, a } => Some(-lambda * lambda * a * a / 3.0),
            PrepotentialShape::Shifted { base, beta } => {
                let q = base.reduced_q(x)?;
                Some(q + beta * x * base.value(x) - 0.5 * beta * beta * x * x)
            }
            PrepotentialShape::Toda { .. } | PrepotentialShape::Custom(_) => None,
        }
    }

    pub fn is_reducible(&self) -> bool {
        self.reduced_q(0.5).is_some()
    }
}

/// V(x) = ζħ·shape(x).
#[derive(Debug, Clone, PartialEq)]
pub struct Prepotential {
    pub shape: PrepotentialShape,
    pub statistics: Statistics,
    pub hbar: f64,
}

impl Prepotential {
    pub fn new(
        shape: PrepotentialShape,
        statistics: Statistics,
        constants: &PhysicalConstants,
    ) -> Self {
        Prepotential {
            shape,
            statistics,
            hbar: constants.hbar,
        }
    }

    pub fn zeta(&self) -> f64 {
        self.statistics.zeta()
    }

    fn scale(&self) -> f64 {
        self.zeta() * self.hbar
    }

    pub fn name(&self) -> String {
        self.shape.name()
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        self.shape.collect_params(&mut out);
        out
    }

    pub fn value(&self, x: f64) -> f64 {
        self.scale() * self.shape.value(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.scale() * self.shape.derivative(x)
    }

    /// Delta part of V′ at the origin, as a coefficient of δ(x).
    pub fn delta_at_origin(&self) -> Option<DeltaStrength> {
        self.shape
            .jump_at_origin()
            .map(|j| DeltaStrength::Finite(self.scale() * j))
    }

    pub fn period(&self) -> Option<f64> {
        self.shape.period()
    }

    pub fn is_singular(&self, x: f64) -> bool {
        if !self.shape.singular_at_origin() {
            return false;
        }
        match self.period() {
            Some(l) => (x / l).round() * l == x,
            None => x == 0.0,
        }
    }

    /// Q(x) in energy·mass units (same units as V²).
    pub fn reduced_q(&self, x: f64) -> Option<f64> {
        self.shape.reduced_q(x).map(|q| q * self.hbar * self.hbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes() -> Vec<PrepotentialShape> {
        vec![
            PrepotentialShape::Rational { lambda: 1.5 },
            PrepotentialShape::Sgn { g: 0.7 },
            PrepotentialShape::Cot {
                lambda: 0.5,
                period: 3.0,
            },
            PrepotentialShape::Coth {
                lambda: 1.2,
                a: 0.8,
            },
            PrepotentialShape::Toda { g: 1.0, ell: 1.0 },
            PrepotentialShape::Sgn { g: 1.0 }.shifted(0.4),
        ]
    }

    #[test]
    fn odd_and_derivative_consistent() {
        for s in shapes() {
            for &x in &[0.3, 0.9, 1.4] {
                assert!((s.value(x) + s.value(-x)).abs() < 1e-14, "{}", s.name());
                let h = 1e-4;
                let fd = (s.value(x + h) - s.value(x - h)) / (2.0 * h);
                assert!(
                    (fd - s.derivative(x)).abs() < 1e-6 * (1.0 + fd.abs()),
                    "{}",
                    s.name()
                );
            }
        }
    }

    #[test]
    fn scaled_by_zeta_hbar() {
        let c = PhysicalConstants::new(2.0, 1.0).unwrap();
        let v = Prepotential::new(
            PrepotentialShape::Rational { lambda: 1.5 },
            Statistics::Fermion,
            &c,
        );
        assert!((v.value(3.0) + 1.0).abs() < 1e-15);
    }
}
