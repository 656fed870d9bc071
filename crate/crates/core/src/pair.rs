//! Pair functions f(x) of the Jastrow factor ∏_{i<j} f(x_i − x_j).
//!
//! Every family exposes closed forms for f′/f and f″/f away from its
//! singular points. Families containing |x| follow the sgn calculus
//! d|F|/dx = F′ sgn F, so f′/f is the naive smooth derivative times sgn and
//! any kink at a zero of F shows up only as a delta term in f″/f, recorded
//! separately as [`DeltaStrength`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prepotential::PrepotentialShape;
use crate::quadrature::integrate;
use crate::special::{bessel_i0, bessel_ratio};

/// Distributional part of f″/f at a singular point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "coefficient", rename_all = "snake_case")]
pub enum DeltaStrength {
    /// f″/f ⊃ c·δ(x); equals the jump of f′/f across the point.
    Finite(f64),
    /// f″/f ⊃ c·δ(x)/|x| (hard core); c equals the jump of (f′/f)·|x|.
    HardCore(f64),
}

impl DeltaStrength {
    pub fn coefficient(self) -> f64 {
        match self {
            DeltaStrength::Finite(c) | DeltaStrength::HardCore(c) => c,
        }
    }

    pub fn scaled(self, s: f64) -> Self {
        match self {
            DeltaStrength::Finite(c) => DeltaStrength::Finite(c * s),
            DeltaStrength::HardCore(c) => DeltaStrength::HardCore(c * s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub x: f64,
    pub delta: Option<DeltaStrength>,
}

/// Symmetry of f: even pair functions describe bosons, odd ones fermions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairKind {
    /// f ≡ 1.
    Constant,
    /// |x|^λ.
    Power { lambda: f64 },
    /// exp(g|x|).
    ExpAbs { g: f64 },
    /// |sin(πx/L)|^λ, period L.
    SinPower { lambda: f64, period: f64 },
    /// |sinh(ax)|^λ.
    SinhPower { lambda: f64, a: f64 },
    /// I₀(2√g ℓ e^{−|x|/(2ℓ)}), so that f″/f = g e^{−|x|/ℓ} off the origin.
    BesselToda { g: f64, ell: f64 },
    /// base(x)·exp(−κx²/2).
    Gaussian { base: Box<PairKind>, kappa: f64 },
    /// exp(∫_{x₀}^{|x|} s(y) dy) with s = V/(ζħ), integrated numerically.
    Quadrature { shape: PrepotentialShape, x0: f64 },
}

/// A named analytic pair function with a fixed parity.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFamily {
    pub kind: PairKind,
    pub parity: Parity,
}

impl From<PairKind> for PairFamily {
    fn from(kind: PairKind) -> Self {
        PairFamily {
            kind,
            parity: Parity::Even,
        }
    }
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

/// Reduce x to (−L/2, L/2].
fn wrap(x: f64, period: f64) -> f64 {
    let r = x - period * (x / period).round();
    if r <= -0.5 * period {
        r + period
    } else {
        r
    }
}

impl PairKind {
    fn log_deriv(&self, x: f64) -> f64 {
        match self {
            PairKind::Constant => 0.0,
            PairKind::Power { lambda } => {
                if *lambda == 0.0 {
                    0.0
                } else {
                    lambda / x
                }
            }
            PairKind::ExpAbs { g } => g * sgn(x),
            PairKind::SinPower { lambda, period } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                let k = PI / period;
                lambda * k / (k * x).tan()
            }
            PairKind::SinhPower { lambda, a } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                lambda * a / (a * x).tanh()
            }
            PairKind::BesselToda { g, ell } => {
                let s = g.sqrt();
                let u = (-x.abs() / (2.0 * ell)).exp();
                -s * u * bessel_ratio(2.0 * s * ell * u) * sgn(x)
            }
            PairKind::Gaussian { base, kappa } => base.log_deriv(x) - kappa * x,
            PairKind::Quadrature { shape, .. } => shape.value(x),
        }
    }

    fn log_second(&self, x: f64) -> f64 {
        match self {
            PairKind::Constant => 0.0,
            PairKind::Power { lambda } => lambda * (lambda - 1.0) / (x * x),
            PairKind::ExpAbs { g } => g * g,
            PairKind::SinPower { lambda, period } => {
                let k = PI / period;
                let s = (k * x).sin();
                lambda * (lambda - 1.0) * k * k / (s * s) - lambda * lambda * k * k
            }
            PairKind::SinhPower { lambda, a } => {
                let s = (a * x).sinh();
                lambda * (lambda - 1.0) * a * a / (s * s) + lambda * lambda * a * a
            }
            PairKind::BesselToda { g, ell } => g * (-x.abs() / ell).exp(),
            PairKind::Gaussian { base, kappa } => {
                base.log_second(x) - kappa - 2.0 * kappa * x * base.log_deriv(x)
                    + kappa * kappa * x * x
            }
            PairKind::Quadrature { shape, .. } => {
                let s = shape.value(x);
                shape.derivative(x) + s * s
            }
        }
    }

    fn ln_abs(&self, x: f64) -> f64 {
        match self {
            PairKind::Constant => 0.0,
            PairKind::Power { lambda } => {
                if *lambda == 0.0 {
                    0.0
                } else {
                    lambda * x.abs().ln()
                }
            }
            PairKind::ExpAbs { g } => g * x.abs(),
            PairKind::SinPower { lambda, period } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                lambda * (PI * x / period).sin().abs().ln()
            }
            PairKind::SinhPower { lambda, a } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                lambda * (a * x).sinh().abs().ln()
            }
            PairKind::BesselToda { g, ell } => {
                let z = 2.0 * g.sqrt() * ell * (-x.abs() / (2.0 * ell)).exp();
                bessel_i0(z).ln()
            }
            PairKind::Gaussian { base, kappa } => base.ln_abs(x) - 0.5 * kappa * x * x,
            PairKind::Quadrature { shape, x0 } => integrate(|y| shape.value(y), *x0, x.abs()),
        }
    }

    /// ln|f(x+dx)| − ln|f(x)| without cancellation for small dx.
    fn ln_ratio(&self, x: f64, dx: f64) -> f64 {
        match self {
            PairKind::Constant => 0.0,
            PairKind::Power { lambda } => {
                if *lambda == 0.0 {
                    0.0
                } else {
                    lambda * (dx / x).ln_1p()
                }
            }
            PairKind::ExpAbs { g } => g * ((x + dx).abs() - x.abs()),
            PairKind::SinPower { lambda, period } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                let k = PI / period;
                let half = (0.5 * k * dx).sin();
                let r = -2.0 * half * half + (k * dx).sin() / (k * x).tan();
                lambda * r.ln_1p()
            }
            PairKind::SinhPower { lambda, a } => {
                if *lambda == 0.0 {
                    return 0.0;
                }
                let half = (0.5 * a * dx).sinh();
                let r = 2.0 * half * half + (a * dx).sinh() / (a * x).tanh();
                lambda * r.ln_1p()
            }
            PairKind::BesselToda { .. } => integrate(|y| self.log_deriv(y), x, x + dx),
            PairKind::Gaussian { base, kappa } => {
                base.ln_ratio(x, dx) - kappa * (x * dx + 0.5 * dx * dx)
            }
            PairKind::Quadrature { shape, .. } => integrate(|y| shape.value(y), x, x + dx),
        }
    }

    fn period(&self) -> Option<f64> {
        match self {
            PairKind::SinPower { period, .. } => Some(*period),
            PairKind::Gaussian { base, kappa } if *kappa == 0.0 => base.period(),
            PairKind::Quadrature { shape, .. } => shape.period(),
            _ => None,
        }
    }

    /// Distributional part of f″/f at the origin, if any.
    fn delta_at_origin(&self) -> Option<DeltaStrength> {
        match self {
            PairKind::Constant => None,
            PairKind::Power { lambda }
            | PairKind::SinPower { lambda, .. }
            | PairKind::SinhPower { lambda, .. } => {
                if *lambda == 1.0 {
                    Some(DeltaStrength::HardCore(2.0))
                } else {
                    None
                }
            }
            PairKind::ExpAbs { g } => {
                if *g == 0.0 {
                    None
                } else {
                    Some(DeltaStrength::Finite(2.0 * g))
                }
            }
            PairKind::BesselToda { g, ell } => {
                let s = g.sqrt();
                Some(DeltaStrength::Finite(
                    -2.0 * s * bessel_ratio(2.0 * s * ell),
                ))
            }
            PairKind::Gaussian { base, .. } => base.delta_at_origin(),
            PairKind::Quadrature { shape, .. } => shape.jump_at_origin().map(DeltaStrength::Finite),
        }
    }

    fn singular_at_origin(&self) -> bool {
        match self {
            PairKind::Constant => false,
            PairKind::Power { lambda }
            | PairKind::SinPower { lambda, .. }
            | PairKind::SinhPower { lambda, .. } => *lambda != 0.0,
            PairKind::ExpAbs { g } => *g != 0.0,
            PairKind::BesselToda { g, .. } => *g != 0.0,
            PairKind::Gaussian { base, .. } => base.singular_at_origin(),
            PairKind::Quadrature { shape, .. } => shape.singular_at_origin(),
        }
    }

    /// One-sided limit of f′/f at the origin, `side` = ±1.
    fn one_sided_log_deriv(&self, side: f64) -> f64 {
        match self {
            PairKind::Constant => 0.0,
            PairKind::Power { lambda }
            | PairKind::SinPower { lambda, .. }
            | PairKind::SinhPower { lambda, .. } => {
                if *lambda == 0.0 {
                    0.0
                } else {
                    side * f64::INFINITY
                }
            }
            PairKind::ExpAbs { g } => side * g,
            PairKind::BesselToda { g, ell } => {
                let s = g.sqrt();
                -side * s * bessel_ratio(2.0 * s * ell)
            }
            PairKind::Gaussian { base, .. } => base.one_sided_log_deriv(side),
            PairKind::Quadrature { shape, .. } => shape.one_sided(side),
        }
    }

    /// One-sided limit of (f′/f)·|x| at the origin.
    fn one_sided_scaled_log_deriv(&self, side: f64) -> f64 {
        match self {
            PairKind::Power { lambda }
            | PairKind::SinPower { lambda, .. }
            | PairKind::SinhPower { lambda, .. } => side * lambda,
            PairKind::Gaussian { base, .. } => base.one_sided_scaled_log_deriv(side),
            _ => 0.0,
        }
    }

    fn name(&self) -> String {
        match self {
            PairKind::Constant => "constant".into(),
            PairKind::Power { .. } => "power".into(),
            PairKind::ExpAbs { .. } => "exp-abs".into(),
            PairKind::SinPower { .. } => "sin-power".into(),
            PairKind::SinhPower { .. } => "sinh-power".into(),
            PairKind::BesselToda { .. } => "bessel-toda".into(),
            PairKind::Gaussian { base, .. } => format!("{}-gaussian", base.name()),
            PairKind::Quadrature { shape, .. } => format!("quadrature[{}]", shape.name()),
        }
    }

    fn collect_params(&self, out: &mut BTreeMap<String, f64>) {
        match self {
            PairKind::Constant => {}
            PairKind::Power { lambda } => {
                out.insert("lambda".into(), *lambda);
            }
            PairKind::ExpAbs { g } => {
                out.insert("g".into(), *g);
            }
            PairKind::SinPower { lambda, period } => {
                out.insert("lambda".into(), *lambda);
                out.insert("L".into(), *period);
            }
            PairKind::SinhPower { lambda, a } => {
                out.insert("lambda".into(), *lambda);
                out.insert("a".into(), *a);
            }
            PairKind::BesselToda { g, ell } => {
                out.insert("g".into(), *g);
                out.insert("ell".into(), *ell);
            }
            PairKind::Gaussian { base, kappa } => {
                base.collect_params(out);
                out.insert("kappa".into(), *kappa);
            }
            PairKind::Quadrature { x0, .. } => {
                out.insert("x0".into(), *x0);
            }
        }
    }
}

impl PairFamily {
    pub fn constant() -> Self {
        PairKind::Constant.into()
    }

    pub fn power(lambda: f64) -> Self {
        PairKind::Power { lambda }.into()
    }

    pub fn exp_abs(g: f64) -> Self {
        PairKind::ExpAbs { g }.into()
    }

    pub fn sin_power(lambda: f64, period: f64) -> Self {
        PairKind::SinPower { lambda, period }.into()
    }

    pub fn sinh_power(lambda: f64, a: f64) -> Self {
        PairKind::SinhPower { lambda, a }.into()
    }

    pub fn bessel_toda(g: f64, ell: f64) -> Self {
        PairKind::BesselToda { g, ell }.into()
    }

    /// Multiply by exp(−κx²/2); shifts f′/f by −κx.
    pub fn with_gaussian(self, kappa: f64) -> Self {
        if kappa == 0.0 {
            return self;
        }
        PairFamily {
            kind: PairKind::Gaussian {
                base: Box::new(self.kind),
                kappa,
            },
            parity: self.parity,
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        self.kind.collect_params(&mut out);
        out
    }

    /// f′/f, unchecked; undefined at singular points.
    pub fn log_deriv(&self, x: f64) -> f64 {
        self.kind.log_deriv(x)
    }

    /// f″/f without its delta part, unchecked.
    pub fn log_second(&self, x: f64) -> f64 {
        self.kind.log_second(x)
    }

    /// ln|f(x)|.
    pub fn ln_abs(&self, x: f64) -> f64 {
        self.kind.ln_abs(x)
    }

    pub fn ln_ratio(&self, x: f64, dx: f64) -> f64 {
        self.kind.ln_ratio(x, dx)
    }

    /// sgn f(x): for odd pair functions the sign flips across the origin.
    pub fn sign(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => 1.0,
            Parity::Odd => sgn(x),
        }
    }

    pub fn period(&self) -> Option<f64> {
        self.kind.period()
    }

    pub fn delta_at_origin(&self) -> Option<DeltaStrength> {
        self.kind.delta_at_origin()
    }

    /// Singular points within one period (or on the line).
    pub fn singular_points(&self) -> Vec<SingularPoint> {
        if self.kind.singular_at_origin() {
            vec![SingularPoint {
                x: 0.0,
                delta: self.delta_at_origin(),
            }]
        } else {
            Vec::new()
        }
    }

    pub fn is_singular(&self, x: f64) -> bool {
        if !self.kind.singular_at_origin() {
            return false;
        }
        let r = match self.period() {
            Some(l) => wrap(x, l),
            None => x,
        };
        r == 0.0
    }

    pub fn one_sided_log_deriv(&self, side: f64) -> f64 {
        self.kind.one_sided_log_deriv(side)
    }

    pub fn one_sided_scaled_log_deriv(&self, side: f64) -> f64 {
        self.kind.one_sided_scaled_log_deriv(side)
    }

    pub fn normalizable_on_line(&self) -> bool {
        fn decaying(kind: &PairKind) -> bool {
            match kind {
                PairKind::ExpAbs { g } => *g < 0.0,
                PairKind::Gaussian { kappa, .. } => *kappa > 0.0,
                _ => false,
            }
        }
        decaying(&self.kind)
    }

    /// Checked evaluation of (f′/f, f″/f).
    pub fn eval(&self, x: f64) -> Result<(f64, f64)> {
        if self.is_singular(x) {
            return Err(Error::SingularPoint {
                x,
                delta: self.delta_at_origin(),
            });
        }
        Ok((self.log_deriv(x), self.log_second(x)))
    }
}

/// Closed-form (f′/f, f″/f) at a nonsingular point.
pub fn eval_pair(pair: &PairFamily, x: f64) -> Result<(f64, f64)> {
    pair.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zoo() -> Vec<PairFamily> {
        vec![
            PairFamily::power(3.0),
            PairFamily::power(0.5),
            PairFamily::exp_abs(-1.3),
            PairFamily::sin_power(0.5, 2.0 * PI),
            PairFamily::sin_power(2.0, 3.0),
            PairFamily::sinh_power(1.5, 0.7),
            PairFamily::bessel_toda(1.0, 1.0),
            PairFamily::exp_abs(1.0).with_gaussian(0.5),
            PairFamily::sinh_power(2.0, 1.0).with_gaussian(0.3),
        ]
    }

    #[test]
    fn power_example() {
        let (d, s) = eval_pair(&PairFamily::power(3.0), 2.0).unwrap();
        assert!((d - 1.5).abs() < 1e-15);
        assert!((s - 1.5).abs() < 1e-15);
    }

    #[test]
    fn exp_abs_example() {
        let (d, s) = eval_pair(&PairFamily::exp_abs(2.0), -0.7).unwrap();
        assert_eq!(d, -2.0);
        assert_eq!(s, 4.0);
    }

    #[test]
    fn bessel_toda_example() {
        let (_, s) = eval_pair(&PairFamily::bessel_toda(1.0, 1.0), 0.5).unwrap();
        assert!((s - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn singular_point_error_carries_delta() {
        let err = eval_pair(&PairFamily::exp_abs(1.5), 0.0).unwrap_err();
        assert_eq!(
            err,
            Error::SingularPoint {
                x: 0.0,
                delta: Some(DeltaStrength::Finite(3.0))
            }
        );
        let err = eval_pair(&PairFamily::power(1.0), 0.0).unwrap_err();
        assert_eq!(
            err,
            Error::SingularPoint {
                x: 0.0,
                delta: Some(DeltaStrength::HardCore(2.0))
            }
        );
        // ring families are singular at every multiple of the period
        assert!(eval_pair(&PairFamily::sin_power(0.5, 2.0), 4.0).is_err());
        assert!(eval_pair(&PairFamily::constant(), 0.0).is_ok());
    }

    #[test]
    fn log_deriv_matches_finite_differences_of_ln_f() {
        // 4th-order central differences of ln|f|, independent of the closed forms
        for pair in zoo() {
            for &x in &[0.37, 1.1, -0.83, 2.4] {
                let h = 1e-3;
                let l = |t: f64| pair.ln_abs(t);
                let d1 = (-l(x + 2.0 * h) + 8.0 * l(x + h) - 8.0 * l(x - h) + l(x - 2.0 * h))
                    / (12.0 * h);
                let d2 = (-l(x + 2.0 * h) + 16.0 * l(x + h) - 30.0 * l(x) + 16.0 * l(x - h)
                    - l(x - 2.0 * h))
                    / (12.0 * h * h);
                let (ld, ls) = pair.eval(x).unwrap();
                assert!(
                    (d1 - ld).abs() < 1e-8 * (1.0 + ld.abs()),
                    "{} f'/f at {x}",
                    pair.name()
                );
                assert!(
                    (d2 + d1 * d1 - ls).abs() < 1e-5 * (1.0 + ls.abs()),
                    "{} f''/f at {x}",
                    pair.name()
                );
            }
        }
    }

    #[test]
    fn ln_ratio_matches_difference() {
        for pair in zoo() {
            for &x in &[0.5, -1.7] {
                let dx = 0.01;
                let direct = pair.ln_abs(x + dx) - pair.ln_abs(x);
                assert!(
                    (pair.ln_ratio(x, dx) - direct).abs() < 1e-12,
                    "{}",
                    pair.name()
                );
            }
        }
    }

    #[test]
    fn one_sided_limits() {
        let p = PairFamily::exp_abs(1.7);
        assert_eq!(
            p.one_sided_log_deriv(1.0) - p.one_sided_log_deriv(-1.0),
            3.4
        );
        let t = PairFamily::bessel_toda(1.0, 1.0);
        let jump = t.one_sided_log_deriv(1.0) - t.one_sided_log_deriv(-1.0);
        assert!((jump - t.delta_at_origin().unwrap().coefficient()).abs() < 1e-15);
        // the limit agrees with evaluation just off the origin
        assert!((t.log_deriv(1e-12) - t.one_sided_log_deriv(1.0)).abs() < 1e-10);
    }
}
