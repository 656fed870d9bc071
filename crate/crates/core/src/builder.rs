//! Construction maps between pair functions, prepotentials, one-body
//! profiles and assembled parent Hamiltonians.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{AssembledPotential, DeltaTerm, Fn1, ModelSpec, Term, ThreeBody};
use crate::one_body::OneBodyProfile;
use crate::pair::{DeltaStrength, PairFamily, PairKind, Parity};
use crate::prepotential::{Prepotential, PrepotentialShape};
use crate::units::{Geometry, PhysicalConstants, Statistics};

/// V = ζħ f′/f.
pub fn prepotential_from_pair(
    pair: &PairFamily,
    statistics: Statistics,
    constants: &PhysicalConstants,
) -> Prepotential {
    Prepotential::new(shape_of(&pair.kind), statistics, constants)
}

fn shape_of(kind: &PairKind) -> PrepotentialShape {
    match kind {
        PairKind::Constant => PrepotentialShape::Zero,
        PairKind::Power { lambda } => PrepotentialShape::Rational { lambda: *lambda },
        PairKind::ExpAbs { g } => PrepotentialShape::Sgn { g: *g },
        PairKind::SinPower { lambda, period } => PrepotentialShape::Cot {
            lambda: *lambda,
            period: *period,
        },
        PairKind::SinhPower { lambda, a } => PrepotentialShape::Coth {
            lambda: *lambda,
            a: *a,
        },
        PairKind::BesselToda { g, ell } => PrepotentialShape::Toda { g: *g, ell: *ell },
        PairKind::Gaussian { base, kappa } => shape_of(base).shifted(*kappa),
        PairKind::Quadrature { shape, .. } => shape.clone(),
    }
}

fn kind_of(shape: &PrepotentialShape) -> Option<PairKind> {
    Some(match shape {
        PrepotentialShape::Zero => PairKind::Constant,
        PrepotentialShape::Rational { lambda } => PairKind::Power { lambda: *lambda },
        PrepotentialShape::Sgn { g } => PairKind::ExpAbs { g: *g },
        PrepotentialShape::Cot { lambda, period } => PairKind::SinPower {
            lambda: *lambda,
            period: *period,
        },
        PrepotentialShape::Coth { lambda, a } => PairKind::SinhPower {
            lambda: *lambda,
            a: *a,
        },
        PrepotentialShape::Toda { g, ell } => PairKind::BesselToda { g: *g, ell: *ell },
        PrepotentialShape::Shifted { base, beta } => PairKind::Gaussian {
            base: Box::new(kind_of(base)?),
            kappa: *beta,
        },
        PrepotentialShape::Custom(_) => return None,
    })
}

fn parity_of(v: &Prepotential) -> Parity {
    match v.statistics {
        Statistics::Boson => Parity::Even,
        Statistics::Fermion => Parity::Odd,
    }
}

/// f = exp(∫ V/(ζħ)). Registered shapes map back to their closed forms; other
/// shapes are integrated numerically from the default reference point.
pub fn pair_from_prepotential(v: &Prepotential) -> Result<PairFamily> {
    match kind_of(&v.shape) {
        Some(kind) => Ok(PairFamily {
            kind,
            parity: parity_of(v),
        }),
        None => pair_from_prepotential_quadrature(v, None),
    }
}

/// Reference point for the integration constant: 1 on the line, L/4 on a ring.
pub fn default_reference(v: &Prepotential) -> f64 {
    match v.period() {
        Some(l) => 0.25 * l,
        None => 1.0,
    }
}

/// Always integrates numerically: ln|f(x)| = ∫_{x₀}^{|x|} V/(ζħ) dy.
pub fn pair_from_prepotential_quadrature(v: &Prepotential, x0: Option<f64>) -> Result<PairFamily> {
    let x0 = x0.unwrap_or_else(|| default_reference(v));
    if v.shape.pole_at_origin() {
        let upper = v.period().unwrap_or(f64::INFINITY);
        if x0 <= 0.0 {
            return Err(Error::NonIntegrable {
                from: x0,
                to: 1.0,
                at: 0.0,
            });
        }
        if x0 >= upper {
            return Err(Error::NonIntegrable {
                from: x0,
                to: 0.5 * upper,
                at: upper,
            });
        }
    }
    Ok(PairFamily {
        kind: PairKind::Quadrature {
            shape: v.shape.clone(),
            x0,
        },
        parity: parity_of(v),
    })
}

/// U = W² − (ħ/√(2m))W′.
pub fn riccati_external(one_body: &OneBodyProfile) -> Result<Fn1> {
    if !one_body.has_w() {
        return Err(Error::Invalid(
            "superpotential W and W' are required for the Riccati map".into(),
        ));
    }
    let p = *one_body;
    Ok(Arc::new(move |x| p.u_from_w(x)))
}

pub const ZERO_SUM_TOL: f64 = 1e-12;

/// V_ijk = V(r₁)V(r₂) + V(r₂)V(r₃) + V(r₃)V(r₁) on a zero-sum triple.
pub fn three_body(v: &Prepotential, r1: f64, r2: f64, r3: f64) -> Result<f64> {
    if (r1 + r2 + r3).abs() > ZERO_SUM_TOL {
        return Err(Error::NotZeroSum { r1, r2, r3 });
    }
    for r in [r1, r2, r3] {
        if v.is_singular(r) {
            return Err(Error::SingularPoint {
                x: r,
                delta: v.delta_at_origin(),
            });
        }
    }
    let (a, b, c) = (v.value(r1), v.value(r2), v.value(r3));
    Ok(a * b + b * c + c * a)
}

/// The two-body function Q of a reducible prepotential.
#[derive(Debug, Clone, PartialEq)]
pub struct QFunction {
    pub v: Prepotential,
}

impl QFunction {
    pub fn eval(&self, x: f64) -> f64 {
        self.v
            .reduced_q(x)
            .expect("reducibility checked at construction")
    }
}

pub fn reduce_three_to_two(v: &Prepotential) -> Result<QFunction> {
    if !v.shape.is_reducible() {
        return Err(Error::IrreducibleThreeBody(v.name()));
    }
    Ok(QFunction { v: v.clone() })
}

/// Q = ½[αβ − αV′ − V²] for V = α ζ_W(x) + βx (smooth members only).
pub fn weierstrass_q(alpha: f64, beta: f64, v: &Prepotential, x: f64) -> f64 {
    let val = v.value(x);
    0.5 * (alpha * beta - alpha * v.derivative(x) - val * val)
}

/// V → V − βx with Q → Q + βxV − β²x²/2 (β in units of 1/length², V in ζħ units).
pub fn linear_shift(v: &Prepotential, beta: f64) -> (Prepotential, Option<QFunction>) {
    let shifted = Prepotential {
        shape: v.shape.clone().shifted(beta),
        ..v.clone()
    };
    let q = reduce_three_to_two(&shifted).ok();
    (shifted, q)
}

fn check_geometry(pair: &PairFamily, one_body: &OneBodyProfile, geometry: &Geometry) -> Result<()> {
    if let Geometry::Ring { circumference } = geometry {
        let ok = |p: Option<f64>| {
            p.is_some_and(|p| ((circumference / p).round() * p - circumference).abs() < 1e-12)
        };
        if !matches!(pair.kind, PairKind::Constant) && !ok(pair.period()) {
            return Err(Error::Geometry(format!(
                "pair function {} is not periodic in L = {circumference}",
                pair.name()
            )));
        }
        if !one_body.is_zero() && !ok(one_body.period()) {
            return Err(Error::Geometry(format!(
                "one-body profile {} is not periodic in L = {circumference}",
                one_body.name()
            )));
        }
    }
    Ok(())
}

fn base_spec(
    name: String,
    pair: &PairFamily,
    one_body: &OneBodyProfile,
    statistics: Statistics,
    n: usize,
    constants: PhysicalConstants,
    geometry: Geometry,
    terms: AssembledPotential,
) -> ModelSpec {
    let mut params: BTreeMap<String, f64> = pair.params();
    params.extend(one_body.params());
    ModelSpec {
        name,
        params,
        n,
        constants,
        statistics,
        geometry,
        pair: pair.clone(),
        one_body: *one_body,
        terms,
        e0: Some(0.0),
        e0_formula: Some("0 (parent Hamiltonian annihilates the Jastrow state)".into()),
        citations: vec!["parent Hamiltonian of a Jastrow state".into()],
        dropped: Vec::new(),
    }
}

/// Parent Hamiltonian with H Ψ₀ = 0, in the f-form: two-body (ħ²/m) f″/f,
/// triple products of f′/f, and the trap cross term (ħ²/m)(v′_i − v′_j) f′/f.
pub fn assemble(
    pair: &PairFamily,
    one_body: &OneBodyProfile,
    statistics: Statistics,
    n: usize,
    constants: PhysicalConstants,
    geometry: Geometry,
) -> Result<ModelSpec> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "N".into(),
            reason: "need at least two particles".into(),
        });
    }
    check_geometry(pair, one_body, &geometry)?;
    if !one_body.has_v() {
        return Err(Error::Invalid(
            "assemble needs the v-form of the one-body profile".into(),
        ));
    }
    let c = constants.hbar2_over_m();
    let mut t = AssembledPotential::new(constants.mass);
    if !one_body.is_zero() {
        let p = *one_body;
        t.external = Some(Term::new(
            "external",
            "(hbar^2/2m)[(v')^2 + v'']",
            "Riccati potential of the one-body factor",
            Arc::new(move |x| p.u_from_v(x)),
        ));
    }
    if !matches!(pair.kind, PairKind::Constant) {
        let f = pair.clone();
        t.two_body.push(Term::new(
            "two-body",
            "(hbar^2/m) f''/f (x_ij)",
            "parent Hamiltonian of a Jastrow state",
            Arc::new(move |r| c * f.log_second(r)),
        ));
        if let Some(d) = pair.delta_at_origin() {
            t.delta = Some(DeltaTerm {
                strength: d.scaled(c),
                formula: match d {
                    DeltaStrength::Finite(k) => format!("(hbar^2/m) {k} delta(x_ij)"),
                    DeltaStrength::HardCore(k) => format!("(hbar^2/m) {k} delta(x_ij)/|x_ij|"),
                },
                citation: "delta part of f''/f".into(),
            });
        }
        if n >= 3 {
            let f = pair.clone();
            let h2 = constants.hbar * constants.hbar;
            t.three_body = ThreeBody::Full(Term::new(
                "three-body",
                "hbar^2 [L_ij L_jk + L_jk L_ki + L_ki L_ij], L = f'/f",
                "parent Hamiltonian of a Jastrow state",
                Arc::new(move |r1, r2, r3| {
                    let (a, b, d) = (f.log_deriv(r1), f.log_deriv(r2), f.log_deriv(r3));
                    h2 * (a * b + b * d + d * a)
                }),
            ));
        }
        if !one_body.is_zero() {
            let f = pair.clone();
            let p = *one_body;
            t.cross = Some(Term::new(
                "cross",
                "(hbar^2/m)(v'_i - v'_j) f'/f (x_ij)",
                "trap embedding of the Jastrow state",
                Arc::new(move |xi, xj| c * (p.v_prime(xi) - p.v_prime(xj)) * f.log_deriv(xi - xj)),
            ));
        }
    }
    let name = format!("phj[{}|{}]", pair.name(), one_body.name());
    Ok(base_spec(
        name, pair, one_body, statistics, n, constants, geometry, t,
    ))
}

/// The same parent Hamiltonian written through V and W, with the three-body
/// term reduced to (N − 2) Σ Q_ij. Requires a reducible prepotential.
pub fn assemble_reduced(
    v: &Prepotential,
    one_body: &OneBodyProfile,
    n: usize,
    constants: PhysicalConstants,
    geometry: Geometry,
) -> Result<ModelSpec> {
    let q = reduce_three_to_two(v)?;
    let pair = pair_from_prepotential(v)?;
    check_geometry(&pair, one_body, &geometry)?;
    let riccati = riccati_external(one_body)?;
    let m = constants.mass;
    let zh = v.zeta() * v.hbar;
    let mut t = AssembledPotential::new(m);
    if !one_body.is_zero() {
        t.external = Some(Term::new(
            "external",
            "W^2 - (hbar/sqrt(2m)) W'",
            "Riccati equation",
            riccati,
        ));
    }
    let vv = v.clone();
    t.two_body.push(Term::new(
        "two-body",
        "(1/m)(zeta hbar V' + V^2)",
        "exchange-operator Hamiltonian",
        Arc::new(move |r| {
            let val = vv.value(r);
            (zh * vv.derivative(r) + val * val) / m
        }),
    ));
    if let Some(d) = v.delta_at_origin() {
        t.delta = Some(DeltaTerm {
            strength: d.scaled(zh / m),
            formula: "(zeta hbar/m) [V] delta(x_ij)".into(),
            citation: "delta part of V'".into(),
        });
    } else if let Some(d) = pair.delta_at_origin() {
        t.delta = Some(DeltaTerm {
            strength: d.scaled(constants.hbar2_over_m()),
            formula: "hard core".into(),
            citation: "delta part of f''/f".into(),
        });
    }
    if n >= 3 {
        let qq = q.clone();
        t.three_body = ThreeBody::Reduced {
            q: Term::new(
                "reduced three-body",
                "Q(x_ij)",
                "three-to-two reduction",
                Arc::new(move |r| qq.eval(r)),
            ),
            multiplicity: n - 2,
        };
    }
    if !one_body.is_zero() {
        let vv = v.clone();
        let p = *one_body;
        let s = v.zeta() * (2.0 / m).sqrt();
        t.cross = Some(Term::new(
            "cross",
            "-zeta sqrt(2/m) V_ij (W_i - W_j)",
            "trap embedding",
            Arc::new(move |xi, xj| -s * vv.value(xi - xj) * (p.w(xi) - p.w(xj))),
        ));
    }
    let name = format!("phj-reduced[{}|{}]", v.name(), one_body.name());
    Ok(base_spec(
        name,
        &pair,
        one_body,
        v.statistics,
        n,
        constants,
        geometry,
        t,
    ))
}

/// Coefficient b of b|r| in the total pair function a + b|r| + c r², from an
/// exact three-point solve at r = 1, 2, 3. Meaningful when the pair part of
/// the model has that form (contact-family prepotentials with a linear trap).
pub fn coulomb_coefficient(model: &ModelSpec) -> f64 {
    let t = &model.terms;
    let p = |r: f64| {
        let cross = t
            .cross
            .as_ref()
            .map_or(0.0, |c| (c.eval)(0.5 * r, -0.5 * r));
        t.two_body_at(r) + t.reduced_at(r) + cross
    };
    let (p1, p2, p3) = (p(1.0), p(2.0), p(3.0));
    // second differences remove a, the remaining 2x2 system fixes b
    let c = 0.5 * (p3 - 2.0 * p2 + p1);
    p2 - p1 - 3.0 * c
}
