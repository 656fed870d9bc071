//! Catalog of exactly solvable and quasi-solvable models.
//!
//! Each entry is written in its physical form H = Σp²/2m + V with H Ψ₀ = E₀ Ψ₀.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AssembledPotential, DeltaTerm, Fn1, Fn2, Fn3, ModelSpec, Term, ThreeBody};
use crate::one_body::OneBodyProfile;
use crate::pair::{DeltaStrength, PairFamily, Parity};
use crate::units::{Geometry, PhysicalConstants, Statistics};

#[derive(Debug, Clone, Serialize)]
pub struct ParamSchema {
    pub name: &'static str,
    pub default: f64,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZooEntry {
    pub name: &'static str,
    pub geometry: &'static str,
    pub params: &'static [ParamSchema],
    pub e0: &'static str,
    pub citation: &'static str,
}

const fn p(name: &'static str, default: f64, description: &'static str) -> ParamSchema {
    ParamSchema {
        name,
        default,
        description,
    }
}

const LAMBDA: ParamSchema = p("lambda", 2.0, "pair exponent, >= 0");
const OMEGA: ParamSchema = p("omega", 1.0, "trap frequency");
const G: ParamSchema = p("g", 1.0, "contact coupling");
const BETA: ParamSchema = p("beta", 0.5, "linear prepotential shift");
const PERIOD: ParamSchema = p("L", 2.0 * PI, "ring circumference, > 0");
const SUTH_LAMBDA: ParamSchema = p("lambda", 0.5, "pair exponent in [0, 1]");

pub static ZOO: &[ZooEntry] = &[
    ZooEntry {
        name: "calogero",
        geometry: "line",
        params: &[LAMBDA],
        e0: "0",
        citation: "Calogero (1971)",
    },
    ZooEntry {
        name: "calogero-trapped",
        geometry: "line",
        params: &[LAMBDA, OMEGA],
        e0: "N hbar omega/2 + N(N-1) lambda hbar omega/2",
        citation: "Calogero (1971)",
    },
    ZooEntry {
        name: "tonks-girardeau-trapped",
        geometry: "line",
        params: &[OMEGA],
        e0: "N hbar omega/2 + N(N-1) hbar omega/2",
        citation: "Girardeau (1960)",
    },
    ZooEntry {
        name: "sutherland",
        geometry: "ring",
        params: &[SUTH_LAMBDA, PERIOD],
        e0: "(pi/L)^2 lambda^2 hbar^2 N(N^2-1)/6m",
        citation: "Sutherland (1971)",
    },
    ZooEntry {
        name: "lieb-liniger",
        geometry: "line",
        params: &[G],
        e0: "-hbar^2 g^2 N(N^2-1)/6m",
        citation: "Lieb & Liniger (1963)",
    },
    ZooEntry {
        name: "lieb-liniger-coulomb",
        geometry: "line",
        params: &[G, OMEGA],
        e0: "N hbar omega/2 - g^2 hbar^2 N(N^2-1)/6m",
        citation: "long-range Lieb-Liniger gas in a harmonic trap",
    },
    ZooEntry {
        name: "quadratic-lr-ll",
        geometry: "line",
        params: &[G, BETA],
        e0: "(hbar^2/m)[N(N-1) beta/2 - g^2 N(N^2-1)/6]",
        citation: "Calogero (1975)",
    },
    ZooEntry {
        name: "hybrid-lr-ll",
        geometry: "line",
        params: &[G, BETA, OMEGA],
        e0: "N hbar omega/2 + (hbar^2/m)[N(N-1) beta/2 - g^2 N(N^2-1)/6]",
        citation: "linearly shifted contact prepotential in a harmonic trap",
    },
    ZooEntry {
        name: "quadratic-pair",
        geometry: "line",
        params: &[p("g", -1.0, "contact coupling"), OMEGA],
        e0: "hbar omega/2 - g^2 hbar^2 N(N^2-1)/6m",
        citation: "hybrid model at beta = -m omega/(N hbar)",
    },
    ZooEntry {
        name: "hyperbolic",
        geometry: "line",
        params: &[
            LAMBDA,
            p("a", 1.0, "inverse range, > 0"),
            p("b", 0.5, "linear shift"),
        ],
        e0: "(hbar^2/m)[b N(N-1)/2 - lambda^2 a^2 N(N^2-1)/6]",
        citation: "Calogero (1975); Polychronakos (1992)",
    },
    ZooEntry {
        name: "sutherland-trig-trap",
        geometry: "ring",
        params: &[SUTH_LAMBDA, PERIOD, OMEGA],
        e0: "(pi/L)^2 lambda^2 hbar^2 N(N^2-1)/6m - N m omega^2 L^2/16 pi^2",
        citation: "Sutherland model with a periodic one-body factor",
    },
    ZooEntry {
        name: "toda-bessel",
        geometry: "line",
        params: &[
            p("g", 1.0, "Toda coupling, >= 0"),
            p("ell", 1.0, "decay length, > 0"),
        ],
        e0: "unknown",
        citation: "continuum Toda-like pair potential",
    },
    ZooEntry {
        name: "toda-bessel-trapped",
        geometry: "line",
        params: &[
            p("g", 1.0, "Toda coupling, >= 0"),
            p("ell", 1.0, "decay length, > 0"),
            OMEGA,
        ],
        e0: "unknown",
        citation: "continuum Toda-like pair potential in a harmonic trap",
    },
];

pub fn entry(name: &str) -> Result<&'static ZooEntry> {
    ZOO.iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))
}

struct Params {
    model: &'static str,
    values: BTreeMap<String, f64>,
}

impl Params {
    fn resolve(e: &'static ZooEntry, raw: &BTreeMap<String, f64>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for s in e.params {
            values.insert(s.name.to_string(), s.default);
        }
        for (k, v) in raw {
            if k == "zeta" {
                continue;
            }
            if !values.contains_key(k) {
                if k == "omega" && e.geometry == "ring" {
                    return Err(Error::Geometry(format!(
                        "{} lives on a ring; a harmonic trap is not periodic",
                        e.name
                    )));
                }
                return Err(Error::UnknownParameter {
                    model: e.name.to_string(),
                    name: k.clone(),
                });
            }
            if !v.is_finite() {
                return Err(out_of_range(k, "must be finite"));
            }
            values.insert(k.clone(), *v);
        }
        Ok(Params {
            model: e.name,
            values,
        })
    }

    fn get(&self, k: &str) -> f64 {
        self.values[k]
    }
}

fn out_of_range(name: &str, reason: &str) -> Error {
    Error::ParameterOutOfRange {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn require(cond: bool, name: &str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(out_of_range(name, reason))
    }
}

fn f1(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Fn1 {
    Arc::new(f)
}

fn f2(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Fn2 {
    Arc::new(f)
}

fn f3(f: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Fn3 {
    Arc::new(f)
}

fn harmonic_potential(mass: f64, omega: f64) -> Term<Fn1> {
    Term::new(
        "harmonic trap",
        "(1/2) m omega^2 x_i^2",
        "harmonic confinement",
        f1(move |x| 0.5 * mass * omega * omega * x * x),
    )
}

fn contact(strength: f64, citation: &str) -> DeltaTerm {
    DeltaTerm {
        strength: DeltaStrength::Finite(strength),
        formula: format!("{strength} delta(x_ij)"),
        citation: citation.into(),
    }
}

fn hard_core(strength: f64, citation: &str) -> DeltaTerm {
    DeltaTerm {
        strength: DeltaStrength::HardCore(strength),
        formula: format!("{strength} delta(x_ij)/|x_ij|"),
        citation: citation.into(),
    }
}

fn inverse_square(t: &mut AssembledPotential, k2: f64, lambda: f64, c: f64, citation: &str) {
    // (ħ²/m) λ(λ−1)/x² branch; λ = 1 is the hard-core delta branch
    if lambda == 1.0 {
        t.delta = Some(hard_core(2.0 * c, citation));
    } else if lambda != 0.0 {
        let a = c * lambda * (lambda - 1.0);
        let term = match k2 {
            k2 if k2 == 0.0 => Term::new(
                "inverse-square",
                "(hbar^2/m) lambda(lambda-1)/x_ij^2",
                citation,
                f1(move |r| a / (r * r)),
            ),
            k2 => {
                let k = k2.sqrt();
                Term::new(
                    "inverse-sine-square",
                    "(hbar^2/m)(pi/L)^2 lambda(lambda-1)/sin^2(pi x_ij/L)",
                    citation,
                    f1(move |r| {
                        let s = (k * r).sin();
                        a * k2 / (s * s)
                    }),
                )
            }
        };
        t.two_body.push(term);
    }
}

/// Parameter map from literal pairs.
pub fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Builds a catalog model. `params` may include `zeta` = ±1 for the statistics.
pub fn zoo_model(
    name: &str,
    params: &BTreeMap<String, f64>,
    n: usize,
    constants: PhysicalConstants,
) -> Result<ModelSpec> {
    let e = entry(name)?;
    if n < 2 {
        return Err(out_of_range("N", "need at least two particles"));
    }
    let statistics = match params.get("zeta") {
        Some(&z) if z == 1.0 => Statistics::Boson,
        Some(&z) if z == -1.0 => Statistics::Fermion,
        Some(&z) => return Err(out_of_range("zeta", &format!("must be +1 or -1, got {z}"))),
        None => Statistics::Boson,
    };
    let pr = Params::resolve(e, params)?;
    let (hbar, mass) = (constants.hbar, constants.mass);
    let c = constants.hbar2_over_m();
    let nf = n as f64;
    let n3 = nf * (nf * nf - 1.0) / 6.0;
    let pairs = nf * (nf - 1.0) / 2.0;
    let mut t = AssembledPotential::new(mass);
    let mut geometry = Geometry::Line;
    let mut one_body = OneBodyProfile::zero(constants);
    let mut e0 = None;
    let pair;
    let mut citations = vec![e.citation.to_string()];

    match pr.model {
        "calogero" | "calogero-trapped" => {
            let lambda = pr.get("lambda");
            require(lambda >= 0.0, "lambda", "must be >= 0")?;
            pair = PairFamily::power(lambda);
            inverse_square(&mut t, 0.0, lambda, c, "Calogero (1971)");
            if pr.model == "calogero" {
                e0 = Some(0.0);
            } else {
                let w = pr.get("omega");
                t.external = Some(harmonic_potential(mass, w));
                one_body = OneBodyProfile::harmonic(w, constants);
                e0 = Some(nf * hbar * w / 2.0 + pairs * lambda * hbar * w);
            }
        }
        "tonks-girardeau-trapped" => {
            let w = pr.get("omega");
            pair = PairFamily::power(1.0);
            t.delta = Some(hard_core(2.0 * c, "Girardeau (1960)"));
            t.external = Some(harmonic_potential(mass, w));
            one_body = OneBodyProfile::harmonic(w, constants);
            e0 = Some(nf * hbar * w / 2.0 + pairs * hbar * w);
        }
        "sutherland" | "sutherland-trig-trap" => {
            let lambda = pr.get("lambda");
            let l = pr.get("L");
            require(
                (0.0..=1.0).contains(&lambda),
                "lambda",
                "must lie in [0, 1]",
            )?;
            require(l > 0.0, "L", "must be > 0")?;
            geometry = Geometry::Ring { circumference: l };
            let k = PI / l;
            pair = PairFamily::sin_power(lambda, l);
            inverse_square(&mut t, k * k, lambda, c, "Sutherland (1971)");
            let base = k * k * lambda * lambda * c * n3;
            if pr.model == "sutherland" {
                e0 = Some(base);
            } else {
                let w = pr.get("omega");
                one_body = OneBodyProfile::trig_trap(w, l, constants);
                let a = hbar * w / 2.0;
                let b = mass * w * w * l * l / (16.0 * PI * PI);
                t.external = Some(Term::new(
                    "trigonometric trap",
                    "-(hbar omega/2) cos(2 pi x_i/L) - (m omega^2 L^2/16 pi^2) cos(4 pi x_i/L)",
                    "periodic one-body factor",
                    f1(move |x| -a * (2.0 * k * x).cos() - b * (4.0 * k * x).cos()),
                ));
                let s = lambda * hbar * w;
                t.cross = Some(Term::new(
                    "trap-induced pair term",
                    "-lambda hbar omega cos(pi x_ij/L) cos(2 pi xbar_ij/L)",
                    "periodic one-body factor",
                    f2(move |xi, xj| -s * (k * (xi - xj)).cos() * (k * (xi + xj)).cos()),
                ));
                e0 = Some(base - nf * b);
                citations.push("Sutherland (1971)".into());
            }
        }
        "lieb-liniger" => {
            let g = pr.get("g");
            pair = PairFamily::exp_abs(g);
            if g != 0.0 {
                t.delta = Some(contact(2.0 * g * c, "Lieb & Liniger (1963)"));
            }
            e0 = Some(-g * g * c * n3);
        }
        "lieb-liniger-coulomb" => {
            let g = pr.get("g");
            let w = pr.get("omega");
            pair = PairFamily::exp_abs(g);
            one_body = OneBodyProfile::harmonic(w, constants);
            t.external = Some(harmonic_potential(mass, w));
            if g != 0.0 {
                t.delta = Some(contact(2.0 * g * c, "Lieb & Liniger (1963)"));
                let s = g * hbar * w;
                t.cross = Some(Term::new(
                    "trap-induced Coulomb term",
                    "-g (m omega/hbar)(hbar^2/m) |x_ij|",
                    "long-range Lieb-Liniger gas",
                    f2(move |xi, xj| -s * (xi - xj).abs()),
                ));
            }
            e0 = Some(nf * hbar * w / 2.0 - g * g * c * n3);
        }
        "quadratic-lr-ll" | "hybrid-lr-ll" | "quadratic-pair" => {
            let g = pr.get("g");
            let w = if pr.model == "quadratic-lr-ll" {
                0.0
            } else {
                pr.get("omega")
            };
            let beta = if pr.model == "quadratic-pair" {
                require(w != 0.0, "omega", "must be nonzero")?;
                -mass * w / (nf * hbar)
            } else {
                pr.get("beta")
            };
            // β is measured in inverse length², V = ζħ(g sgn x − βx)
            pair = PairFamily::exp_abs(g).with_gaussian(beta);
            if g != 0.0 {
                t.delta = Some(contact(2.0 * g * c, "Lieb & Liniger (1963)"));
            }
            let mw = mass * w / hbar;
            let lin = -c * g * (nf * beta + mw);
            let quad = c * beta * (nf * beta / 2.0 + mw);
            if pr.model == "quadratic-pair" {
                t.two_body.push(Term::new(
                    "quadratic pair attraction",
                    "-(m omega^2/2N) x_ij^2",
                    "hybrid model at beta = -m omega/(N hbar)",
                    f1(move |r| quad * r * r),
                ));
            } else {
                t.two_body.push(Term::new(
                    "long-range pair potential",
                    "(hbar^2/m)[-g(N beta + m omega/hbar)|x_ij| + beta(N beta/2 + m omega/hbar) x_ij^2]",
                    "Calogero (1975)",
                    f1(move |r| lin * r.abs() + quad * r * r),
                ));
            }
            if w != 0.0 {
                t.external = Some(harmonic_potential(mass, w));
                one_body = OneBodyProfile::harmonic(w, constants);
            }
            e0 = Some(nf * hbar * w / 2.0 + c * (pairs * beta - g * g * n3));
        }
        "hyperbolic" => {
            let lambda = pr.get("lambda");
            let a = pr.get("a");
            let b = pr.get("b");
            require(lambda >= 0.0, "lambda", "must be >= 0")?;
            require(a > 0.0, "a", "must be > 0")?;
            pair = PairFamily::sinh_power(lambda, a).with_gaussian(b);
            if lambda == 1.0 {
                t.delta = Some(hard_core(2.0 * c, "Calogero (1975)"));
            }
            let s = c * a * a * lambda * (lambda - 1.0);
            let u = c * lambda * nf * a * b;
            let q = c * nf * b * b / 2.0;
            t.two_body.push(Term::new(
                "hyperbolic pair potential",
                "(hbar^2/m)[a^2 lambda(lambda-1)/sinh^2(a x_ij) - lambda N a b x_ij coth(a x_ij) + N b^2 x_ij^2/2]",
                "Calogero (1975); Polychronakos (1992)",
                f1(move |r| {
                    let sh = (a * r).sinh();
                    let mut v = -u * r / (a * r).tanh() + q * r * r;
                    if s != 0.0 {
                        v += s / (sh * sh);
                    }
                    v
                }),
            ));
            e0 = Some(c * (b * pairs - lambda * lambda * a * a * n3));
        }
        "toda-bessel" | "toda-bessel-trapped" => {
            let g = pr.get("g");
            let ell = pr.get("ell");
            require(g >= 0.0, "g", "must be >= 0")?;
            require(ell > 0.0, "ell", "must be > 0")?;
            let pf = PairFamily::bessel_toda(g, ell);
            pair = pf.clone();
            t.two_body.push(Term::new(
                "Toda pair potential",
                "(hbar^2/m) g exp(-|x_ij|/ell)",
                "continuum Toda-like pair potential",
                f1(move |r| c * g * (-r.abs() / ell).exp()),
            ));
            if let Some(d) = pf.delta_at_origin() {
                t.delta = Some(contact(
                    c * d.coefficient(),
                    "continuum Toda-like pair potential",
                ));
            }
            let h2 = hbar * hbar;
            let lf = pf.clone();
            t.three_body = ThreeBody::Full(Term::new(
                "three-body",
                "V_ij V_jk + V_jk V_ki + V_ki V_ij, V = zeta hbar f'/f",
                "parent Hamiltonian of the Jastrow state",
                f3(move |r1, r2, r3| {
                    let (a, b, d) = (lf.log_deriv(r1), lf.log_deriv(r2), lf.log_deriv(r3));
                    h2 * (a * b + b * d + d * a)
                }),
            ));
            if pr.model == "toda-bessel-trapped" {
                let w = pr.get("omega");
                t.external = Some(harmonic_potential(mass, w));
                one_body = OneBodyProfile::harmonic(w, constants);
                let lf = pf.clone();
                let s = hbar * w;
                t.cross = Some(Term::new(
                    "trap-induced pair term",
                    "-(hbar omega) x_ij f'/f(x_ij)",
                    "parent Hamiltonian of the Jastrow state",
                    f2(move |xi, xj| {
                        let r = xi - xj;
                        -s * r * lf.log_deriv(r)
                    }),
                ));
            }
        }
        other => return Err(Error::UnknownModel(other.to_string())),
    }

    let parity = if statistics == Statistics::Fermion {
        Parity::Odd
    } else {
        Parity::Even
    };
    Ok(ModelSpec {
        name: e.name.to_string(),
        params: pr.values,
        n,
        constants,
        statistics,
        geometry,
        pair: pair.with_parity(parity),
        one_body,
        terms: t,
        e0,
        e0_formula: if e.e0 == "unknown" {
            None
        } else {
            Some(e.e0.to_string())
        },
        citations,
        dropped: Vec::new(),
    })
}

/// Catalog records for every registered model, at its default parameters.
pub fn catalog(n: usize, constants: PhysicalConstants) -> Result<Vec<crate::model::CatalogEntry>> {
    ZOO.iter()
        .map(|e| zoo_model(e.name, &BTreeMap::new(), n, constants).map(|m| m.catalog_entry()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies_from_examples() {
        let c = PhysicalConstants::default();
        let m = zoo_model(
            "lieb-liniger-coulomb",
            &params(&[("g", 1.0), ("omega", 1.0)]),
            3,
            c,
        )
        .unwrap();
        assert!((m.e0.unwrap() + 2.5).abs() < 1e-15);
        let m = zoo_model(
            "calogero-trapped",
            &params(&[("lambda", 2.0), ("omega", 1.0)]),
            3,
            c,
        )
        .unwrap();
        assert!((m.e0.unwrap() - 7.5).abs() < 1e-15);
        let m = zoo_model(
            "sutherland",
            &params(&[("lambda", 0.5), ("L", 2.0 * PI)]),
            3,
            c,
        )
        .unwrap();
        assert!((m.e0.unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn free_calogero_has_no_terms() {
        let m = zoo_model(
            "calogero",
            &params(&[("lambda", 0.0)]),
            4,
            PhysicalConstants::default(),
        )
        .unwrap();
        assert!(
            m.terms.two_body.is_empty() && m.terms.delta.is_none() && m.terms.external.is_none()
        );
        assert_eq!(m.terms.potential_energy(&[0.1, 0.5, -2.0, 3.0]), 0.0);
    }

    #[test]
    fn errors() {
        let c = PhysicalConstants::default();
        assert!(matches!(
            zoo_model("nope", &BTreeMap::new(), 3, c),
            Err(Error::UnknownModel(_))
        ));
        assert!(matches!(
            zoo_model("calogero", &params(&[("lambda", -1.0)]), 3, c),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            zoo_model("sutherland", &params(&[("omega", 1.0)]), 3, c),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            zoo_model("lieb-liniger", &params(&[("beta", 1.0)]), 3, c),
            Err(Error::UnknownParameter { .. })
        ));
    }

    #[test]
    fn catalog_has_every_model_and_round_trips() {
        let cat = catalog(3, PhysicalConstants::default()).unwrap();
        assert_eq!(cat.len(), 13);
        let json = serde_json::to_string(&cat).unwrap();
        let back: Vec<crate::model::CatalogEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cat);
        assert!(json.contains("\"N\":3"));
    }

    #[test]
    fn ring_models_are_periodic() {
        let c = PhysicalConstants::default();
        for name in ["sutherland", "sutherland-trig-trap"] {
            let m = zoo_model(name, &BTreeMap::new(), 3, c).unwrap();
            let l = m.geometry.period().unwrap();
            for &x in &[0.3, 1.7, -2.2] {
                assert!((m.pair.log_deriv(x + l) - m.pair.log_deriv(x)).abs() < 1e-12);
                assert!((m.one_body.w(x + l) - m.one_body.w(x)).abs() < 1e-12);
                if let Some(u) = &m.terms.external {
                    assert!(((u.eval)(x + l) - (u.eval)(x)).abs() < 1e-12);
                }
            }
        }
    }
}
