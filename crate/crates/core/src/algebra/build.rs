//! Generalized momenta, invariants and the reference operators they are
//! compared against.

use std::time::Instant;

use serde::Serialize;

use super::coeff::RationalCoeff;
use super::expr::OperatorExpr;
use super::perm::Perm;
use super::poly::{imag_unit, int, ratio, Scalar, BETA, HBAR, LAMBDA, MASS, NPARAM, OMEGA};
use crate::error::{Error, Result};

/// One term c·param·x^k of a Laurent polynomial in a single variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentTerm {
    pub power: i32,
    pub coeff: i64,
    pub param: Option<usize>,
}

/// A univariate Laurent polynomial with parameter-monomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Laurent {
    pub name: String,
    pub terms: Vec<LaurentTerm>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            name: "zero".into(),
            terms: Vec::new(),
        }
    }

    /// λ/x.
    pub fn rational() -> Self {
        Laurent {
            name: "rational".into(),
            terms: vec![LaurentTerm {
                power: -1,
                coeff: 1,
                param: Some(LAMBDA),
            }],
        }
    }

    /// λ/x − βx.
    pub fn rational_linear() -> Self {
        Laurent {
            name: "rational-linear".into(),
            terms: vec![
                LaurentTerm {
                    power: -1,
                    coeff: 1,
                    param: Some(LAMBDA),
                },
                LaurentTerm {
                    power: 1,
                    coeff: -1,
                    param: Some(BETA),
                },
            ],
        }
    }

    /// ωx, the harmonic superpotential in units of √(m/2).
    pub fn harmonic() -> Self {
        Laurent {
            name: "harmonic".into(),
            terms: vec![LaurentTerm {
                power: 1,
                coeff: 1,
                param: Some(OMEGA),
            }],
        }
    }

    pub fn family(name: &str) -> Result<Self> {
        match name {
            "rational" => Ok(Self::rational()),
            "rational-linear" => Ok(Self::rational_linear()),
            "zero" | "free" => Ok(Self::zero()),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.power.rem_euclid(2) == 1 || t.coeff == 0)
    }

    pub fn is_linear(&self) -> bool {
        self.terms.iter().all(|t| t.power == 1 || t.coeff == 0)
    }

    pub fn derivative(&self) -> Laurent {
        Laurent {
            name: format!("{}'", self.name),
            terms: self
                .terms
                .iter()
                .filter(|t| t.power != 0)
                .map(|t| LaurentTerm {
                    power: t.power - 1,
                    coeff: t.coeff * t.power as i64,
                    param: t.param,
                })
                .collect(),
        }
    }

    fn coefficient(&self, n: usize, t: &LaurentTerm) -> RationalCoeff {
        let c = RationalCoeff::scalar(n, int(t.coeff));
        match t.param {
            Some(k) => c.mul(&RationalCoeff::param(n, k)),
            None => c,
        }
    }

    /// The function evaluated at x_i − x_j.
    pub fn at_pair(&self, n: usize, i: usize, j: usize) -> RationalCoeff {
        let diff = RationalCoeff::x(n, i).sub(&RationalCoeff::x(n, j));
        self.sum_terms(n, |t| {
            if t.power < 0 {
                RationalCoeff::inverse_difference(n, i, j, (-t.power) as u16)
            } else {
                diff.pow(t.power as u32)
            }
        })
    }

    /// The function evaluated at x_i.
    pub fn at_site(&self, n: usize, i: usize) -> Result<RationalCoeff> {
        if self.terms.iter().any(|t| t.power < 0) {
            return Err(Error::Invalid(
                "one-body Laurent terms must be polynomial".into(),
            ));
        }
        Ok(self.sum_terms(n, |t| RationalCoeff::x(n, i).pow(t.power as u32)))
    }

    fn sum_terms(&self, n: usize, base: impl Fn(&LaurentTerm) -> RationalCoeff) -> RationalCoeff {
        let parts: Vec<RationalCoeff> = self
            .terms
            .iter()
            .map(|t| self.coefficient(n, t).mul(&base(t)))
            .collect();
        RationalCoeff::sum(&parts).unwrap_or_else(|| RationalCoeff::zero(n))
    }
}

fn check_odd(v: &Laurent) -> Result<()> {
    if v.is_odd() {
        Ok(())
    } else {
        Err(Error::NotOdd(v.name.clone()))
    }
}

/// π_i = p_i + i Σ_{j≠i} V(x_ij) M_ij.
pub fn build_pi(i: usize, v: &Laurent, n: usize) -> Result<OperatorExpr> {
    check_odd(v)?;
    let parts: Vec<OperatorExpr> = (0..n)
        .filter(|&j| j != i)
        .map(|j| OperatorExpr::m(n, i, j).left_mul(&v.at_pair(n, i, j).scale(&imag_unit())))
        .chain(std::iter::once(OperatorExpr::p(n, i)))
        .collect();
    Ok(OperatorExpr::sum(n, &parts))
}

/// √(2m) a_i = π_i − i m w(x_i), with W = √(m/2) w.
pub fn build_scaled_a(
    i: usize,
    v: &Laurent,
    w: &Laurent,
    n: usize,
    dagger: bool,
) -> Result<OperatorExpr> {
    if !w.is_linear() {
        return Err(Error::NonlinearSuperpotential);
    }
    let sign = if dagger { 1 } else { -1 };
    let shift = w
        .at_site(n, i)?
        .mul(&RationalCoeff::param(n, MASS))
        .scale(&(imag_unit() * int(sign)));
    Ok(build_pi(i, v, n)?.add(&OperatorExpr::coeff(shift)))
}

/// h_i = a_i† a_i.
pub fn build_h(i: usize, v: &Laurent, w: &Laurent, n: usize) -> Result<OperatorExpr> {
    let ad = build_scaled_a(i, v, w, n, true)?;
    let a = build_scaled_a(i, v, w, n, false)?;
    let inv2m = RationalCoeff::inverse_param(n, MASS, 1).scale(&ratio(1, 2));
    Ok(ad.mul(&a).left_mul(&inv2m))
}

/// I_n = Σ π_i^n, or Ĩ_n = Σ h_i^n when a superpotential is given.
pub fn build_invariant(
    order: u32,
    v: &Laurent,
    n: usize,
    trap: Option<&Laurent>,
) -> Result<OperatorExpr> {
    if order == 0 {
        return Err(Error::Invalid("invariant order must be at least 1".into()));
    }
    let parts: Result<Vec<OperatorExpr>> = (0..n)
        .map(|i| {
            let base = match trap {
                None => build_pi(i, v, n)?,
                Some(w) => build_h(i, v, w, n)?,
            };
            Ok(base.pow(order))
        })
        .collect();
    Ok(OperatorExpr::sum(n, &parts?))
}

/// V_ijk = V_ij V_jk + V_jk V_ki + V_ki V_ij.
pub fn three_body_coeff(v: &Laurent, n: usize, i: usize, j: usize, k: usize) -> RationalCoeff {
    let (a, b, c) = (v.at_pair(n, i, j), v.at_pair(n, j, k), v.at_pair(n, k, i));
    RationalCoeff::sum(&[a.mul(&b), b.mul(&c), c.mul(&a)]).unwrap_or_else(|| RationalCoeff::zero(n))
}

/// Σ_{k≠i,j} V_ijk (M_ijk − M_jik), built without the engine's product rule.
pub fn pi_commutator_closed_form(v: &Laurent, n: usize, i: usize, j: usize) -> OperatorExpr {
    let parts: Vec<OperatorExpr> = (0..n)
        .filter(|&k| k != i && k != j)
        .flat_map(|k| {
            let c = three_body_coeff(v, n, i, j, k);
            [
                OperatorExpr::exchange(Perm::three_cycle(n, i, j, k)).left_mul(&c),
                OperatorExpr::exchange(Perm::three_cycle(n, j, i, k)).left_mul(&c.neg()),
            ]
        })
        .collect();
    OperatorExpr::sum(n, &parts)
}

fn kinetic(n: usize) -> OperatorExpr {
    let inv2m = RationalCoeff::inverse_param(n, MASS, 1).scale(&ratio(1, 2));
    let parts: Vec<OperatorExpr> = (0..n)
        .map(|i| {
            OperatorExpr::p(n, i)
                .mul(&OperatorExpr::p(n, i))
                .left_mul(&inv2m)
        })
        .collect();
    OperatorExpr::sum(n, &parts)
}

/// Σ p²/2m + (1/m)[Σ_{i<j}(ζħV′ + V²) − Σ_{i<j<k} V_ijk].
pub fn homogeneous_hamiltonian(v: &Laurent, n: usize, zeta: i64) -> OperatorExpr {
    let inv_m = RationalCoeff::inverse_param(n, MASS, 1);
    let zh = RationalCoeff::param(n, HBAR).scale(&int(zeta));
    let dv = v.derivative();
    let mut pot = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let vij = v.at_pair(n, i, j);
            pot.push(zh.mul(&dv.at_pair(n, i, j)));
            pot.push(vij.mul(&vij));
            for k in j + 1..n {
                pot.push(three_body_coeff(v, n, i, j, k).neg());
            }
        }
    }
    let pot = RationalCoeff::sum(&pot)
        .unwrap_or_else(|| RationalCoeff::zero(n))
        .mul(&inv_m);
    kinetic(n).add(&OperatorExpr::coeff(pot))
}

/// H₀ + Σ U_i − ζ√(2/m) Σ_{i<j} V_ij (W_i − W_j) with W = √(m/2) w and
/// U = W² − (ħ/√(2m)) W′ = (m/2) w² − (ħ/2) w′.
pub fn trapped_hamiltonian(v: &Laurent, w: &Laurent, n: usize, zeta: i64) -> Result<OperatorExpr> {
    let h0 = homogeneous_hamiltonian(v, n, zeta);
    let dw = w.derivative();
    let half_m = RationalCoeff::param(n, MASS).scale(&ratio(1, 2));
    let half_h = RationalCoeff::param(n, HBAR).scale(&ratio(-1, 2));
    let mut pot = Vec::new();
    for i in 0..n {
        let wi = w.at_site(n, i)?;
        pot.push(half_m.mul(&wi.mul(&wi)));
        pot.push(half_h.mul(&dw.at_site(n, i)?));
        for j in i + 1..n {
            let dwij = wi.sub(&w.at_site(n, j)?);
            pot.push(v.at_pair(n, i, j).mul(&dwij).scale(&int(-zeta)));
        }
    }
    let pot = RationalCoeff::sum(&pot).unwrap_or_else(|| RationalCoeff::zero(n));
    Ok(h0.add(&OperatorExpr::coeff(pot)))
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorCheck {
    pub orders: (u32, u32),
    pub terms_a: usize,
    pub terms_b: usize,
    pub terms_commutator: usize,
    pub zero: bool,
    /// Wall time; left out of reports so they stay reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegrabilityReport {
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub trapped: bool,
    pub checks: Vec<CommutatorCheck>,
    pub pass: bool,
}

/// Default cap on |A|·|B| term products.
pub const TERM_BUDGET: usize = 2_000_000;

pub fn verify_integrability(
    v: &Laurent,
    n: usize,
    orders: &[(u32, u32)],
    trap: Option<&Laurent>,
    budget: usize,
) -> Result<IntegrabilityReport> {
    if n > 4 {
        return Err(Error::BudgetExceeded {
            terms: n,
            budget: 4,
        });
    }
    let mut checks = Vec::new();
    for &(a, b) in orders {
        if a + b > 6 {
            return Err(Error::BudgetExceeded {
                terms: (a + b) as usize,
                budget: 6,
            });
        }
        let t0 = Instant::now();
        let ia = build_invariant(a, v, n, trap)?;
        let ib = build_invariant(b, v, n, trap)?;
        let work = ia.len() * ib.len();
        if work > budget {
            return Err(Error::BudgetExceeded {
                terms: work,
                budget,
            });
        }
        let c = ia.commutator(&ib);
        checks.push(CommutatorCheck {
            orders: (a, b),
            terms_a: ia.len(),
            terms_b: ib.len(),
            terms_commutator: c.len(),
            zero: c.is_zero(),
            seconds: t0.elapsed().as_secs_f64(),
        });
    }
    let pass = checks.iter().all(|c| c.zero);
    Ok(IntegrabilityReport {
        family: v.name.clone(),
        n,
        trapped: trap.is_some(),
        checks,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExchangeRuleCheck {
    pub operator: String,
    pub pair: (usize, usize),
    pub target: usize,
    pub holds: bool,
}

/// M_ij A_j = A_i M_ij and M_ij A_k = A_k M_ij for A ∈ {π, √(2m) a, √(2m) a†, h}.
pub fn verify_effective_one_body(v: &Laurent, n: usize) -> Result<Vec<ExchangeRuleCheck>> {
    if n < 3 {
        return Err(Error::Invalid(
            "effective one-body rules need N >= 3".into(),
        ));
    }
    let w = Laurent::harmonic();
    type Builder<'a> = Box<dyn Fn(usize) -> Result<OperatorExpr> + 'a>;
    let builders: Vec<(&str, Builder)> = vec![
        ("pi", Box::new(|i| build_pi(i, v, n))),
        ("a", Box::new(|i| build_scaled_a(i, v, &w, n, false))),
        ("a_dagger", Box::new(|i| build_scaled_a(i, v, &w, n, true))),
        ("h", Box::new(|i| build_h(i, v, &w, n))),
    ];
    let mut out = Vec::new();
    for (name, build) in &builders {
        let ops: Vec<OperatorExpr> = (0..n).map(build).collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let m = OperatorExpr::m(n, i, j);
                for (t, op) in ops.iter().enumerate() {
                    let image = if t == i {
                        &ops[j]
                    } else if t == j {
                        &ops[i]
                    } else {
                        op
                    };
                    let holds = m.mul(op) == image.mul(&m);
                    out.push(ExchangeRuleCheck {
                        operator: name.to_string(),
                        pair: (i + 1, j + 1),
                        target: t + 1,
                        holds,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CaveatReport {
    pub naive: String,
    pub correct: String,
    pub expected: String,
    pub correct_matches: bool,
    pub naive_differs: bool,
}

/// [p_i, Σ_{k≠j} V_jk M_jk] projected after commuting versus substituting
/// M = ζ first.
pub fn caveat_identity(
    v: &Laurent,
    n: usize,
    i: usize,
    j: usize,
    zeta: i64,
) -> Result<CaveatReport> {
    check_odd(v)?;
    let b_parts: Vec<OperatorExpr> = (0..n)
        .filter(|&k| k != j)
        .map(|k| OperatorExpr::m(n, j, k).left_mul(&v.at_pair(n, j, k)))
        .collect();
    let b = OperatorExpr::sum(n, &b_parts);
    let p = OperatorExpr::p(n, i);
    let correct = p.commutator(&b).project(zeta);
    let naive = p.commutator(&b.project(zeta));
    // ζ iħ V′_ij − ζ V_ij (p_i − p_j)
    let z = int(zeta);
    let dv = v
        .derivative()
        .at_pair(n, i, j)
        .mul(&RationalCoeff::param(n, HBAR))
        .scale(&(imag_unit() * z.clone()));
    let vij = v.at_pair(n, i, j).scale(&(-z));
    let expected = OperatorExpr::coeff(dv).add(
        &OperatorExpr::p(n, i)
            .sub(&OperatorExpr::p(n, j))
            .left_mul(&vij),
    );
    Ok(CaveatReport {
        naive: naive.render(),
        correct: correct.render(),
        expected: expected.render(),
        correct_matches: correct == expected,
        naive_differs: naive != correct,
    })
}

/// 1/(2m) as a coefficient.
pub fn inverse_two_m(n: usize) -> RationalCoeff {
    RationalCoeff::inverse_param(n, MASS, 1).scale(&ratio(1, 2))
}

/// Numeric substitution helper for tests and diagnostics.
pub fn param_point(n: usize, xs: &[f64], params: [f64; NPARAM]) -> Vec<num_complex::Complex<f64>> {
    xs.iter()
        .take(n)
        .chain(params.iter())
        .map(|&v| num_complex::Complex::new(v, 0.0))
        .collect()
}

/// Exact scalar helper re-exported for callers composing expressions.
pub fn scalar(v: i64) -> Scalar {
    int(v)
}
