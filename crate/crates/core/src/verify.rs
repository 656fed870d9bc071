//! Pointwise checks of H Ψ₀ = E₀ Ψ₀ in the continuum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConfigVector, ModelSpec};
use crate::one_body::OneBodyProfile;
use crate::pair::{DeltaStrength, PairFamily};
use crate::units::{Geometry, PhysicalConstants};

/// Ψ₀ = ∏ exp(v(x_i)) ∏_{i<j} f(x_ij).
#[derive(Debug, Clone)]
pub struct JastrowState {
    pub pair: PairFamily,
    pub one_body: OneBodyProfile,
    pub n: usize,
    pub geometry: Geometry,
}

impl JastrowState {
    pub fn of(model: &ModelSpec) -> Self {
        JastrowState {
            pair: model.pair.clone(),
            one_body: model.one_body,
            n: model.n,
            geometry: model.geometry,
        }
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Invalid(format!(
                "expected {} positions, got {}",
                self.n,
                x.len()
            )));
        }
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if self.pair.is_singular(x[i] - x[j]) {
                    return Err(Error::Coincident { i, j });
                }
            }
        }
        Ok(())
    }

    /// ln|Ψ₀|.
    pub fn ln_psi(&self, config: &ConfigVector) -> f64 {
        let x = &config.positions;
        let mut s: f64 = x.iter().map(|&xi| self.one_body.v(xi)).sum();
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                s += self.pair.ln_abs(x[i] - x[j]);
            }
        }
        s
    }

    /// ln|Ψ₀| after moving particle i by dx, minus ln|Ψ₀| before.
    pub fn ln_ratio(&self, x: &[f64], i: usize, dx: f64) -> f64 {
        let mut s = self.one_body.v_diff(x[i], dx);
        for (j, &xj) in x.iter().enumerate() {
            if j != i {
                s += self.pair.ln_ratio(x[i] - xj, dx);
            }
        }
        s
    }
}

/// ∂_i ln Ψ₀ and ∂_i² ln Ψ₀ from the closed forms.
pub fn log_gradient_laplacian(
    state: &JastrowState,
    config: &ConfigVector,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let x = &config.positions;
    state.check(x)?;
    let n = x.len();
    let mut grad: Vec<f64> = x.iter().map(|&xi| state.one_body.v_prime(xi)).collect();
    let mut lap: Vec<f64> = x.iter().map(|&xi| state.one_body.v_second(xi)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let r = x[i] - x[j];
            let d = state.pair.log_deriv(r);
            let s = state.pair.log_second(r) - d * d;
            // f′/f is odd and (f′/f)′ even
            grad[i] += d;
            grad[j] -= d;
            lap[i] += s;
            lap[j] += s;
        }
    }
    Ok((grad, lap))
}

/// (H Ψ₀)/Ψ₀ at one configuration.
pub fn local_energy(model: &ModelSpec, config: &ConfigVector) -> Result<f64> {
    let state = JastrowState::of(model);
    let (grad, lap) = log_gradient_laplacian(&state, config)?;
    let kin: f64 = grad.iter().zip(&lap).map(|(g, l)| l + g * g).sum();
    Ok(-0.5 * model.constants.hbar2_over_m() * kin
        + model.terms.potential_energy(&config.positions))
}

/// Same as [`local_energy`] with the kinetic part from a 4th-order
/// five-point stencil applied to Ψ₀ itself.
pub fn fd_local_energy(model: &ModelSpec, config: &ConfigVector, h: f64) -> Result<f64> {
    let state = JastrowState::of(model);
    let x = &config.positions;
    state.check(x)?;
    if let Some(l) = state.pair.period() {
        if !state.pair.singular_points().is_empty() {
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    let r = x[i] - x[j];
                    let lo = ((r - 2.0 * h) / l).floor();
                    let hi = ((r + 2.0 * h) / l).floor();
                    let on =
                        ((r + 2.0 * h) / l).fract() == 0.0 || ((r - 2.0 * h) / l).fract() == 0.0;
                    if lo != hi || on {
                        return Err(Error::StencilCrossesSingularity { i, j });
                    }
                }
            }
        }
    } else if !state.pair.singular_points().is_empty() {
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if (x[i] - x[j]).abs() <= 2.0 * h {
                    return Err(Error::StencilCrossesSingularity { i, j });
                }
            }
        }
    }
    let mut kin = 0.0;
    for i in 0..x.len() {
        let e = |k: f64| state.ln_ratio(x, i, k * h).exp_m1();
        // Ψ(x ± kh)/Ψ(x) − 1; the constant parts of the stencil cancel
        kin += (-e(2.0) + 16.0 * e(1.0) + 16.0 * e(-1.0) - e(-2.0)) / (12.0 * h * h);
    }
    Ok(-0.5 * model.constants.hbar2_over_m() * kin + model.terms.potential_energy(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sampling {
    /// Independent normal positions of the given width (ring: ignored).
    Gaussian { width: f64 },
    /// Uniform in (−a, a) on the line, [0, L) on a ring.
    Uniform { half_width: f64 },
}

/// Typical length: the trap length √(ħ/mω) when trapped, else 1.
pub fn length_scale(model: &ModelSpec) -> f64 {
    length_scale_of(&model.one_body, &model.constants)
}

fn length_scale_of(one_body: &OneBodyProfile, c: &PhysicalConstants) -> f64 {
    let w = match one_body.kind {
        crate::one_body::OneBodyKind::Harmonic { omega } => omega.abs(),
        crate::one_body::OneBodyKind::TrigTrap { omega, .. } => omega.abs(),
        crate::one_body::OneBodyKind::Zero => 0.0,
    };
    if w > 0.0 {
        (c.hbar / (c.mass * w)).sqrt()
    } else {
        1.0
    }
}

pub fn default_sampling(model: &ModelSpec) -> Sampling {
    match model.geometry {
        Geometry::Box { half_width } => Sampling::Uniform { half_width },
        _ => Sampling::Gaussian {
            width: length_scale(model),
        },
    }
}

pub fn default_min_sep(model: &ModelSpec) -> f64 {
    1e-3 * length_scale(model)
}

const MAX_ATTEMPTS: usize = 10_000;

/// Seeded ChaCha8 configurations with all separations ≥ `min_sep`.
pub fn sample_configs(
    model: &ModelSpec,
    count: usize,
    seed: u64,
    min_sep: f64,
    sampling: Sampling,
) -> Result<Vec<ConfigVector>> {
    if count == 0 {
        return Err(Error::Invalid("count must be at least 1".into()));
    }
    if !(min_sep > 0.0) {
        return Err(Error::Invalid("min_sep must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let period = model.geometry.period();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut attempts = 0;
        loop {
            attempts += 1;
            let positions: Vec<f64> = (0..model.n)
                .map(|_| match (period, sampling) {
                    (Some(l), _) => rng.random_range(0.0..l),
                    (None, Sampling::Gaussian { width }) => {
                        Normal::new(0.0, width).unwrap().sample(&mut rng)
                    }
                    (None, Sampling::Uniform { half_width }) => {
                        rng.random_range(-half_width..half_width)
                    }
                })
                .collect();
            let c = ConfigVector::new(positions);
            if c.min_separation(period) >= min_sep {
                out.push(c);
                break;
            }
            if attempts >= MAX_ATTEMPTS {
                return Err(Error::RejectionFailure { min_sep, attempts });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalEnergyReport {
    pub model: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub max_abs_dev: f64,
    pub e0_expected: Option<f64>,
    pub tol_var: f64,
    pub tol_mean: f64,
    pub pass: bool,
    #[serde(skip)]
    pub energies: Vec<f64>,
}

impl LocalEnergyReport {
    /// Per-configuration local energies as CSV.
    pub fn to_csv(&self, configs: &[ConfigVector]) -> String {
        let mut s = String::from("index");
        for k in 0..self.n {
            s.push_str(&format!(",x{}", k + 1));
        }
        s.push_str(",e_loc\n");
        for (idx, (c, e)) in configs.iter().zip(&self.energies).enumerate() {
            s.push_str(&idx.to_string());
            for x in &c.positions {
                s.push_str(&format!(",{x:e}"));
            }
            s.push_str(&format!(",{e:e}\n"));
        }
        s
    }
}

/// Statistics of E_loc over a fixed list of configurations.
pub fn local_energy_report(
    model: &ModelSpec,
    configs: &[ConfigVector],
    seed: u64,
) -> Result<LocalEnergyReport> {
    let energies = configs
        .par_iter()
        .map(|c| local_energy(model, c))
        .collect::<Result<Vec<f64>>>()?;
    let n = energies.len() as f64;
    let mean = energies.iter().sum::<f64>() / n;
    let variance = energies
        .iter()
        .map(|e| (e - mean) * (e - mean))
        .sum::<f64>()
        / n;
    let max_abs_dev = energies
        .iter()
        .map(|e| (e - mean).abs())
        .fold(0.0, f64::max);
    let reference = model.e0.unwrap_or(mean);
    let tol_var = 1e-16 * reference.abs().max(1.0).powi(2);
    let tol_mean = 1e-10 * reference.abs().max(1.0);
    let pass = variance <= tol_var && model.e0.is_none_or(|e0| (mean - e0).abs() <= tol_mean);
    Ok(LocalEnergyReport {
        model: model.name.clone(),
        n: model.n,
        samples: energies.len(),
        seed,
        mean,
        variance,
        max_abs_dev,
        e0_expected: model.e0,
        tol_var,
        tol_mean,
        pass,
        energies,
    })
}

/// Samples with the model defaults and reports local-energy statistics.
pub fn verify_eigenstate(
    model: &ModelSpec,
    samples: usize,
    seed: u64,
) -> Result<LocalEnergyReport> {
    let configs = sample_configs(
        model,
        samples,
        seed,
        default_min_sep(model),
        default_sampling(model),
    )?;
    local_energy_report(model, &configs, seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub model: String,
    pub kind: String,
    pub jump: f64,
    pub required: f64,
    pub error: f64,
    pub pass: bool,
}

/// Compares the jump of ∂ ln Ψ₀/∂x_12 across x_12 = 0 with (m/ħ²)·(contact strength).
/// For hard-core terms the jump of |x_12|·∂ ln Ψ₀/∂x_12 is compared instead.
pub fn cusp_check(model: &ModelSpec) -> Result<CuspReport> {
    let delta = model.terms.delta.as_ref().ok_or(Error::NoDeltaTerm)?;
    let pair = &model.pair;
    // one-body factors and spectator pairs are smooth across x_12 = 0, so only
    // the one-sided limits of the (1,2) pair factor enter the jump
    let (kind, limit): (&str, Box<dyn Fn(f64) -> f64>) = match delta.strength {
        DeltaStrength::Finite(_) => ("finite", Box::new(|side| pair.one_sided_log_deriv(side))),
        DeltaStrength::HardCore(_) => (
            "hard-core",
            Box::new(|side| pair.one_sided_scaled_log_deriv(side)),
        ),
    };
    let jump = limit(1.0) - limit(-1.0);
    let required = delta.strength.coefficient() / model.constants.hbar2_over_m();
    let error = (jump - required).abs();
    Ok(CuspReport {
        model: model.name.clone(),
        kind: kind.into(),
        jump,
        required,
        error,
        pass: error <= 1e-10 * required.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::zoo_model;
    use std::collections::BTreeMap;

    fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn model(name: &str, kv: &[(&str, f64)], n: usize) -> ModelSpec {
        zoo_model(name, &params(kv), n, PhysicalConstants::default()).unwrap()
    }

    #[test]
    fn gradient_examples() {
        let m = model("lieb-liniger", &[("g", 1.0)], 3);
        let (g, _) =
            log_gradient_laplacian(&JastrowState::of(&m), &vec![0.0, 1.0, 2.5].into()).unwrap();
        assert_eq!(g, vec![-2.0, 0.0, 2.0]);
        let m = model("calogero", &[("lambda", 2.0)], 3);
        let (g, _) =
            log_gradient_laplacian(&JastrowState::of(&m), &vec![0.0, 1.0, 3.0].into()).unwrap();
        assert!((g[0] + 8.0 / 3.0).abs() < 1e-15);
        let m = model("calogero", &[("lambda", 0.0)], 3);
        let (g, l) =
            log_gradient_laplacian(&JastrowState::of(&m), &vec![0.0, 1.0, 3.0].into()).unwrap();
        assert!(g.iter().chain(&l).all(|v| *v == 0.0));
    }

    #[test]
    fn coincident_particles_rejected() {
        let m = model("lieb-liniger", &[], 3);
        assert_eq!(
            local_energy(&m, &vec![0.5, 0.5, 1.0].into()),
            Err(Error::Coincident { i: 0, j: 1 })
        );
    }

    #[test]
    fn local_energy_examples() {
        let m = model("lieb-liniger", &[("g", 1.0)], 3);
        assert!((local_energy(&m, &vec![-0.3, 0.4, 2.0].into()).unwrap() + 4.0).abs() < 1e-13);
        let m = model("lieb-liniger-coulomb", &[("g", 1.0), ("omega", 1.0)], 3);
        assert!((local_energy(&m, &vec![-0.3, 0.4, 2.0].into()).unwrap() + 2.5).abs() < 1e-13);
    }

    #[test]
    fn fd_oracle_examples() {
        let m = model("calogero-trapped", &[("lambda", 2.0), ("omega", 1.0)], 3);
        let e = fd_local_energy(&m, &vec![-1.0, 0.3, 1.2].into(), 1e-3).unwrap();
        assert!((e - 7.5).abs() < 1e-8, "{e}");
        let m = model(
            "sutherland",
            &[("lambda", 0.5), ("L", 2.0 * std::f64::consts::PI)],
            3,
        );
        let e = fd_local_energy(&m, &vec![0.4, 2.0, 4.1].into(), 1e-3).unwrap();
        assert!((e - 0.25).abs() < 1e-7, "{e}");
        let m = model("calogero", &[("lambda", 0.0)], 4);
        assert!(
            fd_local_energy(&m, &vec![0.4, 2.0, 4.1, -1.0].into(), 1e-3)
                .unwrap()
                .abs()
                < 1e-10
        );
    }

    #[test]
    fn stencil_crossing_is_an_error() {
        let m = model("lieb-liniger", &[], 2);
        assert_eq!(
            fd_local_energy(&m, &vec![0.0, 0.015].into(), 1e-2),
            Err(Error::StencilCrossesSingularity { i: 0, j: 1 })
        );
    }

    #[test]
    fn sampling_is_deterministic_and_separated() {
        let m = model("lieb-liniger", &[], 3);
        let a = sample_configs(&m, 5, 42, 0.1, default_sampling(&m)).unwrap();
        let b = sample_configs(&m, 5, 42, 0.1, default_sampling(&m)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.min_separation(None) >= 0.1));
        let r = model("sutherland", &[], 3);
        let c = sample_configs(&r, 50, 1, 1e-3, default_sampling(&r)).unwrap();
        let l = 2.0 * std::f64::consts::PI;
        assert!(c
            .iter()
            .flat_map(|c| &c.positions)
            .all(|&x| (0.0..l).contains(&x)));
        assert!(matches!(
            sample_configs(&r, 1, 1, 3.0, default_sampling(&r)),
            Err(Error::RejectionFailure { .. })
        ));
    }

    #[test]
    fn cusp_examples() {
        let r = cusp_check(&model("lieb-liniger", &[("g", 1.7)], 3)).unwrap();
        assert!((r.jump - 3.4).abs() < 1e-15 && r.pass);
        let r = cusp_check(&model("tonks-girardeau-trapped", &[], 3)).unwrap();
        assert!(r.pass && r.jump == 2.0);
        assert_eq!(
            cusp_check(&model("calogero", &[("lambda", 0.0)], 3)),
            Err(Error::NoDeltaTerm)
        );
    }

    #[test]
    fn negative_control_fails() {
        let m = model("toda-bessel-trapped", &[], 3);
        assert!(verify_eigenstate(&m, 200, 3).unwrap().pass);
        let broken = m.drop_term(crate::model::TermKind::ThreeBody).unwrap();
        let r = verify_eigenstate(&broken, 200, 3).unwrap();
        assert!(!r.pass && r.variance > 1e-6);
    }
}
