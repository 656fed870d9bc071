//! Discretized parent Hamiltonians and exact diagonalization against Ψ₀.

use serde::Serialize;

use super::eigen::{EigenMethod, SectorBasis};
use super::grid::{Boundary, Grid};
use super::rep::{LatticeRep, ProductSpace, StencilOrder, DIM_BUDGET};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::model::{ConfigVector, ModelSpec};
use crate::pair::DeltaStrength;
use crate::units::{Geometry, Statistics};
use crate::verify::JastrowState;

/// Grid matching the model geometry: a ring of the model circumference, or a
/// box of the given half width (the model's own for box models).
pub fn grid_for(model: &ModelSpec, sites: usize, half_width: f64) -> Result<Grid> {
    match model.geometry {
        Geometry::Ring { circumference } => Grid::periodic(sites, circumference),
        Geometry::Box { half_width } => Grid::boxed(sites, half_width),
        Geometry::Line => Grid::boxed(sites, half_width),
    }
}

fn check_geometry(model: &ModelSpec, grid: &Grid) -> Result<()> {
    match (model.geometry, grid.boundary) {
        (Geometry::Ring { circumference }, Boundary::Periodic) => {
            let l = grid.circumference().unwrap_or_default();
            if (l - circumference).abs() > 1e-12 * circumference {
                return Err(Error::Geometry(format!(
                    "ring circumference {circumference} but grid length {l}"
                )));
            }
        }
        (Geometry::Ring { .. }, Boundary::Box) => {
            return Err(Error::Geometry("ring model on a box grid".into()))
        }
        (_, Boundary::Periodic) => {
            return Err(Error::Geometry(format!(
                "{} model on a periodic grid",
                model.geometry.label()
            )))
        }
        (Geometry::Box { half_width }, Boundary::Box) => {
            if (grid.origin - grid.spacing + half_width).abs() > 1e-12 * half_width {
                return Err(Error::Geometry(format!(
                    "box half width {half_width} does not match the grid"
                )));
            }
        }
        (Geometry::Line, Boundary::Box) => {}
    }
    Ok(())
}

fn contact_strength(model: &ModelSpec) -> Result<Option<f64>> {
    let pair = &model.pair;
    let singular = !pair.singular_points().is_empty();
    match (singular, pair.delta_at_origin(), &model.terms.delta) {
        (_, _, Some(d)) => match d.strength {
            DeltaStrength::Finite(c) => Ok(Some(c)),
            DeltaStrength::HardCore(_) => Err(Error::UnsupportedFamily(format!(
                "{}: hard-core contact",
                model.name
            ))),
        },
        (true, Some(DeltaStrength::Finite(_)), None) => Ok(None),
        (true, _, None) => Err(Error::UnsupportedFamily(format!(
            "{}: singular pair function {}",
            model.name,
            pair.name()
        ))),
        (false, _, None) => Ok(None),
    }
}

/// H = −(ħ²/2m)Σ D²_i + potentials + (c/h) at coincident sites.
pub fn discretize_hamiltonian(
    model: &ModelSpec,
    grid: &Grid,
    order: StencilOrder,
) -> Result<SparseMatrix> {
    check_geometry(model, grid)?;
    let contact = contact_strength(model)?;
    let space = ProductSpace::new(*grid, model.n, DIM_BUDGET)?;
    let rep = LatticeRep::build_with(
        *grid,
        model.n,
        model.statistics,
        order,
        model.constants.hbar,
        DIM_BUDGET,
    )?;
    let kinetic = SparseMatrix::sum(
        space.dim,
        (0..model.n).map(|i| rep.laplacian(i)).collect::<Vec<_>>(),
    )
    .scale_real(-model.constants.hbar2_over_m() / 2.0);
    let h = grid.spacing;
    let mut bad = None;
    let diag: Vec<f64> = (0..space.dim)
        .map(|idx| {
            let k = space.digits(idx);
            let x = space.coords(idx);
            let mut e = model.terms.potential_energy(&x);
            if let Some(c) = contact {
                for i in 0..k.len() {
                    for j in i + 1..k.len() {
                        if k[i] == k[j] {
                            e += c / h;
                        }
                    }
                }
            }
            if !e.is_finite() {
                bad = Some(x);
            }
            e
        })
        .collect();
    if let Some(x) = bad {
        return Err(Error::UnsupportedFamily(format!(
            "{}: potential not finite at {x:?}",
            model.name
        )));
    }
    Ok(kinetic.add(&SparseMatrix::real_diagonal(&diag)))
}

/// Ψ₀ sampled on every product-grid point, including its sign.
fn sampled_ground_state(model: &ModelSpec, space: &ProductSpace) -> Vec<f64> {
    let state = JastrowState::of(model);
    let logs: Vec<(f64, f64)> = (0..space.dim)
        .map(|idx| {
            let x = space.coords(idx);
            let mut sign = 1.0;
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    sign *= model.pair.sign(x[i] - x[j]);
                }
            }
            (state.ln_psi(&ConfigVector::new(x)), sign)
        })
        .collect();
    let top = logs
        .iter()
        .filter(|l| l.1 != 0.0)
        .map(|l| l.0)
        .fold(f64::NEG_INFINITY, f64::max);
    logs.into_iter()
        .map(|(l, s)| if s == 0.0 { 0.0 } else { s * (l - top).exp() })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapReport {
    pub model: String,
    pub n: usize,
    pub sites: usize,
    pub spacing: f64,
    pub zeta: i32,
    pub order: u32,
    pub sector_dim: usize,
    pub method: EigenMethod,
    pub energy: f64,
    pub e0: Option<f64>,
    pub energy_error: Option<f64>,
    pub overlap: f64,
}

/// Lowest eigenpair in the ζ sector and its overlap with the sampled Ψ₀.
pub fn ground_state_overlap(
    model: &ModelSpec,
    grid: &Grid,
    zeta: Statistics,
    order: StencilOrder,
) -> Result<OverlapReport> {
    if model.geometry == Geometry::Line && model.one_body.is_zero() {
        return Err(Error::ParameterOutOfRange {
            name: "model".into(),
            reason: format!(
                "{} is not normalizable on the line without a trap",
                model.name
            ),
        });
    }
    let h = discretize_hamiltonian(model, grid, order)?;
    let space = ProductSpace::new(*grid, model.n, DIM_BUDGET)?;
    let basis = SectorBasis::new(&space, zeta);
    let (energy, coords, method) = basis.lowest(&h)?;
    let psi = basis.expand(&coords, space.dim);
    let psi0 = sampled_ground_state(model, &space);
    let norm0 = psi0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let overlap = if norm0 > 0.0 {
        psi.iter().zip(&psi0).map(|(a, b)| a * b).sum::<f64>().abs() / norm0
    } else {
        0.0
    };
    Ok(OverlapReport {
        model: model.name.clone(),
        n: model.n,
        sites: grid.sites,
        spacing: grid.spacing,
        zeta: zeta.sign(),
        order: order.as_int(),
        sector_dim: basis.len(),
        method,
        energy,
        e0: model.e0,
        energy_error: model.e0.map(|e0| energy - e0),
        overlap,
    })
}

/// Least-squares slope of ln|err| against ln h.
pub fn fit_order(spacings: &[f64], errors: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = spacings
        .iter()
        .zip(errors)
        .filter(|(_, e)| e.abs() > 0.0)
        .map(|(h, e)| (h.ln(), e.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergencePoint {
    pub sites: usize,
    pub spacing: f64,
    pub energy: f64,
    pub overlap: f64,
    pub error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub model: String,
    pub e0: Option<f64>,
    pub order: u32,
    pub points: Vec<ConvergencePoint>,
    /// Fitted from |E_num − E₀| when E₀ is known.
    pub fitted_order: Option<f64>,
}

pub fn energy_convergence(
    model: &ModelSpec,
    half_width: f64,
    sites: &[usize],
    zeta: Statistics,
    order: StencilOrder,
) -> Result<ConvergenceReport> {
    let mut points = Vec::new();
    for &s in sites {
        let grid = grid_for(model, s, half_width)?;
        let r = ground_state_overlap(model, &grid, zeta, order)?;
        points.push(ConvergencePoint {
            sites: s,
            spacing: r.spacing,
            energy: r.energy,
            overlap: r.overlap,
            error: r.energy_error,
        });
    }
    let fitted_order = model.e0.map(|_| {
        let hs: Vec<f64> = points.iter().map(|p| p.spacing).collect();
        let es: Vec<f64> = points.iter().filter_map(|p| p.error).collect();
        fit_order(&hs, &es)
    });
    Ok(ConvergenceReport {
        model: model.name.clone(),
        e0: model.e0,
        order: order.as_int(),
        points,
        fitted_order,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorStudy {
    pub n: usize,
    pub sites: Vec<usize>,
    pub spacing: Vec<f64>,
    pub norms: Vec<f64>,
    pub fitted_order: f64,
}

/// ‖[P Ĩ₁ P, P Ĩ₂ P] ψ‖ on a box of refining grids.
#[allow(clippy::too_many_arguments)]
pub fn invariant_commutator_study(
    n: usize,
    zeta: Statistics,
    v: &(dyn Fn(f64) -> f64 + Sync),
    w: &(dyn Fn(f64) -> f64 + Sync),
    mass: f64,
    half_width: f64,
    sites: &[usize],
    order: StencilOrder,
) -> Result<CommutatorStudy> {
    let mut spacing = Vec::new();
    let mut norms = Vec::new();
    for &s in sites {
        let rep = LatticeRep::build(Grid::boxed(s, half_width)?, n, zeta, order)?;
        spacing.push(rep.grid().spacing);
        norms.push(super::axioms::invariant_commutator_on_probe(
            &rep, v, w, mass,
        ));
    }
    let fitted_order = fit_order(&spacing, &norms);
    Ok(CommutatorStudy {
        n,
        sites: sites.to_vec(),
        spacing,
        norms,
        fitted_order,
    })
}
