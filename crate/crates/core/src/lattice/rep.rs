//! Tensor-product operators for N particles on a grid.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::Grid;
use super::sparse::SparseMatrix;
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::units::Statistics;

/// Largest L_s^N accepted by default.
pub const DIM_BUDGET: usize = 200_000;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StencilOrder {
    Second,
    Fourth,
}

impl StencilOrder {
    pub fn from_int(k: u32) -> Result<Self> {
        match k {
            2 => Ok(StencilOrder::Second),
            4 => Ok(StencilOrder::Fourth),
            _ => Err(Error::ParameterOutOfRange {
                name: "order".into(),
                reason: format!("stencil order must be 2 or 4, got {k}"),
            }),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }

    /// (offset, weight·h) for d/dx.
    fn first(self) -> &'static [(isize, f64)] {
        match self {
            StencilOrder::Second => &[(-1, -0.5), (1, 0.5)],
            StencilOrder::Fourth => &[
                (-2, 1.0 / 12.0),
                (-1, -8.0 / 12.0),
                (1, 8.0 / 12.0),
                (2, -1.0 / 12.0),
            ],
        }
    }

    /// (offset, weight·h²) for d²/dx².
    fn second(self) -> &'static [(isize, f64)] {
        match self {
            StencilOrder::Second => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
            StencilOrder::Fourth => &[
                (-2, -1.0 / 12.0),
                (-1, 16.0 / 12.0),
                (0, -30.0 / 12.0),
                (1, 16.0 / 12.0),
                (2, -1.0 / 12.0),
            ],
        }
    }
}

/// Single-particle stencil matrix on the grid.
fn stencil(grid: &Grid, weights: &[(isize, f64)], scale: f64) -> SparseMatrix {
    let l = grid.sites;
    SparseMatrix::from_triplets(
        l,
        (0..l).flat_map(|k| {
            weights
                .iter()
                .filter_map(move |&(s, w)| grid.shift(k, s).map(|c| (k, c, re(w * scale))))
        }),
    )
}

/// Index arithmetic of the L_s^N product basis, particle 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSpace {
    pub grid: Grid,
    pub n: usize,
    pub dim: usize,
}

impl ProductSpace {
    pub fn new(grid: Grid, n: usize, budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "N".into(),
                reason: "need at least one particle".into(),
            });
        }
        let dim = (grid.sites as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX);
        if dim > budget as u128 {
            return Err(Error::DimensionBudget {
                dim: dim.min(usize::MAX as u128) as usize,
                budget,
            });
        }
        Ok(ProductSpace {
            grid,
            n,
            dim: dim as usize,
        })
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for slot in d.iter_mut().rev() {
            *slot = idx % self.grid.sites;
            idx /= self.grid.sites;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &k| acc * self.grid.sites + k)
    }

    pub fn coords(&self, idx: usize) -> Vec<f64> {
        self.digits(idx)
            .into_iter()
            .map(|k| self.grid.coord(k))
            .collect()
    }

    /// Diagonal operator f(x_1, …, x_N).
    pub fn diagonal(&self, f: &(dyn Fn(&[f64]) -> f64 + Sync)) -> SparseMatrix {
        let d: Vec<f64> = (0..self.dim)
            .into_par_iter()
            .map(|idx| f(&self.coords(idx)))
            .collect();
        SparseMatrix::real_diagonal(&d)
    }

    /// Single-particle matrix acting on tensor factor i.
    pub fn embed(&self, i: usize, local: &SparseMatrix) -> SparseMatrix {
        let stride = self.grid.sites.pow((self.n - 1 - i) as u32);
        SparseMatrix::from_triplets(
            self.dim,
            (0..self.dim).flat_map(|idx| {
                let k = (idx / stride) % self.grid.sites;
                let base = idx - k * stride;
                local
                    .row(k)
                    .iter()
                    .map(move |&(c, v)| (idx, base + c * stride, v))
                    .collect::<Vec<_>>()
            }),
        )
    }

    /// (M_σ ψ)(k) = ψ(k∘σ).
    pub fn permutation(&self, sigma: &Perm) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.dim,
            (0..self.dim).map(|idx| {
                let k = self.digits(idx);
                let col: Vec<usize> = (0..self.n).map(|i| k[sigma.apply(i)]).collect();
                (idx, self.index(&col), re(1.0))
            }),
        )
    }
}

/// x_i, p_i, M_ij and P_ζ on a grid.
#[derive(Debug, Clone)]
pub struct LatticeRep {
    pub space: ProductSpace,
    pub zeta: Statistics,
    pub order: StencilOrder,
    pub hbar: f64,
    x: Vec<SparseMatrix>,
    p: Vec<SparseMatrix>,
    d2: Vec<SparseMatrix>,
    projector: SparseMatrix,
}

impl LatticeRep {
    pub fn build(grid: Grid, n: usize, zeta: Statistics, order: StencilOrder) -> Result<Self> {
        Self::build_with(grid, n, zeta, order, 1.0, DIM_BUDGET)
    }

    pub fn build_with(
        grid: Grid,
        n: usize,
        zeta: Statistics,
        order: StencilOrder,
        hbar: f64,
        budget: usize,
    ) -> Result<Self> {
        let space = ProductSpace::new(grid, n, budget)?;
        let h = grid.spacing;
        let x1 = SparseMatrix::real_diagonal(&grid.coords());
        let p1 = stencil(&grid, order.first(), 1.0 / h).scale(-I * hbar);
        let d21 = stencil(&grid, order.second(), 1.0 / (h * h));
        let x = (0..n).map(|i| space.embed(i, &x1)).collect();
        let p = (0..n).map(|i| space.embed(i, &p1)).collect();
        let d2 = (0..n).map(|i| space.embed(i, &d21)).collect();
        let perms = Perm::all(n);
        let w = 1.0 / perms.len() as f64;
        let projector = SparseMatrix::from_triplets(
            space.dim,
            perms.iter().flat_map(|s| {
                let sign = if zeta == Statistics::Fermion {
                    s.parity() as f64
                } else {
                    1.0
                };
                space
                    .permutation(s)
                    .triplets()
                    .map(move |(r, c, v)| (r, c, v * (sign * w)))
                    .collect::<Vec<_>>()
            }),
        );
        Ok(LatticeRep {
            space,
            zeta,
            order,
            hbar,
            x,
            p,
            d2,
            projector,
        })
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn grid(&self) -> &Grid {
        &self.space.grid
    }

    pub fn x(&self, i: usize) -> &SparseMatrix {
        &self.x[i]
    }

    pub fn p(&self, i: usize) -> &SparseMatrix {
        &self.p[i]
    }

    /// Second-difference Laplacian on factor i (not p_i²).
    pub fn laplacian(&self, i: usize) -> &SparseMatrix {
        &self.d2[i]
    }

    pub fn projector(&self) -> &SparseMatrix {
        &self.projector
    }

    pub fn exchange(&self, i: usize, j: usize) -> SparseMatrix {
        self.space.permutation(&Perm::transposition(self.n(), i, j))
    }

    /// M_ijk = M_ij M_jk.
    pub fn cyclic(&self, i: usize, j: usize, k: usize) -> SparseMatrix {
        self.space
            .permutation(&Perm::three_cycle(self.n(), i, j, k))
    }

    /// Diagonal A(x_{t₁}, …, x_{t_k}) for an index tuple t.
    pub fn tuple_operator(
        &self,
        a: &(dyn Fn(&[f64]) -> f64 + Sync),
        tuple: &[usize],
    ) -> SparseMatrix {
        self.space
            .diagonal(&|x: &[f64]| a(&tuple.iter().map(|&t| x[t]).collect::<Vec<_>>()))
    }

    /// π_i = p_i + i Σ_{j≠i} V(x_i − x_j) M_ij.
    pub fn pi(&self, i: usize, v: &(dyn Fn(f64) -> f64 + Sync)) -> SparseMatrix {
        let mut out = self.p[i].clone();
        for j in (0..self.n()).filter(|&j| j != i) {
            let vij = self.space.diagonal(&|x: &[f64]| v(x[i] - x[j]));
            out = out.add(&vij.mul(&self.exchange(i, j)).scale(I));
        }
        out
    }

    /// a_i = π_i/√(2m) − i W(x_i).
    pub fn a(
        &self,
        i: usize,
        v: &(dyn Fn(f64) -> f64 + Sync),
        w: &(dyn Fn(f64) -> f64 + Sync),
        mass: f64,
    ) -> SparseMatrix {
        let wi = self.space.diagonal(&|x: &[f64]| w(x[i]));
        self.pi(i, v)
            .scale_real(1.0 / (2.0 * mass).sqrt())
            .sub(&wi.scale(I))
    }

    pub fn ladder(
        &self,
        v: &(dyn Fn(f64) -> f64 + Sync),
        w: &(dyn Fn(f64) -> f64 + Sync),
        mass: f64,
    ) -> Vec<Ladder> {
        (0..self.n())
            .map(|i| Ladder::new(self.a(i, v, w, mass)))
            .collect()
    }
}

/// a_i with its adjoint; h_i = a_i† a_i is applied without forming it.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub a: SparseMatrix,
    pub a_dagger: SparseMatrix,
}

impl Ladder {
    pub fn new(a: SparseMatrix) -> Self {
        let a_dagger = a.adjoint();
        Ladder { a, a_dagger }
    }

    pub fn h(&self) -> SparseMatrix {
        self.a_dagger.mul(&self.a)
    }

    pub fn apply_h(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.a_dagger.matvec(&self.a.matvec(v))
    }
}
