//! Lowest eigenpair of a real symmetric operator restricted to one exchange sector.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rep::ProductSpace;
use super::sparse::SparseMatrix;
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::units::Statistics;

/// Sector dimensions up to this size are diagonalized densely.
pub const DENSE_MAX: usize = 600;

const LANCZOS_SEED: u64 = 0x1a7c_e5ee_d000_0001;
const LANCZOS_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenMethod {
    Dense,
    Lanczos,
}

/// Orthonormal basis of the ζ-symmetric subspace: one vector per multiset
/// (bosons) or per strictly increasing site tuple (fermions).
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub vectors: Vec<Vec<(usize, f64)>>,
    lookup: Vec<Option<(usize, f64)>>,
}

impl SectorBasis {
    pub fn new(space: &ProductSpace, zeta: Statistics) -> Self {
        let perms = Perm::all(space.n);
        let mut vectors = Vec::new();
        let mut lookup = vec![None; space.dim];
        for idx in 0..space.dim {
            let k = space.digits(idx);
            let sorted = match zeta {
                Statistics::Boson => k.windows(2).all(|w| w[0] <= w[1]),
                Statistics::Fermion => k.windows(2).all(|w| w[0] < w[1]),
            };
            if !sorted {
                continue;
            }
            let mut amp: BTreeMap<usize, f64> = BTreeMap::new();
            for s in &perms {
                let sign = if zeta == Statistics::Fermion {
                    s.parity() as f64
                } else {
                    1.0
                };
                let c: Vec<usize> = (0..space.n).map(|i| k[s.apply(i)]).collect();
                *amp.entry(space.index(&c)).or_default() += sign;
            }
            let norm = amp.values().map(|a| a * a).sum::<f64>().sqrt();
            let b = vectors.len();
            let v: Vec<(usize, f64)> = amp.into_iter().map(|(i, a)| (i, a / norm)).collect();
            for &(i, a) in &v {
                lookup[i] = Some((b, a));
            }
            vectors.push(v);
        }
        SectorBasis { vectors, lookup }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Sector coordinates of a full-space vector.
    pub fn restrict(&self, full: &[f64]) -> Vec<f64> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|&(i, a)| a * full[i]).sum())
            .collect()
    }

    pub fn expand(&self, coords: &[f64], dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (v, &c) in self.vectors.iter().zip(coords) {
            for &(i, a) in v {
                out[i] += a * c;
            }
        }
        out
    }

    /// Bᵀ H B for a real symmetric H that commutes with every M_ij.
    pub fn dense_block(&self, h: &SparseMatrix) -> DMatrix<f64> {
        let d = self.len();
        let mut m = DMatrix::zeros(d, d);
        for (l, v) in self.vectors.iter().enumerate() {
            for &(a, amp) in v {
                for &(c, hv) in h.row(a) {
                    if let Some((k, amp_c)) = self.lookup[c] {
                        m[(l, k)] += amp * hv.re * amp_c;
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, h: &SparseMatrix, coords: &[f64]) -> Vec<f64> {
        let full = self.expand(coords, h.dim());
        let hv: Vec<f64> = (0..h.dim())
            .map(|r| h.row(r).iter().map(|&(c, v)| v.re * full[c]).sum())
            .collect();
        self.restrict(&hv)
    }

    /// Lowest eigenpair of H in this sector.
    pub fn lowest(&self, h: &SparseMatrix) -> Result<(f64, Vec<f64>, EigenMethod)> {
        if self.is_empty() {
            return Err(Error::Invalid("empty exchange sector".into()));
        }
        if self.len() <= DENSE_MAX {
            let eig = SymmetricEigen::new(self.dense_block(h));
            let k = eig.eigenvalues.iter().enumerate().fold(0, |best, (i, &e)| {
                if e < eig.eigenvalues[best] {
                    i
                } else {
                    best
                }
            });
            return Ok((
                eig.eigenvalues[k],
                eig.eigenvectors.column(k).iter().copied().collect(),
                EigenMethod::Dense,
            ));
        }
        let (e, v) = lanczos_lowest(self.len(), |x| self.apply(h, x), 2000)?;
        Ok((e, v, EigenMethod::Lanczos))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos with full reorthogonalization from a fixed pseudo-random start.
pub fn lanczos_lowest(
    dim: usize,
    apply: impl Fn(&[f64]) -> Vec<f64>,
    max_iter: usize,
) -> Result<(f64, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let mut q: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n0 = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= n0);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let limit = max_iter.min(dim);
    loop {
        let m = basis.len();
        let mut w = apply(&basis[m - 1]);
        alpha.push(dot(&w, &basis[m - 1]));
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let bnext = dot(&w, &w).sqrt();
        let t = DMatrix::from_fn(m, m, |r, c| {
            if r == c {
                alpha[r]
            } else if r + 1 == c || c + 1 == r {
                beta[r.min(c)]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let k = eig.eigenvalues.iter().enumerate().fold(0, |best, (i, &e)| {
            if e < eig.eigenvalues[best] {
                i
            } else {
                best
            }
        });
        let theta = eig.eigenvalues[k];
        let residual = (bnext * eig.eigenvectors[(m - 1, k)]).abs();
        if residual <= LANCZOS_TOL * theta.abs().max(1.0) || m == limit || bnext < 1e-300 {
            if residual > LANCZOS_TOL * theta.abs().max(1.0) && bnext >= 1e-300 {
                return Err(Error::NoConvergence {
                    iterations: m,
                    residual,
                });
            }
            let s = eig.eigenvectors.column(k);
            let mut v = vec![0.0; dim];
            for (b, &c) in basis.iter().zip(s.iter()) {
                v.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
            }
            let nv = dot(&v, &v).sqrt();
            v.iter_mut().for_each(|x| *x /= nv);
            return Ok((theta, v));
        }
        beta.push(bnext);
        basis.push(w.into_iter().map(|x| x / bnext).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Grid;

    #[test]
    fn sector_sizes() {
        let sp = ProductSpace::new(Grid::periodic(8, 1.0).unwrap(), 3, 10_000).unwrap();
        assert_eq!(SectorBasis::new(&sp, Statistics::Boson).len(), 120);
        assert_eq!(SectorBasis::new(&sp, Statistics::Fermion).len(), 56);
    }

    #[test]
    fn lanczos_matches_dense() {
        let d = 300;
        let a = DMatrix::from_fn(d, d, |r, c| {
            if r == c {
                (r as f64 * 0.37).sin() * 3.0 + r as f64 * 0.01
            } else if r.abs_diff(c) <= 2 {
                -0.4
            } else {
                0.0
            }
        });
        let dense = SymmetricEigen::new(a.clone()).eigenvalues.min();
        let (e, v) = lanczos_lowest(
            d,
            |x| {
                (&a * nalgebra::DVector::from_column_slice(x))
                    .iter()
                    .copied()
                    .collect()
            },
            400,
        )
        .unwrap();
        assert!((e - dense).abs() < 1e-9, "{e} {dense}");
        assert!((dot(&v, &v) - 1.0).abs() < 1e-12);
    }
}
