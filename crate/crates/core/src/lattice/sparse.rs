//! Row-compressed complex sparse matrices.

use std::io::Write;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        SparseMatrix {
            dim: d.len(),
            rows: d
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if v == Complex64::default() {
                        vec![]
                    } else {
                        vec![(i, v)]
                    }
                })
                .collect(),
        }
    }

    pub fn real_diagonal(d: &[f64]) -> Self {
        Self::diagonal(
            &d.iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// Duplicates are summed; exact zeros are dropped.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            rows[r].push((c, v));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| e.1 != Complex64::default());
            *row = merged;
        }
        SparseMatrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Complex64)] {
        &self.rows[r]
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.rows[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|k| self.rows[r][k].1)
            .unwrap_or_default()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&(c, v)| (c, v * s)).collect())
                .collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, o: &SparseMatrix) -> Self {
        Self::from_triplets(self.dim, self.triplets().chain(o.triplets()))
    }

    pub fn sub(&self, o: &SparseMatrix) -> Self {
        self.add(&o.scale_real(-1.0))
    }

    pub fn sum<'a>(dim: usize, items: impl IntoIterator<Item = &'a SparseMatrix>) -> Self {
        Self::from_triplets(
            dim,
            items
                .into_iter()
                .flat_map(|m| m.triplets().collect::<Vec<_>>()),
        )
    }

    pub fn mul(&self, o: &SparseMatrix) -> Self {
        let mut acc = vec![Complex64::default(); self.dim];
        let mut used = vec![false; self.dim];
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            let mut touched = Vec::new();
            for &(k, a) in row {
                for &(c, b) in &o.rows[k] {
                    if !used[c] {
                        used[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for c in touched {
                if acc[c] != Complex64::default() {
                    out.push((c, acc[c]));
                }
                acc[c] = Complex64::default();
                used[c] = false;
            }
            rows.push(out);
        }
        SparseMatrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn commutator(&self, o: &SparseMatrix) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, a)| a * v[c]).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.triplets()
            .map(|(_, _, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets()
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// max |A − B| entrywise.
    pub fn distance(&self, o: &SparseMatrix) -> f64 {
        self.sub(o).max_abs()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.distance(&self.adjoint())
    }

    pub fn is_real(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.im == 0.0)
    }

    /// Coordinate text: `row col value` for real matrices, `row col re im` otherwise.
    pub fn write_coo(&self, mut w: impl Write) -> std::io::Result<()> {
        let real = self.is_real();
        writeln!(w, "# dim {} nnz {}", self.dim, self.nnz())?;
        for (r, c, v) in self.triplets() {
            if real {
                writeln!(w, "{r} {c} {:e}", v.re)?;
            } else {
                writeln!(w, "{r} {c} {:e} {:e}", v.re, v.im)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn products_and_adjoints() {
        let a = SparseMatrix::from_triplets(2, [(0, 1, c(1.0, 2.0)), (1, 0, c(3.0, 0.0))]);
        let b = SparseMatrix::from_triplets(2, [(0, 0, c(2.0, 0.0)), (1, 1, c(0.0, 1.0))]);
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 1), c(1.0, 2.0) * c(0.0, 1.0));
        assert_eq!(ab.get(1, 0), c(6.0, 0.0));
        assert_eq!(a.adjoint().get(1, 0), c(1.0, -2.0));
        assert_eq!(a.adjoint().adjoint(), a);
        let mut out = Vec::new();
        b.write_coo(&mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().contains("1 1 0e0 1e0"));
    }
}
