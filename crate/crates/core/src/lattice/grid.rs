//! One-dimensional grids: periodic rings and Dirichlet boxes.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub sites: usize,
    pub spacing: f64,
    pub boundary: Boundary,
    /// Coordinate of site 0.
    pub origin: f64,
}

impl Grid {
    /// Ring of circumference L with sites at k L / L_s.
    pub fn periodic(sites: usize, circumference: f64) -> Result<Self> {
        Self::check(sites, circumference)?;
        Ok(Grid {
            sites,
            spacing: circumference / sites as f64,
            boundary: Boundary::Periodic,
            origin: 0.0,
        })
    }

    /// Interior sites of [−a, a] with Dirichlet walls at ±a.
    pub fn boxed(sites: usize, half_width: f64) -> Result<Self> {
        Self::check(sites, half_width)?;
        let h = 2.0 * half_width / (sites + 1) as f64;
        Ok(Grid {
            sites,
            spacing: h,
            boundary: Boundary::Box,
            origin: -half_width + h,
        })
    }

    fn check(sites: usize, length: f64) -> Result<()> {
        if sites < 4 {
            return Err(Error::ParameterOutOfRange {
                name: "sites".into(),
                reason: "need at least 4 sites".into(),
            });
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "length".into(),
                reason: "must be positive".into(),
            });
        }
        Ok(())
    }

    pub fn coord(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.spacing
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.sites).map(|k| self.coord(k)).collect()
    }

    pub fn circumference(&self) -> Option<f64> {
        match self.boundary {
            Boundary::Periodic => Some(self.sites as f64 * self.spacing),
            Boundary::Box => None,
        }
    }

    /// Neighbor k + s, or None past a wall.
    pub fn shift(&self, k: usize, s: isize) -> Option<usize> {
        let t = k as isize + s;
        let l = self.sites as isize;
        match self.boundary {
            Boundary::Periodic => Some(t.rem_euclid(l) as usize),
            Boundary::Box => (0..l).contains(&t).then_some(t as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = Grid::boxed(40, 6.0).unwrap();
        assert!((g.coord(0) + 6.0 - g.spacing).abs() < 1e-15);
        assert!((g.coord(39) - 6.0 + g.spacing).abs() < 1e-12);
        assert_eq!(g.shift(0, -1), None);
        let r = Grid::periodic(8, 2.0).unwrap();
        assert_eq!(r.shift(0, -1), Some(7));
        assert_eq!(r.circumference(), Some(2.0));
        assert!(Grid::boxed(3, 1.0).is_err());
    }
}
