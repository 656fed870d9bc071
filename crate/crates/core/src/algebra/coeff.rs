//! Rational functions N / D with D a product of coordinate differences
//! (x_i − x_j), i < j, and of parameter powers. The class is closed under
//! differentiation, relabeling and products, and the reduced fraction is unique.

use std::fmt;

use super::perm::Perm;
use super::poly::{int, Poly, Scalar, NPARAM};

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn pair_of(n: usize, mut k: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCoeff {
    pub(crate) num: Poly,
    /// Exponents of (x_i − x_j) for i < j, then of the parameters.
    pub(crate) den: Vec<u16>,
}

impl RationalCoeff {
    pub fn n(&self) -> usize {
        self.num.nvars - NPARAM
    }

    pub fn from_poly(num: Poly) -> Self {
        let n = num.nvars - NPARAM;
        let den = vec![0; pair_count(n) + NPARAM];
        RationalCoeff { num, den }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(Poly::zero(n + NPARAM))
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::from_poly(Poly::constant(n + NPARAM, c))
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, int(1))
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(n + NPARAM, i))
    }

    pub fn param(n: usize, k: usize) -> Self {
        Self::from_poly(Poly::var(n + NPARAM, n + k))
    }

    /// c / (x_i − x_j)^e for any ordered pair i ≠ j.
    pub fn inverse_difference(n: usize, i: usize, j: usize, e: u16) -> Self {
        let mut c = Self::one(n);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        c.den[pair_index(n, a, b)] = e;
        if i > j && e % 2 == 1 {
            c.num = c.num.neg();
        }
        c
    }

    pub fn inverse_param(n: usize, k: usize, e: u16) -> Self {
        let mut c = Self::one(n);
        c.den[pair_count(n) + k] = e;
        c
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }

    fn factor_poly(&self, slot: usize) -> Poly {
        let n = self.n();
        let nv = self.num.nvars;
        let np = pair_count(n);
        if slot < np {
            let (i, j) = pair_of(n, slot);
            Poly::var(nv, i).add(&Poly::var(nv, j).neg())
        } else {
            Poly::var(nv, n + slot - np)
        }
    }

    fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return self;
        }
        let n = self.n();
        let np = pair_count(n);
        for slot in 0..self.den.len() {
            while self.den[slot] > 0 {
                let q = if slot < np {
                    let (i, j) = pair_of(n, slot);
                    self.num.div_linear(i, j)
                } else {
                    self.num.div_var(n + slot - np)
                };
                match q {
                    Some(q) => {
                        self.num = q;
                        self.den[slot] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Sum of many coefficients over one common denominator.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a RationalCoeff>) -> Option<RationalCoeff> {
        let items: Vec<&RationalCoeff> = items.into_iter().filter(|c| !c.is_zero()).collect();
        let first = items.first()?;
        if items.len() == 1 {
            return Some((*first).clone());
        }
        let mut den = first.den.clone();
        for c in &items[1..] {
            for (d, &e) in den.iter_mut().zip(&c.den) {
                *d = (*d).max(e);
            }
        }
        let mut num = Poly::zero(first.num.nvars);
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); den.len()];
        for c in &items {
            let mut t = c.num.clone();
            for slot in 0..den.len() {
                let k = (den[slot] - c.den[slot]) as usize;
                if k > 0 {
                    let f = &mut cache[slot];
                    if f.is_empty() {
                        f.push(Poly::constant(c.num.nvars, int(1)));
                    }
                    while f.len() <= k {
                        let next = f.last().unwrap().mul(&c.factor_poly(slot));
                        f.push(next);
                    }
                    t = t.mul(&f[k]);
                }
            }
            num.add_assign(&t);
        }
        Some(RationalCoeff { num, den }.reduce())
    }

    pub fn add(&self, o: &RationalCoeff) -> RationalCoeff {
        Self::sum([self, o]).unwrap_or_else(|| Self::zero(self.n()))
    }

    pub fn neg(&self) -> RationalCoeff {
        RationalCoeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RationalCoeff) -> RationalCoeff {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> RationalCoeff {
        RationalCoeff {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn mul(&self, o: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n());
        }
        let den = self.den.iter().zip(&o.den).map(|(a, b)| a + b).collect();
        let shared = self.den.iter().zip(&o.den).any(|(&a, &b)| a + b > 0);
        let c = RationalCoeff {
            num: self.num.mul(&o.num),
            den,
        };
        if shared {
            c.reduce()
        } else {
            c
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RationalCoeff {
        RationalCoeff {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn pow(&self, e: u32) -> RationalCoeff {
        let mut out = Self::one(self.n());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// ∂/∂x_k.
    pub fn deriv(&self, k: usize) -> RationalCoeff {
        let n = self.n();
        let nv = self.num.nvars;
        // pairs that involve x_k and appear in the denominator
        let touching: Vec<(usize, usize, usize)> = (0..n)
            .filter(|&o| o != k)
            .map(|o| {
                let (a, b) = if k < o { (k, o) } else { (o, k) };
                (pair_index(n, a, b), a, b)
            })
            .filter(|&(s, _, _)| self.den[s] > 0)
            .collect();
        if touching.is_empty() {
            return RationalCoeff {
                num: self.num.deriv(k),
                den: self.den.clone(),
            };
        }
        let factors: Vec<Poly> = touching
            .iter()
            .map(|&(_, a, b)| Poly::var(nv, a).add(&Poly::var(nv, b).neg()))
            .collect();
        let all = factors
            .iter()
            .fold(Poly::constant(nv, int(1)), |acc, f| acc.mul(f));
        let mut num = self.num.deriv(k).mul(&all);
        for (t, &(slot, a, _)) in touching.iter().enumerate() {
            // ∂_k (x_a − x_b) = ±1
            let sign = if a == k { 1 } else { -1 };
            let others = factors
                .iter()
                .enumerate()
                .filter(|(u, _)| *u != t)
                .fold(Poly::constant(nv, int(1)), |acc, (_, f)| acc.mul(f));
            num.add_assign(
                &self
                    .num
                    .mul(&others)
                    .scale(&int(-sign * self.den[slot] as i64)),
            );
        }
        let mut den = self.den.clone();
        for &(slot, _, _) in &touching {
            den[slot] += 1;
        }
        RationalCoeff { num, den }.reduce()
    }

    /// c(x) ↦ c(x_{σ(1)}, …, x_{σ(N)}).
    pub fn permute(&self, sigma: &Perm) -> RationalCoeff {
        if sigma.is_identity() {
            return self.clone();
        }
        let n = self.n();
        let np = pair_count(n);
        let map: Vec<usize> = (0..self.num.nvars)
            .map(|k| if k < n { sigma.apply(k) } else { k })
            .collect();
        let mut num = self.num.rename(&map);
        let mut den = vec![0u16; self.den.len()];
        let mut flips = 0u32;
        for slot in 0..np {
            let e = self.den[slot];
            if e == 0 {
                continue;
            }
            let (i, j) = pair_of(n, slot);
            let (a, b) = (sigma.apply(i), sigma.apply(j));
            if a < b {
                den[pair_index(n, a, b)] = e;
            } else {
                den[pair_index(n, b, a)] = e;
                flips += e as u32;
            }
        }
        den[np..].copy_from_slice(&self.den[np..]);
        if flips % 2 == 1 {
            num = num.neg();
        }
        RationalCoeff { num, den }
    }

    pub fn conj(&self) -> RationalCoeff {
        RationalCoeff {
            num: self.num.conj(),
            den: self.den.clone(),
        }
    }

    /// Numeric value at complex points for coordinates and parameters.
    pub fn eval(&self, vals: &[num_complex::Complex<f64>]) -> num_complex::Complex<f64> {
        let mut d = num_complex::Complex::new(1.0, 0.0);
        for (slot, &e) in self.den.iter().enumerate() {
            if e > 0 {
                d *= self.factor_poly(slot).eval(vals).powi(e as i32);
            }
        }
        self.num.eval(vals) / d
    }

    pub fn render(&self) -> String {
        let n = self.n();
        let np = pair_count(n);
        let mut dens = Vec::new();
        for (slot, &e) in self.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if slot < np {
                let (i, j) = pair_of(n, slot);
                format!("(x{}-x{})", i + 1, j + 1)
            } else {
                super::poly::PARAMS[slot - np].to_string()
            };
            dens.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let num = self.num.render();
        if dens.is_empty() {
            return num;
        }
        let num = if self.num.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        format!("{}/{}", num, dens.join("*"))
    }
}

impl fmt::Display for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::LAMBDA;
    use num_complex::Complex;

    #[test]
    fn pair_indexing_round_trips() {
        for n in 2..6 {
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    assert_eq!(pair_index(n, i, j), k);
                    assert_eq!(pair_of(n, k), (i, j));
                    k += 1;
                }
            }
        }
    }

    #[test]
    fn cancellation_reduces() {
        let n = 3;
        let a = RationalCoeff::inverse_difference(n, 0, 1, 1);
        let b = RationalCoeff::inverse_difference(n, 1, 0, 1);
        assert!(a.add(&b).is_zero());
        // (x1 − x2)/(x1 − x2) = 1
        let d = RationalCoeff::x(n, 0).sub(&RationalCoeff::x(n, 1));
        assert_eq!(d.mul(&a), RationalCoeff::one(n));
        // 1/(x12 x23) + 1/(x23 x31) + 1/(x31 x12) = 0
        let inv = |i, j| RationalCoeff::inverse_difference(n, i, j, 1);
        let s = RationalCoeff::sum(&[
            inv(0, 1).mul(&inv(1, 2)),
            inv(1, 2).mul(&inv(2, 0)),
            inv(2, 0).mul(&inv(0, 1)),
        ]);
        assert!(s.unwrap().is_zero());
    }

    #[test]
    fn derivative_matches_numeric() {
        let n = 3;
        let c = RationalCoeff::param(n, LAMBDA)
            .mul(&RationalCoeff::inverse_difference(n, 0, 2, 2))
            .mul(&RationalCoeff::x(n, 1));
        let d = c.deriv(0);
        let mut pt: Vec<Complex<f64>> = [0.3, 1.1, -0.7, 1.0, 1.0, 1.3, 0.5, 0.9]
            .iter()
            .map(|&v| Complex::new(v, 0.0))
            .collect();
        let h = 1e-6;
        pt[0].re += h;
        let up = c.eval(&pt);
        pt[0].re -= 2.0 * h;
        let dn = c.eval(&pt);
        pt[0].re += h;
        assert!(((up - dn) / (2.0 * h) - d.eval(&pt)).norm() < 1e-6);
    }

    #[test]
    fn permutation_flips_signs() {
        let n = 2;
        let a = RationalCoeff::inverse_difference(n, 0, 1, 1);
        let s = Perm::transposition(n, 0, 1);
        assert_eq!(a.permute(&s), a.neg());
        let sq = RationalCoeff::inverse_difference(n, 0, 1, 2);
        assert_eq!(sq.permute(&s), sq);
    }
}
