//! Sparse multivariate polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;

pub use super::scalar::{Rat, Scalar};

/// Formal parameters, appended after the N coordinates.
pub const PARAMS: [&str; 5] = ["hbar", "m", "lambda", "beta", "omega"];
pub const NPARAM: usize = PARAMS.len();
pub const HBAR: usize = 0;
pub const MASS: usize = 1;
pub const LAMBDA: usize = 2;
pub const BETA: usize = 3;
pub const OMEGA: usize = 4;

pub fn int(v: i64) -> Scalar {
    Scalar::new(Rat::int(v), Rat::int(0))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(Rat::new(num, den), Rat::int(0))
}

pub fn imag_unit() -> Scalar {
    Scalar::new(Rat::int(0), Rat::int(1))
}

/// (−i)^k.
pub fn minus_i_pow(k: usize) -> Scalar {
    match k % 4 {
        0 => int(1),
        1 => -imag_unit(),
        2 => int(-1),
        _ => imag_unit(),
    }
}

fn fmt_rational(r: &Rat) -> String {
    r.render()
}

pub fn fmt_scalar(s: &Scalar) -> String {
    match (s.re.is_zero(), s.im.is_zero()) {
        (_, true) => fmt_rational(&s.re),
        (true, false) => {
            if s.im.is_one() {
                "i".into()
            } else if (-&s.im).is_one() {
                "-i".into()
            } else {
                format!("{}i", fmt_rational(&s.im))
            }
        }
        _ => {
            let sign = if s.im.is_negative() { "-" } else { "+" };
            format!(
                "({}{}{}i)",
                fmt_rational(&s.re),
                sign,
                fmt_rational(&s.im.abs())
            )
        }
    }
}

/// Exponent vector; coordinates first, then parameters.
pub type Mono = [u8; MAX_VARS];
pub const MAX_VARS: usize = 16;

pub fn var_name(n: usize, k: usize) -> String {
    if k < n {
        format!("x{}", k + 1)
    } else {
        PARAMS[k - n].to_string()
    }
}

mod modp {
    use super::Rat;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    pub const P: u64 = (1 << 61) - 1;

    pub fn mul(a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        let r = (x as u64 & P) + (x >> 61) as u64;
        if r >= P {
            r - P
        } else {
            r
        }
    }

    pub fn add(a: u64, b: u64) -> u64 {
        let r = a + b;
        if r >= P {
            r - P
        } else {
            r
        }
    }

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    }

    fn reduce_i128(v: i128) -> u64 {
        if (0..P as i128).contains(&v) {
            v as u64
        } else {
            v.rem_euclid(P as i128) as u64
        }
    }

    fn reduce_big(v: &BigInt) -> u64 {
        let p = BigInt::from(P);
        (((v % &p) + &p) % &p).to_u64().unwrap_or(0)
    }

    /// None when the denominator is divisible by P.
    pub fn rat(r: &Rat) -> Option<u64> {
        let (n, d) = match r {
            Rat::Small(n, d) => (reduce_i128(*n), reduce_i128(*d)),
            Rat::Big(b) => (reduce_big(b.numer()), reduce_big(b.denom())),
        };
        match d {
            0 => None,
            1 => Some(n),
            _ => Some(mul(n, pow(d, P - 2))),
        }
    }

    /// Fixed pseudo-random evaluation point per variable.
    pub fn point(k: usize) -> u64 {
        let mut z = (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31)) % P
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub(crate) nvars: usize,
    pub(crate) terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        Self::monomial(nvars, &[(k, 1)], int(1))
    }

    pub fn monomial(nvars: usize, powers: &[(usize, u8)], c: Scalar) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        let mut m = [0u8; MAX_VARS];
        for &(k, e) in powers {
            m[k] += e;
        }
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(map: &mut BTreeMap<Mono, Scalar>, m: Mono, c: Scalar) {
        use std::collections::btree_map::Entry;
        match map.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            Self::add_term(&mut self.terms, *m, c.clone());
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: BTreeMap<Mono, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = *m1;
                for k in 0..MAX_VARS {
                    m[k] += m2[k];
                }
                Self::add_term(&mut acc, m, c1 * c2);
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Self::constant(self.nvars, int(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn deriv(&self, k: usize) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[k] > 0 {
                let mut m2 = *m;
                m2[k] -= 1;
                out.terms.insert(m2, c * int(m[k] as i64));
            }
        }
        out
    }

    /// Relabels variables: variable k becomes map[k].
    pub fn rename(&self, map: &[usize]) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = [0u8; MAX_VARS];
            for (k, &e) in m.iter().enumerate().take(self.nvars) {
                m2[map[k]] += e;
            }
            Self::add_term(&mut out.terms, m2, c.clone());
        }
        out
    }

    pub fn conj(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Exact quotient by (x_i − x_j), or None when it does not divide.
    pub fn div_linear(&self, i: usize, j: usize) -> Option<Poly> {
        if !self.vanishes_at(i, j) {
            return None;
        }
        let mut r = self.terms.clone();
        let mut q = Self::zero(self.nvars);
        loop {
            let Some((m, c)) = r
                .iter()
                .max_by_key(|(m, _)| m[i])
                .map(|(m, c)| (*m, c.clone()))
            else {
                return Some(q);
            };
            if m[i] == 0 {
                return None;
            }
            r.remove(&m);
            let mut qm = m;
            qm[i] -= 1;
            let mut shifted = qm;
            shifted[j] += 1;
            Self::add_term(&mut r, shifted, c.clone());
            Self::add_term(&mut q.terms, qm, c);
        }
    }

    /// True when the polynomial may vanish on x_i = x_j. A modular evaluation
    /// at a fixed point of that hyperplane is a sound filter: a nonzero value
    /// proves non-divisibility, a zero defers to exact division.
    pub fn vanishes_at(&self, i: usize, j: usize) -> bool {
        let mut pt = [0u64; MAX_VARS];
        for (k, v) in pt.iter_mut().enumerate() {
            *v = modp::point(k);
        }
        pt[i] = pt[j];
        let (mut re, mut im) = (0u64, 0u64);
        for (m, c) in &self.terms {
            let (Some(cr), Some(ci)) = (modp::rat(&c.re), modp::rat(&c.im)) else {
                return true;
            };
            let mut v = 1u64;
            for k in 0..self.nvars {
                for _ in 0..m[k] {
                    v = modp::mul(v, pt[k]);
                }
            }
            re = modp::add(re, modp::mul(cr, v));
            im = modp::add(im, modp::mul(ci, v));
        }
        re == 0 && im == 0
    }

    /// Exact quotient by a single variable, or None.
    pub fn div_var(&self, k: usize) -> Option<Poly> {
        if self.terms.keys().any(|m| m[k] == 0) {
            return None;
        }
        Some(Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = *m;
                    m2[k] -= 1;
                    (m2, c.clone())
                })
                .collect(),
        })
    }

    /// Evaluates with all variables replaced by complex floats.
    pub fn eval(&self, vals: &[Complex<f64>]) -> Complex<f64> {
        let mut s = Complex::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex::new(c.re.to_f64(), c.im.to_f64());
            for (k, &e) in m.iter().enumerate().take(self.nvars) {
                if e > 0 {
                    t *= vals[k].powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let n = self.nvars - NPARAM;
        let mut parts = Vec::new();
        // descending order reads naturally (highest powers first)
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            // parameters first, then coordinates
            for k in (n..self.nvars).chain(0..n) {
                match m[k] {
                    0 => {}
                    1 => factors.push(var_name(n, k)),
                    e => factors.push(format!("{}^{}", var_name(n, k), e)),
                }
            }
            let cs = fmt_scalar(c);
            let term = if factors.is_empty() {
                cs
            } else if cs == "1" {
                factors.join("*")
            } else if cs == "-1" {
                format!("-{}", factors.join("*"))
            } else {
                format!("{}*{}", cs, factors.join("*"))
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
