//! Exact Gaussian rationals with a machine-integer fast path.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Reduced rational: small numerator/denominator when they fit, big otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rat {
    Small(i128, i128),
    Big(BigRational),
}

impl Rat {
    pub fn int(v: i64) -> Rat {
        Rat::Small(v as i128, 1)
    }

    pub fn new(num: i64, den: i64) -> Rat {
        Rat::small(num as i128, den as i128).expect("i64 ratio fits")
    }

    fn small(num: i128, den: i128) -> Option<Rat> {
        if den == 0 {
            panic!("zero denominator");
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        Some(Rat::Small(n, d))
    }

    fn big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => b.clone(),
        }
    }

    fn from_big(b: BigRational) -> Rat {
        match (b.numer().to_i128(), b.denom().to_i128()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(b),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Rat::Small(n, 1) => n.to_string(),
            Rat::Small(n, d) => format!("{n}/{d}"),
            Rat::Big(b) if b.is_integer() => b.numer().to_string(),
            Rat::Big(b) => format!("{}/{}", b.numer(), b.denom()),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rat::Small(s, 1);
                }
            }
            let r = if b == d {
                a.checked_add(*c).and_then(|n| Rat::small(n, *b))
            } else {
                a.checked_mul(*d)
                    .zip(c.checked_mul(*b))
                    .and_then(|(x, y)| x.checked_add(y))
                    .zip(b.checked_mul(*d))
                    .and_then(|(n, den)| Rat::small(n, den))
            };
            if let Some(r) = r {
                return r;
            }
        }
        Rat::from_big(self.big() + o.big())
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *a == 0 || *c == 0 {
                return Rat::Small(0, 1);
            }
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rat::Small(p, 1);
                }
            }
            // cross-cancel first to keep the products small
            let g1 = a.gcd(d);
            let g2 = c.gcd(b);
            let r = (a / g1)
                .checked_mul(c / g2)
                .zip((b / g2).checked_mul(d / g1))
                .map(|(n, den)| Rat::Small(n, den));
            if let Some(r) = r {
                return r;
            }
        }
        Rat::from_big(self.big() * o.big())
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::Big(-self.big()),
            },
            Rat::Big(b) => Rat::from_big(-b.clone()),
        }
    }
}

/// re + i·im.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub re: Rat,
    pub im: Rat,
}

impl Scalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        Scalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: &self.re * &o.re,
                im: Rat::Small(0, 1),
            };
        }
        let re = &(&self.re * &o.re) + &(-&(&self.im * &o.im));
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Scalar { re, im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Add<&$t> for $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                &self + o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                &self * o
            }
        }
        impl Mul<$t> for &$t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self + &(-&o)
            }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, o: $t) {
                *self = &*self + &o;
            }
        }
    };
}

owned_ops!(Rat);
owned_ops!(Scalar);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_big_agree() {
        let a = Rat::new(3, 4);
        let b = Rat::new(-5, 6);
        assert_eq!(&a + &b, Rat::new(-1, 12));
        assert_eq!(&a * &b, Rat::new(-5, 8));
        let huge = Rat::Small(i128::MAX / 3, 1);
        let sq = &huge * &huge;
        assert!(matches!(sq, Rat::Big(_)));
        let back = &sq + &(-&sq);
        assert_eq!(back, Rat::Small(0, 1));
    }

    #[test]
    fn gaussian_product() {
        let i = Scalar::new(Rat::int(0), Rat::int(1));
        assert_eq!(&i * &i, Scalar::new(Rat::int(-1), Rat::int(0)));
        assert_eq!(i.conj(), -i.clone());
    }
}
