//! Modified Bessel functions of the first kind, orders 0 and 1.
//!
//! Power series: I_ν(z) = Σ_k (z/2)^{2k+ν} / (k! (k+ν)!). Every term is
//! positive, so summation is stable; the arguments used by the Toda-like
//! pair function stay below ~20 where the series needs at most ~60 terms.

fn series(z: f64, order: u32) -> f64 {
    let q = 0.25 * z * z;
    let mut term = match order {
        0 => 1.0,
        _ => 0.5 * z,
    };
    let mut sum = term;
    let nu = order as f64;
    for k in 1..500 {
        let k = k as f64;
        term *= q / (k * (k + nu));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    sum
}

pub fn bessel_i0(z: f64) -> f64 {
    series(z.abs(), 0)
}

pub fn bessel_i1(z: f64) -> f64 {
    let v = series(z.abs(), 1);
    if z < 0.0 {
        -v
    } else {
        v
    }
}

/// I₁(z)/I₀(z).
pub fn bessel_ratio(z: f64) -> f64 {
    bessel_i1(z) / bessel_i0(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Abramowitz & Stegun table 9.8
        assert!((bessel_i0(1.0) - 1.266_065_877_752_008_4).abs() < 1e-15);
        assert!((bessel_i1(1.0) - 0.565_159_103_992_485_0).abs() < 1e-15);
        assert!((bessel_i0(2.0) - 2.279_585_302_336_067_3).abs() < 1e-14);
        assert!((bessel_i1(2.0) - 1.590_636_854_637_329_1).abs() < 1e-14);
        assert_eq!(bessel_i0(0.0), 1.0);
        assert_eq!(bessel_i1(0.0), 0.0);
    }

    #[test]
    fn derivative_identity() {
        // I₀′ = I₁ and I₁′ = I₀ − I₁/z
        for &z in &[0.3, 1.0, 2.5, 7.0] {
            let h = 1e-5;
            let d0 = (bessel_i0(z + h) - bessel_i0(z - h)) / (2.0 * h);
            let d1 = (bessel_i1(z + h) - bessel_i1(z - h)) / (2.0 * h);
            assert!((d0 - bessel_i1(z)).abs() < 1e-8 * bessel_i0(z));
            assert!((d1 - (bessel_i0(z) - bessel_i1(z) / z)).abs() < 1e-8 * bessel_i0(z));
        }
    }
}
