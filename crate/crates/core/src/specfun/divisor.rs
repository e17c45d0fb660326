//! Exact divisor-power sums σ_ℓ(n) = Σ_{d|n} d^ℓ.

use crate::error::{MathError, Result};

/// σ_ℓ(n) as an exact u64; OverflowError instead of wrapping.
pub fn divisor_sigma(ell: u32, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(MathError::domain("divisor_sigma requires n >= 1"));
    }
    let mut sum: u64 = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            sum = sum
                .checked_add(pow_checked(d, ell)?)
                .ok_or_else(|| MathError::overflow(format!("sigma_{ell}({n})")))?;
            let e = n / d;
            if e != d {
                sum = sum
                    .checked_add(pow_checked(e, ell)?)
                    .ok_or_else(|| MathError::overflow(format!("sigma_{ell}({n})")))?;
            }
        }
        d += 1;
    }
    Ok(sum)
}

fn pow_checked(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| MathError::overflow(format!("{base}^{exp}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(divisor_sigma(1, 1).unwrap(), 1);
        assert_eq!(divisor_sigma(1, 6).unwrap(), 12);
        assert_eq!(divisor_sigma(0, 12).unwrap(), 6);
    }

    #[test]
    fn sigma3_of_10_brute_force() {
        // Oracle: enumerate divisors directly.
        let brute: u64 = (1..=10u64).filter(|d| 10 % d == 0).map(|d| d.pow(3)).sum();
        assert_eq!(brute, 1134);
        assert_eq!(divisor_sigma(3, 10).unwrap(), brute);
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(
            divisor_sigma(13, u64::MAX / 2),
            Err(MathError::Overflow { .. })
        ));
    }

    #[test]
    fn multiplicativity_on_coprime_pairs() {
        for &(a, b) in &[(4u64, 9u64), (5, 8), (7, 27)] {
            for ell in 0..=4u32 {
                let lhs = divisor_sigma(ell, a * b).unwrap();
                let rhs = divisor_sigma(ell, a).unwrap() * divisor_sigma(ell, b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
