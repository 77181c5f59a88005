//! Exact arithmetic: big rationals, sparse polynomials in the fixed
//! alphabet `x, y, z, w, p, q, t`, and truncated power series in `t`.

pub mod json;
pub mod poly;
pub mod series;

pub use num_rational::BigRational;
pub use poly::{int, rat, Monomial, Polynomial, Var, NVARS};
pub use series::TruncatedSeries;

/// Binomial coefficient as an exact rational; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigRational {
    if n < 0 || k < 0 || k > n {
        return int(0);
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

/// Multinomial `n! / (k_1! ... k_r!)`; zero if any part is negative or the
/// parts do not sum to `n`.
pub fn multinomial(n: i64, parts: &[i64]) -> BigRational {
    if parts.iter().any(|&k| k < 0) || parts.iter().sum::<i64>() != n {
        return int(0);
    }
    let mut rest = n;
    let mut acc = int(1);
    for &k in parts {
        acc *= binomial(rest, k);
        rest -= k;
    }
    acc
}

/// `base^e` for a possibly negative exponent.
pub fn rpow(base: i64, e: i64) -> BigRational {
    let b = int(base);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(-1, -1), int(0));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(multinomial(4, &[1, 1, 2]), int(12));
        assert_eq!(multinomial(2, &[1, 1, 0]), int(2));
        assert_eq!(multinomial(0, &[1, 1, -2]), int(0));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rpow(3, -2), rat(1, 9));
        assert_eq!(rpow(1, -1), int(1));
        assert_eq!(rpow(0, 0), int(1));
    }
}
