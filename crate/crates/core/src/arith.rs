//! Exact integer primitives: binomials, Lucas reduction, gcds and prime powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `C(n, k)` in any coefficient ring, zero outside `0..=n`.
///
/// Uses the multiplicative recurrence `C(n,i) = C(n,i-1)·(n-i+1)/i`, whose
/// divisions are exact over the integers.
pub fn binomial_in<T: Scalar>(n: u64, k: i64) -> T {
    if k < 0 || k as u64 > n {
        return T::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = T::one();
    for i in 1..=k {
        let num = T::from_u64(n - i + 1).expect("binomial factor fits the scalar type");
        let den = T::from_u64(i).expect("binomial divisor fits the scalar type");
        acc = acc * num / den;
    }
    acc
}

/// Exact `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    binomial_in::<BigInt>(n, k)
}

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `m` in increasing order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Returns `(p, e)` with `m = p^e` when `m ≥ 2` is a prime power.
pub fn prime_power_check(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let factors = prime_factors(m);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut rest = m;
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

/// Base-`p` expansion `d_0 + d_1 p + … + d_r p^r` with `d_r ≠ 0`; empty for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePDigits {
    p: u64,
    digits: Vec<u64>,
}

impl BasePDigits {
    pub fn new(mut value: u64, p: u64) -> Self {
        assert!(p >= 2, "base must be at least 2");
        let mut digits = Vec::new();
        while value > 0 {
            digits.push(value % p);
            value /= p;
        }
        Self { p, digits }
    }

    pub fn base(&self) -> u64 {
        self.p
    }

    /// Least significant digit first.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`, zero beyond the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> BigInt {
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * self.p + d)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// C(n, m) mod p for digits n, m < p; every i ≤ m is invertible mod p.
fn small_binomial_mod(n: u64, m: u64, p: u64) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..m {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// `C(n, m) mod p` by Lucas' digit-wise product.
pub fn binomial_mod_p(n: u64, m: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m > n {
        return Ok(0);
    }
    let nd = BasePDigits::new(n, p);
    let md = BasePDigits::new(m, p);
    let mut acc = 1 % p;
    for i in 0..nd.digits().len() {
        acc = mul_mod(acc, small_binomial_mod(nd.digit(i), md.digit(i), p), p);
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}

/// Nonnegative gcd of the absolute values.
pub fn gcd_list(values: &[BigInt]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::Empty("gcd_list"));
    }
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return Err(Error::AllZero);
    }
    Ok(g.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(14, 4), pascal_row(14)[4]);
        assert_eq!(binomial(14, 4), BigInt::from(1001));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for n in 0..=64usize {
            let row = pascal_row(n);
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as i64), expected, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_in_machine_ints_and_rationals() {
        assert_eq!(binomial_in::<i64>(30, 15), 155_117_520);
        let r: num_rational::BigRational = binomial_in(10, 3);
        assert_eq!(r, num_rational::BigRational::from_integer(120.into()));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binomial_mod_p(14, 4, 3), Ok(2));
        assert_eq!(binomial_mod_p(14, 5, 5), Ok(2));
        assert_eq!(binomial_mod_p(14, 0, 7), Ok(1));
        assert_eq!(binomial_mod_p(3, 5, 7), Ok(0));
        assert_eq!(binomial_mod_p(14, 4, 4), Err(Error::NotPrime(4)));
        assert_eq!(binomial_mod_p(14, 4, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn lucas_agrees_with_exact_binomial() {
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for n in 0..=200u64 {
                for m in 0..=n {
                    let exact = binomial(n, m as i64).mod_floor(&BigInt::from(p));
                    assert_eq!(
                        BigInt::from(binomial_mod_p(n, m, p).unwrap()),
                        exact,
                        "C({n},{m}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn base_p_digits() {
        let d = BasePDigits::new(14, 3);
        assert_eq!(d.digits(), &[2, 1, 1]);
        assert_eq!(d.value(), BigInt::from(14));
        assert_eq!(BasePDigits::new(14, 5).digits(), &[4, 2]);
        assert!(BasePDigits::new(0, 7).digits().is_empty());
        assert_eq!(BasePDigits::new(0, 7).value(), BigInt::zero());
    }

    #[test]
    fn gcd_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(gcd_list(&v(&[6, -10, 15])), Ok(BigInt::one()));
        assert_eq!(gcd_list(&v(&[-10, -5, -20])), Ok(BigInt::from(5)));
        assert_eq!(gcd_list(&v(&[0, -7])), Ok(BigInt::from(7)));
        assert_eq!(gcd_list(&v(&[0, 0])), Err(Error::AllZero));
        assert_eq!(gcd_list(&[]), Err(Error::Empty("gcd_list")));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_check(9), Some((3, 2)));
        assert_eq!(prime_power_check(15), None);
        assert_eq!(prime_power_check(7), Some((7, 1)));
        assert_eq!(prime_power_check(1024), Some((2, 10)));
        assert_eq!(prime_power_check(1), None);
    }

    #[test]
    fn prime_power_matches_trial_factorisation() {
        // Smallest-prime-factor sieve as an independent factoriser.
        const LIMIT: usize = 1_000_000;
        let mut spf = vec![0u32; LIMIT + 1];
        for i in 2..=LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        for (m, &p) in spf.iter().enumerate().skip(2) {
            let p = p as usize;
            let mut rest = m;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            let expected = (rest == 1).then_some((p as u64, e));
            assert_eq!(prime_power_check(m as u64), expected, "m = {m}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn gcd_is_permutation_and_sign_invariant(
            xs in prop::collection::vec(-10_000i64..10_000, 1..8),
            flips in prop::collection::vec(any::<bool>(), 8),
            seed in any::<u64>(),
        ) {
            prop_assume!(xs.iter().any(|&x| x != 0));
            let base: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x)).collect();
            let mut other: Vec<BigInt> = base
                .iter()
                .zip(&flips)
                .map(|(x, &f)| if f { -x } else { x.clone() })
                .collect();
            let len = other.len();
            other.rotate_left((seed as usize) % len);
            prop_assert_eq!(gcd_list(&base).unwrap(), gcd_list(&other).unwrap());
        }

        #[test]
        fn lucas_agrees_on_random_inputs(n in 0u64..5000, m in 0u64..5000, pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let exact = binomial(n, m as i64).mod_floor(&BigInt::from(p));
            prop_assert_eq!(BigInt::from(binomial_mod_p(n, m, p).unwrap()), exact);
        }
    }
}
