//! Closed forms for the Milnor-number changes under the modifications `B_k`.
//!
//! * `s_n(D_{k,n})`: Milnor number of the correction term of `B_k`;
//! * `s_{k,n} = -s_n(D_{k,n}) - (n + (-1)^n)`: total change under `B_k`;
//! * `L_{k,n} = -s_{k,n} + 3 s_{k-1,n} - 2 s_{k-2,n}`: a compact combination
//!   used to certify that the `s_{k,n}` are coprime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{binomial, is_prime, prime_power_check, BasePDigits};
use crate::error::{Error, Result};

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn sign(e: u32) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_k(n: u32, k: u32, lo: u32) -> Result<()> {
    if n < 2 || k < lo || k + 2 > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            lo: lo as i64,
            hi: n as i64 - 2,
        });
    }
    Ok(())
}

/// `s_n(D_{k,n}) = (n-k-1)(2^{k+1}-1) + Σ_{i=0}^{k} (-1)^i (2^i + (-1)^n 2^{k-i}) C(n-1,i)`.
pub fn s_dkn(n: u32, k: u32) -> Result<BigInt> {
    check_k(n, k, 0)?;
    let mut total = BigInt::from(n - k - 1) * (pow2(k + 1) - 1);
    for i in 0..=k {
        let inner = pow2(i) + sign(n) * pow2(k - i);
        total += sign(i) * inner * binomial((n - 1) as u64, i as i64);
    }
    Ok(total)
}

/// Change `s_n(B_k(X)) - s_n(X)`: the point blow-up plus the `D_{k,n}` term.
pub fn s_kn(n: u32, k: u32) -> Result<BigInt> {
    Ok(-s_dkn(n, k)? - (n as i64 + sign(n) as i64))
}

/// `L_{k,n} = -2^k - 1 + (-1)^{n+k} C(n,k) + (-2)^k C(n,k)` for `2 ≤ k ≤ n-2`.
pub fn l_kn(n: u32, k: u32) -> Result<BigInt> {
    check_k(n, k, 2)?;
    let c = binomial(n as u64, k as i64);
    let neg2k = sign(k) * pow2(k);
    Ok(-pow2(k) - 1 + sign(n + k) * &c + neg2k * c)
}

/// All three sequences for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    pub n: u32,
    /// `s_n(D_{k,n})`, `k = 0..=n-2`.
    pub s_dkn: Vec<BigInt>,
    /// `s_{k,n}`, `k = 0..=n-2`.
    pub s_kn: Vec<BigInt>,
    /// `L_{k,n}`, `k = 2..=n-2` (index 0 is `k = 2`).
    pub l_kn: Vec<BigInt>,
}

impl MilnorTable {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                lo: 2,
                hi: i64::MAX,
            });
        }
        let s_dkn = (0..=n - 2)
            .map(|k| s_dkn(n, k))
            .collect::<Result<Vec<_>>>()?;
        let s_kn = (0..=n - 2)
            .map(|k| s_kn(n, k))
            .collect::<Result<Vec<_>>>()?;
        let l_kn = (2..=n.saturating_sub(2))
            .map(|k| l_kn(n, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            s_dkn,
            s_kn,
            l_kn,
        })
    }

    /// Checks the two defining relations between the rows.
    pub fn is_consistent(&self) -> bool {
        let shift = BigInt::from(self.n as i64 + sign(self.n) as i64);
        let skn_ok = self
            .s_dkn
            .iter()
            .zip(&self.s_kn)
            .all(|(d, s)| *s == -d - &shift);
        let l_ok = self.l_kn.iter().enumerate().all(|(i, l)| {
            let k = i + 2;
            let s = &self.s_kn;
            *l == -&s[k] + 3 * &s[k - 1] - 2 * &s[k - 2]
        });
        skn_ok && l_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coprimality {
    pub gcd: BigInt,
    pub holds: bool,
}

/// `gcd(s_{0,n}, …, s_{n-2,n})` for even `n`, stopping early once it hits 1.
pub fn coprimality_check(n: u32) -> Result<Coprimality> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 2,
            hi: i64::MAX,
        });
    }
    let mut g = BigInt::zero();
    for k in 0..=n - 2 {
        g = g.gcd(&s_kn(n, k)?);
        if g.is_one() {
            break;
        }
    }
    Ok(Coprimality {
        holds: g.is_one(),
        gcd: g,
    })
}

/// Which branch of the case analysis picked the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// `2^{p^j} ≢ -1 (mod p)`, so `k = p^j`.
    First,
    /// `2^{p^j} ≡ -1 (mod p)`, so `k = p^j + 1`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub k: u32,
    /// `L_{k,n} mod p`, never zero.
    pub residue: u64,
    /// Minimal digit position with `n_j < p - 1`.
    pub j: u32,
    pub case: WitnessCase,
}

/// A `k ∈ [2, n-2]` with `p ∤ L_{k,n}`, for even `n` and a prime `p | n+1`
/// where `n+1` is not a prime power.
///
/// Take the least `j` whose base-`p` digit of `n` is below `p - 1` and set
/// `k = p^j`; if `2^k ≡ -1 (mod p)` shift to `k + 1`.
pub fn witness_k(n: u32, p: u64) -> Result<Witness> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = n as u64 + 1;
    if !m.is_multiple_of(p) {
        return Err(Error::NotADivisor { p, m });
    }
    if prime_power_check(m).is_some() {
        return Err(Error::PrimePower(m));
    }

    let digits = BasePDigits::new(n as u64, p);
    let j = (0..digits.digits().len())
        .find(|&i| digits.digit(i) < p - 1)
        .ok_or_else(|| Error::Inconsistent(format!("all base-{p} digits of {n} are {}", p - 1)))?
        as u32;

    let pj = p.pow(j);
    let minus_one = BigInt::from(p - 1);
    let two_pow = BigInt::from(2).modpow(&BigInt::from(pj), &BigInt::from(p));
    let (k, case) = if two_pow == minus_one {
        (pj + 1, WitnessCase::Second)
    } else {
        (pj, WitnessCase::First)
    };
    let k = u32::try_from(k).map_err(|_| Error::Inconsistent(format!("witness {k} too large")))?;

    let residue = l_kn(n, k)?
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p");
    if residue == 0 {
        return Err(Error::Inconsistent(format!(
            "L_({k},{n}) is divisible by {p}"
        )));
    }
    Ok(Witness {
        k,
        residue,
        j,
        case,
    })
}
