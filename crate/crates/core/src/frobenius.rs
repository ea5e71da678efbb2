//! Nonnegative integer representations over a coprime basis of mixed sign.
//!
//! For positive generators the semigroup they span is described by its Apéry
//! set modulo the smallest generator `m`: for each residue `r` the least
//! representable `w_r ≡ r (mod m)`. Then `x ≥ 0` is representable iff
//! `x ≥ w_{x mod m}`, and the Frobenius number is `max w_r - m`.
//!
//! Negative generators are handled by solving over absolute values first and
//! then trading `k·|t_j|` copies of `t_0` against `k·t_0` copies of `t_j`,
//! which leaves the sum unchanged and makes every coefficient nonnegative.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::gcd_list;
use crate::error::{Error, Result};

/// Residue classes beyond this are refused; the bases here stay far below it.
const MAX_MODULUS: u64 = 1 << 24;

/// `target = Σ coefficients[i] · basis[i]` with every coefficient `≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub target: BigInt,
    pub basis: Vec<BigInt>,
    pub coefficients: Vec<BigInt>,
}

impl Representation {
    pub fn is_valid(&self) -> bool {
        self.basis.len() == self.coefficients.len()
            && self.coefficients.iter().all(|c| !c.is_negative())
            && self
                .basis
                .iter()
                .zip(&self.coefficients)
                .map(|(b, c)| b * c)
                .sum::<BigInt>()
                == self.target
    }
}

/// Apéry set of a positive basis with lexicographically least witnesses.
#[derive(Debug, Clone)]
struct AperySet {
    modulus: BigInt,
    /// Position of the first basis entry equal to `modulus`.
    modulus_index: usize,
    least: Vec<BigInt>,
    witness: Vec<Vec<BigInt>>,
}

impl AperySet {
    fn new(basis: &[BigInt]) -> Result<Self> {
        let (modulus_index, modulus) = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_positive())
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .map(|(i, b)| (i, b.clone()))
            .ok_or_else(|| Error::InvalidBasis("no positive entry".into()))?;
        let m = modulus
            .to_u64()
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidBasis(format!("smallest entry {modulus} too large")))?
            as usize;

        let mut least: Vec<Option<BigInt>> = vec![None; m];
        let mut witness: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); basis.len()]; m];
        let mut done = vec![false; m];
        least[0] = Some(BigInt::zero());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((BigInt::zero(), 0usize)));

        // Dijkstra on residues; equal distances keep the lexicographically
        // smaller coefficient vector.
        while let Some(Reverse((dist, r))) = heap.pop() {
            if done[r] {
                continue;
            }
            done[r] = true;
            for (i, b) in basis.iter().enumerate() {
                if !b.is_positive() || (b % &modulus).is_zero() {
                    continue;
                }
                let next = &dist + b;
                let s = (&next % &modulus)
                    .to_usize()
                    .expect("residue below modulus");
                if done[s] {
                    continue;
                }
                let mut cand = witness[r].clone();
                cand[i] += 1;
                let better = match &least[s] {
                    None => true,
                    Some(cur) => match next.cmp(cur) {
                        Ordering::Less => true,
                        Ordering::Equal => cand < witness[s],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    least[s] = Some(next.clone());
                    witness[s] = cand;
                    heap.push(Reverse((next, s)));
                }
            }
        }

        let least = least
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidBasis("entries are not coprime".into()))?;
        Ok(Self {
            modulus,
            modulus_index,
            least,
            witness,
        })
    }

    fn frobenius_number(&self) -> BigInt {
        self.least.iter().max().expect("nonempty") - &self.modulus
    }

    /// Coefficients over the (positive) basis, if `x` lies in the semigroup.
    fn represent(&self, x: &BigInt) -> Option<Vec<BigInt>> {
        if x.is_negative() {
            return None;
        }
        let r = (x % &self.modulus)
            .to_usize()
            .expect("residue below modulus");
        let w = &self.least[r];
        if x < w {
            return None;
        }
        let mut coeffs = self.witness[r].clone();
        coeffs[self.modulus_index] += (x - w) / &self.modulus;
        Some(coeffs)
    }
}

fn check_coprime(values: &[BigInt]) -> Result<()> {
    let g = gcd_list(values).map_err(|e| Error::InvalidBasis(e.to_string()))?;
    if !g.is_one() {
        return Err(Error::InvalidBasis(format!("gcd is {g}, not 1")));
    }
    Ok(())
}

/// Exact Frobenius number of a positive coprime basis, clamped at zero, so
/// every `x` above the returned value is representable.
pub fn frobenius_bound(basis: &[BigInt]) -> Result<BigInt> {
    if basis.is_empty() {
        return Err(Error::InvalidBasis("empty basis".into()));
    }
    if let Some(b) = basis.iter().find(|b| !b.is_positive()) {
        return Err(Error::InvalidBasis(format!("entry {b} is not positive")));
    }
    check_coprime(basis)?;
    let f = AperySet::new(basis)?.frobenius_number();
    Ok(f.max(BigInt::zero()))
}

/// Writes `x = Σ a_i t_i` with all `a_i ≥ 0`.
///
/// The basis must have `gcd 1` and a positive first entry. The result is
/// deterministic. Inputs below the absolute-value Frobenius bound are still
/// accepted: with a negative entry `t_j`, the smallest `s ≥ 0` such that
/// `x + s·|t_j|` is representable is found and `s` is added to `a_j`.
pub fn represent(x: &BigInt, basis: &[BigInt]) -> Result<Representation> {
    if basis.is_empty() {
        return Err(Error::InvalidBasis("empty basis".into()));
    }
    if !basis[0].is_positive() {
        return Err(Error::InvalidBasis(format!(
            "first entry {} must be positive",
            basis[0]
        )));
    }
    check_coprime(basis)?;

    let magnitudes: Vec<BigInt> = basis.iter().map(|b| b.abs()).collect();
    let apery = AperySet::new(&magnitudes)?;

    let coefficients = match signed_representation(&apery, x, basis) {
        Some(c) => c,
        None => {
            let j = basis
                .iter()
                .position(|b| b.is_negative())
                .ok_or_else(|| Error::NotRepresentable(x.clone()))?;
            let step = basis[j].abs();
            let bound = apery.frobenius_number();
            let start = if x.is_negative() {
                Integer::div_ceil(&-x, &step)
            } else {
                BigInt::one()
            };
            let mut shift = start.max(BigInt::one());
            let mut lifted = x + &shift * &step;
            loop {
                if let Some(mut c) = signed_representation(&apery, &lifted, basis) {
                    c[j] += &shift;
                    break c;
                }
                // Past the bound every value is representable; the loop is finite.
                debug_assert!(lifted <= bound);
                shift += 1;
                lifted += &step;
            }
        }
    };

    let rep = Representation {
        target: x.clone(),
        basis: basis.to_vec(),
        coefficients,
    };
    if !rep.is_valid() {
        return Err(Error::Inconsistent(format!("bad representation of {x}")));
    }
    Ok(rep)
}

// Representation over |t| converted to one over t.
fn signed_representation(apery: &AperySet, x: &BigInt, basis: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut coeffs = apery.represent(x)?;
    let t0 = &basis[0];
    for j in 1..basis.len() {
        if !basis[j].is_negative() || coeffs[j].is_zero() {
            continue;
        }
        // a_0' = a_0 - k t_j, a_j' = -a_j + k t_0 with the least k keeping a_j' ≥ 0.
        let k = Integer::div_ceil(&coeffs[j], t0);
        coeffs[0] -= &k * &basis[j];
        coeffs[j] = &k * t0 - &coeffs[j];
    }
    Some(coeffs)
}
