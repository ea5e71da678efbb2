//! Plans for toric manifolds with Milnor number 1.
//!
//! Start from the `CP^1 × CP^1` projectivisation with `s_n = (n+1)·a`, then
//! apply `a_k` modifications `B_k` so that `(n+1)·a + Σ a_k s_{k,n} = 1`. The
//! counts come from a nonnegative representation of `(n+1)·a - 1` over the
//! numbers `-s_{k,n}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::prime_power_check;
use crate::chern::{milnor_projectivisation, ProjBundleSpec};
use crate::error::{Error, Result};
use crate::frobenius::represent;
use crate::milnor::{coprimality_check, s_dkn, s_kn};

/// Search limit for the base parameter `a`.
const MAX_BASE_PARAMETER: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PlanDocument", try_from = "PlanDocument")]
pub struct ModificationPlan {
    pub n: u32,
    pub a: u64,
    pub base: ProjBundleSpec,
    pub base_milnor: BigInt,
    /// `counts[k]` applications of `B_k`, `k = 0..=n-2`.
    pub counts: Vec<u64>,
    pub predicted_milnor: BigInt,
}

/// Flat wire form; the base bundle is implied by `(n, a)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanDocument {
    pub n: u32,
    pub a: u64,
    #[serde(with = "crate::bigint_string")]
    pub base_milnor: BigInt,
    pub counts: Vec<u64>,
    #[serde(with = "crate::bigint_string")]
    pub predicted_milnor: BigInt,
}

impl From<ModificationPlan> for PlanDocument {
    fn from(p: ModificationPlan) -> Self {
        Self {
            n: p.n,
            a: p.a,
            base_milnor: p.base_milnor,
            counts: p.counts,
            predicted_milnor: p.predicted_milnor,
        }
    }
}

impl TryFrom<PlanDocument> for ModificationPlan {
    type Error = Error;

    fn try_from(d: PlanDocument) -> Result<Self> {
        if d.counts.len() + 1 != d.n as usize {
            return Err(Error::DimensionMismatch {
                expected: (d.n as usize).saturating_sub(1),
                found: d.counts.len(),
            });
        }
        let a = i64::try_from(d.a)
            .map_err(|_| Error::InvalidBundle(format!("parameter a = {} too large", d.a)))?;
        Ok(Self {
            n: d.n,
            a: d.a,
            base: ProjBundleSpec::large_milnor_base(d.n, a)?,
            base_milnor: d.base_milnor,
            counts: d.counts,
            predicted_milnor: d.predicted_milnor,
        })
    }
}

impl ModificationPlan {
    /// Plan with the given counts; `predicted_milnor` is computed from `s_{k,n}`.
    pub fn from_counts(n: u32, a: u64, counts: Vec<u64>) -> Result<Self> {
        if n < 3 || counts.len() + 1 != n as usize {
            return Err(Error::DimensionMismatch {
                expected: (n as usize).saturating_sub(1),
                found: counts.len(),
            });
        }
        let a_signed = i64::try_from(a)
            .map_err(|_| Error::InvalidBundle(format!("parameter a = {a} too large")))?;
        let base_milnor = BigInt::from(n + 1) * a;
        let mut predicted = base_milnor.clone();
        for (k, &c) in counts.iter().enumerate() {
            predicted += s_kn(n, k as u32)? * c;
        }
        Ok(Self {
            n,
            a,
            base: ProjBundleSpec::large_milnor_base(n, a_signed)?,
            base_milnor,
            counts,
            predicted_milnor: predicted,
        })
    }

    pub fn total_modifications(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Order in which the deltas are handed to the solver: `k = 1` first, since
/// `-s_{1,n} = n+1 > 0`, then `k = 0, 2, 3, …, n-2`.
pub fn basis_order(n: u32) -> Vec<u32> {
    let mut ks = vec![1, 0];
    ks.extend(2..=n.saturating_sub(2));
    ks
}

/// Builds a plan reaching Milnor number 1 in an even dimension `n` whose
/// `n+1` is not a prime power, with the smallest workable base parameter.
pub fn construct_plan(n: u32) -> Result<ModificationPlan> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n < 4 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 4,
            hi: i64::MAX,
        });
    }
    if prime_power_check(n as u64 + 1).is_some() {
        return Err(Error::PrimePower(n as u64 + 1));
    }
    let cop = coprimality_check(n)?;
    if !cop.holds {
        return Err(Error::NotCoprime { n, gcd: cop.gcd });
    }

    let order = basis_order(n);
    let basis = order
        .iter()
        .map(|&k| s_kn(n, k).map(|s| -s))
        .collect::<Result<Vec<_>>>()?;

    for a in 1..=MAX_BASE_PARAMETER {
        let target = BigInt::from(n + 1) * a - 1;
        let rep = match represent(&target, &basis) {
            Ok(rep) => rep,
            Err(Error::NotRepresentable(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut counts = vec![0u64; n as usize - 1];
        for (&k, c) in order.iter().zip(&rep.coefficients) {
            counts[k as usize] = c
                .to_u64()
                .ok_or_else(|| Error::Inconsistent(format!("count {c} does not fit in u64")))?;
        }
        let plan = ModificationPlan::from_counts(n, a, counts)?;

        let oracle = milnor_projectivisation(&plan.base)?;
        if oracle != plan.base_milnor {
            return Err(Error::Inconsistent(format!(
                "base Milnor number {} disagrees with cohomological value {oracle}",
                plan.base_milnor
            )));
        }
        if !plan.predicted_milnor.is_one() {
            return Err(Error::Inconsistent(format!(
                "plan reaches {} instead of 1",
                plan.predicted_milnor
            )));
        }
        return Ok(plan);
    }
    Err(Error::NotRepresentable(
        BigInt::from(n + 1) * MAX_BASE_PARAMETER - 1,
    ))
}

/// Recomputes the plan's Milnor number with each `B_k` step split into the
/// point blow-up and the `D_{k,n}` correction, without using `s_{k,n}`.
pub fn verify_plan(plan: &ModificationPlan) -> bool {
    let n = plan.n;
    if n < 2 || plan.counts.len() + 1 != n as usize {
        return false;
    }
    let point = BigInt::from(n as i64 + if n.is_multiple_of(2) { 1 } else { -1 });
    let mut total = plan.base_milnor.clone();
    for (k, &c) in plan.counts.iter().enumerate() {
        let Ok(d) = s_dkn(n, k as u32) else {
            return false;
        };
        total += (-d - &point) * c;
    }
    total == plan.predicted_milnor
}

/// Which value of `|s_n|` makes a manifold a generator in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum GeneratorCriterion {
    /// `n+1` is not a prime power: `s_n = ±1`.
    Unit,
    /// `n+1 = p^e`: `s_n = ±p`.
    Prime(u64),
}

impl fmt::Display for GeneratorCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit => write!(f, "s_n = ±1 (n+1 not a prime power)"),
            Self::Prime(p) => write!(f, "s_n = ±{p} (n+1 a power of {p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorVerdict {
    pub n: u32,
    pub s: BigInt,
    pub is_generator: bool,
    pub required: GeneratorCriterion,
}

/// Milnor–Novikov: `[X^{2n}]` is a generator iff `s_n = ±1` when `n+1` is not
/// a prime power, and `s_n = ±p` when `n+1 = p^e`.
pub fn milnor_novikov_check(n: u32, s: &BigInt) -> GeneratorVerdict {
    let required = match prime_power_check(n as u64 + 1) {
        Some((p, _)) => GeneratorCriterion::Prime(p),
        None => GeneratorCriterion::Unit,
    };
    let target = match required {
        GeneratorCriterion::Unit => BigInt::one(),
        GeneratorCriterion::Prime(p) => BigInt::from(p),
    };
    GeneratorVerdict {
        n,
        s: s.clone(),
        is_generator: s.abs() == target,
        required,
    }
}
