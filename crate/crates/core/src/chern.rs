//! Cohomology of products of projective spaces and Milnor numbers of
//! projectivised split bundles over them.
//!
//! `H^*(CP^{m_1} × … × CP^{m_r})` is modelled as `T[x_1..x_r]/(x_i^{m_i+1})`
//! ([`TruncatedPoly`]). A [`ProjBundleSpec`] describes `P(ξ)` for a sum of line
//! bundles `ξ = ⊕_j O(d_j)` over that base, optionally with one extra trivial
//! summand carrying the conjugate structure (`P(ζ ⊕ C̄)`). Integrals over
//! `P(ξ)` are pushed down to the base through the Segre class `c(ξ)^{-1}`,
//! which is how [`milnor_projectivisation`] computes `s_n` without any closed
//! form. It is the independent oracle for [`crate::milnor`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::binomial_in;
use crate::error::{Error, Result};
use crate::scalar::{sign_power, Scalar};

/// Polynomial in `x_1..x_r` modulo `x_i^{m_i+1}`, stored sparsely.
///
/// Monomials past a bound are never stored and zero coefficients are dropped,
/// so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPoly<T> {
    bounds: Vec<u32>,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> TruncatedPoly<T> {
    pub fn zero(bounds: Vec<u32>) -> Self {
        Self {
            bounds,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bounds: Vec<u32>) -> Self {
        Self::constant(bounds, T::one())
    }

    pub fn constant(bounds: Vec<u32>, c: T) -> Self {
        let exps = vec![0; bounds.len()];
        Self::monomial(bounds, exps, c)
    }

    /// `c · x^exps`, or zero if some exponent exceeds its bound.
    pub fn monomial(bounds: Vec<u32>, exps: Vec<u32>, c: T) -> Self {
        assert_eq!(bounds.len(), exps.len(), "exponent tuple has wrong arity");
        let mut p = Self::zero(bounds);
        p.add_term(exps, c);
        p
    }

    /// The generator `x_i` (0-based).
    pub fn variable(bounds: Vec<u32>, i: usize) -> Self {
        let mut exps = vec![0; bounds.len()];
        exps[i] = 1;
        Self::monomial(bounds, exps, T::one())
    }

    /// `Σ_i coeffs[i] · x_i`.
    pub fn linear(bounds: Vec<u32>, coeffs: &[i64]) -> Self {
        assert_eq!(bounds.len(), coeffs.len(), "linear form has wrong arity");
        let mut p = Self::zero(bounds);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; p.bounds.len()];
            exps[i] = 1;
            p.add_term(
                exps,
                T::from_i64(c).expect("coefficient fits the scalar type"),
            );
        }
        p
    }

    pub fn from_terms<I>(bounds: Vec<u32>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, T)>,
    {
        let mut p = Self::zero(bounds);
        for (exps, c) in terms {
            assert_eq!(p.bounds.len(), exps.len(), "exponent tuple has wrong arity");
            p.add_term(exps, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: T) {
        if exps.iter().zip(&self.bounds).any(|(e, m)| e > m) || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&vec![0; self.bounds.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dimension of the base: the degree of the top monomial.
    pub fn top_degree(&self) -> u32 {
        self.bounds.iter().sum()
    }

    /// The degree-`d` part.
    pub fn homogeneous(&self, d: u32) -> Self {
        Self {
            bounds: self.bounds.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_bounds(&self, other: &Self) -> Result<()> {
        if self.bounds != other.bounds {
            return Err(Error::BoundsMismatch {
                left: self.bounds.clone(),
                right: other.bounds.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let mut out = Self::zero(self.bounds.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(
            self.bounds.clone(),
            self.terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone())),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.bounds.clone());
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit of `T`.
    ///
    /// Solved degree by degree: `b_0 = a_0^{-1}` and for `e ≠ 0`,
    /// `b_e = -a_0^{-1} Σ_{0 ≠ f ≤ e} a_f b_{e-f}`.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.constant_term().unit_inverse().ok_or(Error::NonUnit)?;
        let mut exps = box_exponents(&self.bounds);
        exps.sort_by_key(|e| e.iter().sum::<u32>());

        let mut solved: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        for e in exps {
            if e.iter().all(|&x| x == 0) {
                solved.insert(e, c0_inv.clone());
                continue;
            }
            let mut acc = T::zero();
            for (f, af) in &self.terms {
                if f.iter().all(|&x| x == 0) || f.iter().zip(&e).any(|(x, y)| x > y) {
                    continue;
                }
                let rest: Vec<u32> = e.iter().zip(f).map(|(x, y)| x - y).collect();
                if let Some(b) = solved.get(&rest) {
                    acc = acc + af.clone() * b.clone();
                }
            }
            let be = -(c0_inv.clone() * acc);
            if !be.is_zero() {
                solved.insert(e, be);
            }
        }
        Ok(Self::from_terms(self.bounds.clone(), solved))
    }
}

fn box_exponents(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &m in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=m).map(move |i| {
                    let mut e = prefix.clone();
                    e.push(i);
                    e
                })
            })
            .collect();
    }
    out
}

impl<T: Scalar> Neg for &TruncatedPoly<T> {
    type Output = TruncatedPoly<T>;

    fn neg(self) -> TruncatedPoly<T> {
        self.scale(&-T::one())
    }
}

// Operator forms panic on mismatched bounds; the `try_*` methods report it.
impl<T: Scalar> Add for &TruncatedPoly<T> {
    type Output = TruncatedPoly<T>;

    fn add(self, rhs: Self) -> TruncatedPoly<T> {
        self.try_add(rhs).expect("mismatched truncation bounds")
    }
}

impl<T: Scalar> Sub for &TruncatedPoly<T> {
    type Output = TruncatedPoly<T>;

    fn sub(self, rhs: Self) -> TruncatedPoly<T> {
        self.try_sub(rhs).expect("mismatched truncation bounds")
    }
}

impl<T: Scalar> Mul for &TruncatedPoly<T> {
    type Output = TruncatedPoly<T>;

    fn mul(self, rhs: Self) -> TruncatedPoly<T> {
        self.try_mul(rhs).expect("mismatched truncation bounds")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for TruncatedPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `P(ξ)` for a split bundle `ξ` over `CP^{m_1} × … × CP^{m_r}`.
///
/// Each summand is a multidegree `d ∈ Z^r`, i.e. the line bundle
/// `⊗_i π_i^* O(d_i)`. When `conjugated_trivial` is set, one further trivial
/// summand is present and carries the conjugate complex structure, so its
/// tangent contribution is `γ^*` instead of `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBundleSpec")]
pub struct ProjBundleSpec {
    base_dims: Vec<u32>,
    summands: Vec<Vec<i64>>,
    conjugated_trivial: bool,
}

#[derive(Deserialize)]
struct RawBundleSpec {
    base_dims: Vec<u32>,
    summands: Vec<Vec<i64>>,
    conjugated_trivial: bool,
}

impl TryFrom<RawBundleSpec> for ProjBundleSpec {
    type Error = Error;

    fn try_from(raw: RawBundleSpec) -> Result<Self> {
        Self::new(raw.base_dims, raw.summands, raw.conjugated_trivial)
    }
}

impl ProjBundleSpec {
    pub fn new(
        base_dims: Vec<u32>,
        summands: Vec<Vec<i64>>,
        conjugated_trivial: bool,
    ) -> Result<Self> {
        if let Some(bad) = summands.iter().find(|d| d.len() != base_dims.len()) {
            return Err(Error::InvalidBundle(format!(
                "summand {bad:?} has {} degrees for {} base factors",
                bad.len(),
                base_dims.len()
            )));
        }
        let rank = summands.len() + usize::from(conjugated_trivial);
        if rank < 2 {
            return Err(Error::InvalidBundle(format!(
                "rank {rank} gives fiber dimension below 1"
            )));
        }
        Ok(Self {
            base_dims,
            summands,
            conjugated_trivial,
        })
    }

    /// `D_{k,n} = P(O(-1) ⊕ O(1)^{n-k-1} ⊕ C̄)` over `CP^k`.
    pub fn d_kn(n: u32, k: u32) -> Result<Self> {
        if n < 2 || k + 2 > n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as i64,
                lo: 0,
                hi: n as i64 - 2,
            });
        }
        let mut summands = vec![vec![-1]];
        summands.extend(std::iter::repeat_n(vec![1], (n - k - 1) as usize));
        Self::new(vec![k], summands, true)
    }

    /// `P(π_1^*O(-1) ⊕ π_2^*O(a) ⊕ C^{n-3})` over `CP^1 × CP^1`, whose Milnor
    /// number is `(n+1)·a`.
    pub fn large_milnor_base(n: u32, a: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                lo: 3,
                hi: i64::MAX,
            });
        }
        let mut summands = vec![vec![-1, 0], vec![0, a]];
        summands.extend(std::iter::repeat_n(vec![0, 0], (n - 3) as usize));
        Self::new(vec![1, 1], summands, false)
    }

    /// Trivial bundle of the given rank over the base.
    pub fn trivial(base_dims: Vec<u32>, rank: usize) -> Result<Self> {
        let r = base_dims.len();
        Self::new(base_dims, vec![vec![0; r]; rank], false)
    }

    /// `CP^n = P(C^{n+1})` over a point.
    pub fn projective_space(n: u32) -> Result<Self> {
        Self::trivial(Vec::new(), n as usize + 1)
    }

    pub fn base_dims(&self) -> &[u32] {
        &self.base_dims
    }

    pub fn summands(&self) -> &[Vec<i64>] {
        &self.summands
    }

    pub fn conjugated_trivial(&self) -> bool {
        self.conjugated_trivial
    }

    pub fn rank(&self) -> u32 {
        (self.summands.len() + usize::from(self.conjugated_trivial)) as u32
    }

    pub fn fiber_dim(&self) -> u32 {
        self.rank() - 1
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dims.iter().sum()
    }

    /// Complex dimension of the total space.
    pub fn dimension(&self) -> u32 {
        self.base_dim() + self.fiber_dim()
    }
}

/// `c(ξ) = Π_j (1 + ⟨d_j, x⟩)`; the conjugated trivial summand contributes 1.
pub fn total_chern<T: Scalar>(spec: &ProjBundleSpec) -> TruncatedPoly<T> {
    let bounds = spec.base_dims.clone();
    let one = TruncatedPoly::one(bounds.clone());
    spec.summands.iter().fold(one.clone(), |acc, d| {
        let factor = &one + &TruncatedPoly::linear(bounds.clone(), d);
        &acc * &factor
    })
}

/// Evaluation on the fundamental class: the coefficient of `x_1^{m_1}…x_r^{m_r}`.
pub fn integrate_top<T: Scalar>(omega: &TruncatedPoly<T>) -> T {
    omega.coeff(&omega.bounds.clone())
}

/// `⟨ω·v^l, [P(ξ)]⟩ = ⟨ω·s_{l-f}(ξ), [B]⟩`, where `s_j` is the degree-`j`
/// part of the Segre class `c(ξ)^{-1}` and `f` the fiber dimension.
pub fn fiber_integral<T: Scalar>(
    omega: &TruncatedPoly<T>,
    v_power: u32,
    spec: &ProjBundleSpec,
) -> Result<T> {
    let segre = total_chern::<T>(spec).inverse()?;
    fiber_integral_with(omega, v_power, spec, &segre)
}

fn fiber_integral_with<T: Scalar>(
    omega: &TruncatedPoly<T>,
    v_power: u32,
    spec: &ProjBundleSpec,
    segre: &TruncatedPoly<T>,
) -> Result<T> {
    if omega.bounds != spec.base_dims {
        return Err(Error::BoundsMismatch {
            left: omega.bounds.clone(),
            right: spec.base_dims.clone(),
        });
    }
    let fiber_dim = spec.fiber_dim();
    if v_power < fiber_dim {
        return Err(Error::FiberPower {
            power: v_power,
            fiber_dim,
        });
    }
    let part = segre.homogeneous(v_power - fiber_dim);
    Ok(integrate_top(&(omega * &part)))
}

/// Exact `s_n` of `P(ξ)` (with the non-standard structure when the spec has a
/// conjugated trivial summand), computed from
/// `s_n = ⟨Σ_j (⟨d_j,x⟩ + v)^n + [C̄](-v)^n, [P(ξ)]⟩`.
///
/// The base tangent roots are not modelled; their `n`-th powers vanish once
/// `n` exceeds every base factor dimension, and smaller `n` is rejected.
pub fn milnor_projectivisation(spec: &ProjBundleSpec) -> Result<BigInt> {
    milnor_projectivisation_in::<BigInt>(spec)
}

pub fn milnor_projectivisation_in<T: Scalar>(spec: &ProjBundleSpec) -> Result<T> {
    let n = spec.dimension();
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 2,
            hi: i64::MAX,
        });
    }
    let max_base = spec.base_dims.iter().copied().max().unwrap_or(0);
    if n <= max_base {
        return Err(Error::BaseTangent { n, max_base });
    }

    let bounds = spec.base_dims.clone();
    let segre = total_chern::<T>(spec).inverse()?;
    let base_dim = spec.base_dim();
    let mut total = T::zero();
    for d in &spec.summands {
        let root = TruncatedPoly::<T>::linear(bounds.clone(), d);
        let mut root_pow = TruncatedPoly::one(bounds.clone());
        // (root + v)^n = Σ_i C(n,i) root^i v^{n-i}; root^i = 0 past the base dimension.
        for i in 0..=base_dim.min(n) {
            let term = fiber_integral_with(&root_pow, n - i, spec, &segre)?;
            total = total + binomial_in::<T>(n as u64, i as i64) * term;
            root_pow = &root_pow * &root;
        }
    }
    if spec.conjugated_trivial {
        let one = TruncatedPoly::one(bounds);
        total = total + sign_power::<T>(n as u64) * fiber_integral_with(&one, n, spec, &segre)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn poly(bounds: &[u32], terms: &[(&[u32], i64)]) -> IntPoly {
        TruncatedPoly::from_terms(
            bounds.to_vec(),
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn multiplication_examples() {
        let a = poly(&[1], &[(&[0], 1), (&[1], 1)]);
        let b = poly(&[1], &[(&[0], 1), (&[1], -1)]);
        assert_eq!(a.try_mul(&b).unwrap(), IntPoly::one(vec![1]));

        let a = poly(&[2], &[(&[0], 1), (&[1], 1)]);
        assert_eq!(&a * &a, poly(&[2], &[(&[0], 1), (&[1], 2), (&[2], 1)]));

        let x1x2 = poly(&[1, 1], &[(&[1, 1], 1)]);
        let x1 = IntPoly::variable(vec![1, 1], 0);
        assert!((&x1x2 * &x1).is_zero());
    }

    #[test]
    fn mismatched_bounds_are_rejected() {
        let a = IntPoly::one(vec![1]);
        let b = IntPoly::one(vec![2]);
        assert!(matches!(a.try_mul(&b), Err(Error::BoundsMismatch { .. })));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn inverse_examples() {
        let a = poly(&[3], &[(&[0], 1), (&[1], 1)]);
        let expected = poly(&[3], &[(&[0], 1), (&[1], -1), (&[2], 1), (&[3], -1)]);
        assert_eq!(a.inverse().unwrap(), expected);

        let a = poly(&[3], &[(&[0], 1), (&[2], -1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, poly(&[3], &[(&[0], 1), (&[2], 1)]));
        assert_eq!(&a * &inv, IntPoly::one(vec![3]));

        assert_eq!(
            IntPoly::one(vec![2, 3]).inverse().unwrap(),
            IntPoly::one(vec![2, 3])
        );

        let neg = poly(&[2], &[(&[0], -1), (&[1], 3)]);
        assert_eq!(&neg * &neg.inverse().unwrap(), IntPoly::one(vec![2]));
    }

    #[test]
    fn non_unit_has_no_inverse() {
        let a = poly(&[2], &[(&[0], 2), (&[1], 1)]);
        assert_eq!(a.inverse(), Err(Error::NonUnit));
        assert_eq!(IntPoly::zero(vec![2]).inverse(), Err(Error::NonUnit));
    }

    #[test]
    fn inverse_over_rationals_accepts_any_nonzero_constant() {
        use num_rational::BigRational;
        let a: TruncatedPoly<BigRational> = TruncatedPoly::from_terms(
            vec![3],
            vec![
                (vec![0], BigRational::from_integer(2.into())),
                (vec![1], BigRational::one()),
            ],
        );
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, TruncatedPoly::one(vec![3]));
        assert_eq!(inv.constant_term(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn total_chern_examples() {
        let spec = ProjBundleSpec::d_kn(6, 2).unwrap();
        let u = IntPoly::variable(vec![2], 0);
        let one = IntPoly::one(vec![2]);
        let expected = &(&one - &u) * &(&one + &u).pow(3);
        assert_eq!(total_chern::<BigInt>(&spec), expected);

        let trivial = ProjBundleSpec::trivial(vec![3], 4).unwrap();
        assert_eq!(total_chern::<BigInt>(&trivial), IntPoly::one(vec![3]));

        let spec = ProjBundleSpec::large_milnor_base(5, 3).unwrap();
        let b = vec![1, 1];
        let expected = poly(
            &b,
            &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], 3), (&[1, 1], -3)],
        );
        assert_eq!(total_chern::<BigInt>(&spec), expected);
    }

    #[test]
    fn integrate_top_examples() {
        for k in 1..5 {
            let uk = IntPoly::monomial(vec![k], vec![k], BigInt::one());
            assert_eq!(integrate_top(&uk), BigInt::one());
            assert_eq!(integrate_top(&IntPoly::one(vec![k])), BigInt::zero());
        }
        let b = vec![1, 1];
        let one = IntPoly::one(b.clone());
        let f = &(&one + &IntPoly::variable(b.clone(), 0)) * &(&one + &IntPoly::variable(b, 1));
        assert_eq!(integrate_top(&f), BigInt::one());
    }

    #[test]
    fn fiber_integral_examples() {
        for n in 2..10 {
            let spec = ProjBundleSpec::d_kn(n, 0).unwrap();
            let one = IntPoly::one(vec![0]);
            assert_eq!(fiber_integral(&one, n, &spec).unwrap(), BigInt::one());
        }
        let spec = ProjBundleSpec::d_kn(4, 2).unwrap();
        let one = IntPoly::one(vec![2]);
        // 4 - 6 + 3
        assert_eq!(fiber_integral(&one, 4, &spec).unwrap(), BigInt::one());
        for n in 3..9 {
            for k in 0..=n - 2 {
                let spec = ProjBundleSpec::d_kn(n, k).unwrap();
                let uk = IntPoly::monomial(vec![k], vec![k], BigInt::one());
                assert_eq!(fiber_integral(&uk, n - k, &spec).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn fiber_integral_guards() {
        let spec = ProjBundleSpec::d_kn(5, 1).unwrap();
        let one = IntPoly::one(vec![1]);
        assert_eq!(
            fiber_integral(&one, 3, &spec),
            Err(Error::FiberPower {
                power: 3,
                fiber_dim: 4
            })
        );
        let wrong = IntPoly::one(vec![2]);
        assert!(matches!(
            fiber_integral(&wrong, 5, &spec),
            Err(Error::BoundsMismatch { .. })
        ));
    }

    #[test]
    fn v_power_integral_matches_alternating_sum() {
        // ⟨v^n, D_{k,n}⟩ = Σ_{i≤k} (-1)^i 2^{k-i} C(n-1, i)
        for n in 2..14u32 {
            for k in 0..=n - 2 {
                let spec = ProjBundleSpec::d_kn(n, k).unwrap();
                let got = fiber_integral(&IntPoly::one(vec![k]), n, &spec).unwrap();
                let expected: BigInt = (0..=k)
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        BigInt::from(sign)
                            * (BigInt::one() << (k - i))
                            * crate::arith::binomial((n - 1) as u64, i as i64)
                    })
                    .sum();
                assert_eq!(got, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn milnor_examples() {
        let m = |s: ProjBundleSpec| milnor_projectivisation(&s).unwrap();
        assert_eq!(m(ProjBundleSpec::d_kn(3, 0).unwrap()), BigInt::from(2));
        assert_eq!(m(ProjBundleSpec::d_kn(4, 2).unwrap()), BigInt::from(15));
        assert_eq!(
            m(ProjBundleSpec::large_milnor_base(5, 3).unwrap()),
            BigInt::from(18)
        );
    }

    #[test]
    fn milnor_of_projective_space() {
        for n in 2..20 {
            let s = milnor_projectivisation(&ProjBundleSpec::projective_space(n).unwrap());
            assert_eq!(s, Ok(BigInt::from(n + 1)));
        }
    }

    #[test]
    fn milnor_of_large_base_family() {
        for n in 4..=12 {
            for a in 1..=5i64 {
                let spec = ProjBundleSpec::large_milnor_base(n, a).unwrap();
                assert_eq!(
                    milnor_projectivisation(&spec).unwrap(),
                    BigInt::from((n as i64 + 1) * a),
                    "n={n} a={a}"
                );
            }
        }
    }

    #[test]
    fn flipping_the_first_factor_degree_negates_the_milnor_number() {
        // With π_1^*O(+1) instead of π_1^*O(-1) the sign of s_n flips.
        for n in 4..=9u32 {
            for a in 1..=4i64 {
                let mut summands = vec![vec![1, 0], vec![0, a]];
                summands.extend(std::iter::repeat_n(vec![0, 0], n as usize - 3));
                let spec = ProjBundleSpec::new(vec![1, 1], summands, false).unwrap();
                assert_eq!(
                    milnor_projectivisation(&spec).unwrap(),
                    BigInt::from(-(n as i64 + 1) * a)
                );
            }
        }
    }

    #[test]
    fn milnor_generic_over_machine_ints() {
        let spec = ProjBundleSpec::d_kn(10, 8).unwrap();
        assert_eq!(milnor_projectivisation_in::<i64>(&spec), Ok(1023));
        let f: f64 = milnor_projectivisation_in(&ProjBundleSpec::d_kn(6, 4).unwrap()).unwrap();
        assert!((f - 63.0).abs() < 1e-9);
    }

    #[test]
    fn total_dimension_always_exceeds_every_base_factor() {
        // fiber_dim >= 1, so the base-tangent guard cannot trigger for a valid spec.
        for m in 0..6u32 {
            for extra in 0..4u32 {
                for rank in 2..5usize {
                    let spec = ProjBundleSpec::trivial(vec![m, extra], rank).unwrap();
                    assert!(spec.dimension() > m.max(extra));
                    if spec.dimension() >= 2 {
                        assert!(milnor_projectivisation(&spec).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(ProjBundleSpec::new(vec![1], vec![vec![1]], false).is_err());
        assert!(ProjBundleSpec::new(vec![1], vec![vec![1, 0], vec![0]], true).is_err());
        assert!(ProjBundleSpec::d_kn(4, 3).is_err());
        assert!(ProjBundleSpec::large_milnor_base(2, 1).is_err());
        let s = ProjBundleSpec::d_kn(7, 3).unwrap();
        assert_eq!((s.fiber_dim(), s.dimension()), (4, 7));
    }

    #[test]
    fn bundle_spec_json_validates() {
        let spec = ProjBundleSpec::d_kn(5, 2).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: ProjBundleSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let bad = r#"{"base_dims":[1],"summands":[[1]],"conjugated_trivial":false}"#;
        assert!(serde_json::from_str::<ProjBundleSpec>(bad).is_err());
    }

    const BOUNDS: [u32; 3] = [2, 1, 2];

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(((0u32..=2, 0u32..=1, 0u32..=2), -20i64..=20), 0..8).prop_map(
            |terms| {
                TruncatedPoly::from_terms(
                    BOUNDS.to_vec(),
                    terms
                        .into_iter()
                        .map(|((a, b, c), v)| (vec![a, b, c], BigInt::from(v))),
                )
            },
        )
    }

    fn arb_unit(bounds: Vec<u32>) -> impl Strategy<Value = IntPoly> {
        let len = bounds.len();
        let b2 = bounds.clone();
        (
            any::<bool>(),
            prop::collection::vec((prop::collection::vec(0u32..=8, len), -9i64..=9), 0..10),
        )
            .prop_map(move |(neg, terms)| {
                let mut p = IntPoly::zero(b2.clone());
                for (mut e, c) in terms {
                    if e.iter().all(|&x| x == 0) {
                        e[0] = 1;
                    }
                    let t = IntPoly::monomial(b2.clone(), e, BigInt::from(c));
                    p = &p + &t;
                }
                let c0 = if neg { -1 } else { 1 };
                &p + &IntPoly::constant(b2.clone(), BigInt::from(c0))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let one = IntPoly::one(BOUNDS.to_vec());
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn inverse_multiplies_to_one_single_variable(a in arb_unit(vec![8])) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, IntPoly::one(vec![8]));
        }

        #[test]
        fn inverse_multiplies_to_one_three_variables(a in arb_unit(vec![3, 3, 2])) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&inv * &a, IntPoly::one(vec![3, 3, 2]));
        }
    }
}
