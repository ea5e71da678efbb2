//! Projective toric generators of the unitary cobordism ring, computed exactly.
//!
//! * [`arith`]: binomials, Lucas' theorem, gcds, prime powers.
//! * [`chern`]: truncated cohomology rings and Milnor numbers of projectivised
//!   bundles, evaluated by Segre-class integration.
//! * [`milnor`]: closed forms `s_n(D_{k,n})`, `s_{k,n}`, `L_{k,n}`, the
//!   coprimality check and prime witnesses.
//! * [`frobenius`]: Frobenius bounds and nonnegative representations over
//!   bases of mixed sign.
//! * [`planner`]: plans of modifications `B_k` reaching Milnor number 1.
//! * [`polytope`]: simple polytopes, vertex and face truncations, h-vectors,
//!   `χ_{a,b}` and combinatorial isomorphism.
//!
//! ```
//! use cobforge::{construct_plan, verify_plan};
//!
//! let plan = construct_plan(14).unwrap();
//! assert_eq!(plan.predicted_milnor, 1.into());
//! assert!(verify_plan(&plan));
//! ```

pub mod arith;
pub mod bigint_string;
pub mod chern;
pub mod error;
pub mod frobenius;
pub mod milnor;
pub mod planner;
pub mod polytope;
pub mod scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use arith::{binomial, binomial_mod_p, gcd_list, is_prime, prime_power_check, BasePDigits};
pub use chern::{
    fiber_integral, integrate_top, milnor_projectivisation, milnor_projectivisation_in,
    total_chern, ProjBundleSpec, TruncatedPoly,
};
pub use error::{Error, Result};
pub use frobenius::{frobenius_bound, represent, Representation};
pub use milnor::{
    coprimality_check, l_kn, s_dkn, s_kn, witness_k, Coprimality, MilnorTable, Witness, WitnessCase,
};
pub use planner::{
    construct_plan, milnor_novikov_check, verify_plan, GeneratorCriterion, GeneratorVerdict,
    ModificationPlan,
};
pub use polytope::{comb_iso, ChiAb, Face, SimplePolytope};
pub use scalar::Scalar;

/// Exact integers used for every Milnor number and count.
pub type ExactInt = BigInt;
/// Integral cohomology of a product of projective spaces.
pub type IntPoly = TruncatedPoly<BigInt>;
/// The same ring with rational coefficients.
pub type RatPoly = TruncatedPoly<BigRational>;
