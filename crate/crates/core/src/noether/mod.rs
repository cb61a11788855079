//! Noether's problem for cyclic groups over `Q`: the explicit divisibility criterion and
//! a search for cyclotomic norm witnesses.

mod cyclotomic;
mod search;
mod verdict;

pub use cyclotomic::{cyclotomic_poly, cyclotomic_poly_with_bound, euler_phi, CyclotomicInt, DEFAULT_DEGREE_BOUND};
pub use search::{norm_search, SearchOutcome, DEFAULT_NORM_BUDGET};
pub use verdict::{lenstra_condition, plans_condition, NoetherVerdict, NormWitness, Verdict, DEFAULT_COEFF_BOUND};
