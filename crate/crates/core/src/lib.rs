//! Finite, checkable computations around Galois realizations of finite groups:
//! rigidity certificates and braid orbits on Nielsen sets, ramification data in `S_n`,
//! Bogomolov multipliers via the normalized bar complex, and Noether's problem for
//! cyclic groups over `Q`.
//!
//! Permutations compose left to right: `a * b` applies `a` first.

pub mod braid;
pub mod catalogue;
pub mod classes;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod monodromy;
pub mod nielsen;
pub mod noether;
pub mod perm;

pub use classes::ConjugacyClass;
pub use error::{Error, Result};
pub use group::{Limits, PermGroup};
pub use nielsen::{ClassVector, NielsenTuple};
pub use perm::{parse_cycles, Permutation};
