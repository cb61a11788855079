use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::cyclotomic::{cyclotomic_poly, euler_phi, norm_with, CyclotomicInt};
use crate::error::Result;

pub const DEFAULT_NORM_BUDGET: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        element: CyclotomicInt,
    },
    /// The whole box was searched without success.
    Exhausted,
    OverBudget {
        needed: u128,
        budget: u128,
    },
}

/// Maps a digit `0, 1, 2, 3, 4, …` to `0, 1, −1, 2, −2, …`.
fn digit_value(d: u64) -> i64 {
    let d = d as i64;
    if d % 2 == 1 {
        (d + 1) / 2
    } else {
        -d / 2
    }
}

/// Searches `{Σ c_i ζ^i : |c_i| ≤ bound}` for an element of norm `±target`.
///
/// Candidates are ordered lexicographically with the top coefficient most significant and
/// each coefficient running through `0, 1, −1, 2, −2, …`; the first hit in that order is
/// returned, independent of the thread count.
pub fn norm_search(m: u64, target: i64, coeff_bound: u32, budget: u128) -> Result<SearchOutcome> {
    let phi = cyclotomic_poly(m)?;
    let d = euler_phi(m) as usize;
    let base = 2 * coeff_bound as u64 + 1;
    let needed = (base as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Ok(SearchOutcome::OverBudget { needed, budget });
    }
    let embeddings = Embeddings::new(m);
    let goal = BigInt::from(target);
    let neg_goal = -goal.clone();
    let decode = |index: u64| {
        let mut c = vec![0i64; d];
        let mut rest = index;
        for slot in c.iter_mut() {
            *slot = digit_value(rest % base);
            rest /= base;
        }
        c
    };
    let hit = (0..needed as u64).into_par_iter().find_first(|&index| {
        let c = decode(index);
        if !embeddings.close_to(&c, target.unsigned_abs() as f64) {
            return false;
        }
        let n = norm_with(&c, &phi);
        n == goal || n == neg_goal
    });
    Ok(match hit {
        Some(index) => SearchOutcome::Found {
            element: CyclotomicInt::new(m, decode(index))?,
        },
        None => SearchOutcome::Exhausted,
    })
}

/// Complex embeddings used to discard candidates before the exact norm.
struct Embeddings {
    /// For each primitive root `ζ^k` with `k < m/2`: `(cos, sin)` of its powers.
    roots: Vec<Vec<(f64, f64)>>,
    real: bool,
}

impl Embeddings {
    fn new(m: u64) -> Self {
        let d = euler_phi(m) as usize;
        let roots = (1..=m)
            .filter(|&k| num_integer::gcd(k, m) == 1 && 2 * k < m)
            .map(|k| {
                (0..d)
                    .map(|j| {
                        let t = 2.0 * std::f64::consts::PI * ((k * j as u64) % m) as f64 / m as f64;
                        (t.cos(), t.sin())
                    })
                    .collect()
            })
            .collect();
        Embeddings { roots, real: m <= 2 }
    }

    /// Whether the absolute norm is within a relative 1e-6 of `target`.
    fn close_to(&self, c: &[i64], target: f64) -> bool {
        if self.real {
            return true;
        }
        let mut norm = 1.0f64;
        for powers in &self.roots {
            let (mut re, mut im) = (0.0, 0.0);
            for (&x, &(cs, sn)) in c.iter().zip(powers) {
                re += x as f64 * cs;
                im += x as f64 * sn;
            }
            norm *= re * re + im * im;
        }
        (norm - target).abs() <= 1e-6 * target.max(1.0)
    }
}
