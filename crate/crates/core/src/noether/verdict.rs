use serde::Serialize;

use super::cyclotomic::{euler_phi, factorize, CyclotomicInt, DEFAULT_DEGREE_BOUND};
use super::search::{norm_search, SearchOutcome};
use crate::error::{Error, Result};

pub const DEFAULT_COEFF_BOUND: u32 = 2;

/// The explicit divisibility criterion for `Q(x_1, …, x_n)^{Z/n}` to be rational.
pub fn plans_condition(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    const SQUARE_FREE: [u64; 13] = [11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 61, 67, 71];
    factorize(n).into_iter().all(|(p, e)| match p {
        2 | 5 | 7 => e <= 2,
        3 => true,
        _ => SQUARE_FREE.contains(&p) && e <= 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Rational,
    NotRational,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormWitness {
    pub p: u64,
    pub conductor: u64,
    pub element: CyclotomicInt,
    pub norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherVerdict {
    pub n: u64,
    pub verdict: Verdict,
    pub witnesses: Vec<NormWitness>,
    pub reasons: Vec<String>,
}

/// Lenstra's criterion: `8 ∤ n` and, for each `p^s ∥ n`, an element of norm `±p` in
/// `Z[ζ_{(p−1)p^{s−1}}]`. Only the `8 | n` clause can be refuted; failed searches give `Unknown`.
pub fn lenstra_condition(n: u64, coeff_bound: u32, budget: u128) -> Result<NoetherVerdict> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let mut out = NoetherVerdict {
        n,
        verdict: Verdict::Unknown,
        witnesses: Vec::new(),
        reasons: Vec::new(),
    };
    if n.is_multiple_of(8) {
        out.verdict = Verdict::NotRational;
        out.reasons.push("8 divides n".into());
        debug_assert!(!plans_condition(n));
        return Ok(out);
    }
    let mut all_found = true;
    for (p, s) in factorize(n) {
        let conductor = (p - 1) * p.pow(s - 1);
        let degree = euler_phi(conductor) as usize;
        if degree == 1 {
            out.reasons.push(format!(
                "p = {p}: conductor {conductor} gives the ring Z, where p itself has norm p"
            ));
            let element = CyclotomicInt::from_integer(conductor, p as i64)?;
            out.witnesses.push(NormWitness {
                p,
                conductor,
                element,
                norm: p as i64,
            });
            continue;
        }
        if degree > DEFAULT_DEGREE_BOUND {
            out.reasons.push(format!(
                "p = {p}: degree {degree} of Φ_{conductor} exceeds the bound {DEFAULT_DEGREE_BOUND}"
            ));
            all_found = false;
            continue;
        }
        let mut found = None;
        let mut last = None;
        for bound in 1..=coeff_bound {
            let outcome = norm_search(conductor, p as i64, bound, budget)?;
            match outcome {
                SearchOutcome::Found { element } => {
                    found = Some(element);
                    break;
                }
                SearchOutcome::OverBudget { .. } => {
                    last = Some(outcome);
                    break;
                }
                SearchOutcome::Exhausted => last = Some(outcome),
            }
        }
        match found {
            Some(element) => {
                let norm = element.norm()?;
                let norm = i64::try_from(norm).expect("witness norm is ±p");
                out.witnesses.push(NormWitness {
                    p,
                    conductor,
                    element,
                    norm,
                });
            }
            None => {
                all_found = false;
                out.reasons.push(match last {
                    Some(SearchOutcome::OverBudget { needed, budget }) => format!(
                        "p = {p}: no witness found in Z[ζ_{conductor}]; the next box has {needed} candidates, budget {budget}"
                    ),
                    _ => format!("p = {p}: no element of norm ±{p} in Z[ζ_{conductor}] with coefficients ≤ {coeff_bound}"),
                });
            }
        }
    }
    if all_found {
        out.verdict = Verdict::Rational;
        debug_assert!(
            plans_condition(n),
            "norm witnesses found for n = {n} but the divisibility criterion fails"
        );
    }
    Ok(out)
}
