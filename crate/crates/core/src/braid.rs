//! Artin braid generators acting on Nielsen tuples, and orbit decomposition.
//!
//! `σ_i` sends `(…, g_i, g_{i+1}, …)` to `(…, g_i g_{i+1} g_i⁻¹, g_i, …)`; indices are 1-based.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::nielsen::{enumerate_ni, NielsenTuple};
use crate::perm::Permutation;

fn check_index(t: &NielsenTuple, i: usize) -> Result<()> {
    let max = t.len().saturating_sub(1);
    if i == 0 || i > max {
        Err(Error::BraidIndex { index: i, max })
    } else {
        Ok(())
    }
}

/// Applies `σ_i` and re-canonicalizes.
pub fn braid_generator_action(group: &PermGroup, t: &NielsenTuple, i: usize) -> Result<NielsenTuple> {
    check_index(t, i)?;
    let mut e: Vec<Permutation> = t.entries().to_vec();
    let (a, b) = (e[i - 1].clone(), e[i].clone());
    e[i - 1] = a.then(&b).then(&a.inverse());
    e[i] = a;
    NielsenTuple::canonical(group, &e)
}

/// Applies `σ_i⁻¹`: `(g_i, g_{i+1}) ↦ (g_{i+1}, g_{i+1}⁻¹ g_i g_{i+1})`.
pub fn braid_generator_inverse(group: &PermGroup, t: &NielsenTuple, i: usize) -> Result<NielsenTuple> {
    check_index(t, i)?;
    let mut e: Vec<Permutation> = t.entries().to_vec();
    let (a, b) = (e[i - 1].clone(), e[i].clone());
    e[i] = a.conjugate_by(&b);
    e[i - 1] = b;
    NielsenTuple::canonical(group, &e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidOrbit {
    pub size: usize,
    pub class_multiset: Vec<String>,
    pub representative: NielsenTuple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidOrbitReport {
    pub r: usize,
    pub total: usize,
    pub orbit_count: usize,
    pub orbits: Vec<BraidOrbit>,
}

impl BraidOrbitReport {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }
}

/// Braid-generator images of every tuple, as indices into `tuples`.
///
/// Panics if the set is not closed under the action.
pub fn braid_images(group: &PermGroup, tuples: &[NielsenTuple]) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&[u8], usize> = tuples.iter().enumerate().map(|(k, t)| (t.key(), k)).collect();
    tuples
        .par_iter()
        .map(|t| {
            (1..t.len())
                .map(|i| {
                    let img = braid_generator_action(group, t, i)?;
                    Ok(*index
                        .get(img.key())
                        .expect("tuple set not closed under the braid action"))
                })
                .collect()
        })
        .collect()
}

/// Splits a braid-closed set of tuples into orbits, ordered by least representative.
pub fn orbits_of(group: &PermGroup, tuples: &[NielsenTuple]) -> Result<Vec<BraidOrbit>> {
    let images = braid_images(group, tuples)?;
    let mut seen = vec![false; tuples.len()];
    let mut orbits = Vec::new();
    // tuples are sorted by key, so the first unseen is the least member of its orbit
    for start in 0..tuples.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &y in &images[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        let representative = tuples[start].clone();
        orbits.push(BraidOrbit {
            size: queue.len(),
            class_multiset: representative.class_multiset(group)?,
            representative,
        });
    }
    Ok(orbits)
}

/// Orbits of the braid action on `ni_r(G)`, optionally restricted to one class multiset.
pub fn braid_orbits(
    group: &PermGroup,
    r: usize,
    restrict_to: Option<&[String]>,
    budget: u128,
) -> Result<BraidOrbitReport> {
    let mut wanted: Option<Vec<String>> = None;
    if let Some(labels) = restrict_to {
        for l in labels {
            let (_, class) = group.class_by_label(l)?;
            if class.is_identity() {
                return Err(Error::TrivialClass(l.clone()));
            }
        }
        if labels.len() != r {
            return Err(Error::Invalid(format!(
                "restriction has {} labels but r = {r}",
                labels.len()
            )));
        }
        let mut w = labels.to_vec();
        w.sort();
        wanted = Some(w);
    }
    let mut tuples = enumerate_ni(group, r, budget)?;
    if let Some(w) = &wanted {
        let keep = tuples
            .iter()
            .map(|t| t.class_multiset(group).map(|m| &m == w))
            .collect::<Result<Vec<bool>>>()?;
        let mut it = keep.into_iter();
        tuples.retain(|_| it.next().unwrap());
    }
    let orbits = orbits_of(group, &tuples)?;
    Ok(BraidOrbitReport {
        r,
        total: tuples.len(),
        orbit_count: orbits.len(),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::nielsen::DEFAULT_SEARCH_BUDGET;

    #[test]
    fn twist_formula() {
        let s4 = catalogue::symmetric(4).unwrap();
        let t = enumerate_ni(&s4, 3, DEFAULT_SEARCH_BUDGET).unwrap().remove(0);
        let [a, b, c] = [0, 1, 2].map(|k| t.entries()[k].clone());
        let expected = NielsenTuple::canonical(&s4, &[a.then(&b).then(&a.inverse()), a.clone(), c]).unwrap();
        assert_eq!(braid_generator_action(&s4, &t, 1).unwrap(), expected);
    }

    #[test]
    fn inverse_undoes_generator() {
        let s3 = catalogue::symmetric(3).unwrap();
        for t in enumerate_ni(&s3, 3, DEFAULT_SEARCH_BUDGET).unwrap() {
            for i in 1..=2 {
                let there = braid_generator_action(&s3, &t, i).unwrap();
                let back = braid_generator_inverse(&s3, &there, i).unwrap();
                assert_eq!(back.key(), t.key());
                assert!(there.product().is_identity());
            }
        }
    }

    #[test]
    fn index_errors() {
        let s3 = catalogue::symmetric(3).unwrap();
        let t = enumerate_ni(&s3, 3, DEFAULT_SEARCH_BUDGET).unwrap().remove(0);
        assert_eq!(
            braid_generator_action(&s3, &t, 0).unwrap_err(),
            Error::BraidIndex { index: 0, max: 2 }
        );
        assert_eq!(
            braid_generator_action(&s3, &t, 3).unwrap_err(),
            Error::BraidIndex { index: 3, max: 2 }
        );
    }

    #[test]
    fn braid_relation_on_ni3_s3() {
        let s3 = catalogue::symmetric(3).unwrap();
        for t in enumerate_ni(&s3, 3, DEFAULT_SEARCH_BUDGET).unwrap() {
            let s = |x: &NielsenTuple, i| braid_generator_action(&s3, x, i).unwrap();
            assert_eq!(s(&s(&s(&t, 1), 2), 1), s(&s(&s(&t, 2), 1), 2));
        }
    }

    #[test]
    fn s3_orbit_examples() {
        let s3 = catalogue::symmetric(3).unwrap();
        let restrict: Vec<String> = ["2A", "2A", "3A"].map(String::from).to_vec();
        let rep = braid_orbits(&s3, 3, Some(&restrict), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(rep.orbit_count, 1);
        assert_eq!(rep.orbits[0].class_multiset, restrict);
        // ordered class vectors (2A,2A,3A), (2A,3A,2A), (3A,2A,2A), one rigid tuple each
        assert_eq!(rep.total, 3);
    }

    #[test]
    fn empty_set_has_no_orbits() {
        let s3 = catalogue::symmetric(3).unwrap();
        let rep = braid_orbits(&s3, 2, None, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!((rep.total, rep.orbit_count), (0, 0));
    }

    #[test]
    fn s4_rigid_orbit() {
        let s4 = catalogue::symmetric(4).unwrap();
        let restrict: Vec<String> = ["2A", "3A", "4A"].map(String::from).to_vec();
        let rep = braid_orbits(&s4, 3, Some(&restrict), DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(rep.orbit_count, 1);
        assert_eq!(rep.orbit_sizes().iter().sum::<usize>(), rep.total);
    }

    #[test]
    fn restriction_errors() {
        let s3 = catalogue::symmetric(3).unwrap();
        let bad: Vec<String> = vec!["1A".into(), "2A".into(), "2A".into()];
        assert!(matches!(
            braid_orbits(&s3, 3, Some(&bad), DEFAULT_SEARCH_BUDGET),
            Err(Error::TrivialClass(_))
        ));
        let short: Vec<String> = vec!["2A".into()];
        assert!(matches!(
            braid_orbits(&s3, 3, Some(&short), DEFAULT_SEARCH_BUDGET),
            Err(Error::Invalid(_))
        ));
    }
}
