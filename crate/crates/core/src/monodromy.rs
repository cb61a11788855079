//! Cycle types, signatures and ramification data for subgroups of `S_n`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalogue;
use crate::error::{Error, Result};
use crate::group::{is_transitive_tuple, PermGroup};
use crate::nielsen::{product, NielsenTuple};
use crate::perm::Permutation;

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const DEFAULT_REALIZE_BUDGET: u128 = 50_000_000;

pub fn cycle_type(g: &Permutation) -> Vec<usize> {
    g.cycle_type()
}

/// `(−1)^(n − number of cycles)`, fixed points counted as cycles.
pub fn signature(g: &Permutation) -> i8 {
    partition_sign(g.degree(), &g.cycle_type())
}

pub fn partition_sign(n: usize, parts: &[usize]) -> i8 {
    if (n - parts.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Degree `n` plus one cycle type (a partition of `n`) per branch point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationDatum {
    degree: usize,
    types: Vec<Vec<usize>>,
}

impl RamificationDatum {
    pub fn new(degree: usize, types: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDatum("degree must be positive".into()));
        }
        if types.is_empty() {
            return Err(Error::InvalidDatum("at least one branch point is required".into()));
        }
        let mut sorted = Vec::with_capacity(types.len());
        for mut t in types {
            if t.contains(&0) || t.iter().sum::<usize>() != degree {
                return Err(Error::InvalidDatum(format!("{t:?} is not a partition of {degree}")));
            }
            t.sort_unstable_by(|a, b| b.cmp(a));
            sorted.push(t);
        }
        Ok(RamificationDatum { degree, types: sorted })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn types(&self) -> &[Vec<usize>] {
        &self.types
    }

    /// Total ramification `Σ_i Σ_{e ∈ μ_i} (e − 1)`.
    pub fn ramification(&self) -> usize {
        self.types.iter().map(|t| self.degree - t.len()).sum()
    }

    /// Genus from `2 − 2g = 2n − Σ (e − 1)`; `None` when that is not a nonnegative integer.
    pub fn genus(&self) -> Option<i64> {
        let twice = self.ramification() as i64 - 2 * self.degree as i64 + 2;
        (twice >= 0 && twice % 2 == 0).then_some(twice / 2)
    }
}

/// True iff the signs of the cycle types multiply to `+1`, which any product-one
/// realization requires.
pub fn parity_obstruction(d: &RamificationDatum) -> bool {
    d.types
        .iter()
        .map(|t| partition_sign(d.degree, t) as i32)
        .product::<i32>()
        == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Any,
    FullSymmetric,
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Realization {
    Witness { tuple: NielsenTuple, group_order: u64 },
    NoneExists,
    Unknown { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealizeLimits {
    pub max_degree: usize,
    pub budget: u128,
}

impl Default for RealizeLimits {
    fn default() -> Self {
        RealizeLimits {
            max_degree: DEFAULT_MAX_DEGREE,
            budget: DEFAULT_REALIZE_BUDGET,
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Searches for a transitive product-one tuple in `S_n` with the prescribed cycle types.
///
/// The search walks the cycle-type classes of `S_n` with the first entry fixed to its class
/// representative, so the returned witness is the first hit in that deterministic order,
/// canonicalized under conjugation.
pub fn realize_datum(d: &RamificationDatum, target: Target, limits: RealizeLimits) -> Result<Realization> {
    let n = d.degree;
    if n > limits.max_degree {
        return Ok(Realization::Unknown {
            reason: format!("degree {n} exceeds the search bound {}", limits.max_degree),
        });
    }
    let sn = catalogue::symmetric(n)?;
    let elems = sn.elements()?;
    let classes = sn.conjugacy_classes()?;
    let positions: Vec<&[usize]> = d
        .types
        .iter()
        .map(|t| {
            let c = classes
                .iter()
                .position(|c| &c.cycle_type == t)
                .expect("every partition is a class of S_n");
            sn.class_members(c)
        })
        .collect::<Result<_>>()?;
    let r = positions.len();
    let mut needed: u128 = 1;
    for p in positions.iter().skip(1).take(r.saturating_sub(2)) {
        needed = needed.saturating_mul(p.len() as u128);
    }
    if needed > limits.budget {
        return Ok(Realization::Unknown {
            reason: format!("search needs {needed} candidates, budget is {}", limits.budget),
        });
    }

    let wanted_order = match target {
        Target::Any => None,
        Target::FullSymmetric => Some(factorial(n)),
        Target::Alternating => Some((factorial(n) / 2).max(1)),
    };
    let accept = |entries: &[Permutation]| -> bool {
        if !is_transitive_tuple(n, entries) {
            return false;
        }
        match (target, wanted_order) {
            (_, None) => true,
            (Target::Alternating, Some(o)) => {
                entries.iter().all(|g| signature(g) == 1) && PermGroup::subgroup_order(entries) == o
            }
            (_, Some(o)) => PermGroup::subgroup_order(entries) == o,
        }
    };
    let last_type = d.types[r - 1].clone();

    let first = &elems[positions[0][0]];
    let hit: Option<Vec<Permutation>> = if r == 1 {
        let e = vec![first.clone()];
        (first.is_identity() && accept(&e)).then_some(e)
    } else if r == 2 {
        let e = vec![first.clone(), first.inverse()];
        (e[1].cycle_type() == last_type && accept(&e)).then_some(e)
    } else {
        positions[1].par_iter().find_map_first(|&b| {
            let mut stack = vec![first.clone(), elems[b].clone()];
            let prod = first.then(&elems[b]);
            first_completion(elems, &positions, &mut stack, prod, &last_type, &accept)
        })
    };
    Ok(match hit {
        Some(entries) => {
            debug_assert!(product(&entries).is_identity());
            let group_order = PermGroup::subgroup_order(&entries);
            Realization::Witness {
                tuple: NielsenTuple::canonical(&sn, &entries)?,
                group_order,
            }
        }
        None => Realization::NoneExists,
    })
}

fn first_completion(
    elems: &[Permutation],
    positions: &[&[usize]],
    stack: &mut Vec<Permutation>,
    prod: Permutation,
    last_type: &[usize],
    accept: &(dyn Fn(&[Permutation]) -> bool + Sync),
) -> Option<Vec<Permutation>> {
    let r = positions.len();
    if stack.len() == r - 1 {
        let last = prod.inverse();
        if last.cycle_type() != last_type {
            return None;
        }
        stack.push(last);
        let ok = accept(stack);
        let out = ok.then(|| stack.clone());
        stack.pop();
        return out;
    }
    for &i in positions[stack.len()] {
        let next = prod.then(&elems[i]);
        stack.push(elems[i].clone());
        let found = first_completion(elems, positions, stack, next, last_type, accept);
        stack.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// `G` is transitive, its transpositions generate it, and `|G| = n!`.
pub fn recognize_symmetric_by_transpositions(group: &PermGroup) -> bool {
    let n = group.degree();
    if !group.is_transitive() {
        return false;
    }
    let transpositions: Vec<Permutation> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| Permutation::transposition(n, a, b).unwrap())
        .filter(|t| group.contains(t))
        .collect();
    if n > 1 && transpositions.is_empty() {
        return false;
    }
    let generated = if n == 1 {
        1
    } else {
        PermGroup::subgroup_order(&transpositions)
    };
    generated == group.order() && group.order() == factorial(n)
}

/// Whether `N_{S_n}(H) = H`.
pub fn is_self_normalizing(group: &PermGroup, max_degree: usize) -> Result<bool> {
    let n = group.degree();
    if n > max_degree {
        return Err(Error::EnumerationBound {
            order: factorial(n),
            bound: factorial(max_degree),
        });
    }
    let sn = catalogue::symmetric(n)?;
    let normalizer = sn
        .elements()?
        .iter()
        .filter(|s| group.generators().iter().all(|g| group.contains(&g.conjugate_by(s))))
        .count() as u64;
    Ok(normalizer == group.order())
}

/// Distinct cycle types occurring in a group; handy for fixture reports.
pub fn cycle_types_of(group: &PermGroup) -> Result<BTreeSet<Vec<usize>>> {
    Ok(group
        .conjugacy_classes()?
        .iter()
        .map(|c| c.cycle_type.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    fn datum(n: usize, types: &[&[usize]]) -> RamificationDatum {
        RamificationDatum::new(n, types.iter().map(|t| t.to_vec()).collect()).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&p("(1 2)", 4)), -1);
        assert_eq!(signature(&Permutation::identity(5)), 1);
        for n in 2..=6 {
            let c = Permutation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(signature(&c), if (n - 1) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn parity_examples() {
        assert!(parity_obstruction(&datum(3, &[&[2, 1], &[2, 1], &[3]])));
        assert!(!parity_obstruction(&datum(4, &[&[2, 1, 1], &[4], &[4]])));
        assert!(parity_obstruction(&datum(2, &[&[2], &[2]])));
    }

    #[test]
    fn datum_validation() {
        assert!(RamificationDatum::new(4, vec![vec![3]]).is_err());
        assert!(RamificationDatum::new(4, vec![]).is_err());
        assert!(RamificationDatum::new(0, vec![vec![]]).is_err());
        assert!(RamificationDatum::new(3, vec![vec![0, 3]]).is_err());
        let d = RamificationDatum::new(4, vec![vec![1, 3]]).unwrap();
        assert_eq!(d.types(), &[vec![3, 1]]);
    }

    #[test]
    fn genus_bookkeeping() {
        // three branch points of S_n with types (n), (n−1,1), (2,1^{n−2}): genus 0
        for n in 3..=7 {
            let mut t2 = vec![2];
            t2.extend(std::iter::repeat_n(1, n - 2));
            let d = RamificationDatum::new(n, vec![vec![n], vec![n - 1, 1], t2]).unwrap();
            assert_eq!(d.genus(), Some(0));
        }
        assert_eq!(datum(4, &[&[2, 1, 1], &[4], &[4]]).genus(), None);
    }

    fn witness(r: Realization) -> (NielsenTuple, u64) {
        match r {
            Realization::Witness { tuple, group_order } => (tuple, group_order),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    fn check_witness(d: &RamificationDatum, t: &NielsenTuple) {
        assert!(t.product().is_identity());
        assert!(is_transitive_tuple(d.degree(), t.entries()));
        for (g, ty) in t.entries().iter().zip(d.types()) {
            assert_eq!(&g.cycle_type(), ty);
        }
    }

    #[test]
    fn realizes_alternating_example_datum() {
        let d = datum(4, &[&[4], &[3, 1], &[2, 1, 1]]);
        let (t, order) = witness(realize_datum(&d, Target::FullSymmetric, RealizeLimits::default()).unwrap());
        check_witness(&d, &t);
        assert_eq!(order, 24);
    }

    #[test]
    fn realizes_s3_triple() {
        let d = datum(3, &[&[2, 1], &[2, 1], &[3]]);
        let (t, order) = witness(realize_datum(&d, Target::FullSymmetric, RealizeLimits::default()).unwrap());
        check_witness(&d, &t);
        assert_eq!(order, 6);
    }

    #[test]
    fn parity_blocks_realization() {
        let d = datum(4, &[&[2, 1, 1], &[4], &[4]]);
        assert_eq!(
            realize_datum(&d, Target::Any, RealizeLimits::default()).unwrap(),
            Realization::NoneExists
        );
    }

    #[test]
    fn alternating_target() {
        // three 3-cycles generate A_4
        let d = datum(4, &[&[3, 1], &[3, 1], &[3, 1]]);
        let (t, order) = witness(realize_datum(&d, Target::Alternating, RealizeLimits::default()).unwrap());
        check_witness(&d, &t);
        assert_eq!(order, 12);
        assert_eq!(
            realize_datum(&d, Target::FullSymmetric, RealizeLimits::default()).unwrap(),
            Realization::NoneExists
        );
    }

    #[test]
    fn intransitive_datum_has_no_witness() {
        // a product-one pair of transpositions in S_4 never acts transitively
        let d = datum(4, &[&[2, 1, 1], &[2, 1, 1]]);
        assert_eq!(
            realize_datum(&d, Target::Any, RealizeLimits::default()).unwrap(),
            Realization::NoneExists
        );
    }

    #[test]
    fn limits_give_unknown() {
        let d = datum(9, &[&[9], &[8, 1], &[2, 1, 1, 1, 1, 1, 1, 1]]);
        assert!(matches!(
            realize_datum(&d, Target::Any, RealizeLimits::default()).unwrap(),
            Realization::Unknown { .. }
        ));
        let d = datum(5, &[&[5], &[4, 1], &[2, 1, 1, 1], &[2, 1, 1, 1]]);
        let tight = RealizeLimits {
            max_degree: 8,
            budget: 10,
        };
        assert!(matches!(
            realize_datum(&d, Target::Any, tight).unwrap(),
            Realization::Unknown { .. }
        ));
    }

    #[test]
    fn symmetric_recognition() {
        assert!(recognize_symmetric_by_transpositions(&catalogue::symmetric(4).unwrap()));
        assert!(!recognize_symmetric_by_transpositions(
            &catalogue::alternating(4).unwrap()
        ));
        let klein_ish = PermGroup::from_generators(&[p("(1 2)", 4), p("(3 4)", 4)]).unwrap();
        assert!(!recognize_symmetric_by_transpositions(&klein_ish));
    }

    #[test]
    fn self_normalizing() {
        // S_4 ≤ S_4 trivially; A_4 is normal in S_4; D_4 is a Sylow 2-subgroup, self-normalizing
        assert!(is_self_normalizing(&catalogue::symmetric(4).unwrap(), 8).unwrap());
        assert!(!is_self_normalizing(&catalogue::alternating(4).unwrap(), 8).unwrap());
        assert!(is_self_normalizing(&catalogue::dihedral(4).unwrap(), 8).unwrap());
        assert!(!is_self_normalizing(&catalogue::cyclic(5).unwrap(), 8).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(&v).unwrap())
        }

        proptest! {
            #[test]
            fn signature_is_multiplicative(a in perm(8), b in perm(8)) {
                prop_assert_eq!(signature(&(&a * &b)), signature(&a) * signature(&b));
            }
        }
    }
}
