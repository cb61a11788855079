//! Nielsen sets: generating product-one tuples up to simultaneous conjugation.
//!
//! Every search fixes the first entry to a class representative (each conjugation orbit
//! contains such a tuple), runs over the middle entries, and forces the last entry to be
//! the inverse of the partial product.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Default cap on the number of candidate tuples a search may visit.
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

/// An ordered list of nontrivial conjugacy-class labels of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVector {
    labels: Vec<String>,
    #[serde(skip)]
    classes: Vec<usize>,
}

impl ClassVector {
    pub fn new<S: AsRef<str>>(group: &PermGroup, labels: &[S]) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::ShortClassVector(labels.len()));
        }
        let mut classes = Vec::with_capacity(labels.len());
        for l in labels {
            let (idx, class) = group.class_by_label(l.as_ref())?;
            if class.is_identity() {
                return Err(Error::TrivialClass(class.label.clone()));
            }
            classes.push(idx);
        }
        Ok(ClassVector {
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            classes,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_indices(&self) -> &[usize] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// A product-one tuple stored in its canonical form: the lexicographically least
/// entrywise image under all simultaneous conjugations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NielsenTuple {
    entries: Vec<Permutation>,
    #[serde(skip)]
    key: Vec<u8>,
}

impl NielsenTuple {
    /// Canonicalizes `entries` under conjugation by `group`.
    pub fn canonical(group: &PermGroup, entries: &[Permutation]) -> Result<Self> {
        let elems = group.elements()?;
        let (entries, key) = canonical_form(elems, entries);
        Ok(NielsenTuple { entries, key })
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    pub fn key(&self) -> &[u8] {
        &self.key
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Left-to-right product of the entries.
    pub fn product(&self) -> Permutation {
        product(&self.entries)
    }

    /// Sorted class labels of the entries.
    pub fn class_multiset(&self, group: &PermGroup) -> Result<Vec<String>> {
        let mut labels = self
            .entries
            .iter()
            .map(|g| group.class_of(g).map(|c| c.label.clone()))
            .collect::<Result<Vec<_>>>()?;
        labels.sort();
        Ok(labels)
    }
}

impl PartialOrd for NielsenTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NielsenTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

pub(crate) fn product(entries: &[Permutation]) -> Permutation {
    let mut it = entries.iter();
    let first = it.next().expect("empty tuple").clone();
    it.fold(first, |acc, g| acc.then(g))
}

/// Lexicographically least simultaneous conjugate, narrowing the conjugators entry by entry.
pub(crate) fn canonical_form(elems: &[Permutation], entries: &[Permutation]) -> (Vec<Permutation>, Vec<u8>) {
    let mut survivors: Vec<&Permutation> = elems.iter().collect();
    let mut out = Vec::with_capacity(entries.len());
    for g in entries {
        let mut best: Option<Permutation> = None;
        let mut next = Vec::new();
        for &h in &survivors {
            let c = g.conjugate_by(h);
            match best.as_ref().map(|b| c.cmp(b)) {
                None | Some(Ordering::Less) => {
                    best = Some(c);
                    next.clear();
                    next.push(h);
                }
                Some(Ordering::Equal) => next.push(h),
                Some(Ordering::Greater) => {}
            }
        }
        out.push(best.unwrap());
        survivors = next;
    }
    let key = out.iter().flat_map(|p| p.as_bytes().iter().copied()).collect();
    (out, key)
}

/// Searches generating product-one tuples whose `i`-th entry lies in `positions[i]`.
///
/// Each position must be a union of conjugacy classes (given as element indices).
pub(crate) fn search_tuples(group: &PermGroup, positions: &[Vec<usize>], budget: u128) -> Result<Vec<NielsenTuple>> {
    let r = positions.len();
    assert!(r >= 2, "need at least two positions");
    let elems = group.elements()?;
    let class_data = group.class_data()?;
    let n = elems.len();

    let mut first_reps: Vec<usize> = positions[0]
        .iter()
        .map(|&i| class_data.members[class_data.class_of[i]][0])
        .collect();
    first_reps.sort_unstable();
    first_reps.dedup();

    let mut needed: u128 = first_reps.len() as u128;
    for pos in &positions[1..r - 1] {
        needed = needed.saturating_mul(pos.len() as u128);
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let mut last_allowed = vec![false; n];
    for &i in &positions[r - 1] {
        last_allowed[i] = true;
    }
    let order = group.order();

    // Parallel over (first, second) prefixes; merged through an ordered map.
    let prefixes: Vec<(usize, Option<usize>)> = if r == 2 {
        first_reps.iter().map(|&a| (a, None)).collect()
    } else {
        first_reps
            .iter()
            .flat_map(|&a| positions[1].iter().map(move |&b| (a, Some(b))))
            .collect()
    };
    let found: Vec<NielsenTuple> = prefixes
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let mut out = Vec::new();
            let mut stack: Vec<Permutation> = vec![elems[a].clone()];
            match b {
                None => {
                    let last = elems[a].inverse();
                    try_complete(group, elems, &stack, last, &last_allowed, order, &mut out);
                }
                Some(b) => {
                    stack.push(elems[b].clone());
                    let prod = elems[a].then(&elems[b]);
                    extend(
                        group,
                        elems,
                        positions,
                        &mut stack,
                        prod,
                        &last_allowed,
                        order,
                        &mut out,
                    );
                }
            }
            out
        })
        .collect();

    let mut uniq: BTreeMap<Vec<u8>, NielsenTuple> = BTreeMap::new();
    for t in found {
        uniq.entry(t.key.clone()).or_insert(t);
    }
    Ok(uniq.into_values().collect())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    group: &PermGroup,
    elems: &[Permutation],
    positions: &[Vec<usize>],
    stack: &mut Vec<Permutation>,
    prod: Permutation,
    last_allowed: &[bool],
    order: u64,
    out: &mut Vec<NielsenTuple>,
) {
    let r = positions.len();
    if stack.len() == r - 1 {
        try_complete(group, elems, stack, prod.inverse(), last_allowed, order, out);
        return;
    }
    for &i in &positions[stack.len()] {
        let g = &elems[i];
        let next = prod.then(g);
        stack.push(g.clone());
        extend(group, elems, positions, stack, next, last_allowed, order, out);
        stack.pop();
    }
}

fn try_complete(
    group: &PermGroup,
    elems: &[Permutation],
    prefix: &[Permutation],
    last: Permutation,
    last_allowed: &[bool],
    order: u64,
    out: &mut Vec<NielsenTuple>,
) {
    let li = match group.element_index(&last) {
        Ok(i) => i,
        Err(_) => return,
    };
    if !last_allowed[li] {
        return;
    }
    let mut entries = prefix.to_vec();
    entries.push(last);
    if PermGroup::subgroup_order(&entries) != order {
        return;
    }
    let (entries, key) = canonical_form(elems, &entries);
    out.push(NielsenTuple { entries, key });
}

/// `ni^C(G)`: one canonical tuple per conjugation orbit, sorted by key.
pub fn enumerate_nielsen(group: &PermGroup, classes: &ClassVector) -> Result<Vec<NielsenTuple>> {
    enumerate_nielsen_with_budget(group, classes, DEFAULT_SEARCH_BUDGET)
}

pub fn enumerate_nielsen_with_budget(
    group: &PermGroup,
    classes: &ClassVector,
    budget: u128,
) -> Result<Vec<NielsenTuple>> {
    let positions = classes
        .class_indices()
        .iter()
        .map(|&c| group.class_members(c).map(<[usize]>::to_vec))
        .collect::<Result<Vec<_>>>()?;
    search_tuples(group, &positions, budget)
}

/// `ni_r(G)`: generating product-one `r`-tuples with no identity entry.
pub fn enumerate_ni(group: &PermGroup, r: usize, budget: u128) -> Result<Vec<NielsenTuple>> {
    if r < 2 {
        return Err(Error::Invalid(format!("tuple length r = {r} must be at least 2")));
    }
    let nontrivial: Vec<usize> = (1..group.elements()?.len()).collect();
    search_tuples(group, &vec![nontrivial; r], budget)
}

/// `ni*_r(G)`: generating product-one `r`-tuples, identity entries allowed.
pub fn enumerate_ni_star(group: &PermGroup, r: usize, budget: u128) -> Result<Vec<NielsenTuple>> {
    let all: Vec<usize> = (0..group.elements()?.len()).collect();
    match r {
        0 => Err(Error::Invalid("tuple length r must be positive".into())),
        1 => {
            // only (1), and only when G is trivial
            if group.order() == 1 {
                Ok(vec![NielsenTuple::canonical(group, &[group.identity()])?])
            } else {
                Ok(Vec::new())
            }
        }
        _ => search_tuples(group, &vec![all; r], budget),
    }
}

pub fn is_rigid(group: &PermGroup, classes: &ClassVector) -> Result<bool> {
    Ok(enumerate_nielsen(group, classes)?.len() == 1)
}

/// Checked hypotheses of the rigidity theorem for one class vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    pub group_order: u64,
    pub class_vector: Vec<String>,
    pub count: usize,
    pub rigid: bool,
    pub rational_flags: Vec<bool>,
    pub all_rational: bool,
    pub all_nontrivial: bool,
    pub centre_trivial: bool,
    pub hypotheses_satisfied: bool,
    pub witness: Option<NielsenTuple>,
}

pub fn rigidity_certificate(group: &PermGroup, classes: &ClassVector) -> Result<RigidityCertificate> {
    rigidity_certificate_with_budget(group, classes, DEFAULT_SEARCH_BUDGET)
}

pub fn rigidity_certificate_with_budget(
    group: &PermGroup,
    classes: &ClassVector,
    budget: u128,
) -> Result<RigidityCertificate> {
    let tuples = enumerate_nielsen_with_budget(group, classes, budget)?;
    let all_classes = group.conjugacy_classes()?;
    let rational_flags = classes
        .class_indices()
        .iter()
        .map(|&c| group.is_rational_class(&all_classes[c]))
        .collect::<Result<Vec<_>>>()?;
    let all_rational = rational_flags.iter().all(|&f| f);
    let all_nontrivial = classes.class_indices().iter().all(|&c| !all_classes[c].is_identity());
    let centre_trivial = group.centre()?.len() == 1;
    let rigid = tuples.len() == 1;
    Ok(RigidityCertificate {
        group_order: group.order(),
        class_vector: classes.labels().to_vec(),
        count: tuples.len(),
        rigid,
        rational_flags,
        all_rational,
        all_nontrivial,
        centre_trivial,
        hypotheses_satisfied: rigid && all_rational && all_nontrivial && centre_trivial,
        witness: if rigid { tuples.into_iter().next() } else { None },
    })
}
