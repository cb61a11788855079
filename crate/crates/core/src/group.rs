//! Permutation groups given by generators, backed by a base and strong generating set.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Construction fails above this order.
    pub max_order: u64,
    /// Element lists and class data are only built up to this order.
    pub enumeration_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 1_000_000_000_000,
            enumeration_bound: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    /// `transversal[b]` maps the base point to `b`, for `b` in the basic orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut queue = vec![self.point];
        let mut head = 0;
        // keep existing coset representatives so earlier strips stay valid
        for (b, t) in self.transversal.iter().enumerate() {
            if t.is_some() && b != self.point {
                queue.push(b);
            }
        }
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            for g in &self.gens {
                let c = g.image(b);
                if self.transversal[c].is_none() {
                    let t = self.transversal[b].as_ref().unwrap().then(g);
                    self.transversal[c] = Some(t);
                    queue.push(c);
                }
            }
        }
        debug_assert!(queue.len() <= degree);
    }

    fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversal
            .iter()
            .enumerate()
            .filter_map(|(b, t)| t.as_ref().map(|_| b))
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Stabilizer chain built by the deterministic Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            return chain;
        }
        let first = gens[0].first_moved().unwrap();
        chain.levels.push(Level::new(first, degree));
        for g in gens {
            let (residue, _) = chain.strip(g, 0);
            if !residue.is_identity() {
                chain.ensure_moved_base_point(&residue);
                chain.levels[0].gens.push(g.clone());
            }
        }
        if chain.levels[0].gens.is_empty() {
            chain.levels.clear();
            return chain;
        }
        for level in &mut chain.levels {
            level.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Every nontrivial `g` must move some base point.
    fn ensure_moved_base_point(&mut self, g: &Permutation) {
        if self.levels.iter().any(|l| g.image(l.point) != l.point) {
            return;
        }
        let p = g.first_moved().unwrap();
        self.levels.push(Level::new(p, self.degree));
    }

    /// Sifts `g` from `level`; returns the residue and the level where sifting stopped.
    fn strip(&self, g: &Permutation, level: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(level) {
            let b = h.image(l.point);
            match &l.transversal[b] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let li = i - 1;
            let orbit: Vec<usize> = self.levels[li].orbit().collect();
            let gens = self.levels[li].gens.clone();
            for &beta in &orbit {
                for x in &gens {
                    let u_beta = self.levels[li].transversal[beta].as_ref().unwrap();
                    let u_img = self.levels[li].transversal[x.image(beta)].as_ref().unwrap();
                    let h = u_beta.then(x).then(&u_img.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, li + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let p = y.first_moved().unwrap();
                            self.levels.push(Level::new(p, self.degree));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = j + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// `None` when the product overflows `u64`.
    pub(crate) fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit_len() as u64))
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, j) = self.strip(g, 0);
            j == self.levels.len() && h.is_identity()
        }
    }

    fn enumerate(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        // g = u_k · … · u_1 · u_0 over levels deepest first
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level.transversal.iter().flatten().collect();
            let mut next = Vec::with_capacity(elems.len() * reps.len());
            for e in &elems {
                for u in &reps {
                    next.push(e.then(u));
                }
            }
            elems = next;
        }
        elems
    }
}

pub(crate) struct Elements {
    pub(crate) list: Vec<Permutation>,
    pub(crate) index: HashMap<Permutation, usize>,
}

/// A permutation group `G ≤ S_n` with cached stabilizer chain.
///
/// Elements and conjugacy classes are computed lazily and cached; the group is `Sync`
/// and may be shared across threads once constructed.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: u64,
    chain: StabChain,
    limits: Limits,
    elements: OnceLock<Elements>,
    pub(crate) class_data: OnceLock<ClassData>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.order)
            .finish()
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            order: self.order,
            chain: self.chain.clone(),
            limits: self.limits,
            elements: OnceLock::new(),
            class_data: OnceLock::new(),
        }
    }
}

impl PermGroup {
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        PermGroup::with_limits(gens, Limits::default())
    }

    pub fn with_limits(gens: &[Permutation], limits: Limits) -> Result<Self> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        let chain = StabChain::new(degree, gens);
        let order = chain
            .order()
            .filter(|&o| o <= limits.max_order)
            .ok_or(Error::OrderTooLarge { max: limits.max_order })?;
        Ok(PermGroup {
            degree,
            generators: gens.to_vec(),
            order,
            chain,
            limits,
            elements: OnceLock::new(),
            class_data: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub(crate) fn require_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotMember(g.to_cycle_string()))
        }
    }

    pub fn check_enumerable(&self) -> Result<()> {
        if self.order > self.limits.enumeration_bound {
            Err(Error::EnumerationBound {
                order: self.order,
                bound: self.limits.enumeration_bound,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn element_cache(&self) -> Result<&Elements> {
        self.check_enumerable()?;
        Ok(self.elements.get_or_init(|| {
            let mut list = self.chain.enumerate();
            list.sort_unstable();
            let index = list.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
            Elements { list, index }
        }))
    }

    /// All elements in lexicographic order of their image arrays; the identity comes first.
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.element_cache()?.list)
    }

    pub fn element_index(&self, g: &Permutation) -> Result<usize> {
        self.element_cache()?
            .index
            .get(g)
            .copied()
            .ok_or_else(|| Error::NotMember(g.to_cycle_string()))
    }

    /// Order of the subgroup generated by `gens`, ignoring membership.
    pub fn subgroup_order(gens: &[Permutation]) -> u64 {
        match gens.first() {
            None => 1,
            Some(g) => StabChain::new(g.degree(), gens).order().unwrap_or(u64::MAX),
        }
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.degree
    }
}

pub fn is_transitive_tuple(degree: usize, gens: &[Permutation]) -> bool {
    let mut seen = vec![false; degree];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == degree
}
