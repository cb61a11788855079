use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;

pub const DEFAULT_COHOMOLOGY_BOUND: usize = 64;

/// A finite group as a dense multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl CayleyGroup {
    /// Builds the table of `group`; elements appear in sorted order, so the identity is first.
    pub fn from_permgroup(group: &PermGroup, bound: usize) -> Result<Self> {
        let order = group.order();
        if order > bound as u64 {
            return Err(Error::CohomologyBound {
                order: order as usize,
                bound,
            });
        }
        let elements = group.elements()?;
        let n = elements.len();
        let mut table = vec![0u16; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                table[a * n + b] = group.element_index(&x.then(y))? as u16;
            }
        }
        let names = elements.iter().map(|g| g.to_cycle_string()).collect();
        Self::from_table(table, names)
    }

    /// Validates a table: closure, identity at 0, inverses, and associativity (exhaustive).
    pub fn from_table(table: Vec<u16>, names: Vec<String>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::Invalid("multiplication table has the wrong shape".into()));
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| m(0, a) != a || m(a, 0) != a) {
            return Err(Error::Invalid("element 0 is not the identity".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == 0) {
                Some(b) if m(b, a) == 0 => inverse[a] = b,
                _ => return Err(Error::Invalid(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::Invalid("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(CayleyGroup {
            order: n,
            table,
            inverse,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut list = vec![0];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.contains(&0)
            && members.iter().all(|&a| a < self.order)
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    /// The subgroup on `set` as its own table, with the map from its indices to ours.
    pub fn subgroup(&self, set: &[usize]) -> Result<(CayleyGroup, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(Error::NotSubgroup);
        }
        let elements: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut local = vec![usize::MAX; self.order];
        for (i, &a) in elements.iter().enumerate() {
            local[a] = i;
        }
        let k = elements.len();
        let mut table = vec![0u16; k * k];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                table[i * k + j] = local[self.mul(a, b)] as u16;
            }
        }
        let inverse = elements.iter().map(|&a| local[self.inv(a)]).collect();
        let names = elements.iter().map(|&a| self.names[a].clone()).collect();
        Ok((
            CayleyGroup {
                order: k,
                table,
                inverse,
                names,
            },
            elements,
        ))
    }

    /// A generating set chosen greedily: repeatedly add the least element not yet generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        while span.len() < self.order {
            let next = (1..self.order).find(|a| span.binary_search(a).is_err()).unwrap();
            gens.push(next);
            span = self.generated(&gens);
        }
        gens
    }
}

/// Every subgroup `⟨a, b⟩` with `ab = ba`, deduplicated, ordered by (size, elements).
pub fn bicyclic_subgroups(group: &CayleyGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            if group.commute(a, b) {
                let s = group.generated(&[a, b]);
                found.insert((s.len(), s));
            }
        }
    }
    found.into_iter().map(|(_, s)| s).collect()
}
