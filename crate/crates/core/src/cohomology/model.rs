//! Normalized 2-cocycles mod `N` in reduced coordinates.
//!
//! Fix a generating set `S`. A normalized cocycle is determined by its values `c(s, y)`,
//! `s ∈ S`, through `c(s·h, k) = c(h, k) + c(s, h·k) − c(s, h)` along a spanning tree of
//! left multiplications. Those values form a genuine cocycle exactly when this relation
//! holds for every `s ∈ S` and all `h, k`; the identity for arbitrary first arguments
//! then follows by induction on word length.

use std::collections::HashSet;

use serde::Serialize;

use super::cayley::CayleyGroup;
use super::cochain::{bockstein, d1, Cochain2};
use super::modlat::{kernel, quotient, solve, Summand};

pub(crate) struct CocycleModel<'g> {
    group: &'g CayleyGroup,
    modulus: i64,
    gens: Vec<usize>,
    /// `tree[x] = (i, h)` with `x = gens[i]·h`, for `x ≠ e`.
    tree: Vec<(usize, usize)>,
    /// `expr[x·n + k]`: value `c(x, k)` as a linear form in the coordinates.
    expr: Vec<Vec<i64>>,
}

impl<'g> CocycleModel<'g> {
    pub fn new(group: &'g CayleyGroup, modulus: i64) -> Self {
        let n = group.order();
        let gens = group.generating_set();
        let mut tree = vec![(usize::MAX, usize::MAX); n];
        let mut order = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let h = order[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let x = group.mul(g, h);
                if !seen[x] {
                    seen[x] = true;
                    tree[x] = (i, h);
                    order.push(x);
                }
            }
        }
        let width = gens.len() * n.saturating_sub(1);
        let mut model = CocycleModel {
            group,
            modulus,
            gens,
            tree,
            expr: vec![Vec::new(); n * n],
        };
        for k in 0..n {
            model.expr[k] = vec![0; width];
        }
        for &x in &order[1..] {
            let (i, h) = model.tree[x];
            for k in 0..n {
                let mut e = model.expr[h * n + k].clone();
                if let Some(v) = model.var(i, group.mul(h, k)) {
                    e[v] += 1;
                }
                if let Some(v) = model.var(i, h) {
                    e[v] -= 1;
                }
                for a in e.iter_mut() {
                    *a = a.rem_euclid(modulus);
                }
                model.expr[x * n + k] = e;
            }
        }
        model
    }

    pub fn width(&self) -> usize {
        self.gens.len() * self.group.order().saturating_sub(1)
    }

    fn var(&self, i: usize, y: usize) -> Option<usize> {
        (y != 0).then(|| i * (self.group.order() - 1) + (y - 1))
    }

    /// Linear constraints cutting out the cocycles.
    fn constraints(&self) -> Vec<Vec<i64>> {
        let n = self.group.order();
        let mut rows = HashSet::new();
        for (i, &g) in self.gens.iter().enumerate() {
            for h in 0..n {
                let gh = self.group.mul(g, h);
                for k in 0..n {
                    let mut row: Vec<i64> = self.expr[gh * n + k]
                        .iter()
                        .zip(&self.expr[h * n + k])
                        .map(|(a, b)| a - b)
                        .collect();
                    if let Some(v) = self.var(i, self.group.mul(h, k)) {
                        row[v] -= 1;
                    }
                    if let Some(v) = self.var(i, h) {
                        row[v] += 1;
                    }
                    for a in row.iter_mut() {
                        *a = a.rem_euclid(self.modulus);
                    }
                    if row.iter().any(|&a| a != 0) {
                        rows.insert(row);
                    }
                }
            }
        }
        let mut rows: Vec<_> = rows.into_iter().collect();
        rows.sort();
        rows
    }

    pub fn cocycle_generators(&self) -> Vec<Vec<i64>> {
        kernel(&self.constraints(), self.width(), self.modulus)
    }

    pub fn coordinates(&self, c: &Cochain2) -> Vec<i64> {
        let n = self.group.order();
        let mut out = vec![0; self.width()];
        for (i, &g) in self.gens.iter().enumerate() {
            for y in 1..n {
                out[self.var(i, y).unwrap()] = c.get(g, y);
            }
        }
        out
    }

    pub fn expand(&self, coords: &[i64]) -> Cochain2 {
        let n = self.group.order();
        let m = self.modulus;
        Cochain2::from_fn(n, m, |x, k| {
            self.expr[x * n + k]
                .iter()
                .zip(coords)
                .map(|(a, b)| a * b % m)
                .sum::<i64>()
                % m
        })
    }

    /// Homomorphisms `G → Z/N`, as value tables.
    pub fn homomorphisms(&self) -> Vec<Vec<i64>> {
        let n = self.group.order();
        let s = self.gens.len();
        let m = self.modulus;
        // f(x) as a linear form in (f(s))_{s ∈ S}
        let mut fexpr = vec![vec![0i64; s]; n];
        let mut order: Vec<usize> = (1..n).collect();
        order.sort_by_key(|&x| depth(&self.tree, x));
        for &x in &order {
            let (i, h) = self.tree[x];
            let mut e = fexpr[h].clone();
            e[i] += 1;
            fexpr[x] = e;
        }
        let mut rows = Vec::new();
        for (i, &g) in self.gens.iter().enumerate() {
            for (h, fh) in fexpr.iter().enumerate() {
                let mut row: Vec<i64> = fexpr[self.group.mul(g, h)].iter().zip(fh).map(|(a, b)| a - b).collect();
                row[i] -= 1;
                if row.iter().any(|a| a.rem_euclid(m) != 0) {
                    rows.push(row);
                }
            }
        }
        kernel(&rows, s, m)
            .into_iter()
            .map(|a| {
                fexpr
                    .iter()
                    .map(|e| e.iter().zip(&a).map(|(x, y)| x * y).sum::<i64>().rem_euclid(m))
                    .collect()
            })
            .collect()
    }

    fn delta(&self, x: usize) -> Vec<i64> {
        let mut f = vec![0; self.group.order()];
        f[x] = 1;
        self.coordinates(&d1(self.group, &f, self.modulus))
    }

    /// Generators of `B² + δ(Hom(G, Z/N))` in coordinates, split as (coboundaries, Bocksteins).
    pub fn trivial_generators(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let cob = (1..self.group.order()).map(|x| self.delta(x)).collect();
        let homs = self.homomorphisms();
        (cob, homs)
    }
}

fn depth(tree: &[(usize, usize)], mut x: usize) -> usize {
    let mut d = 0;
    while x != 0 {
        x = tree[x].1;
        d += 1;
    }
    d
}

/// A finite abelian group given by invariant factors and representative cocycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyModule {
    pub modulus: i64,
    pub invariant_factors: Vec<i64>,
    pub basis: Vec<Cochain2>,
}

impl CohomologyModule {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Proof that a cocycle is trivial in `H²(·, Q/Z)`: it equals `d¹f + Σ β_j δφ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityWitness {
    pub coboundary: Vec<i64>,
    pub bockstein: Vec<BocksteinTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BocksteinTerm {
    pub coefficient: i64,
    pub homomorphism: Vec<i64>,
}

impl TrivialityWitness {
    /// Recomputes `d¹f + Σ β_j δφ_j` from scratch.
    pub fn evaluate(&self, group: &CayleyGroup, modulus: i64) -> Option<Cochain2> {
        if self.coboundary.len() != group.order() || self.coboundary[0].rem_euclid(modulus) != 0 {
            return None;
        }
        let mut c = d1(group, &self.coboundary, modulus);
        for t in &self.bockstein {
            if t.homomorphism.len() != group.order()
                || !super::cochain::is_homomorphism(group, &t.homomorphism, modulus)
            {
                return None;
            }
            c.add_scaled(&bockstein(group, &t.homomorphism, modulus), t.coefficient);
        }
        Some(c)
    }
}

pub(crate) struct H2 {
    pub summands: Vec<Summand>,
}

impl<'g> CocycleModel<'g> {
    pub fn h2(&self) -> H2 {
        let z = self.cocycle_generators();
        let (cob, homs) = self.trivial_generators();
        let mut small = cob;
        small.extend(
            homs.iter()
                .map(|phi| self.coordinates(&bockstein(self.group, phi, self.modulus))),
        );
        H2 {
            summands: quotient(&z, &small, self.width(), self.modulus),
        }
    }

    /// Expresses a cocycle as a trivial class, if it is one.
    pub fn triviality_witness(&self, c: &Cochain2) -> Option<TrivialityWitness> {
        let n = self.group.order();
        let (cob, homs) = self.trivial_generators();
        let mut gens = cob;
        let bocks: Vec<Vec<i64>> = homs
            .iter()
            .map(|phi| self.coordinates(&bockstein(self.group, phi, self.modulus)))
            .collect();
        gens.extend(bocks.iter().cloned());
        let a = solve(&gens, &self.coordinates(c), self.modulus)?;
        let mut coboundary = vec![0; n];
        coboundary[1..].copy_from_slice(&a[..n - 1]);
        let bockstein = homs
            .into_iter()
            .zip(&a[n - 1..])
            .filter(|(_, &b)| b != 0)
            .map(|(homomorphism, &coefficient)| BocksteinTerm {
                coefficient,
                homomorphism,
            })
            .collect();
        Some(TrivialityWitness { coboundary, bockstein })
    }
}
