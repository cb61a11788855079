//! Conjugacy classes by full element enumeration, and the rational-class test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    /// Lexicographically least element of the class.
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
    pub rational: bool,
    pub cycle_type: Vec<usize>,
}

impl ConjugacyClass {
    pub fn is_identity(&self) -> bool {
        self.element_order == 1
    }
}

pub(crate) struct ClassData {
    /// Element index to position in `classes`.
    pub(crate) class_of: Vec<usize>,
    pub(crate) classes: Vec<ConjugacyClass>,
    pub(crate) members: Vec<Vec<usize>>,
}

/// Spreadsheet-style suffix: 0 → "A", 25 → "Z", 26 → "AA".
fn letters(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

fn build_class_data(group: &PermGroup) -> Result<ClassData> {
    let elems = group.element_cache()?;
    let n = elems.list.len();
    let gens: Vec<(Permutation, Permutation)> = group.generators().iter().map(|g| (g.clone(), g.inverse())).collect();
    const UNSET: usize = usize::MAX;
    let mut raw_class = vec![UNSET; n];
    let mut raw_members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if raw_class[start] != UNSET {
            continue;
        }
        let id = raw_members.len();
        raw_class[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = &elems.list[members[head]];
            head += 1;
            for (g, ginv) in &gens {
                let y = &(ginv * x) * g;
                let yi = elems.index[&y];
                if raw_class[yi] == UNSET {
                    raw_class[yi] = id;
                    members.push(yi);
                }
            }
        }
        members.sort_unstable();
        raw_members.push(members);
    }

    // Elements are sorted, so members[0] is the least representative.
    let mut order: Vec<usize> = (0..raw_members.len()).collect();
    let info: Vec<(u64, u64, usize)> = raw_members
        .iter()
        .map(|m| (elems.list[m[0]].order(), m.len() as u64, m[0]))
        .collect();
    order.sort_by_key(|&c| (info[c].0, std::cmp::Reverse(info[c].1), info[c].2));

    let mut remap = vec![0; raw_members.len()];
    let mut classes = Vec::with_capacity(order.len());
    let mut members = Vec::with_capacity(order.len());
    let mut rank_in_order = 0;
    let mut prev_order = 0;
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
        let (ord, size, rep) = info[old];
        if ord != prev_order {
            rank_in_order = 0;
            prev_order = ord;
        }
        let representative = elems.list[rep].clone();
        classes.push(ConjugacyClass {
            label: format!("{}{}", ord, letters(rank_in_order)),
            cycle_type: representative.cycle_type(),
            representative,
            size,
            element_order: ord,
            rational: false,
        });
        rank_in_order += 1;
        members.push(raw_members[old].clone());
    }
    let class_of: Vec<usize> = raw_class.iter().map(|&c| remap[c]).collect();
    for c in 0..classes.len() {
        let g = classes[c].representative.clone();
        classes[c].rational = power_closed(&g, c, |h| class_of[elems.index[h]]);
    }
    Ok(ClassData {
        class_of,
        classes,
        members,
    })
}

/// `g^k` stays in class `c` for every `k` prime to the order of `g`.
fn power_closed(g: &Permutation, c: usize, class_index: impl Fn(&Permutation) -> usize) -> bool {
    let ord = g.order();
    (2..ord)
        .filter(|&k| num_integer::gcd(k, ord) == 1)
        .all(|k| class_index(&g.pow(k as i64)) == c)
}

impl PermGroup {
    pub(crate) fn class_data(&self) -> Result<&ClassData> {
        self.check_enumerable()?;
        if let Some(d) = self.class_data.get() {
            return Ok(d);
        }
        let data = build_class_data(self)?;
        Ok(self.class_data.get_or_init(|| data))
    }

    /// Classes sorted by element order, then by decreasing size, then by representative.
    pub fn conjugacy_classes(&self) -> Result<&[ConjugacyClass]> {
        Ok(&self.class_data()?.classes)
    }

    pub fn class_index_of(&self, g: &Permutation) -> Result<usize> {
        self.require_member(g)?;
        let data = self.class_data()?;
        Ok(data.class_of[self.element_index(g)?])
    }

    pub fn class_of(&self, g: &Permutation) -> Result<&ConjugacyClass> {
        let c = self.class_index_of(g)?;
        Ok(&self.class_data()?.classes[c])
    }

    pub fn class_by_label(&self, label: &str) -> Result<(usize, &ConjugacyClass)> {
        self.conjugacy_classes()?
            .iter()
            .enumerate()
            .find(|(_, c)| c.label == label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }

    /// Element indices of the class at position `c`.
    pub fn class_members(&self, c: usize) -> Result<&[usize]> {
        Ok(&self.class_data()?.members[c])
    }

    /// Recomputes the power-map test from the class's own representative.
    pub fn is_rational_class(&self, class: &ConjugacyClass) -> Result<bool> {
        self.is_rational_at(&class.representative)
    }

    /// Rationality of the class containing `g`, tested from `g` itself.
    pub fn is_rational_at(&self, g: &Permutation) -> Result<bool> {
        let c = self.class_index_of(g)?;
        let data = self.class_data()?;
        Ok(power_closed(g, c, |h| data.class_of[self.element_index(h).unwrap()]))
    }

    pub fn centralizer_order(&self, g: &Permutation) -> Result<u64> {
        self.require_member(g)?;
        let elems = self.elements()?;
        Ok(elems.iter().filter(|h| (*h * g) == (g * *h)).count() as u64)
    }

    pub fn centre(&self) -> Result<Vec<Permutation>> {
        let elems = self.elements()?;
        Ok(elems
            .iter()
            .filter(|z| self.generators().iter().all(|g| (*z * g) == (g * *z)))
            .cloned()
            .collect())
    }

    /// Whether the entries generate the whole group.
    pub fn generates(&self, tuple: &[Permutation]) -> Result<bool> {
        for g in tuple {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch {
                    expected: self.degree(),
                    found: g.degree(),
                });
            }
            self.require_member(g)?;
        }
        Ok(PermGroup::subgroup_order(tuple) == self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::perm::parse_cycles;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    /// Orbit partition under conjugation by every element.
    fn brute_classes(g: &PermGroup) -> Vec<Vec<Permutation>> {
        let elems = g.elements().unwrap();
        let mut done = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in elems {
            if done.contains(x) {
                continue;
            }
            let mut cls: Vec<Permutation> = elems.iter().map(|h| x.conjugate_by(h)).collect();
            cls.sort();
            cls.dedup();
            for c in &cls {
                done.insert(c.clone());
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn class_counts() {
        let s5 = catalogue::symmetric(5).unwrap();
        assert_eq!(s5.conjugacy_classes().unwrap().len(), 7);
        assert_eq!(brute_classes(&s5).len(), 7);
        let trivial = PermGroup::from_generators(&[Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.conjugacy_classes().unwrap().len(), 1);
        let s3 = catalogue::symmetric(3).unwrap();
        let sizes: Vec<u64> = s3.conjugacy_classes().unwrap().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let labels: Vec<&str> = s3
            .conjugacy_classes()
            .unwrap()
            .iter()
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(labels, vec!["1A", "2A", "3A"]);
    }

    #[test]
    fn s4_labels_put_transpositions_first() {
        let s4 = catalogue::symmetric(4).unwrap();
        let cls = s4.conjugacy_classes().unwrap();
        let labels: Vec<(&str, u64)> = cls.iter().map(|c| (c.label.as_str(), c.size)).collect();
        assert_eq!(labels, vec![("1A", 1), ("2A", 6), ("2B", 3), ("3A", 8), ("4A", 6)]);
        assert!(cls[1].representative.is_transposition());
    }

    #[test]
    fn class_partition_matches_brute_force() {
        for g in [
            catalogue::symmetric(4).unwrap(),
            catalogue::alternating(5).unwrap(),
            catalogue::quaternion().unwrap(),
            catalogue::dihedral(6).unwrap(),
        ] {
            let mut ours: Vec<Vec<Permutation>> = (0..g.conjugacy_classes().unwrap().len())
                .map(|c| {
                    g.class_members(c)
                        .unwrap()
                        .iter()
                        .map(|&i| g.elements().unwrap()[i].clone())
                        .collect()
                })
                .collect();
            ours.sort();
            let mut brute = brute_classes(&g);
            brute.sort();
            assert_eq!(ours, brute);
        }
    }

    #[test]
    fn rational_classes() {
        for n in 2..=6 {
            let s = catalogue::symmetric(n).unwrap();
            for c in s.conjugacy_classes().unwrap() {
                assert!(c.rational, "S{n} class {}", c.label);
                assert!(s.is_rational_class(c).unwrap());
            }
        }
        let z5 = catalogue::cyclic(5).unwrap();
        let gen = z5.generators()[0].clone();
        assert!(!z5.class_of(&gen).unwrap().rational);
        let q8 = catalogue::quaternion().unwrap();
        for c in q8.conjugacy_classes().unwrap() {
            assert!(c.rational, "Q8 class {}", c.label);
        }
        let i_class = q8
            .conjugacy_classes()
            .unwrap()
            .iter()
            .find(|c| c.element_order == 4)
            .unwrap();
        assert_eq!(i_class.size, 2);
        // A5: the two classes of 5-cycles are not rational
        let a5 = catalogue::alternating(5).unwrap();
        let irr: Vec<&str> = a5
            .conjugacy_classes()
            .unwrap()
            .iter()
            .filter(|c| !c.rational)
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(irr, vec!["5A", "5B"]);
    }

    #[test]
    fn rationality_independent_of_representative() {
        for g in [
            catalogue::alternating(5).unwrap(),
            catalogue::symmetric(5).unwrap(),
            catalogue::dihedral(5).unwrap(),
        ] {
            let elems = g.elements().unwrap();
            for (c, class) in g.conjugacy_classes().unwrap().iter().enumerate() {
                for &i in g.class_members(c).unwrap().iter().step_by(3) {
                    assert_eq!(g.is_rational_at(&elems[i]).unwrap(), class.rational);
                }
            }
        }
    }

    #[test]
    fn class_of_examples() {
        let s3 = catalogue::symmetric(3).unwrap();
        assert_eq!(s3.class_of(&p("(1 2)", 3)).unwrap().size, 3);
        assert_eq!(s3.class_of(&Permutation::identity(3)).unwrap().size, 1);
        let a4 = catalogue::alternating(4).unwrap();
        assert_eq!(a4.class_of(&p("(1 2 3)", 4)).unwrap().size, 4);
        assert!(matches!(a4.class_of(&p("(1 2)", 4)), Err(Error::NotMember(_))));
    }

    #[test]
    fn generation() {
        let s3 = catalogue::symmetric(3).unwrap();
        assert!(s3.generates(&[p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap());
        assert!(!s3.generates(&[p("(1 2 3)", 3)]).unwrap());
        let s4 = catalogue::symmetric(4).unwrap();
        assert!(!s4.generates(&[p("(1 2)", 4), p("(3 4)", 4)]).unwrap());
        let a4 = catalogue::alternating(4).unwrap();
        assert!(matches!(a4.generates(&[p("(1 2)", 4)]), Err(Error::NotMember(_))));
    }

    #[test]
    fn centralizers() {
        let s4 = catalogue::symmetric(4).unwrap();
        assert_eq!(s4.centralizer_order(&Permutation::identity(4)).unwrap(), 24);
        assert_eq!(s4.centralizer_order(&p("(1 2 3 4)", 4)).unwrap(), 4);
        let s3 = catalogue::symmetric(3).unwrap();
        assert_eq!(s3.centralizer_order(&p("(1 2)", 3)).unwrap(), 2);
    }

    #[test]
    fn class_equation_and_orbit_stabilizer() {
        for g in [
            catalogue::symmetric(5).unwrap(),
            catalogue::quaternion().unwrap(),
            catalogue::alternating(4).unwrap(),
            catalogue::abelian(&[6, 2]).unwrap(),
        ] {
            let total: u64 = g.conjugacy_classes().unwrap().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            for x in g.elements().unwrap() {
                let c = g.class_of(x).unwrap().size;
                assert_eq!(c * g.centralizer_order(x).unwrap(), g.order());
            }
        }
    }

    #[test]
    fn letter_suffixes() {
        assert_eq!(letters(0), "A");
        assert_eq!(letters(25), "Z");
        assert_eq!(letters(26), "AA");
        assert_eq!(letters(27), "AB");
    }
}
