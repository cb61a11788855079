//! Permutations of `{0, …, n-1}` with left-to-right composition.
//!
//! `a * b` applies `a` first and then `b`, so `(a * b).image(x) == b.image(a.image(x))`.
//! Points are 0-based internally and 1-based in cycle notation.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 255;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective(format!("{images:?}")));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a single cycle from 0-based points.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for (k, &p) in points.iter().enumerate() {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p + 1, degree });
            }
            images[p] = points[(k + 1) % points.len()];
        }
        Permutation::from_images(&images)
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        Permutation::cycle(degree, &[a, b])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// Raw image bytes; used as the canonical encoding in Nielsen keys.
    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `h⁻¹ · self · h`, i.e. relabel points through `h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[h.images[i] as usize] = h.images[x as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_transposition(&self) -> bool {
        let c = self.cycles();
        c.len() == 1 && c[0].len() == 2
    }

    /// First point moved by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_cycle_string())
    }
}

/// Parses cycle notation such as `"(1 2)(3 4 5)"` on `degree` points.
///
/// Cycles are multiplied left to right. `"()"` and the empty string give the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    let bytes = text.as_bytes();
    let mut acc = Permutation::identity(degree);
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(Error::Malformed {
                pos,
                msg: format!("expected '(' but found {:?}", bytes[pos] as char),
            });
        }
        let open = pos;
        pos += 1;
        let mut points: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                return Err(Error::Malformed {
                    pos: open,
                    msg: "unclosed '('".into(),
                });
            }
            match bytes[pos] {
                b')' => {
                    pos += 1;
                    break;
                }
                b'0'..=b'9' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let point: usize = text[start..pos].parse().map_err(|_| Error::Malformed {
                        pos: start,
                        msg: "number too large".into(),
                    })?;
                    if point == 0 || point > degree {
                        return Err(Error::PointOutOfRange { point, degree });
                    }
                    if points.contains(&(point - 1)) {
                        return Err(Error::RepeatedPoint { point });
                    }
                    points.push(point - 1);
                }
                c => {
                    return Err(Error::Malformed {
                        pos,
                        msg: format!("unexpected character {:?}", c as char),
                    });
                }
            }
        }
        if points.len() > 1 {
            acc = acc.then(&Permutation::cycle(degree, &points)?);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn disjoint_cycles() {
        // (3 4 5) sends 3→4→5→3, so 0-based 2→3, 3→4, 4→2.
        assert_eq!(p("(1 2)(3 4 5)", 5).images(), vec![1, 0, 3, 4, 2]);
    }

    #[test]
    fn empty_cycle_is_identity() {
        assert!(p("()", 3).is_identity());
        assert!(p("", 3).is_identity());
        assert!(p("(2)", 3).is_identity());
    }

    #[test]
    fn product_is_left_to_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let prod = p("(1 2)(2 3)", 3);
        assert_eq!(prod, &a * &b);
        // 1 -(1 2)-> 2 -(2 3)-> 3, so 1 ↦ 3.
        assert_eq!(prod.image(0), 2);
        assert_eq!(prod, p("(1 3 2)", 3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_cycles("(1 4)", 3),
            Err(Error::PointOutOfRange { point: 4, .. })
        ));
        assert!(matches!(
            parse_cycles("(0 1)", 3),
            Err(Error::PointOutOfRange { point: 0, .. })
        ));
        assert!(matches!(parse_cycles("(1 2", 3), Err(Error::Malformed { .. })));
        assert!(matches!(parse_cycles("1 2)", 3), Err(Error::Malformed { .. })));
        assert!(matches!(parse_cycles("(1 x)", 3), Err(Error::Malformed { .. })));
        assert!(matches!(
            parse_cycles("(1 2 1)", 3),
            Err(Error::RepeatedPoint { point: 1 })
        ));
        assert!(matches!(parse_cycles("()", 0), Err(Error::UnsupportedDegree(0))));
    }

    #[test]
    fn repeated_point_across_cycles_is_allowed() {
        assert_eq!(p("(1 2)(1 2)", 2), Permutation::identity(2));
    }

    #[test]
    fn inverse_and_pow() {
        let g = p("(1 2 3 4)(5 6)", 6);
        assert!((&g * &g.inverse()).is_identity());
        assert_eq!(g.order(), 4);
        assert!(g.pow(4).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(5), g);
    }

    #[test]
    fn conjugation_relabels() {
        let g = p("(1 2 3)", 4);
        let h = p("(1 4)", 4);
        let c = g.conjugate_by(&h);
        assert_eq!(c, &(&h.inverse() * &g) * &h);
        assert_eq!(c, p("(4 2 3)", 4));
    }

    #[test]
    fn display_round_trip() {
        let g = p("(3 5)(1 4 2)", 6);
        assert_eq!(g.to_cycle_string(), "(1 4 2)(3 5)");
        assert_eq!(p(&g.to_cycle_string(), 6), g);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p("(1 2)(3 4 5)", 5).cycle_type(), vec![3, 2]);
        assert_eq!(Permutation::identity(4).cycle_type(), vec![1, 1, 1, 1]);
        assert_eq!(p("(1 2 3 4)", 6).cycle_type(), vec![4, 1, 1]);
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
            fn unparse_reparse_is_identity(g in perm(9)) {
                let s = g.to_cycle_string();
                let back = parse_cycles(&s, 9).unwrap();
                prop_assert_eq!(back.to_cycle_string(), s);
                prop_assert_eq!(back, g);
            }

            #[test]
            fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }
        }
    }
}
