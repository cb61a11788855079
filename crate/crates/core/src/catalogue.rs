//! Fixed generating sets for the named groups used by the CLI and the test suites.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{parse_cycles, Permutation, MAX_DEGREE};

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        Err(Error::UnsupportedDegree(n))
    } else {
        Ok(())
    }
}

fn full_cycle(n: usize) -> Permutation {
    Permutation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap()
}

/// `S_n` on `n` points, generated by `(1 2 … n)` and `(1 2)`.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    if n == 1 {
        return PermGroup::from_generators(&[Permutation::identity(1)]);
    }
    PermGroup::from_generators(&[full_cycle(n), Permutation::transposition(n, 0, 1)?])
}

/// `A_n` on `n` points, generated by the 3-cycles `(1 2 i)`.
pub fn alternating(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    if n < 3 {
        return PermGroup::from_generators(&[Permutation::identity(n)]);
    }
    let gens: Vec<Permutation> = (2..n).map(|i| Permutation::cycle(n, &[0, 1, i]).unwrap()).collect();
    PermGroup::from_generators(&gens)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    if n < 3 {
        return Err(Error::Invalid(format!("dihedral group D{n} needs n >= 3")));
    }
    let reflection: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    PermGroup::from_generators(&[full_cycle(n), Permutation::from_images(&reflection)?])
}

/// `Q_8` as `⟨(1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)⟩`.
pub fn quaternion() -> Result<PermGroup> {
    PermGroup::from_generators(&[
        parse_cycles("(1 2 3 4)(5 6 7 8)", 8)?,
        parse_cycles("(1 5 3 7)(2 8 4 6)", 8)?,
    ])
}

/// `Z/n` in its regular representation.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    abelian(&[n])
}

/// `Z/m_1 × … × Z/m_k`, each factor acting regularly on its own block of points.
pub fn abelian(factors: &[usize]) -> Result<PermGroup> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::Invalid(format!("bad cyclic factors {factors:?}")));
    }
    let degree: usize = factors.iter().filter(|&&m| m > 1).sum::<usize>().max(1);
    check_degree(degree)?;
    let mut gens = Vec::new();
    let mut offset = 0;
    for &m in factors.iter().filter(|&&m| m > 1) {
        let block: Vec<usize> = (offset..offset + m).collect();
        gens.push(Permutation::cycle(degree, &block)?);
        offset += m;
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    PermGroup::from_generators(&gens)
}
