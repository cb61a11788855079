use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: usize = 48;

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m).iter().fold(m, |acc, &(p, _)| acc / p * (p - 1))
}

fn mobius(m: u64) -> i32 {
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic divisor.
fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                rem[i + j] -= c * y;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact polynomial division");
    q
}

/// `Φ_m`, coefficients from the constant term up.
pub fn cyclotomic_poly(m: u64) -> Result<Vec<i64>> {
    cyclotomic_poly_with_bound(m, DEFAULT_DEGREE_BOUND)
}

pub fn cyclotomic_poly_with_bound(m: u64, bound: usize) -> Result<Vec<i64>> {
    if m == 0 {
        return Err(Error::Invalid("conductor must be positive".into()));
    }
    let degree = euler_phi(m) as usize;
    if degree > bound {
        return Err(Error::CyclotomicDegree { degree, bound });
    }
    // Φ_m = ∏_{d | m} (x^d − 1)^{μ(m/d)}
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let binomial = |d: u64| {
        let mut p = vec![0i128; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        p
    };
    let mut num = vec![1i128];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            num = poly_mul(&num, &binomial(d));
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            num = poly_div_exact(&num, &binomial(d));
        }
    }
    debug_assert_eq!(num.len(), degree + 1);
    Ok(num.into_iter().map(|c| c as i64).collect())
}

/// An element of `Z[ζ_m]` in the power basis `1, ζ, …, ζ^{φ(m)−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicInt {
    pub conductor: u64,
    pub coefficients: Vec<i64>,
}

impl CyclotomicInt {
    pub fn new(conductor: u64, coefficients: Vec<i64>) -> Result<Self> {
        let degree = euler_phi(conductor.max(1)) as usize;
        if conductor == 0 || coefficients.len() != degree {
            return Err(Error::Invalid(format!("Z[ζ_{conductor}] needs {degree} coefficients")));
        }
        Ok(CyclotomicInt {
            conductor,
            coefficients,
        })
    }

    pub fn from_integer(conductor: u64, a: i64) -> Result<Self> {
        let mut c = vec![0; euler_phi(conductor.max(1)) as usize];
        c[0] = a;
        Self::new(conductor, c)
    }

    /// Power-basis image of `ζ^k`.
    pub fn zeta_power(conductor: u64, k: u64) -> Result<Self> {
        let phi = cyclotomic_poly(conductor)?;
        let mut x = vec![0i64; k as usize + 1];
        x[k as usize] = 1;
        Ok(CyclotomicInt {
            conductor,
            coefficients: reduce(&x, &phi),
        })
    }

    pub fn mul(&self, other: &CyclotomicInt) -> Result<CyclotomicInt> {
        if self.conductor != other.conductor {
            return Err(Error::Invalid("conductors differ".into()));
        }
        let phi = cyclotomic_poly(self.conductor)?;
        let a: Vec<i128> = self.coefficients.iter().map(|&x| x as i128).collect();
        let b: Vec<i128> = other.coefficients.iter().map(|&x| x as i128).collect();
        let prod: Vec<i64> = poly_mul(&a, &b).into_iter().map(|x| x as i64).collect();
        Ok(CyclotomicInt {
            conductor: self.conductor,
            coefficients: reduce(&prod, &phi),
        })
    }

    /// Field norm `N_{Q(ζ_m)/Q}`, as `Res(Φ_m, f)`.
    pub fn norm(&self) -> Result<BigInt> {
        let phi = cyclotomic_poly(self.conductor)?;
        Ok(norm_with(&self.coefficients, &phi))
    }
}

/// Reduces a polynomial modulo the monic `phi`.
fn reduce(f: &[i64], phi: &[i64]) -> Vec<i64> {
    let d = phi.len() - 1;
    let mut r: Vec<i128> = f.iter().map(|&x| x as i128).collect();
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for (j, &p) in phi.iter().enumerate() {
                r[i - d + j] -= c * p as i128;
            }
        }
    }
    r.resize(d, 0);
    r.into_iter().map(|x| x as i64).collect()
}

/// `Res(Φ, f)` for monic `Φ`: the determinant of multiplication by `f` on `Z[x]/Φ`.
pub(crate) fn norm_with(f: &[i64], phi: &[i64]) -> BigInt {
    let d = phi.len() - 1;
    // column j holds f·x^j mod Φ
    let mut col: Vec<i64> = f.to_vec();
    col.resize(d, 0);
    let mut matrix = vec![vec![BigInt::zero(); d]; d];
    for j in 0..d {
        for (i, &c) in col.iter().enumerate() {
            matrix[i][j] = BigInt::from(c);
        }
        let mut shifted = vec![0i64; d + 1];
        shifted[1..].copy_from_slice(&col);
        col = reduce(&shifted, phi);
    }
    bareiss(matrix)
}

/// Fraction-free Gaussian elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unit_norm(x: &BigInt) -> bool {
        x.abs().is_one()
    }
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(47).unwrap().len(), 47);
        assert_eq!(
            cyclotomic_poly(101).unwrap_err(),
            Error::CyclotomicDegree { degree: 100, bound: 48 }
        );
    }

    #[test]
    fn product_over_divisors_is_xm_minus_one() {
        for m in 1..=48u64 {
            let mut prod = vec![1i128];
            for d in (1..=m).filter(|d| m % d == 0) {
                let p: Vec<i128> = cyclotomic_poly(d).unwrap().into_iter().map(i128::from).collect();
                assert_eq!(p.len() - 1, euler_phi(d) as usize);
                prod = poly_mul(&prod, &p);
            }
            let mut expected = vec![0i128; m as usize + 1];
            expected[0] = -1;
            expected[m as usize] = 1;
            assert_eq!(prod, expected, "m = {m}");
        }
    }

    #[test]
    fn example_norms() {
        assert_eq!(
            CyclotomicInt::new(4, vec![2, 1]).unwrap().norm().unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            CyclotomicInt::new(6, vec![3, 1]).unwrap().norm().unwrap(),
            BigInt::from(13)
        );
        for m in [1, 2, 3, 5, 8, 12] {
            let a = CyclotomicInt::from_integer(m, 3).unwrap();
            assert_eq!(a.norm().unwrap(), BigInt::from(3).pow(euler_phi(m) as u32));
        }
    }

    /// Product of `f` over the primitive `m`-th roots of unity, in floating point.
    fn embedding_norm(m: u64, f: &[i64]) -> f64 {
        let mut re_prod = 1.0f64;
        let mut im_prod = 0.0f64;
        for k in (1..=m).filter(|&k| num_integer::gcd(k, m) == 1) {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &c) in f.iter().enumerate() {
                let t = 2.0 * std::f64::consts::PI * (k * j as u64) as f64 / m as f64;
                re += c as f64 * t.cos();
                im += c as f64 * t.sin();
            }
            (re_prod, im_prod) = (re_prod * re - im_prod * im, re_prod * im + im_prod * re);
        }
        re_prod
    }

    #[test]
    fn norm_matches_embeddings() {
        for m in [3u64, 5, 7, 8, 9, 12, 15] {
            let d = euler_phi(m) as usize;
            let f: Vec<i64> = (0..d as i64).map(|i| (i * 7 + 3) % 5 - 2).collect();
            let exact = CyclotomicInt::new(m, f.clone()).unwrap().norm().unwrap();
            let approx = embedding_norm(m, &f);
            let exact: f64 = exact.to_string().parse().unwrap();
            assert!((exact - approx).abs() < 1e-6 * exact.abs().max(1.0), "m = {m}");
        }
    }

    #[test]
    fn units_and_reduction() {
        for m in 1..=30u64 {
            let z = CyclotomicInt::zeta_power(m, 1).unwrap();
            assert!(is_unit_norm(&z.norm().unwrap()), "m = {m}");
            let one = CyclotomicInt::from_integer(m, 1).unwrap();
            assert_eq!(one.norm().unwrap(), BigInt::one());
            assert_eq!(CyclotomicInt::zeta_power(m, m).unwrap(), one);
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(m in 1u64..=12, seed in proptest::collection::vec(-3i64..=3, 12), seed2 in proptest::collection::vec(-3i64..=3, 12)) {
            let d = euler_phi(m) as usize;
            let x = CyclotomicInt::new(m, seed[..d].to_vec()).unwrap();
            let y = CyclotomicInt::new(m, seed2[..d].to_vec()).unwrap();
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(xy.norm().unwrap(), x.norm().unwrap() * y.norm().unwrap());
        }
    }
}
