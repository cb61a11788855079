use serde::Serialize;

use super::cayley::CayleyGroup;

/// Normalized 2-cochain `G × G → Z/N`, zero whenever an argument is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cochain2 {
    modulus: i64,
    order: usize,
    values: Vec<i64>,
}

impl Cochain2 {
    pub fn zero(order: usize, modulus: i64) -> Self {
        let k = order.saturating_sub(1);
        Cochain2 {
            modulus,
            order,
            values: vec![0; k * k],
        }
    }

    pub fn from_fn(order: usize, modulus: i64, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut c = Self::zero(order, modulus);
        for g in 1..order {
            for h in 1..order {
                c.set(g, h, f(g, h));
            }
        }
        c
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Values at non-identity pairs, row-major.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize) -> i64 {
        if g == 0 || h == 0 {
            0
        } else {
            self.values[(g - 1) * (self.order - 1) + (h - 1)]
        }
    }

    pub fn set(&mut self, g: usize, h: usize, value: i64) {
        assert!(g != 0 && h != 0, "normalized cochains vanish on the identity");
        self.values[(g - 1) * (self.order - 1) + (h - 1)] = value.rem_euclid(self.modulus);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add_scaled(&mut self, other: &Cochain2, c: i64) {
        assert_eq!((self.order, self.modulus), (other.order, other.modulus));
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            *x = (*x + c.rem_euclid(self.modulus) * y) % self.modulus;
        }
    }

    /// Exhaustive check of `c(g,h) + c(gh,k) = c(h,k) + c(g,hk)`.
    pub fn is_cocycle(&self, group: &CayleyGroup) -> bool {
        d2(group, self).iter().all(|&v| v == 0)
    }
}

/// `d¹f(g,h) = f(g) + f(h) − f(gh)`. `f` is indexed by element and must vanish at the identity.
pub fn d1(group: &CayleyGroup, f: &[i64], modulus: i64) -> Cochain2 {
    assert_eq!(f.len(), group.order());
    Cochain2::from_fn(group.order(), modulus, |g, h| f[g] + f[h] - f[group.mul(g, h)])
}

/// `d²c(g,h,k) = c(h,k) − c(gh,k) + c(g,hk) − c(g,h)`, indexed `(g·N + h)·N + k`.
pub fn d2(group: &CayleyGroup, c: &Cochain2) -> Vec<i64> {
    let n = group.order();
    let m = c.modulus();
    let mut out = vec![0; n * n * n];
    for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            for k in 0..n {
                let v = c.get(h, k) - c.get(gh, k) + c.get(g, group.mul(h, k)) - c.get(g, h);
                out[(g * n + h) * n + k] = v.rem_euclid(m);
            }
        }
    }
    out
}

/// True iff `phi` is a homomorphism `G → Z/N`.
pub fn is_homomorphism(group: &CayleyGroup, phi: &[i64], modulus: i64) -> bool {
    let n = group.order();
    (0..n).all(|g| (0..n).all(|h| (phi[g] + phi[h] - phi[group.mul(g, h)]).rem_euclid(modulus) == 0))
}

/// Bockstein of a homomorphism `φ : G → Z/N`, computed with the lift `φ̂ ∈ [0, N)`:
/// `δφ(g,h) = (φ̂(g) + φ̂(h) − φ̂(gh)) / N`, a cochain with values in `{0, 1}`.
pub fn bockstein(group: &CayleyGroup, phi: &[i64], modulus: i64) -> Cochain2 {
    let lift: Vec<i64> = phi.iter().map(|&x| x.rem_euclid(modulus)).collect();
    Cochain2::from_fn(group.order(), modulus, |g, h| {
        let s = lift[g] + lift[h] - lift[group.mul(g, h)];
        debug_assert_eq!(s.rem_euclid(modulus), 0, "not a homomorphism");
        s / modulus
    })
}

/// Restriction of `c` to the subgroup with element map `map` (subgroup index → group index).
pub fn restrict(c: &Cochain2, map: &[usize]) -> Cochain2 {
    Cochain2::from_fn(map.len(), c.modulus(), |g, h| c.get(map[g], map[h]))
}
