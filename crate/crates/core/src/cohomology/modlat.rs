//! Submodules of `(Z/N)^w`, i.e. integer lattices containing `N·Z^w`.
//!
//! Bases are kept in Howell form: echelon rows whose pivots divide `N`, closed under
//! multiplication by `N / pivot`. That closure makes prefix-zero rows span the prefix-zero
//! part of the module, which is what kernels, intersections and quotients below rely on.
//! All entries stay in `[0, N)`, so machine integers cannot overflow for `N < 2^31`.

pub(crate) fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    xgcd(a, b).0
}

#[inline]
fn md(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

/// `dst ← dst + c·src (mod n)`.
fn axpy(dst: &mut [i64], src: &[i64], c: i64, n: i64) {
    let c = md(c, n);
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = (*d + c * s) % n;
        }
    }
}

fn scaled(v: &[i64], c: i64, n: i64) -> Vec<i64> {
    let c = md(c, n);
    v.iter().map(|&x| x * c % n).collect()
}

fn combine(a: &[i64], ca: i64, b: &[i64], cb: i64, n: i64) -> Vec<i64> {
    let (ca, cb) = (md(ca, n), md(cb, n));
    a.iter().zip(b).map(|(&x, &y)| (x * ca + y * cb) % n).collect()
}

#[derive(Clone, Debug)]
pub struct HowellForm {
    modulus: i64,
    width: usize,
    pivots: Vec<Option<Vec<i64>>>,
}

impl HowellForm {
    pub fn new(width: usize, modulus: i64) -> Self {
        assert!((1..(1 << 31)).contains(&modulus), "modulus out of range");
        HowellForm {
            modulus,
            width,
            pivots: vec![None; width],
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, v: &[i64]) {
        assert_eq!(v.len(), self.width);
        let n = self.modulus;
        if n == 1 {
            return;
        }
        let mut stack = vec![v.iter().map(|&x| md(x, n)).collect::<Vec<_>>()];
        while let Some(mut v) = stack.pop() {
            let mut j = 0;
            while j < self.width {
                let b = v[j];
                if b == 0 {
                    j += 1;
                    continue;
                }
                match self.pivots[j].take() {
                    None => {
                        let (g, _, t) = xgcd(n, b);
                        let pivot = scaled(&v, t, n);
                        let rest = scaled(&v, n / g, n);
                        debug_assert_eq!(pivot[j], g);
                        self.pivots[j] = Some(pivot);
                        if rest.iter().any(|&x| x != 0) {
                            stack.push(rest);
                        }
                        break;
                    }
                    Some(p) => {
                        let a = p[j];
                        if b % a == 0 {
                            axpy(&mut v, &p, -(b / a), n);
                            self.pivots[j] = Some(p);
                        } else {
                            let (g, s, t) = xgcd(a, b);
                            let pivot = combine(&p, s, &v, t, n);
                            v = combine(&p, b / g, &v, -(a / g), n);
                            debug_assert_eq!(pivot[j], g);
                            let closure = scaled(&pivot, n / g, n);
                            if closure.iter().any(|&x| x != 0) {
                                stack.push(closure);
                            }
                            self.pivots[j] = Some(pivot);
                        }
                        j += 1;
                    }
                }
            }
        }
    }

    /// Reduces columns `< upto` of `v` against the basis; true iff they all vanish.
    pub fn reduce_prefix(&self, v: &mut [i64], upto: usize) -> bool {
        let n = self.modulus;
        for x in v.iter_mut() {
            *x = md(*x, n);
        }
        for j in 0..upto {
            let b = v[j];
            if b == 0 {
                continue;
            }
            match &self.pivots[j] {
                Some(p) if b % p[j] == 0 => axpy(v, p, -(b / p[j]), n),
                _ => return false,
            }
        }
        true
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce_prefix(&mut w, self.width)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Rows with pivot at or after `start`, truncated to columns `start..`.
    pub fn rows_from(&self, start: usize) -> Vec<Vec<i64>> {
        self.pivots[start..]
            .iter()
            .flatten()
            .map(|r| r[start..].to_vec())
            .collect()
    }
}

/// Generators of `{x ∈ (Z/N)^width : r·x ≡ 0 for every row r}`.
pub fn kernel(rows: &[Vec<i64>], width: usize, modulus: i64) -> Vec<Vec<i64>> {
    let mut compressed = HowellForm::new(width, modulus);
    for r in rows {
        compressed.insert(r);
    }
    let h = compressed.rows();
    let k = h.len();
    let mut aug = HowellForm::new(k + width, modulus);
    for j in 0..width {
        let mut v = vec![0; k + width];
        for (i, row) in h.iter().enumerate() {
            v[i] = row[j];
        }
        v[k + j] = 1;
        aug.insert(&v);
    }
    aug.rows_from(k)
}

/// Coefficients `a` with `Σ a_i·gens[i] ≡ target`, if any.
pub fn solve(gens: &[Vec<i64>], target: &[i64], modulus: i64) -> Option<Vec<i64>> {
    let width = target.len();
    let t = gens.len();
    let mut aug = HowellForm::new(width + t, modulus);
    for (i, g) in gens.iter().enumerate() {
        let mut v = g.clone();
        v.resize(width + t, 0);
        v[width + i] = 1;
        aug.insert(&v);
    }
    let mut v = target.to_vec();
    v.resize(width + t, 0);
    if !aug.reduce_prefix(&mut v, width) {
        return None;
    }
    Some(v[width..].iter().map(|&x| md(-x, modulus)).collect())
}

/// Generators `y` of `{y ∈ Z^t : Σ y_i·big[i] ∈ span(small)}`, reduced mod `N`.
pub fn relations(big: &[Vec<i64>], small: &[Vec<i64>], width: usize, modulus: i64) -> Vec<Vec<i64>> {
    let t = big.len();
    let mut aug = HowellForm::new(width + t, modulus);
    for (i, g) in big.iter().enumerate() {
        let mut v = g.clone();
        v.resize(width + t, 0);
        v[width + i] = 1;
        aug.insert(&v);
    }
    for s in small {
        let mut v = s.clone();
        v.resize(width + t, 0);
        aug.insert(&v);
    }
    aug.rows_from(width)
}

/// Smallest `w` coprime to `n` with `w·a ≡ gcd(a, n) (mod n)`.
fn unit_normalizer(a: i64, n: i64) -> i64 {
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    if n1 == 1 {
        return 1;
    }
    let (_, inv, _) = xgcd(md(a1, n1), n1);
    let w0 = md(inv, n1);
    let mut w = w0;
    while gcd(w, n) != 1 {
        w += n1;
    }
    w
}

/// Diagonalizes `rows` (each of length `t`) over `Z/N` by unimodular row and column
/// operations. Returns the cyclic orders `gcd(d_i, N)` (a zero diagonal entry gives `N`)
/// and the matrix `V` whose rows generate the matching summands of `(Z/N)^t / rowspace`.
pub fn diagonalize(rows: &[Vec<i64>], t: usize, modulus: i64) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = modulus;
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| md(x, n)).collect()).collect();
    let nrows = a.len();
    let mut v: Vec<Vec<i64>> = (0..t).map(|i| (0..t).map(|j| i64::from(i == j)).collect()).collect();
    let mut diag = vec![0i64; t];

    for k in 0..nrows.min(t) {
        loop {
            // pivot with the smallest gcd against N
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &x) in row.iter().enumerate().skip(k) {
                    if x != 0 {
                        let g = gcd(x, n);
                        if best.is_none_or(|(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(&a, diag, v, n, k);
            };
            a.swap(k, pi);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                v.swap(k, pj);
            }
            let w = unit_normalizer(a[k][k], n);
            for x in a[k].iter_mut() {
                *x = *x * w % n;
            }
            let g = a[k][k];
            let mut clean = true;
            for i in k + 1..nrows {
                let b = a[i][k];
                if b == 0 {
                    continue;
                }
                if b % g == 0 {
                    let pivot_row = a[k].clone();
                    axpy(&mut a[i], &pivot_row, -(b / g), n);
                } else {
                    let (h, s, tt) = xgcd(g, b);
                    let new_k = combine(&a[k], s, &a[i], tt, n);
                    let new_i = combine(&a[k], -(b / h), &a[i], g / h, n);
                    a[k] = new_k;
                    a[i] = new_i;
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            for j in k + 1..t {
                let b = a[k][j];
                if b == 0 {
                    continue;
                }
                if b % g == 0 {
                    let c = b / g;
                    for row in a.iter_mut() {
                        row[j] = md(row[j] - c * row[k], n);
                    }
                    let vj = v[j].clone();
                    axpy(&mut v[k], &vj, c, n);
                } else {
                    let (h, s, tt) = xgcd(g, b);
                    for row in a.iter_mut() {
                        let (x, y) = (row[k], row[j]);
                        row[k] = md(s * x + tt * y, n);
                        row[j] = md(-(b / h) * x + (g / h) * y, n);
                    }
                    let new_vk = combine(&v[k], g / h, &v[j], b / h, n);
                    let new_vj = combine(&v[k], -tt, &v[j], s, n);
                    v[k] = new_vk;
                    v[j] = new_vj;
                    clean = false;
                    break;
                }
            }
            if clean {
                diag[k] = g;
                break;
            }
        }
    }
    let done = nrows.min(t);
    finish(&a, diag, v, n, done)
}

fn finish(_a: &[Vec<i64>], mut diag: Vec<i64>, v: Vec<Vec<i64>>, n: i64, from: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    for d in diag.iter_mut().skip(from) {
        *d = 0;
    }
    let orders = diag.iter().map(|&d| if d == 0 { n } else { gcd(d, n) }).collect();
    (orders, v)
}

/// A cyclic summand of a quotient module, as an element of the ambient `(Z/N)^w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub order: i64,
    pub element: Vec<i64>,
}

/// Decomposes `span(big) / span(small)` (with `small ⊆ span(big)`) into cyclic summands in
/// invariant-factor form: orders ascending, each dividing the next.
pub fn quotient(big: &[Vec<i64>], small: &[Vec<i64>], width: usize, modulus: i64) -> Vec<Summand> {
    let t = big.len();
    if t == 0 {
        return Vec::new();
    }
    let rel = relations(big, small, width, modulus);
    let (orders, v) = diagonalize(&rel, t, modulus);
    let mut raw = Vec::new();
    for (i, &d) in orders.iter().enumerate() {
        if d == 1 {
            continue;
        }
        let mut element = vec![0; width];
        for (j, g) in big.iter().enumerate() {
            axpy(&mut element, g, v[i][j], modulus);
        }
        raw.push(Summand { order: d, element });
    }
    invariant_form(raw, modulus)
}

fn prime_powers(mut d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            let mut q = 1;
            while d % p == 0 {
                d /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if d > 1 {
        out.push((d, d));
    }
    out
}

/// Splits cyclic summands into primary parts and regroups them as invariant factors.
pub fn invariant_form(summands: Vec<Summand>, modulus: i64) -> Vec<Summand> {
    use std::collections::BTreeMap;
    let mut primary: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
    for s in summands {
        for (p, q) in prime_powers(s.order) {
            let element = scaled(&s.element, s.order / q, modulus);
            primary.entry(p).or_default().push(Summand { order: q, element });
        }
    }
    for parts in primary.values_mut() {
        parts.sort_by_key(|p| std::cmp::Reverse(p.order));
    }
    let count = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<Summand> = (0..count)
        .map(|k| {
            let mut order = 1;
            let mut element: Option<Vec<i64>> = None;
            for parts in primary.values() {
                if let Some(s) = parts.get(k) {
                    order *= s.order;
                    element = Some(match element {
                        None => s.element.clone(),
                        Some(e) => combine(&e, 1, &s.element, 1, modulus),
                    });
                }
            }
            Summand {
                order,
                element: element.unwrap(),
            }
        })
        .collect();
    out.reverse();
    out
}
