//! Coefficient-slice arithmetic for a tower `F_p = L_0 ⊂ L_1 ⊂ … ⊂ L_t`.
//!
//! An element of `L_i` is a slice of `dims[i]` residues: `d_i` blocks of
//! `dims[i-1]` entries, block `j` holding the coefficient of `x_i^j`. Every
//! routine here takes the level explicitly so the same code serves partially
//! built towers during irreducibility checks.

use super::primes::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Level {
    pub degree: usize,
    /// Monic minimal polynomial, `degree + 1` blocks of the level below.
    pub min_poly: Vec<u64>,
    /// `-m_i` for the low coefficients, so `x^d = Σ neg_low[i] x^i`.
    neg_low: Vec<u64>,
    /// Set when every low coefficient lies in the prime field.
    neg_low_scalar: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Tower {
    pub p: u64,
    pub levels: Vec<Level>,
    /// `dims[i]` is the degree of `L_i` over `F_p`.
    pub dims: Vec<usize>,
}

impl Tower {
    pub fn prime(p: u64) -> Self {
        Tower {
            p,
            levels: Vec::new(),
            dims: vec![1],
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len()
    }

    /// Appends a level without any irreducibility check.
    pub fn push_level(&mut self, degree: usize, min_poly: Vec<u64>) {
        let sub = *self.dims.last().unwrap();
        debug_assert_eq!(min_poly.len(), (degree + 1) * sub);
        let mut neg_low = vec![0; degree * sub];
        for (dst, &src) in neg_low.iter_mut().zip(&min_poly[..degree * sub]) {
            *dst = neg_mod(src, self.p);
        }
        let scalar = (0..degree).all(|i| neg_low[i * sub + 1..(i + 1) * sub].iter().all(|&c| c == 0));
        let neg_low_scalar = scalar.then(|| (0..degree).map(|i| neg_low[i * sub]).collect());
        self.levels.push(Level {
            degree,
            min_poly,
            neg_low,
            neg_low_scalar,
        });
        self.dims.push(sub * degree);
    }

    pub fn zero(&self, level: usize) -> Vec<u64> {
        vec![0; self.dims[level]]
    }

    pub fn one(&self, level: usize) -> Vec<u64> {
        let mut v = self.zero(level);
        v[0] = 1 % self.p;
        v
    }

    /// The generator `x_level` of `L_level` over `L_{level-1}`.
    pub fn generator(&self, level: usize) -> Vec<u64> {
        assert!(level >= 1);
        let mut v = self.zero(level);
        let sub = self.dims[level - 1];
        if self.levels[level - 1].degree == 1 {
            // degree-one level: the generator is the root of x + m_0
            v[..sub].copy_from_slice(&self.levels[level - 1].neg_low[..sub]);
        } else {
            v[sub] = 1;
        }
        v
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = add_mod(*x, y, p);
        }
    }

    pub fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = sub_mod(*x, y, p);
        }
    }

    pub fn neg_assign(&self, a: &mut [u64]) {
        let p = self.p;
        for x in a.iter_mut() {
            *x = neg_mod(*x, p);
        }
    }

    pub fn scale_assign(&self, a: &mut [u64], s: u64) {
        let p = self.p;
        for x in a.iter_mut() {
            *x = mul_mod(*x, s, p);
        }
    }

    /// `a += s * b` with `s` a prime-field scalar.
    fn add_scaled(&self, a: &mut [u64], b: &[u64], s: u64) {
        if s == 0 {
            return;
        }
        let p = self.p;
        for (x, &y) in a.iter_mut().zip(b) {
            if y != 0 {
                *x = add_mod(*x, mul_mod(y, s, p), p);
            }
        }
    }

    /// Embeds the prime-field value `s` at `level`.
    pub fn scalar(&self, level: usize, s: u64) -> Vec<u64> {
        let mut v = self.zero(level);
        v[0] = s % self.p;
        v
    }

    /// Returns the prime-field value if `a` lies in `F_p`.
    pub fn as_scalar(a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    pub fn mul(&self, level: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        if level == 0 {
            return vec![mul_mod(a[0], b[0], self.p)];
        }
        if let Some(s) = Self::as_scalar(a) {
            let mut out = b.to_vec();
            self.scale_assign(&mut out, s);
            return out;
        }
        if let Some(s) = Self::as_scalar(b) {
            let mut out = a.to_vec();
            self.scale_assign(&mut out, s);
            return out;
        }
        if level == 1 {
            return self.mul_level_one(a, b);
        }
        let lvl = &self.levels[level - 1];
        let d = lvl.degree;
        let sub = self.dims[level - 1];
        let blocks_a: Vec<usize> = (0..d)
            .filter(|&i| !Self::is_zero(&a[i * sub..(i + 1) * sub]))
            .collect();
        let blocks_b: Vec<usize> = (0..d)
            .filter(|&i| !Self::is_zero(&b[i * sub..(i + 1) * sub]))
            .collect();
        let mut buf = vec![0u64; (2 * d - 1) * sub];
        for &i in &blocks_a {
            for &j in &blocks_b {
                let prod = self.mul(level - 1, &a[i * sub..(i + 1) * sub], &b[j * sub..(j + 1) * sub]);
                self.add_assign(&mut buf[(i + j) * sub..(i + j + 1) * sub], &prod);
            }
        }
        self.reduce(level, &mut buf);
        buf.truncate(d * sub);
        buf
    }

    fn mul_level_one(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let d = a.len();
        let mut buf = vec![0u64; 2 * d - 1];
        if p < (1 << 32) {
            let mut acc = vec![0u128; 2 * d - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += x as u128 * y as u128;
                }
            }
            for (dst, v) in buf.iter_mut().zip(acc) {
                *dst = (v % p as u128) as u64;
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    buf[i + j] = add_mod(buf[i + j], mul_mod(x, y, p), p);
                }
            }
        }
        self.reduce(1, &mut buf);
        buf.truncate(d);
        buf
    }

    /// Reduces an unreduced product (`2d - 1` blocks) modulo the level's
    /// minimal polynomial, in place.
    fn reduce(&self, level: usize, buf: &mut [u64]) {
        let lvl = &self.levels[level - 1];
        let d = lvl.degree;
        let sub = self.dims[level - 1];
        for k in (d..2 * d - 1).rev() {
            let c: Vec<u64> = buf[k * sub..(k + 1) * sub].to_vec();
            if Self::is_zero(&c) {
                continue;
            }
            buf[k * sub..(k + 1) * sub].iter_mut().for_each(|x| *x = 0);
            let base = (k - d) * sub;
            match &lvl.neg_low_scalar {
                Some(scalars) => {
                    for (i, &s) in scalars.iter().enumerate() {
                        self.add_scaled(&mut buf[base + i * sub..base + (i + 1) * sub], &c, s);
                    }
                }
                None => {
                    for i in 0..d {
                        let m = &lvl.neg_low[i * sub..(i + 1) * sub];
                        if Self::is_zero(m) {
                            continue;
                        }
                        let t = self.mul(level - 1, &c, m);
                        self.add_assign(&mut buf[base + i * sub..base + (i + 1) * sub], &t);
                    }
                }
            }
        }
    }

    /// Multiplicative inverse by extended Euclid over the level below.
    pub fn inv(&self, level: usize, a: &[u64]) -> Option<Vec<u64>> {
        if level == 0 {
            return inv_mod(a[0], self.p).map(|v| vec![v]);
        }
        if Self::is_zero(a) {
            return None;
        }
        if let Some(s) = Self::as_scalar(a) {
            return inv_mod(s, self.p).map(|v| self.scalar(level, v));
        }
        let below = level - 1;
        let ring = PolyRing::new(self, below);
        let lvl = &self.levels[level - 1];
        let f = ring.from_flat(&lvl.min_poly);
        let g = ring.from_flat(a);
        let (gcd, s, _) = ring.ext_gcd(&g, &f);
        // f is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(gcd.len(), 1);
        let c_inv = self.inv(below, &gcd[0])?;
        let s = ring.scale(&s, &c_inv);
        Some(ring.to_flat(&s, lvl.degree))
    }

    pub fn pow(&self, level: usize, a: &[u64], mut exp: u128) -> Vec<u64> {
        let mut acc = self.one(level);
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(level, &acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(level, &base, &base);
            }
        }
        acc
    }

    /// Absolute trace `Tr_{L_level / F_p}`, computed level by level from the
    /// power sums of each minimal polynomial's roots.
    pub fn trace(&self, level: usize, a: &[u64]) -> u64 {
        if level == 0 {
            return a[0];
        }
        let below = level - 1;
        let sub = self.dims[below];
        let sums = self.power_sums(level);
        let mut rel = self.zero(below);
        for (i, s) in sums.iter().enumerate() {
            let block = &a[i * sub..(i + 1) * sub];
            if Self::is_zero(block) || Self::is_zero(s) {
                continue;
            }
            let t = self.mul(below, block, s);
            self.add_assign(&mut rel, &t);
        }
        self.trace(below, &rel)
    }

    /// Power sums `s_0 … s_{d-1}` of the roots of level `level`'s minimal
    /// polynomial (Newton's identities), as elements of the level below.
    fn power_sums(&self, level: usize) -> Vec<Vec<u64>> {
        let below = level - 1;
        let lvl = &self.levels[level - 1];
        let d = lvl.degree;
        let sub = self.dims[below];
        // c[j] is the coefficient of x^j
        let c = |j: usize| &lvl.min_poly[j * sub..(j + 1) * sub];
        let mut sums: Vec<Vec<u64>> = Vec::with_capacity(d);
        sums.push(self.scalar(below, d as u64 % self.p));
        for m in 1..d {
            // s_m = -(m c_{d-m} + Σ_{j=1}^{m-1} c_{d-j} s_{m-j})
            let mut acc = c(d - m).to_vec();
            self.scale_assign(&mut acc, m as u64 % self.p);
            for j in 1..m {
                let t = self.mul(below, c(d - j), &sums[m - j]);
                self.add_assign(&mut acc, &t);
            }
            self.neg_assign(&mut acc);
            sums.push(acc);
        }
        sums
    }

    /// Absolute norm `N_{L_level / F_p}`.
    pub fn norm(&self, level: usize, a: &[u64]) -> u64 {
        if level == 0 {
            return a[0];
        }
        let below = level - 1;
        let rel = self.relative_norm(level, a);
        self.norm(below, &rel)
    }

    /// `N_{L_level / L_{level-1}}(a)`.
    fn relative_norm(&self, level: usize, a: &[u64]) -> Vec<u64> {
        let below = level - 1;
        let lvl = &self.levels[level - 1];
        let d = lvl.degree;
        let sub = self.dims[below];
        let nonzero: Vec<usize> = (0..d)
            .filter(|&i| !Self::is_zero(&a[i * sub..(i + 1) * sub]))
            .collect();
        match nonzero.as_slice() {
            [] => self.zero(below),
            [e] => {
                // a = λ x^e: N(a) = λ^d N(x)^e, N(x) = (-1)^d f(0)
                let lambda = &a[e * sub..(e + 1) * sub];
                let mut nx = lvl.min_poly[..sub].to_vec();
                if d % 2 == 1 {
                    self.neg_assign(&mut nx);
                }
                let lhs = self.pow(below, lambda, d as u128);
                let rhs = self.pow(below, &nx, *e as u128);
                self.mul(below, &lhs, &rhs)
            }
            _ => {
                // determinant of multiplication-by-a over the level below
                let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d);
                let mut xj = self.one(level);
                let x = self.generator(level);
                for _ in 0..d {
                    cols.push(self.mul(level, a, &xj));
                    xj = self.mul(level, &xj, &x);
                }
                let mut m: Vec<Vec<Vec<u64>>> = (0..d)
                    .map(|r| (0..d).map(|c| cols[c][r * sub..(r + 1) * sub].to_vec()).collect())
                    .collect();
                self.det_in_place(below, &mut m)
            }
        }
    }

    /// Gaussian elimination determinant over level `level`; used for norms.
    fn det_in_place(&self, level: usize, m: &mut [Vec<Vec<u64>>]) -> Vec<u64> {
        let n = m.len();
        let mut det = self.one(level);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !Self::is_zero(&m[r][col])) else {
                return self.zero(level);
            };
            if piv != col {
                m.swap(piv, col);
                self.neg_assign(&mut det);
            }
            det = self.mul(level, &det, &m[col][col]);
            let inv = self.inv(level, &m[col][col]).expect("nonzero pivot");
            for r in col + 1..n {
                if Self::is_zero(&m[r][col]) {
                    continue;
                }
                let factor = self.mul(level, &m[r][col], &inv);
                for c in col..n {
                    let t = self.mul(level, &factor, &m[col][c]);
                    self.sub_assign(&mut m[r][c], &t);
                }
            }
        }
        det
    }
}

/// Univariate polynomials over one level of a tower; coefficient `i` is a
/// level element. Polynomials are kept trimmed (no zero leading block).
pub(crate) struct PolyRing<'a> {
    pub tower: &'a Tower,
    pub level: usize,
}

pub(crate) type UPoly = Vec<Vec<u64>>;

impl<'a> PolyRing<'a> {
    pub fn new(tower: &'a Tower, level: usize) -> Self {
        PolyRing { tower, level }
    }

    fn sub(&self) -> usize {
        self.tower.dims[self.level]
    }

    pub fn trim(mut f: UPoly) -> UPoly {
        while f.last().is_some_and(|c| Tower::is_zero(c)) {
            f.pop();
        }
        f
    }

    pub fn from_flat(&self, flat: &[u64]) -> UPoly {
        let sub = self.sub();
        Self::trim(flat.chunks(sub).map(|c| c.to_vec()).collect())
    }

    pub fn to_flat(&self, f: &UPoly, len: usize) -> Vec<u64> {
        let sub = self.sub();
        let mut out = vec![0; len * sub];
        for (i, c) in f.iter().enumerate() {
            out[i * sub..(i + 1) * sub].copy_from_slice(c);
        }
        out
    }

    pub fn x(&self) -> UPoly {
        vec![self.tower.zero(self.level), self.tower.one(self.level)]
    }

    pub fn sub_poly(&self, f: &UPoly, g: &UPoly) -> UPoly {
        let n = f.len().max(g.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = f.get(i).cloned().unwrap_or_else(|| self.tower.zero(self.level));
            if let Some(b) = g.get(i) {
                self.tower.sub_assign(&mut c, b);
            }
            out.push(c);
        }
        Self::trim(out)
    }

    pub fn scale(&self, f: &UPoly, s: &[u64]) -> UPoly {
        Self::trim(f.iter().map(|c| self.tower.mul(self.level, c, s)).collect())
    }

    pub fn mul(&self, f: &UPoly, g: &UPoly) -> UPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.tower.zero(self.level); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if Tower::is_zero(a) {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                if Tower::is_zero(b) {
                    continue;
                }
                let t = self.tower.mul(self.level, a, b);
                self.tower.add_assign(&mut out[i + j], &t);
            }
        }
        Self::trim(out)
    }

    /// Quotient and remainder; `g` must be nonzero.
    pub fn div_rem(&self, f: &UPoly, g: &UPoly) -> (UPoly, UPoly) {
        let lc_inv = self
            .tower
            .inv(self.level, g.last().expect("nonzero divisor"))
            .expect("nonzero leading coefficient");
        let mut rem = f.clone();
        if rem.len() < g.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![self.tower.zero(self.level); rem.len() - g.len() + 1];
        while rem.len() >= g.len() {
            let shift = rem.len() - g.len();
            let coef = self.tower.mul(self.level, rem.last().unwrap(), &lc_inv);
            for (i, b) in g.iter().enumerate() {
                if Tower::is_zero(b) {
                    continue;
                }
                let t = self.tower.mul(self.level, &coef, b);
                self.tower.sub_assign(&mut rem[shift + i], &t);
            }
            quot[shift] = coef;
            rem = Self::trim(rem);
        }
        (Self::trim(quot), rem)
    }

    pub fn rem(&self, f: &UPoly, g: &UPoly) -> UPoly {
        self.div_rem(f, g).1
    }

    pub fn mul_mod(&self, f: &UPoly, g: &UPoly, m: &UPoly) -> UPoly {
        self.rem(&self.mul(f, g), m)
    }

    /// `(g, s, t)` with `s f + t h = g`, `g` not normalized.
    pub fn ext_gcd(&self, f: &UPoly, h: &UPoly) -> (UPoly, UPoly, UPoly) {
        let one = vec![self.tower.one(self.level)];
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (one.clone(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), one);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    pub fn gcd_degree(&self, f: &UPoly, h: &UPoly) -> usize {
        let (mut a, mut b) = (f.clone(), h.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        a.len().saturating_sub(1)
    }

    pub fn pow_mod(&self, f: &UPoly, mut exp: u128, m: &UPoly) -> UPoly {
        let mut acc = vec![self.tower.one(self.level)];
        let mut base = self.rem(f, m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// `g^Q mod m` where `Q` is the size of the coefficient field, as
    /// `dims[level]` successive `p`-th powers.
    pub fn pow_field_size(&self, g: &UPoly, m: &UPoly) -> UPoly {
        let mut out = g.clone();
        for _ in 0..self.tower.dims[self.level] {
            out = self.pow_mod(&out, self.tower.p as u128, m);
        }
        out
    }
}
