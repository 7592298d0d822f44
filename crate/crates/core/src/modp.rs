//! Arithmetic in the prime field F_p for p < 2^62, with the linear algebra and
//! polynomial root finding the character-table construction needs.

/// A prime field. Residues are plain `u64` values in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 1 && p < (1 << 62));
        Fp { p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    /// Symmetric lift of a residue to `(-p/2, p/2]`.
    pub fn lift_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(f: &Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in c..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel `{y : m y = 0}` of a `rows x cols` matrix.
pub fn kernel(f: &Fp, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = m.to_vec();
    let pivots = rref(f, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut y = vec![0; cols];
            y[fc] = 1;
            for (row, &pc) in work.iter().zip(&pivots) {
                y[pc] = f.neg(row[fc]);
            }
            y
        })
        .collect()
}

/// Characteristic polynomial `det(xI - a)` via Hessenberg reduction.
/// Coefficients are listed from the constant term upward; the result is monic
/// of degree `a.len()`.
pub fn char_poly(f: &Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    // Similarity transform to upper Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = f.inv(h[k + 1][k]);
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let u = f.mul(h[i][k], inv);
            for j in 0..n {
                let t = f.mul(u, h[k + 1][j]);
                h[i][j] = f.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[k + 1] = f.add(row[k + 1], t);
            }
        }
    }
    // p_m(x) = (x - h_mm) p_{m-1}(x) - sum_{i<m} h_im * prod_{l=i+1..m} h_{l,l-1} * p_{i-1}(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut sub = 1u64;
        for i in (0..m).rev() {
            sub = f.mul(sub, h[i + 1][i]);
            if sub == 0 {
                break;
            }
            let coef = f.mul(sub, h[i][m]);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn poly_trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_degree(p: &[u64]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

fn poly_rem(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let lead_inv = f.inv(b[db]);
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let q = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate().take(db + 1) {
            let t = f.mul(q, c);
            r[i + shift] = f.sub(r[i + shift], t);
        }
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    r
}

fn poly_mul_mod(f: &Fp, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &out, m)
}

fn poly_pow_mod(f: &Fp, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(f, &acc, &b, m);
        }
        b = poly_mul_mod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn poly_monic(f: &Fp, mut a: Vec<u64>) -> Vec<u64> {
    poly_trim(&mut a);
    if let Some(d) = poly_degree(&a) {
        let inv = f.inv(a[d]);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    a
}

fn poly_gcd(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while poly_degree(&y).is_some() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, x)
}

fn poly_div_exact(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = poly_degree(b).unwrap();
    let da = poly_degree(a).unwrap_or(0);
    if da < db {
        return vec![0];
    }
    let mut r = a.to_vec();
    let mut q = vec![0; da - db + 1];
    let lead_inv = f.inv(b[db]);
    for shift in (0..=da - db).rev() {
        let c = f.mul(r[shift + db], lead_inv);
        q[shift] = c;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let t = f.mul(c, bc);
            r[i + shift] = f.sub(r[i + shift], t);
        }
    }
    q
}

/// Distinct roots in F_p of `poly` (constant term first), in increasing order.
///
/// Uses `gcd(poly, x^p - x)` to isolate the split part, then deterministic
/// equal-degree splitting with shifts `x + 0, x + 1, ...`.
pub fn distinct_roots(f: &Fp, poly: &[u64]) -> Vec<u64> {
    let p = f.modulus();
    let mut poly = poly.to_vec();
    poly_trim(&mut poly);
    let Some(deg) = poly_degree(&poly) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let xp = poly_pow_mod(f, &[0, 1], p, &poly);
    let mut xp_minus_x = xp;
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = f.sub(xp_minus_x[1], 1);
    let split = poly_gcd(f, &poly, &xp_minus_x);

    let mut roots = Vec::new();
    let mut stack = vec![split];
    while let Some(g) = stack.pop() {
        match poly_degree(&g) {
            None | Some(0) => {}
            Some(1) => roots.push(f.neg(f.mul(g[0], f.inv(g[1])))),
            Some(d) => {
                if p == 2 {
                    // Only 0 and 1 are candidates.
                    for r in 0..2u64 {
                        let val = g.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, r), c));
                        if val == 0 {
                            roots.push(r);
                        }
                    }
                    continue;
                }
                let mut delta = 0u64;
                loop {
                    let h = poly_pow_mod(f, &[delta, 1], (p - 1) / 2, &g);
                    let mut hm1 = h;
                    hm1[0] = f.sub(hm1[0], 1);
                    let c = poly_gcd(f, &g, &hm1);
                    let dc = poly_degree(&c).unwrap_or(0);
                    if dc > 0 && dc < d {
                        let other = poly_div_exact(f, &g, &c);
                        stack.push(c);
                        stack.push(poly_monic(f, other));
                        break;
                    }
                    delta += 1;
                }
            }
        }
    }
    roots.sort_unstable();
    roots
}

/// Smallest prime `> lower` that is `1 (mod modulus)`, or `None` if it would
/// exceed `limit`.
pub fn prime_congruent_one(modulus: u64, lower: u64, limit: u64) -> Option<u64> {
    let modulus = modulus.max(1);
    let mut k = lower / modulus;
    loop {
        let cand = k.checked_mul(modulus)?.checked_add(1)?;
        if cand > limit {
            return None;
        }
        if cand > lower && is_prime(cand) {
            return Some(cand);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn prime_search() {
        assert_eq!(prime_congruent_one(6, 36, 1 << 61), Some(37));
        assert_eq!(prime_congruent_one(4, 100, 1 << 61), Some(101));
        assert_eq!(prime_congruent_one(4, 100, 100), None);
    }

    #[test]
    fn char_poly_companion() {
        let f = Fp::new(101);
        // Companion matrix of x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3).
        let a = vec![vec![0, 0, 6], vec![1, 0, f.neg(11)], vec![0, 1, 6]];
        let cp = char_poly(&f, &a);
        assert_eq!(cp, vec![f.neg(6), 11, f.neg(6), 1]);
        assert_eq!(distinct_roots(&f, &cp), vec![1, 2, 3]);
    }

    #[test]
    fn char_poly_matches_determinant_brute_force() {
        let f = Fp::new(10007);
        let a = vec![
            vec![3, 1, 4, 1],
            vec![5, 9, 2, 6],
            vec![5, 3, 5, 8],
            vec![9, 7, 9, 3],
        ];
        let cp = char_poly(&f, &a);
        // Evaluate det(tI - A) at several t by Gaussian elimination.
        for t in [0u64, 1, 2, 17, 500] {
            let mut m: Vec<Vec<u64>> = a
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, &v)| if i == j { f.sub(t, v) } else { f.neg(v) })
                        .collect()
                })
                .collect();
            let mut det = 1u64;
            for c in 0..4 {
                let Some(p) = (c..4).find(|&i| m[i][c] != 0) else {
                    det = 0;
                    break;
                };
                if p != c {
                    m.swap(p, c);
                    det = f.neg(det);
                }
                det = f.mul(det, m[c][c]);
                let inv = f.inv(m[c][c]);
                for i in c + 1..4 {
                    let u = f.mul(m[i][c], inv);
                    for j in c..4 {
                        let s = f.mul(u, m[c][j]);
                        m[i][j] = f.sub(m[i][j], s);
                    }
                }
            }
            let val = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, t), c));
            assert_eq!(val, det, "t = {t}");
        }
    }

    #[test]
    fn roots_with_multiplicity_and_irreducible_factor() {
        let f = Fp::new(13);
        // (x-2)^2 (x-5) (x^2+2), x^2+2 irreducible mod 13 (-2 is a non-residue).
        let mut p = vec![1u64];
        let factors: [Vec<u64>; 4] = [
            vec![f.neg(2), 1],
            vec![f.neg(2), 1],
            vec![f.neg(5), 1],
            vec![2, 0, 1],
        ];
        for fac in &factors {
            let mut out = vec![0; p.len() + fac.len() - 1];
            for (i, &x) in p.iter().enumerate() {
                for (j, &y) in fac.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
            p = out;
        }
        assert_eq!(distinct_roots(&f, &p), vec![2, 5]);
    }

    #[test]
    fn kernel_dimension() {
        let f = Fp::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 2);
        for y in &k {
            let s = (0..3).fold(0, |acc, j| f.add(acc, f.mul(m[0][j], y[j])));
            assert_eq!(s, 0);
        }
    }
}
