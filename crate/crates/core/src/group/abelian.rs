//! Finite abelian groups in primary form, and enumeration of their cyclic
//! automorphism subgroups up to conjugacy in Aut(G).
//!
//! This is sweep machinery: it lets the abelian equality check range over
//! every Σ generated by a single automorphism without materializing Aut(G).
//! Conjugate subgroups of Aut(G) give isomorphic pairs (G, Σ), so one
//! representative per class is enough.

use super::presets::cyclic;
use super::{Automorphism, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// Z/n_1 x ... x Z/n_k with every `n_i` a prime power, grouped by prime and
/// ascending within each prime. Element `x` has coordinates in mixed radix,
/// first factor most significant.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    group: FiniteGroup,
    coords: Vec<Vec<usize>>,
    /// `times[h * max_factor + t] = t·h` for `t < max_factor`.
    times: Vec<u32>,
    max_factor: usize,
    orders: Vec<usize>,
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every abelian group of order `n` up to isomorphism, in a fixed order.
pub fn abelian_groups_of_order(n: usize) -> Result<Vec<AbelianGroup>> {
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for base in &choices {
            for part in partitions(e, e) {
                let mut f = base.clone();
                let mut block: Vec<usize> = part.iter().map(|&a| p.pow(a)).collect();
                block.sort_unstable();
                f.extend(block);
                next.push(f);
            }
        }
        choices = next;
    }
    choices.iter().map(|f| AbelianGroup::new(f)).collect()
}

impl AbelianGroup {
    pub fn new(factors: &[usize]) -> Result<Self> {
        if factors.iter().any(|&f| f < 2) {
            return Err(Error::InvalidGroup("abelian factors must be at least 2".into()));
        }
        let mut group = cyclic(1)?;
        for &f in factors {
            group = group.direct_product(&cyclic(f)?, DEFAULT_ORDER_CAP)?;
        }
        let n = group.order();
        let coords: Vec<Vec<usize>> = (0..n)
            .map(|mut x| {
                let mut c = vec![0; factors.len()];
                for i in (0..factors.len()).rev() {
                    c[i] = x % factors[i];
                    x /= factors[i];
                }
                c
            })
            .collect();
        let max_factor = factors.iter().copied().max().unwrap_or(1);
        let mut times = vec![0u32; n * max_factor];
        for h in 0..n {
            let mut acc = group.identity();
            for t in 0..max_factor {
                times[h * max_factor + t] = acc as u32;
                acc = group.mul(acc, h);
            }
        }
        let orders = (0..n).map(|x| group.element_order(x)).collect();
        Ok(AbelianGroup { factors: factors.to_vec(), group, coords, times, max_factor, orders })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "trivial".into();
        }
        self.factors.iter().map(|f| format!("cyclic {f}")).collect::<Vec<_>>().join(" x ")
    }

    /// Index of the i-th standard generator.
    pub fn generator(&self, i: usize) -> usize {
        let k = self.factors.len();
        let stride: usize = self.factors[i + 1..k].iter().product();
        stride
    }

    #[inline]
    fn times(&self, h: usize, t: usize) -> usize {
        self.times[h * self.max_factor + t] as usize
    }

    /// Image of `x` under the endomorphism sending generator `i` to `images[i]`.
    #[inline]
    fn apply_images(&self, images: &[u32], x: usize) -> usize {
        let c = &self.coords[x];
        let mut acc = self.group.identity();
        for (i, &h) in images.iter().enumerate() {
            if c[i] != 0 {
                acc = self.group.mul(acc, self.times(h as usize, c[i]));
            }
        }
        acc
    }

    fn encode(&self, images: &[u32]) -> u64 {
        let n = self.group.order() as u64;
        images.iter().rev().fold(0u64, |acc, &h| acc * n + h as u64)
    }

    fn to_automorphism(&self, images: &[u32]) -> Automorphism {
        let perm = (0..self.group.order()).map(|x| self.apply_images(images, x) as u32).collect();
        Automorphism::from_perm_unchecked(perm)
    }

    /// Depth-first enumeration of Aut(G) as generator-image tuples, in a
    /// fixed order. The callback sees each automorphism exactly once.
    fn for_each_automorphism(&self, f: &mut impl FnMut(&[u32])) {
        let n = self.group.order();
        let mut images = Vec::with_capacity(self.factors.len());
        let mut span = vec![false; n];
        span[self.group.identity()] = true;
        self.dfs(&mut images, &span, f);
    }

    fn dfs(&self, images: &mut Vec<u32>, span: &[bool], f: &mut impl FnMut(&[u32])) {
        let i = images.len();
        if i == self.factors.len() {
            f(images);
            return;
        }
        let ni = self.factors[i];
        let g = &self.group;
        'cand: for h in 0..g.order() {
            if ni % self.orders[h] != 0 {
                continue;
            }
            // <e_1..e_i> must map injectively: t·h for 0 < t < n_i avoids the current span.
            for t in 1..ni {
                if span[self.times(h, t)] {
                    continue 'cand;
                }
            }
            if i + 1 == self.factors.len() {
                images.push(h as u32);
                f(images);
                images.pop();
                continue;
            }
            let mut next = vec![false; g.order()];
            for (x, &inside) in span.iter().enumerate() {
                if inside {
                    for t in 0..ni {
                        next[g.mul(x, self.times(h, t))] = true;
                    }
                }
            }
            images.push(h as u32);
            self.dfs(images, &next, f);
            images.pop();
        }
    }

    /// |Aut(G)|, by enumeration.
    pub fn automorphism_count(&self) -> u64 {
        let mut count = 0u64;
        self.for_each_automorphism(&mut |_| count += 1);
        count
    }

    /// A generating set for Aut(G): unit scalings of each generator and
    /// transvections between neighbouring generators of the same prime.
    fn elementary_generators(&self) -> Vec<Vec<u32>> {
        let k = self.factors.len();
        let base: Vec<u32> = (0..k).map(|i| self.generator(i) as u32).collect();
        let g = &self.group;
        let mut gens = Vec::new();
        for i in 0..k {
            let n = self.factors[i];
            // Greedy generating set of the unit group mod n.
            let mut covered = vec![false; n];
            covered[1 % n] = true;
            for u in 2..n {
                if num_integer::gcd(u, n) != 1 || covered[u] {
                    continue;
                }
                let old: Vec<usize> = (0..n).filter(|&x| covered[x]).collect();
                let mut power = u;
                while power != 1 {
                    for &c in &old {
                        covered[c * power % n] = true;
                    }
                    power = power * u % n;
                }
                let mut img = base.clone();
                img[i] = self.times(base[i] as usize, u) as u32;
                gens.push(img);
            }
        }
        for i in 0..k.saturating_sub(1) {
            let (a, b) = (self.factors[i], self.factors[i + 1]);
            if num_integer::gcd(a, b) == 1 {
                continue;
            }
            let d = num_integer::gcd(a, b);
            // e_i -> e_i + (b/d) e_{i+1}; e_{i+1} -> e_{i+1} + (a/d) e_i.
            let mut img = base.clone();
            img[i] = g.mul(base[i] as usize, self.times(base[i + 1] as usize, b / d)) as u32;
            gens.push(img);
            let mut img = base.clone();
            img[i + 1] = g.mul(base[i + 1] as usize, self.times(base[i] as usize, a / d)) as u32;
            gens.push(img);
        }
        gens
    }

    /// Representatives of the cyclic subgroups of Aut(G) up to conjugacy in
    /// Aut(G), one generator each, in enumeration order. The first
    /// representative is always the identity automorphism.
    pub fn cyclic_automorphism_classes(&self) -> Vec<Automorphism> {
        let n = self.group.order();
        let k = self.factors.len();
        let gens = self.elementary_generators();
        // For each generator τ: τ as a full map, and coordinates of τ^{-1}(e_i).
        let conj: Vec<(Vec<u32>, Vec<Vec<usize>>)> = gens
            .iter()
            .map(|img| {
                let fwd: Vec<u32> = (0..n).map(|x| self.apply_images(img, x) as u32).collect();
                let mut inv = vec![0usize; n];
                for (x, &y) in fwd.iter().enumerate() {
                    inv[y as usize] = x;
                }
                let tinv_e = (0..k).map(|i| self.coords[inv[self.generator(i)]].clone()).collect();
                (fwd, tinv_e)
            })
            .collect();
        let space = (n as u64).pow(k as u32);
        let mut visited = vec![0u64; (space as usize).div_ceil(64)];
        let mark = |v: &mut Vec<u64>, code: u64| -> bool {
            let (w, b) = ((code / 64) as usize, code % 64);
            let fresh = v[w] & (1 << b) == 0;
            v[w] |= 1 << b;
            fresh
        };

        let mut reps = Vec::new();
        let mut queue: Vec<Vec<u32>> = Vec::new();
        self.for_each_automorphism(&mut |images| {
            if !mark(&mut visited, self.encode(images)) {
                return;
            }
            reps.push(images.to_vec());
            // Seed with every generator of the same cyclic subgroup.
            let powers = self.cyclic_powers(images);
            let ord = powers.len();
            for (e, p) in powers.iter().enumerate() {
                if e == 1 || (e > 1 && num_integer::gcd(e, ord) == 1 && mark(&mut visited, self.encode(p))) {
                    queue.push(p.clone());
                }
            }
            let mut scratch = vec![0u32; k];
            while let Some(rho) = queue.pop() {
                for (fwd, tinv_e) in &conj {
                    for i in 0..k {
                        let c = &tinv_e[i];
                        let mut acc = self.group.identity();
                        for (j, &cj) in c.iter().enumerate() {
                            if cj != 0 {
                                acc = self.group.mul(acc, self.times(rho[j] as usize, cj));
                            }
                        }
                        scratch[i] = fwd[acc];
                    }
                    if mark(&mut visited, self.encode(&scratch)) {
                        queue.push(scratch.clone());
                    }
                }
            }
        });
        let mut out: Vec<Automorphism> = reps.iter().map(|r| self.to_automorphism(r)).collect();
        out.sort_by_key(|a| !a.is_identity());
        out
    }

    /// `[σ^0, σ^1, ..., σ^(ord-1)]` as image tuples.
    fn cyclic_powers(&self, images: &[u32]) -> Vec<Vec<u32>> {
        let k = self.factors.len();
        let base: Vec<u32> = (0..k).map(|i| self.generator(i) as u32).collect();
        let mut out = vec![base.clone()];
        let mut cur = images.to_vec();
        while cur != base {
            out.push(cur.clone());
            cur = cur.iter().map(|&y| self.apply_images(images, y as usize) as u32).collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_isomorphism_types() {
        let expected = [(1, 1), (8, 3), (16, 5), (32, 7), (36, 4), (12, 2), (27, 3)];
        for (n, c) in expected {
            assert_eq!(abelian_groups_of_order(n).unwrap().len(), c, "order {n}");
        }
    }

    #[test]
    fn automorphism_group_orders() {
        let cases: [(&[usize], u64); 6] = [
            (&[], 1),
            (&[5], 4),
            (&[2, 4], 8),
            (&[2, 2], 6),
            (&[2, 2, 2], 168),
            (&[3, 3], 48),
        ];
        for (f, expected) in cases {
            assert_eq!(AbelianGroup::new(f).unwrap().automorphism_count(), expected, "{f:?}");
        }
    }

    #[test]
    fn enumerated_maps_are_automorphisms() {
        let a = AbelianGroup::new(&[2, 4]).unwrap();
        a.for_each_automorphism(&mut |img| {
            let perm = a.to_automorphism(img).images();
            Automorphism::new(a.group(), perm).unwrap();
        });
    }

    #[test]
    fn class_reps_of_gl2_f2() {
        // GL(2,2) = S3 has cyclic subgroups {1}, <(12)>, <(123)> up to conjugacy.
        let a = AbelianGroup::new(&[2, 2]).unwrap();
        let reps = a.cyclic_automorphism_classes();
        assert_eq!(reps.len(), 3);
        assert!(reps[0].is_identity());
    }

    #[test]
    fn class_reps_of_cyclic_groups() {
        // Aut(Z/n) is abelian, so classes of cyclic subgroups = cyclic subgroups of (Z/n)^*.
        let a = AbelianGroup::new(&[7]).unwrap();
        assert_eq!(a.cyclic_automorphism_classes().len(), 4);
        let a = AbelianGroup::new(&[8]).unwrap();
        assert_eq!(a.cyclic_automorphism_classes().len(), 4);
    }

    #[test]
    fn elementary_generators_generate() {
        for f in [&[2usize, 4][..], &[2, 2, 2], &[3, 9], &[2, 2, 4], &[4, 4]] {
            let a = AbelianGroup::new(f).unwrap();
            let gens = a.elementary_generators();
            let total = a.automorphism_count();
            let auts: Vec<Automorphism> = gens.iter().map(|g| a.to_automorphism(g)).collect();
            let closure = crate::group::sigma::close_automorphisms(a.group(), auts, 1 << 20).unwrap();
            assert_eq!(closure.order() as u64, total, "{f:?}");
        }
    }
}
