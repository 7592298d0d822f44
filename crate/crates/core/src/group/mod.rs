//! Finite groups stored as full Cayley tables.

pub mod abelian;
mod presets;
mod sigma;

pub use presets::{group_preset_names, GroupSpec, PermGenerator};
pub use sigma::{close_automorphisms, orbit_count, orbits, semidirect_product, sigma_subgroup, Automorphism, SemidirectProduct, SigmaAction};

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the order of any group the library builds.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Associativity is checked on every triple up to this order, by sampling above.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;
const ASSOC_SAMPLES: usize = 100_000;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order`. Tables are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table given as rows `table[a][b] = a*b`.
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {} (expected {n})",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} in row {a} out of range")));
                }
                mult.push(v as u32);
            }
        }
        Self::from_flat(n, mult, None)
    }

    pub(crate) fn from_flat(n: usize, mult: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        debug_assert_eq!(mult.len(), n * n);
        // Latin square check.
        let mut seen = vec![0u32; n];
        let mut stamp = 0u32;
        for a in 0..n {
            stamp += 1;
            for b in 0..n {
                let v = mult[a * n + b] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                seen[v] = stamp;
            }
        }
        for b in 0..n {
            stamp += 1;
            for a in 0..n {
                let v = mult[a * n + b] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("column {b} is not a permutation")));
                }
                seen[v] = stamp;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] as usize == x && mult[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mult[a * n + b] as usize == identity)
                .expect("latin square row contains the identity");
            if mult[b * n + a] as usize != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inverse[a] = b as u32;
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::InvalidGroup("label count differs from order".into()));
            }
        }
        let group = FiniteGroup { order: n, mult, identity, inverse, labels };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::NotAssociative { a, b, c });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a55c);
            for _ in 0..ASSOC_SAMPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Builds the group generated by permutations of `0..degree` (images
    /// lists). Elements are numbered breadth-first from the identity, trying
    /// generators in input order; `(a*b)(x) = a(b(x))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!("generator {i} has wrong degree")));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidGroup(format!("generator {i} is not a permutation")));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = (0..degree).map(|x| elems[e][g[x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCap { order: elems.len() + 1, cap });
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                mult[a * n + b] = index[&prod] as u32;
            }
        }
        let labels = elems.iter().map(|p| cycle_string(p)).collect();
        Self::from_flat(n, mult, Some(labels))
    }

    /// The direct product, with `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup, cap: usize) -> Result<Self> {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        if n > cap {
            return Err(Error::OrderCap { order: n, cap });
        }
        let mut mult = vec![0u32; n * n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        let x = a1 * n2 + b1;
                        let y = a2 * n2 + b2;
                        mult[x * n + y] = (self.mul(a1, a2) * n2 + other.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(l1), Some(l2)) => Some(
                (0..n)
                    .map(|i| format!("({},{})", l1[i / n2], l2[i % n2]))
                    .collect(),
            ),
            _ => None,
        };
        Self::from_flat(n, mult, labels)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// Elements of the cyclic subgroup generated by `a`, starting at the identity.
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = a;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        if h.is_empty() || h.iter().any(|&x| x >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in h {
            member[x] = true;
        }
        member[self.identity]
            && h.iter().all(|&x| member[self.inv(x)])
            && h.iter().all(|&x| h.iter().all(|&y| member[self.mul(x, y)]))
    }

    /// Canonical fingerprint of the multiplication table (hex SHA-256 over the
    /// order, the identity, and the table in row-major order).
    pub fn canonical_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        h.update((self.identity as u64).to_le_bytes());
        for &v in &self.mult {
            h.update(v.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Partition into conjugacy classes. Class 0 is `{identity}`; classes are
    /// ordered by (size, smallest element), and members within a class are sorted.
    pub fn conjugacy_classes(&self) -> ClassPartition {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let c = self.mul(self.mul(g, x), self.inv(g));
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        // The identity class is the unique class of size 1 containing the identity;
        // move it to the front.
        let pos = classes.iter().position(|c| c[0] == self.identity && c.len() == 1).unwrap();
        let idc = classes.remove(pos);
        classes.insert(0, idc);
        ClassPartition::from_classes(n, classes)
    }
}

/// A conjugacy-class partition of a group's elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl ClassPartition {
    fn from_classes(order: usize, classes: Vec<Vec<usize>>) -> Self {
        let mut class_of = vec![0; order];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        ClassPartition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

fn cycle_string(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inv(h))).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            sizes.push(cls.len());
        }
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let g = GroupSpec::parse("cyclic 1").unwrap().build().unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn symmetric_three_classes() {
        let g = GroupSpec::parse("symmetric 3").unwrap().build().unwrap();
        assert_eq!(g.order(), 6);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        let mut sizes = classes.sizes();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, brute_force_class_sizes(&g));
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn quaternion_classes() {
        let g = GroupSpec::parse("quaternion 8").unwrap().build().unwrap();
        let mut sizes = g.conjugacy_classes().sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes, brute_force_class_sizes(&g));
    }

    #[test]
    fn class_order_rule() {
        let g = GroupSpec::parse("symmetric 4").unwrap().build().unwrap();
        let cp = g.conjugacy_classes();
        assert_eq!(cp.class(0), &[g.identity()]);
        let keys: Vec<(usize, usize)> = cp.classes()[1..].iter().map(|c| (c.len(), c[0])).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(cp.sizes().iter().sum::<usize>(), 24);
    }

    #[test]
    fn generated_cyclic_three() {
        let g = GroupSpec::Permutations(vec![PermGenerator::Cycles("(1 2 3)".into())])
            .build()
            .unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.label(1), "(1 2 3)");
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        for n in 1..=12 {
            let g = GroupSpec::parse(&format!("cyclic {n}")).unwrap().build().unwrap();
            let cp = g.conjugacy_classes();
            assert_eq!(cp.len(), n);
            assert!(cp.sizes().iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn rejects_non_associative_table() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley(t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn rejects_non_permutation_row() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_cayley(t), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn order_cap_enforced() {
        let spec = GroupSpec::parse("symmetric 5").unwrap();
        assert!(matches!(spec.build_with_cap(100), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn rebuild_is_deterministic() {
        let a = GroupSpec::parse("dihedral 6 x cyclic 2").unwrap().build().unwrap();
        let b = GroupSpec::parse("dihedral 6 x cyclic 2").unwrap().build().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_hash(), b.canonical_hash());
    }

    #[test]
    fn cayley_table_round_trip() {
        let g = GroupSpec::parse("quaternion 8").unwrap().build().unwrap();
        let table: Vec<Vec<usize>> = (0..8).map(|a| (0..8).map(|b| g.mul(a, b)).collect()).collect();
        let h = FiniteGroup::from_cayley(table).unwrap();
        assert_eq!(h.canonical_hash(), g.canonical_hash());
    }

    #[test]
    fn exponents() {
        let cases = [("cyclic 12", 12), ("symmetric 4", 12), ("quaternion 8", 4), ("elementary abelian 2^3", 2)];
        for (name, e) in cases {
            assert_eq!(GroupSpec::parse(name).unwrap().build().unwrap().exponent(), e, "{name}");
        }
    }
}
