//! Character tables over a prime field, by simultaneous diagonalization of
//! the class-sum multiplication matrices (Dixon–Schneider).
//!
//! Every character value is kept as a residue mod a prime p with
//! p ≡ 1 (mod exp G) and p > |G|². The quantities downstream code consumes
//! (inner products, multiplicities, fixed-space dimensions) are integers in
//! `[0, |G|]`, so they lift uniquely from their residues.

mod cache;

pub use cache::{TableCache, CACHE_ENV};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ClassPartition, FiniteGroup};
use crate::modp::{char_poly, distinct_roots, kernel, prime_congruent_one, rref, Fp};

/// Largest prime the search is allowed to reach.
pub const PRIME_LIMIT: u64 = 1 << 61;

/// Irreducible characters of a finite group as residues mod `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    group_hash: String,
    prime: u64,
    classes: ClassPartition,
    /// `values[i][c]` = χ_i on class c.
    values: Vec<Vec<u64>>,
    degrees: Vec<usize>,
    class_inverse: Vec<usize>,
    dual: Vec<usize>,
}

/// Builds the complete character table of `group`.
///
/// Rows are sorted by degree and then by their residue vectors, so the
/// trivial character is always row 0 and rebuilding is deterministic.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let prime = default_prime(&group)?;
    compute_table(group, prime)
}

/// The smallest prime p > |G|² with p ≡ 1 (mod exp G).
pub fn default_prime(group: &FiniteGroup) -> Result<u64> {
    let n = group.order() as u64;
    let exponent = group.exponent() as u64;
    prime_congruent_one(exponent, n * n, PRIME_LIMIT).ok_or_else(|| {
        Error::InvalidArgument(format!("no prime p = 1 mod {exponent} with |G|^2 < p < 2^61"))
    })
}

fn compute_table(group: Arc<FiniteGroup>, prime: u64) -> Result<CharacterTable> {
    let classes = group.conjugacy_classes();
    let values = dixon_schneider(&group, &classes, Fp::new(prime))?;
    CharacterTable::assemble(group, prime, classes, values)
}

fn class_matrix(g: &FiniteGroup, classes: &ClassPartition, j: usize) -> Vec<Vec<u64>> {
    // m[k][l] = #{x in C_j : x^-1 z_l in C_k}, the coefficient of C_l in C_j C_k.
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    for l in 0..r {
        let z = classes.representative(l);
        for &x in classes.class(j) {
            let y = g.mul(g.inv(x), z);
            m[classes.class_of(y)][l] += 1;
        }
    }
    m
}

/// Simultaneous eigenvectors of the class matrices, normalized to 1 on the
/// identity class: the central characters ω_χ(C_k) = |C_k| χ(g_k) / χ(1).
/// Returns χ values (not ω), unsorted.
fn dixon_schneider(g: &FiniteGroup, classes: &ClassPartition, f: Fp) -> Result<Vec<Vec<u64>>> {
    let r = classes.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, classes, j);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&f, &m, space)?);
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() != 1) {
        return Err(Error::Internal(format!(
            "eigenspace of dimension {} survived every class matrix",
            s.len()
        )));
    }
    let order = g.order() as u64;
    let sizes: Vec<u64> = classes.sizes().iter().map(|&s| s as u64).collect();
    let class_inverse: Vec<usize> = (0..r)
        .map(|k| classes.class_of(g.inv(classes.representative(k))))
        .collect();
    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let omega = &space[0];
        if omega[0] != 1 {
            return Err(Error::Internal("central character is not 1 on the identity".into()));
        }
        // Σ_k ω_k ω_{k*} / |C_k| = |G| / χ(1)^2.
        let mut s = 0u64;
        for k in 0..r {
            let t = f.mul(f.mul(omega[k], omega[class_inverse[k]]), f.inv(sizes[k] % f.modulus()));
            s = f.add(s, t);
        }
        if s == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = f.mul(order % f.modulus(), f.inv(s));
        let d = integer_sqrt(d2)
            .filter(|&d| d * d == d2 && d >= 1 && order % d == 0)
            .ok_or_else(|| Error::Internal(format!("degree square {d2} does not lift")))?;
        let row: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(omega[k], d), f.inv(sizes[k])))
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

fn integer_sqrt(v: u64) -> Option<u64> {
    let mut s = (v as f64).sqrt() as u64;
    while s * s > v {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= v {
        s += 1;
    }
    Some(s)
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split_space(f: &Fp, m: &[Vec<u64>], space: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let r = m.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|v| v.iter().position(|&x| x != 0).expect("basis vectors are nonzero"))
        .collect();
    // Coordinates of m·v_i in the basis: read off at the pivot columns.
    let mut a = vec![vec![0u64; d]; d];
    for (i, v) in space.iter().enumerate() {
        for (row, &pc) in pivots.iter().enumerate() {
            let mut acc = 0u64;
            for l in 0..r {
                if m[pc][l] != 0 && v[l] != 0 {
                    acc = f.add(acc, f.mul(m[pc][l] % f.modulus(), v[l]));
                }
            }
            a[row][i] = acc;
        }
    }
    let roots = distinct_roots(f, &char_poly(f, &a));
    if roots.len() <= 1 {
        return Ok(vec![space]);
    }
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|k| if i == k { f.sub(a[i][k], lambda) } else { a[i][k] }).collect())
            .collect();
        let ys = kernel(f, &shifted, d);
        let mut vecs: Vec<Vec<u64>> = ys
            .iter()
            .map(|y| {
                let mut w = vec![0u64; r];
                for (coef, v) in y.iter().zip(&space) {
                    if *coef == 0 {
                        continue;
                    }
                    for (wl, &vl) in w.iter_mut().zip(v) {
                        *wl = f.add(*wl, f.mul(*coef, vl));
                    }
                }
                w
            })
            .collect();
        rref(f, &mut vecs);
        total += vecs.len();
        out.push(vecs);
    }
    if total != d {
        return Err(Error::Internal(format!(
            "class matrix is not diagonalizable on a {d}-dimensional eigenspace"
        )));
    }
    Ok(out)
}

impl CharacterTable {
    fn assemble(group: Arc<FiniteGroup>, prime: u64, classes: ClassPartition, mut values: Vec<Vec<u64>>) -> Result<Self> {
        let r = classes.len();
        if values.len() != r || values.iter().any(|v| v.len() != r) {
            return Err(Error::Internal("character table is not square".into()));
        }
        let bound = (group.order() as f64).sqrt() as u64 + 1;
        let mut degrees = Vec::with_capacity(r);
        for v in &values {
            let d = (1..=bound)
                .find(|&d| d % prime == v[0])
                .ok_or_else(|| Error::Internal(format!("value {} at identity is not a degree", v[0])))?;
            degrees.push(d as usize);
        }
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&i, &j| (degrees[i], &values[i]).cmp(&(degrees[j], &values[j])));
        values = order.iter().map(|&i| values[i].clone()).collect();
        degrees = order.iter().map(|&i| degrees[i]).collect();
        let class_inverse: Vec<usize> = (0..r)
            .map(|k| classes.class_of(group.inv(classes.representative(k))))
            .collect();
        let mut dual = vec![0usize; r];
        for (i, v) in values.iter().enumerate() {
            let conj: Vec<u64> = (0..r).map(|k| v[class_inverse[k]]).collect();
            dual[i] = values
                .iter()
                .position(|w| *w == conj)
                .ok_or_else(|| Error::Internal("dual of an irreducible is not in the table".into()))?;
        }
        let table = CharacterTable {
            group_hash: group.canonical_hash(),
            group,
            prime,
            classes,
            values,
            degrees,
            class_inverse,
            dual,
        };
        table.verify()?;
        Ok(table)
    }

    /// Orthogonality of rows and columns mod p, Σ deg² = |G|, and degrees
    /// dividing |G|.
    pub fn verify(&self) -> Result<()> {
        let f = self.field();
        let r = self.classes.len();
        let n = self.group.order();
        let nn = n as u64 % self.prime;
        let fail = |msg: String| Err(Error::Internal(format!("character table check failed: {msg}")));
        if self.values.len() != r || self.degrees.len() != r {
            return fail("irreducible count differs from class count".into());
        }
        if self.degrees.iter().map(|d| d * d).sum::<usize>() != n {
            return fail("sum of squared degrees differs from |G|".into());
        }
        for (i, &d) in self.degrees.iter().enumerate() {
            if d == 0 || n % d != 0 || self.values[i][0] != d as u64 % self.prime {
                return fail(format!("degree of irreducible {i}"));
            }
        }
        for i in 0..r {
            for j in i..r {
                let mut acc = 0u64;
                for c in 0..r {
                    let t = f.mul(self.values[i][c], self.values[j][self.class_inverse[c]]);
                    acc = f.add(acc, f.mul(self.classes.size(c) as u64, t));
                }
                let expect = if i == j { nn } else { 0 };
                if acc != expect {
                    return fail(format!("rows {i} and {j} are not orthogonal"));
                }
            }
        }
        for c in 0..r {
            for e in c..r {
                let mut acc = 0u64;
                for i in 0..r {
                    acc = f.add(acc, f.mul(self.values[i][c], self.values[i][self.class_inverse[e]]));
                }
                let expect = if c == e { (n / self.classes.size(c)) as u64 % self.prime } else { 0 };
                if acc != expect {
                    return fail(format!("columns {c} and {e} are not orthogonal"));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.prime)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn group_hash(&self) -> &str {
        &self.group_hash
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn num_irreducibles(&self) -> usize {
        self.values.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// χ_i as a class function.
    pub fn character(&self, i: usize) -> &[u64] {
        &self.values[i]
    }

    /// χ_i(x) for a group element x.
    pub fn value_at(&self, i: usize, x: usize) -> u64 {
        self.values[i][self.classes.class_of(x)]
    }

    /// Index of the class containing the inverses of class `c`.
    pub fn class_inverse(&self, c: usize) -> usize {
        self.class_inverse[c]
    }

    /// The involution α ↦ ᾱ on irreducibles, χ_ᾱ(g) = χ_α(g⁻¹).
    pub fn dual_index(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Regular character: |G| at the identity, 0 elsewhere.
    pub fn regular_character(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.classes.len()];
        v[0] = self.group.order() as u64 % self.prime;
        v
    }

    pub(crate) fn lift(&self, residue: u64, lo: i64, hi: i64) -> Result<i64> {
        let v = self.field().lift_signed(residue);
        if v < lo || v > hi {
            return Err(Error::LiftOutOfRange { residue, prime: self.prime, lo, hi });
        }
        Ok(v)
    }

    /// Residue of (1/|G|) Σ_c |c| a(c) b(c⁻¹).
    pub fn inner_product_residue(&self, a: &[u64], b: &[u64]) -> u64 {
        let f = self.field();
        let mut acc = 0u64;
        for c in 0..self.classes.len() {
            let t = f.mul(a[c], b[self.class_inverse[c]]);
            acc = f.add(acc, f.mul(self.classes.size(c) as u64, t));
        }
        f.mul(acc, f.inv(self.group.order() as u64 % self.prime))
    }

    /// The integer inner product of two class functions whose true value lies
    /// in `[0, |G|]`.
    pub fn inner_product(&self, a: &[u64], b: &[u64]) -> Result<usize> {
        if a.len() != self.classes.len() || b.len() != self.classes.len() {
            return Err(Error::InvalidArgument("class function length differs from class count".into()));
        }
        let n = self.group.order() as i64;
        Ok(self.lift(self.inner_product_residue(a, b), 0, n)? as usize)
    }

    /// dim α^H = (1/|H|) Σ_{h∈H} α(h).
    pub fn fixed_subspace_dim(&self, alpha: usize, h: &[usize]) -> Result<usize> {
        if alpha >= self.num_irreducibles() {
            return Err(Error::IndexOutOfRange { index: alpha, len: self.num_irreducibles() });
        }
        if !self.group.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{} elements do not form a subgroup", h.len())));
        }
        let f = self.field();
        let sum = h.iter().fold(0u64, |acc, &x| f.add(acc, self.value_at(alpha, x)));
        let avg = f.mul(sum, f.inv(h.len() as u64 % self.prime));
        Ok(self.lift(avg, 0, self.degrees[alpha] as i64)? as usize)
    }
}

/// `m[j][i]` = ⟨Res_G χ_i, ψ_j⟩ for χ_i irreducible of the big group and ψ_j
/// irreducible of the subgroup embedded by `embed`.
pub fn restriction_matrix(big: &CharacterTable, small: &CharacterTable, embed: &[usize]) -> Result<Vec<Vec<usize>>> {
    if embed.len() != small.group().order() {
        return Err(Error::InvalidArgument("embedding size differs from subgroup order".into()));
    }
    if big.prime() != small.prime() {
        // Restriction compares residues directly, so both tables must share p.
        return Err(Error::InvalidArgument("tables use different primes".into()));
    }
    let sc = small.classes();
    let restricted: Vec<Vec<u64>> = (0..big.num_irreducibles())
        .map(|i| (0..sc.len()).map(|c| big.value_at(i, embed[sc.representative(c)])).collect())
        .collect();
    (0..small.num_irreducibles())
        .map(|j| {
            restricted
                .iter()
                .map(|res| small.inner_product(res, small.character(j)))
                .collect()
        })
        .collect()
}

/// ⟨χ_i, Ind_Σ 1⟩ = (1/|Σ|) Σ_{σ∈Σ} χ_i(σ), by Frobenius reciprocity.
pub fn coset_character(big: &CharacterTable, sigma_embed: &[usize]) -> Result<Vec<usize>> {
    let f = big.field();
    let s = sigma_embed.len() as u64;
    if s == 0 {
        return Err(Error::InvalidArgument("empty subgroup embedding".into()));
    }
    let inv = f.inv(s % big.prime());
    (0..big.num_irreducibles())
        .map(|i| {
            let sum = sigma_embed.iter().fold(0u64, |acc, &x| f.add(acc, big.value_at(i, x)));
            Ok(big.lift(f.mul(sum, inv), 0, big.degree(i) as i64)? as usize)
        })
        .collect()
}

/// Builds the character tables of G ⋊ Σ and of G with a shared prime, so
/// restriction can compare residues. The prime is the one for G ⋊ Σ.
pub fn paired_tables(big: Arc<FiniteGroup>, small: Arc<FiniteGroup>) -> Result<(CharacterTable, CharacterTable)> {
    let big_t = character_table(big)?;
    let small_t = character_table_with_prime(small, big_t.prime())?;
    Ok((big_t, small_t))
}

/// Character table in a caller-chosen prime, which must satisfy
/// p ≡ 1 (mod exp G) and p > |G|.
pub fn character_table_with_prime(group: Arc<FiniteGroup>, prime: u64) -> Result<CharacterTable> {
    check_prime(&group, prime)?;
    compute_table(group, prime)
}

fn check_prime(group: &FiniteGroup, prime: u64) -> Result<()> {
    let n = group.order() as u64;
    let e = group.exponent() as u64;
    if prime <= n || (prime - 1) % e != 0 || !crate::modp::is_prime(prime) {
        return Err(Error::InvalidArgument(format!("prime {prime} is not admissible for this group")));
    }
    Ok(())
}
