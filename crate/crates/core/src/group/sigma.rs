use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// An automorphism of a [`FiniteGroup`], stored as the full permutation of
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Automorphism {
    perm: Vec<u32>,
}

impl Automorphism {
    pub fn identity(g: &FiniteGroup) -> Self {
        Automorphism { perm: (0..g.order() as u32).collect() }
    }

    /// Checks that `perm` is a bijection fixing the identity and respecting
    /// the multiplication table.
    pub fn new(g: &FiniteGroup, perm: Vec<usize>) -> Result<Self> {
        let n = g.order();
        if perm.len() != n {
            return Err(Error::InvalidArgument(format!(
                "automorphism has {} images for a group of order {n}",
                perm.len()
            )));
        }
        let mut hit = vec![false; n];
        for &x in &perm {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(Error::InvalidArgument("automorphism images are not a permutation".into()));
            }
        }
        if perm[g.identity()] != g.identity() {
            return Err(Error::NotAutomorphism { a: g.identity(), b: g.identity() });
        }
        for a in 0..n {
            for b in 0..n {
                if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                    return Err(Error::NotAutomorphism { a, b });
                }
            }
        }
        Ok(Automorphism { perm: perm.into_iter().map(|x| x as u32).collect() })
    }

    /// `x -> x^k`; an automorphism exactly when `g` is abelian and `k` is
    /// coprime to the exponent.
    pub fn power_map(g: &FiniteGroup, k: usize) -> Result<Self> {
        Self::new(g, (0..g.order()).map(|x| g.power(x, k)).collect())
    }

    /// Inner automorphism `x -> h x h^-1`.
    pub fn conjugation(g: &FiniteGroup, h: usize) -> Result<Self> {
        if h >= g.order() {
            return Err(Error::IndexOutOfRange { index: h, len: g.order() });
        }
        Self::new(g, (0..g.order()).map(|x| g.mul(g.mul(h, x), g.inv(h))).collect())
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<u32>) -> Self {
        Automorphism { perm }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&x| self.perm[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Automorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

/// A subgroup Σ of Aut(G), materialized as the closure of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaAction {
    generators: Vec<Automorphism>,
    elements: Vec<Automorphism>,
    /// `compose[i * order + j]` is the index of `elements[i] ∘ elements[j]`.
    compose: Vec<u32>,
}

impl SigmaAction {
    pub fn trivial(g: &FiniteGroup) -> Self {
        SigmaAction {
            generators: Vec::new(),
            elements: vec![Automorphism::identity(g)],
            compose: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// Elements in breadth-first order from the identity (index 0).
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    #[inline]
    pub fn compose_index(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.elements.len() + j] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Closure of `gens` inside Aut(G). Each generator is validated first.
pub fn sigma_subgroup(g: &FiniteGroup, gens: &[Vec<usize>]) -> Result<SigmaAction> {
    let autos: Vec<Automorphism> = gens.iter().map(|p| Automorphism::new(g, p.clone())).collect::<Result<_>>()?;
    Ok(close_automorphisms(g, autos, DEFAULT_ORDER_CAP)?)
}

/// Closure of already validated automorphisms.
pub fn close_automorphisms(g: &FiniteGroup, gens: Vec<Automorphism>, cap: usize) -> Result<SigmaAction> {
    let id = Automorphism::identity(g);
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Automorphism, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for s in &gens {
            let prod = elements[e].compose(s);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::OrderCap { order: elements.len() + 1, cap });
                }
                index.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }
    let m = elements.len();
    let mut compose = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            compose[i * m + j] = index[&elements[i].compose(&elements[j])] as u32;
        }
    }
    Ok(SigmaAction { generators: gens, elements, compose })
}

impl SigmaAction {
    pub fn from_automorphisms(g: &FiniteGroup, gens: Vec<Automorphism>) -> Result<Self> {
        close_automorphisms(g, gens, DEFAULT_ORDER_CAP)
    }
}

/// G ⋊ Σ together with the index maps of its subgroups G x {1} and {1} x Σ.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub embed_g: Vec<usize>,
    pub embed_sigma: Vec<usize>,
}

/// The group on pairs `(g, σ)` with `(g1,σ1)(g2,σ2) = (g1·σ1(g2), σ1σ2)`.
/// The pair `(g, σ_j)` has index `g * |Σ| + j`.
pub fn semidirect_product(g: &FiniteGroup, sigma: &SigmaAction, cap: usize) -> Result<SemidirectProduct> {
    let (n, s) = (g.order(), sigma.order());
    let m = n * s;
    if m > cap {
        return Err(Error::OrderCap { order: m, cap });
    }
    let mut mult = vec![0u32; m * m];
    for g1 in 0..n {
        for s1 in 0..s {
            let x = g1 * s + s1;
            let act = &sigma.elements()[s1];
            for g2 in 0..n {
                let head = g.mul(g1, act.apply(g2)) * s;
                for s2 in 0..s {
                    mult[x * m + g2 * s + s2] = (head + sigma.compose_index(s1, s2)) as u32;
                }
            }
        }
    }
    let labels = if sigma.is_trivial() {
        g.labels().map(|l| l.to_vec())
    } else {
        g.labels()
            .map(|l| (0..m).map(|x| format!("({},σ{})", l[x / s], x % s)).collect())
    };
    let group = FiniteGroup::from_flat(m, mult, labels)?;
    Ok(SemidirectProduct {
        group,
        embed_g: (0..n).map(|x| x * s).collect(),
        embed_sigma: (0..s).map(|j| g.identity() * s + j).collect(),
    })
}

/// Orbits of Σ on the underlying set of G, each sorted, ordered by smallest element.
pub fn orbits(g: &FiniteGroup, sigma: &SigmaAction) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for a in sigma.generators() {
                let z = a.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// O(G, Σ): the number of Σ-orbits on G.
pub fn orbit_count(g: &FiniteGroup, sigma: &SigmaAction) -> usize {
    orbits(g, sigma).len()
}
