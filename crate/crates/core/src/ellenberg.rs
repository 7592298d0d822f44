//! The ε(G, Σ) linear program.
//!
//! Variables are the coordinates a_i ≥ 0 of a character v of G⋊Σ in the
//! irreducible basis. Each irreducible ψ_j of G gives the constraint
//! Σ_i ⟨Res χ_i, ψ_j⟩ a_i ≤ deg ψ_j, and the objective is Σ_i ⟨χ_i, c⟩ a_i
//! where c is the permutation character on G⋊Σ / Σ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::characters::{coset_character, default_prime, restriction_matrix, CharacterTable, TableCache};
use crate::error::{Error, Result};
use crate::group::abelian::AbelianGroup;
use crate::group::{orbit_count, semidirect_product, FiniteGroup, SemidirectProduct, SigmaAction, DEFAULT_ORDER_CAP};
use crate::lp::{solve_lp, LinearProgram, LpResult};
use crate::rational;

#[derive(Clone, Debug)]
pub struct EpsilonProgram {
    pub product: SemidirectProduct,
    pub table_big: Arc<CharacterTable>,
    pub table_small: Arc<CharacterTable>,
    /// `restriction[j][i]` = ⟨Res χ_i, ψ_j⟩.
    pub restriction: Vec<Vec<usize>>,
    pub coset: Vec<usize>,
    pub degrees_small: Vec<usize>,
    pub lp: LinearProgram,
}

/// ε(G, Σ) with an optimal v in the irreducible basis of G⋊Σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon {
    #[serde(with = "rational")]
    pub value: BigRational,
    #[serde(with = "rational::vec")]
    pub certificate: Vec<BigRational>,
}

/// Knobs for building the program.
#[derive(Clone, Debug, Default)]
pub struct BuildOptions<'a> {
    pub cache: Option<&'a TableCache>,
    /// Cap on |G⋊Σ|; [`DEFAULT_ORDER_CAP`] when `None`.
    pub order_cap: Option<usize>,
    /// A table of G to reuse; ignored unless it is in the program's prime.
    pub small_table: Option<Arc<CharacterTable>>,
}

/// The prime shared by the tables of G⋊Σ and G: the default prime of G⋊Σ.
pub fn epsilon_prime(g: &FiniteGroup, sigma: &SigmaAction, order_cap: usize) -> Result<u64> {
    default_prime(&semidirect_product(g, sigma, order_cap)?.group)
}

pub fn build_epsilon_program(g: &FiniteGroup, sigma: &SigmaAction) -> Result<EpsilonProgram> {
    build_epsilon_program_with(g, sigma, &BuildOptions::default())
}

pub fn build_epsilon_program_with(g: &FiniteGroup, sigma: &SigmaAction, opts: &BuildOptions) -> Result<EpsilonProgram> {
    let cap = opts.order_cap.unwrap_or(DEFAULT_ORDER_CAP);
    let product = semidirect_product(g, sigma, cap)?;
    let big_group = Arc::new(product.group.clone());
    let small_group = Arc::new(g.clone());
    let prime = default_prime(&big_group)?;
    let table = |grp: Arc<FiniteGroup>| match opts.cache {
        Some(c) => c.character_table_with_prime(grp, prime),
        None => crate::characters::character_table_with_prime(grp, prime),
    };
    let big = Arc::new(table(big_group)?);
    let small = match &opts.small_table {
        Some(t) if t.prime() == prime && t.group().as_ref() == g => t.clone(),
        _ => Arc::new(table(small_group)?),
    };
    let restriction = restriction_matrix(&big, &small, &product.embed_g)?;
    let coset = coset_character(&big, &product.embed_sigma)?;
    let degrees_small = small.degrees().to_vec();
    let lp = LinearProgram::new(
        coset.iter().map(|&c| rational::int(c as i64)).collect(),
        restriction
            .iter()
            .map(|row| row.iter().map(|&v| rational::int(v as i64)).collect())
            .collect(),
        degrees_small.iter().map(|&d| rational::int(d as i64)).collect(),
    )?;
    Ok(EpsilonProgram {
        product,
        table_big: big,
        table_small: small,
        restriction,
        coset,
        degrees_small,
        lp,
    })
}

impl EpsilonProgram {
    pub fn solve(&self) -> Result<Epsilon> {
        match solve_lp(&self.lp) {
            LpResult::Optimal { value, optimizer } => Ok(Epsilon { value, certificate: optimizer }),
            other => Err(Error::Internal(format!("epsilon program is not optimal: {other:?}"))),
        }
    }

    /// Optimum with the bound deg ψ_j replaced by `ceilings[j]`.
    pub fn solve_refined(&self, ceilings: &[i64]) -> Result<BigRational> {
        if ceilings.len() != self.degrees_small.len() {
            return Err(Error::InvalidArgument(format!(
                "{} ceilings for {} irreducibles of G",
                ceilings.len(),
                self.degrees_small.len()
            )));
        }
        if let Some(&c) = ceilings.iter().find(|&&c| c < 0) {
            return Err(Error::InvalidArgument(format!("negative ceiling {c}")));
        }
        let lp = self.lp.with_bounds(ceilings.iter().map(|&c| rational::int(c)).collect())?;
        match solve_lp(&lp) {
            LpResult::Optimal { value, .. } => Ok(value),
            other => Err(Error::Internal(format!("refined epsilon program is not optimal: {other:?}"))),
        }
    }
}

pub fn epsilon(g: &FiniteGroup, sigma: &SigmaAction) -> Result<Epsilon> {
    build_epsilon_program(g, sigma)?.solve()
}

pub fn epsilon_refined(g: &FiniteGroup, sigma: &SigmaAction, ceilings: &[i64]) -> Result<BigRational> {
    build_epsilon_program(g, sigma)?.solve_refined(ceilings)
}

/// In-process memo of ε keyed by the group's hash and the set of Σ's
/// element permutations.
#[derive(Default)]
pub struct EpsilonCache {
    map: Mutex<HashMap<(String, Vec<Vec<usize>>), Epsilon>>,
}

impl EpsilonCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(g: &FiniteGroup, sigma: &SigmaAction) -> (String, Vec<Vec<usize>>) {
        let mut perms: Vec<Vec<usize>> = sigma.elements().iter().map(|a| a.images()).collect();
        perms.sort();
        (g.canonical_hash(), perms)
    }

    pub fn get_or_compute(&self, g: &FiniteGroup, sigma: &SigmaAction, opts: &BuildOptions) -> Result<Epsilon> {
        let key = Self::key(g, sigma);
        if let Some(e) = self.map.lock().expect("epsilon cache poisoned").get(&key) {
            return Ok(e.clone());
        }
        let e = build_epsilon_program_with(g, sigma, opts)?.solve()?;
        self.map.lock().expect("epsilon cache poisoned").insert(key, e.clone());
        Ok(e)
    }

    pub fn insert(&self, g: &FiniteGroup, sigma: &SigmaAction, e: Epsilon) {
        self.map.lock().expect("epsilon cache poisoned").insert(Self::key(g, sigma), e);
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("epsilon cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One (G, ⟨σ⟩) instance of the abelian comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianCase {
    pub group: String,
    pub order: usize,
    pub sigma_order: usize,
    pub generator: Vec<usize>,
    #[serde(with = "rational")]
    pub epsilon: BigRational,
    pub orbit_count: usize,
}

impl AbelianCase {
    pub fn agrees(&self) -> bool {
        self.epsilon == rational::int(self.orbit_count as i64)
    }
}

/// ε and O for one representative of every conjugacy class of cyclic
/// subgroups of Aut(A). Both sides are invariant under conjugating Σ, so
/// this covers every single-generator Σ.
pub fn abelian_cases(a: &AbelianGroup, cache: Option<&TableCache>) -> Result<Vec<AbelianCase>> {
    let g = a.group();
    let opts = BuildOptions { cache, ..Default::default() };
    a.cyclic_automorphism_classes()
        .into_iter()
        .map(|sigma_gen| {
            let sigma = SigmaAction::from_automorphisms(g, vec![sigma_gen.clone()])?;
            let e = build_epsilon_program_with(g, &sigma, &opts)?.solve()?;
            Ok(AbelianCase {
                group: a.name(),
                order: g.order(),
                sigma_order: sigma.order(),
                generator: sigma_gen.images(),
                epsilon: e.value,
                orbit_count: orbit_count(g, &sigma),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{sigma_subgroup, GroupSpec};
    use rational::int;

    fn group(name: &str) -> FiniteGroup {
        GroupSpec::parse(name).unwrap().build().unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = group("trivial");
        let p = build_epsilon_program(&g, &SigmaAction::trivial(&g)).unwrap();
        assert_eq!(p.lp, LinearProgram::from_integers(&[1], &[vec![1]], &[1]).unwrap());
        assert_eq!(p.solve().unwrap().value, int(1));
    }

    #[test]
    fn cyclic_three_inversion() {
        let g = group("cyclic 3");
        let sigma = sigma_subgroup(&g, &[vec![0, 2, 1]]).unwrap();
        let p = build_epsilon_program(&g, &sigma).unwrap();
        assert_eq!(p.table_big.degrees(), &[1, 1, 2]);
        // Rows: trivial of C3, then the two nontrivial characters.
        assert_eq!(p.restriction, vec![vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]);
        assert_eq!(p.coset, vec![1, 0, 1]);
        let e = p.solve().unwrap();
        assert_eq!(e.value, int(2));
        assert_eq!(e.certificate, vec![int(1), int(0), int(1)]);
        assert_eq!(orbit_count(&g, &sigma), 2);
    }

    #[test]
    fn trivial_sigma_gives_order() {
        for name in ["symmetric 3", "quaternion 8", "dihedral 5", "cyclic 6"] {
            let g = group(name);
            let p = build_epsilon_program(&g, &SigmaAction::trivial(&g)).unwrap();
            let degs: Vec<i64> = p.table_small.degrees().iter().map(|&d| d as i64).collect();
            assert_eq!(p.lp.objective(), degs.iter().map(|&d| int(d)).collect::<Vec<_>>(), "{name}");
            assert_eq!(p.solve().unwrap().value, int(g.order() as i64), "{name}");
        }
    }

    #[test]
    fn refined_scaling() {
        let g = group("cyclic 5");
        let sigma = sigma_subgroup(&g, &[vec![0, 2, 4, 1, 3]]).unwrap();
        let p = build_epsilon_program(&g, &sigma).unwrap();
        let eps = p.solve().unwrap().value;
        assert_eq!(eps, int(2));
        let degs: Vec<i64> = p.degrees_small.iter().map(|&d| d as i64).collect();
        assert_eq!(p.solve_refined(&degs).unwrap(), eps);
        assert_eq!(p.solve_refined(&vec![0; degs.len()]).unwrap(), int(0));
        let twice: Vec<i64> = degs.iter().map(|d| 2 * d).collect();
        assert_eq!(p.solve_refined(&twice).unwrap(), eps * int(2));
        assert!(p.solve_refined(&[-1, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn nonabelian_with_inner_sigma() {
        // Σ = Inn(S3): ε ≥ 1 and the certificate is feasible.
        let g = group("symmetric 3");
        let gens: Vec<Vec<usize>> = (0..6)
            .map(|h| (0..6).map(|x| g.mul(g.mul(h, x), g.inv(h))).collect())
            .collect();
        let sigma = sigma_subgroup(&g, &gens).unwrap();
        let p = build_epsilon_program(&g, &sigma).unwrap();
        let e = p.solve().unwrap();
        assert!(e.value >= int(1));
        assert!(p.lp.is_feasible(&e.certificate));
    }

    #[test]
    fn memo_reuses_results() {
        let cache = EpsilonCache::new();
        let g = group("cyclic 4");
        let s = SigmaAction::trivial(&g);
        let a = cache.get_or_compute(&g, &s, &BuildOptions::default()).unwrap();
        let b = cache.get_or_compute(&g, &s, &BuildOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn small_abelian_sweep() {
        for factors in [vec![4], vec![2, 2], vec![3, 3], vec![2, 4]] {
            let a = AbelianGroup::new(&factors).unwrap();
            for case in abelian_cases(&a, None).unwrap() {
                assert!(case.agrees(), "{case:?}");
            }
        }
    }
}
