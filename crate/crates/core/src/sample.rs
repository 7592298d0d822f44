//! Random valid inputs for sweeps and property tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{riemann_hurwitz_genus, CoverSpec, KodairaKind, PairedSpec, SurfaceSpec};
use crate::group::{group_preset_names, Automorphism, FiniteGroup, GroupSpec, SigmaAction, DEFAULT_ORDER_CAP};

/// Extra products used to reach orders between 36 and 60.
const EXTRA_GROUPS: &[&str] = &[
    "symmetric 3 x cyclic 2",
    "quaternion 8 x cyclic 3",
    "dihedral 4 x cyclic 5",
    "symmetric 4 x cyclic 2",
    "dihedral 6 x cyclic 5",
    "symmetric 3 x cyclic 7",
    "elementary abelian 2^2 x cyclic 9",
];

/// Prebuilt groups with order ≤ `max_order`, keyed by preset name.
pub struct GroupPool {
    groups: Vec<(String, Arc<FiniteGroup>)>,
}

impl GroupPool {
    pub fn new(max_order: usize) -> Result<Self> {
        let mut groups = Vec::new();
        for name in group_preset_names().iter().map(String::as_str).chain(EXTRA_GROUPS.iter().copied()) {
            let g = GroupSpec::parse(name)?.build()?;
            if g.order() <= max_order {
                groups.push((name.to_string(), Arc::new(g)));
            }
        }
        if groups.is_empty() {
            return Err(Error::InvalidArgument(format!("no preset group of order <= {max_order}")));
        }
        Ok(GroupPool { groups })
    }

    pub fn groups(&self) -> &[(String, Arc<FiniteGroup>)] {
        &self.groups
    }

    pub fn choose<R: Rng>(&self, rng: &mut R) -> &(String, Arc<FiniteGroup>) {
        self.groups.choose(rng).expect("pool is non-empty")
    }
}

/// Σ trivial, or generated by one power map (abelian G) or one inner
/// automorphism.
pub fn random_sigma<R: Rng>(g: &FiniteGroup, rng: &mut R) -> Result<SigmaAction> {
    if rng.gen_bool(0.4) {
        return Ok(SigmaAction::trivial(g));
    }
    let auto = if g.is_abelian() {
        let e = g.exponent();
        let units: Vec<usize> = (1..=e.max(1)).filter(|&k| num_integer::gcd(k, e) == 1).collect();
        Automorphism::power_map(g, *units.choose(rng).expect("1 is a unit"))?
    } else {
        Automorphism::conjugation(g, rng.gen_range(0..g.order()))?
    };
    SigmaAction::from_automorphisms(g, vec![auto])
}

/// Fibers with Σ d_x ≡ 0 (mod 12) and Σ d_x ≥ 12.
pub fn random_fibers<R: Rng>(max_fibers: usize, rng: &mut R) -> BTreeMap<String, KodairaKind> {
    let catalog = KodairaKind::catalog(6);
    let count = rng.gen_range(1..=max_fibers.max(1));
    let mut kinds: Vec<KodairaKind> = (0..count - 1).map(|_| *catalog.choose(rng).expect("non-empty")).collect();
    let sum: u32 = kinds.iter().map(|k| k.fiber().d).sum();
    match (12 - sum % 12) % 12 {
        0 if sum >= 12 => kinds.push(*[KodairaKind::I(12), KodairaKind::IStar(6)].choose(rng).expect("non-empty")),
        0 => kinds.push(KodairaKind::I(12)),
        t => kinds.push(KodairaKind::I(t)),
    }
    kinds.into_iter().enumerate().map(|(i, k)| (format!("f{i}"), k)).collect()
}

/// A cover whose Riemann–Hurwitz genus is a non-negative integer.
pub fn random_cover<R: Rng>(
    g: &Arc<FiniteGroup>,
    sigma: &SigmaAction,
    base_genus: u32,
    max_branch: usize,
    rng: &mut R,
) -> Result<Option<CoverSpec>> {
    let nontrivial: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    for _ in 0..64 {
        let count = if nontrivial.is_empty() { 0 } else { rng.gen_range(0..=max_branch) };
        let branch: BTreeMap<String, usize> =
            (0..count).map(|i| (format!("b{i}"), *nontrivial.choose(rng).expect("non-empty"))).collect();
        if !euler_is_admissible(g, base_genus, &branch) {
            continue;
        }
        let cover = CoverSpec::with_cache(g.clone(), sigma.clone(), branch, None, DEFAULT_ORDER_CAP)?;
        debug_assert!(riemann_hurwitz_genus(&cover, base_genus).is_ok());
        return Ok(Some(cover));
    }
    Ok(None)
}

fn euler_is_admissible(g: &FiniteGroup, base_genus: u32, branch: &BTreeMap<String, usize>) -> bool {
    let n = g.order() as i64;
    let mut euler = n * (2 - 2 * base_genus as i64);
    for &h in branch.values() {
        euler -= n - n / g.element_order(h) as i64;
    }
    euler <= 2 && euler % 2 == 0
}

/// Limits for [`random_spec`].
#[derive(Clone, Copy, Debug)]
pub struct SpecLimits {
    pub max_genus: u32,
    pub max_fibers: usize,
    pub max_branch: usize,
}

impl Default for SpecLimits {
    fn default() -> Self {
        SpecLimits { max_genus: 3, max_fibers: 8, max_branch: 4 }
    }
}

/// A random valid [`PairedSpec`] over a group from `pool`, with the preset
/// name of the group.
pub fn random_spec<R: Rng>(pool: &GroupPool, limits: SpecLimits, rng: &mut R) -> Result<(String, PairedSpec)> {
    loop {
        let (name, g) = pool.choose(rng);
        let sigma = random_sigma(g, rng)?;
        let genus = rng.gen_range(0..=limits.max_genus);
        let Some(cover) = random_cover(g, &sigma, genus, limits.max_branch, rng)? else {
            continue;
        };
        let surface = SurfaceSpec::new(genus, random_fibers(limits.max_fibers, rng))?;
        return Ok((name.clone(), PairedSpec::new(surface, cover)?));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fibers_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let f = random_fibers(8, &mut rng);
            assert!(f.len() <= 8);
            SurfaceSpec::new(0, f).unwrap();
        }
    }

    #[test]
    fn specs_respect_limits() {
        let pool = GroupPool::new(24).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (_, s) = random_spec(&pool, SpecLimits::default(), &mut rng).unwrap();
            assert!(s.cover().group().order() <= 24);
            assert!(s.cover().ramification_degree() <= 4);
            assert!(s.surface().bad_fibers.len() <= 8);
        }
    }

    #[test]
    fn pool_reaches_sixty() {
        let pool = GroupPool::new(60).unwrap();
        assert!(pool.groups().iter().any(|(_, g)| g.order() == 60));
        assert!(pool.groups().iter().all(|(_, g)| g.order() <= 60));
    }
}
