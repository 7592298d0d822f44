use std::sync::Arc;

use mwbound::characters::{character_table, coset_character, paired_tables, restriction_matrix, TableCache};
use mwbound::group::{group_preset_names, semidirect_product, Automorphism, GroupSpec, SigmaAction};
use proptest::prelude::*;

#[test]
fn preset_tables_are_consistent_and_cache_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let mut checked = 0;
    for name in group_preset_names() {
        let g = Arc::new(GroupSpec::parse(&name).unwrap().build().unwrap());
        if g.order() > 120 {
            continue;
        }
        let t = character_table(g.clone()).unwrap();
        t.verify().unwrap();
        assert_eq!(t.num_irreducibles(), t.classes().len(), "{name}");
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<usize>(), g.order(), "{name}");
        assert_eq!(t.degree(0), 1);
        assert!(t.prime() > (g.order() * g.order()) as u64);
        assert_eq!((t.prime() - 1) % g.exponent() as u64, 0);
        cache.store(&t).unwrap();
        assert_eq!(cache.load(&g, t.prime()).unwrap(), t, "{name}");
        checked += 1;
    }
    assert!(checked > 50);
}

/// ⟨Res χ, ψ⟩ against ⟨χ, Ind ψ⟩, with Ind ψ computed by averaging over the
/// big group.
fn frobenius_check(name: &str, sigma_gens: &[Vec<usize>]) {
    let g = Arc::new(GroupSpec::parse(name).unwrap().build().unwrap());
    let sigma = mwbound::group::sigma_subgroup(&g, sigma_gens).unwrap();
    let sd = semidirect_product(&g, &sigma, 2000).unwrap();
    let big_group = Arc::new(sd.group.clone());
    let (big, small) = paired_tables(big_group.clone(), g.clone()).unwrap();
    let m = restriction_matrix(&big, &small, &sd.embed_g).unwrap();
    let f = big.field();
    let n_big = big_group.order();
    let mut in_h = vec![usize::MAX; n_big];
    for (x, &y) in sd.embed_g.iter().enumerate() {
        in_h[y] = x;
    }
    let inv_h = f.inv(g.order() as u64);
    for j in 0..small.num_irreducibles() {
        // Ind ψ(x) = (1/|H|) Σ_{y} ψ°(y x y⁻¹).
        let ind: Vec<u64> = (0..big.classes().len())
            .map(|c| {
                let x = big.classes().representative(c);
                let mut acc = 0u64;
                for y in 0..n_big {
                    let conj = big_group.mul(big_group.mul(y, x), big_group.inv(y));
                    if in_h[conj] != usize::MAX {
                        acc = f.add(acc, small.value_at(j, in_h[conj]));
                    }
                }
                f.mul(acc, inv_h)
            })
            .collect();
        for i in 0..big.num_irreducibles() {
            assert_eq!(big.inner_product(big.character(i), &ind).unwrap(), m[j][i], "{name} ψ{j} χ{i}");
        }
    }
    let c = coset_character(&big, &sd.embed_sigma).unwrap();
    let total: usize = c.iter().zip(big.degrees()).map(|(a, d)| a * d).sum();
    assert_eq!(total, g.order());
    for (ci, d) in c.iter().zip(big.degrees()) {
        assert!(ci <= d);
    }
}

#[test]
fn frobenius_reciprocity_spot_checks() {
    frobenius_check("cyclic 3", &[vec![0, 2, 1]]);
    frobenius_check("symmetric 3", &[]);
    let q = GroupSpec::parse("quaternion 8").unwrap().build().unwrap();
    frobenius_check("quaternion 8", &[Automorphism::conjugation(&q, 2).unwrap().images()]);
    let c = GroupSpec::parse("cyclic 7").unwrap().build().unwrap();
    frobenius_check("cyclic 7", &[Automorphism::power_map(&c, 3).unwrap().images()]);
}

#[test]
fn trivial_sigma_restriction_is_identity() {
    for name in ["symmetric 4", "dihedral 6", "cyclic 2 x cyclic 4"] {
        let g = Arc::new(GroupSpec::parse(name).unwrap().build().unwrap());
        let sd = semidirect_product(&g, &SigmaAction::trivial(&g), 2000).unwrap();
        let (big, small) = paired_tables(Arc::new(sd.group.clone()), g.clone()).unwrap();
        let m = restriction_matrix(&big, &small, &sd.embed_g).unwrap();
        let r = m.len();
        for j in 0..r {
            assert_eq!(m[j].iter().sum::<usize>(), 1, "{name}");
            let i = m[j].iter().position(|&v| v == 1).unwrap();
            assert_eq!(big.degree(i), small.degree(j));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_map_sigma_satisfies_frobenius(n in 2usize..20, k in 1usize..20) {
        prop_assume!(num_integer::gcd(n, k) == 1);
        let g = GroupSpec::parse(&format!("cyclic {n}")).unwrap().build().unwrap();
        let a = Automorphism::power_map(&g, k % n).unwrap();
        frobenius_check(&format!("cyclic {n}"), &[a.images()]);
    }
}
