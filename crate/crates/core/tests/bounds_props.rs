use mwbound::bounds::{compute_bounds_with, per_alpha_ceilings, BoundOptions};
use mwbound::ellenberg::{build_epsilon_program, EpsilonCache};
use mwbound::geometry::mw_quotient_class;
use mwbound::rational::{frac, int};
use mwbound::sample::{random_spec, GroupPool, SpecLimits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn bound_ordering_and_ceilings_on_random_specs() {
    let pool = GroupPool::new(24).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let eps = EpsilonCache::new();
    let opts = BoundOptions { epsilon_cache: Some(&eps), ..Default::default() };
    for _ in 0..1000 {
        let (name, spec) = random_spec(&pool, SpecLimits::default(), &mut rng).unwrap();
        let r = compute_bounds_with(&spec, &opts).unwrap();
        let b = &r.bounds;
        assert!(b.thm11.raw <= b.ellenberg.raw, "{name}: {r:?}");
        assert!(b.thm11.raw <= b.five_sixths.raw, "{name}: {r:?}");
        if r.flags.abelian {
            assert_eq!(b.cor12.as_ref().unwrap().raw, b.thm11.raw);
        }
        let t = spec.cover().table();
        let mw = mw_quotient_class(&spec).unwrap();
        let weighted: i64 = r.per_alpha.iter().zip(t.degrees()).map(|(b, &d)| b * d as i64).sum();
        assert_eq!(weighted, mw.dimension());
        for (a, &b_alpha) in r.per_alpha.iter().enumerate() {
            assert!(b_alpha <= t.degree(a) as i64 * r.n, "{name}: α={a}");
        }
        assert!(r.epsilon >= int(1));
    }
}

#[test]
fn refined_epsilon_is_monotone_in_ceilings() {
    let pool = GroupPool::new(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let (_, spec) = random_spec(&pool, SpecLimits::default(), &mut rng).unwrap();
        let p = build_epsilon_program(spec.cover().group(), spec.cover().sigma()).unwrap();
        let base: Vec<i64> = per_alpha_ceilings(&spec).unwrap().into_iter().map(|b| b.max(0)).collect();
        let lo = p.solve_refined(&base).unwrap();
        let mut bumped = base.clone();
        let j = rng.gen_range(0..bumped.len());
        bumped[j] += rng.gen_range(1..4);
        assert!(p.solve_refined(&bumped).unwrap() >= lo);
        let eps = p.solve().unwrap().value;
        let ratio = base
            .iter()
            .zip(&p.degrees_small)
            .map(|(&c, &d)| frac(c, d as i64))
            .max()
            .unwrap();
        assert!(lo <= eps * ratio);
    }
}

#[test]
fn refined_report_is_flagged_heuristic() {
    let pool = GroupPool::new(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (_, spec) = random_spec(&pool, SpecLimits::default(), &mut rng).unwrap();
    let r = compute_bounds_with(&spec, &BoundOptions { refined: true, ..Default::default() }).unwrap();
    assert!(r.refined.unwrap().heuristic);
}
