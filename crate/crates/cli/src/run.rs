//! Mode dispatch and the sweep driver.

use std::path::PathBuf;

use mwbound::bounds::{compute_bounds_with, conductor_discriminant, BoundOptions, BoundReport};
use mwbound::characters::TableCache;
use mwbound::ellenberg::{build_epsilon_program_with, BuildOptions, EpsilonCache};
use mwbound::geometry::{chi_g_constant_sheaf, riemann_hurwitz_genus, PairedSpec};
use mwbound::group::abelian::abelian_groups_of_order;
use mwbound::group::{orbit_count, SigmaAction};
use mwbound::rational::{self, int};
use mwbound::sample::{random_spec, GroupPool, SpecLimits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Mode, RunConfig, SweepConfig};
use crate::error::CliError;
use crate::presets::{surface_preset, SURFACE_PRESETS};
use crate::report::{BoundsOutput, CheckTally, EpsilonOutput, Report, SurfaceSummary, SweepOutput, ValidateOutput};

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub refined: bool,
    pub cache_dir: Option<PathBuf>,
}

impl RunOptions {
    fn cache(&self) -> Option<TableCache> {
        self.cache_dir.as_ref().map(TableCache::new)
    }
}

/// A finished run. `code` is non-zero when a sweep found violations.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

pub fn execute(cfg: &RunConfig, mode: Mode, opts: &RunOptions) -> Result<Outcome, CliError> {
    let cache = opts.cache();
    let report = match mode {
        Mode::Bounds => Report::Bounds(bounds(cfg, opts.refined, cache.as_ref())?),
        Mode::Epsilon => Report::Epsilon(epsilon(cfg, cache.as_ref())?),
        Mode::Validate => Report::Validate(validate(cfg, cache.as_ref())?),
        Mode::Sweep => {
            let s = sweep(&cfg.sweep.clone().unwrap_or_default(), cache.as_ref())?;
            let code = if s.violations() > 0 { 3 } else { 0 };
            return Ok(Outcome { report: Report::Sweep(s), code });
        }
    };
    Ok(Outcome { report, code: 0 })
}

pub fn bounds(cfg: &RunConfig, refined: bool, cache: Option<&TableCache>) -> Result<BoundsOutput, CliError> {
    let r = cfg.resolve_spec(cache)?;
    let spec = r.spec.expect("resolve_spec yields a spec");
    let opts = BoundOptions { refined, cache, epsilon_cache: None, order_cap: Some(cfg.order_cap()) };
    Ok(BoundsOutput { group: r.name, report: compute_bounds_with(&spec, &opts)? })
}

pub fn epsilon(cfg: &RunConfig, cache: Option<&TableCache>) -> Result<EpsilonOutput, CliError> {
    let r = cfg.resolve_action()?;
    let opts = BuildOptions { cache, order_cap: Some(cfg.order_cap()), small_table: None };
    let p = build_epsilon_program_with(&r.group, &r.sigma, &opts)?;
    let e = p.solve()?;
    let orbits = orbit_count(&r.group, &r.sigma);
    let abelian = r.group.is_abelian();
    if abelian && e.value != int(orbits as i64) {
        return Err(CliError::Internal(format!(
            "abelian group with ε = {} but O = {orbits}",
            rational::display(&e.value)
        )));
    }
    Ok(EpsilonOutput {
        group: r.name,
        group_order: r.group.order(),
        sigma_order: r.sigma.order(),
        abelian,
        product_degrees: p.table_big.degrees().to_vec(),
        group_degrees: p.degrees_small.clone(),
        restriction: p.restriction.clone(),
        coset: p.coset.clone(),
        lp: p.lp.clone(),
        epsilon: e.value,
        certificate: e.certificate,
        orbit_count: orbits,
    })
}

pub fn validate(cfg: &RunConfig, cache: Option<&TableCache>) -> Result<ValidateOutput, CliError> {
    if !cfg.has_surface() {
        let r = cfg.resolve_action()?;
        mwbound::ellenberg::epsilon_prime(&r.group, &r.sigma, cfg.order_cap())?;
        return Ok(ValidateOutput {
            group: r.name,
            group_order: r.group.order(),
            sigma_order: r.sigma.order(),
            surface: None,
            warnings: Vec::new(),
        });
    }
    let r = cfg.resolve_spec(cache)?;
    let spec = r.spec.as_ref().expect("resolve_spec yields a spec");
    let cd = conductor_discriminant(spec.surface())?;
    Ok(ValidateOutput {
        group: r.name.clone(),
        group_order: r.group.order(),
        sigma_order: r.sigma.order(),
        surface: Some(SurfaceSummary {
            base_genus: spec.base_genus(),
            cover_genus: riemann_hurwitz_genus(spec.cover(), spec.base_genus())?,
            c_e: cd.c_e,
            d_e: cd.d_e,
            deg_s: spec.cover().ramification_degree(),
            bad_fibers: spec.surface().bad_fibers.clone(),
            branch_points: spec.cover().branch_points().clone(),
        }),
        warnings: spec.warnings()?,
    })
}

/// Outcome of one sweep case: per-check verdicts (`None` when a check does
/// not apply) and a description of the first failure.
struct CaseResult {
    verdicts: Vec<Option<bool>>,
    failure: Option<String>,
}

fn tally(names: &[&str], parameters: SweepConfig, results: Vec<CaseResult>) -> SweepOutput {
    let mut checks: Vec<CheckTally> =
        names.iter().map(|n| CheckTally { name: n.to_string(), passed: 0, failed: 0 }).collect();
    let mut failures = Vec::new();
    for r in &results {
        for (c, v) in checks.iter_mut().zip(&r.verdicts) {
            match v {
                Some(true) => c.passed += 1,
                Some(false) => c.failed += 1,
                None => {}
            }
        }
        if let Some(f) = &r.failure {
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(f.clone());
            }
        }
    }
    SweepOutput { parameters, cases: results.len(), checks, failures }
}

pub fn sweep(cfg: &SweepConfig, cache: Option<&TableCache>) -> Result<SweepOutput, CliError> {
    match *cfg {
        SweepConfig::Abelian { max_order } => abelian_sweep(cfg, max_order, cache),
        SweepConfig::Random { count, seed, max_order, max_fibers, max_branch, max_genus } => {
            let limits = SpecLimits { max_genus, max_fibers, max_branch };
            random_sweep(cfg, count, seed, max_order, limits, cache)
        }
        SweepConfig::Presets => preset_sweep(cfg, cache),
    }
}

fn abelian_sweep(cfg: &SweepConfig, max_order: usize, cache: Option<&TableCache>) -> Result<SweepOutput, CliError> {
    let mut groups = Vec::new();
    for n in 1..=max_order {
        groups.extend(abelian_groups_of_order(n)?);
    }
    let cases: Vec<(usize, mwbound::group::Automorphism)> = groups
        .iter()
        .enumerate()
        .flat_map(|(i, a)| a.cyclic_automorphism_classes().into_iter().map(move |s| (i, s)))
        .collect();
    let opts = BuildOptions { cache, ..Default::default() };
    let results: Vec<CaseResult> = cases
        .par_iter()
        .map(|(i, gen)| {
            let a = &groups[*i];
            let g = a.group();
            let outcome = SigmaAction::from_automorphisms(g, vec![gen.clone()])
                .and_then(|sigma| Ok((build_epsilon_program_with(g, &sigma, &opts)?.solve()?, orbit_count(g, &sigma))));
            match outcome {
                Ok((e, o)) => {
                    let ok = e.value == int(o as i64);
                    CaseResult {
                        verdicts: vec![Some(true), Some(ok)],
                        failure: (!ok).then(|| {
                            format!("{} with generator {:?}: ε = {}, O = {o}", a.name(), gen.images(), rational::display(&e.value))
                        }),
                    }
                }
                Err(err) => CaseResult {
                    verdicts: vec![Some(false), None],
                    failure: Some(format!("{} with generator {:?}: {err}", a.name(), gen.images())),
                },
            }
        })
        .collect();
    Ok(tally(&["ε solved", "ε = O"], cfg.clone(), results))
}

const RANDOM_CHECKS: &[&str] = &[
    "report computed",
    "thm11 <= ellenberg",
    "thm11 <= five_sixths",
    "cor12 = thm11 for abelian G",
    "dim χ_G = 2 - 2g′",
    "Δ_triv χ_G = 2 - 2g",
    "Σ deg(α)·B_α = MW class dimension",
    "B_α <= deg(α)·N",
];

fn random_checks(spec: &PairedSpec, r: &BoundReport) -> Result<Vec<Option<bool>>, mwbound::Error> {
    let b = &r.bounds;
    let chi = chi_g_constant_sheaf(spec.cover(), spec.base_genus())?;
    let degrees = &r.degrees;
    let weighted: i64 = r.per_alpha.iter().zip(degrees).map(|(b, &d)| b * d as i64).sum();
    Ok(vec![
        Some(true),
        Some(b.thm11.raw <= b.ellenberg.raw),
        Some(b.thm11.raw <= b.five_sixths.raw),
        b.cor12.as_ref().map(|c| c.raw == b.thm11.raw),
        Some(chi.dimension() == 2 - 2 * r.cover_genus as i64),
        Some(chi.coeffs()[0] == 2 - 2 * r.base_genus as i64),
        Some(weighted == r.classes.mw_dimension),
        Some(r.per_alpha.iter().zip(degrees).all(|(&b, &d)| b <= d as i64 * r.n)),
    ])
}

fn random_sweep(
    cfg: &SweepConfig,
    count: usize,
    seed: u64,
    max_order: usize,
    limits: SpecLimits,
    cache: Option<&TableCache>,
) -> Result<SweepOutput, CliError> {
    let pool = GroupPool::new(max_order)?;
    let eps = EpsilonCache::new();
    let opts = BoundOptions { epsilon_cache: Some(&eps), cache, ..Default::default() };
    let results: Vec<CaseResult> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let computed = random_spec(&pool, limits, &mut rng).and_then(|(name, spec)| {
                let r = compute_bounds_with(&spec, &opts)?;
                Ok((name, random_checks(&spec, &r)?))
            });
            match computed {
                Ok((name, verdicts)) => {
                    let failure = verdicts
                        .iter()
                        .position(|v| *v == Some(false))
                        .map(|k| format!("case {i} ({name}): {}", RANDOM_CHECKS[k]));
                    CaseResult { verdicts, failure }
                }
                Err(e) => {
                    let mut verdicts = vec![None; RANDOM_CHECKS.len()];
                    verdicts[0] = Some(false);
                    CaseResult { verdicts, failure: Some(format!("case {i}: {e}")) }
                }
            }
        })
        .collect();
    Ok(tally(RANDOM_CHECKS, cfg.clone(), results))
}

const PRESET_CHECKS: &[&str] = &["report computed", "H¹(R¹) class >= 0", "MW quotient class >= 0", "thm11 <= ellenberg"];

fn preset_sweep(cfg: &SweepConfig, cache: Option<&TableCache>) -> Result<SweepOutput, CliError> {
    let results: Vec<CaseResult> = SURFACE_PRESETS
        .par_iter()
        .map(|(name, _)| match surface_preset(name).and_then(|c| bounds(&c, false, cache)) {
            Ok(out) => {
                let r = &out.report;
                let verdicts = vec![
                    Some(true),
                    Some(r.classes.h1_r1.iter().all(|&c| c >= 0)),
                    Some(r.classes.mw_quotient.iter().all(|&c| c >= 0)),
                    Some(r.bounds.thm11.raw <= r.bounds.ellenberg.raw),
                ];
                let failure = verdicts
                    .iter()
                    .position(|v| *v == Some(false))
                    .map(|k| format!("{name}: {}", PRESET_CHECKS[k]));
                CaseResult { verdicts, failure }
            }
            Err(e) => {
                let mut verdicts = vec![None; PRESET_CHECKS.len()];
                verdicts[0] = Some(false);
                CaseResult { verdicts, failure: Some(format!("{name}: {e}")) }
            }
        })
        .collect();
    Ok(tally(PRESET_CHECKS, cfg.clone(), results))
}
