//! Mordell–Weil rank bounds for E over the function field of C′.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::TableCache;
use crate::ellenberg::{build_epsilon_program_with, BuildOptions, Epsilon, EpsilonCache};
use crate::error::{Error, Result};
use crate::geometry::{
    chi_g_constant_sheaf, h1_r1, h2_dimension, mw_quotient_class, riemann_hurwitz_genus, KodairaKind, PairedSpec,
    SurfaceSpec,
};
use crate::group::orbit_count;
use crate::rational::{self, frac, int};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalExponents {
    pub kind: KodairaKind,
    pub c: u32,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorDiscriminant {
    pub c_e: i64,
    pub d_e: i64,
    pub local: BTreeMap<String, LocalExponents>,
}

/// (c_E, d_E) with the per-point breakdown; checks 12 | d_E, d_E ≥ 12 and
/// 1 ≤ c_E ≤ d_E.
pub fn conductor_discriminant(surface: &SurfaceSpec) -> Result<ConductorDiscriminant> {
    surface.validate()?;
    let local = surface
        .bad_fibers
        .iter()
        .map(|(x, &k)| {
            let f = k.fiber();
            (x.clone(), LocalExponents { kind: k, c: f.c, d: f.d })
        })
        .collect();
    Ok(ConductorDiscriminant { c_e: surface.conductor_degree(), d_e: surface.discriminant_degree(), local })
}

/// N = c_E − d_E/6 + 2g − 2 + deg S.
pub fn rank_multiplier(spec: &PairedSpec) -> i64 {
    let s = spec.surface();
    s.conductor_degree() - s.discriminant_degree() / 6 + 2 * spec.base_genus() as i64 - 2
        + spec.cover().ramification_degree() as i64
}

/// B_α = Δ_α of the Mordell–Weil quotient class, one per irreducible of G.
/// Cross-checked against deg α (c_E − d_E/6 + 2g − 2) + Σ_{x∈S} (deg α − dim α^{G_x}).
pub fn per_alpha_ceilings(spec: &PairedSpec) -> Result<Vec<i64>> {
    let mw = mw_quotient_class(spec)?;
    let s = spec.surface();
    let base = s.conductor_degree() - s.discriminant_degree() / 6 + 2 * spec.base_genus() as i64 - 2;
    let t = spec.cover().table();
    let inertia = spec.cover().inertia_subgroups();
    let mut out = Vec::with_capacity(t.num_irreducibles());
    for a in 0..t.num_irreducibles() {
        let deg = t.degree(a) as i64;
        let mut closed = deg * base;
        for (_, h) in &inertia {
            closed += deg - t.fixed_subspace_dim(a, h)? as i64;
        }
        let delta = mw.delta_multiplicity(a)?;
        if delta != closed {
            return Err(Error::Internal(format!(
                "ceiling for irreducible {a}: class gives {delta}, closed form gives {closed}"
            )));
        }
        out.push(delta);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    #[serde(with = "rational")]
    pub raw: BigRational,
    #[serde(with = "rational")]
    pub clamped: BigRational,
}

impl BoundValue {
    pub fn new(raw: BigRational) -> Self {
        let clamped = if raw.is_negative() { BigRational::zero() } else { raw.clone() };
        BoundValue { raw, clamped }
    }

    pub fn was_clamped(&self) -> bool {
        self.raw != self.clamped
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// ε(G,Σ)·N.
    pub thm11: BoundValue,
    /// O(G,Σ)·N, for abelian G.
    pub cor12: Option<BoundValue>,
    /// O(G,Σ)(c_E + 4g − 4), for abelian G and unramified covers.
    pub silverman: Option<BoundValue>,
    /// ε(G,Σ)(c_E + 4g − 4 + 2 deg S).
    pub ellenberg: BoundValue,
    /// ε(G,Σ)(5c_E/6 + 2g − 2 + deg S).
    pub five_sixths: BoundValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub abelian: bool,
    pub unramified: bool,
    pub disjoint: bool,
    /// Some raw bound or ceiling was negative and clamped to 0.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub chi_g: Vec<i64>,
    pub h1_r1: Vec<i64>,
    pub mw_quotient: Vec<i64>,
    pub mw_dimension: i64,
    pub h2_dimension: i64,
}

/// Optimum of the ε program with bounds B_α in place of deg ψ_j·N. Not
/// established as a rank bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedEpsilon {
    pub heuristic: bool,
    pub ceilings: Vec<i64>,
    #[serde(with = "rational")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group_order: usize,
    pub sigma_order: usize,
    pub degrees: Vec<usize>,
    #[serde(with = "rational")]
    pub epsilon: BigRational,
    #[serde(with = "rational::vec")]
    pub certificate: Vec<BigRational>,
    pub orbit_count: usize,
    pub base_genus: u32,
    pub cover_genus: u64,
    pub c_e: i64,
    pub d_e: i64,
    pub deg_s: usize,
    pub n: i64,
    pub bounds: Bounds,
    pub per_alpha: Vec<i64>,
    pub per_alpha_clamped: Vec<i64>,
    pub classes: Classes,
    pub flags: Flags,
    pub refined: Option<RefinedEpsilon>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Default)]
pub struct BoundOptions<'a> {
    pub refined: bool,
    pub cache: Option<&'a TableCache>,
    pub epsilon_cache: Option<&'a EpsilonCache>,
    pub order_cap: Option<usize>,
}

pub fn compute_bounds(spec: &PairedSpec) -> Result<BoundReport> {
    compute_bounds_with(spec, &BoundOptions::default())
}

pub fn compute_bounds_with(spec: &PairedSpec, opts: &BoundOptions) -> Result<BoundReport> {
    let cover = spec.cover();
    let g = cover.group();
    let sigma = cover.sigma();
    let cd = conductor_discriminant(spec.surface())?;
    let genus = spec.base_genus() as i64;
    let deg_s = cover.ramification_degree() as i64;
    let n = rank_multiplier(spec);

    let build = BuildOptions { cache: opts.cache, order_cap: opts.order_cap, small_table: Some(cover.table().clone()) };
    let (eps, program) = match (opts.epsilon_cache, opts.refined) {
        (Some(c), false) => (c.get_or_compute(g, sigma, &build)?, None),
        _ => {
            let p = build_epsilon_program_with(g, sigma, &build)?;
            let e: Epsilon = p.solve()?;
            if let Some(c) = opts.epsilon_cache {
                c.insert(g, sigma, e.clone());
            }
            (e, Some(p))
        }
    };
    let orbits = orbit_count(g, sigma);
    let abelian = g.is_abelian();
    if abelian && eps.value != int(orbits as i64) {
        return Err(Error::Internal(format!(
            "abelian group with ε = {} but O = {orbits}",
            rational::display(&eps.value)
        )));
    }

    let e = &eps.value;
    let o = int(orbits as i64);
    let bounds = Bounds {
        thm11: BoundValue::new(e * int(n)),
        cor12: abelian.then(|| BoundValue::new(&o * int(n))),
        silverman: (abelian && cover.is_unramified()).then(|| BoundValue::new(&o * int(cd.c_e + 4 * genus - 4))),
        ellenberg: BoundValue::new(e * int(cd.c_e + 4 * genus - 4 + 2 * deg_s)),
        five_sixths: BoundValue::new(e * (frac(5 * cd.c_e, 6) + int(2 * genus - 2 + deg_s))),
    };

    let chi = chi_g_constant_sheaf(cover, spec.base_genus())?;
    let h1 = h1_r1(spec)?;
    let mw = mw_quotient_class(spec)?;
    let per_alpha = per_alpha_ceilings(spec)?;
    let per_alpha_clamped: Vec<i64> = per_alpha.iter().map(|&b| b.max(0)).collect();

    let refined = match (opts.refined, &program) {
        (true, Some(p)) => {
            if p.table_small.as_ref() != cover.table().as_ref() {
                return Err(Error::Internal("ceilings and ε program use different tables of G".into()));
            }
            Some(RefinedEpsilon { heuristic: true, value: p.solve_refined(&per_alpha_clamped)?, ceilings: per_alpha_clamped.clone() })
        }
        _ => None,
    };

    let clamped = [&bounds.thm11, &bounds.ellenberg, &bounds.five_sixths]
        .into_iter()
        .chain(bounds.cor12.iter())
        .chain(bounds.silverman.iter())
        .any(BoundValue::was_clamped)
        || per_alpha.iter().any(|&b| b < 0);
    let mut notes = spec.warnings()?;
    if clamped {
        notes.push("negative raw values are clamped to 0 since ranks are non-negative".into());
    }
    if bounds.silverman.is_some() {
        notes.push("the Silverman bound was originally proved under an additional Tate-conjecture hypothesis, which is not modelled".into());
    }
    if refined.is_some() {
        notes.push("the refined ε value is heuristic: it is not known to bound the rank".into());
    }

    Ok(BoundReport {
        group_order: g.order(),
        sigma_order: sigma.order(),
        degrees: cover.table().degrees().to_vec(),
        epsilon: eps.value.clone(),
        certificate: eps.certificate.clone(),
        orbit_count: orbits,
        base_genus: spec.base_genus(),
        cover_genus: riemann_hurwitz_genus(cover, spec.base_genus())?,
        c_e: cd.c_e,
        d_e: cd.d_e,
        deg_s: cover.ramification_degree(),
        n,
        bounds,
        per_alpha,
        per_alpha_clamped,
        classes: Classes {
            chi_g: chi.coeffs().to_vec(),
            h1_r1: h1.coeffs().to_vec(),
            mw_dimension: mw.dimension(),
            mw_quotient: mw.coeffs().to_vec(),
            h2_dimension: h2_dimension(spec)?,
        },
        flags: Flags { abelian, unramified: cover.is_unramified(), disjoint: true, clamped },
        refined,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CoverSpec, SurfaceSpec};
    use crate::group::{GroupSpec, SigmaAction};
    use std::sync::Arc;

    fn numbered(count: usize, kind: KodairaKind) -> BTreeMap<String, KodairaKind> {
        (0..count).map(|i| (format!("p{i}"), kind)).collect()
    }

    fn spec(group: &str, genus: u32, fibers: BTreeMap<String, KodairaKind>, branch: &[(&str, usize)]) -> PairedSpec {
        let g = Arc::new(GroupSpec::parse(group).unwrap().build().unwrap());
        let s = SigmaAction::trivial(&g);
        let cover = CoverSpec::new(g, s, branch.iter().map(|(x, h)| (x.to_string(), *h)).collect()).unwrap();
        PairedSpec::new(SurfaceSpec::new(genus, fibers).unwrap(), cover).unwrap()
    }

    #[test]
    fn conductor_discriminant_examples() {
        let cd = |f| {
            let c = conductor_discriminant(&SurfaceSpec::new(0, f).unwrap()).unwrap();
            (c.c_e, c.d_e)
        };
        assert_eq!(cd(numbered(4, KodairaKind::I(3))), (4, 12));
        assert_eq!(cd(numbered(12, KodairaKind::I(1))), (12, 12));
        let mixed: BTreeMap<_, _> = [("a".to_string(), KodairaKind::IIStar), ("b".to_string(), KodairaKind::II)].into();
        assert_eq!(cd(mixed), (4, 12));
    }

    #[test]
    fn trivial_group_reports() {
        let r = compute_bounds(&spec("trivial", 0, numbered(4, KodairaKind::I(3)), &[])).unwrap();
        assert_eq!(r.bounds.thm11, BoundValue::new(int(0)));
        assert_eq!(r.per_alpha, vec![0]);
        let r = compute_bounds(&spec("trivial", 0, numbered(12, KodairaKind::I(1)), &[])).unwrap();
        assert_eq!(r.bounds.thm11.raw, int(8));
        assert_eq!(r.per_alpha, vec![8]);
        assert_eq!(r.bounds.silverman.as_ref().unwrap().raw, int(8));
    }

    #[test]
    fn branched_z3_hesse() {
        let r = compute_bounds_with(
            &spec("cyclic 3", 0, numbered(4, KodairaKind::I(3)), &[("a", 1), ("b", 1), ("c", 2)]),
            &BoundOptions { refined: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(r.epsilon, int(3));
        assert_eq!(r.n, 3);
        assert_eq!(r.bounds.thm11.raw, int(9));
        assert_eq!(r.bounds.cor12.as_ref().unwrap().raw, int(9));
        assert_eq!(r.bounds.ellenberg.raw, int(18));
        assert_eq!(r.bounds.five_sixths.raw, int(13));
        assert!(r.bounds.silverman.is_none());
        assert_eq!(r.per_alpha, vec![0, 3, 3]);
        assert_eq!(r.classes.mw_dimension, 6);
        let refined = r.refined.unwrap();
        assert!(refined.heuristic);
        assert_eq!(refined.value, int(6));
    }

    #[test]
    fn negative_multiplier_is_clamped() {
        // Trivial G over P^1 with one I18* fiber: N = 2 − 4 − 2 = −4.
        let fibers: BTreeMap<_, _> = [("a".to_string(), KodairaKind::IStar(18))].into();
        let r = compute_bounds(&spec("trivial", 0, fibers, &[])).unwrap();
        assert_eq!(r.n, -4);
        assert_eq!(r.bounds.thm11, BoundValue { raw: int(-4), clamped: int(0) });
        assert!(r.flags.clamped);
        assert_eq!(r.per_alpha_clamped, vec![0]);
    }

    #[test]
    fn report_json_round_trip() {
        let r = compute_bounds(&spec("symmetric 3", 1, numbered(12, KodairaKind::I(1)), &[])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<BoundReport>(&s).unwrap(), r);
        assert!(r.bounds.cor12.is_none());
        assert_eq!(r.epsilon, int(6));
    }
}
