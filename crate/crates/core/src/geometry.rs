//! Base curve, Galois cover and elliptic surface data, and the classes in
//! K(ℂ[G]) built from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::characters::{CharacterTable, TableCache};
use crate::ellenberg::epsilon_prime;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SigmaAction, DEFAULT_ORDER_CAP};
use crate::rep_ring::VirtualCharacter;
use crate::sheaf::{gos_euler, isotypic_sheaf};

/// The shipped copy of the Kodaira table.
pub const KODAIRA_TABLE_JSON: &str = include_str!("../data/kodaira.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaKind {
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

/// Local invariants of a singular fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaFiber {
    pub kind: KodairaKind,
    /// Valuation of the minimal discriminant.
    pub d: u32,
    /// Conductor exponent.
    pub c: u32,
    /// Number of irreducible components.
    pub m: u32,
}

impl KodairaKind {
    pub fn new_i(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSurface("I_0 is a smooth fiber".into()));
        }
        Ok(KodairaKind::I(n))
    }

    pub fn fiber(self) -> KodairaFiber {
        use KodairaKind::*;
        let (d, c, m) = match self {
            I(n) => (n, 1, n),
            II => (2, 2, 1),
            III => (3, 2, 2),
            IV => (4, 2, 3),
            I0Star => (6, 2, 5),
            IStar(n) => (6 + n, 2, 5 + n),
            IVStar => (8, 2, 7),
            IIIStar => (9, 2, 8),
            IIStar => (10, 2, 9),
        };
        KodairaFiber { kind: self, d, c, m }
    }

    /// (kind name, parameter) as used in config files.
    pub fn parts(self) -> (&'static str, Option<u32>) {
        use KodairaKind::*;
        match self {
            I(n) => ("I_n", Some(n)),
            II => ("II", None),
            III => ("III", None),
            IV => ("IV", None),
            I0Star => ("I0*", None),
            IStar(n) => ("I_n*", Some(n)),
            IVStar => ("IV*", None),
            IIIStar => ("III*", None),
            IIStar => ("II*", None),
        }
    }

    pub fn from_parts(kind: &str, n: Option<u32>) -> Result<Self> {
        use KodairaKind::*;
        let need_n = || n.ok_or_else(|| Error::InvalidSurface(format!("fiber kind {kind} needs a parameter n")));
        let no_n = |k: KodairaKind| match n {
            None => Ok(k),
            Some(_) => Err(Error::InvalidSurface(format!("fiber kind {kind} takes no parameter"))),
        };
        match kind {
            "I_n" | "In" => KodairaKind::new_i(need_n()?),
            "I_n*" | "In*" => Ok(match need_n()? {
                0 => I0Star,
                n => IStar(n),
            }),
            "II" => no_n(II),
            "III" => no_n(III),
            "IV" => no_n(IV),
            "I0*" | "I_0*" => no_n(I0Star),
            "IV*" => no_n(IVStar),
            "III*" => no_n(IIIStar),
            "II*" => no_n(IIStar),
            _ => Err(Error::InvalidSurface(format!("unknown Kodaira kind {kind:?}"))),
        }
    }

    /// Every kind with parameter up to `max_n`.
    pub fn catalog(max_n: u32) -> Vec<KodairaKind> {
        use KodairaKind::*;
        let mut v: Vec<KodairaKind> = (1..=max_n).map(I).collect();
        v.extend([II, III, IV, I0Star]);
        v.extend((1..=max_n).map(IStar));
        v.extend([IVStar, IIIStar, IIStar]);
        v
    }
}

impl fmt::Display for KodairaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaKind::I(n) => write!(f, "I{n}"),
            KodairaKind::IStar(n) => write!(f, "I{n}*"),
            other => f.write_str(other.parts().0),
        }
    }
}

/// Accepts the compact names written by `Display` (`I3`, `I0*`, `I2*`, `IV*`)
/// as well as `I_3` and `I_2*`.
impl FromStr for KodairaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t.strip_prefix("I_").or_else(|| t.strip_prefix('I')).unwrap_or("");
        let (digits, star) = match body.strip_suffix('*') {
            Some(d) => (d, true),
            None => (body, false),
        };
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let n: u32 = digits
                .parse()
                .map_err(|_| Error::InvalidSurface(format!("bad fiber parameter in {s:?}")))?;
            return KodairaKind::from_parts(if star { "I_n*" } else { "I_n" }, Some(n));
        }
        KodairaKind::from_parts(t, None)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KindRepr {
    Short(String),
    Full {
        kind: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
}

impl Serialize for KodairaKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, n) = self.parts();
        KindRepr::Full { kind: kind.to_string(), n }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KodairaKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match KindRepr::deserialize(d)? {
            KindRepr::Short(s) => s.parse().map_err(D::Error::custom),
            KindRepr::Full { kind, n } => KodairaKind::from_parts(&kind, n).map_err(D::Error::custom),
        }
    }
}

/// The elliptic surface over the base curve C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub base_genus: u32,
    pub bad_fibers: BTreeMap<String, KodairaKind>,
}

impl SurfaceSpec {
    pub fn new(base_genus: u32, bad_fibers: BTreeMap<String, KodairaKind>) -> Result<Self> {
        let s = SurfaceSpec { base_genus, bad_fibers };
        s.validate()?;
        Ok(s)
    }

    /// c_E = Σ c_x.
    pub fn conductor_degree(&self) -> i64 {
        self.bad_fibers.values().map(|k| k.fiber().c as i64).sum()
    }

    /// d_E = Σ d_x.
    pub fn discriminant_degree(&self) -> i64 {
        self.bad_fibers.values().map(|k| k.fiber().d as i64).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(x) = self.bad_fibers.keys().find(|x| x.trim().is_empty()) {
            return Err(Error::InvalidSurface(format!("empty fiber label {x:?}")));
        }
        let (c, d) = (self.conductor_degree(), self.discriminant_degree());
        if d == 0 {
            return Err(Error::InvalidSurface("no singular fibers: isotrivial input is not supported".into()));
        }
        if d % 12 != 0 {
            return Err(Error::InvalidSurface(format!("discriminant degree {d} is not divisible by 12")));
        }
        if d < 12 {
            return Err(Error::InvalidSurface(format!("discriminant degree {d} is below 12")));
        }
        if c < 1 || c > d {
            return Err(Error::InvalidSurface(format!("conductor degree {c} is not in [1, {d}]")));
        }
        Ok(())
    }
}

/// The Galois cover C′ → C with group G, its Galois image Σ ≤ Aut(G), and
/// the branch points with a generator of each (cyclic) inertia group.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    group: Arc<FiniteGroup>,
    sigma: SigmaAction,
    table: Arc<CharacterTable>,
    branch_points: BTreeMap<String, usize>,
}

impl CoverSpec {
    pub fn new(group: Arc<FiniteGroup>, sigma: SigmaAction, branch_points: BTreeMap<String, usize>) -> Result<Self> {
        Self::with_cache(group, sigma, branch_points, None, DEFAULT_ORDER_CAP)
    }

    /// The character table of G is computed in the same prime as the table
    /// of G⋊Σ, so its irreducibles line up with the ε program's constraints.
    pub fn with_cache(
        group: Arc<FiniteGroup>,
        sigma: SigmaAction,
        branch_points: BTreeMap<String, usize>,
        cache: Option<&TableCache>,
        order_cap: usize,
    ) -> Result<Self> {
        if sigma.elements().iter().any(|a| a.images().len() != group.order()) {
            return Err(Error::InvalidCover("Σ acts on a group of a different order".into()));
        }
        for (x, &h) in &branch_points {
            if x.trim().is_empty() {
                return Err(Error::InvalidCover(format!("empty branch point label {x:?}")));
            }
            if h >= group.order() {
                return Err(Error::InvalidCover(format!("inertia generator {h} at {x:?} is not an element")));
            }
            if h == group.identity() {
                return Err(Error::InvalidCover(format!("trivial inertia at {x:?}: not a branch point")));
            }
        }
        let prime = epsilon_prime(&group, &sigma, order_cap)?;
        let table = match cache {
            Some(c) => c.character_table_with_prime(group.clone(), prime)?,
            None => crate::characters::character_table_with_prime(group.clone(), prime)?,
        };
        Ok(CoverSpec { group, sigma, table: Arc::new(table), branch_points })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn sigma(&self) -> &SigmaAction {
        &self.sigma
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn branch_points(&self) -> &BTreeMap<String, usize> {
        &self.branch_points
    }

    /// deg S, the number of branch points.
    pub fn ramification_degree(&self) -> usize {
        self.branch_points.len()
    }

    pub fn is_unramified(&self) -> bool {
        self.branch_points.is_empty()
    }

    pub fn inertia_subgroups(&self) -> Vec<(String, Vec<usize>)> {
        self.branch_points
            .iter()
            .map(|(x, &h)| (x.clone(), self.group.cyclic_subgroup(h)))
            .collect()
    }
}

/// A surface together with a cover of its base, with disjoint bad and
/// branch loci.
#[derive(Clone, Debug)]
pub struct PairedSpec {
    surface: SurfaceSpec,
    cover: CoverSpec,
}

impl PairedSpec {
    pub fn new(surface: SurfaceSpec, cover: CoverSpec) -> Result<Self> {
        surface.validate()?;
        if let Some(x) = surface.bad_fibers.keys().find(|x| cover.branch_points.contains_key(*x)) {
            return Err(Error::SharedLabel(x.clone()));
        }
        riemann_hurwitz_genus(&cover, surface.base_genus)?;
        Ok(PairedSpec { surface, cover })
    }

    pub fn surface(&self) -> &SurfaceSpec {
        &self.surface
    }

    pub fn cover(&self) -> &CoverSpec {
        &self.cover
    }

    pub fn base_genus(&self) -> u32 {
        self.surface.base_genus
    }

    /// Irreducibles α with a negative multiplicity in one of the classes that
    /// must be genuine modules for a geometrically realizable input.
    pub fn warnings(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (name, class) in [("H^1(R^1)", h1_r1(self)?), ("Mordell-Weil quotient", mw_quotient_class(self)?)] {
            let neg: Vec<usize> = (0..class.coeffs().len()).filter(|&a| class.coeffs()[a] < 0).collect();
            if !neg.is_empty() {
                out.push(format!("{name} class has negative multiplicity at irreducibles {neg:?}; the spec may not be realizable"));
            }
        }
        Ok(out)
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.surface
            .bad_fibers
            .keys()
            .chain(self.cover.branch_points.keys())
            .map(String::as_str)
            .collect()
    }
}

/// g′ from 2 − 2g′ = |G|(2 − 2g) − Σ_{x∈S} (|G| − |G|/e_x).
pub fn riemann_hurwitz_genus(cover: &CoverSpec, base_genus: u32) -> Result<u64> {
    let n = cover.group.order() as i64;
    let mut euler = n * (2 - 2 * base_genus as i64);
    for (_, h) in cover.inertia_subgroups() {
        euler -= n - n / h.len() as i64;
    }
    if euler > 2 || euler % 2 != 0 {
        return Err(Error::InvalidCover(format!("Riemann–Hurwitz gives Euler characteristic {euler} for the cover")));
    }
    Ok(((2 - euler) / 2) as u64)
}

/// χ_G(C′, ℂ) = Σ_α χ(C, G_α)·[α].
pub fn chi_g_constant_sheaf(cover: &CoverSpec, base_genus: u32) -> Result<VirtualCharacter> {
    let t = cover.table.clone();
    let coeffs = (0..t.num_irreducibles())
        .map(|a| Ok(gos_euler(base_genus, &isotypic_sheaf(cover, a)?)))
        .collect::<Result<Vec<i64>>>()?;
    let chi = VirtualCharacter::new(t, coeffs)?;
    let g_prime = riemann_hurwitz_genus(cover, base_genus)? as i64;
    if chi.dimension() != 2 - 2 * g_prime {
        return Err(Error::Internal(format!(
            "dim χ_G(C′,ℂ) = {} but Riemann–Hurwitz gives {}",
            chi.dimension(),
            2 - 2 * g_prime
        )));
    }
    Ok(chi)
}

/// rank(F)·χ_G(C′, ℂ) − cond(F)·[ℂ[G]] for F with conductor away from S.
pub fn equivariant_gos(rank_f: i64, cond_f: i64, cover: &CoverSpec, base_genus: u32) -> Result<VirtualCharacter> {
    if rank_f < 0 {
        return Err(Error::InvalidSheaf(format!("negative rank {rank_f}")));
    }
    let chi = chi_g_constant_sheaf(cover, base_genus)?;
    let reg = VirtualCharacter::regular_class(cover.table.clone());
    chi.scale(rank_f).try_sub(&reg.scale(cond_f))
}

/// [H¹(C′, R¹g′_*ℂ)] = c_E·[ℂ[G]] − 2χ_G(C′, ℂ).
pub fn h1_r1(spec: &PairedSpec) -> Result<VirtualCharacter> {
    let c_e = spec.surface.conductor_degree();
    equivariant_gos(2, c_e, &spec.cover, spec.base_genus()).map(|v| v.neg())
}

/// [H¹(E′, Ω¹)/T_dR(E′)] = (c_E − d_E/6)·[ℂ[G]] − χ_G(C′, ℂ).
pub fn mw_quotient_class(spec: &PairedSpec) -> Result<VirtualCharacter> {
    let (c_e, d_e) = (spec.surface.conductor_degree(), spec.surface.discriminant_degree());
    if d_e == 0 || d_e % 12 != 0 {
        return Err(Error::InvalidSurface(format!("discriminant degree {d_e} must be a positive multiple of 12")));
    }
    let chi = chi_g_constant_sheaf(&spec.cover, spec.base_genus())?;
    VirtualCharacter::regular_class(spec.cover.table.clone())
        .scale(c_e - d_e / 6)
        .try_sub(&chi)
}

/// dim H²(E′, O) = (d_E/12)|G| − (1 − g′).
pub fn h2_dimension(spec: &PairedSpec) -> Result<i64> {
    let d_e = spec.surface.discriminant_degree();
    if d_e % 12 != 0 {
        return Err(Error::InvalidSurface(format!("discriminant degree {d_e} is not divisible by 12")));
    }
    let g_prime = riemann_hurwitz_genus(&spec.cover, spec.base_genus())? as i64;
    Ok(d_e / 12 * spec.cover.group.order() as i64 - (1 - g_prime))
}

/// [H²(E′, O)] = (d_E/12)·[ℂ[G]] − χ_G(C′, O), with the last class supplied.
pub fn h2_structure(d_e: i64, chi_o: &VirtualCharacter) -> Result<VirtualCharacter> {
    if d_e % 12 != 0 {
        return Err(Error::InvalidSurface(format!("discriminant degree {d_e} is not divisible by 12")));
    }
    VirtualCharacter::regular_class(chi_o.table().clone())
        .scale(d_e / 12)
        .try_sub(chi_o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn fibers(spec: &[(&str, KodairaKind)]) -> BTreeMap<String, KodairaKind> {
        spec.iter().map(|(x, k)| (x.to_string(), *k)).collect()
    }

    fn numbered(prefix: &str, count: usize, kind: KodairaKind) -> BTreeMap<String, KodairaKind> {
        (0..count).map(|i| (format!("{prefix}{i}"), kind)).collect()
    }

    fn cover(name: &str, branch: &[(&str, usize)]) -> CoverSpec {
        let g = Arc::new(GroupSpec::parse(name).unwrap().build().unwrap());
        let s = SigmaAction::trivial(&g);
        CoverSpec::new(g, s, branch.iter().map(|(x, h)| (x.to_string(), *h)).collect()).unwrap()
    }

    #[test]
    fn kodaira_table_matches_shipped_file() {
        let doc: serde_json::Value = serde_json::from_str(KODAIRA_TABLE_JSON).unwrap();
        let rows = doc["fibers"].as_array().unwrap();
        assert_eq!(rows.len(), 9);
        for n in 0..4u32 {
            for row in rows {
                let kind = row["kind"].as_str().unwrap();
                let takes_n = row.get("n_min").is_some();
                if !takes_n && n > 0 {
                    continue;
                }
                if takes_n && n < row["n_min"].as_u64().unwrap() as u32 {
                    continue;
                }
                let k = KodairaKind::from_parts(kind, takes_n.then_some(n)).unwrap();
                let f = k.fiber();
                let eval = |v: &serde_json::Value| -> u32 {
                    match v {
                        serde_json::Value::Number(x) => x.as_u64().unwrap() as u32,
                        serde_json::Value::String(s) if s == "n" => n,
                        serde_json::Value::String(s) => s.split('+').next().unwrap().parse::<u32>().unwrap() + n,
                        _ => panic!(),
                    }
                };
                assert_eq!((f.d, f.c, f.m), (eval(&row["d"]), eval(&row["c"]), eval(&row["m"])), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn kind_names_parse() {
        for k in KodairaKind::catalog(4) {
            assert_eq!(k.to_string().parse::<KodairaKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(serde_json::from_str::<KodairaKind>(&json).unwrap(), k);
        }
        assert_eq!("I_3".parse::<KodairaKind>().unwrap(), KodairaKind::I(3));
        assert_eq!(serde_json::from_str::<KodairaKind>(r#""I2*""#).unwrap(), KodairaKind::IStar(2));
        assert_eq!(serde_json::from_str::<KodairaKind>(r#"{"kind":"I_n*","n":0}"#).unwrap(), KodairaKind::I0Star);
        for bad in ["I0", "V", "I_n", "", "IIII"] {
            assert!(bad.parse::<KodairaKind>().is_err(), "{bad}");
        }
        assert!(serde_json::from_str::<KodairaKind>(r#"{"kind":"II","n":2}"#).is_err());
    }

    #[test]
    fn surface_validation() {
        assert!(SurfaceSpec::new(0, numbered("p", 4, KodairaKind::I(3))).is_ok());
        assert!(SurfaceSpec::new(0, numbered("p", 11, KodairaKind::I(1))).is_err());
        assert!(SurfaceSpec::new(0, BTreeMap::new()).is_err());
        let s = SurfaceSpec::new(0, fibers(&[("a", KodairaKind::IIStar), ("b", KodairaKind::II)])).unwrap();
        assert_eq!((s.conductor_degree(), s.discriminant_degree()), (4, 12));
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(riemann_hurwitz_genus(&cover("cyclic 2", &[("a", 1), ("b", 1)]), 0).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(&cover("cyclic 2", &[]), 1).unwrap(), 1);
        assert_eq!(riemann_hurwitz_genus(&cover("cyclic 3", &[("a", 1), ("b", 1), ("c", 2)]), 0).unwrap(), 1);
        // One branch point of order 2 on P^1 gives odd Euler characteristic.
        assert!(riemann_hurwitz_genus(&cover("cyclic 2", &[("a", 1)]), 0).is_err());
        // Unramified Z/2 over P^1 is disconnected-impossible: Euler characteristic 4.
        assert!(riemann_hurwitz_genus(&cover("cyclic 2", &[]), 0).is_err());
    }

    #[test]
    fn chi_g_examples() {
        let c = cover("cyclic 2", &[]);
        assert_eq!(chi_g_constant_sheaf(&c, 3).unwrap().coeffs(), &[-4, -4]);
        let c = cover("cyclic 2", &[("a", 1), ("b", 1)]);
        assert_eq!(chi_g_constant_sheaf(&c, 0).unwrap().coeffs(), &[2, 0]);
        let c = cover("cyclic 3", &[("a", 1), ("b", 1), ("c", 2)]);
        let chi = chi_g_constant_sheaf(&c, 0).unwrap();
        assert_eq!(chi.coeffs(), &[2, -1, -1]);
        assert_eq!(chi.dimension(), 0);
    }

    #[test]
    fn equivariant_gos_cases() {
        let c = cover("symmetric 3", &[]);
        let chi = chi_g_constant_sheaf(&c, 2).unwrap();
        assert_eq!(equivariant_gos(1, 0, &c, 2).unwrap(), chi);
        let reg = VirtualCharacter::regular_class(c.table().clone());
        assert_eq!(equivariant_gos(0, -5, &c, 2).unwrap(), reg.scale(5));
        assert!(equivariant_gos(-1, 0, &c, 2).is_err());
    }

    fn paired(name: &str, genus: u32, fib: BTreeMap<String, KodairaKind>, branch: &[(&str, usize)]) -> PairedSpec {
        PairedSpec::new(SurfaceSpec::new(genus, fib).unwrap(), cover(name, branch)).unwrap()
    }

    #[test]
    fn trivial_group_classes() {
        let hesse = paired("trivial", 0, numbered("p", 4, KodairaKind::I(3)), &[]);
        assert_eq!(h1_r1(&hesse).unwrap().dimension(), 0);
        assert_eq!(mw_quotient_class(&hesse).unwrap().coeffs(), &[0]);
        assert_eq!(h2_dimension(&hesse).unwrap(), 0);
        let generic = paired("trivial", 0, numbered("p", 12, KodairaKind::I(1)), &[]);
        assert_eq!(h1_r1(&generic).unwrap().dimension(), 8);
        assert_eq!(mw_quotient_class(&generic).unwrap().dimension(), 8);
        let k3 = paired("trivial", 0, numbered("p", 24, KodairaKind::I(1)), &[]);
        assert_eq!(h2_dimension(&k3).unwrap(), 1);
    }

    #[test]
    fn unramified_double_cover() {
        let g1 = paired("cyclic 2", 1, numbered("p", 12, KodairaKind::I(1)), &[]);
        let h = h1_r1(&g1).unwrap();
        assert_eq!(h.coeffs(), &[12, 12]);
        assert_eq!(h.dimension(), 24);
    }

    #[test]
    fn branched_hesse_over_z3() {
        let s = paired("cyclic 3", 0, numbered("p", 4, KodairaKind::I(3)), &[("a", 1), ("b", 1), ("c", 2)]);
        let mw = mw_quotient_class(&s).unwrap();
        assert_eq!(mw.coeffs(), &[0, 3, 3]);
        assert_eq!(mw.dimension(), 6);
        assert!(s.warnings().unwrap().is_empty());
    }

    #[test]
    fn shared_labels_are_rejected() {
        let s = SurfaceSpec::new(0, numbered("p", 4, KodairaKind::I(3))).unwrap();
        let c = cover("cyclic 2", &[("p0", 1), ("q", 1)]);
        assert!(matches!(PairedSpec::new(s, c), Err(Error::SharedLabel(x)) if x == "p0"));
    }

    #[test]
    fn h2_structure_of_zero() {
        let c = cover("quaternion 8", &[]);
        let zero = VirtualCharacter::zero(c.table().clone());
        assert_eq!(h2_structure(12, &zero).unwrap(), VirtualCharacter::regular_class(c.table().clone()));
        assert!(h2_structure(6, &zero).is_err());
    }

    #[test]
    fn trivial_inertia_is_rejected() {
        let g = Arc::new(GroupSpec::parse("cyclic 2").unwrap().build().unwrap());
        let s = SigmaAction::trivial(&g);
        assert!(CoverSpec::new(g, s, [("a".to_string(), 0)].into()).is_err());
    }
}
