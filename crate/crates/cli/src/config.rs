//! The JSON run configuration and its resolution into library inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use mwbound::characters::TableCache;
use mwbound::geometry::{CoverSpec, KodairaKind, PairedSpec, SurfaceSpec};
use mwbound::group::{close_automorphisms, Automorphism, FiniteGroup, GroupSpec, SigmaAction, DEFAULT_ORDER_CAP};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Bounds,
    #[serde(alias = "epsilon-only")]
    Epsilon,
    Sweep,
    Validate,
}

/// A group given by preset name or by a full [`GroupSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Name(String),
    Spec(GroupSpec),
}

impl GroupInput {
    pub fn spec(&self) -> Result<GroupSpec, CliError> {
        match self {
            GroupInput::Name(n) => Ok(GroupSpec::parse(n)?),
            GroupInput::Spec(s) => Ok(s.clone()),
        }
    }

    pub fn describe(&self, g: &FiniteGroup) -> String {
        match self.spec() {
            Ok(s) => describe_spec(&s, g.order()),
            Err(_) => format!("group of order {}", g.order()),
        }
    }
}

fn describe_spec(s: &GroupSpec, order: usize) -> String {
    match s {
        GroupSpec::Preset(n) => n.clone(),
        GroupSpec::Cayley(_) => format!("cayley table of order {order}"),
        GroupSpec::Permutations(_) => format!("permutation group of order {order}"),
        GroupSpec::Product(parts) => {
            let names: Vec<String> = parts
                .iter()
                .map(|p| p.build().map(|g| describe_spec(p, g.order())).unwrap_or_else(|_| "?".into()))
                .collect();
            names.join(" x ")
        }
    }
}

/// A group element, by index or by its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl ElementRef {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<usize, CliError> {
        match self {
            ElementRef::Index(i) if *i < g.order() => Ok(*i),
            ElementRef::Index(i) => Err(CliError::Validation(format!("element {i} is out of range for a group of order {}", g.order()))),
            ElementRef::Label(s) => (0..g.order())
                .find(|&x| g.label(x) == *s)
                .ok_or_else(|| CliError::Validation(format!("no element labelled {s:?}"))),
        }
    }
}

/// A generator of Σ: a full image list, or one of `identity`, `inversion`,
/// `power K`, `conjugation H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaGenerator {
    Images(Vec<usize>),
    Named(String),
}

impl SigmaGenerator {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<Automorphism, CliError> {
        match self {
            SigmaGenerator::Images(v) => Ok(Automorphism::new(g, v.clone())?),
            SigmaGenerator::Named(s) => {
                let bad = || CliError::Validation(format!("unknown automorphism {s:?}"));
                let s = s.trim();
                let (head, arg) = s.split_once(char::is_whitespace).map(|(h, a)| (h, a.trim())).unwrap_or((s, ""));
                match (head, arg) {
                    ("identity", "") => Ok(Automorphism::identity(g)),
                    ("inversion", "") => {
                        if !g.is_abelian() {
                            return Err(CliError::Validation("inversion is an automorphism only of abelian groups".into()));
                        }
                        Ok(Automorphism::new(g, (0..g.order()).map(|x| g.inv(x)).collect())?)
                    }
                    ("power", k) => Ok(Automorphism::power_map(g, k.parse().map_err(|_| bad())?)?),
                    ("conjugation", h) if !h.is_empty() => {
                        let h = match h.parse::<usize>() {
                            Ok(i) => ElementRef::Index(i),
                            Err(_) => ElementRef::Label(h.to_string()),
                        };
                        Ok(Automorphism::conjugation(g, h.resolve(g)?)?)
                    }
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// A string-keyed map that rejects repeated keys instead of keeping the
/// last one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct UniqueMap<V>(pub BTreeMap<String, V>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(BTreeMap::new())
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V_<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V_<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map with unique labels")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = m.next_entry::<String, V>()? {
                    if out.contains_key(&k) {
                        return Err(serde::de::Error::custom(format!("duplicate label {k:?}")));
                    }
                    out.insert(k, v);
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V_(PhantomData))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SweepConfig {
    /// ε = O for every abelian group up to `max_order` and every Σ
    /// generated by one automorphism.
    Abelian {
        #[serde(default = "default_abelian_order")]
        max_order: usize,
    },
    /// Bound ordering and ceiling checks on seeded random specs.
    Random {
        #[serde(default = "default_count")]
        count: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_random_order")]
        max_order: usize,
        #[serde(default = "default_max_fibers")]
        max_fibers: usize,
        #[serde(default = "default_max_branch")]
        max_branch: usize,
        #[serde(default = "default_max_genus")]
        max_genus: u32,
    },
    /// Every shipped surface preset in bounds mode.
    Presets,
}

fn default_abelian_order() -> usize {
    36
}
fn default_count() -> usize {
    1000
}
fn default_random_order() -> usize {
    24
}
fn default_max_fibers() -> usize {
    8
}
fn default_max_branch() -> usize {
    4
}
fn default_max_genus() -> u32 {
    3
}

impl SweepConfig {
    /// A random sweep with the default size limits.
    pub fn random(count: usize, seed: u64, max_order: usize) -> Self {
        SweepConfig::Random {
            count,
            seed,
            max_order,
            max_fibers: default_max_fibers(),
            max_branch: default_max_branch(),
            max_genus: default_max_genus(),
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig::Abelian { max_order: default_abelian_order() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInput>,
    #[serde(default)]
    pub sigma: Vec<SigmaGenerator>,
    #[serde(default)]
    pub base_genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bad_fibers: Option<UniqueMap<KodairaKind>>,
    #[serde(default)]
    pub branch_points: UniqueMap<ElementRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed config: {e}")))
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap.unwrap_or(DEFAULT_ORDER_CAP)
    }

    pub fn resolve_group(&self) -> Result<(String, Arc<FiniteGroup>), CliError> {
        let input = self.group.as_ref().ok_or_else(|| CliError::Validation("config has no \"group\"".into()))?;
        let g = input.spec()?.build_with_cap(self.order_cap())?;
        Ok((input.describe(&g), Arc::new(g)))
    }

    pub fn resolve_sigma(&self, g: &FiniteGroup) -> Result<SigmaAction, CliError> {
        let gens: Vec<Automorphism> = self.sigma.iter().map(|s| s.resolve(g)).collect::<Result<_, _>>()?;
        Ok(close_automorphisms(g, gens, self.order_cap())?)
    }

    pub fn resolve_branch_points(&self, g: &FiniteGroup) -> Result<BTreeMap<String, usize>, CliError> {
        self.branch_points.0.iter().map(|(x, h)| Ok((x.clone(), h.resolve(g)?))).collect()
    }

    pub fn has_surface(&self) -> bool {
        self.bad_fibers.is_some()
    }

    /// The full surface and cover; requires `bad_fibers`.
    pub fn resolve_spec(&self, cache: Option<&TableCache>) -> Result<Resolved, CliError> {
        let (name, g) = self.resolve_group()?;
        let sigma = self.resolve_sigma(&g)?;
        let fibers = self
            .bad_fibers
            .as_ref()
            .ok_or_else(|| CliError::Validation("config has no \"bad_fibers\"".into()))?;
        let branch = self.resolve_branch_points(&g)?;
        if let Some(x) = fibers.0.keys().find(|x| branch.contains_key(*x)) {
            return Err(mwbound::Error::SharedLabel(x.clone()).into());
        }
        let surface = SurfaceSpec::new(self.base_genus, fibers.0.clone())?;
        let cover = CoverSpec::with_cache(g.clone(), sigma.clone(), branch, cache, self.order_cap())?;
        let spec = PairedSpec::new(surface, cover)?;
        Ok(Resolved { name, group: g, sigma, spec: Some(spec) })
    }

    /// Group and Σ only.
    pub fn resolve_action(&self) -> Result<Resolved, CliError> {
        let (name, g) = self.resolve_group()?;
        let sigma = self.resolve_sigma(&g)?;
        Ok(Resolved { name, group: g, sigma, spec: None })
    }
}

pub struct Resolved {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub sigma: SigmaAction,
    pub spec: Option<PairedSpec>,
}
