//! Report types and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use mwbound::bounds::{BoundReport, BoundValue};
use mwbound::geometry::KodairaKind;
use mwbound::lp::LinearProgram;
use mwbound::rational;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::error::CliError;
use crate::presets::PresetCatalog;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Report {
    Bounds(BoundsOutput),
    Epsilon(EpsilonOutput),
    Validate(ValidateOutput),
    Sweep(SweepOutput),
    Presets(PresetCatalog),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOutput {
    pub group: String,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonOutput {
    pub group: String,
    pub group_order: usize,
    pub sigma_order: usize,
    pub abelian: bool,
    /// Degrees of the irreducibles of G⋊Σ, one per LP variable.
    pub product_degrees: Vec<usize>,
    /// Degrees of the irreducibles of G, one per constraint.
    pub group_degrees: Vec<usize>,
    /// `restriction[j][i]` is the multiplicity of ψ_j in Res χ_i.
    pub restriction: Vec<Vec<usize>>,
    pub coset: Vec<usize>,
    pub lp: LinearProgram,
    #[serde(with = "rational")]
    pub epsilon: BigRational,
    #[serde(with = "rational::vec")]
    pub certificate: Vec<BigRational>,
    pub orbit_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub base_genus: u32,
    pub cover_genus: u64,
    pub c_e: i64,
    pub d_e: i64,
    pub deg_s: usize,
    pub bad_fibers: BTreeMap<String, KodairaKind>,
    pub branch_points: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub group: String,
    pub group_order: usize,
    pub sigma_order: usize,
    pub surface: Option<SurfaceSummary>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub parameters: SweepConfig,
    pub cases: usize,
    pub checks: Vec<CheckTally>,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

impl SweepOutput {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

impl Report {
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Internal(format!("cannot serialize report: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed report: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Bounds(b) => bounds_text(&mut out, b),
            Report::Epsilon(e) => epsilon_text(&mut out, e),
            Report::Validate(v) => validate_text(&mut out, v),
            Report::Sweep(s) => sweep_text(&mut out, s),
            Report::Presets(p) => presets_text(&mut out, p),
        }
        out
    }
}

fn tuple<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn rats(v: &[BigRational]) -> String {
    tuple(&v.iter().map(rational::display).collect::<Vec<_>>())
}

struct Row<'a>(&'a str, String);

impl fmt::Display for Row<'_> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "{:<22}{}", self.0, self.1)
    }
}

fn bound_line(out: &mut String, name: &str, b: Option<&BoundValue>) {
    match b {
        Some(b) => {
            let _ = writeln!(out, "  {:<26}{:>10}{:>10}", name, rational::display(&b.raw), rational::display(&b.clamped));
        }
        None => {
            let _ = writeln!(out, "  {:<26}{:>10}{:>10}", name, "n/a", "n/a");
        }
    }
}

fn bounds_text(out: &mut String, b: &BoundsOutput) {
    let r = &b.report;
    let _ = write!(out, "{}", Row("group", format!("{} (order {}, |Σ| = {})", b.group, r.group_order, r.sigma_order)));
    let _ = write!(out, "{}", Row("irreducible degrees", tuple(&r.degrees)));
    let _ = write!(out, "{}", Row("ε", rational::display(&r.epsilon)));
    let _ = write!(out, "{}", Row("O", r.orbit_count.to_string()));
    let _ = write!(out, "{}", Row("certificate", rats(&r.certificate)));
    let _ = write!(out, "{}", Row("base genus", r.base_genus.to_string()));
    let _ = write!(out, "{}", Row("cover genus", r.cover_genus.to_string()));
    let _ = write!(out, "{}", Row("c_E", r.c_e.to_string()));
    let _ = write!(out, "{}", Row("d_E", r.d_e.to_string()));
    let _ = write!(out, "{}", Row("deg S", r.deg_s.to_string()));
    let _ = write!(out, "{}", Row("N", r.n.to_string()));
    let _ = writeln!(out);
    let _ = writeln!(out, "  {:<26}{:>10}{:>10}", "bound", "raw", "clamped");
    bound_line(out, "thm11 = ε·N", Some(&r.bounds.thm11));
    bound_line(out, "cor12 = O·N", r.bounds.cor12.as_ref());
    bound_line(out, "silverman", r.bounds.silverman.as_ref());
    bound_line(out, "ellenberg", Some(&r.bounds.ellenberg));
    bound_line(out, "five_sixths", Some(&r.bounds.five_sixths));
    let _ = writeln!(out);
    let _ = write!(out, "{}", Row("per-α ceilings", tuple(&r.per_alpha)));
    let _ = write!(out, "{}", Row("χ_G(C′,ℂ)", tuple(&r.classes.chi_g)));
    let _ = write!(out, "{}", Row("H¹(R¹) class", tuple(&r.classes.h1_r1)));
    let _ = write!(out, "{}", Row("MW quotient class", tuple(&r.classes.mw_quotient)));
    let _ = write!(out, "{}", Row("MW class dimension", r.classes.mw_dimension.to_string()));
    let _ = write!(out, "{}", Row("H² dimension", r.classes.h2_dimension.to_string()));
    let f = &r.flags;
    let _ = write!(
        out,
        "{}",
        Row("flags", format!("abelian={} unramified={} disjoint={} clamped={}", f.abelian, f.unramified, f.disjoint, f.clamped))
    );
    if let Some(refined) = &r.refined {
        let _ = write!(out, "{}", Row("refined ε (heuristic)", rational::display(&refined.value)));
        let _ = write!(out, "{}", Row("refined ceilings", tuple(&refined.ceilings)));
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn linear_form(coeffs: &[BigRational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| {
            if num_traits::One::is_one(c) {
                format!("a{}", i + 1)
            } else {
                format!("{}·a{}", rational::display(c), i + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn epsilon_text(out: &mut String, e: &EpsilonOutput) {
    let _ = write!(out, "{}", Row("group", format!("{} (order {}, |Σ| = {})", e.group, e.group_order, e.sigma_order)));
    let _ = write!(out, "{}", Row("G⋊Σ degrees", tuple(&e.product_degrees)));
    let _ = write!(out, "{}", Row("G degrees", tuple(&e.group_degrees)));
    let _ = writeln!(out, "maximize  {}", linear_form(e.lp.objective()));
    for (row, b) in e.lp.constraints().iter().zip(e.lp.bounds()) {
        let _ = writeln!(out, "  {} <= {}", linear_form(row), rational::display(b));
    }
    let _ = writeln!(out, "ε = {}", rational::display(&e.epsilon));
    let _ = writeln!(out, "O = {}", e.orbit_count);
    let _ = writeln!(out, "certificate = {}", rats(&e.certificate));
    if e.abelian {
        let _ = writeln!(out, "G is abelian: ε = O is expected");
    }
}

fn validate_text(out: &mut String, v: &ValidateOutput) {
    let _ = writeln!(out, "valid");
    let _ = write!(out, "{}", Row("group", format!("{} (order {}, |Σ| = {})", v.group, v.group_order, v.sigma_order)));
    if let Some(s) = &v.surface {
        let _ = write!(out, "{}", Row("base genus", s.base_genus.to_string()));
        let _ = write!(out, "{}", Row("cover genus", s.cover_genus.to_string()));
        let _ = write!(out, "{}", Row("c_E", s.c_e.to_string()));
        let _ = write!(out, "{}", Row("d_E", s.d_e.to_string()));
        let _ = write!(out, "{}", Row("deg S", s.deg_s.to_string()));
        let fibers: Vec<String> = s.bad_fibers.iter().map(|(x, k)| format!("{x}:{k}")).collect();
        let _ = write!(out, "{}", Row("bad fibers", fibers.join(" ")));
        let branch: Vec<String> = s.branch_points.iter().map(|(x, h)| format!("{x}:{h}")).collect();
        let branch = if branch.is_empty() { "none".to_string() } else { branch.join(" ") };
        let _ = write!(out, "{}", Row("branch points", branch));
    }
    for w in &v.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

fn sweep_text(out: &mut String, s: &SweepOutput) {
    let params = serde_json::to_string(&s.parameters).unwrap_or_default();
    let _ = write!(out, "{}", Row("sweep", params));
    let _ = write!(out, "{}", Row("cases", s.cases.to_string()));
    let _ = writeln!(out, "  {:<40}{:>8}{:>8}", "check", "passed", "failed");
    for c in &s.checks {
        let _ = writeln!(out, "  {:<40}{:>8}{:>8}", c.name, c.passed, c.failed);
    }
    for f in &s.failures {
        let _ = writeln!(out, "failure: {f}");
    }
    let _ = writeln!(out, "violations: {}", s.violations());
}

fn presets_text(out: &mut String, p: &PresetCatalog) {
    let _ = writeln!(out, "surface presets");
    for e in &p.surfaces {
        let _ = writeln!(out, "  {:<24}{}", e.name, e.description);
    }
    let _ = writeln!(out, "group presets");
    for e in &p.groups {
        let _ = writeln!(out, "  {:<24}{}", e.name, e.description);
    }
}
