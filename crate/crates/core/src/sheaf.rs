//! Numerical model of constructible sheaves on a curve: a generic rank and
//! finitely many stalk dimensions that differ from it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CoverSpec;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructibleSheafData {
    pub rank: usize,
    #[serde(default)]
    pub exceptional_stalks: BTreeMap<String, usize>,
}

impl ConstructibleSheafData {
    /// Stalks larger than the rank are accepted only for rank 0.
    pub fn new(rank: usize, exceptional_stalks: BTreeMap<String, usize>) -> Result<Self> {
        let f = ConstructibleSheafData { rank, exceptional_stalks };
        f.validate()?;
        Ok(f)
    }

    /// The locally constant sheaf of the given rank.
    pub fn constant(rank: usize) -> Self {
        ConstructibleSheafData { rank, exceptional_stalks: BTreeMap::new() }
    }

    pub fn skyscraper(stalks: BTreeMap<String, usize>) -> Self {
        ConstructibleSheafData { rank: 0, exceptional_stalks: stalks }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank > 0 {
            if let Some((x, s)) = self.exceptional_stalks.iter().find(|(_, &s)| s > self.rank) {
                return Err(Error::InvalidSheaf(format!("stalk {s} at {x:?} exceeds rank {}", self.rank)));
            }
        }
        Ok(())
    }

    /// Points where a stalk exceeds the rank (only possible for rank 0).
    pub fn warnings(&self) -> Vec<String> {
        self.exceptional_stalks
            .iter()
            .filter(|(_, &s)| s > self.rank)
            .map(|(x, s)| format!("stalk {s} at {x:?} exceeds rank {}", self.rank))
            .collect()
    }

    pub fn stalk(&self, x: &str) -> usize {
        self.exceptional_stalks.get(x).copied().unwrap_or(self.rank)
    }

    /// c_x(F) = rank(F) − dim F_x.
    pub fn local_conductor(&self, x: &str) -> i64 {
        self.rank as i64 - self.stalk(x) as i64
    }

    pub fn local_conductors(&self) -> BTreeMap<String, i64> {
        self.exceptional_stalks
            .keys()
            .map(|x| (x.clone(), self.local_conductor(x)))
            .collect()
    }

    /// cond(F) = Σ_x c_x(F).
    pub fn conductor(&self) -> i64 {
        self.exceptional_stalks.keys().map(|x| self.local_conductor(x)).sum()
    }

    /// Listed points whose stalk actually differs from the rank.
    pub fn support(&self) -> BTreeSet<&str> {
        self.exceptional_stalks
            .iter()
            .filter(|(_, &s)| s != self.rank)
            .map(|(x, _)| x.as_str())
            .collect()
    }

    /// F ⊗ G, defined when no point is exceptional for both factors. Where
    /// one factor is locally free the stalk is the product with its rank.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.support(), other.support());
        if let Some(x) = a.intersection(&b).next() {
            return Err(Error::InvalidSheaf(format!("both tensor factors are exceptional at {x:?}")));
        }
        let mut stalks = BTreeMap::new();
        for x in &a {
            stalks.insert(x.to_string(), self.stalk(x) * other.rank);
        }
        for x in &b {
            stalks.insert(x.to_string(), other.stalk(x) * self.rank);
        }
        Ok(ConstructibleSheafData { rank: self.rank * other.rank, exceptional_stalks: stalks })
    }

    /// Pointwise sum of ranks and stalks.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let labels: BTreeSet<&String> = self.exceptional_stalks.keys().chain(other.exceptional_stalks.keys()).collect();
        let stalks = labels
            .into_iter()
            .map(|x| (x.clone(), self.stalk(x) + other.stalk(x)))
            .collect();
        ConstructibleSheafData { rank: self.rank + other.rank, exceptional_stalks: stalks }
    }
}

/// Grothendieck–Ogg–Shafarevich: χ(X, F) = rank(F)(2 − 2g) − cond(F).
pub fn gos_euler(genus: u32, f: &ConstructibleSheafData) -> i64 {
    f.rank as i64 * (2 - 2 * genus as i64) - f.conductor()
}

/// The summand G_α of f_*(ℂ) = ⊕_α G_α^{deg α}: rank deg α, and stalk
/// dim α^{G_x} at a branch point with inertia G_x.
pub fn isotypic_sheaf(cover: &CoverSpec, alpha: usize) -> Result<ConstructibleSheafData> {
    let t = cover.table();
    if alpha >= t.num_irreducibles() {
        return Err(Error::IndexOutOfRange { index: alpha, len: t.num_irreducibles() });
    }
    let mut stalks = BTreeMap::new();
    for (x, inertia) in cover.inertia_subgroups() {
        stalks.insert(x.clone(), t.fixed_subspace_dim(alpha, &inertia)?);
    }
    Ok(ConstructibleSheafData { rank: t.degree(alpha), exceptional_stalks: stalks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sheaf(rank: usize, stalks: &[(&str, usize)]) -> ConstructibleSheafData {
        ConstructibleSheafData::new(rank, stalks.iter().map(|(x, s)| (x.to_string(), *s)).collect()).unwrap()
    }

    #[test]
    fn conductors() {
        assert_eq!(ConstructibleSheafData::constant(3).conductor(), 0);
        assert_eq!(sheaf(2, &[("x", 1)]).conductor(), 1);
        assert_eq!(sheaf(2, &[("x", 1), ("y", 0)]).conductor(), 3);
    }

    #[test]
    fn tensor_rules() {
        let f = sheaf(2, &[("x", 1)]);
        let g = ConstructibleSheafData::constant(3);
        assert_eq!(f.tensor(&g).unwrap().local_conductor("x"), 3);
        assert_eq!(f.tensor(&ConstructibleSheafData::constant(1)).unwrap(), f);
        let h = sheaf(3, &[("y", 0), ("z", 2)]);
        let t = f.tensor(&h).unwrap();
        assert_eq!(t.conductor(), h.rank as i64 * f.conductor() + f.rank as i64 * h.conductor());
        assert!(f.tensor(&sheaf(1, &[("x", 0)])).is_err());
        // A listed stalk equal to the rank is not exceptional.
        assert!(f.tensor(&sheaf(1, &[("x", 1)])).is_ok());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(gos_euler(3, &ConstructibleSheafData::constant(1)), -4);
        assert_eq!(gos_euler(0, &sheaf(2, &[("a", 0), ("b", 0)])), 0);
        let sky = ConstructibleSheafData::skyscraper([("p".to_string(), 2), ("q".to_string(), 3)].into());
        assert_eq!(gos_euler(5, &sky), 5);
        assert_eq!(sky.warnings().len(), 2);
    }

    #[test]
    fn stalk_above_rank_is_rejected_for_positive_rank() {
        assert!(ConstructibleSheafData::new(1, [("x".to_string(), 2)].into()).is_err());
    }

    #[test]
    fn direct_sum_is_additive() {
        let f = sheaf(2, &[("x", 1)]);
        let g = sheaf(1, &[("x", 0), ("y", 0)]);
        let s = f.direct_sum(&g);
        assert_eq!(s.rank, 3);
        assert_eq!(s.conductor(), f.conductor() + g.conductor());
    }

    #[test]
    fn json_fixture_round_trip() {
        let f = sheaf(4, &[("p1", 1), ("p2", 3)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"rank":4,"exceptional_stalks":{"p1":1,"p2":3}}"#);
        assert_eq!(serde_json::from_str::<ConstructibleSheafData>(&s).unwrap(), f);
    }
}
