use serde::{Deserialize, Serialize};

use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::modp::is_prime;

/// How a group is described in configuration.
///
/// Preset names follow a small grammar: atoms `trivial`, `cyclic N`,
/// `dihedral N` (order 2N), `symmetric N` (N <= 5), `quaternion 8` and
/// `elementary abelian P^K`, joined by ` x ` for direct products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Preset(String),
    /// Rows of the multiplication table, `cayley[a][b] = a*b`.
    Cayley(Vec<Vec<usize>>),
    /// Generators of a permutation group.
    Permutations(Vec<PermGenerator>),
    Product(Vec<GroupSpec>),
}

/// A permutation written either in 1-based cycle notation, `"(1 2 3)(4 5)"`,
/// or as a 0-based image list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermGenerator {
    Cycles(String),
    Images(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    Elementary(usize, u32),
}

fn parse_atom(s: &str) -> Result<Atom> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let num = |w: &str| -> Result<usize> {
        w.parse::<usize>().map_err(|_| Error::UnknownPreset(s.to_string()))
    };
    let atom = match words.as_slice() {
        ["trivial"] => Atom::Trivial,
        ["cyclic", n] => Atom::Cyclic(num(n)?),
        ["dihedral", n] => Atom::Dihedral(num(n)?),
        ["symmetric", n] => Atom::Symmetric(num(n)?),
        ["quaternion"] | ["quaternion", "8"] => Atom::Quaternion,
        ["elementary", "abelian", pk] | ["elementary", pk] => {
            let (p, k) = pk.split_once('^').ok_or_else(|| Error::UnknownPreset(s.to_string()))?;
            let k: u32 = k.parse().map_err(|_| Error::UnknownPreset(s.to_string()))?;
            Atom::Elementary(num(p)?, k)
        }
        _ => return Err(Error::UnknownPreset(s.to_string())),
    };
    match atom {
        Atom::Cyclic(0) | Atom::Dihedral(0) | Atom::Symmetric(0) => {
            Err(Error::UnknownPreset(s.to_string()))
        }
        Atom::Symmetric(n) if n > 5 => Err(Error::UnknownPreset(s.to_string())),
        Atom::Elementary(p, _) if !is_prime(p as u64) => Err(Error::UnknownPreset(s.to_string())),
        a => Ok(a),
    }
}

fn normalize(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_ascii_lowercase()
}

impl GroupSpec {
    /// Parses and normalizes a preset name.
    pub fn parse(name: &str) -> Result<Self> {
        let norm = normalize(name);
        for part in norm.split(" x ") {
            parse_atom(part)?;
        }
        Ok(GroupSpec::Preset(norm))
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        let g = match self {
            GroupSpec::Preset(name) => {
                let norm = normalize(name);
                let mut acc: Option<FiniteGroup> = None;
                for part in norm.split(" x ") {
                    let g = build_atom(parse_atom(part)?, cap)?;
                    acc = Some(match acc {
                        None => g,
                        Some(a) => a.direct_product(&g, cap)?,
                    });
                }
                acc.expect("split yields at least one part")
            }
            GroupSpec::Cayley(t) => FiniteGroup::from_cayley(t.clone())?,
            GroupSpec::Permutations(gens) => {
                let parsed: Vec<Vec<usize>> = gens.iter().map(PermGenerator::to_cycles_or_images).collect::<Result<_>>()?;
                let degree = parsed.iter().map(Vec::len).max().unwrap_or(0).max(1);
                let padded: Vec<Vec<usize>> = parsed
                    .into_iter()
                    .map(|mut p| {
                        let start = p.len();
                        p.extend(start..degree);
                        p
                    })
                    .collect();
                FiniteGroup::from_permutations(degree, &padded, cap)?
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidGroup("empty product".into()));
                }
                let mut acc = parts[0].build_with_cap(cap)?;
                for p in &parts[1..] {
                    acc = acc.direct_product(&p.build_with_cap(cap)?, cap)?;
                }
                acc
            }
        };
        if g.order() > cap {
            return Err(Error::OrderCap { order: g.order(), cap });
        }
        Ok(g)
    }
}

impl PermGenerator {
    fn to_cycles_or_images(&self) -> Result<Vec<usize>> {
        match self {
            PermGenerator::Images(v) => Ok(v.clone()),
            PermGenerator::Cycles(s) => parse_cycles(s),
        }
    }
}

/// Parses 1-based cycle notation into a 0-based image list whose length is
/// the largest point mentioned.
pub fn parse_cycles(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidGroup(format!("bad cycle notation {s:?}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let pts: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| w.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
            .collect::<Result<_>>()?;
        cycles.push(pts);
        rest = body[close + 1..].trim_start();
    }
    let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let mut img: Vec<usize> = (0..degree).collect();
    let mut touched = vec![false; degree];
    for c in &cycles {
        for (i, &x) in c.iter().enumerate() {
            if std::mem::replace(&mut touched[x], true) {
                return Err(bad());
            }
            img[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(img)
}

fn build_atom(atom: Atom, cap: usize) -> Result<FiniteGroup> {
    match atom {
        Atom::Trivial => cyclic(1),
        Atom::Cyclic(n) => {
            if n > cap {
                return Err(Error::OrderCap { order: n, cap });
            }
            cyclic(n)
        }
        Atom::Dihedral(n) => {
            if 2 * n > cap {
                return Err(Error::OrderCap { order: 2 * n, cap });
            }
            dihedral(n)
        }
        Atom::Symmetric(n) => {
            if n == 1 {
                return cyclic(1);
            }
            let transposition: Vec<usize> = (0..n).map(|x| match x { 0 => 1, 1 => 0, x => x }).collect();
            let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
            FiniteGroup::from_permutations(n, &[transposition, cycle], cap)
        }
        Atom::Quaternion => quaternion(),
        Atom::Elementary(p, k) => {
            let mut g = cyclic(1)?;
            for _ in 0..k {
                g = g.direct_product(&cyclic(p)?, cap)?;
            }
            Ok(g)
        }
    }
}

pub(crate) fn cyclic(n: usize) -> Result<FiniteGroup> {
    let mult = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    FiniteGroup::from_flat(n, mult, None)
}

/// Dihedral group of order 2n: `r^a s^b` at index `a + n*b`.
fn dihedral(n: usize) -> Result<FiniteGroup> {
    let m = 2 * n;
    let mut mult = vec![0u32; m * m];
    for x in 0..m {
        let (a, b) = (x % n, x / n);
        for y in 0..m {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            mult[x * m + y] = (rot + n * ((b + d) % 2)) as u32;
        }
    }
    let labels = (0..m)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            match (a, b) {
                (0, 0) => "e".to_string(),
                (a, 0) => format!("r^{a}"),
                (0, _) => "s".to_string(),
                (a, _) => format!("r^{a}s"),
            }
        })
        .collect();
    FiniteGroup::from_flat(m, mult, Some(labels))
}

/// Quaternion group; index `2u + s` encodes `(-1)^s * unit_u` for units 1, i, j, k.
fn quaternion() -> Result<FiniteGroup> {
    // unit_mul[u][v] = (sign, unit)
    const UNIT: [[(u8, u8); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mult = vec![0u32; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (u, s) = (x / 2, x % 2);
            let (v, t) = (y / 2, y % 2);
            let (sign, w) = UNIT[u][v];
            let total = (s + t + sign as usize) % 2;
            mult[x * 8 + y] = (2 * w as usize + total) as u32;
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    FiniteGroup::from_flat(8, mult, Some(names.iter().map(|s| s.to_string()).collect()))
}

/// Stable catalog of group preset names shipped with the library.
pub fn group_preset_names() -> Vec<String> {
    let mut out: Vec<String> = (1..=36).map(|n| format!("cyclic {n}")).collect();
    out.extend((2..=12).map(|n| format!("dihedral {n}")));
    out.extend((3..=5).map(|n| format!("symmetric {n}")));
    out.push("quaternion 8".into());
    for pk in ["2^2", "2^3", "2^4", "2^5", "3^2", "3^3", "5^2"] {
        out.push(format!("elementary abelian {pk}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(1 2 3)").unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_cycles("(1 2)(3 4)").unwrap(), vec![1, 0, 3, 2]);
        assert_eq!(parse_cycles("()").unwrap(), Vec::<usize>::new());
        assert!(parse_cycles("(1 2)(2 3)").is_err());
        assert!(parse_cycles("1 2").is_err());
    }

    #[test]
    fn preset_orders() {
        let cases = [
            ("trivial", 1),
            ("cyclic 7", 7),
            ("dihedral 5", 10),
            ("symmetric 4", 24),
            ("symmetric 5", 120),
            ("quaternion 8", 8),
            ("elementary abelian 3^2", 9),
            ("cyclic 2 x symmetric 3", 12),
        ];
        for (name, order) in cases {
            let g = GroupSpec::parse(name).unwrap().build().unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn quaternion_is_nonabelian_with_unique_involution() {
        let g = quaternion().unwrap();
        assert!(!g.is_abelian());
        let involutions = (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn unknown_presets_rejected() {
        for bad in ["cyclic 0", "symmetric 6", "elementary abelian 4^2", "foo 3", "cyclic x"] {
            assert!(GroupSpec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn catalog_builds() {
        for name in group_preset_names() {
            let g = GroupSpec::parse(&name).unwrap().build().unwrap();
            assert!(g.order() <= 120, "{name}");
        }
    }

    #[test]
    fn json_forms() {
        let s: GroupSpec = serde_json::from_str(r#"{"permutations": ["(1 2 3)", [1, 0, 2]]}"#).unwrap();
        assert_eq!(s.build().unwrap().order(), 6);
        let s: GroupSpec = serde_json::from_str(r#"{"product": [{"preset": "cyclic 2"}, {"preset": "cyclic 3"}]}"#).unwrap();
        assert!(s.build().unwrap().is_abelian());
    }
}
