//! Virtual characters: integer combinations of irreducibles, i.e. elements
//! of the Grothendieck group K(ℂ[G]).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct VirtualCharacter {
    table: Arc<CharacterTable>,
    coeffs: Vec<i64>,
}

/// Serialized form of a virtual character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualCharacterJson {
    pub group_hash: String,
    pub coeffs: Vec<i64>,
}

impl PartialEq for VirtualCharacter {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.coeffs == other.coeffs
    }
}

impl Eq for VirtualCharacter {}

fn same_table(a: &Arc<CharacterTable>, b: &Arc<CharacterTable>) -> bool {
    Arc::ptr_eq(a, b) || (a.group_hash() == b.group_hash() && a.prime() == b.prime())
}

impl VirtualCharacter {
    pub fn new(table: Arc<CharacterTable>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != table.num_irreducibles() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for {} irreducibles",
                coeffs.len(),
                table.num_irreducibles()
            )));
        }
        Ok(VirtualCharacter { table, coeffs })
    }

    pub fn zero(table: Arc<CharacterTable>) -> Self {
        let n = table.num_irreducibles();
        VirtualCharacter { table, coeffs: vec![0; n] }
    }

    /// The class of a single irreducible.
    pub fn irreducible(table: Arc<CharacterTable>, alpha: usize) -> Result<Self> {
        let mut v = VirtualCharacter::zero(table);
        let len = v.coeffs.len();
        *v.coeffs.get_mut(alpha).ok_or(Error::IndexOutOfRange { index: alpha, len })? = 1;
        Ok(v)
    }

    /// [ℂ[G]] = Σ_α deg(α)·[α].
    pub fn regular_class(table: Arc<CharacterTable>) -> Self {
        let coeffs = table.degrees().iter().map(|&d| d as i64).collect();
        VirtualCharacter { table, coeffs }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn dimension(&self) -> i64 {
        self.coeffs.iter().zip(self.table.degrees()).map(|(&c, &d)| c * d as i64).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Δ_α, the multiplicity of the irreducible α.
    pub fn delta_multiplicity(&self, alpha: usize) -> Result<i64> {
        self.coeffs
            .get(alpha)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: alpha, len: self.coeffs.len() })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::MixedTables)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(VirtualCharacter { table: self.table.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(VirtualCharacter { table: self.table.clone(), coeffs })
    }

    pub fn scale(&self, k: i64) -> Self {
        VirtualCharacter { table: self.table.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// [M]^∨: coefficients permuted by α ↦ ᾱ.
    pub fn dual(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (a, &c) in self.coeffs.iter().enumerate() {
            coeffs[self.table.dual_index(a)] = c;
        }
        VirtualCharacter { table: self.table.clone(), coeffs }
    }

    /// χ_G(X, f*L) = χ_G(X, O_X) + deg(L)·[ℂ[G]].
    pub fn chi_pullback_line_bundle(&self, deg_l: i64) -> Self {
        let reg = VirtualCharacter::regular_class(self.table.clone());
        self.try_add(&reg.scale(deg_l)).expect("same table")
    }

    pub fn to_json(&self) -> VirtualCharacterJson {
        VirtualCharacterJson { group_hash: self.table.group_hash().to_string(), coeffs: self.coeffs.clone() }
    }

    pub fn from_json(table: Arc<CharacterTable>, json: &VirtualCharacterJson) -> Result<Self> {
        if json.group_hash != table.group_hash() {
            return Err(Error::MixedTables);
        }
        VirtualCharacter::new(table, json.coeffs.clone())
    }
}
