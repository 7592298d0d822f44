//! Exact linear programming over the rationals.
//!
//! Problems are in the form: maximize c·x subject to A·x ≤ b, x ≥ 0. The
//! solver is a dense two-phase tableau simplex with Bland's rule.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational;

/// Guards for [`enumerate_vertices`].
pub const VERTEX_MAX_DIM: usize = 8;
pub const VERTEX_MAX_CONSTRAINTS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    #[serde(with = "rational::vec")]
    objective: Vec<BigRational>,
    #[serde(with = "rational::matrix")]
    a: Vec<Vec<BigRational>>,
    #[serde(with = "rational::vec")]
    b: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpResult {
    Optimal {
        #[serde(with = "rational")]
        value: BigRational,
        #[serde(with = "rational::vec")]
        optimizer: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(objective: Vec<BigRational>, a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> Result<Self> {
        let n = objective.len();
        if a.len() != b.len() {
            return Err(Error::InvalidArgument(format!("{} constraint rows but {} bounds", a.len(), b.len())));
        }
        if let Some(i) = a.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("constraint row {i} does not have {n} entries")));
        }
        Ok(LinearProgram { objective, a, b })
    }

    pub fn from_integers(objective: &[i64], a: &[Vec<i64>], b: &[i64]) -> Result<Self> {
        let q = |v: &[i64]| v.iter().map(|&x| rational::int(x)).collect::<Vec<_>>();
        LinearProgram::new(q(objective), a.iter().map(|r| q(r)).collect(), q(b))
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.len()
    }

    pub fn objective(&self) -> &[BigRational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Vec<BigRational>] {
        &self.a
    }

    pub fn bounds(&self) -> &[BigRational] {
        &self.b
    }

    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.a.iter().zip(&self.b).all(|(row, bi)| dot(row, x) <= *bi)
    }

    /// Same problem with every bound replaced.
    pub fn with_bounds(&self, b: Vec<BigRational>) -> Result<Self> {
        LinearProgram::new(self.objective.clone(), self.a.clone(), b)
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry is minus the objective value.
    cost: Vec<BigRational>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<BigRational>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Maximizes over columns `< active`. Returns false if unbounded.
    fn optimize(&mut self, active: usize) -> bool {
        let rhs = self.cost.len() - 1;
        loop {
            // Bland: lowest-index improving column.
            let Some(col) = (0..active).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn set_cost(&mut self, c: &[BigRational]) {
        let width = self.cost.len();
        let mut cost = vec![BigRational::zero(); width];
        cost[..c.len()].clone_from_slice(c);
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let f = cost[bv].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in cost.iter_mut().zip(row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.cost = cost;
    }
}

/// Solves `lp` exactly. Deterministic: pivoting follows Bland's rule.
pub fn solve_lp(lp: &LinearProgram) -> LpResult {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let negative: Vec<usize> = (0..m).filter(|&i| lp.b[i].is_negative()).collect();
    let k = negative.len();
    // Columns: x (n), slacks (m), artificials (k), rhs.
    let width = n + m + k + 1;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for i in 0..m {
        let mut row = vec![BigRational::zero(); width];
        let flip = lp.b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -lp.a[i][j].clone() } else { lp.a[i][j].clone() };
        }
        row[n + i] = if flip { -BigRational::one() } else { BigRational::one() };
        row[width - 1] = if flip { -lp.b[i].clone() } else { lp.b[i].clone() };
        if flip {
            row[n + m + art] = BigRational::one();
            basis.push(n + m + art);
            art += 1;
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, cost: vec![BigRational::zero(); width] };

    if k > 0 {
        let mut phase1 = vec![BigRational::zero(); n + m + k];
        for v in phase1.iter_mut().skip(n + m) {
            *v = -BigRational::one();
        }
        t.set_cost(&phase1);
        t.optimize(n + m + k);
        if t.cost[width - 1].is_positive() {
            // -Σ artificials < 0 at the optimum.
            return LpResult::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n + m {
                match (0..n + m).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(col) => t.pivot(r, col),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in t.rows.iter_mut() {
            row.drain(n + m..n + m + k);
        }
        t.cost = vec![BigRational::zero(); n + m + 1];
    }

    t.set_cost(&lp.objective);
    if !t.optimize(n + m) {
        return LpResult::Unbounded;
    }
    let rhs = t.cost.len() - 1;
    let mut x = vec![BigRational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[rhs].clone();
        }
    }
    let value = lp.evaluate(&x);
    debug_assert_eq!(value, -t.cost[rhs].clone());
    debug_assert!(lp.is_feasible(&x));
    LpResult::Optimal { value, optimizer: x }
}

/// Every basic feasible solution, sorted and deduplicated. Brute force over
/// all n-subsets of the m+n defining hyperplanes; meant as a test oracle.
pub fn enumerate_vertices(lp: &LinearProgram) -> Result<Vec<Vec<BigRational>>> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    if n > VERTEX_MAX_DIM || m > VERTEX_MAX_CONSTRAINTS {
        return Err(Error::SizeGuard(format!(
            "vertex enumeration needs dimension <= {VERTEX_MAX_DIM} and <= {VERTEX_MAX_CONSTRAINTS} constraints, got {n} and {m}"
        )));
    }
    // Hyperplane h < m is row h of A·x = b; h >= m is x_{h-m} = 0.
    let hyper = |h: usize| -> (Vec<BigRational>, BigRational) {
        if h < m {
            (lp.a[h].clone(), lp.b[h].clone())
        } else {
            let mut row = vec![BigRational::zero(); n];
            row[h - m] = BigRational::one();
            (row, BigRational::zero())
        }
    };
    let mut out = Vec::new();
    for subset in (0..m + n).combinations(n) {
        let (rows, rhs): (Vec<_>, Vec<_>) = subset.iter().map(|&h| hyper(h)).unzip();
        if let Some(x) = solve_square(rows, rhs) {
            if lp.is_feasible(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Unique solution of a square system, or None if singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some(b)
}

/// max c·x over the vertices, or None for an empty list.
pub fn vertex_maximum(lp: &LinearProgram, vertices: &[Vec<BigRational>]) -> Option<BigRational> {
    vertices.iter().map(|v| lp.evaluate(v)).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational::int;

    #[test]
    fn box_optimum() {
        let lp = LinearProgram::from_integers(&[1, 1], &[vec![1, 0], vec![0, 1]], &[1, 2]).unwrap();
        assert_eq!(
            solve_lp(&lp),
            LpResult::Optimal { value: int(3), optimizer: vec![int(1), int(2)] }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram::from_integers(&[1], &[vec![1]], &[-1]).unwrap();
        assert_eq!(solve_lp(&lp), LpResult::Infeasible);
        let lp = LinearProgram::from_integers(&[1], &[], &[]).unwrap();
        assert_eq!(solve_lp(&lp), LpResult::Unbounded);
        assert!(enumerate_vertices(&LinearProgram::from_integers(&[1], &[vec![1]], &[-1]).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn negative_bounds_are_handled_by_phase_one() {
        // x + y >= 2 (as -x - y <= -2), x <= 3, y <= 1, maximize -x: optimum -1 at (1,1).
        let lp = LinearProgram::from_integers(&[-1, 0], &[vec![-1, -1], vec![1, 0], vec![0, 1]], &[-2, 3, 1]).unwrap();
        assert_eq!(solve_lp(&lp), LpResult::Optimal { value: int(-1), optimizer: vec![int(1), int(1)] });
    }

    #[test]
    fn fractional_optimum() {
        // max x + y with 2x + y <= 2, x + 2y <= 2: (2/3, 2/3), value 4/3.
        let lp = LinearProgram::from_integers(&[1, 1], &[vec![2, 1], vec![1, 2]], &[2, 2]).unwrap();
        let r = solve_lp(&lp);
        assert_eq!(r.value(), Some(&rational::frac(4, 3)));
    }

    #[test]
    fn unit_square_vertices() {
        let lp = LinearProgram::from_integers(&[0, 0], &[vec![1, 0], vec![0, 1]], &[1, 1]).unwrap();
        assert_eq!(enumerate_vertices(&lp).unwrap().len(), 4);
    }

    #[test]
    fn degenerate_redundant_rows() {
        // Duplicate equality-like rows exercise artificial removal.
        let lp = LinearProgram::from_integers(
            &[1, 2],
            &[vec![1, 1], vec![-1, -1], vec![2, 2], vec![-2, -2]],
            &[1, -1, 2, -2],
        )
        .unwrap();
        assert_eq!(solve_lp(&lp).value(), Some(&int(2)));
    }

    #[test]
    fn size_guard() {
        let lp = LinearProgram::from_integers(&[0; 9], &[], &[]).unwrap();
        assert!(matches!(enumerate_vertices(&lp), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn malformed_programs_are_rejected() {
        assert!(LinearProgram::from_integers(&[1, 1], &[vec![1]], &[1]).is_err());
        assert!(LinearProgram::from_integers(&[1], &[vec![1]], &[]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let lp = LinearProgram::from_integers(&[1, -2], &[vec![3, 4]], &[5]).unwrap();
        let s = serde_json::to_string(&lp).unwrap();
        assert_eq!(serde_json::from_str::<LinearProgram>(&s).unwrap(), lp);
        let r = solve_lp(&lp);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"optimal\""));
        assert_eq!(serde_json::from_str::<LpResult>(&s).unwrap(), r);
    }
}
