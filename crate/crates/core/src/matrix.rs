//! Jacobian matrices, determinants and minors over a polynomial ring.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Dense matrix of polynomials in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: Vec<Vec<Polynomial>>,
    ncols: usize,
}

/// Upper bound on the number of minors a single call may enumerate.
pub const MAX_MINORS: usize = 200_000;

impl PolyMatrix {
    pub fn new(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::Invariant("ragged matrix".into()));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, ncols })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// expansion over column subsets (exact, division free).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        let k = rows.len();
        if k != cols.len() {
            return Err(AlgebraError::Invariant("minor must be square".into()));
        }
        if k > 20 {
            return Err(AlgebraError::Resource(format!("{k}x{k} determinant")));
        }
        // partial[mask] = signed sum over bijections of the first popcount(mask)
        // rows onto the columns in mask.
        let mut partial: HashMap<u32, Polynomial> = HashMap::new();
        partial.insert(0, Polynomial::one(&self.ring));
        for (r, &row) in rows.iter().enumerate() {
            let mut next: HashMap<u32, Polynomial> = HashMap::new();
            for (mask, value) in &partial {
                for (c, &col) in cols.iter().enumerate() {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let entry = &self.rows[row][col];
                    if entry.is_zero() {
                        continue;
                    }
                    // Sign: number of already used columns to the right of c.
                    let inversions = (mask >> (c + 1)).count_ones();
                    let mut term = value.try_mul(entry)?;
                    if inversions % 2 == 1 {
                        term = term.neg();
                    }
                    let key = mask | (1 << c);
                    let slot = next.entry(key).or_insert_with(|| Polynomial::zero(&self.ring));
                    *slot = slot.add(&term);
                }
            }
            next.retain(|_, v| !v.is_zero());
            partial = next;
            if partial.is_empty() {
                return Ok(Polynomial::zero(&self.ring));
            }
            debug_assert!(partial.keys().all(|m| m.count_ones() as usize == r + 1));
        }
        Ok(partial.remove(&((1u32 << k) - 1)).unwrap_or_else(|| Polynomial::zero(&self.ring)))
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows() != self.ncols {
            return Err(AlgebraError::Invariant("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.ncols).collect();
        self.minor(&idx, &idx)
    }

    /// All nonzero `size x size` minors, deduplicated, in a deterministic order.
    pub fn minors(&self, size: usize) -> Result<Vec<Polynomial>> {
        if size == 0 {
            return Ok(vec![Polynomial::one(&self.ring)]);
        }
        if size > self.nrows() || size > self.ncols {
            return Ok(Vec::new());
        }
        let row_sets = combinations(self.nrows(), size);
        let col_sets = combinations(self.ncols, size);
        if row_sets.len().saturating_mul(col_sets.len()) > MAX_MINORS {
            return Err(AlgebraError::Resource(format!(
                "{} minors of size {size}",
                row_sets.len().saturating_mul(col_sets.len())
            )));
        }
        let mut out: Vec<Polynomial> = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let m = self.minor(rs, cs)?;
                if !m.is_zero() && !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - k + i {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Entry `(i, j)` is the partial derivative of `polys[i]` by `vars[j]`.
pub fn jacobian_matrix(polys: &[Polynomial], vars: &[usize], ring: &Arc<PolyRing>) -> Result<PolyMatrix> {
    if vars.is_empty() {
        return Err(AlgebraError::Invariant("jacobian needs at least one variable".into()));
    }
    let rows = polys.iter().map(|f| vars.iter().map(|&v| f.derivative(v)).collect()).collect();
    PolyMatrix::new(ring, rows)
}

/// Like [`jacobian_matrix`] with variables given by name.
pub fn jacobian_by_names(polys: &[Polynomial], vars: &[&str], ring: &Arc<PolyRing>) -> Result<PolyMatrix> {
    let idx = vars
        .iter()
        .map(|v| ring.var_index(v).ok_or_else(|| AlgebraError::UnknownIdentifier(v.to_string())))
        .collect::<Result<Vec<_>>>()?;
    jacobian_matrix(polys, &idx, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::parse::parse_polynomial;
    use crate::ring::MonomialOrder;

    fn ring(ch: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, CoefficientField::from_characteristic(ch).unwrap(), MonomialOrder::Degrevlex).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn node_jacobian() {
        let r = ring(0, &["a", "b", "c", "d", "f"]);
        let fs = polys(&r, &["a*c", "a*d + b*c - f"]);
        let j = jacobian_by_names(&fs, &["a", "c"], &r).unwrap();
        assert_eq!(j.get(0, 0).render(), "c");
        assert_eq!(j.get(0, 1).render(), "a");
        assert_eq!(j.get(1, 0).render(), "d");
        assert_eq!(j.get(1, 1).render(), "b");
        let det = j.determinant().unwrap();
        assert_eq!(det, parse_polynomial("c*b - a*d", &r).unwrap());
        assert_eq!(det.render(), "b*c - a*d");
    }

    #[test]
    fn char_two_minor() {
        let r = ring(2, &["a", "b", "c", "d", "f"]);
        let fs = polys(&r, &["c^2 - a^3", "2*c*d - 3*a^2*b - f"]);
        let j = jacobian_by_names(&fs, &["a", "b", "c", "d", "f"], &r).unwrap();
        assert!(j.minors(2).unwrap().contains(&parse_polynomial("a^4", &r).unwrap()));
        let x = ring(2, &["x"]);
        let j = jacobian_by_names(&polys(&x, &["x^2"]), &["x"], &x).unwrap();
        assert!(j.get(0, 0).is_zero());
    }

    #[test]
    fn three_by_three_determinant() {
        let r = ring(0, &["x"]);
        let m = |s: &str| parse_polynomial(s, &r).unwrap();
        let mat = PolyMatrix::new(
            &r,
            vec![vec![m("2"), m("0"), m("1")], vec![m("1"), m("3"), m("2")], vec![m("1"), m("1"), m("1")]],
        )
        .unwrap();
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert!(mat.determinant().unwrap().is_zero());
        let mat = PolyMatrix::new(&r, vec![vec![m("0"), m("x")], vec![m("1"), m("0")]]).unwrap();
        assert_eq!(mat.determinant().unwrap().render(), "-x");
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
