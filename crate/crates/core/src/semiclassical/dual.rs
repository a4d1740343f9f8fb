use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{BracketTable, LieAlgebra, LieElement};
use crate::rat::{int, Rat};

/// Antisymmetric structure constants on a named basis, with no Jacobi
/// requirement (so corrupted tables can be represented and tested).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLieTable {
    names: Vec<String>,
    table: Vec<LieElement>,
}

impl DualLieTable {
    pub fn zero(names: Vec<String>) -> Self {
        let d = names.len();
        DualLieTable { names, table: vec![LieElement::zero(); d * d] }
    }

    /// Sets `[x_i, x_j] = v` and `[x_j, x_i] = -v`.
    pub fn set(&mut self, i: usize, j: usize, v: LieElement) {
        let d = self.names.len();
        self.table[j * d + i] = -v.clone();
        self.table[i * d + j] = v;
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LieElement {
        &self.table[i * self.names.len() + j]
    }

    /// Nonzero brackets `[x_i, x_j]` with `i < j`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, LieElement)> {
        let d = self.names.len();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                if !self.bracket(i, j).is_zero() {
                    out.push((i, j, self.bracket(i, j).clone()));
                }
            }
        }
        out
    }

    /// Every pair `i < j` where the two tables differ.
    pub fn differences(&self, other: &DualLieTable) -> Result<Vec<(usize, usize)>> {
        if self.names.len() != other.names.len() {
            return Err(Error::DimensionMismatch(self.names.len(), other.names.len()));
        }
        let d = self.names.len();
        Ok((0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .filter(|&(i, j)| self.bracket(i, j) != other.bracket(i, j))
            .collect())
    }

    /// Rescales the basis, `X_i -> c X_i`; brackets scale by `c`.
    pub fn rescaled(&self, c: &Rat) -> DualLieTable {
        DualLieTable { names: self.names.clone(), table: self.table.iter().map(|v| v.scaled(c)).collect() }
    }

    pub fn format_element(&self, x: &LieElement) -> String {
        x.format_with(|i| self.names[i].clone())
    }

    pub fn from_lie(alg: &LieAlgebra) -> Self {
        let d = alg.dim();
        let mut t = Self::zero(alg.names().to_vec());
        for i in 0..d {
            for j in i + 1..d {
                t.set(i, j, alg.bracket(i, j).clone());
            }
        }
        t
    }
}

impl BracketTable for DualLieTable {
    fn dim(&self) -> usize {
        self.names.len()
    }

    fn bracket_basis(&self, i: usize, j: usize) -> LieElement {
        self.bracket(i, j).clone()
    }

    fn basis_name(&self, i: usize) -> String {
        self.names[i].clone()
    }
}

/// Names `X_ij` dual to `E_ij` in `gl(n)`, row-major.
pub fn dual_gl_names(n: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            v.push(if n <= 9 { format!("X_{i}{j}") } else { format!("X_{i}_{j}") });
        }
    }
    v
}

/// The standard dual Lie structure on `gl(n)^*` in the basis `X_ij`.
///
/// Diagonal against upper: `[X_ii, X_kl] = d_ik X_il - d_il X_ki` (`k < l`),
/// with the opposite sign against lower; upper against upper
/// `2(d_jk X_il - d_il X_kj)`, lower against lower the negative of that;
/// everything else vanishes.
pub fn make_dual_dj(n: usize) -> Result<DualLieTable> {
    if n < 2 {
        return Err(Error::ConstraintViolation(format!("n >= 2 required, got {n}")));
    }
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let x = |i: usize, j: usize| LieElement::basis(idx(i, j));
    let d = |a: usize, b: usize| if a == b { Rat::one() } else { Rat::zero() };
    let mut t = DualLieTable::zero(dual_gl_names(n));
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[p + 1..] {
            let mut v = LieElement::zero();
            if i == j && k != l {
                let s = if k < l { int(1) } else { int(-1) };
                v.add_scaled(&x(i, l), &(d(i, k) * &s));
                v.add_scaled(&x(k, i), &(-d(i, l) * &s));
            } else if k == l && i != j {
                let s = if i < j { int(1) } else { int(-1) };
                // [X_ij, X_kk] = -[X_kk, X_ij]
                v.add_scaled(&x(k, j), &(-d(k, i) * &s));
                v.add_scaled(&x(i, k), &(d(k, j) * &s));
            } else if (i < j && k < l) || (i > j && k > l) {
                let s = if i < j { int(2) } else { int(-2) };
                v.add_scaled(&x(i, l), &(d(j, k) * &s));
                v.add_scaled(&x(k, j), &(-d(i, l) * &s));
            }
            if !v.is_zero() {
                t.set(idx(i, j), idx(k, l), v);
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dj_examples() {
        let t = make_dual_dj(4).unwrap();
        let i = |s: &str| t.index_of(s).unwrap();
        assert_eq!(t.bracket(i("X_11"), i("X_12")), &LieElement::basis(i("X_12")));
        assert_eq!(t.bracket(i("X_12"), i("X_23")), &LieElement::basis(i("X_13")).scaled(&int(2)));
        assert!(t.bracket(i("X_12"), i("X_34")).is_zero());
        assert_eq!(t.bracket(i("X_12"), i("X_11")), &-LieElement::basis(i("X_12")));
        assert_eq!(t.bracket(i("X_11"), i("X_21")), &LieElement::basis(i("X_21")));
    }

    #[test]
    fn dj_is_lie() {
        for n in 2..=4 {
            assert!(make_dual_dj(n).unwrap().jacobi_witness().is_none(), "n = {n}");
        }
    }
}
