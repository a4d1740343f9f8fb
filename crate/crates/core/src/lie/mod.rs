//! Finite-dimensional Lie algebras given by structure constants.
//!
//! A [`LieAlgebra`] is a named basis together with a dense table of brackets
//! `[x_i, x_j]`, each stored as a sparse [`LieElement`]. Construction goes
//! through [`LieAlgebra::define`], which completes antisymmetry from the
//! supplied pairs and rejects tables violating the Jacobi identity.

mod element;
mod families;
mod flow;
mod frobenius;
mod morphism;

use std::collections::{BTreeMap, HashMap};

pub use element::LieElement;
pub use families::{gl_weights, make_borel2, make_carrier_l, make_gl, CarrierParams};
pub use flow::{adjoint_flow, adjoint_flow_terms, AdjointTarget};
pub use frobenius::{frobenius_form, FrobeniusForm};
pub use morphism::{check_morphism, Morphism};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Anything with a bilinear bracket on an indexed basis.
///
/// Implemented by [`LieAlgebra`] and by dual tables, so Jacobi-type checks
/// can be shared.
pub trait BracketTable {
    fn dim(&self) -> usize;
    fn bracket_basis(&self, i: usize, j: usize) -> LieElement;
    fn basis_name(&self, i: usize) -> String;

    fn bracket_of(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                out.add_scaled(&self.bracket_basis(i, j), &(ca * cb));
            }
        }
        out
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis elements.
    fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> LieElement {
        let x = LieElement::basis(i);
        let y = LieElement::basis(j);
        let z = LieElement::basis(k);
        let mut out = self.bracket_of(&self.bracket_basis(i, j), &z);
        out += &self.bracket_of(&self.bracket_basis(j, k), &x);
        out += &self.bracket_of(&self.bracket_basis(k, i), &y);
        out
    }

    /// First basis triple `i < j < k` on which Jacobi fails.
    fn jacobi_witness(&self) -> Option<(usize, usize, usize, LieElement)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = self.jacobi_sum(i, j, k);
                    if !s.is_zero() {
                        return Some((i, j, k, s));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    names: Vec<String>,
    index: HashMap<String, usize>,
    aliases: BTreeMap<String, LieElement>,
    table: Vec<LieElement>,
    weights: Option<Vec<i64>>,
}

impl LieAlgebra {
    /// Builds an algebra from generator names and bracket pairs.
    ///
    /// Each entry `(x, y, v)` sets `[x, y] = v` and `[y, x] = -v`. Unlisted
    /// pairs bracket to zero. Entries giving contradictory values for the
    /// same unordered pair are rejected.
    pub fn define<S: AsRef<str>>(names: &[S], brackets: &[(S, S, LieElement)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let dim = names.len();
        let mut table = vec![LieElement::zero(); dim * dim];
        let mut set = vec![false; dim * dim];
        for (x, y, v) in brackets {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = *index.get(x).ok_or_else(|| Error::UnknownGenerator(x.to_string()))?;
            let j = *index.get(y).ok_or_else(|| Error::UnknownGenerator(y.to_string()))?;
            if let Some(bad) = v.iter().map(|(k, _)| k).find(|&k| k >= dim) {
                return Err(Error::UnknownGenerator(format!("#{bad}")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::InconsistentBracket(x.into(), y.into()));
                }
                continue;
            }
            let neg = -v.clone();
            if (set[i * dim + j] && &table[i * dim + j] != v) || (set[j * dim + i] && table[j * dim + i] != neg) {
                return Err(Error::InconsistentBracket(x.into(), y.into()));
            }
            table[i * dim + j] = v.clone();
            table[j * dim + i] = neg;
            set[i * dim + j] = true;
            set[j * dim + i] = true;
        }
        let alg = LieAlgebra { names, index, aliases: BTreeMap::new(), table, weights: None };
        if let Some((i, j, k, _)) = alg.jacobi_witness() {
            return Err(Error::JacobiViolation(alg.names[i].clone(), alg.names[j].clone(), alg.names[k].clone()));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LieElement {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_elements(&self, a: &LieElement, b: &LieElement) -> LieElement {
        self.bracket_of(a, b)
    }

    /// Registers a named linear combination, e.g. `H_12 = E_11 - E_22`.
    pub fn add_alias(&mut self, name: &str, value: LieElement) -> Result<()> {
        if self.index.contains_key(name) || self.aliases.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.aliases.insert(name.to_string(), value);
        Ok(())
    }

    pub fn aliases(&self) -> &BTreeMap<String, LieElement> {
        &self.aliases
    }

    /// Resolves a generator name or an alias.
    pub fn resolve(&self, name: &str) -> Result<LieElement> {
        if let Some(&i) = self.index.get(name) {
            return Ok(LieElement::basis(i));
        }
        self.aliases.get(name).cloned().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.dim() {
            return Err(Error::DimensionMismatch(weights.len(), self.dim()));
        }
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if let Some((k, _)) = self.bracket(i, j).iter().find(|(k, _)| weights[*k] != weights[i] + weights[j]) {
                    return Err(Error::ConstraintViolation(format!(
                        "weights not additive: [{}, {}] contains {} of weight {}, expected {}",
                        self.name(i),
                        self.name(j),
                        self.name(k),
                        weights[k],
                        weights[i] + weights[j]
                    )));
                }
            }
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    /// Weight of a homogeneous element, `None` if mixed or unweighted.
    pub fn weight_of(&self, x: &LieElement) -> Option<i64> {
        let w = self.weights.as_ref()?;
        let mut it = x.iter().map(|(i, _)| w[i]);
        let first = it.next()?;
        it.all(|v| v == first).then_some(first)
    }

    /// Eigenvalue `c` with `[h, x] = c x`, if `x` is an eigenvector of `ad h`.
    pub fn eigenvalue(&self, h: &LieElement, x: &LieElement) -> Option<Rat> {
        let hx = self.bracket_elements(h, x);
        let (i, cx) = x.iter().next()?;
        let c = hx.get(i) / cx;
        (hx == x.scaled(&c)).then_some(c)
    }

    pub fn format_element(&self, x: &LieElement) -> String {
        x.format_with(|i| self.names[i].clone())
    }
}

impl BracketTable for LieAlgebra {
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

/// Shorthand for `LieAlgebra::define`.
pub fn define_lie_algebra<S: AsRef<str>>(names: &[S], brackets: &[(S, S, LieElement)]) -> Result<LieAlgebra> {
    LieAlgebra::define(names, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn e(i: usize) -> LieElement {
        LieElement::basis(i)
    }

    #[test]
    fn borel_is_valid() {
        let b = define_lie_algebra(&["H", "E"], &[("H", "E", e(1).scaled(&int(2)))]).unwrap();
        assert_eq!(b.bracket(0, 1), &e(1).scaled(&int(2)));
        assert_eq!(b.bracket(1, 0), &e(1).scaled(&int(-2)));
        assert!(b.bracket(0, 0).is_zero());
    }

    #[test]
    fn weights_must_be_additive() {
        let b = define_lie_algebra(&["H", "E"], &[("H", "E", e(1).scaled(&int(2)))]).unwrap();
        assert!(b.clone().with_weights(vec![0, 1]).is_ok());
        let err = b.with_weights(vec![1, 1]).unwrap_err().to_string();
        assert!(err.contains("[H, E] contains E of weight 1, expected 2"), "{err}");
    }

    #[test]
    fn abelian_one_dim() {
        let a = define_lie_algebra::<&str>(&["X"], &[]).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.bracket(0, 0).is_zero());
    }

    #[test]
    fn cyclic_three_dim_table_is_lie() {
        // [X,Y]=Z, [Y,Z]=X, [X,Z]=Y. By hand on the only nontrivial triple:
        // [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = [Z,Z] + [X,X] + [-Y,Y] = 0,
        // so this is so(2,1) and must be accepted.
        let names = ["X", "Y", "Z"];
        let brackets = [("X", "Y", e(2)), ("Y", "Z", e(0)), ("X", "Z", e(1))];
        let alg = define_lie_algebra(&names, &brackets).unwrap();
        assert!(alg.jacobi_sum(0, 1, 2).is_zero());
    }

    #[test]
    fn jacobi_violation_reports_triple() {
        // [X,Y]=X, [X,Z]=X, [Y,Z]=Y gives [X,Z] + [Y,X] + [-X,Y] = -X.
        let names = ["X", "Y", "Z"];
        let brackets = [("X", "Y", e(0)), ("X", "Z", e(0)), ("Y", "Z", e(1))];
        let err = define_lie_algebra(&names, &brackets).unwrap_err();
        assert_eq!(err, Error::JacobiViolation("X".into(), "Y".into(), "Z".into()));
    }

    #[test]
    fn duplicate_name() {
        let err = define_lie_algebra::<&str>(&["X", "X"], &[]).unwrap_err();
        assert_eq!(err, Error::DuplicateName("X".into()));
    }

    #[test]
    fn unknown_name_in_bracket() {
        let err = define_lie_algebra(&["X"], &[("X", "Q", e(0))]).unwrap_err();
        assert_eq!(err, Error::UnknownGenerator("Q".into()));
    }
}
