use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::{AdjointTarget, LieAlgebra, LieElement};
use crate::pbw::Tensor;
use crate::rat::Rat;

/// An element of `g (x) g`, keyed by basis index pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiTensor {
    terms: BTreeMap<(usize, usize), Rat>,
}

impl BiTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// `x (x) y` for Lie elements.
    pub fn tensor(x: &LieElement, y: &LieElement) -> Self {
        let mut out = Self::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_term(i, j, &(a * b));
            }
        }
        out
    }

    /// `x ^ y = x (x) y - y (x) x`.
    pub fn wedge(x: &LieElement, y: &LieElement) -> Self {
        let mut out = Self::tensor(x, y);
        out.add_scaled(&Self::tensor(y, x), &-Rat::one());
        out
    }

    pub fn add_scaled(&mut self, other: &BiTensor, c: &Rat) {
        for (&(i, j), v) in other.iter() {
            self.add_term(i, j, &(v * c));
        }
    }

    pub fn scaled(&self, c: &Rat) -> BiTensor {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &BiTensor) -> BiTensor {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn flip(&self) -> BiTensor {
        BiTensor { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let mut s = self.clone();
        s.add_scaled(&self.flip(), &Rat::one());
        s.is_zero()
    }

    /// Reads an arity-2 tensor whose terms are all `x_i (x) x_j`.
    pub fn from_tensor(t: &Tensor) -> Result<Self> {
        let d = t.dim();
        let mut out = Self::zero();
        for (k, c) in t.iter() {
            let single = |m: &[u8]| -> Option<usize> {
                let mut it = m.iter().enumerate().filter(|(_, &e)| e > 0);
                match (it.next(), it.next()) {
                    (Some((i, 1)), None) => Some(i),
                    _ => None,
                }
            };
            match (single(&k[..d]), single(&k[d..])) {
                (Some(i), Some(j)) => out.add_term(i, j, c),
                _ => return Err(Error::NotFirstOrder(format!("term {:?} with coefficient {c}", k.as_slice()))),
            }
        }
        Ok(out)
    }

    /// As an arity-2 tensor in `U(g) (x) U(g)`.
    pub fn to_tensor(&self, dim: usize) -> Tensor {
        let mut out = Tensor::zero(2, dim);
        for (&(i, j), c) in self.iter() {
            out.add_scaled(&Tensor::generator(dim, i).tensor(&Tensor::generator(dim, j)), c);
        }
        out
    }

    pub fn format(&self, alg: &LieAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n > 0 {
                out.push_str(&format!(" {sign} "));
            } else if c.is_negative() {
                out.push('-');
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format!("{a} "));
            }
            out.push_str(&format!("{} (x) {}", alg.name(i), alg.name(j)));
        }
        out
    }
}

impl AdjointTarget for BiTensor {
    fn ad(&self, alg: &LieAlgebra, x: &LieElement) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in self.iter() {
            let (a, b) = (LieElement::basis(i), LieElement::basis(j));
            let xa = alg.bracket_elements(x, &a);
            let xb = alg.bracket_elements(x, &b);
            out.add_scaled(&Self::tensor(&xa, &b), c);
            out.add_scaled(&Self::tensor(&a, &xb), c);
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scaled(&self, c: &Rat) -> Self {
        BiTensor::scaled(self, c)
    }

    fn accumulate(&mut self, other: &Self) {
        self.add_scaled(other, &Rat::one());
    }
}

/// An element of `g (x) g (x) g`.
pub type TriTensor = BTreeMap<(usize, usize, usize), Rat>;

pub(crate) fn tri_add(t: &mut TriTensor, key: (usize, usize, usize), c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(key).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}
