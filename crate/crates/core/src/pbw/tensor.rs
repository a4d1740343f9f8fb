use std::collections::BTreeMap;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::rat::Rat;

/// Concatenated exponent vectors, one block of `dim` entries per slot.
pub type Key = SmallVec<[u8; 48]>;

/// A sparse element of `U(g)^{(x) arity}` in the PBW basis. Arity 1 is an
/// element of `U(g)` itself; arity 0 is a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    arity: usize,
    dim: usize,
    terms: BTreeMap<Key, Rat>,
}

impl Tensor {
    pub fn zero(arity: usize, dim: usize) -> Self {
        Tensor { arity, dim, terms: BTreeMap::new() }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(arity: usize, dim: usize) -> Self {
        Self::monomial(arity, dim, Key::from_elem(0, arity * dim), Rat::one())
    }

    pub fn scalar(arity: usize, dim: usize, c: Rat) -> Self {
        Self::monomial(arity, dim, Key::from_elem(0, arity * dim), c)
    }

    pub fn monomial(arity: usize, dim: usize, key: Key, c: Rat) -> Self {
        assert_eq!(key.len(), arity * dim, "key length does not match arity and dim");
        let mut t = Self::zero(arity, dim);
        t.add_term(key, c);
        t
    }

    /// The generator `x_i` in `U(g)`.
    pub fn generator(dim: usize, i: usize) -> Self {
        let mut key = Key::from_elem(0, dim);
        key[i] = 1;
        Self::monomial(1, dim, key, Rat::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Rat)> + '_ {
        self.terms.iter()
    }

    pub(crate) fn terms(&self) -> &BTreeMap<Key, Rat> {
        &self.terms
    }

    pub fn get(&self, key: &[u8]) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    /// The coefficient of the unit monomial.
    pub fn constant(&self) -> Rat {
        self.get(&Key::from_elem(0, self.arity * self.dim))
    }

    pub fn slot<'a>(&self, key: &'a [u8], s: usize) -> &'a [u8] {
        &key[s * self.dim..(s + 1) * self.dim]
    }

    pub fn add_term(&mut self, key: Key, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Rat) {
        debug_assert_eq!((self.arity, self.dim), (other.arity, other.dim));
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        self.add_scaled(other, &Rat::one());
    }

    pub fn sub_assign(&mut self, other: &Tensor) {
        self.add_scaled(other, &-Rat::one());
    }

    pub fn scaled(&self, c: &Rat) -> Tensor {
        if c.is_zero() {
            return Self::zero(self.arity, self.dim);
        }
        Tensor { arity: self.arity, dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Tensor {
        self.scaled(&-Rat::one())
    }

    /// `a (x) b`, concatenating slots.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.arity + other.arity, self.dim);
        for (ka, ca) in self.iter() {
            for (kb, cb) in other.iter() {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// Places slot `i` of `self` into slot `positions[i]` of an arity
    /// `out_arity` tensor and fills the other slots with `1`.
    pub fn embed(&self, out_arity: usize, positions: &[usize]) -> Tensor {
        assert_eq!(positions.len(), self.arity);
        let d = self.dim;
        let mut out = Self::zero(out_arity, d);
        for (k, c) in self.iter() {
            let mut nk = Key::from_elem(0, out_arity * d);
            for (s, &p) in positions.iter().enumerate() {
                nk[p * d..(p + 1) * d].copy_from_slice(&k[s * d..(s + 1) * d]);
            }
            out.add_term(nk, c.clone());
        }
        out
    }

    /// Slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.arity);
        let d = self.dim;
        let mut out = Self::zero(self.arity, d);
        for (k, c) in self.iter() {
            let mut nk = Key::with_capacity(k.len());
            for &p in perm {
                nk.extend_from_slice(&k[p * d..(p + 1) * d]);
            }
            out.add_term(nk, c.clone());
        }
        out
    }

    /// `a (x) b -> b (x) a`.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// Applies the counit in slot `s`, lowering the arity by one.
    pub fn counit_at(&self, s: usize) -> Tensor {
        let d = self.dim;
        let mut out = Self::zero(self.arity - 1, d);
        for (k, c) in self.iter() {
            if k[s * d..(s + 1) * d].iter().all(|&e| e == 0) {
                let mut nk = Key::with_capacity(k.len() - d);
                nk.extend_from_slice(&k[..s * d]);
                nk.extend_from_slice(&k[(s + 1) * d..]);
                out.add_term(nk, c.clone());
            }
        }
        out
    }

    /// Replaces each monomial in slot `s` by `f(monomial)`, an arity-`m`
    /// tensor, splicing its slots in place of slot `s`.
    pub fn expand_slot<F: FnMut(&[u8]) -> Tensor>(&self, s: usize, m: usize, mut f: F) -> Tensor {
        let d = self.dim;
        let mut out = Self::zero(self.arity - 1 + m, d);
        for (k, c) in self.iter() {
            let img = f(&k[s * d..(s + 1) * d]);
            debug_assert_eq!(img.arity, m);
            for (ik, ic) in img.iter() {
                let mut nk = Key::with_capacity(out.arity * d);
                nk.extend_from_slice(&k[..s * d]);
                nk.extend_from_slice(ik);
                nk.extend_from_slice(&k[(s + 1) * d..]);
                out.add_term(nk, c * ic);
            }
        }
        out
    }

    /// Weight of every term under a weight character, `None` for the zero
    /// tensor or a tensor mixing weights.
    pub fn homogeneous_weight(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.iter().map(|(k, _)| key_weight(k, weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// First term whose weight differs from `w`.
    pub fn weight_violation(&self, weights: &[i64], w: i64) -> Option<(Key, i64)> {
        self.iter().map(|(k, _)| (k.clone(), key_weight(k, weights))).find(|(_, kw)| *kw != w)
    }

    /// Maximum total degree over all terms.
    pub fn degree(&self) -> usize {
        self.iter().map(|(k, _)| k.iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
    }
}

pub fn key_weight(key: &[u8], weights: &[i64]) -> i64 {
    key.iter().enumerate().map(|(i, &e)| e as i64 * weights[i % weights.len()]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn embed_and_counit() {
        let t = Tensor::generator(2, 0).tensor(&Tensor::generator(2, 1));
        let e13 = t.embed(3, &[0, 2]);
        let k: Key = SmallVec::from_slice(&[1, 0, 0, 0, 0, 1]);
        assert_eq!(e13.get(&k), int(1));
        assert!(e13.counit_at(0).is_zero());
        let u = Tensor::unit(2, 2);
        assert_eq!(u.counit_at(1), Tensor::unit(1, 2));
    }

    #[test]
    fn flip_swaps() {
        let t = Tensor::generator(2, 0).tensor(&Tensor::generator(2, 1));
        assert_eq!(t.flip(), Tensor::generator(2, 1).tensor(&Tensor::generator(2, 0)));
    }

    #[test]
    fn zero_terms_are_pruned() {
        let mut t = Tensor::generator(3, 1);
        t.sub_assign(&Tensor::generator(3, 1));
        assert!(t.is_zero());
    }
}
