use num_traits::One;

use super::tensor::{key_weight, Key, Tensor};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A polynomial in `xi` truncated after `xi^order`, with tensor coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    arity: usize,
    dim: usize,
    coeffs: Vec<Tensor>,
}

impl Series {
    pub fn zero(arity: usize, dim: usize, order: usize) -> Self {
        Series { arity, dim, coeffs: (0..=order).map(|_| Tensor::zero(arity, dim)).collect() }
    }

    pub fn unit(arity: usize, dim: usize, order: usize) -> Self {
        Self::constant(Tensor::unit(arity, dim), order)
    }

    pub fn constant(t: Tensor, order: usize) -> Self {
        Self::from_tensor(t, 0, order)
    }

    /// `xi^power * t`, dropped entirely if `power > order`.
    pub fn from_tensor(t: Tensor, power: usize, order: usize) -> Self {
        let mut s = Self::zero(t.arity(), t.dim(), order);
        if power <= order {
            s.coeffs[power] = t;
        }
        s
    }

    pub fn from_coeffs(arity: usize, dim: usize, coeffs: Vec<Tensor>) -> Self {
        assert!(!coeffs.is_empty());
        Series { arity, dim, coeffs }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Tensor {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Tensor] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut Tensor {
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Tensor::is_zero)
    }

    pub(crate) fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn map<F: FnMut(&Tensor) -> Tensor>(&self, mut f: F) -> Series {
        let coeffs: Vec<Tensor> = self.coeffs.iter().map(&mut f).collect();
        let arity = coeffs[0].arity();
        Series { arity, dim: self.dim, coeffs }
    }

    pub fn add(&self, other: &Series) -> Series {
        debug_assert!(self.check_compatible(other).is_ok());
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        debug_assert!(self.check_compatible(other).is_ok());
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign(b);
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> Series {
        self.map(|t| t.scaled(c))
    }

    pub fn neg(&self) -> Series {
        self.scaled(&-Rat::one())
    }

    /// Multiplies by `xi^k`, dropping what falls past the order.
    pub fn shifted(&self, k: usize) -> Series {
        let n = self.order();
        let mut out = Self::zero(self.arity, self.dim, n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn with_order(&self, order: usize) -> Series {
        let mut out = Self::zero(self.arity, self.dim, order);
        for (k, c) in self.coeffs.iter().enumerate().take(order + 1) {
            out.coeffs[k] = c.clone();
        }
        out
    }

    pub fn tensor(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = Self::zero(self.arity + other.arity, self.dim, n);
        for i in 0..=n {
            for j in 0..=n - i {
                let t = self.coeffs[i].tensor(&other.coeffs[j]);
                out.coeffs[i + j].add_assign(&t);
            }
        }
        out
    }

    pub fn embed(&self, out_arity: usize, positions: &[usize]) -> Series {
        self.map(|t| t.embed(out_arity, positions))
    }

    pub fn permute(&self, perm: &[usize]) -> Series {
        self.map(|t| t.permute(perm))
    }

    pub fn flip(&self) -> Series {
        self.permute(&[1, 0])
    }

    pub fn counit_at(&self, s: usize) -> Series {
        self.map(|t| t.counit_at(s))
    }

    /// The first nonzero coefficient: `(xi power, key, value)`.
    pub fn witness(&self) -> Option<(usize, Key, Rat)> {
        self.coeffs.iter().enumerate().find_map(|(k, t)| t.iter().next().map(|(key, c)| (k, key.clone(), c.clone())))
    }

    /// First term of `xi^k` whose weight is not `base + k`.
    pub fn grading_violation(&self, weights: &[i64], base: i64) -> Option<(usize, Key, i64)> {
        self.coeffs.iter().enumerate().find_map(|(k, t)| {
            t.iter()
                .map(|(key, _)| (key, key_weight(key, weights)))
                .find(|(_, w)| *w != base + k as i64)
                .map(|(key, w)| (k, key.clone(), w))
        })
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(Tensor::len).sum()
    }
}
