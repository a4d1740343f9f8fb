use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Sparse linear combination of basis generators. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieElement {
    coords: BTreeMap<usize, Rat>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(i, Rat::one());
        LieElement { coords }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rat)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (i, c) in pairs {
            out.add_term(i, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> Rat {
        self.coords.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> + '_ {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(i).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (i, v) in other.iter() {
            self.add_term(i, &(v * c));
        }
    }

    pub fn scaled(&self, c: &Rat) -> LieElement {
        if c.is_zero() {
            return Self::zero();
        }
        LieElement { coords: self.coords.iter().map(|(&i, v)| (i, v * c)).collect() }
    }

    pub fn format_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs} "));
            }
            out.push_str(&name(i));
        }
        out
    }
}

impl AddAssign<&LieElement> for LieElement {
    fn add_assign(&mut self, rhs: &LieElement) {
        for (i, c) in rhs.iter() {
            self.add_term(i, c);
        }
    }
}

impl SubAssign<&LieElement> for LieElement {
    fn sub_assign(&mut self, rhs: &LieElement) {
        for (i, c) in rhs.iter() {
            self.add_term(i, &-c);
        }
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(mut self, rhs: LieElement) -> LieElement {
        self += &rhs;
        self
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(mut self, rhs: LieElement) -> LieElement {
        self -= &rhs;
        self
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement { coords: self.coords.into_iter().map(|(i, c)| (i, -c)).collect() }
    }
}
