//! The enveloping algebra `U(g)` in a PBW basis, its tensor powers, and
//! truncated power series in the formal parameter `xi`.
//!
//! Elements are plain data ([`Tensor`], [`Series`]); every operation that
//! needs the bracket goes through a [`Uea`] context, which owns the
//! straightening caches.

mod series;
mod tensor;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use smallvec::SmallVec;

pub use series::Series;
pub use tensor::{key_weight, Key, Tensor};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieElement};
use crate::rat::{binomial, int, Rat};

/// Exponent vector of a single PBW monomial.
pub type Mono = SmallVec<[u8; 16]>;

type Terms = Arc<Vec<(Mono, Rat)>>;

/// Multiplication context for `U(g)` and its tensor powers.
#[derive(Debug)]
pub struct Uea {
    alg: Arc<LieAlgebra>,
    gen_cache: RwLock<HashMap<(Mono, usize), Terms>>,
    mono_cache: RwLock<HashMap<(Mono, Mono), Terms>>,
}

fn last_index(m: &[u8]) -> Option<usize> {
    m.iter().rposition(|&e| e > 0)
}

fn first_index(m: &[u8]) -> Option<usize> {
    m.iter().position(|&e| e > 0)
}

fn accumulate(acc: &mut HashMap<Mono, Rat>, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(m).or_insert_with(Rat::zero);
    *slot += c;
}

fn finish(acc: HashMap<Mono, Rat>) -> Vec<(Mono, Rat)> {
    let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

impl Uea {
    pub fn new(alg: Arc<LieAlgebra>) -> Self {
        Uea { alg, gen_cache: RwLock::default(), mono_cache: RwLock::default() }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `m * x_j` in normal order.
    fn mul_gen(&self, m: &[u8], j: usize) -> Terms {
        if last_index(m).is_none_or(|k| k <= j) {
            let mut r = Mono::from_slice(m);
            r[j] += 1;
            return Arc::new(vec![(r, Rat::one())]);
        }
        let key = (Mono::from_slice(m), j);
        if let Some(hit) = self.gen_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        // m = m' x_k with k > j:  m' x_k x_j = (m' x_j) x_k + m' [x_k, x_j]
        let k = last_index(m).unwrap();
        let mut rest = Mono::from_slice(m);
        rest[k] -= 1;
        let mut acc = HashMap::new();
        for (t, c) in self.mul_gen(&rest, j).iter() {
            for (u, d) in self.mul_gen(t, k).iter() {
                accumulate(&mut acc, u.clone(), c * d);
            }
        }
        for (l, c) in self.alg.bracket(k, j).iter() {
            for (u, d) in self.mul_gen(&rest, l).iter() {
                accumulate(&mut acc, u.clone(), c * d);
            }
        }
        let out = Arc::new(finish(acc));
        self.gen_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Product of two PBW monomials in normal order.
    pub fn mul_mono(&self, a: &[u8], b: &[u8]) -> Terms {
        match (last_index(a), first_index(b)) {
            (None, _) => return Arc::new(vec![(Mono::from_slice(b), Rat::one())]),
            (_, None) => return Arc::new(vec![(Mono::from_slice(a), Rat::one())]),
            (Some(la), Some(fb)) if la <= fb => {
                let mut r = Mono::from_slice(a);
                for (x, y) in r.iter_mut().zip(b) {
                    *x += y;
                }
                return Arc::new(vec![(r, Rat::one())]);
            }
            _ => {}
        }
        let key = (Mono::from_slice(a), Mono::from_slice(b));
        if let Some(hit) = self.mono_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut cur: Vec<(Mono, Rat)> = vec![(Mono::from_slice(a), Rat::one())];
        for (j, &e) in b.iter().enumerate() {
            for _ in 0..e {
                let mut acc = HashMap::new();
                for (m, c) in &cur {
                    for (u, d) in self.mul_gen(m, j).iter() {
                        accumulate(&mut acc, u.clone(), c * d);
                    }
                }
                cur = finish(acc);
            }
        }
        let out = Arc::new(cur);
        self.mono_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// PBW normal form of the word `x_{w_1} x_{w_2} ...`.
    pub fn normal_order(&self, word: &[usize]) -> Tensor {
        let d = self.dim();
        let mut cur: Vec<(Mono, Rat)> = vec![(Mono::from_elem(0, d), Rat::one())];
        for &j in word {
            let mut acc = HashMap::new();
            for (m, c) in &cur {
                for (u, e) in self.mul_gen(m, j).iter() {
                    accumulate(&mut acc, u.clone(), c * e);
                }
            }
            cur = finish(acc);
        }
        let mut out = Tensor::zero(1, d);
        for (m, c) in cur {
            out.add_term(Key::from_slice(&m), c);
        }
        out
    }

    pub fn generator(&self, i: usize) -> Tensor {
        Tensor::generator(self.dim(), i)
    }

    /// A Lie element viewed in `U(g)`.
    pub fn lie(&self, x: &LieElement) -> Tensor {
        let mut out = Tensor::zero(1, self.dim());
        for (i, c) in x.iter() {
            out.add_scaled(&self.generator(i), c);
        }
        out
    }

    /// Slotwise product of two tensors of equal arity.
    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Result<Tensor> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(a.arity(), b.arity()));
        }
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let (arity, d) = (a.arity(), self.dim());
        if a.is_zero() || b.is_zero() {
            return Tensor::zero(arity, d);
        }
        let partial = |(ka, ca): (&Key, &Rat)| {
            let mut out = Tensor::zero(arity, d);
            for (kb, cb) in b.iter() {
                let c = ca * cb;
                let slots: Vec<Terms> =
                    (0..arity).map(|s| self.mul_mono(&ka[s * d..(s + 1) * d], &kb[s * d..(s + 1) * d])).collect();
                product_into(&mut out, &slots, d, &c);
            }
            out
        };
        if a.len() * b.len() < 64 {
            let mut out = Tensor::zero(arity, d);
            for t in a.iter() {
                out.add_assign(&partial(t));
            }
            return out;
        }
        let parts: Vec<Tensor> = a.terms().par_iter().map(partial).collect();
        let mut out = Tensor::zero(arity, d);
        for p in &parts {
            out.add_assign(p);
        }
        out
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &Tensor, b: &Tensor) -> Result<Tensor> {
        let mut out = self.mul(a, b)?;
        out.sub_assign(&self.mul(b, a)?);
        Ok(out)
    }

    /// `m(a (x) b) = ab`, multiplying slots `s` and `s + 1` together.
    pub fn slot_product(&self, t: &Tensor, s: usize) -> Tensor {
        let d = self.dim();
        let mut out = Tensor::zero(t.arity() - 1, d);
        for (k, c) in t.iter() {
            for (m, e) in self.mul_mono(&k[s * d..(s + 1) * d], &k[(s + 1) * d..(s + 2) * d]).iter() {
                let mut nk = Key::with_capacity(k.len() - d);
                nk.extend_from_slice(&k[..s * d]);
                nk.extend_from_slice(m);
                nk.extend_from_slice(&k[(s + 2) * d..]);
                out.add_term(nk, c * e);
            }
        }
        out
    }

    /// `Delta_0` of a PBW monomial: the sum over `k <= e` of
    /// `prod binom(e_i, k_i) x^k (x) x^(e-k)`.
    pub fn primitive_coproduct_mono(&self, m: &[u8]) -> Tensor {
        let d = m.len();
        let mut out = Tensor::zero(2, d);
        let mut k = vec![0u8; d];
        loop {
            let c = (0..d).fold(Rat::one(), |acc, i| acc * binomial(&int(m[i] as i64), k[i] as usize));
            let mut key = Key::from_slice(&k);
            key.extend(m.iter().zip(&k).map(|(e, ki)| e - ki));
            out.add_term(key, c);
            let mut i = 0;
            while i < d && k[i] == m[i] {
                k[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
            k[i] += 1;
        }
        out
    }

    pub fn primitive_coproduct(&self, a: &Tensor) -> Tensor {
        a.expand_slot(0, 2, |m| self.primitive_coproduct_mono(m))
    }

    /// `S_0(x_{i_1} ... x_{i_k}) = (-1)^k x_{i_k} ... x_{i_1}`, normal ordered.
    pub fn antipode0_mono(&self, m: &[u8]) -> Tensor {
        let mut word = Vec::new();
        for (i, &e) in m.iter().enumerate().rev() {
            word.extend(std::iter::repeat_n(i, e as usize));
        }
        let sign = if word.len() % 2 == 0 { int(1) } else { int(-1) };
        self.normal_order(&word).scaled(&sign)
    }

    pub fn antipode0(&self, a: &Tensor) -> Tensor {
        a.expand_slot(0, 1, |m| self.antipode0_mono(m))
    }

    pub fn counit(&self, a: &Tensor) -> Rat {
        a.constant()
    }

    /// Anti-multiplicative extension of generator images to a monomial.
    pub fn anti_extend_mono(&self, m: &[u8], images: &[Tensor]) -> Tensor {
        let mut out = Tensor::unit(1, self.dim());
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out = self.mul_unchecked(&images[i], &out);
            }
        }
        out
    }

    pub fn series_mul(&self, a: &Series, b: &Series) -> Result<Series> {
        a.check_compatible(b)?;
        let n = a.order();
        let mut coeffs: Vec<Tensor> = (0..=n).map(|_| Tensor::zero(a.arity(), self.dim())).collect();
        let pairs: Vec<(usize, usize)> = (0..=n)
            .flat_map(|i| (0..=n - i).map(move |j| (i, j)))
            .filter(|&(i, j)| !a.coeff(i).is_zero() && !b.coeff(j).is_zero())
            .collect();
        for (i, j) in pairs {
            let p = self.mul_unchecked(a.coeff(i), b.coeff(j));
            coeffs[i + j].add_assign(&p);
        }
        Ok(Series::from_coeffs(a.arity(), self.dim(), coeffs))
    }

    /// Product of several series, left to right.
    pub fn series_product(&self, factors: &[&Series]) -> Result<Series> {
        let mut it = factors.iter();
        let first = it.next().expect("empty product");
        let mut acc = (*first).clone();
        for f in it {
            acc = self.series_mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `sum_k X^k / k!`; requires a vanishing constant term.
    pub fn series_exp(&self, x: &Series) -> Result<Series> {
        if !x.coeff(0).is_zero() {
            return Err(Error::OrderViolation);
        }
        let mut out = Series::unit(x.arity(), self.dim(), x.order());
        let mut power = out.clone();
        for k in 1..=x.order() {
            power = self.series_mul(&power, x)?.scaled(&(int(1) / int(k as i64)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `sum_k c_k (U - 1)^k` for a unit-leading `U`.
    fn unit_series_fn<F: Fn(usize) -> Rat>(&self, u: &Series, c: F) -> Result<Series> {
        let one = Series::unit(u.arity(), self.dim(), u.order());
        if u.coeff(0) != one.coeff(0) {
            return Err(Error::UnitViolation);
        }
        let x = u.sub(&one);
        let mut out = one.scaled(&c(0));
        let mut power = one;
        for k in 1..=u.order() {
            power = self.series_mul(&power, &x)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scaled(&c(k)));
        }
        Ok(out)
    }

    pub fn series_log(&self, u: &Series) -> Result<Series> {
        self.unit_series_fn(u, |k| {
            if k == 0 {
                Rat::zero()
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                int(s) / int(k as i64)
            }
        })
    }

    /// `U^q` by the generalized binomial series.
    pub fn series_pow(&self, u: &Series, q: &Rat) -> Result<Series> {
        self.unit_series_fn(u, |k| binomial(q, k))
    }

    pub fn series_inverse(&self, u: &Series) -> Result<Series> {
        self.series_pow(u, &int(-1))
    }

    /// Applies `f` to the monomial in slot `s` of every coefficient, where
    /// `f` returns an arity-`m` series; orders add.
    pub fn series_expand_slot<F>(&self, x: &Series, s: usize, m: usize, mut f: F) -> Series
    where
        F: FnMut(&[u8]) -> Series,
    {
        let n = x.order();
        let d = self.dim();
        let arity = x.arity() - 1 + m;
        let mut coeffs: Vec<Tensor> = (0..=n).map(|_| Tensor::zero(arity, d)).collect();
        for i in 0..=n {
            for (k, c) in x.coeff(i).iter() {
                let img = f(&k[s * d..(s + 1) * d]);
                for j in 0..=n - i {
                    for (ik, ic) in img.coeff(j).iter() {
                        let mut nk = Key::with_capacity(arity * d);
                        nk.extend_from_slice(&k[..s * d]);
                        nk.extend_from_slice(ik);
                        nk.extend_from_slice(&k[(s + 1) * d..]);
                        coeffs[i + j].add_term(nk, c * ic);
                    }
                }
            }
        }
        Series::from_coeffs(arity, d, coeffs)
    }

    pub fn series_slot_product(&self, x: &Series, s: usize) -> Series {
        x.map(|t| self.slot_product(t, s))
    }

    /// Renders a PBW key as `x^2 y (x) z`.
    pub fn format_key(&self, key: &[u8]) -> String {
        let d = self.dim();
        let slots: Vec<String> =
            key.chunks(d)
                .map(|m| {
                    let parts: Vec<String> =
                        m.iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| {
                                if e == 1 {
                                    self.alg.name(i).to_string()
                                } else {
                                    format!("{}^{}", self.alg.name(i), e)
                                }
                            })
                            .collect();
                    if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join(" ")
                    }
                })
                .collect();
        slots.join(" (x) ")
    }
}

/// Adds `c * prod_s slots[s]` (a Cartesian product of per-slot results) to `out`.
fn product_into(out: &mut Tensor, slots: &[Terms], d: usize, c: &Rat) {
    let arity = slots.len();
    if arity == 0 {
        out.add_term(Key::new(), c.clone());
        return;
    }
    let mut idx = vec![0usize; arity];
    loop {
        let mut key = Key::with_capacity(arity * d);
        let mut coef = c.clone();
        for s in 0..arity {
            let (m, e) = &slots[s][idx[s]];
            key.extend_from_slice(m);
            coef *= e;
        }
        out.add_term(key, coef);
        let mut s = arity;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < slots[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_carrier_l, make_gl, CarrierParams};
    use crate::rat::rat;

    fn carrier() -> Uea {
        Uea::new(Arc::new(make_carrier_l(&CarrierParams::new(rat(1, 3), rat(2, 3), rat(5, 2), int(1))).unwrap()))
    }

    fn word(u: &Uea, names: &[&str]) -> Tensor {
        let idx: Vec<usize> = names.iter().map(|n| u.algebra().index_of(n).unwrap()).collect();
        u.normal_order(&idx)
    }

    #[test]
    fn ba_rewrites_once() {
        let u = carrier();
        let mut expect = word(&u, &["A", "B"]);
        expect.add_scaled(&word(&u, &["E"]), &rat(-5, 2));
        assert_eq!(word(&u, &["B", "A"]), expect);
    }

    #[test]
    fn he_picks_up_delta() {
        let u = carrier();
        let mut expect = word(&u, &["E", "H"]);
        expect.add_assign(&word(&u, &["E"]));
        assert_eq!(word(&u, &["H", "E"]), expect);
    }

    #[test]
    fn sorted_word_is_fixed() {
        let u = carrier();
        let t = word(&u, &["E", "E", "H"]);
        assert_eq!(t.len(), 1);
        let k: Key = SmallVec::from_slice(&[2, 0, 0, 1]);
        assert_eq!(t.get(&k), int(1));
    }

    #[test]
    fn commutator_matches_bracket() {
        let u = carrier();
        let (a, b) = (word(&u, &["A"]), word(&u, &["B"]));
        assert_eq!(u.commutator(&a, &b).unwrap(), word(&u, &["E"]).scaled(&rat(5, 2)));
    }

    #[test]
    fn gl4_triple_is_associative() {
        let u = Uea::new(Arc::new(make_gl(4).unwrap()));
        let g = |n: &str| u.lie(&u.algebra().resolve(n).unwrap());
        let (a, b, c) = (g("E_23"), g("E_34"), g("E_34"));
        let left = u.mul(&u.mul(&a, &b).unwrap(), &c).unwrap();
        let right = u.mul(&a, &u.mul(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        let reversed = word(&u, &["E_34", "E_34", "E_23"]);
        // E_34^2 E_23 = E_23 E_34^2 - 2 E_24 E_34
        let mut expect = word(&u, &["E_23", "E_34", "E_34"]);
        expect.add_scaled(&word(&u, &["E_24", "E_34"]), &int(-2));
        assert_eq!(reversed, expect);
    }

    #[test]
    fn slot_multiplication() {
        let u = carrier();
        let h = word(&u, &["H"]).tensor(&Tensor::unit(1, 4));
        let e = word(&u, &["E"]).tensor(&Tensor::unit(1, 4));
        let mut expect = word(&u, &["E", "H"]);
        expect.add_assign(&word(&u, &["E"]));
        assert_eq!(u.mul(&h, &e).unwrap(), expect.tensor(&Tensor::unit(1, 4)));
        assert!(matches!(u.mul(&h, &word(&u, &["E"])), Err(Error::ArityMismatch(2, 1))));
    }

    #[test]
    fn primitive_coproduct_examples() {
        let u = carrier();
        let one = Tensor::unit(1, 4);
        let e = word(&u, &["E"]);
        let mut e2 = word(&u, &["E", "E"]).tensor(&one);
        e2.add_scaled(&e.tensor(&e), &int(2));
        e2.add_assign(&one.tensor(&word(&u, &["E", "E"])));
        assert_eq!(u.primitive_coproduct(&word(&u, &["E", "E"])), e2);
        let (a, b) = (word(&u, &["A"]), word(&u, &["B"]));
        let ab = word(&u, &["A", "B"]);
        let mut expect = ab.tensor(&one);
        expect.add_assign(&a.tensor(&b));
        expect.add_assign(&b.tensor(&a));
        expect.add_assign(&one.tensor(&ab));
        assert_eq!(u.primitive_coproduct(&ab), expect);
    }

    #[test]
    fn antipode_examples() {
        let u = carrier();
        let e = word(&u, &["E"]);
        assert_eq!(u.antipode0(&e), e.neg());
        let mut expect = word(&u, &["A", "B"]);
        expect.add_scaled(&e, &rat(-5, 2));
        assert_eq!(u.antipode0(&word(&u, &["A", "B"])), expect);
        assert_eq!(u.counit(&Tensor::unit(1, 4)), int(1));
        let mut t = word(&u, &["E", "H"]);
        t.add_assign(&word(&u, &["A"]));
        assert_eq!(u.counit(&t), int(0));
    }
}
