use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{Coproduct, Twist};
use crate::error::{Error, Result};
use crate::pbw::{Mono, Series, Uea};

/// Antipode images of the generators, extended anti-multiplicatively.
#[derive(Debug)]
pub struct AntipodeTable {
    entries: Vec<Series>,
    memo: RwLock<HashMap<(Mono, usize), Series>>,
}

impl AntipodeTable {
    pub fn new(entries: Vec<Series>) -> Self {
        AntipodeTable { entries, memo: RwLock::default() }
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }
}

#[derive(Clone, Debug)]
pub enum Antipode {
    Primitive,
    Table(Arc<AntipodeTable>),
}

impl Antipode {
    pub fn table(entries: Vec<Series>) -> Self {
        Antipode::Table(Arc::new(AntipodeTable::new(entries)))
    }

    pub fn mono(&self, uea: &Uea, m: &[u8], order: usize) -> Series {
        match self {
            Antipode::Primitive => Series::constant(uea.antipode0_mono(m), order),
            Antipode::Table(t) => table_mono(uea, t, m, order),
        }
    }

    pub fn apply_at(&self, uea: &Uea, x: &Series, s: usize) -> Series {
        let n = x.order();
        uea.series_expand_slot(x, s, 1, |m| self.mono(uea, m, n))
    }

    pub fn apply(&self, uea: &Uea, x: &Series) -> Series {
        self.apply_at(uea, x, 0)
    }
}

fn table_mono(uea: &Uea, t: &AntipodeTable, m: &[u8], order: usize) -> Series {
    let Some(k) = m.iter().rposition(|&e| e > 0) else {
        return Series::unit(1, uea.dim(), order);
    };
    let key = (Mono::from_slice(m), order);
    if let Some(hit) = t.memo.read().unwrap().get(&key) {
        return hit.clone();
    }
    // S(m' x_k) = S(x_k) S(m')
    let mut rest = Mono::from_slice(m);
    rest[k] -= 1;
    let tail = table_mono(uea, t, &rest, order);
    let out = uea.series_mul(&t.entries[k].with_order(order), &tail).expect("antipode entries are arity 1");
    t.memo.write().unwrap().insert(key, out.clone());
    out
}

/// `v = sum f1 S(f2)` and the twisted antipode `S_F(x) = v S(x) v^{-1}`.
pub fn twist_antipode(uea: &Uea, f: &Twist, base: &Antipode) -> Result<(Series, Antipode)> {
    let n = f.order();
    let v = uea.series_slot_product(&base.apply_at(uea, f.element(), 1), 0);
    let vinv = uea.series_inverse(&v).map_err(|_| Error::NonInvertibleV)?;
    let entries = (0..uea.dim())
        .map(|i| {
            let mut m = Mono::from_elem(0, uea.dim());
            m[i] = 1;
            let s = base.mono(uea, &m, n);
            uea.series_mul(&uea.series_mul(&v, &s)?, &vinv)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((v, Antipode::table(entries)))
}

/// Solves `m(S (x) id) Delta(x) = 0` on generators order by order, for a
/// coproduct whose constant term is primitive.
pub fn solve_antipode(uea: &Uea, coproduct: &Coproduct, order: usize) -> Result<Antipode> {
    let d = uea.dim();
    let deltas: Vec<Series> = (0..d).map(|i| coproduct.generator(uea, i, order)).collect();
    let mut images: Vec<Series> = (0..d).map(|i| Series::constant(uea.generator(i), order).neg()).collect();
    for _ in 0..=order {
        let current = Antipode::table(images.clone());
        let mut next = Vec::with_capacity(d);
        for (i, delta) in deltas.iter().enumerate() {
            // S(x) = -x - sum over higher-order terms of S(a) b
            let mut higher = delta.clone();
            *higher.coeff_mut(0) = crate::pbw::Tensor::zero(2, d);
            let applied = uea.series_slot_product(&current.apply_at(uea, &higher, 0), 0);
            next.push(Series::constant(uea.generator(i), order).add(&applied).neg());
        }
        if next == images {
            break;
        }
        images = next;
    }
    Ok(Antipode::table(images))
}
