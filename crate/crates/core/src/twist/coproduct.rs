use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use super::Twist;
use crate::error::Result;
use crate::pbw::{Mono, Series, Uea};

/// Coproduct images of the generators, extended multiplicatively.
#[derive(Debug)]
pub struct CoproductTable {
    order: usize,
    entries: Vec<Series>,
    memo: RwLock<HashMap<Mono, Series>>,
}

impl Clone for CoproductTable {
    fn clone(&self) -> Self {
        CoproductTable::new(self.entries.clone())
    }
}

impl PartialEq for CoproductTable {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl CoproductTable {
    /// `entries[i]` is `Delta(x_i)`; all entries share one truncation order.
    pub fn new(entries: Vec<Series>) -> Self {
        let order = entries.first().map_or(0, Series::order);
        CoproductTable { order, entries, memo: RwLock::default() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Series {
        &self.entries[i]
    }
}

/// A coproduct on `U(g)[[xi]]`: the primitive one or a generator table.
#[derive(Clone, Debug)]
pub enum Coproduct {
    Primitive,
    Table(Arc<CoproductTable>),
}

impl Coproduct {
    pub fn table(entries: Vec<Series>) -> Self {
        Coproduct::Table(Arc::new(CoproductTable::new(entries)))
    }

    /// `Delta` of a PBW monomial, as an arity-2 series.
    pub fn mono(&self, uea: &Uea, m: &[u8], order: usize) -> Series {
        match self {
            Coproduct::Primitive => Series::constant(uea.primitive_coproduct_mono(m), order),
            Coproduct::Table(t) => table_mono(uea, t, m).with_order(order),
        }
    }

    pub fn generator(&self, uea: &Uea, i: usize, order: usize) -> Series {
        let mut m = Mono::from_elem(0, uea.dim());
        m[i] = 1;
        self.mono(uea, &m, order)
    }

    /// Applies `Delta` to slot `s` of `x`, raising the arity by one.
    pub fn apply_at(&self, uea: &Uea, x: &Series, s: usize) -> Series {
        let n = x.order();
        uea.series_expand_slot(x, s, 2, |m| self.mono(uea, m, n))
    }

    pub fn apply(&self, uea: &Uea, x: &Series) -> Series {
        self.apply_at(uea, x, 0)
    }
}

fn table_mono(uea: &Uea, t: &CoproductTable, m: &[u8]) -> Series {
    let Some(k) = m.iter().rposition(|&e| e > 0) else {
        return Series::unit(2, uea.dim(), t.order);
    };
    if m.iter().map(|&e| e as usize).sum::<usize>() == 1 {
        return t.entries[k].clone();
    }
    if let Some(hit) = t.memo.read().unwrap().get(m) {
        return hit.clone();
    }
    let mut rest = Mono::from_slice(m);
    rest[k] -= 1;
    let head = table_mono(uea, t, &rest);
    let out = uea.series_mul(&head, &t.entries[k]).expect("coproduct entries share order and arity");
    t.memo.write().unwrap().insert(Mono::from_slice(m), out.clone());
    out
}

/// `Delta_F(x) = F Delta(x) F^{-1}`.
pub fn twist_coproduct(uea: &Uea, f: &Twist, base: &Coproduct, x: &Series) -> Result<Series> {
    let dx = base.apply(uea, x);
    uea.series_mul(&uea.series_mul(f.element(), &dx)?, f.inverse())
}

/// `Delta_F` on every generator, in basis order.
pub fn coproduct_table(uea: &Uea, f: &Twist, base: &Coproduct) -> Result<CoproductTable> {
    let n = f.order();
    let entries: Vec<Series> = (0..uea.dim())
        .into_par_iter()
        .map(|i| {
            let dx = base.generator(uea, i, n);
            uea.series_mul(&uea.series_mul(f.element(), &dx)?, f.inverse())
        })
        .collect::<Result<_>>()?;
    Ok(CoproductTable::new(entries))
}
