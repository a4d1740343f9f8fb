use num_traits::{One, Zero};

use super::{Coproduct, SigmaContext};
use crate::error::{Error, Result};
use crate::pbw::{Series, Uea};
use crate::rat::{int, Rat};

/// Exponents of the group-like factors `f = 1 + xi gamma E` in
/// `Delta(A) = A (x) f^a + f^ap (x) A` and `Delta(B) = B (x) f^b + f^bp (x) B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergExponents {
    pub a: Rat,
    pub b: Rat,
    pub ap: Rat,
    pub bp: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeisenbergCase {
    /// `f_A f_B = f_E`, `f'_A f'_B = 1`.
    First,
    /// `f_A f_B = 1`, `f'_A f'_B = f_E`.
    Second,
}

impl HeisenbergExponents {
    pub fn new(a: Rat, b: Rat, ap: Rat, bp: Rat) -> Self {
        HeisenbergExponents { a, b, ap, bp }
    }

    pub fn case(&self) -> Option<HeisenbergCase> {
        let s = &self.a + &self.b;
        let sp = &self.ap + &self.bp;
        if s.is_one() && sp.is_zero() {
            Some(HeisenbergCase::First)
        } else if s.is_zero() && sp.is_one() {
            Some(HeisenbergCase::Second)
        } else {
            None
        }
    }
}

/// The coalgebra on the Heisenberg carrier `(E, A, B, H)` with central `E`
/// and `H`:
///
/// ```text
/// Delta(E) = E (x) f + 1 (x) E
/// Delta(A) = A (x) f^a + f^ap (x) A
/// Delta(B) = B (x) f^b + f^bp (x) B
/// Delta(H) = H (x) f^-1 + 1 (x) H
/// ```
///
/// The exponents are not required to satisfy either case condition, so
/// that the failure of the homomorphism property can be observed.
pub fn heisenberg_base(uea: &Uea, exps: &HeisenbergExponents, gamma: &Rat, order: usize) -> Result<Coproduct> {
    let alg = uea.algebra();
    let names = ["E", "A", "B", "H"];
    let idx: Vec<usize> = names
        .iter()
        .map(|n| alg.index_of(n).ok_or_else(|| Error::UnknownGenerator(n.to_string())))
        .collect::<Result<_>>()?;
    if alg.dim() != 4 {
        return Err(Error::DimensionMismatch(alg.dim(), 4));
    }
    let ctx = SigmaContext::group_like(alg.resolve("E")?, gamma.clone());
    let d = uea.dim();
    let gen = |i: usize| Series::constant(uea.generator(i), order);
    let one = Series::unit(1, d, order);
    let f = |q: &Rat| ctx.esig(uea, q, order);
    let entry = |x: usize, right: &Rat, left: &Rat| -> Result<Series> {
        Ok(gen(x).tensor(&f(right)?).add(&f(left)?.tensor(&gen(x))))
    };
    let mut entries = vec![Series::zero(2, d, order); 4];
    entries[idx[0]] = entry(idx[0], &int(1), &int(0))?;
    entries[idx[1]] = entry(idx[1], &exps.a, &exps.ap)?;
    entries[idx[2]] = entry(idx[2], &exps.b, &exps.bp)?;
    entries[idx[3]] = gen(idx[3]).tensor(&f(&int(-1))?).add(&one.tensor(&gen(idx[3])));
    Ok(Coproduct::table(entries))
}
