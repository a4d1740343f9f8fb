use super::{LieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::rat::{factorial, int, Rat};

/// A space on which `ad x` acts: `g` itself, or `g (x) g` via `ad (x) 1 + 1 (x) ad`.
pub trait AdjointTarget: Clone {
    fn ad(&self, alg: &LieAlgebra, x: &LieElement) -> Self;
    fn is_zero(&self) -> bool;
    fn scaled(&self, c: &Rat) -> Self;
    fn accumulate(&mut self, other: &Self);
}

impl AdjointTarget for LieElement {
    fn ad(&self, alg: &LieAlgebra, x: &LieElement) -> Self {
        alg.bracket_elements(x, self)
    }

    fn is_zero(&self) -> bool {
        LieElement::is_zero(self)
    }

    fn scaled(&self, c: &Rat) -> Self {
        LieElement::scaled(self, c)
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

/// The terms `ad_x^k(target) / k!` for `k = 0, 1, ...` up to the last nonzero one.
pub fn adjoint_flow_terms<T: AdjointTarget>(alg: &LieAlgebra, x: &LieElement, target: &T) -> Result<Vec<T>> {
    let limit = alg.dim() * alg.dim();
    let mut out = Vec::new();
    let mut cur = target.clone();
    let mut k = 0;
    while !cur.is_zero() {
        if k > limit {
            return Err(Error::NotNilpotent(limit));
        }
        out.push(cur.scaled(&(int(1) / factorial(k))));
        cur = cur.ad(alg, x);
        k += 1;
    }
    Ok(out)
}

/// `exp(t ad x)(target)`, summed as a terminating series.
pub fn adjoint_flow<T: AdjointTarget>(alg: &LieAlgebra, x: &LieElement, t: &Rat, target: &T) -> Result<T> {
    let terms = adjoint_flow_terms(alg, x, target)?;
    let mut iter = terms.into_iter();
    let Some(mut acc) = iter.next() else {
        return Ok(target.clone());
    };
    let mut tk = int(1);
    for term in iter {
        tk *= t;
        acc.accumulate(&term.scaled(&tk));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_borel2, make_gl};
    use crate::rat::rat;

    #[test]
    fn borel_flow() {
        let b = make_borel2().unwrap();
        let e = b.resolve("E").unwrap();
        let h = b.resolve("H").unwrap();
        let t = rat(3, 5);
        let got = adjoint_flow(&b, &e, &t, &h).unwrap();
        assert_eq!(got, h - e.scaled(&(int(2) * t)));
    }

    #[test]
    fn flow_fixes_generator() {
        let g = make_gl(3).unwrap();
        let x = g.resolve("E_13").unwrap();
        assert_eq!(adjoint_flow(&g, &x, &int(7), &x).unwrap(), x);
    }

    #[test]
    fn semisimple_element_is_not_nilpotent() {
        let b = make_borel2().unwrap();
        let h = b.resolve("H").unwrap();
        let e = b.resolve("E").unwrap();
        assert!(matches!(adjoint_flow(&b, &h, &int(1), &e), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn flow_is_automorphism_on_gl4() {
        let g = make_gl(4).unwrap();
        let x = g.resolve("E_12").unwrap() + g.resolve("E_24").unwrap().scaled(&int(3)) - g.resolve("E_13").unwrap();
        let t = rat(-2, 3);
        for i in 0..16 {
            for j in 0..16 {
                let (a, b) = (LieElement::basis(i), LieElement::basis(j));
                let lhs = adjoint_flow(&g, &x, &t, g.bracket(i, j)).unwrap();
                let fa = adjoint_flow(&g, &x, &t, &a).unwrap();
                let fb = adjoint_flow(&g, &x, &t, &b).unwrap();
                assert_eq!(lhs, g.bracket_elements(&fa, &fb));
            }
        }
    }
}
