use std::sync::Arc;

use super::{Recipe, SigmaContext};
use crate::error::Result;
use crate::lie::{check_morphism, make_carrier_l, CarrierParams, LieAlgebra, Morphism};
use crate::pbw::{Series, Tensor, Uea};

/// Extends a Lie morphism to `U(g)^{(x) k}[[xi]]`, slot by slot.
pub fn map_series(src: &Uea, dst: &Uea, phi: &Morphism, x: &Series) -> Series {
    let d = src.dim();
    let images: Vec<Tensor> = (0..d).map(|i| dst.lie(phi.image(i))).collect();
    let map_mono = |m: &[u8]| -> Tensor {
        let mut out = Tensor::unit(1, dst.dim());
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out = dst.mul_unchecked(&out, &images[i]);
            }
        }
        out
    };
    x.map(|t| {
        let mut out = Tensor::zero(t.arity(), dst.dim());
        for (k, c) in t.iter() {
            let mut acc = Tensor::scalar(0, dst.dim(), c.clone());
            for s in 0..t.arity() {
                acc = acc.tensor(&map_mono(&k[s * d..(s + 1) * d]));
            }
            out.add_assign(&acc);
        }
        out
    })
}

/// `E -> E, A -> B, B -> -A, H -> H` from `L(a, b, g, d)` to `L(b, a, g, d)`.
pub fn swap_ab_morphism(params: &CarrierParams) -> Result<(Arc<LieAlgebra>, Arc<LieAlgebra>, Morphism)> {
    let src = Arc::new(make_carrier_l(params)?);
    let swapped =
        CarrierParams::new(params.beta.clone(), params.alpha.clone(), params.gamma.clone(), params.delta.clone());
    let dst = Arc::new(make_carrier_l(&swapped)?);
    let g = |n: &str| dst.resolve(n).expect("carrier generator");
    let images = [("E", g("E")), ("A", g("B")), ("B", -g("A")), ("H", g("H"))];
    let phi = check_morphism(&src, &images, &dst)?;
    Ok((src, dst, phi))
}

/// Pushes a recipe's generator bindings through `phi`.
pub fn substitute_recipe(recipe: &Recipe, phi: &Morphism) -> Recipe {
    let map_ctx = |c: &SigmaContext| SigmaContext {
        h: phi.apply(&c.h),
        e: phi.apply(&c.e),
        delta: c.delta.clone(),
        gamma: c.gamma.clone(),
    };
    match recipe {
        Recipe::Identity => Recipe::Identity,
        Recipe::Jordanian(c) => Recipe::Jordanian(map_ctx(c)),
        Recipe::Extension { kind, pairs, coeff, q, sigma } => Recipe::Extension {
            kind: *kind,
            pairs: pairs.iter().map(|(a, b)| (phi.apply(a), phi.apply(b))).collect(),
            coeff: coeff.clone(),
            q: q.clone(),
            sigma: sigma.as_ref().map(map_ctx),
        },
        Recipe::Abelian { left, right, coeff } => {
            Recipe::Abelian { left: phi.apply(left), right: phi.apply(right), coeff: coeff.clone() }
        }
    }
}
