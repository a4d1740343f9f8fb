use std::sync::Arc;

use super::{LieAlgebra, LieElement};
use crate::error::{Error, Result};

/// A bracket-preserving linear map between two algebras, verified on
/// construction.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<LieAlgebra>,
    target: Arc<LieAlgebra>,
    images: Vec<LieElement>,
}

impl Morphism {
    pub fn source(&self) -> &Arc<LieAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieAlgebra> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &LieElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }
}

/// Verifies `phi([x_i, x_j]) = [phi(x_i), phi(x_j)]` for every generator pair.
///
/// `images` is keyed by source generator name; every source generator must
/// have an image.
pub fn check_morphism(src: &Arc<LieAlgebra>, images: &[(&str, LieElement)], dst: &Arc<LieAlgebra>) -> Result<Morphism> {
    let mut table = vec![None; src.dim()];
    for (name, img) in images {
        let i = src.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        if let Some(bad) = img.iter().map(|(k, _)| k).find(|&k| k >= dst.dim()) {
            return Err(Error::UnknownGenerator(format!("#{bad}")));
        }
        table[i] = Some(img.clone());
    }
    let images: Vec<LieElement> = table
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| Error::Config(format!("no image for generator {}", src.name(i)))))
        .collect::<Result<_>>()?;
    let m = Morphism { source: src.clone(), target: dst.clone(), images };
    if let Some((i, j, lhs, rhs)) = bracket_failures(&m).into_iter().next() {
        return Err(Error::BracketMismatch(
            src.name(i).to_string(),
            src.name(j).to_string(),
            dst.format_element(&lhs),
            dst.format_element(&rhs),
        ));
    }
    Ok(m)
}

/// Every generator pair `i < j` whose bracket is not preserved, with the
/// image of the bracket and the bracket of the images.
fn bracket_failures(m: &Morphism) -> Vec<(usize, usize, LieElement, LieElement)> {
    let (src, dst) = (&m.source, &m.target);
    let mut out = Vec::new();
    for i in 0..src.dim() {
        for j in i + 1..src.dim() {
            let lhs = m.apply(src.bracket(i, j));
            let rhs = dst.bracket_elements(&m.images[i], &m.images[j]);
            if lhs != rhs {
                out.push((i, j, lhs, rhs));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_carrier_l, make_gl, CarrierParams};

    fn sl4_images(g: &LieAlgebra, a: &str) -> Vec<(&'static str, LieElement)> {
        vec![
            ("H", g.resolve("H_12").unwrap()),
            ("E", g.resolve("E_24").unwrap()),
            ("A", g.resolve(a).unwrap()),
            ("B", g.resolve("E_34").unwrap()),
        ]
    }

    #[test]
    fn carrier_embeds_into_sl4() {
        let l = Arc::new(make_carrier_l(&CarrierParams::ints(-1, 0, 1, -1)).unwrap());
        let g = Arc::new(make_gl(4).unwrap());
        let m = check_morphism(&l, &sl4_images(&g, "E_23"), &g).unwrap();
        assert_eq!(m.apply(&l.resolve("A").unwrap()), g.resolve("E_23").unwrap());
    }

    #[test]
    fn identity_is_a_morphism() {
        let g = Arc::new(make_gl(3).unwrap());
        let imgs: Vec<(&str, LieElement)> =
            g.names().iter().enumerate().map(|(i, n)| (n.as_str(), LieElement::basis(i))).collect();
        assert!(check_morphism(&g, &imgs, &g).is_ok());
    }

    #[test]
    fn wrong_image_reports_pair() {
        let l = Arc::new(make_carrier_l(&CarrierParams::ints(-1, 0, 1, -1)).unwrap());
        let g = Arc::new(make_gl(4).unwrap());
        let imgs = sl4_images(&g, "E_32");
        assert!(matches!(check_morphism(&l, &imgs, &g), Err(Error::BracketMismatch(..))));
        // [E_32, E_34] = 0 while the image of [A,B] = E is E_24.
        let by_index = (0..l.dim()).map(|k| imgs.iter().find(|(n, _)| *n == l.name(k)).unwrap().1.clone()).collect();
        let unchecked = Morphism { source: l.clone(), target: g.clone(), images: by_index };
        let fails = bracket_failures(&unchecked);
        let (a, b) = (l.index_of("A").unwrap(), l.index_of("B").unwrap());
        let ab = fails.iter().find(|f| (f.0, f.1) == (a, b)).expect("(A,B) must fail");
        assert_eq!(ab.2, g.resolve("E_24").unwrap());
        assert!(ab.3.is_zero());
    }
}
