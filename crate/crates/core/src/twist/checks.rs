use rayon::prelude::*;

use super::{Antipode, Coproduct, Twist};
use crate::error::Result;
use crate::pbw::{Key, Series, Uea};
use crate::rat::Rat;

/// A named series that is expected to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub series: Series,
}

impl Residual {
    pub fn new(name: impl Into<String>, series: Series) -> Self {
        Residual { name: name.into(), series }
    }

    pub fn passes(&self) -> bool {
        self.series.is_zero()
    }

    pub fn witness(&self) -> Option<(usize, Key, Rat)> {
        self.series.witness()
    }
}

/// Residuals for coassociativity, counit, homomorphism and antipode axioms.
#[derive(Clone, Debug, Default)]
pub struct HopfReport {
    pub residuals: Vec<Residual>,
}

impl HopfReport {
    pub fn passes(&self) -> bool {
        self.residuals.iter().all(Residual::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual> + '_ {
        self.residuals.iter().filter(|r| !r.passes())
    }

    /// Whether every residual whose name starts with `axiom` vanishes.
    pub fn axiom_passes(&self, axiom: &str) -> bool {
        self.residuals.iter().filter(|r| r.name.starts_with(axiom)).all(Residual::passes)
    }
}

/// `F_12 (Delta (x) id)(F) - F_23 (id (x) Delta)(F)`.
pub fn check_twist_equation(uea: &Uea, f: &Series, base: &Coproduct) -> Result<Series> {
    let f12 = f.embed(3, &[0, 1]);
    let f23 = f.embed(3, &[1, 2]);
    let lhs = uea.series_mul(&f12, &base.apply_at(uea, f, 0))?;
    let rhs = uea.series_mul(&f23, &base.apply_at(uea, f, 1))?;
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorizedVariant {
    /// `(Delta (x) id) F = F_13 F_23`
    StdLhs,
    /// `(id (x) Delta_F) F = F_12 F_13`
    StdRhsTwisted,
    /// `(Delta_F (x) id) F = F_13 F_23`
    PprimeLhsTwisted,
    /// `(id (x) Delta) F = F_12 F_13`
    PprimeRhs,
}

impl FactorizedVariant {
    pub const ALL: [FactorizedVariant; 4] =
        [Self::StdLhs, Self::StdRhsTwisted, Self::PprimeLhsTwisted, Self::PprimeRhs];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "std_lhs" => Self::StdLhs,
            "std_rhs_twisted" => Self::StdRhsTwisted,
            "pprime_lhs_twisted" => Self::PprimeLhsTwisted,
            "pprime_rhs" => Self::PprimeRhs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::StdLhs => "std_lhs",
            Self::StdRhsTwisted => "std_rhs_twisted",
            Self::PprimeLhsTwisted => "pprime_lhs_twisted",
            Self::PprimeRhs => "pprime_rhs",
        }
    }
}

/// Residual of one factorized identity for the factor `phi`; `base` is the
/// coproduct `phi` is applied to and `twisted` is `Delta_phi`.
pub fn check_factorized(
    uea: &Uea,
    variant: FactorizedVariant,
    phi: &Series,
    base: &Coproduct,
    twisted: &Coproduct,
) -> Result<Series> {
    let f12 = phi.embed(3, &[0, 1]);
    let f13 = phi.embed(3, &[0, 2]);
    let f23 = phi.embed(3, &[1, 2]);
    let (lhs, rhs) = match variant {
        FactorizedVariant::StdLhs => (base.apply_at(uea, phi, 0), uea.series_mul(&f13, &f23)?),
        FactorizedVariant::StdRhsTwisted => (twisted.apply_at(uea, phi, 1), uea.series_mul(&f12, &f13)?),
        FactorizedVariant::PprimeLhsTwisted => (twisted.apply_at(uea, phi, 0), uea.series_mul(&f13, &f23)?),
        FactorizedVariant::PprimeRhs => (base.apply_at(uea, phi, 1), uea.series_mul(&f12, &f13)?),
    };
    Ok(lhs.sub(&rhs))
}

/// `R_12 R_13 R_23 - R_23 R_13 R_12`.
pub fn check_qybe(uea: &Uea, r: &Series) -> Result<Series> {
    let r12 = r.embed(3, &[0, 1]);
    let r13 = r.embed(3, &[0, 2]);
    let r23 = r.embed(3, &[1, 2]);
    let lhs = uea.series_product(&[&r12, &r13, &r23])?;
    let rhs = uea.series_product(&[&r23, &r13, &r12])?;
    Ok(lhs.sub(&rhs))
}

/// `R_21 R - 1 (x) 1`.
pub fn check_triangularity(uea: &Uea, r: &Series) -> Result<Series> {
    let prod = uea.series_mul(&r.flip(), r)?;
    Ok(prod.sub(&Series::unit(2, r.dim(), r.order())))
}

/// `exp(X_m^21) ... exp(X_1^21) exp(-X_1) ... exp(-X_m)` from the factor
/// exponents, without going through `F` itself.
pub fn r_closed_form(uea: &Uea, twist: &Twist) -> Result<Series> {
    let n = twist.order();
    let mut acc = Series::unit(2, uea.dim(), n);
    for f in twist.factors().iter().rev() {
        acc = uea.series_mul(&acc, &uea.series_exp(&f.exponent.flip())?)?;
    }
    for f in twist.factors() {
        acc = uea.series_mul(&acc, &uea.series_exp(&f.exponent.neg())?)?;
    }
    Ok(acc)
}

/// Coassociativity, both counit laws, the homomorphism property on
/// generator pairs, and both antipode laws on generators.
pub fn check_hopf_axioms(uea: &Uea, coproduct: &Coproduct, antipode: &Antipode, order: usize) -> Result<HopfReport> {
    let alg = uea.algebra().clone();
    let d = uea.dim();
    let deltas: Vec<Series> = (0..d).map(|i| coproduct.generator(uea, i, order)).collect();
    let gen = |i: usize| Series::constant(uea.generator(i), order);
    let mut residuals: Vec<Residual> = (0..d)
        .into_par_iter()
        .map(|i| -> Result<Vec<Residual>> {
            let dx = &deltas[i];
            let name = alg.name(i);
            let coassoc = coproduct.apply_at(uea, dx, 0).sub(&coproduct.apply_at(uea, dx, 1));
            let left = dx.counit_at(0).sub(&gen(i));
            let right = dx.counit_at(1).sub(&gen(i));
            let s_left = uea.series_slot_product(&antipode.apply_at(uea, dx, 0), 0);
            let s_right = uea.series_slot_product(&antipode.apply_at(uea, dx, 1), 0);
            Ok(vec![
                Residual::new(format!("coassoc[{name}]"), coassoc),
                Residual::new(format!("counit_left[{name}]"), left),
                Residual::new(format!("counit_right[{name}]"), right),
                Residual::new(format!("antipode_left[{name}]"), s_left),
                Residual::new(format!("antipode_right[{name}]"), s_right),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let homs = pairs
        .into_par_iter()
        .map(|(i, j)| -> Result<Residual> {
            let mut r = uea.series_mul(&deltas[i], &deltas[j])?.sub(&uea.series_mul(&deltas[j], &deltas[i])?);
            for (l, c) in alg.bracket(i, j).iter() {
                r = r.sub(&deltas[l].scaled(c));
            }
            Ok(Residual::new(format!("homomorphism[{},{}]", alg.name(i), alg.name(j)), r))
        })
        .collect::<Result<Vec<_>>>()?;
    residuals.extend(homs);
    Ok(HopfReport { residuals })
}

/// First generator entry violating `w(term) = w(x) + k` at order `k`.
pub fn grading_report(entries: &[Series], weights: &[i64]) -> Option<(usize, usize, Key, i64)> {
    entries
        .iter()
        .enumerate()
        .find_map(|(i, s)| s.grading_violation(weights, weights[i]).map(|(k, key, w)| (i, k, key, w)))
}
