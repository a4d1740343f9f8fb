//! Twisting elements, twisted Hopf structures and the identities they satisfy.
//!
//! A [`Twist`] is a unit-leading arity-2 [`Series`] together with its
//! inverse and the chain of [`Factor`]s it was built from. Each factor is
//! `exp(X)` for an exponent `X` described by a [`Recipe`].

mod antipode;
mod checks;
mod coproduct;
mod heisenberg;
mod substitution;

use std::fmt;

use num_traits::Zero;

pub use antipode::{solve_antipode, twist_antipode, Antipode, AntipodeTable};
pub use checks::{
    check_factorized, check_hopf_axioms, check_qybe, check_triangularity, check_twist_equation, grading_report,
    r_closed_form, FactorizedVariant, HopfReport, Residual,
};
pub use coproduct::{coproduct_table, twist_coproduct, Coproduct, CoproductTable};
pub use heisenberg::{heisenberg_base, HeisenbergCase, HeisenbergExponents};
pub use substitution::{map_series, substitute_recipe, swap_ab_morphism};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieElement};
use crate::pbw::{Series, Uea};
use crate::rat::{int, Rat};

/// Data defining `sigma = delta^-1 log(1 + xi gamma E)` and `esig(q) = e^{q sigma}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaContext {
    pub h: LieElement,
    pub e: LieElement,
    pub delta: Rat,
    pub gamma: Rat,
}

impl SigmaContext {
    /// Checks `delta != 0` and `[H, E] = delta E`.
    pub fn new(alg: &LieAlgebra, h: LieElement, e: LieElement, delta: Rat, gamma: Rat) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::DeltaZero);
        }
        let he = alg.bracket_elements(&h, &e);
        if he != e.scaled(&delta) {
            return Err(Error::BracketMismatch(
                alg.format_element(&h),
                alg.format_element(&e),
                alg.format_element(&he),
                alg.format_element(&e.scaled(&delta)),
            ));
        }
        Ok(SigmaContext { h, e, delta, gamma })
    }

    /// A context for group-like powers `f^q = (1 + xi gamma E)^q` alone,
    /// with no jordanian pair behind it.
    pub fn group_like(e: LieElement, gamma: Rat) -> Self {
        SigmaContext { h: LieElement::zero(), e, delta: int(1), gamma }
    }

    /// `1 + xi gamma E`.
    pub fn base(&self, uea: &Uea, order: usize) -> Series {
        let e = uea.lie(&self.e).scaled(&self.gamma);
        Series::unit(1, uea.dim(), order).add(&Series::from_tensor(e, 1, order))
    }

    /// `e^{q sigma} = (1 + xi gamma E)^{q / delta}`.
    pub fn esig(&self, uea: &Uea, q: &Rat, order: usize) -> Result<Series> {
        uea.series_pow(&self.base(uea, order), &(q / &self.delta))
    }

    pub fn sigma(&self, uea: &Uea, order: usize) -> Result<Series> {
        Ok(uea.series_log(&self.base(uea, order))?.scaled(&(int(1) / &self.delta)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    E,
    EPrime,
    P,
    PPrime,
    HeisA,
    HeisB,
    SlN,
}

impl ExtensionKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "E" => Self::E,
            "Eprime" | "E'" => Self::EPrime,
            "P" => Self::P,
            "Pprime" | "P'" => Self::PPrime,
            "heisA" => Self::HeisA,
            "heisB" => Self::HeisB,
            "slN" => Self::SlN,
            _ => return None,
        })
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::E => "E",
            Self::EPrime => "Eprime",
            Self::P => "P",
            Self::PPrime => "Pprime",
            Self::HeisA => "heisA",
            Self::HeisB => "heisB",
            Self::SlN => "slN",
        };
        f.write_str(s)
    }
}

/// How a single factor `exp(X)` is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Identity,
    /// `X = H (x) sigma`.
    Jordanian(SigmaContext),
    /// `X = coeff xi sum_m A_m (x) B_m esig(q)`.
    Extension {
        kind: ExtensionKind,
        pairs: Vec<(LieElement, LieElement)>,
        coeff: Rat,
        q: Rat,
        sigma: Option<SigmaContext>,
    },
    /// `X = coeff xi L (x) R`.
    Abelian {
        left: LieElement,
        right: LieElement,
        coeff: Rat,
    },
}

impl Recipe {
    pub fn exponent(&self, uea: &Uea, order: usize) -> Result<Series> {
        let d = uea.dim();
        match self {
            Recipe::Identity => Ok(Series::zero(2, d, order)),
            Recipe::Jordanian(ctx) => {
                let h = Series::constant(uea.lie(&ctx.h), order);
                Ok(h.tensor(&ctx.sigma(uea, order)?))
            }
            Recipe::Extension { pairs, coeff, q, sigma, .. } => {
                let right_factor = match (q.is_zero(), sigma) {
                    (true, _) => Series::unit(1, d, order),
                    (false, Some(ctx)) => ctx.esig(uea, q, order)?,
                    (false, None) => return Err(Error::MissingSigma),
                };
                let mut x = Series::zero(2, d, order);
                for (a, b) in pairs {
                    let a = Series::constant(uea.lie(a), order);
                    let b = uea.series_mul(&Series::constant(uea.lie(b), order), &right_factor)?;
                    x = x.add(&a.tensor(&b));
                }
                Ok(x.scaled(coeff).shifted(1))
            }
            Recipe::Abelian { left, right, coeff } => {
                let t = uea.lie(left).tensor(&uea.lie(right)).scaled(coeff);
                Ok(Series::from_tensor(t, 1, order))
            }
        }
    }

    pub fn describe(&self, alg: &LieAlgebra) -> String {
        match self {
            Recipe::Identity => "identity".into(),
            Recipe::Jordanian(c) => format!(
                "jordanian H={} E={} delta={} gamma={}",
                alg.format_element(&c.h),
                alg.format_element(&c.e),
                c.delta,
                c.gamma
            ),
            Recipe::Extension { kind, pairs, coeff, q, .. } => {
                let ps: Vec<String> =
                    pairs.iter().map(|(a, b)| format!("{}:{}", alg.format_element(a), alg.format_element(b))).collect();
                format!("extension {kind} pairs={} coeff={coeff} q={q}", ps.join(","))
            }
            Recipe::Abelian { left, right, coeff } => {
                format!("abelian {} (x) {} coeff={coeff}", alg.format_element(left), alg.format_element(right))
            }
        }
    }
}

/// One factor `exp(X)` of a twist chain.
#[derive(Clone, Debug)]
pub struct Factor {
    pub recipe: Recipe,
    pub exponent: Series,
    pub element: Series,
    pub inverse: Series,
}

/// A twisting element with its cached inverse and construction chain.
///
/// `factors` are listed in the order they are applied, so the element is
/// `factors[m-1] ... factors[1] factors[0]`.
#[derive(Clone, Debug)]
pub struct Twist {
    element: Series,
    inverse: Series,
    factors: Vec<Factor>,
}

impl Twist {
    pub fn identity(dim: usize, order: usize) -> Self {
        let one = Series::unit(2, dim, order);
        Twist { element: one.clone(), inverse: one, factors: Vec::new() }
    }

    pub fn from_recipe(uea: &Uea, recipe: Recipe, order: usize) -> Result<Self> {
        let exponent = recipe.exponent(uea, order)?;
        let element = uea.series_exp(&exponent)?;
        let inverse = uea.series_exp(&exponent.neg())?;
        let factor = Factor { recipe, exponent, element: element.clone(), inverse: inverse.clone() };
        Ok(Twist { element, inverse, factors: vec![factor] })
    }

    pub fn element(&self) -> &Series {
        &self.element
    }

    pub fn inverse(&self) -> &Series {
        &self.inverse
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.element.order()
    }

    pub fn dim(&self) -> usize {
        self.element.dim()
    }

    /// `R = F_21 F^{-1}`.
    pub fn universal_r(&self, uea: &Uea) -> Result<Series> {
        uea.series_mul(&self.element.flip(), &self.inverse)
    }

    /// Recomputes the inverse as `F^{-1}` by the binomial series.
    pub fn series_inverse(&self, uea: &Uea) -> Result<Series> {
        uea.series_inverse(&self.element)
    }
}

/// `exp(H (x) sigma)` with `sigma = delta^-1 log(1 + xi gamma E)`.
pub fn jordanian_twist(
    uea: &Uea,
    h: LieElement,
    e: LieElement,
    delta: Rat,
    gamma: Rat,
    order: usize,
) -> Result<(Twist, SigmaContext)> {
    let ctx = SigmaContext::new(uea.algebra(), h, e, delta, gamma)?;
    Ok((Twist::from_recipe(uea, Recipe::Jordanian(ctx.clone()), order)?, ctx))
}

/// Builds an extension recipe.
///
/// `param` is kind-specific: the eigenvalue override for `E` / `Eprime`,
/// the Heisenberg exponent for `heisA` (`b`) and `heisB` (`a`). When absent
/// for `E` / `Eprime` the eigenvalue is read from `ad H` in the sigma
/// context.
pub fn extension_recipe(
    alg: &LieAlgebra,
    kind: ExtensionKind,
    pairs: &[(LieElement, LieElement)],
    sigma: Option<&SigmaContext>,
    param: Option<Rat>,
) -> Result<Recipe> {
    let eigen = |x: &LieElement| -> Result<Rat> {
        if let Some(p) = &param {
            return Ok(p.clone());
        }
        let ctx = sigma.ok_or(Error::MissingSigma)?;
        alg.eigenvalue(&ctx.h, x).ok_or_else(|| {
            Error::ConstraintViolation(format!("{} is not an eigenvector of ad H", alg.format_element(x)))
        })
    };
    let first = pairs.first().cloned();
    let (pairs, coeff, q) = match kind {
        ExtensionKind::E => {
            let b = first.as_ref().map(|p| &p.1).ok_or_else(|| Error::Config("extension needs a pair".into()))?;
            (pairs.to_vec(), int(1), -eigen(b)?)
        }
        ExtensionKind::EPrime => {
            let a = first.as_ref().map(|p| &p.0).ok_or_else(|| Error::Config("extension needs a pair".into()))?;
            let q = -eigen(a)?;
            (pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(), int(-1), q)
        }
        ExtensionKind::P => {
            let ctx = sigma.ok_or(Error::MissingSigma)?;
            (pairs.to_vec(), int(1), -ctx.delta.clone())
        }
        ExtensionKind::PPrime => (pairs.to_vec(), int(1), Rat::zero()),
        ExtensionKind::HeisA => {
            let b = param.clone().ok_or_else(|| Error::Config("heisA needs the exponent b".into()))?;
            (pairs.to_vec(), int(1), -b)
        }
        ExtensionKind::HeisB => {
            let a = param.clone().ok_or_else(|| Error::Config("heisB needs the exponent a".into()))?;
            (pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(), int(-1), -a)
        }
        ExtensionKind::SlN => (pairs.to_vec(), int(2), int(-1)),
    };
    if !q.is_zero() && sigma.is_none() {
        return Err(Error::MissingSigma);
    }
    Ok(Recipe::Extension { kind, pairs, coeff, q, sigma: sigma.cloned() })
}

pub fn extension_factor(
    uea: &Uea,
    kind: ExtensionKind,
    pairs: &[(LieElement, LieElement)],
    sigma: Option<&SigmaContext>,
    param: Option<Rat>,
    order: usize,
) -> Result<Twist> {
    let recipe = extension_recipe(uea.algebra(), kind, pairs, sigma, param)?;
    Twist::from_recipe(uea, recipe, order)
}

/// The pairs `(E_1i, E_iN)`, `i = 2..N-1`, of the sl(N) extension.
pub fn sl_n_pairs(alg: &LieAlgebra, n: usize) -> Result<Vec<(LieElement, LieElement)>> {
    let name = |i: usize, j: usize| {
        if n <= 9 {
            format!("E_{i}{j}")
        } else {
            format!("E_{i}_{j}")
        }
    };
    (2..n).map(|i| Ok((alg.resolve(&name(1, i))?, alg.resolve(&name(i, n))?))).collect()
}

/// `F2 F1`; the chain records `F1`'s factors first.
pub fn compose_twists(uea: &Uea, f2: &Twist, f1: &Twist) -> Result<Twist> {
    if f2.order() != f1.order() {
        return Err(Error::OrderMismatch(f2.order(), f1.order()));
    }
    let element = uea.series_mul(&f2.element, &f1.element)?;
    let inverse = uea.series_mul(&f1.inverse, &f2.inverse)?;
    let mut factors = f1.factors.clone();
    factors.extend(f2.factors.iter().cloned());
    Ok(Twist { element, inverse, factors })
}

/// Builds a chain from recipes in application order.
pub fn build_chain(uea: &Uea, recipes: &[Recipe], order: usize) -> Result<Twist> {
    let mut acc = Twist::identity(uea.dim(), order);
    for r in recipes {
        let f = Twist::from_recipe(uea, r.clone(), order)?;
        acc = compose_twists(uea, &f, &acc)?;
    }
    Ok(acc)
}

/// Checks `(eps (x) id) F = (id (x) eps) F = 1`.
pub fn normalization_residuals(f: &Series) -> (Series, Series) {
    let one = Series::unit(1, f.dim(), f.order());
    (f.counit_at(0).sub(&one), f.counit_at(1).sub(&one))
}
