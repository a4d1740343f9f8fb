//! Fixture tables: closed-form coproducts (or dual brackets) written in the
//! expression language.
//!
//! ```text
//! @note free text
//! @weights lambda 0 0 1 1
//! @sigma H=H_12 E=E_24 delta=-1 gamma=1
//! E_14 = E_14 (x) esig(1) + 1 (x) E_14
//! E_12 = E_12 (x) esig(2) - xi E_13 (x) E_34 esig(2)
//!      + 1 (x) E_12
//! ```
//!
//! Indented lines continue the previous entry. `#` starts a comment.

use rayon::prelude::*;

use super::config::{parse_sigma, parse_weights};
use super::expr::{self, Expr, Factor};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieElement};
use crate::pbw::{Series, Uea};
use crate::rat::Rat;
use crate::semiclassical::DualLieTable;
use crate::twist::SigmaContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureEntry {
    pub lhs: String,
    pub expr: Expr,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureTable {
    pub notes: Vec<String>,
    pub weights: Option<String>,
    pub sigma: Option<String>,
    pub entries: Vec<FixtureEntry>,
}

/// Splits into logical lines `(line number, text)`, joining indented
/// continuations and dropping comments and blanks.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(line.trim());
                continue;
            }
        }
        out.push((n + 1, line.trim().to_string()));
    }
    out
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("line {line}: {msg}") },
        other => other,
    }
}

impl FixtureTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = FixtureTable::default();
        for (line, s) in logical_lines(text) {
            if let Some(h) = s.strip_prefix('@') {
                let (key, rest) = h.split_once(char::is_whitespace).unwrap_or((h, ""));
                let rest = rest.trim().to_string();
                match key {
                    "note" => t.notes.push(rest),
                    "weights" => t.weights = Some(rest),
                    "sigma" => t.sigma = Some(rest),
                    _ => return Err(Error::Config(format!("line {line}: unknown fixture header @{key}"))),
                }
                continue;
            }
            let (lhs, rhs) = s
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {line}: expected `generator = expression`")))?;
            let expr = expr::parse(rhs).map_err(|e| at_line(line, e))?;
            t.entries.push(FixtureEntry { lhs: lhs.trim().to_string(), expr, line });
        }
        Ok(t)
    }

    /// Weight character from the `@weights` header, if present.
    pub fn weights(&self, alg: &LieAlgebra) -> Result<Option<Vec<i64>>> {
        self.weights.as_deref().map(|w| parse_weights(w, alg)).transpose()
    }

    pub fn sigma_context(&self, alg: &LieAlgebra) -> Result<Option<SigmaContext>> {
        self.sigma.as_deref().map(|s| parse_sigma(s, alg)).transpose()
    }

    /// Checks generator names and that every term carries
    /// `xi^(w(term) - w(lhs))`.
    pub fn verify(&self, alg: &LieAlgebra, weights: Option<&[i64]>) -> Result<()> {
        for e in &self.entries {
            let lhs = alg.resolve(&e.lhs)?;
            e.expr.validate(alg)?;
            if e.expr.arity() != 2 {
                return Err(Error::Config(format!("line {}: coproduct entries must have arity 2", e.line)));
            }
            let Some(w) = weights else { continue };
            let wl = weight_of(&lhs, w)
                .ok_or_else(|| Error::Config(format!("line {}: {} is not weight-homogeneous", e.line, e.lhs)))?;
            for term in &e.expr.terms {
                let expected = term.weight(alg, w)? - wl;
                if expected < 0 || term.xi as i64 != expected {
                    return Err(Error::Config(format!(
                        "line {}: term `{}` in {} has xi^{} but its weight requires xi^{}",
                        e.line,
                        expr::emit(&Expr { terms: vec![term.clone()] }),
                        e.lhs,
                        term.xi,
                        expected
                    )));
                }
            }
        }
        Ok(())
    }
}

fn weight_of(x: &LieElement, w: &[i64]) -> Option<i64> {
    let mut it = x.iter().map(|(i, _)| w[i]);
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

/// The residual `fixture - computed` for one entry.
#[derive(Clone, Debug)]
pub struct EntryResidual {
    pub lhs: String,
    pub residual: Series,
}

impl EntryResidual {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }

    /// Lowest xi-order, first monomial in PBW order, and its coefficient.
    pub fn first_difference(&self, uea: &Uea) -> Option<(usize, String, Rat)> {
        self.residual.witness().map(|(k, key, c)| (k, uea.format_key(&key), c))
    }
}

#[derive(Clone, Debug, Default)]
pub struct FixtureReport {
    pub entries: Vec<EntryResidual>,
}

impl FixtureReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(EntryResidual::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryResidual> + '_ {
        self.entries.iter().filter(|e| !e.passes())
    }
}

/// Expands every fixture entry at `order` and subtracts `computed(lhs)`.
///
/// The fixture's own `@sigma` header takes precedence over `sigma`; if
/// both are given they must agree.
pub fn compare_fixture<F>(
    fixture: &FixtureTable,
    uea: &Uea,
    sigma: Option<&SigmaContext>,
    order: usize,
    computed: F,
) -> Result<FixtureReport>
where
    F: Fn(&LieElement) -> Result<Series> + Sync,
{
    let alg = uea.algebra();
    let own = fixture.sigma_context(alg)?;
    if let (Some(a), Some(b)) = (&own, sigma) {
        if a != b {
            return Err(Error::Config("fixture sigma context differs from the job's".into()));
        }
    }
    let sigma = own.as_ref().or(sigma);
    let weights = match fixture.weights(alg)? {
        Some(w) => Some(w),
        None => alg.weights().map(<[i64]>::to_vec),
    };
    fixture.verify(alg, weights.as_deref())?;
    let entries = fixture
        .entries
        .par_iter()
        .map(|e| {
            let lhs = alg.resolve(&e.lhs)?;
            let expected = e.expr.evaluate(uea, sigma, order)?;
            Ok(EntryResidual { lhs: e.lhs.clone(), residual: expected.sub(&computed(&lhs)?) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixtureReport { entries })
}

/// A dual bracket table, one `[X, Y] = linear combination` per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualFixture {
    pub notes: Vec<String>,
    pub entries: Vec<(String, String, Expr, usize)>,
}

impl DualFixture {
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = DualFixture::default();
        for (line, s) in logical_lines(text) {
            if let Some(h) = s.strip_prefix('@') {
                match h.split_once(char::is_whitespace) {
                    Some(("note", rest)) => t.notes.push(rest.trim().to_string()),
                    _ => return Err(Error::Config(format!("line {line}: unknown dual fixture header"))),
                }
                continue;
            }
            let bad = || Error::Config(format!("line {line}: expected `[X, Y] = combination`"));
            let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
            let inner = lhs.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']')).ok_or_else(bad)?;
            let (x, y) = inner.split_once(',').ok_or_else(bad)?;
            let expr = expr::parse(rhs).map_err(|e| at_line(line, e))?;
            t.entries.push((x.trim().to_string(), y.trim().to_string(), expr, line));
        }
        Ok(t)
    }

    /// Builds the table on the given basis names. Unlisted pairs are zero;
    /// listing the same pair twice with conflicting values is an error.
    pub fn to_table(&self, names: Vec<String>) -> Result<DualLieTable> {
        let mut t = DualLieTable::zero(names);
        let mut seen = std::collections::BTreeMap::new();
        for (x, y, e, line) in &self.entries {
            let i = t.index_of(x).ok_or_else(|| Error::UnknownGenerator(x.clone()))?;
            let j = t.index_of(y).ok_or_else(|| Error::UnknownGenerator(y.clone()))?;
            let mut v = LieElement::zero();
            for term in &e.terms {
                let name = match (term.xi, term.slots.as_slice()) {
                    (0, [slot]) => match slot.as_slice() {
                        [Factor::Gen { name, power: 1 }] => name,
                        _ => return Err(Error::Config(format!("line {line}: expected a linear combination"))),
                    },
                    _ => return Err(Error::Config(format!("line {line}: expected a linear combination"))),
                };
                let k = t.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                v.add_term(k, &term.coeff);
            }
            let (key, val) = if i < j { ((i, j), v) } else { ((j, i), -v) };
            if let Some(prev) = seen.insert(key, val.clone()) {
                if prev != val {
                    return Err(Error::Config(format!("line {line}: conflicting bracket for [{x}, {y}]")));
                }
            }
            t.set(key.0, key.1, val);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuation_lines_join() {
        let t = FixtureTable::parse("@note demo\nE = E (x) 1\n   + 1 (x) E\n# comment\n").unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.entries[0].expr.terms.len(), 2);
        assert_eq!(t.notes, vec!["demo".to_string()]);
    }

    #[test]
    fn empty_fixture_is_fine() {
        let t = FixtureTable::parse("").unwrap();
        assert!(t.entries.is_empty());
    }

    #[test]
    fn dual_fixture_builds_antisymmetric_table() {
        let f = DualFixture::parse("[X, Y] = 2 Z\n[Z, X] = -Y").unwrap();
        let t = f.to_table(vec!["X".into(), "Y".into(), "Z".into()]).unwrap();
        assert_eq!(t.bracket(1, 0), &LieElement::basis(2).scaled(&crate::rat::int(-2)));
        assert_eq!(t.bracket(0, 2), &LieElement::basis(1));
    }

    #[test]
    fn dual_fixture_conflict() {
        let f = DualFixture::parse("[X, Y] = Z\n[Y, X] = Z").unwrap();
        assert!(f.to_table(vec!["X".into(), "Y".into(), "Z".into()]).is_err());
    }
}
