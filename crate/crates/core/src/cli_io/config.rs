//! Job configuration files.
//!
//! ```text
//! name = sl4_pet
//! algebra = gl 4
//! weights = lambda 0 0 1 1
//! order = 4
//!
//! [twist]
//! jordanian H=H_12 E=E_24 delta=-1 gamma=1
//! extension kind=Pprime A=E_23 B=E_34
//!
//! [checks]
//! twist_eq
//! compare fixture=sl4_pet.fix
//! classical_r expr=E_34 (x) E_23 - E_23 (x) E_34
//! ```
//!
//! Top-level keys: `name`, `algebra` (`gl N`, `carrier`, `borel`,
//! `heisenberg`, `explicit`), `params`, `weights`, `order`, `emit`.
//! Sections: `[generators]` and `[brackets]` for explicit algebras,
//! `[base]`, `[twist]`, `[checks]`. Unknown keys, sections and check names
//! are rejected.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{gl_weights, CarrierParams, LieAlgebra};
use crate::rat::{int, parse_rat, Rat};
use crate::twist::{ExtensionKind, HeisenbergExponents, SigmaContext};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EmitFormat {
    #[default]
    Structured,
    Latex,
}

impl EmitFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "structured" => Some(Self::Structured),
            "latex" => Some(Self::Latex),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Gl(usize),
    Carrier,
    Borel,
    Heisenberg,
    Explicit { generators: Vec<String>, brackets: Vec<(String, String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Primitive,
    Heisenberg { exps: HeisenbergExponents, gamma: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistStep {
    Jordanian { h: String, e: String, delta: Option<Rat>, gamma: Rat },
    Extension { kind: ExtensionKind, pairs: Vec<(String, String)>, param: Option<Rat> },
    Abelian { left: String, right: String, coeff: Rat },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Expect {
    #[default]
    Zero,
    Nonzero,
}

pub const CHECK_NAMES: &[&str] = &[
    "twist_eq",
    "factorized",
    "normalization",
    "hopf_axioms",
    "qybe",
    "triangularity",
    "r_closed_form",
    "coproduct_table",
    "compare",
    "classical_r",
    "cybe",
    "cobracket",
    "jacobi",
    "cojacobi",
    "bialgebra_cocycle",
    "mutual_cocycle",
    "frobenius",
    "frobenius_sweep",
    "rdj_flow",
    "grading",
    "equivalence",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: String,
    pub positional: Vec<String>,
    pub args: BTreeMap<String, String>,
    pub expect: Expect,
    pub line: usize,
}

impl CheckSpec {
    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.get(key).map(String::as_str)
    }

    /// A readable label such as `factorized pprime_rhs factor=2`.
    pub fn label(&self) -> String {
        let mut parts = vec![self.name.clone()];
        parts.extend(self.positional.iter().cloned());
        for (k, v) in &self.args {
            if k != "expr" {
                parts.push(format!("{k}={v}"));
            }
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub params: Option<CarrierParams>,
    pub weights: Option<String>,
    pub order: usize,
    pub emit: EmitFormat,
    pub base: BaseSpec,
    pub twist: Vec<TwistStep>,
    pub checks: Vec<CheckSpec>,
    /// Directory used to resolve relative fixture paths.
    pub dir: Option<PathBuf>,
}

fn cfg_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

fn rat_value(line: usize, key: &str, v: &str) -> Result<Rat> {
    parse_rat(v).ok_or_else(|| cfg_err(line, format!("{key} must be a rational literal, got `{v}`")))
}

/// `k=v` tokens; the key `expr` swallows the rest of the line.
fn key_values(line: usize, text: &str) -> Result<(Vec<String>, BTreeMap<String, String>)> {
    let mut positional = Vec::new();
    let mut args = BTreeMap::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(e) = rest.strip_prefix("expr=") {
            args.insert("expr".to_string(), e.trim().to_string());
            break;
        }
        let (tok, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        rest = tail.trim_start();
        match tok.split_once('=') {
            Some((k, v)) => {
                if args.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(cfg_err(line, format!("duplicate key `{k}`")));
                }
            }
            None if args.is_empty() => positional.push(tok.to_string()),
            None => return Err(cfg_err(line, format!("positional argument `{tok}` after key=value pairs"))),
        }
    }
    Ok((positional, args))
}

fn take_keys(line: usize, args: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    match args.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(cfg_err(line, format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}

/// `lambda l1 ... ln` for `gl(n)`, or `name=int` for every generator.
pub fn parse_weights(text: &str, alg: &LieAlgebra) -> Result<Vec<i64>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.first() == Some(&"lambda") {
        let lambda = toks[1..]
            .iter()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Config(format!("bad weight `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if lambda.len() * lambda.len() != alg.dim() {
            return Err(Error::DimensionMismatch(lambda.len() * lambda.len(), alg.dim()));
        }
        return Ok(gl_weights(&lambda));
    }
    let mut w = vec![None; alg.dim()];
    for t in toks {
        let (k, v) = t.split_once('=').ok_or_else(|| Error::Config(format!("bad weight token `{t}`")))?;
        let i = alg.index_of(k).ok_or_else(|| Error::UnknownGenerator(k.to_string()))?;
        w[i] = Some(v.parse::<i64>().map_err(|_| Error::Config(format!("bad weight `{v}`")))?);
    }
    w.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Config(format!("no weight for {}", alg.name(i)))))
        .collect()
}

/// `H=.. E=.. delta=.. gamma=..`, or `group_like E=.. gamma=..`.
pub fn parse_sigma(text: &str, alg: &LieAlgebra) -> Result<SigmaContext> {
    let (pos, args) = key_values(0, text)?;
    let get = |k: &str| args.get(k).ok_or_else(|| Error::Config(format!("sigma header needs {k}=")));
    let gamma = match args.get("gamma") {
        Some(g) => rat_value(0, "gamma", g)?,
        None => int(1),
    };
    let e = alg.resolve(get("E")?)?;
    if pos.first().map(String::as_str) == Some("group_like") {
        return Ok(SigmaContext::group_like(e, gamma));
    }
    let h = alg.resolve(get("H")?)?;
    let delta = rat_value(0, "delta", get("delta")?)?;
    SigmaContext::new(alg, h, e, delta, gamma)
}

fn parse_algebra(line: usize, v: &str) -> Result<AlgebraSpec> {
    let toks: Vec<&str> = v.split_whitespace().collect();
    Ok(match toks.as_slice() {
        ["gl", n] | ["sl", n] => AlgebraSpec::Gl(n.parse().map_err(|_| cfg_err(line, format!("bad dimension `{n}`")))?),
        ["carrier"] => AlgebraSpec::Carrier,
        ["borel"] => AlgebraSpec::Borel,
        ["heisenberg"] => AlgebraSpec::Heisenberg,
        ["explicit"] => AlgebraSpec::Explicit { generators: Vec::new(), brackets: Vec::new() },
        _ => return Err(cfg_err(line, format!("unknown algebra `{v}`"))),
    })
}

fn parse_params(line: usize, v: &str) -> Result<CarrierParams> {
    let (pos, args) = key_values(line, v)?;
    if let Some(p) = pos.first() {
        return Err(cfg_err(line, format!("unexpected `{p}` in params")));
    }
    take_keys(line, &args, &["alpha", "beta", "gamma", "delta"])?;
    let get = |k: &str| -> Result<Rat> {
        rat_value(line, k, args.get(k).ok_or_else(|| cfg_err(line, format!("params needs {k}=")))?)
    };
    Ok(CarrierParams::new(get("alpha")?, get("beta")?, get("gamma")?, get("delta")?))
}

fn parse_base(line: usize, v: &str) -> Result<BaseSpec> {
    let (pos, args) = key_values(line, v)?;
    match pos.as_slice() {
        [p] if p == "primitive" && args.is_empty() => Ok(BaseSpec::Primitive),
        [p] if p == "heisenberg" => {
            take_keys(line, &args, &["a", "b", "ap", "bp", "gamma"])?;
            let get = |k: &str, d: i64| -> Result<Rat> { args.get(k).map_or(Ok(int(d)), |s| rat_value(line, k, s)) };
            let exps = HeisenbergExponents::new(get("a", 0)?, get("b", 0)?, get("ap", 0)?, get("bp", 0)?);
            Ok(BaseSpec::Heisenberg { exps, gamma: get("gamma", 1)? })
        }
        _ => Err(cfg_err(line, format!("unknown base `{v}`"))),
    }
}

fn parse_twist_step(line: usize, v: &str) -> Result<TwistStep> {
    let (pos, args) = key_values(line, v)?;
    let get = |k: &str| args.get(k).cloned().ok_or_else(|| cfg_err(line, format!("missing {k}=")));
    let opt_rat = |k: &str| args.get(k).map(|s| rat_value(line, k, s)).transpose();
    match pos.as_slice() {
        [p] if p == "jordanian" => {
            take_keys(line, &args, &["H", "E", "delta", "gamma"])?;
            Ok(TwistStep::Jordanian {
                h: args.get("H").cloned().unwrap_or_else(|| "H".into()),
                e: args.get("E").cloned().unwrap_or_else(|| "E".into()),
                delta: opt_rat("delta")?,
                gamma: opt_rat("gamma")?.unwrap_or_else(|| int(1)),
            })
        }
        [p] if p == "extension" => {
            take_keys(line, &args, &["kind", "A", "B", "pairs", "param"])?;
            let kind_s = get("kind")?;
            let kind = ExtensionKind::parse(&kind_s)
                .ok_or_else(|| cfg_err(line, format!("unknown extension kind `{kind_s}`")))?;
            let pairs = match args.get("pairs") {
                Some(p) => p
                    .split(',')
                    .map(|pair| {
                        pair.split_once(':')
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .ok_or_else(|| cfg_err(line, format!("bad pair `{pair}`")))
                    })
                    .collect::<Result<Vec<_>>>()?,
                None if kind == ExtensionKind::SlN => Vec::new(),
                None => vec![(
                    args.get("A").cloned().unwrap_or_else(|| "A".into()),
                    args.get("B").cloned().unwrap_or_else(|| "B".into()),
                )],
            };
            Ok(TwistStep::Extension { kind, pairs, param: opt_rat("param")? })
        }
        [p] if p == "abelian" => {
            take_keys(line, &args, &["L", "R", "coeff"])?;
            Ok(TwistStep::Abelian {
                left: get("L")?,
                right: get("R")?,
                coeff: opt_rat("coeff")?.unwrap_or_else(|| int(1)),
            })
        }
        _ => Err(cfg_err(line, format!("unknown twist step `{v}`"))),
    }
}

fn parse_check(line: usize, v: &str) -> Result<CheckSpec> {
    let (name, rest) = v.split_once(char::is_whitespace).unwrap_or((v, ""));
    if !CHECK_NAMES.contains(&name) {
        return Err(cfg_err(line, format!("unknown check `{name}`")));
    }
    let (positional, mut args) = key_values(line, rest)?;
    let expect = match args.remove("expect").as_deref() {
        None | Some("zero") => Expect::Zero,
        Some("nonzero") => Expect::Nonzero,
        Some(other) => return Err(cfg_err(line, format!("expect must be zero or nonzero, got `{other}`"))),
    };
    Ok(CheckSpec { name: name.to_string(), positional, args, expect, line })
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut algebra = None;
        let mut params = None;
        let mut weights = None;
        let mut order = 4usize;
        let mut emit = EmitFormat::default();
        let mut base = BaseSpec::Primitive;
        let mut twist = Vec::new();
        let mut checks = Vec::new();
        let mut generators: Vec<String> = Vec::new();
        let mut brackets = Vec::new();
        let mut section = String::new();
        let mut seen_sections = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            if let Some(sec) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
                if !["generators", "brackets", "base", "twist", "checks"].contains(&sec) {
                    return Err(cfg_err(line, format!("unknown section [{sec}]")));
                }
                if seen_sections.iter().any(|x| x == sec) {
                    return Err(cfg_err(line, format!("section [{sec}] repeated")));
                }
                seen_sections.push(sec.to_string());
                section = sec.to_string();
                continue;
            }
            match section.as_str() {
                "" => {
                    let (k, v) = s.split_once('=').ok_or_else(|| cfg_err(line, "expected `key = value`"))?;
                    let (k, v) = (k.trim(), v.trim());
                    match k {
                        "name" => name = Some(v.to_string()),
                        "algebra" => algebra = Some(parse_algebra(line, v)?),
                        "params" => params = Some(parse_params(line, v)?),
                        "weights" => weights = Some(v.to_string()),
                        "order" => {
                            order = v.parse().map_err(|_| cfg_err(line, format!("bad order `{v}`")))?;
                        }
                        "emit" => {
                            emit = EmitFormat::parse(v).ok_or_else(|| cfg_err(line, format!("bad emit `{v}`")))?
                        }
                        _ => return Err(cfg_err(line, format!("unknown key `{k}`"))),
                    }
                }
                "generators" => generators.extend(s.split_whitespace().map(str::to_string)),
                "brackets" => {
                    let (lhs, rhs) = s.split_once('=').ok_or_else(|| cfg_err(line, "expected `X Y = combination`"))?;
                    let xy: Vec<&str> = lhs.split_whitespace().collect();
                    let [x, y] = xy.as_slice() else {
                        return Err(cfg_err(line, "expected two generators before `=`"));
                    };
                    brackets.push((x.to_string(), y.to_string(), rhs.trim().to_string()));
                }
                "base" => base = parse_base(line, s)?,
                "twist" => twist.push(parse_twist_step(line, s)?),
                "checks" => checks.push(parse_check(line, s)?),
                _ => unreachable!(),
            }
        }
        let mut algebra = algebra.ok_or_else(|| Error::Config("missing `algebra`".into()))?;
        match &mut algebra {
            AlgebraSpec::Explicit { generators: g, brackets: b } => {
                if generators.is_empty() {
                    return Err(Error::Config("explicit algebra needs a [generators] section".into()));
                }
                *g = generators;
                *b = brackets;
            }
            _ if !generators.is_empty() || !brackets.is_empty() => {
                return Err(Error::Config("[generators]/[brackets] only apply to explicit algebras".into()));
            }
            AlgebraSpec::Carrier | AlgebraSpec::Heisenberg if params.is_none() => {
                return Err(Error::Config("carrier algebras need `params`".into()));
            }
            _ => {}
        }
        if let (AlgebraSpec::Heisenberg, Some(p)) = (&algebra, &params) {
            if !(p.alpha.is_zero() && p.beta.is_zero() && p.delta.is_zero()) {
                return Err(Error::Config("heisenberg needs alpha = beta = delta = 0".into()));
            }
        }
        if let Some(p) = &params {
            if &p.alpha + &p.beta != p.delta {
                return Err(Error::ConstraintViolation(format!(
                    "alpha + beta = {} but delta = {}",
                    &p.alpha + &p.beta,
                    p.delta
                )));
            }
        }
        if let BaseSpec::Heisenberg { .. } = base {
            if algebra != AlgebraSpec::Heisenberg {
                return Err(Error::Config("heisenberg base needs algebra = heisenberg".into()));
            }
        }
        Ok(JobConfig {
            name: name.unwrap_or_else(|| "job".into()),
            algebra,
            params,
            weights,
            order,
            emit,
            base,
            twist,
            checks,
            dir: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "name = demo\nalgebra = carrier\nparams = alpha=0 beta=1 gamma=1 delta=1\n\n[twist]\njordanian\nextension kind=P\n\n[checks]\ntwist_eq\nfactorized std_lhs factor=2\nclassical_r expr=A (x) B - B (x) A expect=zero\n";

    #[test]
    fn parses_sample() {
        let c = JobConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.name, "demo");
        assert_eq!(c.twist.len(), 2);
        assert_eq!(c.checks[1].positional, vec!["std_lhs".to_string()]);
        assert_eq!(c.checks[1].arg("factor"), Some("2"));
        assert_eq!(c.checks[2].arg("expr"), Some("A (x) B - B (x) A expect=zero"));
    }

    #[test]
    fn rejects_unknown_key() {
        let err = JobConfig::parse("algebra = borel\ncolour = blue\n").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn rejects_bad_params() {
        let err = JobConfig::parse("algebra = carrier\nparams = alpha=1 beta=1 gamma=1 delta=3\n").unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));
    }

    #[test]
    fn rejects_unknown_check() {
        assert!(JobConfig::parse("algebra = borel\n[checks]\nteleport\n").is_err());
    }

    #[test]
    fn rejects_non_rational_params() {
        assert!(JobConfig::parse("algebra = carrier\nparams = alpha=0.5 beta=1 gamma=1 delta=3/2\n").is_err());
    }
}
