//! Building and running a job: algebra, base coproduct, twist chain, checks.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::bundled;
use super::config::{parse_weights, AlgebraSpec, BaseSpec, CheckSpec, EmitFormat, Expect, JobConfig, TwistStep};
use super::emit::{emit_latex, emit_structured, TableEntry};
use super::expr::{self, Factor};
use super::fixture::{compare_fixture, DualFixture, FixtureTable};
use crate::error::{Error, Result};
use crate::lie::{
    frobenius_form, make_borel2, make_carrier_l, make_gl, BracketTable, CarrierParams, LieAlgebra, LieElement,
};
use crate::pbw::{Series, Uea};
use crate::rat::{int, rat, Rat};
use crate::semiclassical::{
    check_bialgebra_cocycle, check_cojacobi, check_cybe, check_mutual_cocycle, classical_r, cobracket, cobrackets,
    dual_gl_names, flow_residual_is_zero, make_dual_dj, parse_matrix, r_dj_flow_check, BiTensor, DualLieTable,
};
use crate::twist::{
    check_factorized, check_hopf_axioms, check_qybe, check_triangularity, check_twist_equation, coproduct_table,
    extension_recipe, grading_report, heisenberg_base, map_series, normalization_residuals, r_closed_form, sl_n_pairs,
    solve_antipode, substitute_recipe, swap_ab_morphism, twist_antipode, Antipode, Coproduct, ExtensionKind,
    FactorizedVariant, Recipe, SigmaContext, Twist,
};

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub order: Option<usize>,
    pub emit: Option<EmitFormat>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct JobReport {
    pub name: String,
    pub order: usize,
    pub outcomes: Vec<CheckOutcome>,
    /// `(file name, contents)` pairs produced by table-emitting checks.
    pub artifacts: Vec<(String, String)>,
}

impl JobReport {
    pub fn passes(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passes() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "job {} (order {})", self.name, self.order);
        for o in &self.outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            if o.detail.is_empty() {
                let _ = writeln!(out, "  {tag} {}", o.label);
            } else {
                let _ = writeln!(out, "  {tag} {}: {}", o.label, o.detail);
            }
        }
        out
    }
}

/// Everything a check may need, built lazily where expensive.
pub struct Job {
    pub config: JobConfig,
    pub alg: Arc<LieAlgebra>,
    pub uea: Uea,
    pub order: usize,
    pub base: Coproduct,
    pub recipes: Vec<Recipe>,
    pub twist: Twist,
    /// Sigma context of the last jordanian factor, or of the Heisenberg base.
    pub sigma: Option<SigmaContext>,
    twisted: OnceLock<Coproduct>,
    r_matrix: OnceLock<Series>,
}

fn build_algebra(cfg: &JobConfig) -> Result<LieAlgebra> {
    let params = || cfg.params.clone().ok_or_else(|| Error::Config("missing params".into()));
    let alg = match &cfg.algebra {
        AlgebraSpec::Gl(n) => make_gl(*n)?,
        AlgebraSpec::Carrier | AlgebraSpec::Heisenberg => make_carrier_l(&params()?)?,
        AlgebraSpec::Borel => make_borel2()?,
        AlgebraSpec::Explicit { generators, brackets } => {
            let mut table = Vec::new();
            for (x, y, rhs) in brackets {
                let e = expr::parse(rhs)?;
                let mut v = LieElement::zero();
                for t in &e.terms {
                    let name = match (t.xi, t.slots.as_slice()) {
                        (0, [slot]) => match slot.as_slice() {
                            [Factor::Gen { name, power: 1 }] => name,
                            _ => return Err(Error::Config(format!("bracket [{x}, {y}] is not linear"))),
                        },
                        _ => return Err(Error::Config(format!("bracket [{x}, {y}] is not linear"))),
                    };
                    let k = generators
                        .iter()
                        .position(|g| g == name)
                        .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                    v.add_term(k, &t.coeff);
                }
                table.push((x.clone(), y.clone(), v));
            }
            LieAlgebra::define(generators, &table)?
        }
    };
    match &cfg.weights {
        Some(w) => {
            let w = parse_weights(w, &alg)?;
            alg.with_weights(w)
        }
        None => Ok(alg),
    }
}

fn gl_rank(alg: &LieAlgebra) -> Option<usize> {
    let n = (1..=alg.dim()).find(|n| n * n == alg.dim())?;
    (alg.index_of(&if n <= 9 { "E_11".to_string() } else { "E_1_1".to_string() }).is_some()).then_some(n)
}

impl Job {
    pub fn build(config: JobConfig, opts: &RunOptions) -> Result<Job> {
        let order = opts.order.unwrap_or(config.order);
        if order == 0 {
            return Err(Error::Config("order must be at least 1".into()));
        }
        let alg = Arc::new(build_algebra(&config)?);
        let uea = Uea::new(alg.clone());
        let (base, mut sigma) = match &config.base {
            BaseSpec::Primitive => (Coproduct::Primitive, None),
            BaseSpec::Heisenberg { exps, gamma } => (
                heisenberg_base(&uea, exps, gamma, order)?,
                Some(SigmaContext::group_like(alg.resolve("E")?, gamma.clone())),
            ),
        };
        let mut recipes = Vec::new();
        for step in &config.twist {
            let recipe = match step {
                TwistStep::Jordanian { h, e, delta, gamma } => {
                    let (h, e) = (alg.resolve(h)?, alg.resolve(e)?);
                    let delta = match delta {
                        Some(d) => d.clone(),
                        None => alg.eigenvalue(&h, &e).ok_or_else(|| {
                            Error::ConstraintViolation(format!(
                                "{} is not an eigenvector of ad H",
                                alg.format_element(&e)
                            ))
                        })?,
                    };
                    let ctx = SigmaContext::new(&alg, h, e, delta, gamma.clone())?;
                    sigma = Some(ctx.clone());
                    Recipe::Jordanian(ctx)
                }
                TwistStep::Extension { kind, pairs, param } => {
                    let pairs = if pairs.is_empty() && *kind == ExtensionKind::SlN {
                        let n =
                            gl_rank(&alg).ok_or_else(|| Error::Config("slN extension needs a gl(n) algebra".into()))?;
                        sl_n_pairs(&alg, n)?
                    } else {
                        pairs.iter().map(|(a, b)| Ok((alg.resolve(a)?, alg.resolve(b)?))).collect::<Result<Vec<_>>>()?
                    };
                    extension_recipe(&alg, *kind, &pairs, sigma.as_ref(), param.clone())?
                }
                TwistStep::Abelian { left, right, coeff } => {
                    Recipe::Abelian { left: alg.resolve(left)?, right: alg.resolve(right)?, coeff: coeff.clone() }
                }
            };
            recipes.push(recipe);
        }
        let twist = crate::twist::build_chain(&uea, &recipes, order)?;
        Ok(Job {
            config,
            alg,
            uea,
            order,
            base,
            recipes,
            twist,
            sigma,
            twisted: OnceLock::new(),
            r_matrix: OnceLock::new(),
        })
    }

    /// `Delta_F` for the whole chain.
    pub fn twisted(&self) -> Result<&Coproduct> {
        if let Some(c) = self.twisted.get() {
            return Ok(c);
        }
        let table = coproduct_table(&self.uea, &self.twist, &self.base)?;
        Ok(self.twisted.get_or_init(|| Coproduct::Table(Arc::new(table))))
    }

    pub fn r_matrix(&self) -> Result<&Series> {
        if !matches!(self.base, Coproduct::Primitive) {
            return Err(Error::Config("R = F21 F^-1 needs a cocommutative (primitive) base".into()));
        }
        if let Some(r) = self.r_matrix.get() {
            return Ok(r);
        }
        let r = self.twist.universal_r(&self.uea)?;
        Ok(self.r_matrix.get_or_init(|| r))
    }

    /// The chain of the first `k` factors, and its coproduct over the base.
    fn prefix(&self, k: usize) -> Result<Coproduct> {
        if k == 0 {
            return Ok(self.base.clone());
        }
        let t = crate::twist::build_chain(&self.uea, &self.recipes[..k], self.order)?;
        Ok(Coproduct::Table(Arc::new(coproduct_table(&self.uea, &t, &self.base)?)))
    }

    /// Factor `k` (1-based), the coproduct it acts on, and the result.
    fn factor(&self, spec: &CheckSpec) -> Result<(Series, Coproduct, Coproduct)> {
        let m = self.recipes.len();
        if m == 0 {
            return Err(Error::Config("the twist chain is empty".into()));
        }
        let k = match spec.arg("factor") {
            Some(s) => s.parse::<usize>().map_err(|_| Error::Config(format!("bad factor `{s}`")))?,
            None => m,
        };
        if k == 0 || k > m {
            return Err(Error::Config(format!("factor must be in 1..={m}")));
        }
        let before = self.prefix(k - 1)?;
        let phi = Twist::from_recipe(&self.uea, self.recipes[k - 1].clone(), self.order)?;
        let after = Coproduct::Table(Arc::new(coproduct_table(&self.uea, &phi, &before)?));
        Ok((phi.element().clone(), before, after))
    }

    pub fn antipode(&self) -> Result<Antipode> {
        match self.base {
            Coproduct::Primitive => Ok(twist_antipode(&self.uea, &self.twist, &Antipode::Primitive)?.1),
            _ => solve_antipode(&self.uea, self.twisted()?, self.order),
        }
    }

    fn base_antipode(&self) -> Result<Antipode> {
        match self.base {
            Coproduct::Primitive => Ok(Antipode::Primitive),
            _ => solve_antipode(&self.uea, &self.base, self.order),
        }
    }

    fn table_entries(&self) -> Result<Vec<Series>> {
        let c = self.twisted()?;
        Ok((0..self.uea.dim()).map(|i| c.generator(&self.uea, i, self.order)).collect())
    }

    fn dual_names(&self) -> Vec<String> {
        match gl_rank(&self.alg) {
            Some(n) => dual_gl_names(n),
            None => self.alg.names().iter().map(|n| format!("{n}*")).collect(),
        }
    }

    fn computed_cobracket(&self) -> Result<DualLieTable> {
        let entries = self.table_entries()?;
        cobracket(&crate::twist::CoproductTable::new(entries), self.dual_names())
    }
}

fn load_text(cfg: &JobConfig, name: &str) -> Result<String> {
    if let Some(dir) = &cfg.dir {
        let p = dir.join(name);
        if p.is_file() {
            return std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
        }
    }
    let p = Path::new(name);
    if p.is_absolute() && p.is_file() {
        return std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
    }
    bundled::fixture(name).map(str::to_string).ok_or_else(|| Error::Io(format!("fixture `{name}` not found")))
}

fn witness_text(uea: &Uea, s: &Series) -> String {
    match s.witness() {
        Some((k, key, c)) => format!("xi^{k}: {} => {c}", uea.format_key(&key)),
        None => String::new(),
    }
}

fn residual_outcome(job: &Job, spec: &CheckSpec, label: String, residual: &Series) -> CheckOutcome {
    let zero = residual.is_zero();
    let passed = zero == (spec.expect == Expect::Zero);
    let detail = if zero {
        "residual zero".to_string()
    } else {
        format!("residual nonzero, {}", witness_text(&job.uea, residual))
    };
    CheckOutcome { label, passed, detail }
}

fn bool_outcome(spec: &CheckSpec, label: String, holds: bool, detail: String) -> CheckOutcome {
    CheckOutcome { label, passed: holds == (spec.expect == Expect::Zero), detail }
}

fn need_expr(spec: &CheckSpec) -> Result<&str> {
    spec.arg("expr").ok_or_else(|| Error::Config(format!("line {}: {} needs expr=", spec.line, spec.name)))
}

fn bitensor_from_expr(job: &Job, text: &str) -> Result<BiTensor> {
    let e = expr::parse_expression(text, &job.alg)?;
    if e.arity() != 2 || e.uses_sigma() || e.terms.iter().any(|t| t.xi != 0) {
        return Err(Error::Config("an r-matrix expression must be a plain element of g (x) g".into()));
    }
    BiTensor::from_tensor(e.evaluate(&job.uea, None, 1)?.coeff(0))
}

fn job_r(job: &Job, spec: &CheckSpec) -> Result<BiTensor> {
    match spec.arg("expr") {
        Some(e) => bitensor_from_expr(job, e),
        None => classical_r(job.r_matrix()?),
    }
}

fn dual_table_from(job: &Job, spec: &CheckSpec) -> Result<DualLieTable> {
    match spec.arg("fixture") {
        Some(f) => DualFixture::parse(&load_text(&job.config, f)?)?.to_table(job.dual_names()),
        None => job.computed_cobracket(),
    }
}

fn format_triple(t: &DualLieTable, (i, j, k): (usize, usize, usize), v: &LieElement) -> String {
    format!("({}, {}, {}) -> {}", t.names()[i], t.names()[j], t.names()[k], t.format_element(v))
}

/// Deterministic grid of carrier parameters with `delta = alpha + beta`.
pub fn frobenius_sweep_points(count: usize) -> Vec<CarrierParams> {
    let vals = [int(0), int(1), int(-1), rat(1, 2), int(2), rat(-3, 2), rat(2, 3), int(3)];
    let mut out = Vec::new();
    'outer: for a in &vals {
        for b in &vals {
            for g in &vals {
                if out.len() == count {
                    break 'outer;
                }
                out.push(CarrierParams::new(a.clone(), b.clone(), g.clone(), a + b));
            }
        }
    }
    out
}

/// Checks `det = (gamma delta)^2` for the functional `E*`, and that the
/// form is nondegenerate exactly when `gamma delta != 0`.
pub fn frobenius_holds(p: &CarrierParams) -> Result<(bool, Rat)> {
    let alg = make_carrier_l(p)?;
    let mut f = vec![Rat::zero(); alg.dim()];
    f[alg.index_of("E").expect("carrier has E")] = Rat::one();
    let form = frobenius_form(&alg, &f);
    let gd = &p.gamma * &p.delta;
    let expected = &gd * &gd;
    Ok((form.det == expected && form.is_nondegenerate() == !gd.is_zero(), form.det))
}

fn run_check(job: &Job, spec: &CheckSpec, report: &mut JobReport, emit: EmitFormat) -> Result<CheckOutcome> {
    let uea = &job.uea;
    let label = spec.label();
    Ok(match spec.name.as_str() {
        "twist_eq" => {
            let res = match spec.arg("factor") {
                Some(_) => {
                    let (phi, before, _) = job.factor(spec)?;
                    check_twist_equation(uea, &phi, &before)?
                }
                None => check_twist_equation(uea, job.twist.element(), &job.base)?,
            };
            residual_outcome(job, spec, label, &res)
        }
        "normalization" => {
            let (l, r) = normalization_residuals(job.twist.element());
            residual_outcome(job, spec, label, &l.add(&r))
        }
        "factorized" => {
            let v = spec.positional.first().ok_or_else(|| Error::Config("factorized needs a variant".into()))?;
            let variant = FactorizedVariant::parse(v).ok_or_else(|| Error::Config(format!("unknown variant `{v}`")))?;
            let (phi, before, after) = job.factor(spec)?;
            let res = check_factorized(uea, variant, &phi, &before, &after)?;
            residual_outcome(job, spec, label, &res)
        }
        "hopf_axioms" => {
            let (coproduct, antipode) = match spec.arg("target").unwrap_or("twisted") {
                "twisted" => (job.twisted()?.clone(), job.antipode()?),
                "base" => (job.base.clone(), job.base_antipode()?),
                t => return Err(Error::Config(format!("unknown target `{t}`"))),
            };
            let rep = check_hopf_axioms(uea, &coproduct, &antipode, job.order)?;
            let n = rep.residuals.len();
            let detail = match rep.failures().next() {
                None => format!("{n} residuals zero"),
                Some(f) => format!(
                    "{} of {n} residuals nonzero, first {} at {}",
                    rep.failures().count(),
                    f.name,
                    witness_text(uea, &f.series)
                ),
            };
            bool_outcome(spec, label, rep.passes(), detail)
        }
        "qybe" => residual_outcome(job, spec, label, &check_qybe(uea, job.r_matrix()?)?),
        "triangularity" => residual_outcome(job, spec, label, &check_triangularity(uea, job.r_matrix()?)?),
        "r_closed_form" => {
            let closed = r_closed_form(uea, &job.twist)?;
            residual_outcome(job, spec, label, &closed.sub(job.r_matrix()?))
        }
        "coproduct_table" => {
            let entries = job.table_entries()?;
            let named: Vec<TableEntry> = entries
                .iter()
                .enumerate()
                .map(|(i, s)| TableEntry { name: job.alg.name(i).to_string(), value: s.clone() })
                .collect();
            let title = format!("{} coproduct table, order {}", job.config.name, job.order);
            let (file, text) = match emit {
                EmitFormat::Structured => {
                    (format!("{}.table.txt", job.config.name), emit_structured(uea, &title, &named))
                }
                EmitFormat::Latex => (format!("{}.table.tex", job.config.name), emit_latex(uea, &title, &named)),
            };
            report.artifacts.push((file, text));
            let terms: usize = entries.iter().map(Series::term_count).sum();
            CheckOutcome { label, passed: true, detail: format!("{} entries, {terms} terms", named.len()) }
        }
        "compare" => {
            let name = spec.arg("fixture").or(spec.positional.first().map(String::as_str));
            let name = name.ok_or_else(|| Error::Config("compare needs fixture=".into()))?;
            let fixture = FixtureTable::parse(&load_text(&job.config, name)?)?;
            let coproduct = match (spec.arg("target").unwrap_or("twisted"), spec.arg("factor")) {
                ("twisted", Some(k)) => {
                    let k: usize = k.parse().map_err(|_| Error::Config(format!("bad factor `{k}`")))?;
                    if k > job.recipes.len() {
                        return Err(Error::Config(format!("factor must be in 0..={}", job.recipes.len())));
                    }
                    job.prefix(k)?
                }
                ("twisted", None) => job.twisted()?.clone(),
                ("base", _) => job.base.clone(),
                (t, _) => return Err(Error::Config(format!("unknown target `{t}`"))),
            };
            let order = job.order;
            let rep = compare_fixture(&fixture, uea, job.sigma.as_ref(), order, |x| {
                Ok(coproduct.apply(uea, &Series::constant(uea.lie(x), order)))
            })?;
            let detail = match rep.failures().next() {
                None => format!("{} entries match", rep.entries.len()),
                Some(f) => {
                    let (k, m, c) = f.first_difference(uea).expect("failing entry has a witness");
                    format!(
                        "{} of {} entries differ, first {} at xi^{k}: {m} => {c}",
                        rep.failures().count(),
                        rep.entries.len(),
                        f.lhs
                    )
                }
            };
            bool_outcome(spec, label, rep.passes(), detail)
        }
        "classical_r" => {
            let r = classical_r(job.r_matrix()?)?;
            let expected = bitensor_from_expr(job, need_expr(spec)?)?;
            let diff = r.sub(&expected);
            let detail = format!("r = {}", r.format(&job.alg));
            bool_outcome(spec, label, diff.is_zero(), detail)
        }
        "cybe" => {
            let r = job_r(job, spec)?;
            let res = check_cybe(&job.alg, &r);
            let detail = match res.iter().next() {
                None => "residual zero".into(),
                Some((&(i, j, k), c)) => {
                    format!(
                        "residual nonzero, {} (x) {} (x) {} => {c}",
                        job.alg.name(i),
                        job.alg.name(j),
                        job.alg.name(k)
                    )
                }
            };
            bool_outcome(spec, label, res.is_empty(), detail)
        }
        "cobracket" => {
            let computed = job.computed_cobracket()?;
            let f = spec.arg("fixture").ok_or_else(|| Error::Config("cobracket needs fixture=".into()))?;
            let expected = DualFixture::parse(&load_text(&job.config, f)?)?.to_table(job.dual_names())?;
            let diffs = computed.differences(&expected)?;
            let detail = match diffs.first() {
                None => format!("{} nonzero brackets match", computed.nonzero_entries().len()),
                Some(&(i, j)) => format!(
                    "{} brackets differ, first [{}, {}]: computed {}, fixture {}",
                    diffs.len(),
                    computed.names()[i],
                    computed.names()[j],
                    computed.format_element(computed.bracket(i, j)),
                    expected.format_element(expected.bracket(i, j))
                ),
            };
            bool_outcome(spec, label, diffs.is_empty(), detail)
        }
        "jacobi" => {
            let t = dual_table_from(job, spec)?;
            let detail = match t.jacobi_witness() {
                None => "residual zero".into(),
                Some((i, j, k, v)) => {
                    format!("residual nonzero, {}", format_triple(&t, (i, j, k), &v))
                }
            };
            bool_outcome(spec, label, t.jacobi_witness().is_none(), detail)
        }
        "cojacobi" => {
            let deltas = cobrackets(&crate::twist::CoproductTable::new(job.table_entries()?))?;
            let res = check_cojacobi(&deltas);
            let bad = res.iter().position(|t| !t.is_empty());
            let detail = match bad {
                None => "residual zero".into(),
                Some(i) => format!("residual nonzero at {}", job.alg.name(i)),
            };
            bool_outcome(spec, label, bad.is_none(), detail)
        }
        "bialgebra_cocycle" => {
            let deltas = cobrackets(&crate::twist::CoproductTable::new(job.table_entries()?))?;
            let res = check_bialgebra_cocycle(&job.alg, &deltas);
            let bad = res.iter().find(|(_, t)| !t.is_zero());
            let detail = match bad {
                None => "residual zero".into(),
                Some(((i, j), t)) => {
                    format!("residual nonzero at ({}, {}): {}", job.alg.name(*i), job.alg.name(*j), t.format(&job.alg))
                }
            };
            bool_outcome(spec, label, bad.is_none(), detail)
        }
        "mutual_cocycle" => {
            let n = gl_rank(&job.alg).ok_or_else(|| Error::Config("mutual_cocycle needs a gl(n) algebra".into()))?;
            let dj = make_dual_dj(n)?;
            let other = dual_table_from(job, spec)?;
            let fwd = check_mutual_cocycle(&dj, &other)?;
            let back = check_mutual_cocycle(&other, &dj)?;
            let both_zero = fwd.is_empty() && back.is_empty();
            let both_nonzero = !fwd.is_empty() && !back.is_empty();
            let mut detail = format!("{} nonzero triples each way", fwd.len());
            if let Some((t, v)) = fwd.first() {
                let _ = write!(detail, ", witness {}", format_triple(&dj, *t, v));
            }
            let passed = match spec.expect {
                Expect::Zero => both_zero,
                Expect::Nonzero => both_nonzero,
            };
            if fwd.len() != back.len() {
                detail = format!("{} / {} nonzero triples", fwd.len(), back.len());
                if let Some((t, v)) = fwd.first() {
                    let _ = write!(detail, ", witness {}", format_triple(&dj, *t, v));
                }
            }
            CheckOutcome { label, passed, detail }
        }
        "frobenius" => {
            let p = job.config.params.clone().ok_or_else(|| Error::Config("frobenius needs carrier params".into()))?;
            let functional = spec.arg("functional").unwrap_or("E");
            let f: Vec<Rat> = {
                let x = job.alg.resolve(functional)?;
                (0..job.alg.dim()).map(|i| x.get(i)).collect()
            };
            let form = frobenius_form(&job.alg, &f);
            let gd = &p.gamma * &p.delta;
            let holds = form.det == &gd * &gd && form.is_nondegenerate() == !gd.is_zero();
            bool_outcome(spec, label, holds, format!("det = {}, (gamma delta)^2 = {}", form.det, &gd * &gd))
        }
        "frobenius_sweep" => {
            let count = match spec.arg("points") {
                Some(s) => s.parse().map_err(|_| Error::Config(format!("bad points `{s}`")))?,
                None => 20,
            };
            let points = frobenius_sweep_points(count);
            let mut bad = None;
            for p in &points {
                let (ok, det) = frobenius_holds(p)?;
                if !ok && bad.is_none() {
                    bad = Some((p.clone(), det));
                }
            }
            let detail = match &bad {
                None => format!("{} points, det = (gamma delta)^2 at each", points.len()),
                Some((p, det)) => format!("L({}, {}, {}, {}) has det {det}", p.alpha, p.beta, p.gamma, p.delta),
            };
            bool_outcome(spec, label, bad.is_none(), detail)
        }
        "rdj_flow" => {
            let n: usize = spec
                .arg("n")
                .ok_or_else(|| Error::Config("rdj_flow needs n=".into()))?
                .parse()
                .map_err(|_| Error::Config("bad n".into()))?;
            let t = match spec.arg("t") {
                Some(s) => parse_matrix(s).ok_or_else(|| Error::Config(format!("bad matrix `{s}`")))?,
                None => return Err(Error::Config("rdj_flow needs t=".into())),
            };
            let g = make_gl(n)?;
            let res = r_dj_flow_check(&g, n, &t)?;
            let detail = match res.iter().enumerate().find(|(_, b)| !b.is_zero()) {
                None => "residual zero".into(),
                Some((k, b)) => format!("residual nonzero at xi^{k}: {}", b.format(&g)),
            };
            bool_outcome(spec, label, flow_residual_is_zero(&res), detail)
        }
        "grading" => {
            let w = job.alg.weights().ok_or_else(|| Error::Config("grading needs a weight character".into()))?;
            let entries = job.table_entries()?;
            let bad = grading_report(&entries, w);
            let detail = match &bad {
                None => format!("{} entries homogeneous", entries.len()),
                Some((i, k, key, wt)) => {
                    format!("{} at xi^{k}: {} has weight {wt}", job.alg.name(*i), uea.format_key(key))
                }
            };
            bool_outcome(spec, label, bad.is_none(), detail)
        }
        "equivalence" => equivalence_check(job, spec, label)?,
        other => return Err(Error::Config(format!("unknown check `{other}`"))),
    })
}

/// Compares `(phi (x) phi) Delta_E(x)` with `Delta_E'(phi x)` under
/// `(A, B, alpha, beta) -> (B, -A, beta, alpha)`, building the `E'` chain
/// both directly and by substituting the `E` recipes.
fn equivalence_check(job: &Job, spec: &CheckSpec, label: String) -> Result<CheckOutcome> {
    let p = job.config.params.clone().ok_or_else(|| Error::Config("equivalence needs carrier params".into()))?;
    if spec.positional.first().map(String::as_str) != Some("swap_ab") {
        return Err(Error::Config("equivalence supports swap_ab only".into()));
    }
    let (src, dst, phi) = swap_ab_morphism(&p)?;
    if src.names() != job.alg.names() {
        return Err(Error::Config("equivalence needs the carrier algebra".into()));
    }
    let dst_uea = Uea::new(dst.clone());
    let mut direct = Vec::new();
    let mut ctx = None;
    for r in &job.recipes {
        direct.push(match r {
            Recipe::Jordanian(c) => {
                let c2 = SigmaContext::new(&dst, phi.apply(&c.h), phi.apply(&c.e), c.delta.clone(), c.gamma.clone())?;
                ctx = Some(c2.clone());
                Recipe::Jordanian(c2)
            }
            Recipe::Extension { kind: ExtensionKind::E, .. } => {
                let pair = (dst.resolve("A")?, dst.resolve("B")?);
                extension_recipe(&dst, ExtensionKind::EPrime, &[pair], ctx.as_ref(), None)?
            }
            _ => return Err(Error::Config("equivalence expects a jordanian + E chain".into())),
        });
    }
    let substituted: Vec<Recipe> = job.recipes.iter().map(|r| substitute_recipe(r, &phi)).collect();
    let order = job.order;
    let f_direct = crate::twist::build_chain(&dst_uea, &direct, order)?;
    let f_subst = crate::twist::build_chain(&dst_uea, &substituted, order)?;
    let t_direct = coproduct_table(&dst_uea, &f_direct, &Coproduct::Primitive)?;
    let t_subst = coproduct_table(&dst_uea, &f_subst, &Coproduct::Primitive)?;
    let src_table = job.twisted()?;
    let mut mismatch = None;
    for i in 0..src.dim() {
        let lhs = map_series(&job.uea, &dst_uea, &phi, &src_table.generator(&job.uea, i, order));
        let img = Series::constant(dst_uea.lie(phi.image(i)), order);
        let a = Coproduct::Table(Arc::new(t_direct.clone())).apply(&dst_uea, &img);
        let b = Coproduct::Table(Arc::new(t_subst.clone())).apply(&dst_uea, &img);
        for (route, rhs) in [("direct", a), ("substituted", b)] {
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() && mismatch.is_none() {
                mismatch = Some(format!("{} via {route}: {}", src.name(i), witness_text(&dst_uea, &diff)));
            }
        }
    }
    let holds = mismatch.is_none();
    let detail = mismatch.unwrap_or_else(|| format!("{} entries agree on both routes", src.dim()));
    Ok(bool_outcome(spec, label, holds, detail))
}

/// Runs a parsed config. `Err` means a configuration or parse problem.
pub fn run_config(config: JobConfig, opts: &RunOptions) -> Result<JobReport> {
    let emit = opts.emit.unwrap_or(config.emit);
    let checks = config.checks.clone();
    let job = Job::build(config, opts)?;
    let mut report = JobReport { name: job.config.name.clone(), order: job.order, ..Default::default() };
    for spec in &checks {
        let outcome = run_check(&job, spec, &mut report, emit)?;
        report.outcomes.push(outcome);
    }
    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for (name, text) in &report.artifacts {
            let p = dir.join(name);
            std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        }
        let p = dir.join(format!("{}.report.txt", report.name));
        std::fs::write(&p, report.render()).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(report)
}

pub fn run_text(text: &str, dir: Option<&Path>, opts: &RunOptions) -> Result<JobReport> {
    let mut cfg = JobConfig::parse(text)?;
    cfg.dir = dir.map(Path::to_path_buf);
    run_config(cfg, opts)
}

/// Reads and runs a config file, resolving fixtures next to it first.
pub fn run_job(path: &Path, opts: &RunOptions) -> Result<JobReport> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    run_text(&text, path.parent(), opts)
}

/// Exit code for a run: 0 pass, 1 failed check, 2 config or parse error.
pub fn exit_code(result: &Result<JobReport>) -> i32 {
    match result {
        Ok(r) => r.exit_code(),
        Err(_) => 2,
    }
}
