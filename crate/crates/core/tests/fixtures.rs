use std::sync::OnceLock;

use twistlab::cli_io::{
    bundled, compare_fixture, DualFixture, FixtureReport, FixtureTable, Job, JobConfig, RunOptions,
};
use twistlab::lie::{BracketTable, LieElement};
use twistlab::pbw::{Series, Tensor};
use twistlab::rat::int;
use twistlab::semiclassical::{cobracket, cobrackets, dual_gl_names, BiTensor};
use twistlab::twist::Coproduct;
use twistlab::Error;

/// Which bundled job supplies the algebra for each bundled fixture.
const FIXTURE_JOBS: [(&str, &str); 11] = [
    ("sl4_pet.fix", "sl4_pet"),
    ("borel_j.fix", "borel_jordanian"),
    ("delfi_pet_i.fix", "carrier_pet_i"),
    ("delfc1_pet_i.fix", "carrier_pet_i"),
    ("delfi_pet_ii.fix", "carrier_pet_ii"),
    ("delfc2_pet_ii.fix", "carrier_pet_ii"),
    ("delfi_internal.fix", "carrier_et_internal"),
    ("delf_internal.fix", "carrier_et_internal"),
    ("heis_base.fix", "heisenberg"),
    ("heis_e.fix", "heisenberg_E"),
    ("heis_eprime.fix", "heisenberg_Eprime"),
];

/// The job's algebra and base, without its twist or checks.
fn bare_job(name: &str, order: usize) -> Job {
    let text = bundled::job(name).unwrap();
    let cut = ["[twist]", "[checks]"].iter().filter_map(|s| text.find(s)).min().unwrap_or(text.len());
    let cfg = JobConfig::parse(&text[..cut]).unwrap();
    Job::build(cfg, &RunOptions { order: Some(order), ..Default::default() }).unwrap()
}

fn sl4_pet() -> &'static Job {
    static JOB: OnceLock<Job> = OnceLock::new();
    JOB.get_or_init(|| {
        let cfg = JobConfig::parse(bundled::job("sl4_pet").unwrap()).unwrap();
        let job = Job::build(cfg, &RunOptions { order: Some(4), ..Default::default() }).unwrap();
        job.twisted().unwrap();
        job
    })
}

fn compare_sl4(text: &str) -> twistlab::Result<FixtureReport> {
    let job = sl4_pet();
    let fix = FixtureTable::parse(text)?;
    let twisted = job.twisted()?;
    compare_fixture(&fix, &job.uea, job.sigma.as_ref(), job.order, |x| {
        Ok(twisted.apply(&job.uea, &Series::constant(job.uea.lie(x), job.order)))
    })
}

fn sl4_table() -> &'static twistlab::twist::CoproductTable {
    match sl4_pet().twisted().unwrap() {
        Coproduct::Table(t) => t,
        Coproduct::Primitive => panic!("twisted coproduct must be a table"),
    }
}

#[test]
fn every_bundled_fixture_is_listed() {
    let listed: Vec<&str> = FIXTURE_JOBS.iter().map(|(f, _)| *f).collect();
    for (name, _) in bundled::fixtures() {
        assert!(name.ends_with(".dual") || listed.contains(name), "{name} has no job");
    }
}

#[test]
fn bundled_fixtures_expand_at_orders_two_to_six() {
    for order in 2..=6 {
        for (fix, job) in FIXTURE_JOBS {
            let job = bare_job(job, order);
            let table = FixtureTable::parse(bundled::fixture(fix).unwrap()).unwrap();
            let alg = job.uea.algebra();
            let weights = table.weights(alg).unwrap().or_else(|| alg.weights().map(<[i64]>::to_vec));
            table.verify(alg, weights.as_deref()).unwrap_or_else(|e| panic!("{fix}: {e}"));
            let sigma = table.sigma_context(alg).unwrap().or(job.sigma.clone());
            for e in &table.entries {
                let s = e.expr.evaluate(&job.uea, sigma.as_ref(), order).unwrap_or_else(|err| panic!("{fix}: {err}"));
                assert_eq!(s.order(), order);
                assert_eq!(s.arity(), 2);
            }
        }
    }
}

#[test]
fn sl4_table_matches() {
    let rep = compare_sl4(bundled::fixture("sl4_pet.fix").unwrap()).unwrap();
    assert_eq!(rep.entries.len(), 15);
    assert!(rep.passes());
}

#[test]
fn flipped_sign_is_localized() {
    let text = bundled::fixture("sl4_pet.fix").unwrap();
    let good = "E_13 = E_13 (x) esig(1) + 1 (x) E_13 - xi E_23 (x) E_14";
    assert!(text.contains(good));
    let bad = text.replace(good, "E_13 = E_13 (x) esig(1) + 1 (x) E_13 + xi E_23 (x) E_14");
    let rep = compare_sl4(&bad).unwrap();
    let failures: Vec<_> = rep.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].lhs, "E_13");
    // The residual is exactly 2 xi E_23 (x) E_14.
    let uea = &sl4_pet().uea;
    let g = |n: &str| uea.lie(&uea.algebra().resolve(n).unwrap());
    let expected = Series::from_tensor(g("E_23").tensor(&g("E_14")).scaled(&int(2)), 1, 4);
    assert_eq!(failures[0].residual, expected);
    assert_eq!(failures[0].first_difference(uea).map(|(k, _, c)| (k, c)), Some((1, int(2))));
}

#[test]
fn wrong_xi_power_is_rejected() {
    let text = bundled::fixture("borel_j.fix").unwrap().replace("E = E (x) esig(2)", "E = xi E (x) esig(2)");
    let job = bare_job("borel_jordanian", 4);
    let table = FixtureTable::parse(&text).unwrap();
    let alg = job.uea.algebra();
    let err = table.verify(alg, alg.weights()).unwrap_err().to_string();
    assert!(err.contains("has xi^1 but its weight requires xi^0"), "{err}");
    let sl4 = bundled::fixture("sl4_pet.fix").unwrap().replace("- xi E_13 (x) E_34 esig(2)", "- E_13 (x) E_34 esig(2)");
    let err = compare_sl4(&sl4).unwrap_err();
    assert!(matches!(&err, Error::Config(m) if m.contains("in E_12 has xi^0 but its weight requires xi^1")), "{err}");
}

#[test]
fn empty_fixture_gives_empty_report() {
    let rep = compare_sl4("").unwrap();
    assert!(rep.entries.is_empty());
    assert!(rep.passes());
}

#[test]
fn first_order_extension_term_of_e12() {
    // F = 1 + xi f1 + ..., f1 = H_12 (x) sigma_1 + E_23 (x) E_34 with
    // sigma = -log(1 + xi E_24), so Delta_F(x) at xi^1 is [f1, Delta_0(x)].
    let job = sl4_pet();
    let uea = &job.uea;
    let g = |n: &str| uea.lie(&uea.algebra().resolve(n).unwrap());
    let one = Tensor::unit(1, uea.dim());
    let mut f1 = g("E_23").tensor(&g("E_34"));
    f1.sub_assign(&g("H_12").tensor(&g("E_24")));
    let x = g("E_12");
    let mut d0 = x.tensor(&one);
    d0.add_assign(&one.tensor(&x));
    let oracle = uea.commutator(&f1, &d0).unwrap();
    let computed = sl4_table().entry(uea.algebra().index_of("E_12").unwrap()).coeff(1).clone();
    assert_eq!(computed, oracle);
    let key = g("E_13").tensor(&g("E_34"));
    let (k, _) = key.iter().next().unwrap();
    assert_eq!(computed.get(k), int(-1));
    // The same term read from the fixture text.
    let fix = FixtureTable::parse(bundled::fixture("sl4_pet.fix").unwrap()).unwrap();
    let e12 = fix.entries.iter().find(|e| e.lhs == "E_12").unwrap();
    let s = e12.expr.evaluate(uea, job.sigma.as_ref(), 1).unwrap();
    assert_eq!(s.coeff(1), &oracle);
}

#[test]
fn cobracket_of_e14() {
    let job = sl4_pet();
    let alg = job.uea.algebra();
    let e = |n: &str| alg.resolve(n).unwrap();
    let deltas = cobrackets(sl4_table()).unwrap();
    assert_eq!(deltas[alg.index_of("E_14").unwrap()], BiTensor::wedge(&e("E_24"), &e("E_14")));
    let dual = cobracket(sl4_table(), dual_gl_names(4)).unwrap();
    let (x14, x24) = (dual.index_of("X_14").unwrap(), dual.index_of("X_24").unwrap());
    assert_eq!(dual.bracket(x14, x24), &-LieElement::basis(x14));
}

#[test]
fn glet_mutation_breaks_jacobi() {
    let text = bundled::fixture("glet.dual").unwrap();
    let full = DualFixture::parse(text).unwrap().to_table(dual_gl_names(4)).unwrap();
    assert!(full.jacobi_witness().is_none());
    let line = "[X_34, X_43] = X_42";
    assert!(text.contains(line));
    let cut = DualFixture::parse(&text.replace(line, "")).unwrap().to_table(dual_gl_names(4)).unwrap();
    let (i, j, k, v) = cut.jacobi_witness().expect("deleting a bracket breaks Jacobi");
    assert!(!v.is_zero());
    assert!([i, j, k].iter().any(|&n| cut.names()[n] == "X_34" || cut.names()[n] == "X_43"));
}

#[test]
fn conflicting_dual_entries_are_rejected() {
    let d = DualFixture::parse("[X_11, X_12] = X_12\n[X_12, X_11] = X_12\n").unwrap();
    assert!(d.to_table(dual_gl_names(2)).is_err());
    let d = DualFixture::parse("[X_11, X_12] = X_12\n[X_12, X_11] = -X_12\n").unwrap();
    assert!(d.to_table(dual_gl_names(2)).is_ok());
}
