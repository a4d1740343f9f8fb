#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use twistlab::cli_io::{bundled, emit_expression, parse_expression_syntax, Job, JobConfig, RunOptions};
use twistlab::lie::{make_carrier_l, make_gl, CarrierParams};
use twistlab::pbw::{Key, Series, Tensor, Uea};
use twistlab::rat::int;
use twistlab::twist::{Antipode, Coproduct};

pub const ORDER: usize = 3;

pub fn build_job(name: &str, order: usize) -> Job {
    let cfg = JobConfig::parse(bundled::job(name).expect("bundled job")).expect("bundled config parses");
    Job::build(cfg, &RunOptions { order: Some(order), ..Default::default() }).expect("bundled job builds")
}

/// A twisted carrier job together with its antipode, built once.
pub struct Twisted {
    pub job: Job,
    pub coproduct: Coproduct,
    pub antipode: Antipode,
}

pub fn twisted(name: &'static str) -> &'static Twisted {
    static PET_II: OnceLock<Twisted> = OnceLock::new();
    static INTERNAL: OnceLock<Twisted> = OnceLock::new();
    let cell = match name {
        "carrier_pet_ii" => &PET_II,
        "carrier_et_internal" => &INTERNAL,
        _ => panic!("no cached job {name}"),
    };
    cell.get_or_init(|| {
        let job = build_job(name, ORDER);
        let coproduct = job.twisted().unwrap().clone();
        let antipode = job.antipode().unwrap();
        Twisted { job, coproduct, antipode }
    })
}

pub fn carrier_uea() -> Uea {
    Uea::new(Arc::new(make_carrier_l(&CarrierParams::ints(1, 1, 1, 2)).unwrap()))
}

pub fn gl3_uea() -> Uea {
    Uea::new(Arc::new(make_gl(3).unwrap()))
}

/// Exponent vectors of total degree at most `max_deg`.
pub fn mono(dim: usize, max_deg: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0..dim, 0..=max_deg).prop_map(move |gens| {
        let mut m = vec![0u8; dim];
        for g in gens {
            m[g] += 1;
        }
        m
    })
}

/// A small element of `U(g)` with integer coefficients.
pub fn element(dim: usize, max_deg: usize, max_terms: usize) -> impl Strategy<Value = Tensor> {
    proptest::collection::vec((mono(dim, max_deg), -3i64..=3), 1..=max_terms).prop_map(move |terms| {
        let mut t = Tensor::zero(1, dim);
        for (m, c) in terms {
            t.add_term(Key::from_slice(&m), int(c));
        }
        t
    })
}

pub fn assoc_holds(uea: &Uea, a: &Tensor, b: &Tensor, c: &Tensor) -> bool {
    let left = uea.mul(&uea.mul(a, b).unwrap(), c).unwrap();
    let right = uea.mul(a, &uea.mul(b, c).unwrap()).unwrap();
    left == right
}

pub fn coassoc_holds(t: &Twisted, x: &Tensor) -> bool {
    let uea = &t.job.uea;
    let dx = t.coproduct.apply(uea, &Series::constant(x.clone(), ORDER));
    t.coproduct.apply_at(uea, &dx, 0) == t.coproduct.apply_at(uea, &dx, 1)
}

pub fn homomorphism_holds(t: &Twisted, x: &Tensor, y: &Tensor) -> bool {
    let uea = &t.job.uea;
    let s = |v: &Tensor| Series::constant(v.clone(), ORDER);
    let dxy = t.coproduct.apply(uea, &s(&uea.mul(x, y).unwrap()));
    let dx = t.coproduct.apply(uea, &s(x));
    let dy = t.coproduct.apply(uea, &s(y));
    dxy == uea.series_mul(&dx, &dy).unwrap()
}

/// `m(S (x) id) Delta(x) = m(id (x) S) Delta(x) = eps(x) 1`.
pub fn antipode_holds(t: &Twisted, x: &Tensor) -> bool {
    let uea = &t.job.uea;
    let dx = t.coproduct.apply(uea, &Series::constant(x.clone(), ORDER));
    let unit = Series::unit(1, uea.dim(), ORDER).scaled(&uea.counit(x));
    let left = uea.series_slot_product(&t.antipode.apply_at(uea, &dx, 0), 0);
    let right = uea.series_slot_product(&t.antipode.apply_at(uea, &dx, 1), 0);
    left == unit && right == unit
}

/// `w(term) = w(x) + k` at every order of `Delta(x)` for a PBW monomial.
pub fn grading_holds(t: &Twisted, m: &[u8]) -> bool {
    let uea = &t.job.uea;
    let weights = uea.algebra().weights().expect("carrier is weighted").to_vec();
    let w: i64 = m.iter().zip(&weights).map(|(&e, &w)| e as i64 * w).sum();
    let dx = t.coproduct.mono(uea, m, ORDER);
    dx.grading_violation(&weights, w).is_none()
}

pub fn expression_text() -> impl Strategy<Value = String> {
    let gen = prop::sample::select(vec!["E", "A", "B", "H", "E_23", "E_34", "H_12"]);
    let factor = (gen, 1u8..3).prop_map(|(g, p)| if p == 1 { g.to_string() } else { format!("{g}^{p}") });
    let slot =
        proptest::collection::vec(factor, 0..3).prop_map(
            |fs| {
                if fs.is_empty() {
                    "1".to_string()
                } else {
                    fs.join(" ")
                }
            },
        );
    let esig = prop::option::of((-3i64..4, 1i64..3)).prop_map(|q| match q {
        Some((n, 1)) => format!(" esig({n})"),
        Some((n, d)) => format!(" esig({n}/{d})"),
        None => String::new(),
    });
    let term = (0i64..6, 1i64..4, 0usize..3, slot.clone(), slot, esig).prop_map(|(n, d, xi, a, b, s)| {
        let xi = match xi {
            0 => String::new(),
            1 => "xi ".to_string(),
            k => format!("xi^{k} "),
        };
        format!("{n}/{d} {xi}{a} (x) {b}{s}")
    });
    proptest::collection::vec((any::<bool>(), term), 1..4).prop_map(|ts| {
        let mut out = String::new();
        for (k, (neg, t)) in ts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push_str("- "),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&t);
        }
        out
    })
}

pub fn parse_emit_idempotent(text: &str) -> bool {
    let Ok(first) = parse_expression_syntax(text) else {
        return false;
    };
    let once = emit_expression(&first);
    let Ok(second) = parse_expression_syntax(&once) else {
        return false;
    };
    let twice = emit_expression(&second);
    twice == once && parse_expression_syntax(&twice).is_ok_and(|third| third == second)
}

/// All symmetric `t` on the grid `k / den`, `|k| <= den`, for which the
/// adjoint flow of `r_DJ` lands exactly on `r_DJ + xi r_j`.
pub fn brute_force_cartan(n: usize, den: i64) -> Vec<Vec<Vec<twistlab::Rat>>> {
    use twistlab::rat::rat;
    use twistlab::semiclassical::{flow_residual_is_zero, r_dj_flow_check};
    let alg = make_gl(n).unwrap();
    let m = n - 1;
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let vals: Vec<i64> = (-den..=den).collect();
    let mut found = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut t = vec![vec![int(0); m]; m];
        for (s, &(i, j)) in slots.iter().enumerate() {
            t[i][j] = rat(vals[idx[s]], den);
            t[j][i] = t[i][j].clone();
        }
        if flow_residual_is_zero(&r_dj_flow_check(&alg, n, &t).unwrap()) {
            found.push(t);
        }
        let mut s = 0;
        loop {
            if s == idx.len() {
                return found;
            }
            idx[s] += 1;
            if idx[s] < vals.len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

/// Whether `r_DJ + tau(r_DJ)` is invariant under every root vector of `sl(n)`.
pub fn symmetric_part_is_invariant(n: usize, t: &[Vec<twistlab::Rat>]) -> bool {
    use twistlab::lie::{AdjointTarget, LieElement};
    use twistlab::semiclassical::r_dj;
    let alg = make_gl(n).unwrap();
    let r = r_dj(n, t).unwrap();
    let mut sym = r.flip();
    sym.add_scaled(&r, &int(1));
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|(i, j)| i != j).all(|(i, j)| {
        let x = LieElement::basis((i - 1) * n + (j - 1));
        AdjointTarget::is_zero(&sym.ad(&alg, &x))
    })
}

/// `sum_k xi^k x_k` with `x_0 = 0`, each `x_k` a small random element.
pub fn series_of_positive_order(dim: usize, order: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec(element(dim, 2, 2), order).prop_map(move |xs| {
        let mut coeffs = vec![Tensor::zero(1, dim)];
        coeffs.extend(xs);
        Series::from_coeffs(1, dim, coeffs)
    })
}

pub fn small_rat() -> impl Strategy<Value = twistlab::Rat> {
    (-4i64..5, 1i64..4).prop_map(|(n, d)| twistlab::rat::rat(n, d))
}
