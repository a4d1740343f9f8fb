//! First-order (classical) shadows of the quantum data: r-matrices,
//! cobrackets, dual Lie structures and their cocycle conditions.

mod bitensor;
mod dual;

use num_traits::One;
use rayon::prelude::*;

pub use bitensor::{BiTensor, TriTensor};
pub use dual::{dual_gl_names, make_dual_dj, DualLieTable};

use bitensor::tri_add;

use crate::error::{Error, Result};
use crate::lie::{adjoint_flow_terms, BracketTable, LieAlgebra, LieElement};
use crate::pbw::Series;
use crate::rat::{int, rat, Rat};
use crate::twist::CoproductTable;

/// The `xi^1` coefficient of `R`, required to lie in `g (x) g`.
pub fn classical_r(r: &Series) -> Result<BiTensor> {
    if r.order() == 0 {
        return Ok(BiTensor::zero());
    }
    BiTensor::from_tensor(r.coeff(1))
}

/// `[r12, r13] + [r12, r23] + [r13, r23]` from structure constants.
pub fn check_cybe(alg: &LieAlgebra, r: &BiTensor) -> TriTensor {
    let terms: Vec<((usize, usize), Rat)> = r.iter().map(|(&k, c)| (k, c.clone())).collect();
    let mut out = TriTensor::new();
    for ((i, j), a) in &terms {
        for ((k, l), b) in &terms {
            let c = a * b;
            for (m, v) in alg.bracket(*i, *k).iter() {
                tri_add(&mut out, (m, *j, *l), &c * v);
            }
            for (m, v) in alg.bracket(*j, *k).iter() {
                tri_add(&mut out, (*i, m, *l), &c * v);
            }
            for (m, v) in alg.bracket(*j, *l).iter() {
                tri_add(&mut out, (*i, *k, m), &c * v);
            }
        }
    }
    out
}

/// `delta(x)` for every generator: the `xi^1` part of `Delta(x) - Delta^op(x)`.
pub fn cobrackets(table: &CoproductTable) -> Result<Vec<BiTensor>> {
    table
        .entries()
        .iter()
        .map(|s| {
            if s.order() == 0 {
                return Ok(BiTensor::zero());
            }
            let mut t = s.coeff(1).clone();
            t.sub_assign(&s.coeff(1).flip());
            BiTensor::from_tensor(&t)
        })
        .collect()
}

/// Dual brackets `[X_i, X_j] = sum_x delta(x)^{ij} X_x` under the pairing
/// `<X_i, x_j> = d_ij`.
pub fn cobracket(table: &CoproductTable, names: Vec<String>) -> Result<DualLieTable> {
    let deltas = cobrackets(table)?;
    if names.len() != deltas.len() {
        return Err(Error::DimensionMismatch(names.len(), deltas.len()));
    }
    let d = names.len();
    let mut out = DualLieTable::zero(names);
    for i in 0..d {
        for j in i + 1..d {
            let v = LieElement::from_pairs(deltas.iter().enumerate().map(|(x, dx)| (x, dx.get(i, j))));
            if !v.is_zero() {
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// `(1 + tau + tau^2)(delta (x) id) delta(x)` per generator, `tau` the
/// cyclic permutation of three slots.
pub fn check_cojacobi(deltas: &[BiTensor]) -> Vec<TriTensor> {
    deltas
        .iter()
        .map(|dx| {
            let mut out = TriTensor::new();
            for (&(a, b), c) in dx.iter() {
                for (&(p, q), e) in deltas[a].iter() {
                    let v = c * e;
                    tri_add(&mut out, (p, q, b), v.clone());
                    tri_add(&mut out, (b, p, q), v.clone());
                    tri_add(&mut out, (q, b, p), v);
                }
            }
            out
        })
        .collect()
}

/// `delta([x, y]) - x . delta(y) + y . delta(x)` for every generator pair,
/// with `x . (a (x) b) = [x, a] (x) b + a (x) [x, b]`.
pub fn check_bialgebra_cocycle(alg: &LieAlgebra, deltas: &[BiTensor]) -> Vec<((usize, usize), BiTensor)> {
    use crate::lie::AdjointTarget;
    let d = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let mut lhs = BiTensor::zero();
            for (l, c) in alg.bracket(i, j).iter() {
                lhs.add_scaled(&deltas[l], c);
            }
            let xi = LieElement::basis(i);
            let xj = LieElement::basis(j);
            lhs.add_scaled(&deltas[j].ad(alg, &xi), &-Rat::one());
            lhs.add_scaled(&deltas[i].ad(alg, &xj), &Rat::one());
            ((i, j), lhs)
        })
        .collect()
}

/// The mixed Jacobi sum `sum_cyc mu1(mu2(x, y), z) + mu2(mu1(x, y), z)` on
/// every basis triple `i < j < k`; returns the nonzero ones.
pub fn check_mutual_cocycle(
    mu1: &dyn BracketTableSync,
    mu2: &dyn BracketTableSync,
) -> Result<Vec<((usize, usize, usize), LieElement)>> {
    if mu1.dim() != mu2.dim() {
        return Err(Error::DimensionMismatch(mu1.dim(), mu2.dim()));
    }
    let n = mu1.dim();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))).collect();
    let mut out: Vec<_> = triples
        .into_par_iter()
        .filter_map(|(i, j, k)| {
            let mut s = LieElement::zero();
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                let z = LieElement::basis(c);
                s += &mu1.bracket_of(&mu2.bracket_basis(a, b), &z);
                s += &mu2.bracket_of(&mu1.bracket_basis(a, b), &z);
            }
            (!s.is_zero()).then_some(((i, j, k), s))
        })
        .collect();
    out.sort_by_key(|a| a.0);
    Ok(out)
}

/// A [`BracketTable`] that can be shared across threads.
pub trait BracketTableSync: BracketTable + Sync {}
impl<T: BracketTable + Sync> BracketTableSync for T {}

fn gl_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// `sum t_ij H_i (x) H_j + sum_{i<j} E_ij (x) E_ji` with `H_i = E_ii - E_{i+1,i+1}`.
pub fn r_dj(n: usize, t: &[Vec<Rat>]) -> Result<BiTensor> {
    if t.len() != n - 1 || t.iter().any(|row| row.len() != n - 1) {
        return Err(Error::DimensionMismatch(t.len(), n - 1));
    }
    let h = |i: usize| LieElement::basis(gl_index(n, i, i)) - LieElement::basis(gl_index(n, i + 1, i + 1));
    let mut r = BiTensor::zero();
    for i in 1..n {
        for j in 1..n {
            r.add_scaled(&BiTensor::tensor(&h(i), &h(j)), &t[i - 1][j - 1]);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            r.add_term(gl_index(n, i, j), gl_index(n, j, i), &Rat::one());
        }
    }
    Ok(r)
}

/// `-1/2 (H_1N ^ E_1N + 2 sum_{k=2}^{N-1} E_1k ^ E_kN)`.
pub fn r_j(n: usize) -> BiTensor {
    let e = |i: usize, j: usize| LieElement::basis(gl_index(n, i, j));
    let h = e(1, 1) - e(n, n);
    let mut r = BiTensor::wedge(&h, &e(1, n));
    for k in 2..n {
        r.add_scaled(&BiTensor::wedge(&e(1, k), &e(k, n)), &int(2));
    }
    r.scaled(&rat(-1, 2))
}

/// Coefficients of `exp(xi ad E_1N)(r_DJ) - r_DJ - xi r_j` by power of `xi`.
pub fn r_dj_flow_check(alg: &LieAlgebra, n: usize, t: &[Vec<Rat>]) -> Result<Vec<BiTensor>> {
    let r = r_dj(n, t)?;
    let x = LieElement::basis(gl_index(n, 1, n));
    let mut terms = adjoint_flow_terms(alg, &x, &r)?;
    if terms.is_empty() {
        terms.push(BiTensor::zero());
    }
    terms[0] = BiTensor::zero();
    if terms.len() < 2 {
        terms.push(BiTensor::zero());
    }
    terms[1] = terms[1].sub(&r_j(n));
    while terms.last().is_some_and(|t| t.is_zero()) && terms.len() > 1 {
        terms.pop();
    }
    Ok(terms)
}

/// Whether a flow residual vanishes identically.
pub fn flow_residual_is_zero(res: &[BiTensor]) -> bool {
    res.iter().all(BiTensor::is_zero)
}

/// Parses a symmetric matrix written `a,b;c,d`.
pub fn parse_matrix(s: &str) -> Option<Vec<Vec<Rat>>> {
    let rows: Option<Vec<Vec<Rat>>> =
        s.split(';').map(|row| row.split(',').map(crate::rat::parse_rat).collect::<Option<Vec<_>>>()).collect();
    let rows = rows?;
    let n = rows.len();
    (rows.iter().all(|r| r.len() == n)).then_some(rows)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lie::make_gl;
    use crate::pbw::{Tensor, Uea};

    fn tri_to_tensor(t: &TriTensor, d: usize) -> Tensor {
        let mut out = Tensor::zero(3, d);
        for (&(i, j, k), c) in t {
            let g = |x| Tensor::generator(d, x);
            out.add_scaled(&g(i).tensor(&g(j)).tensor(&g(k)), c);
        }
        out
    }

    // Same sum computed as commutators in U(g)^(x)3.
    fn cybe_in_uea(uea: &Uea, r: &BiTensor) -> Tensor {
        let t = r.to_tensor(uea.dim());
        let (r12, r13, r23) = (t.embed(3, &[0, 1]), t.embed(3, &[0, 2]), t.embed(3, &[1, 2]));
        let mut out = uea.commutator(&r12, &r13).unwrap();
        out.add_assign(&uea.commutator(&r12, &r23).unwrap());
        out.add_assign(&uea.commutator(&r13, &r23).unwrap());
        out
    }

    fn gl(n: usize) -> (Arc<LieAlgebra>, Uea) {
        let g = Arc::new(make_gl(n).unwrap());
        let u = Uea::new(g.clone());
        (g, u)
    }

    #[test]
    fn cybe_rejects_plain_tensor() {
        let (g, u) = gl(2);
        let r = BiTensor::tensor(&g.resolve("E_12").unwrap(), &g.resolve("E_21").unwrap());
        let res = check_cybe(&g, &r);
        assert!(!res.is_empty());
        assert_eq!(tri_to_tensor(&res, 4), cybe_in_uea(&u, &r));
    }

    #[test]
    fn cybe_accepts_jordanian_r() {
        let (g, u) = gl(2);
        let r = BiTensor::wedge(&g.resolve("H_12").unwrap(), &g.resolve("E_12").unwrap());
        assert!(check_cybe(&g, &r).is_empty());
        assert!(cybe_in_uea(&u, &r).is_zero());
    }

    #[test]
    fn cybe_matches_uea_on_r_j() {
        for n in [3, 4] {
            let (g, u) = gl(n);
            let r = r_j(n);
            assert_eq!(tri_to_tensor(&check_cybe(&g, &r), n * n), cybe_in_uea(&u, &r));
            assert!(check_cybe(&g, &r).is_empty());
        }
    }

    #[test]
    fn r_j_for_sl2() {
        let (g, _) = gl(2);
        let expected = BiTensor::wedge(&g.resolve("H_12").unwrap(), &g.resolve("E_12").unwrap()).scaled(&rat(-1, 2));
        assert_eq!(r_j(2), expected);
    }

    #[test]
    fn flow_with_quarter_cartan() {
        let (g, _) = gl(2);
        assert!(flow_residual_is_zero(&r_dj_flow_check(&g, 2, &[vec![rat(1, 4)]]).unwrap()));
        assert!(!flow_residual_is_zero(&r_dj_flow_check(&g, 2, &[vec![rat(1, 3)]]).unwrap()));
    }

    #[test]
    fn flow_with_zero_cartan_fails() {
        let (g, _) = gl(3);
        let zero = vec![vec![int(0); 2]; 2];
        let res = r_dj_flow_check(&g, 3, &zero).unwrap();
        assert!(!flow_residual_is_zero(&res));
        let good = parse_matrix("1/3,1/6;1/6,1/3").unwrap();
        assert!(flow_residual_is_zero(&r_dj_flow_check(&g, 3, &good).unwrap()));
    }

    #[test]
    fn matrix_parsing() {
        assert_eq!(parse_matrix("1/4"), Some(vec![vec![rat(1, 4)]]));
        assert_eq!(parse_matrix("1,2;3"), None);
        assert_eq!(parse_matrix("1,x;2,3"), None);
    }

    #[test]
    fn dj_dual_satisfies_jacobi() {
        for n in [2, 3, 4] {
            assert!(make_dual_dj(n).unwrap().jacobi_witness().is_none());
        }
    }
}
