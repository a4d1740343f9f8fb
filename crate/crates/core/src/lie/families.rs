use num_traits::Zero;

use super::{LieAlgebra, LieElement};
use crate::error::{Error, Result};
use crate::rat::{int, Rat};

fn gl_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("E_{i}{j}")
    } else {
        format!("E_{i}_{j}")
    }
}

/// `gl(n)` in the basis `E_ij`, row-major, with `[E_ij, E_kl] = d_jk E_il - d_il E_kj`.
///
/// Aliases `H_ij = E_ii - E_jj` are registered for all `i != j`.
pub fn make_gl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::ConstraintViolation(format!("gl(n) needs n >= 2, got {n}")));
    }
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut names = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            names.push(gl_name(n, i, j));
        }
    }
    let mut brackets = Vec::new();
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (i, j) = (a / n + 1, a % n + 1);
            let (k, l) = (b / n + 1, b % n + 1);
            let mut v = LieElement::zero();
            if j == k {
                v.add_term(idx(i, l), &int(1));
            }
            if i == l {
                v.add_term(idx(k, j), &int(-1));
            }
            if !v.is_zero() {
                brackets.push((names[a].clone(), names[b].clone(), v));
            }
        }
    }
    let mut alg = LieAlgebra::define(&names, &brackets)?;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let h = LieElement::basis(idx(i, i)) - LieElement::basis(idx(j, j));
                let name = if n <= 9 { format!("H_{i}{j}") } else { format!("H_{i}_{j}") };
                alg.add_alias(&name, h)?;
            }
        }
    }
    Ok(alg)
}

/// Weight character `w(E_ij) = lambda_j - lambda_i` on `gl(n)`.
pub fn gl_weights(lambda: &[i64]) -> Vec<i64> {
    let n = lambda.len();
    let mut w = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            w.push(lambda[j] - lambda[i]);
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub delta: Rat,
}

impl CarrierParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Self {
        CarrierParams { alpha, beta, gamma, delta }
    }

    pub fn ints(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        Self::new(int(alpha), int(beta), int(gamma), int(delta))
    }
}

/// The four-dimensional carrier algebra `L(alpha, beta, gamma, delta)`.
///
/// Basis order is `(E, A, B, H)` with `[H,E] = dE`, `[H,A] = aA`,
/// `[H,B] = bB`, `[A,B] = gE`, and `E` central in `span{E, A, B}`. The
/// default weight character is `w(E) = w(A) = 1`, `w(B) = w(H) = 0`.
pub fn make_carrier_l(p: &CarrierParams) -> Result<LieAlgebra> {
    if &p.alpha + &p.beta != p.delta {
        return Err(Error::ConstraintViolation(format!(
            "alpha + beta = {} but delta = {}",
            &p.alpha + &p.beta,
            p.delta
        )));
    }
    let (e, a, b) = (LieElement::basis(0), LieElement::basis(1), LieElement::basis(2));
    let mut brackets = vec![("A", "B", e.scaled(&p.gamma))];
    for (x, v, c) in [("E", &e, &p.delta), ("A", &a, &p.alpha), ("B", &b, &p.beta)] {
        if !c.is_zero() {
            brackets.push(("H", x, v.scaled(c)));
        }
    }
    LieAlgebra::define(&["E", "A", "B", "H"], &brackets)?.with_weights(vec![1, 1, 0, 0])
}

/// The Borel subalgebra `B(2) = {H, E | [H,E] = 2E}`, ordered `(E, H)`.
pub fn make_borel2() -> Result<LieAlgebra> {
    LieAlgebra::define(&["E", "H"], &[("H", "E", LieElement::basis(0).scaled(&int(2)))])?.with_weights(vec![1, 0])
}
