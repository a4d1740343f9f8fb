use num_traits::Zero;

use super::LieAlgebra;
use crate::rat::{determinant_and_rank, Rat};

/// The bilinear form `b(x_i, x_j) = f([x_i, x_j])` of a functional `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub matrix: Vec<Vec<Rat>>,
    pub det: Rat,
    pub rank: usize,
}

impl FrobeniusForm {
    pub fn is_nondegenerate(&self) -> bool {
        !self.det.is_zero()
    }
}

/// `functional` is a coefficient vector on the basis; missing trailing
/// entries count as zero.
pub fn frobenius_form(alg: &LieAlgebra, functional: &[Rat]) -> FrobeniusForm {
    let n = alg.dim();
    let f = |i: usize| functional.get(i).cloned().unwrap_or_else(Rat::zero);
    let matrix: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| alg.bracket(i, j).iter().fold(Rat::zero(), |acc, (k, c)| acc + c * f(k))).collect())
        .collect();
    let (det, rank) = determinant_and_rank(matrix.clone());
    FrobeniusForm { matrix, det, rank }
}
