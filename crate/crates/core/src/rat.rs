//! Exact rational scalars.
//!
//! All coefficients in the engine are [`Rat`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `int` or `int/posint`, with an optional leading sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if !den.is_positive() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Generalized binomial coefficient `q (q-1) ... (q-k+1) / k!`.
pub fn binomial(q: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (q - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn factorial(k: usize) -> Rat {
    (1..=k).fold(Rat::one(), |acc, i| acc * int(i as i64))
}

/// Exact square root, if `r` is the square of a rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Determinant and rank by exact Gaussian elimination.
pub(crate) fn determinant_and_rank(mut m: Vec<Vec<Rat>>) -> (Rat, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut det = Rat::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            det = Rat::zero();
            continue;
        };
        if pivot != row {
            m.swap(pivot, row);
            det = -det;
        }
        let p = m[row][col].clone();
        det *= &p;
        for r in row + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..cols {
                let sub = &f * &m[row][c];
                m[r][c] -= sub;
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    if rows != cols || rank < rows {
        det = Rat::zero();
    }
    (det, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3"), Some(int(3)));
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("1/-2"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&int(5), 2), int(10));
        assert_eq!(binomial(&int(-1), 3), int(-1));
        // (1/2 choose 2) = (1/2)(-1/2)/2
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial(&int(2), 3), int(0));
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn det_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(determinant_and_rank(m), (int(-2), 2));
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant_and_rank(m), (int(0), 1));
    }
}
