//! Exact check of the real quasi-orthogonal embedding `Φ(v) = (D^{1/2}v, D^{-1/2}v)`.
//!
//! Vectors are given in message coordinates `(c_1, …, c_k)`, each `c_i` of
//! length `m`, and embedded through `0 ↦ 0, 1 ↦ 1, 2 ↦ −1`. The Gram acting
//! on that space is `D ⊗ I_m`. Square roots never appear:
//! `Q(Φ(v)) = vᵀ(D − D⁻¹)v` and `(Φ(v), Φ(w)) = 2 vᵀw`.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

pub type RationalMatrix = Vec<Vec<Rational64>>;

#[derive(Clone, Debug, PartialEq)]
pub struct RealEmbeddingReport {
    pub code_id: String,
    /// `Q(Φ(v))` for each basis vector.
    pub q_values: Vec<Rational64>,
    /// `(Φ(v_i), Φ(v_j))` for basis pairs `i < j`.
    pub pairwise_symplectic: Vec<((usize, usize), Rational64)>,
    pub all_zero: bool,
}

pub fn embed_digit(field: Field, d: u8) -> Result<i64> {
    match (field.order(), d) {
        (_, 0) => Ok(0),
        (_, 1) => Ok(1),
        (3, 2) => Ok(-1),
        _ => Err(Error::domain(format!("digit {d} outside F_{}", field.order()))),
    }
}

pub fn rational_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

/// Inverse by Gauss–Jordan elimination; `None` when singular.
pub fn rational_inverse(d: &RationalMatrix) -> Option<RationalMatrix> {
    let n = d.len();
    let mut a: Vec<Vec<Rational64>> = d
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn determinant(m: &RationalMatrix) -> Rational64 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational64::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational64::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(pivot_row) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// Sylvester's criterion on a symmetric matrix.
pub fn is_positive_definite(d: &RationalMatrix) -> bool {
    let n = d.len();
    let symmetric = (0..n).all(|i| (0..n).all(|j| d[i][j] == d[j][i]));
    symmetric
        && (1..=n).all(|t| {
            let lead: RationalMatrix = d[..t].iter().map(|r| r[..t].to_vec()).collect();
            determinant(&lead) > Rational64::zero()
        })
}

/// `D ⊗ I_m`.
pub fn kron_identity(d: &RationalMatrix, m: usize) -> RationalMatrix {
    let k = d.len();
    let mut out = vec![vec![Rational64::zero(); k * m]; k * m];
    for i in 0..k {
        for j in 0..k {
            for c in 0..m {
                out[i * m + c][j * m + c] = d[i][j];
            }
        }
    }
    out
}

fn bilinear(v: &[Rational64], g: &RationalMatrix, w: &[Rational64]) -> Rational64 {
    v.iter()
        .zip(g)
        .map(|(&vi, row)| vi * row.iter().zip(w).map(|(&gij, &wj)| gij * wj).sum::<Rational64>())
        .sum()
}

/// Evaluate `Q` on every basis vector and the symplectic form on every
/// distinct pair. `basis` rows have length `k·m` where `k = D.len()`.
pub fn verify_real_embedding(
    code_id: impl Into<String>,
    field: Field,
    basis: &[Vec<u8>],
    d: &RationalMatrix,
) -> Result<RealEmbeddingReport> {
    let k = d.len();
    if k == 0 || d.iter().any(|r| r.len() != k) {
        return Err(Error::dim("D must be a non-empty square matrix"));
    }
    if !is_positive_definite(d) {
        return Err(Error::domain("D must be symmetric positive-definite"));
    }
    let d_inv = rational_inverse(d).ok_or_else(|| Error::domain("D is singular"))?;
    let len = basis.first().map(Vec::len).unwrap_or(k);
    if !len.is_multiple_of(k) || basis.iter().any(|v| v.len() != len) {
        return Err(Error::dim(format!("basis rows must share a length divisible by {k}")));
    }
    let m = len / k;
    let big_d = kron_identity(d, m);
    let big_inv = kron_identity(&d_inv, m);
    let diff: RationalMatrix = big_d
        .iter()
        .zip(&big_inv)
        .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x - y).collect())
        .collect();

    let real: Vec<Vec<Rational64>> = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|&x| embed_digit(field, x).map(Rational64::from_integer))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let q_values: Vec<Rational64> = real.iter().map(|v| bilinear(v, &diff, v)).collect();
    let mut pairwise_symplectic = Vec::new();
    for i in 0..real.len() {
        for j in i + 1..real.len() {
            let dot: Rational64 = real[i].iter().zip(&real[j]).map(|(&a, &b)| a * b).sum();
            pairwise_symplectic.push(((i, j), dot * Rational64::from_integer(2)));
        }
    }
    let all_zero = q_values.iter().all(Zero::is_zero) && pairwise_symplectic.iter().all(|(_, v)| v.is_zero());
    Ok(RealEmbeddingReport {
        code_id: code_id.into(),
        q_values,
        pairwise_symplectic,
        all_zero,
    })
}

/// The shortened ternary example in message coordinates: `c_1 ∈ {(0,0,a)}`,
/// `c_2 ∈ ⟨111⟩`, with `D = [[2,1],[1,2]]`.
pub fn shortened_example() -> (Vec<Vec<u8>>, RationalMatrix) {
    let basis = vec![vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 1, 1]];
    (basis, rational_matrix(&[vec![2, 1], vec![1, 2]]))
}

/// Codeword-coordinate basis of the shortened example under the layout of
/// [`super::mpc::matrix_product_code`].
pub fn shortened_example_codewords() -> Vec<Vec<u8>> {
    vec![vec![0, 0, 1, 0, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 1, 1, 1, 1, 1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn inverse_of_example_gram() {
        let d = rational_matrix(&[vec![2, 1], vec![1, 2]]);
        let inv = rational_inverse(&d).unwrap();
        assert_eq!(inv, vec![vec![r(2, 3), r(-1, 3)], vec![r(-1, 3), r(2, 3)]]);
        assert!(is_positive_definite(&d));
        assert!(!is_positive_definite(&rational_matrix(&[vec![1, 2], vec![2, 1]])));
        assert!(rational_inverse(&rational_matrix(&[vec![1, 1], vec![1, 1]])).is_none());
    }

    #[test]
    fn identity_gram_kills_q() {
        let d = rational_matrix(&[vec![1]]);
        let rep = verify_real_embedding("id", Field::TERNARY, &[vec![1, 1, 1, 0], vec![1, 2, 0, 1]], &d).unwrap();
        assert!(rep.q_values.iter().all(|q| q.is_zero()));
        assert_eq!(rep.pairwise_symplectic, vec![((0, 1), r(0, 1))]);
        assert!(rep.all_zero);
    }

    #[test]
    fn zero_code_is_trivially_singular() {
        let d = rational_matrix(&[vec![2, 1], vec![1, 2]]);
        let rep = verify_real_embedding("zero", Field::TERNARY, &[vec![0; 6]], &d).unwrap();
        assert!(rep.all_zero);
        assert!(
            verify_real_embedding("empty", Field::TERNARY, &[], &d)
                .unwrap()
                .all_zero
        );
    }

    #[test]
    fn shortened_example_is_not_singular() {
        let (basis, d) = shortened_example();
        let rep = verify_real_embedding("shortened", Field::TERNARY, &basis, &d).unwrap();
        assert_eq!(rep.q_values, vec![r(4, 3), r(4, 1)]);
        assert_eq!(rep.pairwise_symplectic, vec![((0, 1), r(0, 1))]);
        assert!(!rep.all_zero);
    }

    #[test]
    fn singular_or_indefinite_gram_is_rejected() {
        let bad = rational_matrix(&[vec![1, 1], vec![1, 1]]);
        assert!(verify_real_embedding("x", Field::TERNARY, &[], &bad).is_err());
    }
}
