//! Matrix-product codes over nested classical chains.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;

/// Enumeration cap for classical minimum distances (`p^t` words).
pub const CLASSICAL_ENUMERATION_LIMIT: u64 = 1_000_000;

/// A defining matrix `A` (k×s) with its Gram `AAᵀ` and NSC status.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiOrthMatrix {
    pub a: GfMatrix,
    pub gram: GfMatrix,
    /// `AAᵀ` is diagonal with non-zero diagonal.
    pub diagonal_ok: bool,
    /// Diagonal of the Gram when `diagonal_ok`.
    pub lambda: Option<Vec<u8>>,
    /// Non-singular by columns: for every `t ≤ k`, each t×t submatrix on the
    /// first `t` rows is invertible.
    pub nsc: bool,
}

impl QuasiOrthMatrix {
    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn k(&self) -> usize {
        self.a.rows()
    }

    pub fn s(&self) -> usize {
        self.a.cols()
    }
}

pub fn check_quasi_orthogonal(a: &GfMatrix) -> Result<QuasiOrthMatrix> {
    let (k, s) = (a.rows(), a.cols());
    if k == 0 || k > s {
        return Err(Error::dim(format!(
            "defining matrix must have 1 <= k <= s, got {k}x{s}"
        )));
    }
    let gram = a.mul(&a.transpose())?;
    let diagonal_ok = (0..k).all(|i| (0..k).all(|j| (i == j) == (gram.get(i, j) != 0)));
    let lambda = diagonal_ok.then(|| (0..k).map(|i| gram.get(i, i)).collect());
    let nsc = is_nsc(a)?;
    Ok(QuasiOrthMatrix {
        a: a.clone(),
        gram,
        diagonal_ok,
        lambda,
        nsc,
    })
}

fn is_nsc(a: &GfMatrix) -> Result<bool> {
    let s = a.cols();
    for t in 1..=a.rows() {
        let rows: Vec<usize> = (0..t).collect();
        let mut cols: Vec<usize> = (0..t).collect();
        loop {
            if a.submatrix(&rows, &cols).determinant()? == 0 {
                return Ok(false);
            }
            if !next_combination(&mut cols, s) {
                break;
            }
        }
    }
    Ok(true)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let t = c.len();
    for i in (0..t).rev() {
        if c[i] < n - (t - i) {
            c[i] += 1;
            for j in i + 1..t {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Nested classical codes `C_1 ⊇ C_2 ⊇ … ⊇ C_k` of common length.
#[derive(Clone, Debug, PartialEq)]
pub struct NestedCodeChain {
    field: Field,
    len: usize,
    levels: Vec<GfMatrix>,
    distances: Vec<usize>,
}

impl NestedCodeChain {
    /// Check containment and compute each level's minimum distance by
    /// enumeration. Levels too large to enumerate need [`Self::with_distances`].
    pub fn new(levels: Vec<GfMatrix>) -> Result<Self> {
        let distances = levels
            .iter()
            .map(|g| {
                let t = g.rank() as u32;
                let words = (g.field().order() as u64).checked_pow(t);
                if words.is_none_or(|w| w > CLASSICAL_ENUMERATION_LIMIT) {
                    return Err(Error::Resource(format!(
                        "level of dimension {t} is too large to enumerate; supply its distance"
                    )));
                }
                classical_min_distance(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_distances(levels, distances)
    }

    pub fn with_distances(levels: Vec<GfMatrix>, distances: Vec<usize>) -> Result<Self> {
        let first = levels.first().ok_or_else(|| Error::dim("empty code chain"))?;
        let (field, len) = (first.field(), first.cols());
        if distances.len() != levels.len() {
            return Err(Error::dim("one distance per chain level is required"));
        }
        for (i, g) in levels.iter().enumerate() {
            if g.field() != field || g.cols() != len {
                return Err(Error::dim(format!("level {i} has a different field or length")));
            }
        }
        for (i, pair) in levels.windows(2).enumerate() {
            if pair[1].row_vecs().iter().any(|r| !pair[0].row_space_contains(r)) {
                return Err(Error::Verification(format!(
                    "level {} is not contained in level {i}",
                    i + 1
                )));
            }
        }
        Ok(NestedCodeChain {
            field,
            len,
            levels,
            distances,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Length of each component code.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[GfMatrix] {
        &self.levels
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.levels.iter().map(GfMatrix::rank).collect()
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }
}

/// Generator matrix of `{[c_1 … c_k]A : c_i ∈ C_i}`. Codewords are laid out
/// as `s` consecutive blocks, block `j` being `Σ_i A_ij c_i`.
pub fn matrix_product_code(chain: &NestedCodeChain, a: &QuasiOrthMatrix) -> Result<GfMatrix> {
    if chain.depth() != a.k() {
        return Err(Error::dim(format!(
            "chain has {} levels but A has {} rows",
            chain.depth(),
            a.k()
        )));
    }
    if chain.field() != a.field() {
        return Err(Error::dim("chain and A are over different fields"));
    }
    let f = chain.field();
    let (m, s) = (chain.len(), a.s());
    let mut rows = Vec::new();
    for (i, level) in chain.levels().iter().enumerate() {
        for g in level.row_vecs() {
            let mut word = vec![0u8; m * s];
            for j in 0..s {
                let aij = a.a.get(i, j);
                for (c, &gc) in g.iter().enumerate() {
                    word[j * m + c] = f.mul(aij, gc);
                }
            }
            rows.push(word);
        }
    }
    GfMatrix::from_rows(f, &rows)
}

/// `min_i (s + 1 − i)·d_i` with 1-based level index `i`.
pub fn nsc_distance_bound(s: usize, distances: &[usize]) -> usize {
    distances
        .iter()
        .enumerate()
        .map(|(i, &d)| (s - i) * d)
        .min()
        .unwrap_or(0)
}

/// Minimum non-zero weight of the row space of `g`, by enumerating all
/// `p^rank` codewords. Returns 0 for the zero code.
pub fn classical_min_distance(g: &GfMatrix) -> Result<usize> {
    let f = g.field();
    let (r, pivots) = g.rref();
    let basis: Vec<&[u8]> = (0..pivots.len()).map(|i| r.row(i)).collect();
    let t = basis.len();
    let words = (f.order() as u64).checked_pow(t as u32);
    if words.is_none_or(|w| w > CLASSICAL_ENUMERATION_LIMIT) {
        return Err(Error::Resource(format!(
            "{}^{t} codewords exceed the enumeration limit",
            f.order()
        )));
    }
    // Mixed-radix counter: every digit step adds one basis row, including the
    // wrap from p−1 back to 0.
    let mut digits = vec![0u8; t];
    let mut word = vec![0u8; g.cols()];
    let mut best = usize::MAX;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == t {
                break 'outer;
            }
            for (w, &b) in word.iter_mut().zip(basis[i]) {
                *w = f.add(*w, b);
            }
            digits[i] = (digits[i] + 1) % f.order();
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        best = best.min(wt);
    }
    Ok(if best == usize::MAX { 0 } else { best })
}

/// The ternary example: `A = [[1,1,0],[0,1,1]]`, `C_1 = F_3^3`, `C_2 = ⟨111⟩`.
pub fn ternary_example() -> Result<(NestedCodeChain, QuasiOrthMatrix)> {
    let f = Field::TERNARY;
    let a = check_quasi_orthogonal(&GfMatrix::from_rows(f, &[[1u8, 1, 0], [0, 1, 1]])?)?;
    let chain = NestedCodeChain::new(vec![GfMatrix::identity(f, 3), GfMatrix::from_rows(f, &[[1u8, 1, 1]])?])?;
    Ok((chain, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[u8]]) -> GfMatrix {
        GfMatrix::from_rows(Field::TERNARY, rows).unwrap()
    }

    #[test]
    fn gram_examples() {
        let id = check_quasi_orthogonal(&GfMatrix::identity(Field::BINARY, 3)).unwrap();
        assert!(id.diagonal_ok && !id.nsc, "row 1 of I_3 has zero entries");
        assert_eq!(id.lambda, Some(vec![1, 1, 1]));

        let a = check_quasi_orthogonal(&t(&[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        assert_eq!(a.gram, t(&[&[2, 1], &[1, 2]]));
        assert!(!a.diagonal_ok);
        assert_eq!(a.lambda, None);
        assert!(!a.nsc, "the (1,3) entry is zero");

        let b = check_quasi_orthogonal(&t(&[&[1, 1, 0], &[1, 2, 0]])).unwrap();
        assert_eq!(b.lambda, Some(vec![2, 2]));
        assert!(!b.nsc);

        assert!(matches!(
            check_quasi_orthogonal(&t(&[&[1], &[1]])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn nsc_vandermonde() {
        let v = check_quasi_orthogonal(&t(&[&[1, 1, 1], &[0, 1, 2]])).unwrap();
        assert!(v.nsc);
    }

    #[test]
    fn ternary_example_parameters() {
        let (chain, a) = ternary_example().unwrap();
        assert_eq!(chain.dimensions(), vec![3, 1]);
        assert_eq!(chain.distances(), &[1, 3]);
        let g = matrix_product_code(&chain, &a).unwrap();
        assert_eq!((g.cols(), g.rank()), (9, 4));
        assert_eq!(classical_min_distance(&g).unwrap(), 2);
        assert_eq!(nsc_distance_bound(3, chain.distances()), 3);
    }

    #[test]
    fn nsc_bound_arithmetic() {
        assert_eq!(nsc_distance_bound(3, &[2, 3, 3]), 3);
        assert_eq!(nsc_distance_bound(1, &[4]), 4);
    }

    #[test]
    fn chain_rejects_non_nested() {
        let f = Field::TERNARY;
        let r = NestedCodeChain::new(vec![
            GfMatrix::from_rows(f, &[[1u8, 0, 0]]).unwrap(),
            GfMatrix::from_rows(f, &[[0u8, 1, 0]]).unwrap(),
        ]);
        assert!(matches!(r, Err(Error::Verification(_))));
    }

    #[test]
    fn classical_distance_of_repetition_and_zero() {
        assert_eq!(classical_min_distance(&t(&[&[1, 1, 1]])).unwrap(), 3);
        assert_eq!(
            classical_min_distance(&GfMatrix::zeros(Field::TERNARY, 1, 3)).unwrap(),
            0
        );
    }
}
