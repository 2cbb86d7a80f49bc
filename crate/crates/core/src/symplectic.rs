//! Symplectic linear algebra on lists of [`PauliVector`]s.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;
use crate::pauli::PauliVector;

/// `(u, v) = u.x·v.z + v.x·u.z  (mod p)`.
pub fn symplectic_product(u: &PauliVector, v: &PauliVector) -> Result<u8> {
    u.symplectic_product(v)
}

fn check_uniform(gens: &[PauliVector]) -> Result<(Field, usize)> {
    let first = gens.first().ok_or_else(|| Error::domain("empty generator list"))?;
    let (field, n) = (first.field(), first.n());
    for (i, g) in gens.iter().enumerate() {
        if g.field() != field || g.n() != n {
            return Err(Error::dim(format!(
                "generator {i} is over {} with n={}, expected {field} with n={n}",
                g.field(),
                g.n()
            )));
        }
    }
    Ok((field, n))
}

/// Whether all pairwise products vanish. On failure returns the first
/// offending pair `(i, j)` with `i <= j`, scanning `i` then `j`.
pub fn is_totally_singular(gens: &[PauliVector]) -> Result<std::result::Result<(), (usize, usize)>> {
    check_uniform(gens)?;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if gens[i].symplectic_product_unchecked(&gens[j]) != 0 {
                return Ok(Err((i, j)));
            }
        }
    }
    Ok(Ok(()))
}

/// Stacked `[x | z]` rows.
pub fn generator_matrix(gens: &[PauliVector]) -> Result<GfMatrix> {
    let (field, _) = check_uniform(gens)?;
    let rows: Vec<Vec<u8>> = gens.iter().map(PauliVector::to_row).collect();
    GfMatrix::from_rows(field, &rows)
}

/// Row rank of the stacked generator matrix.
pub fn rank(gens: &[PauliVector]) -> Result<usize> {
    Ok(generator_matrix(gens)?.rank())
}

/// Indices of a maximal independent subset, chosen greedily in order.
pub fn independent_subset(gens: &[PauliVector]) -> Result<Vec<usize>> {
    let (field, _) = check_uniform(gens)?;
    let mut chosen: Vec<Vec<u8>> = Vec::new();
    let mut idx = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(g.to_row());
        if GfMatrix::from_rows(field, &trial)?.rank() == trial.len() {
            chosen = trial;
            idx.push(i);
        }
    }
    Ok(idx)
}

/// Basis of the symplectic complement `{u : (g, u) = 0 for every generator g}`.
///
/// The product `(g, u)` is linear in `u` with coefficient row `(g.z | g.x)`,
/// so the complement is the kernel of the half-swapped generator matrix.
pub fn symplectic_complement(gens: &[PauliVector]) -> Result<Vec<PauliVector>> {
    let (field, n) = check_uniform(gens)?;
    let swapped: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let mut row = g.z_digits();
            row.extend(g.x_digits());
            row
        })
        .collect();
    let m = GfMatrix::from_rows(field, &swapped)?;
    m.nullspace()
        .into_iter()
        .map(|v| {
            debug_assert_eq!(v.len(), 2 * n);
            PauliVector::from_row(field, &v)
        })
        .collect()
}

/// A conjugate pair of logical representatives with `(x, z) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: PauliVector,
    pub z: PauliVector,
}

/// Split the complement into `k` hyperbolic pairs modulo the stabilizer span.
///
/// Works for both fields: over F_3 the form is symmetric, so each pair is
/// first made isotropic before it is split off.
pub fn logical_pairs(gens: &[PauliVector]) -> Result<Vec<LogicalPair>> {
    let (field, _) = check_uniform(gens)?;
    let dual = symplectic_complement(gens)?;

    // Extend a basis of the stabilizer span with dual vectors to get a complement.
    let mut span: Vec<Vec<u8>> = gens.iter().map(PauliVector::to_row).collect();
    let mut r = GfMatrix::from_rows(field, &span)?.rank();
    let mut rest: Vec<PauliVector> = Vec::new();
    for d in dual {
        span.push(d.to_row());
        let nr = GfMatrix::from_rows(field, &span)?.rank();
        if nr > r {
            r = nr;
            rest.push(d);
        } else {
            span.pop();
        }
    }

    let form = |a: &PauliVector, b: &PauliVector| a.symplectic_product_unchecked(b);
    let mut pairs = Vec::new();
    while !rest.is_empty() {
        let e = take_isotropic(field, &mut rest)
            .ok_or_else(|| Error::Verification("induced form on the logical quotient is degenerate".into()))?;
        let Some(fi) = rest.iter().position(|c| form(&e, c) != 0) else {
            return Err(Error::Verification(
                "no logical partner found; form is degenerate".into(),
            ));
        };
        let f0 = rest.remove(fi);
        let inv = field.inv(form(&e, &f0)).expect("non-zero");
        let mut f = f0.scale(inv);
        let ff = form(&f, &f);
        if ff != 0 {
            // f <- f - (ff/2) e ; only reachable over F_3 where 2^{-1} = 2.
            let half = field.mul(ff, field.inv(2 % field.order()).unwrap_or(0));
            f.add_assign_unchecked(&e, field.neg(half));
        }
        for c in rest.iter_mut() {
            let cf = form(c, &f);
            let ce = form(c, &e);
            c.add_assign_unchecked(&e, field.neg(cf));
            c.add_assign_unchecked(&f, field.neg(ce));
        }
        pairs.push(LogicalPair { x: e, z: f });
    }
    Ok(pairs)
}

/// Remove and return an isotropic vector (one with `(v, v) = 0`) built from `rest`.
fn take_isotropic(field: Field, rest: &mut Vec<PauliVector>) -> Option<PauliVector> {
    let form = |a: &PauliVector, b: &PauliVector| a.symplectic_product_unchecked(b);
    if let Some(i) = rest.iter().position(|v| form(v, v) == 0) {
        return Some(rest.remove(i));
    }
    // Combinations v_i + λ v_j; the result replaces v_i so the span is unchanged.
    for i in 0..rest.len() {
        for j in 0..rest.len() {
            if i == j {
                continue;
            }
            for lambda in 1..field.order() {
                let mut cand = rest[i].clone();
                cand.add_assign_unchecked(&rest[j], lambda);
                if form(&cand, &cand) == 0 && !cand.is_identity() {
                    rest.remove(i);
                    return Some(cand);
                }
            }
        }
    }
    // Exhaustive fallback over coefficient vectors; dimensions here are tiny.
    let m = rest.len();
    let q = field.order() as u64;
    let total = q.checked_pow(m as u32)?;
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            coeffs.push((c % q) as u8);
            c /= q;
        }
        let mut cand = PauliVector::identity(field, rest[0].n());
        for (v, &a) in rest.iter().zip(&coeffs) {
            cand.add_assign_unchecked(v, a);
        }
        if form(&cand, &cand) == 0 {
            let pivot = coeffs.iter().position(|&a| a != 0)?;
            rest.remove(pivot);
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> PauliVector {
        PauliVector::parse(Field::BINARY, s).unwrap()
    }

    fn five() -> Vec<PauliVector> {
        let g = b("11000|00101");
        (0..4).map(|s| g.cyclic_shift(s)).collect()
    }

    #[test]
    fn totally_singular_examples() {
        assert_eq!(is_totally_singular(&five()).unwrap(), Ok(()));
        assert_eq!(
            is_totally_singular(&[b("10000|00000"), b("00000|10000")]).unwrap(),
            Err((0, 1))
        );
        assert_eq!(is_totally_singular(&[b("11010|01101")]).unwrap(), Ok(()));
        assert!(is_totally_singular(&[]).is_err());
        assert!(is_totally_singular(&[b("10|00"), b("100|000")]).is_err());
    }

    #[test]
    fn complement_dimension_and_containment() {
        let gens = five();
        let dual = symplectic_complement(&gens).unwrap();
        assert_eq!(dual.len(), 6);
        let m = generator_matrix(&dual).unwrap();
        for g in &gens {
            assert!(m.row_space_contains(&g.to_row()));
            for d in &dual {
                assert_eq!(g.symplectic_product(d).unwrap(), 0);
            }
        }
    }

    #[test]
    fn five_qubit_logical_pair() {
        let gens = five();
        let pairs = logical_pairs(&gens).unwrap();
        assert_eq!(pairs.len(), 1);
        let LogicalPair { x, z } = &pairs[0];
        assert_eq!(x.symplectic_product(z).unwrap(), 1);
        let m = generator_matrix(&gens).unwrap();
        assert!(!m.row_space_contains(&x.to_row()));
        assert!(!m.row_space_contains(&z.to_row()));
    }

    #[test]
    fn ternary_css_pairs_are_hyperbolic() {
        let f = Field::TERNARY;
        let gens = vec![PauliVector::parse(f, "1110|0000").unwrap()];
        let pairs = logical_pairs(&gens).unwrap();
        assert_eq!(pairs.len(), 3);
        for (i, a) in pairs.iter().enumerate() {
            assert_eq!(a.x.symplectic_product(&a.x).unwrap(), 0);
            assert_eq!(a.z.symplectic_product(&a.z).unwrap(), 0);
            assert_eq!(a.x.symplectic_product(&a.z).unwrap(), 1);
            for b in pairs.iter().skip(i + 1) {
                for (u, v) in [(&a.x, &b.x), (&a.x, &b.z), (&a.z, &b.x), (&a.z, &b.z)] {
                    assert_eq!(u.symplectic_product(v).unwrap(), 0);
                }
            }
        }
    }
}
