//! Quasi-orthogonal logical layer: overlapping logical states, the effective
//! distance of a deformed code space, the quasi-Pauli displacement calculus
//! and the leading-order leakage model.

use std::f64::consts::TAU;
use std::ops::ControlFlow;

use num_complex::Complex64;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::packed::KeyTable;
use crate::pauli::PauliVector;

/// Largest code handled by the dense-state effective-distance search.
pub const DENSE_STATE_MAX_QUBITS: usize = 13;

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_PHI: f64 = 0.0;

const POWER_ITERATIONS: usize = 200;
const POWER_TOLERANCE: f64 = 1e-10;
const CLIFFORD_TOLERANCE: f64 = 1e-12;

/// Overlap `⟨0_L|1_L⟩ = ε e^{iφ}` between adjacent logical states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OverlapSpec {
    epsilon: f64,
    phi: f64,
}

impl OverlapSpec {
    pub fn new(epsilon: f64, phi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::domain(format!("epsilon must lie in [0, 1), got {epsilon}")));
        }
        if !phi.is_finite() {
            return Err(Error::domain("phi must be finite"));
        }
        Ok(OverlapSpec {
            epsilon,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn orthogonal() -> Self {
        OverlapSpec { epsilon: 0.0, phi: 0.0 }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn overlap(&self) -> Complex64 {
        Complex64::from_polar(self.epsilon, self.phi)
    }
}

impl Default for OverlapSpec {
    fn default() -> Self {
        OverlapSpec {
            epsilon: DEFAULT_EPSILON,
            phi: DEFAULT_PHI,
        }
    }
}

/// `‖α|0_L⟩ + β|1_L⟩‖` for overlapping logical states.
pub fn normalization_factor(alpha: Complex64, beta: Complex64, ov: OverlapSpec) -> Result<f64> {
    if alpha == Complex64::new(0.0, 0.0) && beta == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("(alpha, beta) must not both be zero"));
    }
    let radicand = alpha.norm_sqr() + beta.norm_sqr() + 2.0 * (alpha.conj() * beta * ov.overlap()).re;
    if radicand <= 0.0 {
        return Err(Error::Degenerate(format!(
            "state norm squared is {radicand} for epsilon={}, phi={}",
            ov.epsilon, ov.phi
        )));
    }
    Ok(radicand.sqrt())
}

/// Coefficients of the leading-order model `C_{t+1}p^{t+1} + C̃_t ε² p^t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiModelParams {
    pub t: usize,
    pub c_lead: f64,
    pub c_leak: f64,
    pub epsilon: f64,
}

impl QuasiModelParams {
    pub fn new(t: usize, c_lead: f64, c_leak: f64, epsilon: f64) -> Result<Self> {
        for (name, v) in [("c_lead", c_lead), ("c_leak", c_leak)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        OverlapSpec::new(epsilon, 0.0)?;
        Ok(QuasiModelParams {
            t,
            c_lead,
            c_leak,
            epsilon,
        })
    }
}

/// Leading-order logical error rate with leakage; terms of order
/// `ε²p^{t+1}` and `p^{t+2}` are dropped.
pub fn pl_quasi(p: f64, params: &QuasiModelParams) -> f64 {
    let t = params.t as i32;
    params.c_lead * p.powi(t + 1) + params.c_leak * params.epsilon * params.epsilon * p.powi(t)
}

/// Orthogonal leading-order model `C_{t+1}p^{t+1}`.
pub fn pl_orthogonal(p: f64, t: usize, c_lead: f64) -> f64 {
    c_lead * p.powi(t as i32 + 1)
}

/// Strictly positive real diagonal `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationD {
    lambda: Vec<f64>,
}

impl DeformationD {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() || lambda.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::domain("D needs a non-empty, strictly positive diagonal"));
        }
        Ok(DeformationD { lambda })
    }

    pub fn identity(dim: usize) -> Self {
        DeformationD { lambda: vec![1.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.lambda
    }
}

/// `Q(E(a,b)v) − Q(v) = 2(D^{1/2}v)·a − 2(D^{-1/2}v)·b`.
pub fn displacement_q_delta(v: &[f64], a: &[f64], b: &[f64], deform: &DeformationD) -> Result<f64> {
    let n = deform.dim();
    if v.len() != n || a.len() != n || b.len() != n {
        return Err(Error::dim(format!(
            "expected vectors of length {n}, got {}, {}, {}",
            v.len(),
            a.len(),
            b.len()
        )));
    }
    let mut delta = 0.0;
    for i in 0..n {
        let s = deform.lambda[i].sqrt();
        delta += 2.0 * s * v[i] * a[i] - 2.0 * v[i] * b[i] / s;
    }
    Ok(delta)
}

/// Whether `gᵀ D g = D` within a relative tolerance of 1e-12.
pub fn is_quasi_clifford(g: &[Vec<f64>], deform: &DeformationD) -> Result<bool> {
    let n = deform.dim();
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(Error::dim(format!("g must be {n}x{n}")));
    }
    let scale = deform.lambda.iter().fold(1.0f64, |m, &l| m.max(l));
    for i in 0..n {
        for j in 0..n {
            let gdg: f64 = (0..n).map(|r| g[r][i] * deform.lambda[r] * g[r][j]).sum();
            let target = if i == j { deform.lambda[i] } else { 0.0 };
            if (gdg - target).abs() > CLIFFORD_TOLERANCE * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

type State = Vec<Complex64>;

/// Apply the Hermitian Pauli `i^{x·z} X^x Z^z` to a dense state.
fn apply_pauli(e: &PauliVector, psi: &[Complex64]) -> State {
    let (mut xm, mut zm) = (0usize, 0usize);
    for j in 0..e.n() {
        xm |= (e.x(j) as usize) << j;
        zm |= (e.z(j) as usize) << j;
    }
    let phase = match (xm & zm).count_ones() % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (b, &amp) in psi.iter().enumerate() {
        let sign = if (b & zm).count_ones() % 2 == 1 { -phase } else { phase };
        out[b ^ xm] = sign * amp;
    }
    out
}

/// `(I + P)/2` in place.
fn project(e: &PauliVector, psi: &mut State) {
    let ep = apply_pauli(e, psi);
    for (a, b) in psi.iter_mut().zip(ep) {
        *a = (*a + b) * 0.5;
    }
}

fn norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Orthonormal logical basis `|j_L⟩`, `j` read as a k-bit string.
fn logical_basis(code: &StabilizerCode) -> Result<Vec<State>> {
    let n = code.n();
    let dim = 1usize << n;
    let zs: Vec<&PauliVector> = code.logicals().iter().map(|p| &p.z).collect();
    let xs: Vec<&PauliVector> = code.logicals().iter().map(|p| &p.x).collect();
    let mut zero = None;
    for start in 0..dim {
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[start] = Complex64::new(1.0, 0.0);
        for g in code.stabilizer_basis() {
            project(g, &mut psi);
        }
        for z in &zs {
            project(z, &mut psi);
        }
        let nrm = norm(&psi);
        if nrm > 1e-6 {
            psi.iter_mut().for_each(|a| *a /= nrm);
            zero = Some(psi);
            break;
        }
    }
    let zero = zero.ok_or_else(|| Error::Verification("code space is empty".into()))?;
    let k = code.k();
    Ok((0..1usize << k)
        .map(|j| {
            let mut psi = zero.clone();
            for (i, x) in xs.iter().enumerate() {
                if j >> i & 1 == 1 {
                    psi = apply_pauli(x, &psi);
                }
            }
            psi
        })
        .collect())
}

/// `u'_0 = u_0`, `u'_i = √(1−ε²) u_i + ε e^{iφ} u'_{i−1}`; unit norm with
/// `⟨u'_{i−1}|u'_i⟩ = ε e^{iφ}`.
fn deform_basis(basis: Vec<State>, ov: OverlapSpec) -> Vec<State> {
    let c = (1.0 - ov.epsilon * ov.epsilon).sqrt();
    let w = ov.overlap();
    let mut out: Vec<State> = Vec::with_capacity(basis.len());
    for (i, u) in basis.into_iter().enumerate() {
        if i == 0 {
            out.push(u);
        } else {
            let prev = &out[i - 1];
            let next = u.iter().zip(prev).map(|(&a, &b)| a * c + b * w).collect();
            out.push(next);
        }
    }
    out
}

/// Largest singular value by power iteration on `M†M`.
pub fn largest_singular_value(m: &[Vec<Complex64>]) -> f64 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 {
        return 0.0;
    }
    let mut v = vec![Complex64::new(1.0 / (cols as f64).sqrt(), 0.0); cols];
    let mut lambda = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let mv: Vec<Complex64> = (0..rows).map(|r| (0..cols).map(|c| m[r][c] * v[c]).sum()).collect();
        let w: Vec<Complex64> = (0..cols)
            .map(|c| (0..rows).map(|r| m[r][c].conj() * mv[r]).sum())
            .collect();
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        let done = (nw - lambda).abs() <= POWER_TOLERANCE * nw;
        lambda = nw;
        v = w.into_iter().map(|x| x / nw).collect();
        if done {
            break;
        }
    }
    lambda.sqrt()
}

/// `min{wt(E) : E ∉ S, ‖(⟨u'_a|E|u'_b⟩)_{ab}‖ ≥ τ}` over the deformed logical basis.
///
/// Paulis with non-zero syndrome map the code space to an orthogonal
/// subspace, so their matrix is exactly zero and they are skipped.
pub fn effective_distance(code: &StabilizerCode, tau: f64, deform: OverlapSpec) -> Result<usize> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::domain(format!("tau must lie in (0, 1], got {tau}")));
    }
    if !code.field().is_binary() {
        return Err(Error::domain("effective distance is defined for qubit codes"));
    }
    if code.n() > DENSE_STATE_MAX_QUBITS {
        return Err(Error::Resource(format!(
            "dense states limited to n <= {DENSE_STATE_MAX_QUBITS}, code has n = {}",
            code.n()
        )));
    }
    if code.k() == 0 {
        return Err(Error::domain(format!("{} encodes no logical qubits", code.name())));
    }
    let basis = deform_basis(logical_basis(code)?, deform);
    let table = KeyTable::new(code)?;
    for w in 1..=code.n() {
        let hit = table.scan_weight(w, &mut |support, locals, key| {
            if key.syn != 0 || key.log == 0 {
                return ControlFlow::Continue(());
            }
            let e = table.pattern_to_pauli(support, locals);
            let images: Vec<State> = basis.iter().map(|u| apply_pauli(&e, u)).collect();
            let m: Vec<Vec<Complex64>> = basis
                .iter()
                .map(|a| images.iter().map(|eb| inner(a, eb)).collect())
                .collect();
            if largest_singular_value(&m) >= tau {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if hit.is_break() {
            return Ok(w);
        }
    }
    Err(Error::Verification(format!(
        "no Pauli on {} reaches operator norm {tau}",
        code.name()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ov = OverlapSpec::new(0.1, 0.0).unwrap();
        assert!((normalization_factor(c(h, 0.0), c(h, 0.0), ov).unwrap() - 1.1f64.sqrt()).abs() < 1e-15);
        assert_eq!(normalization_factor(c(1.0, 0.0), c(0.0, 0.0), ov).unwrap(), 1.0);
        let n0 = normalization_factor(c(0.6, 0.0), c(0.0, 0.8), OverlapSpec::orthogonal()).unwrap();
        assert!((n0 - 1.0).abs() < 1e-15);
        assert!(normalization_factor(c(0.0, 0.0), c(0.0, 0.0), ov).is_err());
        let near = OverlapSpec::new(0.999_999, std::f64::consts::PI).unwrap();
        assert!(matches!(
            normalization_factor(c(1.0, 0.0), c(1.0, 0.0), near),
            Ok(_) | Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn overlap_validation() {
        assert!(OverlapSpec::new(1.0, 0.0).is_err());
        assert!(OverlapSpec::new(-0.1, 0.0).is_err());
        assert!((OverlapSpec::new(0.1, -1.0).unwrap().phi() - (TAU - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn pl_quasi_examples() {
        let p = QuasiModelParams::new(1, 10.0, 5.0, 0.1).unwrap();
        assert!((pl_quasi(0.01, &p) - 1.5e-3).abs() < 1e-15);
        assert_eq!(pl_quasi(0.0, &p), 0.0);
        let p0 = QuasiModelParams::new(1, 10.0, 5.0, 0.0).unwrap();
        assert_eq!(pl_quasi(0.01, &p0), pl_orthogonal(0.01, 1, 10.0));
        assert!(QuasiModelParams::new(1, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn displacement_examples() {
        let d4 = DeformationD::new(vec![4.0]).unwrap();
        assert_eq!(displacement_q_delta(&[1.0], &[1.0], &[0.0], &d4).unwrap(), 4.0);
        let id = DeformationD::identity(3);
        let v = [0.3, -1.2, 2.0];
        let a = [1.0, 0.5, -0.25];
        assert_eq!(displacement_q_delta(&v, &a, &a, &id).unwrap(), 0.0);
        assert_eq!(displacement_q_delta(&v, &[0.0; 3], &[0.0; 3], &id).unwrap(), 0.0);
        assert!(displacement_q_delta(&v, &a, &[0.0; 2], &id).is_err());
    }

    #[test]
    fn quasi_clifford_examples() {
        let id = DeformationD::identity(2);
        assert!(is_quasi_clifford(&[vec![1.0, 0.0], vec![0.0, 1.0]], &id).unwrap());
        assert!(is_quasi_clifford(&[vec![0.0, -1.0], vec![1.0, 0.0]], &id).unwrap());
        let d = DeformationD::new(vec![1.0, 4.0]).unwrap();
        assert!(!is_quasi_clifford(&[vec![2.0, 0.0], vec![0.0, 0.5]], &d).unwrap());
        assert!(is_quasi_clifford(&[vec![1.0]], &id).is_err());
    }

    #[test]
    fn singular_values() {
        let m = vec![vec![c(3.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -2.0)]];
        assert!((largest_singular_value(&m) - 3.0).abs() < 1e-9);
        assert_eq!(largest_singular_value(&[vec![c(0.0, 0.0)]]), 0.0);
    }

    #[test]
    fn logical_basis_is_orthonormal_and_stabilized() {
        let code = builder::five_qubit().unwrap();
        let basis = logical_basis(&code).unwrap();
        assert_eq!(basis.len(), 2);
        assert!((inner(&basis[0], &basis[0]).re - 1.0).abs() < 1e-12);
        assert!(inner(&basis[0], &basis[1]).norm() < 1e-12);
        for g in code.generators() {
            let gb = apply_pauli(g, &basis[1]);
            assert!((inner(&basis[1], &gb).re - 1.0).abs() < 1e-12);
        }
        let ov = OverlapSpec::new(0.2, 0.7).unwrap();
        let d = deform_basis(basis, ov);
        assert!((inner(&d[1], &d[1]).re - 1.0).abs() < 1e-12);
        assert!((inner(&d[0], &d[1]) - ov.overlap()).norm() < 1e-12);
    }

    #[test]
    fn effective_distance_five_qubit() {
        let code = builder::five_qubit().unwrap();
        assert_eq!(effective_distance(&code, 1e-9, OverlapSpec::orthogonal()).unwrap(), 3);
        let d = effective_distance(&code, 0.1, OverlapSpec::new(0.2, 0.0).unwrap()).unwrap();
        assert!((2..=3).contains(&d));
        assert!(effective_distance(&code, 0.0, OverlapSpec::orthogonal()).is_err());
    }
}
