//! Verified stabilizer codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;
use crate::pauli::PauliVector;
use crate::symplectic::{self, LogicalPair};

/// What is known about a code's minimum distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceRecord {
    Unknown,
    Exact(usize),
    /// No logical operator of weight below `at_least` exists.
    LowerBound {
        at_least: usize,
        claimed: Option<usize>,
    },
}

impl DistanceRecord {
    /// Distance used for derived quantities: the exact value, else the
    /// claimed value, else the certified bound.
    pub fn working_value(&self) -> Option<usize> {
        match *self {
            DistanceRecord::Unknown => None,
            DistanceRecord::Exact(d) => Some(d),
            DistanceRecord::LowerBound { at_least, claimed } => Some(claimed.unwrap_or(at_least)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DistanceRecord::Exact(_))
    }
}

impl fmt::Display for DistanceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceRecord::Unknown => write!(f, "?"),
            DistanceRecord::Exact(d) => write!(f, "{d}"),
            DistanceRecord::LowerBound { at_least, .. } => write!(f, ">={at_least}"),
        }
    }
}

/// A stabilizer code whose generators are known to commute.
///
/// Construction verifies total singularity, computes the rank and extracts
/// logical pairs, so every value of this type satisfies the code invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerCode {
    name: String,
    field: Field,
    n: usize,
    generators: Vec<PauliVector>,
    basis: Vec<usize>,
    logicals: Vec<LogicalPair>,
    distance: DistanceRecord,
}

impl StabilizerCode {
    pub fn new(name: impl Into<String>, generators: Vec<PauliVector>) -> Result<Self> {
        if let Err((i, j)) = symplectic::is_totally_singular(&generators)? {
            return Err(Error::NonCommuting(i, j));
        }
        let field = generators[0].field();
        let n = generators[0].n();
        let basis = symplectic::independent_subset(&generators)?;
        let logicals = symplectic::logical_pairs(&generators)?;
        let code = StabilizerCode {
            name: name.into(),
            field,
            n,
            generators,
            basis,
            logicals,
            distance: DistanceRecord::Unknown,
        };
        debug_assert_eq!(code.logicals.len(), code.k());
        Ok(code)
    }

    /// Replace the extracted logical pairs with caller-supplied ones after
    /// checking the pairing contract.
    pub fn with_logicals(mut self, logicals: Vec<LogicalPair>) -> Result<Self> {
        if logicals.len() != self.k() {
            return Err(Error::Verification(format!(
                "expected {} logical pairs, got {}",
                self.k(),
                logicals.len()
            )));
        }
        let old = std::mem::replace(&mut self.logicals, logicals);
        if let Err(e) = self.check_logicals() {
            self.logicals = old;
            return Err(e);
        }
        Ok(self)
    }

    pub fn with_distance(mut self, distance: DistanceRecord) -> Self {
        self.distance = distance;
        self
    }

    pub fn set_distance(&mut self, distance: DistanceRecord) {
        self.distance = distance;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliVector] {
        &self.generators
    }

    /// An independent subset of the generators (length = rank).
    pub fn stabilizer_basis(&self) -> Vec<&PauliVector> {
        self.basis.iter().map(|&i| &self.generators[i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn k(&self) -> usize {
        self.n - self.rank()
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    pub fn distance(&self) -> DistanceRecord {
        self.distance
    }

    /// Correctable weight `⌊(d−1)/2⌋` from the working distance.
    pub fn t(&self) -> Option<usize> {
        self.distance.working_value().map(|d| d.saturating_sub(1) / 2)
    }

    pub fn generator_matrix(&self) -> GfMatrix {
        symplectic::generator_matrix(&self.generators).expect("validated on construction")
    }

    /// Whether `v` lies in the stabilizer row span.
    pub fn in_stabilizer_span(&self, v: &PauliVector) -> bool {
        v.field() == self.field && v.n() == self.n && self.generator_matrix().row_space_contains(&v.to_row())
    }

    /// Whether `v` commutes with every generator.
    pub fn commutes_with_all(&self, v: &PauliVector) -> Result<bool> {
        for g in &self.generators {
            if g.symplectic_product(v)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-check every invariant: commuting generators, rank/k, logical pairing.
    pub fn verify(&self) -> Result<()> {
        if let Err((i, j)) = symplectic::is_totally_singular(&self.generators)? {
            return Err(Error::NonCommuting(i, j));
        }
        if symplectic::rank(&self.generators)? != self.rank() {
            return Err(Error::Verification("stored rank disagrees with elimination".into()));
        }
        self.check_logicals()
    }

    fn check_logicals(&self) -> Result<()> {
        let all: Vec<&PauliVector> = self.logicals.iter().flat_map(|p| [&p.x, &p.z]).collect();
        for (i, v) in all.iter().enumerate() {
            if !self.commutes_with_all(v)? {
                return Err(Error::Verification(format!(
                    "logical {i} does not commute with the stabilizer"
                )));
            }
            if self.in_stabilizer_span(v) {
                return Err(Error::Verification(format!("logical {i} lies in the stabilizer span")));
            }
        }
        for (a, pa) in self.logicals.iter().enumerate() {
            for (b, pb) in self.logicals.iter().enumerate() {
                let xz = pa.x.symplectic_product(&pb.z)?;
                let xx = pa.x.symplectic_product(&pb.x)?;
                let zz = pa.z.symplectic_product(&pb.z)?;
                let pairing_ok = if a == b { xz != 0 } else { xz == 0 };
                if !pairing_ok || xx != 0 || zz != 0 {
                    return Err(Error::Verification(format!(
                        "logical pairs {a} and {b} violate the standard pairing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `[[n,k,d]]` label (`d` shown as `>=w` when only bounded).
    pub fn parameters(&self) -> String {
        let q = if self.field.is_binary() {
            String::new()
        } else {
            format!("_{}", self.field.order())
        };
        format!("[[{},{},{}]]{q}", self.n, self.k(), self.distance)
    }
}
