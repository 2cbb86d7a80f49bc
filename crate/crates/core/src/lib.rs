//! Stabilizer codes over GF(2) and GF(3) in the symplectic picture: code
//! construction, exhaustive distance certification, quasi-orthogonal logical
//! models, Monte Carlo and exact logical error rates, and rate bounds.

pub mod bounds;
pub mod builder;
pub mod code;
pub mod codefile;
pub mod distance;
pub mod error;
pub mod field;
pub mod matrix;
pub mod noise;
pub mod packed;
pub mod pauli;
pub mod quasi;
pub mod symplectic;

pub use code::{DistanceRecord, StabilizerCode};
pub use distance::{min_weight_logical, MinWeight, SearchBudget};
pub use error::{Error, Result};
pub use field::Field;
pub use matrix::GfMatrix;
pub use noise::{DecoderTable, NoiseConfig, OutcomeClass, SimResult};
pub use pauli::PauliVector;
pub use quasi::OverlapSpec;
pub use symplectic::LogicalPair;
