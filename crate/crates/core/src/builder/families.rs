//! The named code families: the cyclic five-qubit code, the [[8,3,3]]
//! fixture, the doubled [[10,4,3]] code and quadratic-residue codes.

use crate::code::{DistanceRecord, StabilizerCode};
use crate::distance::{min_weight_logical, MinWeight, SearchBudget};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pauli::PauliVector;

use super::fixture::parse_fixture;

/// Largest quadratic-residue prime accepted by default.
pub const DEFAULT_MAX_QR_PRIME: u64 = 29;

const FIVE_QUBIT_SEED: &str = "11000|00101";
const EIGHT_THREE_FIXTURE: &str = include_str!("../../fixtures/eight_three.txt");

fn five_generators() -> Vec<PauliVector> {
    let seed = PauliVector::parse(Field::BINARY, FIVE_QUBIT_SEED).expect("static");
    (0..4).map(|s| seed.cyclic_shift(s)).collect()
}

fn require_exact_distance(code: StabilizerCode, expected: usize) -> Result<StabilizerCode> {
    match min_weight_logical(&code, expected, SearchBudget::default())? {
        MinWeight::Exact { d, .. } if d == expected => Ok(code.with_distance(DistanceRecord::Exact(d))),
        MinWeight::Exact { d, witness } => Err(Error::Verification(format!(
            "{}: found logical {witness} of weight {d}, expected distance {expected}",
            code.name()
        ))),
        MinWeight::NoLogicalBelow(_) => Err(Error::Verification(format!(
            "{}: no logical of weight <= {expected}",
            code.name()
        ))),
    }
}

/// `[[5,1,3]]`: four cyclic shifts of `X(11000)Z(00101)`.
pub fn five_qubit() -> Result<StabilizerCode> {
    let code = StabilizerCode::new("five", five_generators())?;
    if code.rank() != 4 || code.k() != 1 {
        return Err(Error::Verification(format!("five-qubit code has rank {}", code.rank())));
    }
    require_exact_distance(code, 3)
}

/// The shipped `[[8,3,3]]` generator fixture.
pub fn eight_three_fixture() -> Vec<PauliVector> {
    parse_fixture(EIGHT_THREE_FIXTURE)
        .expect("shipped fixture parses")
        .generators
}

/// Accept a five-generator fixture on eight qubits only if it is a `[[8,3,3]]` code.
pub fn eight_three(fixture: Vec<PauliVector>) -> Result<StabilizerCode> {
    if fixture.len() != 5 || fixture.iter().any(|g| g.n() != 8 || !g.field().is_binary()) {
        return Err(Error::Verification(
            "[[8,3,3]] fixture must list 5 binary generators on 8 qubits".into(),
        ));
    }
    let code = StabilizerCode::new("eight-three", fixture)?;
    if code.rank() != 5 {
        return Err(Error::Verification(format!(
            "[[8,3,3]] fixture has rank {} (k would be {})",
            code.rank(),
            code.k()
        )));
    }
    require_exact_distance(code, 3)
}

/// Order-3 relabelling of the single-qubit Paulis, X → Z → Y → X.
fn omega(v: &PauliVector) -> PauliVector {
    let mut out = PauliVector::identity(v.field(), v.n());
    for j in 0..v.n() {
        let (x, z) = match (v.x(j), v.z(j)) {
            (1, 0) => (0, 1),
            (0, 1) => (1, 1),
            (1, 1) => (1, 0),
            other => other,
        };
        out.set(j, x, z);
    }
    out
}

fn global(field: Field, n: usize, x: u8, z: u8) -> PauliVector {
    let mut v = PauliVector::identity(field, n);
    for j in 0..n {
        v.set(j, x, z);
    }
    v
}

/// `[[10,4,3]]`: each five-qubit generator duplicated as `g ⊗ ω(g)`, plus
/// all-X and all-Z on the ten qubits.
pub fn ten_four() -> Result<StabilizerCode> {
    let mut gens = Vec::with_capacity(6);
    for g in five_generators() {
        gens.push(g.concat(&omega(&g))?);
    }
    gens.push(global(Field::BINARY, 10, 1, 0));
    gens.push(global(Field::BINARY, 10, 0, 1));
    let code = StabilizerCode::new("ten-four", gens)?;
    if code.rank() != 6 {
        return Err(Error::Verification(format!("[[10,4,3]] rank is {}", code.rank())));
    }
    require_exact_distance(code, 3)
}

/// The plain `g ⊗ g` duplication plus all-X/all-Z. Commuting with k = 4, but
/// `X_j X_{j+5}` is a weight-2 logical, so the distance is only 2.
pub fn ten_four_literal() -> Result<StabilizerCode> {
    let mut gens: Vec<PauliVector> = five_generators().iter().map(|g| g.concat(g)).collect::<Result<_>>()?;
    gens.push(global(Field::BINARY, 10, 1, 0));
    gens.push(global(Field::BINARY, 10, 0, 1));
    StabilizerCode::new("ten-four-literal", gens)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Quadratic residues modulo `prime`, ascending.
pub fn quadratic_residues(prime: u64) -> Vec<u64> {
    let mut r: Vec<u64> = (1..prime).map(|i| i * i % prime).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Published distance for the quadratic-residue examples.
pub fn qr_claimed_distance(prime: u64) -> Option<usize> {
    match prime {
        13 => Some(5),
        29 => Some(11),
        _ => None,
    }
}

/// Quadratic-residue stabilizer code on `prime` qubits.
///
/// Base vector: x marks residues, z marks non-residues, site 0 empty in both.
/// Generators are the base and its `prime − 2` simultaneous cyclic shifts.
/// The distance is left unset; see [`min_weight_logical`].
pub fn quadratic_residue_code(prime: u64, max_prime: u64) -> Result<StabilizerCode> {
    if !is_prime(prime) {
        return Err(Error::domain(format!("{prime} is not prime")));
    }
    if prime % 8 != 5 {
        return Err(Error::domain(format!("{prime} is not congruent to 5 mod 8")));
    }
    if prime > max_prime {
        return Err(Error::domain(format!(
            "{prime} exceeds the configured maximum {max_prime}"
        )));
    }
    let n = prime as usize;
    let residues = quadratic_residues(prime);
    let mut base = PauliVector::identity(Field::BINARY, n);
    for j in 1..n {
        if residues.binary_search(&(j as u64)).is_ok() {
            base.set(j, 1, 0);
        } else {
            base.set(j, 0, 1);
        }
    }
    let gens: Vec<PauliVector> = (0..n - 1).map(|s| base.cyclic_shift(s)).collect();
    let code = match StabilizerCode::new(format!("qr{prime}"), gens) {
        Err(Error::NonCommuting(i, j)) => {
            return Err(Error::Verification(format!(
                "shifts {i} and {j} of the residue vector do not commute"
            )))
        }
        other => other?,
    };
    if code.rank() != n - 1 {
        return Err(Error::Verification(format!(
            "qr{prime}: rank {} instead of {}",
            code.rank(),
            n - 1
        )));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_mod_13() {
        assert_eq!(quadratic_residues(13), vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn qr_preconditions() {
        assert!(matches!(quadratic_residue_code(11, 29), Err(Error::Domain(_))));
        assert!(matches!(quadratic_residue_code(21, 29), Err(Error::Domain(_))));
        assert!(matches!(quadratic_residue_code(37, 29), Err(Error::Domain(_))));
        let c = quadratic_residue_code(5, 29).unwrap();
        assert_eq!((c.n(), c.k()), (5, 1));
    }

    #[test]
    fn omega_has_order_three_and_preserves_products() {
        let v = PauliVector::parse(Field::BINARY, "1101|0111").unwrap();
        assert_eq!(omega(&omega(&omega(&v))), v);
        let w = PauliVector::parse(Field::BINARY, "0111|1010").unwrap();
        assert_eq!(
            omega(&v).symplectic_product(&omega(&w)).unwrap(),
            v.symplectic_product(&w).unwrap()
        );
    }

    #[test]
    fn eight_three_rejections() {
        let mut gens = eight_three_fixture();
        gens[4] = PauliVector::parse(Field::BINARY, "10000000|00000000").unwrap();
        assert!(matches!(eight_three(gens), Err(Error::NonCommuting(1, 4))));

        let mut gens = eight_three_fixture();
        gens[4] = gens[2].add(&gens[3]).unwrap();
        let err = eight_three(gens).unwrap_err();
        assert!(err.to_string().contains("rank 4"), "{err}");

        assert!(eight_three(eight_three_fixture()[..4].to_vec()).is_err());
    }
}
