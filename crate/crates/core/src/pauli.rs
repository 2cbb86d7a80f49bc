//! Symplectic vectors `(a|b)` over F_p^{2n}.
//!
//! Over F_2 each half is packed into 64-bit words so the symplectic product
//! reduces to popcounts. Over F_3 digits are stored one per byte.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Half {
    Bits(Vec<u64>),
    Digits(Vec<u8>),
}

impl Half {
    fn zero(field: Field, n: usize) -> Self {
        if field.is_binary() {
            Half::Bits(vec![0; n.div_ceil(64)])
        } else {
            Half::Digits(vec![0; n])
        }
    }

    #[inline]
    fn get(&self, j: usize) -> u8 {
        match self {
            Half::Bits(w) => ((w[j / 64] >> (j % 64)) & 1) as u8,
            Half::Digits(d) => d[j],
        }
    }

    #[inline]
    fn set(&mut self, j: usize, v: u8) {
        match self {
            Half::Bits(w) => {
                if v & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                } else {
                    w[j / 64] &= !(1 << (j % 64));
                }
            }
            Half::Digits(d) => d[j] = v,
        }
    }
}

/// A Pauli operator modulo phase, written as its symplectic vector `(x|z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliVector {
    field: Field,
    n: usize,
    x: Half,
    z: Half,
}

impl PauliVector {
    /// The identity on `n` sites.
    pub fn identity(field: Field, n: usize) -> Self {
        PauliVector {
            field,
            n,
            x: Half::zero(field, n),
            z: Half::zero(field, n),
        }
    }

    pub fn from_digits(field: Field, x: &[u8], z: &[u8]) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::dim(format!(
                "x half has {} digits, z half has {}",
                x.len(),
                z.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::dim("a Pauli vector needs at least one site"));
        }
        let mut v = Self::identity(field, x.len());
        for (j, (&a, &b)) in x.iter().zip(z).enumerate() {
            if a >= field.order() || b >= field.order() {
                return Err(Error::domain(format!("digit out of range for {field} at site {j}")));
            }
            v.set(j, a, b);
        }
        Ok(v)
    }

    /// Parse `"<x-digits>|<z-digits>"`, e.g. `"11000|00101"`.
    pub fn parse(field: Field, s: &str) -> Result<Self> {
        let (xs, zs) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::domain(format!("expected '<x>|<z>', got {s:?}")))?;
        let digits = |part: &str| -> Result<Vec<u8>> {
            part.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::domain(format!("bad digit {c:?} in {s:?}")))
                })
                .collect()
        };
        Self::from_digits(field, &digits(xs)?, &digits(zs)?)
    }

    /// Build from a dense row `[x_0..x_{n-1}, z_0..z_{n-1}]`.
    pub fn from_row(field: Field, row: &[u8]) -> Result<Self> {
        if !row.len().is_multiple_of(2) {
            return Err(Error::dim("row length must be even"));
        }
        let n = row.len() / 2;
        Self::from_digits(field, &row[..n], &row[n..])
    }

    /// Single-site operator with digits `(x, z)` at site `j`.
    pub fn single(field: Field, n: usize, j: usize, x: u8, z: u8) -> Self {
        let mut v = Self::identity(field, n);
        v.set(j, x % field.order(), z % field.order());
        v
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x(&self, j: usize) -> u8 {
        self.x.get(j)
    }

    #[inline]
    pub fn z(&self, j: usize) -> u8 {
        self.z.get(j)
    }

    #[inline]
    pub fn set(&mut self, j: usize, x: u8, z: u8) {
        self.x.set(j, x);
        self.z.set(j, z);
    }

    pub fn x_digits(&self) -> Vec<u8> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    pub fn z_digits(&self) -> Vec<u8> {
        (0..self.n).map(|j| self.z(j)).collect()
    }

    /// Dense row `[x | z]`.
    pub fn to_row(&self) -> Vec<u8> {
        let mut row = self.x_digits();
        row.extend(self.z_digits());
        row
    }

    /// Sites where either half is non-zero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.x(j) != 0 || self.z(j) != 0).collect()
    }

    pub fn weight(&self) -> usize {
        match (&self.x, &self.z) {
            (Half::Bits(x), Half::Bits(z)) => x.iter().zip(z).map(|(a, b)| (a | b).count_ones() as usize).sum(),
            _ => self.support().len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match (&self.x, &self.z) {
            (Half::Bits(x), Half::Bits(z)) => x.iter().chain(z).all(|&w| w == 0),
            (Half::Digits(x), Half::Digits(z)) => x.iter().chain(z).all(|&d| d == 0),
            _ => unreachable!(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::dim(format!(
                "({}, n={}) vs ({}, n={})",
                self.field, self.n, other.field, other.n
            )));
        }
        Ok(())
    }

    /// `(s, s') = a·b' + a'·b  (mod p)`.
    pub fn symplectic_product(&self, other: &Self) -> Result<u8> {
        self.check_compatible(other)?;
        Ok(self.symplectic_product_unchecked(other))
    }

    pub(crate) fn symplectic_product_unchecked(&self, other: &Self) -> u8 {
        match (&self.x, &self.z, &other.x, &other.z) {
            (Half::Bits(ax), Half::Bits(az), Half::Bits(bx), Half::Bits(bz)) => {
                let mut parity = 0u32;
                for i in 0..ax.len() {
                    parity ^= ((ax[i] & bz[i]) ^ (bx[i] & az[i])).count_ones();
                }
                (parity & 1) as u8
            }
            (Half::Digits(ax), Half::Digits(az), Half::Digits(bx), Half::Digits(bz)) => {
                let p = self.field.order() as u32;
                let mut acc = 0u32;
                for j in 0..self.n {
                    acc += ax[j] as u32 * bz[j] as u32 + bx[j] as u32 * az[j] as u32;
                }
                (acc % p) as u8
            }
            _ => unreachable!("mixed storage for a single field"),
        }
    }

    /// `self + other` digit-wise.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, 1);
        Ok(out)
    }

    /// `self += c · other`.
    pub(crate) fn add_assign_unchecked(&mut self, other: &Self, c: u8) {
        let f = self.field;
        match (&mut self.x, &mut self.z, &other.x, &other.z) {
            (Half::Bits(ax), Half::Bits(az), Half::Bits(bx), Half::Bits(bz)) => {
                if c & 1 == 1 {
                    for i in 0..ax.len() {
                        ax[i] ^= bx[i];
                        az[i] ^= bz[i];
                    }
                }
            }
            (Half::Digits(ax), Half::Digits(az), Half::Digits(bx), Half::Digits(bz)) => {
                for j in 0..ax.len() {
                    ax[j] = f.add(ax[j], f.mul(c, bx[j]));
                    az[j] = f.add(az[j], f.mul(c, bz[j]));
                }
            }
            _ => unreachable!(),
        }
    }

    /// `c · self`.
    pub fn scale(&self, c: u8) -> Self {
        let mut out = Self::identity(self.field, self.n);
        out.add_assign_unchecked(self, c % self.field.order());
        out
    }

    /// Simultaneous cyclic shift of both halves: site `j` moves to `j + s`.
    pub fn cyclic_shift(&self, s: usize) -> Self {
        let mut out = Self::identity(self.field, self.n);
        for j in 0..self.n {
            out.set((j + s) % self.n, self.x(j), self.z(j));
        }
        out
    }

    /// Tensor product `self ⊗ other` on `n + m` sites.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::dim("cannot concatenate vectors over different fields"));
        }
        let mut out = Self::identity(self.field, self.n + other.n);
        for j in 0..self.n {
            out.set(j, self.x(j), self.z(j));
        }
        for j in 0..other.n {
            out.set(self.n + j, other.x(j), other.z(j));
        }
        Ok(out)
    }

    /// Pauli-string label such as `XIZY` (qubits only; qutrits use digit pairs).
    pub fn to_pauli_string(&self) -> String {
        if self.field.is_binary() {
            (0..self.n)
                .map(|j| match (self.x(j), self.z(j)) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                })
                .collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            write!(f, "{}", self.x(j))?;
        }
        write!(f, "|")?;
        for j in 0..self.n {
            write!(f, "{}", self.z(j))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> PauliVector {
        PauliVector::parse(Field::BINARY, s).unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(b("11000|00101").symplectic_product(&b("01100|10010")).unwrap(), 0);
        assert_eq!(b("10000|00000").symplectic_product(&b("00000|10000")).unwrap(), 1);
        let v = b("10110|01101");
        assert_eq!(v.symplectic_product(&v).unwrap(), 0);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(b("10|01").symplectic_product(&b("100|010")).is_err());
        let t = PauliVector::parse(Field::TERNARY, "10|01").unwrap();
        assert!(b("10|01").symplectic_product(&t).is_err());
        assert!(PauliVector::parse(Field::BINARY, "12|00").is_err());
        assert!(PauliVector::parse(Field::BINARY, "10|0").is_err());
        assert!(PauliVector::parse(Field::BINARY, "|").is_err());
    }

    #[test]
    fn display_round_trip_and_shift() {
        let v = b("11000|00101");
        assert_eq!(v.to_string(), "11000|00101");
        assert_eq!(v.cyclic_shift(1).to_string(), "01100|10010");
        assert_eq!(v.weight(), 4);
        assert_eq!(v.support(), vec![0, 1, 2, 4]);
        assert_eq!(v.to_pauli_string(), "XXZIZ");
    }

    #[test]
    fn ternary_arithmetic() {
        let f = Field::TERNARY;
        let u = PauliVector::parse(f, "120|201").unwrap();
        let v = PauliVector::parse(f, "211|002").unwrap();
        // 1*0 + 2*0 + 0*2 + 2*2 + 1*0 + 1*1 = 5 = 2 mod 3
        assert_eq!(u.symplectic_product(&v).unwrap(), 2);
        assert_eq!(u.add(&v).unwrap().to_string(), "001|200");
        assert_eq!(u.scale(2).to_string(), "210|102");
    }

    #[test]
    fn wide_binary_vectors() {
        let n = 70;
        let mut u = PauliVector::identity(Field::BINARY, n);
        let mut v = PauliVector::identity(Field::BINARY, n);
        u.set(66, 1, 0);
        v.set(66, 0, 1);
        assert_eq!(u.symplectic_product(&v).unwrap(), 1);
        assert_eq!(u.add(&v).unwrap().weight(), 1);
    }
}
