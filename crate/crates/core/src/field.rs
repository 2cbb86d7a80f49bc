//! Arithmetic in the prime fields F_2 and F_3.

use std::fmt;

use crate::error::{Error, Result};

/// A small prime field. Only orders 2 and 3 are supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(u8);

impl Field {
    pub const BINARY: Field = Field(2);
    pub const TERNARY: Field = Field(3);

    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 => Ok(Self::BINARY),
            3 => Ok(Self::TERNARY),
            _ => Err(Error::domain(format!("field order {p} unsupported (expected 2 or 3)"))),
        }
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(self, a: u8) -> Option<u8> {
        // In F_2 and F_3 every non-zero element is its own inverse.
        (!a.is_multiple_of(self.0)).then_some(a % self.0)
    }

    /// Reduce an arbitrary integer into the field.
    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    /// Number of non-identity single-site Pauli labels, q² − 1.
    #[inline]
    pub fn local_paulis(self) -> usize {
        (self.0 as usize) * (self.0 as usize) - 1
    }

    /// The non-identity local (x, z) digit pairs in lexicographic order.
    pub fn local_pairs(self) -> Vec<(u8, u8)> {
        let q = self.0;
        (0..q)
            .flat_map(|x| (0..q).map(move |z| (x, z)))
            .filter(|&(x, z)| x != 0 || z != 0)
            .collect()
    }

    /// Add two packed digit vectors (see [`crate::packed`]).
    #[inline]
    pub(crate) fn add_packed(self, a: u128, b: u128) -> u128 {
        if self.0 == 2 {
            a ^ b
        } else {
            // Two bit-planes per 64-bit half: low word marks digit 1, high word digit 2.
            let (a1, a2) = (a as u64, (a >> 64) as u64);
            let (b1, b2) = (b as u64, (b >> 64) as u64);
            let t = (a1 | b2) ^ (a2 | b1);
            let c1 = (a2 | b2) ^ t;
            let c2 = (a1 | b1) ^ t;
            (c1 as u128) | ((c2 as u128) << 64)
        }
    }

    /// Negate a packed digit vector: the identity over F_2, a plane swap over F_3.
    #[inline]
    pub(crate) fn neg_packed(self, a: u128) -> u128 {
        if self.0 == 2 {
            a
        } else {
            a.rotate_left(64)
        }
    }

    /// Maximum number of digits a packed `u128` holds for this field.
    #[inline]
    pub(crate) fn packed_capacity(self) -> usize {
        if self.0 == 2 {
            128
        } else {
            64
        }
    }

    #[inline]
    pub(crate) fn pack_digit(self, index: usize, digit: u8) -> u128 {
        match (self.0, digit) {
            (_, 0) => 0,
            (2, _) => 1u128 << index,
            (_, 1) => 1u128 << index,
            _ => 1u128 << (index + 64),
        }
    }

    #[inline]
    pub(crate) fn packed_digit(self, packed: u128, index: usize) -> u8 {
        if self.0 == 2 {
            ((packed >> index) & 1) as u8
        } else if (packed >> index) & 1 == 1 {
            1
        } else if (packed >> (index + 64)) & 1 == 1 {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}
