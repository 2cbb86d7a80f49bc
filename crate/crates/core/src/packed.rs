//! Packed syndrome keys and the weight-ordered Pauli enumerator.
//!
//! Every Pauli `e` on a code maps linearly to a [`Key`]: its syndrome against
//! an independent stabilizer basis, plus its products with the logical
//! representatives. Keys of single-site Paulis are precomputed, so the key of
//! any pattern is a sum of at most `weight` table entries.

use std::ops::ControlFlow;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pauli::PauliVector;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub syn: u128,
    pub log: u128,
}

impl Key {
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.syn == 0 && self.log == 0
    }
}

/// Precomputed keys of every single-site Pauli of a code.
#[derive(Clone, Debug)]
pub struct KeyTable {
    field: Field,
    n: usize,
    k: usize,
    rank: usize,
    m: usize,
    locals: Vec<(u8, u8)>,
    contrib: Vec<Key>,
}

impl KeyTable {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let field = code.field();
        let cap = field.packed_capacity();
        if code.rank() > cap || 2 * code.k() > cap {
            return Err(Error::Resource(format!(
                "code {} too large for packed keys (rank {}, k {}, capacity {cap} digits)",
                code.name(),
                code.rank(),
                code.k()
            )));
        }
        let basis: Vec<PauliVector> = code.stabilizer_basis().into_iter().cloned().collect();
        // Normalize so that (X̄_i, Z̄_i) = 1; then (e, Z̄_i) is the X̄_i exponent.
        let mut zs = Vec::new();
        let mut xs = Vec::new();
        for pair in code.logicals() {
            let c = pair.x.symplectic_product_unchecked(&pair.z);
            let inv = field
                .inv(c)
                .ok_or_else(|| Error::Verification("degenerate logical pair".into()))?;
            zs.push(pair.z.scale(inv));
            xs.push(pair.x.scale(inv));
        }
        let locals = field.local_pairs();
        let m = locals.len();
        let n = code.n();
        let k = code.k();
        let mut contrib = Vec::with_capacity(n * m);
        for j in 0..n {
            for &(x, z) in &locals {
                let e = PauliVector::single(field, n, j, x, z);
                contrib.push(Self::key_with(field, &basis, &zs, &xs, &e));
            }
        }
        Ok(KeyTable {
            field,
            n,
            k,
            rank: basis.len(),
            m,
            locals,
            contrib,
        })
    }

    fn key_with(field: Field, basis: &[PauliVector], zs: &[PauliVector], xs: &[PauliVector], e: &PauliVector) -> Key {
        let mut key = Key::default();
        for (i, g) in basis.iter().enumerate() {
            key.syn |= field.pack_digit(i, g.symplectic_product_unchecked(e));
        }
        let k = zs.len();
        for i in 0..k {
            key.log |= field.pack_digit(i, e.symplectic_product_unchecked(&zs[i]));
            key.log |= field.pack_digit(k + i, e.symplectic_product_unchecked(&xs[i]));
        }
        key
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
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of non-identity local Paulis per site.
    #[inline]
    pub fn local_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn locals(&self) -> &[(u8, u8)] {
        &self.locals
    }

    #[inline]
    pub fn add(&self, a: Key, b: Key) -> Key {
        Key {
            syn: self.field.add_packed(a.syn, b.syn),
            log: self.field.add_packed(a.log, b.log),
        }
    }

    #[inline]
    pub fn sub(&self, a: Key, b: Key) -> Key {
        self.add(
            a,
            Key {
                syn: self.field.neg_packed(b.syn),
                log: self.field.neg_packed(b.log),
            },
        )
    }

    #[inline]
    pub fn contribution(&self, site: usize, local: usize) -> Key {
        self.contrib[site * self.m + local]
    }

    /// Key of an arbitrary Pauli on the code.
    pub fn key_of(&self, e: &PauliVector) -> Key {
        let mut key = Key::default();
        for j in 0..self.n {
            let (x, z) = (e.x(j), e.z(j));
            if x != 0 || z != 0 {
                let l = self.local_index(x, z);
                key = self.add(key, self.contribution(j, l));
            }
        }
        key
    }

    #[inline]
    pub fn local_index(&self, x: u8, z: u8) -> usize {
        // Lexicographic order over (x, z) without (0, 0).
        (x as usize) * (self.field.order() as usize) + z as usize - 1
    }

    /// Key of the pattern `(support, locals)`.
    pub fn key_of_pattern(&self, support: &[usize], locals: &[u8]) -> Key {
        support.iter().zip(locals).fold(Key::default(), |acc, (&j, &l)| {
            self.add(acc, self.contribution(j, l as usize))
        })
    }

    pub fn pattern_to_pauli(&self, support: &[usize], locals: &[u8]) -> PauliVector {
        let mut v = PauliVector::identity(self.field, self.n);
        for (&j, &l) in support.iter().zip(locals) {
            let (x, z) = self.locals[l as usize];
            v.set(j, x, z);
        }
        v
    }

    /// Label of the logical action encoded in `log`, e.g. `"X"`, `"IZY"`.
    pub fn logical_label(&self, log: u128) -> String {
        let f = self.field;
        let mut out = String::new();
        for i in 0..self.k {
            let a = f.packed_digit(log, i);
            let b = f.packed_digit(log, self.k + i);
            if f.is_binary() {
                out.push(match (a, b) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                });
            } else {
                if i > 0 {
                    out.push('.');
                }
                match (a, b) {
                    (0, 0) => out.push('I'),
                    _ => out.push_str(&format!("X{a}Z{b}")),
                }
            }
        }
        out
    }

    /// Visit every weight-`w` pattern whose lowest site is `first`, in
    /// lexicographic (support, local-digit) order.
    pub fn scan_partition<B>(
        &self,
        w: usize,
        first: usize,
        f: &mut impl FnMut(&[usize], &[u8], Key) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if w == 0 || first + w > self.n {
            return ControlFlow::Continue(());
        }
        let mut support: Vec<usize> = (first..first + w).collect();
        let mut locals = vec![0u8; w];
        let mut partial = vec![Key::default(); w + 1];
        loop {
            self.scan_support(&support, 0, &mut locals, &mut partial, f)?;
            // Next combination with support[0] fixed.
            let mut i = w;
            loop {
                if i <= 1 {
                    return ControlFlow::Continue(());
                }
                i -= 1;
                if support[i] < self.n - (w - i) {
                    support[i] += 1;
                    for t in i + 1..w {
                        support[t] = support[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn scan_support<B>(
        &self,
        support: &[usize],
        depth: usize,
        locals: &mut [u8],
        partial: &mut [Key],
        f: &mut impl FnMut(&[usize], &[u8], Key) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if depth == support.len() {
            return f(support, locals, partial[depth]);
        }
        let base = support[depth] * self.m;
        for l in 0..self.m {
            locals[depth] = l as u8;
            partial[depth + 1] = self.add(partial[depth], self.contrib[base + l]);
            self.scan_support(support, depth + 1, locals, partial, f)?;
        }
        ControlFlow::Continue(())
    }

    /// Visit every weight-`w` pattern in order.
    pub fn scan_weight<B>(
        &self,
        w: usize,
        f: &mut impl FnMut(&[usize], &[u8], Key) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if w == 0 {
            return f(&[], &[], Key::default());
        }
        for first in 0..self.n {
            self.scan_partition(w, first, f)?;
        }
        ControlFlow::Continue(())
    }
}

/// `C(n, w)` as a u128.
pub fn binomial(n: usize, w: usize) -> u128 {
    if w > n {
        return 0;
    }
    let w = w.min(n - w);
    let mut acc: u128 = 1;
    for i in 0..w {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of Pauli patterns of exactly weight `w`: `C(n,w)·(q²−1)^w`.
pub fn pattern_count(field: Field, n: usize, w: usize) -> u128 {
    binomial(n, w).saturating_mul((field.local_paulis() as u128).saturating_pow(w as u32))
}

/// Patterns of weight `1..=w_max`.
pub fn cumulative_pattern_count(field: Field, n: usize, w_max: usize) -> u128 {
    (1..=w_max).fold(0u128, |acc, w| acc.saturating_add(pattern_count(field, n, w)))
}
