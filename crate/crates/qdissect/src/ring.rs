//! Coefficient rings for truncated power series.
//!
//! Two rings cover everything this crate computes:
//!
//! * [`Exact`]: arbitrary-precision signed integers. Partition-style
//!   coefficients grow super-polynomially (the coefficients of `1/f_1^3`
//!   overflow 64 bits well below order 500), so exactness requires bignums.
//! * [`Mod`]: integers modulo a small `m`, stored as canonical
//!   representatives in `0..m`. Congruence checks only ever need small
//!   moduli, so elements are plain machine words.
//!
//! A ring value travels with every [`crate::series::Series`]; binary
//! operations on series with different rings are errors, which the series
//! layer reports via [`crate::series::SeriesError::RingMismatch`].
//!
//! The trait also exposes three bulk kernels (`dot_rev`, `mul_sparse_into`,
//! `dot_indexed`) used by series multiplication and division. The default
//! implementations are straightforward loops; [`Mod`] overrides them with
//! batched wrapping arithmetic so that order-10^5 expansions stay cheap.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A coefficient ring: element type plus the arithmetic on it.
///
/// Implementations must keep elements in canonical form (for `Mod`, in
/// `0..m`), and every method must preserve that invariant.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Canonical image of a signed machine integer.
    fn embed_i64(&self, value: i64) -> Self::Elem;
    /// Canonical image of an arbitrary-precision integer.
    fn embed_bigint(&self, value: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse, or `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Short human-readable ring name, used in error messages and JSON.
    fn describe(&self) -> String;

    /// Decimal rendering of an element (exact values exceed 64 bits, so
    /// machine-readable output always goes through strings).
    fn elem_to_string(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `sum_i a[i] * b[len-1-i]`, the reversed dot product at the heart of
    /// the Cauchy product and the inversion recurrence.
    fn dot_rev(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b.iter().rev()) {
            if self.is_zero(x) || self.is_zero(y) {
                continue;
            }
            acc = self.add(&acc, &self.mul(x, y));
        }
        acc
    }

    /// `out[off + j] += c * dense[j]` for every `(off, c)` in `terms`,
    /// clipped to `out`'s length. Callers pass the sparser multiplicand as
    /// `terms`, so a product against an eta factor costs O(nnz * n).
    fn mul_sparse_into(
        &self,
        out: &mut [Self::Elem],
        terms: &[(usize, Self::Elem)],
        dense: &[Self::Elem],
    ) {
        for (off, c) in terms {
            if self.is_zero(c) {
                continue;
            }
            let upper = dense.len().min(out.len() - off);
            for (j, d) in dense.iter().take(upper).enumerate() {
                if self.is_zero(d) {
                    continue;
                }
                out[off + j] = self.add(&out[off + j], &self.mul(c, d));
            }
        }
    }

    /// `sum_{(i, c) in terms, 1 <= i <= n} c * values[n - i]`: one step of
    /// the long-division recurrence against a sparse divisor.
    fn dot_indexed(
        &self,
        terms: &[(usize, Self::Elem)],
        values: &[Self::Elem],
        n: usize,
    ) -> Self::Elem {
        let mut acc = self.zero();
        for (i, c) in terms {
            if *i == 0 || *i > n {
                continue;
            }
            let v = &values[n - i];
            if self.is_zero(v) {
                continue;
            }
            acc = self.add(&acc, &self.mul(c, v));
        }
        acc
    }
}

/// The ring of arbitrary-precision signed integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Exact;

impl CoeffRing for Exact {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn embed_i64(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }

    fn embed_bigint(&self, value: &BigInt) -> BigInt {
        value.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }

    fn describe(&self) -> String {
        "exact".to_string()
    }

    fn elem_to_string(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// Largest modulus accepted by [`Mod::new`]. Keeping `m < 2^32` lets the
/// hot kernels accumulate word-sized products without overflow checks.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// The ring of integers modulo `m`, canonical representatives `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mod {
    modulus: u64,
}

impl Mod {
    /// Requires `2 <= m <= 2^32 - 1`.
    pub fn new(modulus: u64) -> Result<Self, InvalidModulus> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(InvalidModulus(modulus));
        }
        Ok(Mod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// How many products `(m-1)^2` fit in a `u64` accumulator; bulk kernels
    /// reduce once per this many terms instead of once per term.
    fn reduction_chunk(&self) -> usize {
        let max_prod = (self.modulus - 1) * (self.modulus - 1);
        if max_prod == 0 {
            return usize::MAX;
        }
        ((u64::MAX - (self.modulus - 1)) / max_prod).max(1) as usize
    }
}

/// Rejected modulus for [`Mod::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("modulus {0} out of range (need 2 <= m <= 2^32 - 1)")]
pub struct InvalidModulus(pub u64);

impl CoeffRing for Mod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn embed_i64(&self, value: i64) -> u64 {
        let m = self.modulus as i128;
        let r = (value as i128).rem_euclid(m);
        r as u64
    }

    fn embed_bigint(&self, value: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        value
            .mod_floor(&m)
            .to_u64()
            .expect("mod_floor result fits the modulus")
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        // Extended Euclid on (a, m); unit iff gcd = 1.
        let (mut r0, mut r1) = (self.modulus as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.modulus as i128) as u64)
    }

    fn describe(&self) -> String {
        format!("mod {}", self.modulus)
    }

    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }

    fn dot_rev(&self, a: &[u64], b: &[u64]) -> u64 {
        debug_assert_eq!(a.len(), b.len());
        let chunk = self.reduction_chunk();
        let mut acc = 0u64;
        let n = a.len();
        let mut start = 0;
        while start < n {
            let end = (start + chunk).min(n);
            let mut part = 0u64;
            for i in start..end {
                part = part.wrapping_add(a[i].wrapping_mul(b[n - 1 - i]));
            }
            acc = (acc + part % self.modulus) % self.modulus;
            start = end;
        }
        acc
    }

    fn mul_sparse_into(&self, out: &mut [u64], terms: &[(usize, u64)], dense: &[u64]) {
        let chunk = self.reduction_chunk();
        let mut passes = 0usize;
        for &(off, c) in terms {
            if c == 0 {
                continue;
            }
            let upper = dense.len().min(out.len() - off);
            let window = &mut out[off..off + upper];
            for (slot, d) in window.iter_mut().zip(dense.iter()) {
                *slot = slot.wrapping_add(c.wrapping_mul(*d));
            }
            passes += 1;
            if passes >= chunk {
                for slot in out.iter_mut() {
                    *slot %= self.modulus;
                }
                passes = 0;
            }
        }
        for slot in out.iter_mut() {
            *slot %= self.modulus;
        }
    }

    fn dot_indexed(&self, terms: &[(usize, u64)], values: &[u64], n: usize) -> u64 {
        let chunk = self.reduction_chunk();
        let mut acc = 0u64;
        let mut part = 0u64;
        let mut count = 0usize;
        for &(i, c) in terms {
            if i == 0 || i > n {
                continue;
            }
            part = part.wrapping_add(c.wrapping_mul(values[n - i]));
            count += 1;
            if count >= chunk {
                acc = (acc + part % self.modulus) % self.modulus;
                part = 0;
                count = 0;
            }
        }
        (acc + part % self.modulus) % self.modulus
    }
}
