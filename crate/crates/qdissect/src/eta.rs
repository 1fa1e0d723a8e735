//! Euler products `f_m` and eta quotients.
//!
//! `f_m = prod_{n>=1} (1 - q^{mn})` is the building block of every
//! generating function handled by this crate. Its expansion is computed
//! from the pentagonal number theorem
//!
//! ```text
//! f_1 = sum_{k in Z} (-1)^k q^{k(3k-1)/2}
//! ```
//!
//! so only O(sqrt N) coefficients are nonzero and generator cost is
//! negligible; `f_m` is `f_1` with `q -> q^m`. The term-by-term finite
//! product is deliberately *not* used here; it survives in the test suite
//! as an independent oracle.
//!
//! An [`EtaQuotientSpec`] denotes `scalar * q^shift * prod_m f_m^{e_m}`
//! and expands to any requested order over any ring. Expansion multiplies
//! and divides factor by factor, which keeps every pass sparse.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::ring::CoeffRing;
use crate::series::{Series, SeriesError};

/// Expansion of `f_scale` to the given order.
///
/// Coefficients are `(-1)^k` at the generalized pentagonal exponents
/// `scale * k(3k-1)/2`, `k in Z`, and zero elsewhere.
pub fn eta<R: CoeffRing>(ring: &R, scale: usize, order: usize) -> Series<R> {
    assert!(scale >= 1, "eta scale must be at least 1");
    let mut coeffs = vec![ring.zero(); order + 1];
    coeffs[0] = ring.one();
    let mut k: usize = 1;
    loop {
        let g_down = k * (3 * k - 1) / 2;
        let g_up = k * (3 * k + 1) / 2;
        let Some(e_down) = g_down.checked_mul(scale) else {
            break;
        };
        if e_down > order {
            break;
        }
        let sign = if k % 2 == 1 {
            ring.embed_i64(-1)
        } else {
            ring.one()
        };
        coeffs[e_down] = sign.clone();
        if let Some(e_up) = g_up.checked_mul(scale) {
            if e_up <= order {
                coeffs[e_up] = sign;
            }
        }
        k += 1;
    }
    Series::from_coeffs(ring.clone(), coeffs)
}

/// One eta quotient: `scalar * q^shift * prod_m f_m^{e_m}`.
///
/// The exponent map never stores a zero exponent, so the denoted product
/// always has valuation exactly `shift` (every `f_m` has constant term 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    scalar: BigInt,
    qshift: usize,
    exponents: BTreeMap<usize, i64>,
}

impl EtaQuotientSpec {
    /// The empty product: `1`.
    pub fn new() -> Self {
        EtaQuotientSpec {
            scalar: BigInt::from(1),
            qshift: 0,
            exponents: BTreeMap::new(),
        }
    }

    pub fn with_scalar(mut self, scalar: i64) -> Self {
        self.scalar = BigInt::from(scalar);
        self
    }

    pub fn with_shift(mut self, qshift: usize) -> Self {
        self.qshift = qshift;
        self
    }

    /// Multiply the quotient by `f_scale^exponent`; exponents accumulate and
    /// zero entries are dropped.
    pub fn with_factor(mut self, scale: usize, exponent: i64) -> Self {
        assert!(scale >= 1, "eta scale must be at least 1");
        let e = self.exponents.entry(scale).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.exponents.remove(&scale);
        }
        self
    }

    pub fn scalar(&self) -> &BigInt {
        &self.scalar
    }

    pub fn qshift(&self) -> usize {
        self.qshift
    }

    pub fn exponents(&self) -> &BTreeMap<usize, i64> {
        &self.exponents
    }

    /// Expand to the requested order. Positive powers multiply in one
    /// sparse pass per unit of exponent; negative powers long-divide, which
    /// is equally sparse. All factors are unit-constant so this cannot fail
    /// in practice; errors from the arithmetic layer are still propagated.
    pub fn expand<R: CoeffRing>(&self, ring: &R, order: usize) -> Result<Series<R>, SeriesError> {
        let mut acc = Series::one(ring.clone(), order);
        for (&scale, &exponent) in &self.exponents {
            let factor = eta(ring, scale, order);
            if exponent > 0 {
                for _ in 0..exponent {
                    acc = acc.mul(&factor)?;
                }
            } else {
                for _ in 0..exponent.unsigned_abs() {
                    acc = acc.divide(&factor)?;
                }
            }
        }
        let scaled = acc.scale(&ring.embed_bigint(&self.scalar));
        scaled.shift(self.qshift).truncate(order)
    }
}

impl Default for EtaQuotientSpec {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        if self.qshift > 0 {
            write!(f, "*q^{}", self.qshift)?;
        }
        for (scale, exponent) in &self.exponents {
            write!(f, "*f{scale}^{exponent}")?;
        }
        Ok(())
    }
}

/// `f_2^2 / (f_1 f_4^3)`, the generating function for Lin's `b(n)`:
/// partition triples whose first component has distinct odd parts and
/// whose other two components have parts divisible by 4.
pub fn lin_b_spec() -> EtaQuotientSpec {
    EtaQuotientSpec::new()
        .with_factor(2, 2)
        .with_factor(1, -1)
        .with_factor(4, -3)
}
