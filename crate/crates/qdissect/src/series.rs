//! Dense truncated formal power series over a coefficient ring.
//!
//! A [`Series`] of order `N` stores the coefficients of `q^0 .. q^N` and
//! asserts they are exactly correct; nothing is known beyond `q^N`. All
//! arithmetic follows a conservative truncation rule: binary operations
//! return `min` of the operand orders (after valuation cancellation in
//! [`Series::divide`]), while [`Series::shift`] and [`Series::substitute`]
//! are lossless and extend the order by their exact formulas.
//!
//! Invariants:
//! - `coeffs.len() == order + 1`, every element canonical in its ring
//! - binary operations require identical rings (`Mod(3)` vs `Mod(5)` is a
//!   runtime error; `Exact` vs `Mod` cannot even be written)
//! - the zero series reports valuation `order + 1` as a sentinel

use std::fmt;

use thiserror::Error;

use crate::ring::{CoeffRing, Exact, InvalidModulus, Mod};

/// Error type for all series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("duplicate exponent {0} in term list")]
    DuplicateExponent(usize),
    #[error("exponent {exponent} exceeds series order {order}")]
    ExponentBeyondOrder { exponent: usize, order: usize },
    #[error("constant term {value} is not a unit in ring {ring}")]
    NonUnitConstant { value: String, ring: String },
    #[error("leading coefficient {value} at q^{valuation} is not a unit in ring {ring}")]
    NonUnitLeading {
        value: String,
        valuation: usize,
        ring: String,
    },
    #[error("denominator is zero through its truncation order")]
    ZeroDenominator,
    #[error("numerator valuation {numerator} is below denominator valuation {denominator}")]
    ValuationTooSmall {
        numerator: usize,
        denominator: usize,
    },
    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooSmall { requested: usize, available: usize },
    #[error("series of order {order} has no coefficient in residue class {residue}")]
    EmptyDissection { order: usize, residue: usize },
    #[error("residue {residue} must be smaller than modulus {modulus}")]
    InvalidResidue { residue: usize, modulus: usize },
    #[error("scale must be at least 1")]
    ZeroScale,
    #[error("requested expansion order overflows the machine word")]
    OrderOverflow,
    #[error(transparent)]
    InvalidModulus(#[from] InvalidModulus),
}

/// Outcome of [`Series::equal_upto`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison<R: CoeffRing> {
    Equal,
    Mismatch {
        exponent: usize,
        lhs: R::Elem,
        rhs: R::Elem,
    },
}

impl<R: CoeffRing> Comparison<R> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// A truncated power series: exact coefficients for `q^0 ..= q^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

/// Divisor denser than this fraction of its order switches the division
/// recurrence from the term-list loop to windowed dot products.
const SPARSE_FRACTION: usize = 8;

impl<R: CoeffRing> Series<R> {
    /// The zero series `0 + O(q^{order+1})`.
    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        Series { ring, coeffs }
    }

    /// The constant series `1 + O(q^{order+1})`.
    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        s
    }

    /// `q^exponent`, truncated to `order`. An exponent beyond the order
    /// yields the zero series (that is the truncation of the monomial).
    pub fn monomial(ring: R, order: usize, exponent: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if exponent <= order {
            s.coeffs[exponent] = s.ring.one();
        }
        s
    }

    /// Build a series from `(exponent, value)` pairs; all other
    /// coefficients are zero. Exponents must be distinct and `<= order`.
    pub fn from_terms(
        ring: R,
        order: usize,
        terms: &[(usize, i64)],
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(ring, order);
        let mut seen = vec![false; order + 1];
        for &(exp, value) in terms {
            if exp > order {
                return Err(SeriesError::ExponentBeyondOrder {
                    exponent: exp,
                    order,
                });
            }
            if seen[exp] {
                return Err(SeriesError::DuplicateExponent(exp));
            }
            seen[exp] = true;
            s.coeffs[exp] = s.ring.embed_i64(value);
        }
        Ok(s)
    }

    /// Wrap an explicit coefficient vector; `coeffs[n]` is the coefficient
    /// of `q^n` and must already be canonical. Must be nonempty.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least q^0");
        Series { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Truncation order `N`: coefficients are exact for `q^0 ..= q^N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`. Panics beyond the order; that coefficient is
    /// unknown, and asking for it is a caller bug.
    pub fn coeff(&self, n: usize) -> &R::Elem {
        assert!(
            n <= self.order(),
            "coefficient of q^{n} requested from a series of order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    /// All known coefficients, index = exponent.
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Index of the first nonzero coefficient; `order + 1` for the zero
    /// series (sentinel, so `valuation > order` detects "zero as far as we
    /// can see").
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .unwrap_or(self.coeffs.len())
    }

    /// Restrict to a smaller order (lossless; fails if `order` exceeds the
    /// known range).
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderTooSmall {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            });
        }
        Ok(())
    }

    /// Coefficientwise sum, truncated to the smaller order.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.ring.add(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn negate(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Series {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.negate())
    }

    /// Multiply every coefficient by a fixed ring element.
    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.ring.mul(c, x)).collect();
        Series {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    fn nonzero_count(&self, max_order: usize) -> usize {
        self.coeffs
            .iter()
            .take(max_order + 1)
            .filter(|c| !self.ring.is_zero(c))
            .count()
    }

    fn nonzero_terms(&self, max_order: usize) -> Vec<(usize, R::Elem)> {
        self.coeffs
            .iter()
            .take(max_order + 1)
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    /// Cauchy product, truncated to the smaller order. The sparser operand
    /// drives the accumulation, so products against eta factors (O(sqrt N)
    /// nonzero terms) cost far less than the dense quadratic bound.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let (terms, dense) = if self.nonzero_count(order) <= other.nonzero_count(order) {
            (self.nonzero_terms(order), &other.coeffs)
        } else {
            (other.nonzero_terms(order), &self.coeffs)
        };
        let mut out = vec![self.ring.zero(); order + 1];
        let dense = &dense[..dense.len().min(order + 1)];
        self.ring.mul_sparse_into(&mut out, &terms, dense);
        Ok(Series {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// Long division `num / den` where `den[0]` must be a unit; both slices
    /// are full coefficient windows. `out_order + 1` coefficients come back.
    fn long_divide(
        ring: &R,
        num: &[R::Elem],
        den: &[R::Elem],
        out_order: usize,
    ) -> Result<Vec<R::Elem>, SeriesError> {
        let lead_inv = ring.inv(&den[0]).ok_or_else(|| SeriesError::NonUnitLeading {
            value: ring.elem_to_string(&den[0]),
            valuation: 0,
            ring: ring.describe(),
        })?;
        let den_terms: Vec<(usize, R::Elem)> = den
            .iter()
            .take(out_order + 1)
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !ring.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let sparse = den_terms.len() <= (out_order + 1) / SPARSE_FRACTION;
        let mut out: Vec<R::Elem> = Vec::with_capacity(out_order + 1);
        out.push(ring.mul(&lead_inv, &num[0]));
        for n in 1..=out_order {
            let correction = if sparse {
                ring.dot_indexed(&den_terms, &out, n)
            } else {
                // sum_{i=1..w} den[i] * out[n-i], windowed to den's length
                let w = n.min(den.len() - 1);
                ring.dot_rev(&den[1..=w], &out[n - w..n])
            };
            let value = ring.mul(&lead_inv, &ring.sub(&num[n], &correction));
            out.push(value);
        }
        Ok(out)
    }

    /// Multiplicative inverse to the same order. Requires a unit constant
    /// term (`+-1` over the integers, coprime to `m` modulo `m`).
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.ring.inv(&self.coeffs[0]).is_none() {
            return Err(SeriesError::NonUnitConstant {
                value: self.ring.elem_to_string(&self.coeffs[0]),
                ring: self.ring.describe(),
            });
        }
        let one = vec![self.ring.one()];
        let coeffs = Self::long_divide(&self.ring, &pad(&self.ring, &one, self.order()), &self.coeffs, self.order())?;
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Quotient with valuation cancellation: `q^v` is cancelled from both
    /// sides (`v` = denominator valuation) and the unit part inverted.
    /// Result order is `min(orders) - v`.
    pub fn divide(&self, den: &Self) -> Result<Self, SeriesError> {
        self.check_ring(den)?;
        let v = den.valuation();
        if v > den.order() {
            return Err(SeriesError::ZeroDenominator);
        }
        if self.valuation() < v {
            return Err(SeriesError::ValuationTooSmall {
                numerator: self.valuation(),
                denominator: v,
            });
        }
        let avail = self.order().min(den.order());
        if avail < v {
            // Both sides shift down by v; nothing of the quotient is known.
            return Err(SeriesError::OrderTooSmall {
                requested: v,
                available: avail,
            });
        }
        let out_order = avail - v;
        if self.ring.inv(&den.coeffs[v]).is_none() {
            return Err(SeriesError::NonUnitLeading {
                value: self.ring.elem_to_string(&den.coeffs[v]),
                valuation: v,
                ring: self.ring.describe(),
            });
        }
        let num = &self.coeffs[v..];
        let den_part = &den.coeffs[v..];
        let coeffs = Self::long_divide(&self.ring, num, den_part, out_order)?;
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Integer power by repeated squaring; `e = 0` yields one, negative
    /// exponents invert first (and inherit the unit-constant requirement).
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Self::one(self.ring.clone(), self.order()));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut result = Self::one(self.ring.clone(), self.order());
        let mut power = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&power)?;
            }
            exp >>= 1;
            if exp > 0 {
                power = power.mul(&power)?;
            }
        }
        Ok(result)
    }

    /// Multiply by `q^s` (lossless): order grows to `order + s`.
    pub fn shift(&self, s: usize) -> Self {
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + s];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n + s] = c.clone();
        }
        Series {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Substitute `q -> q^k` (lossless): the result has order
    /// `k * order + (k - 1)`, with the coefficient of `q^{kn}` taken from
    /// `q^n` and zeros elsewhere.
    pub fn substitute(&self, k: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroScale);
        }
        let order = k * self.order() + (k - 1);
        let mut coeffs = vec![self.ring.zero(); order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n] = c.clone();
        }
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Extract the arithmetic progression `modulus * n + residue`: the
    /// result's coefficient of `q^n` is this series' coefficient of
    /// `q^{modulus*n + residue}`.
    pub fn dissect(&self, modulus: usize, residue: usize) -> Result<Self, SeriesError> {
        if modulus == 0 {
            return Err(SeriesError::ZeroScale);
        }
        if residue >= modulus {
            return Err(SeriesError::InvalidResidue {
                residue,
                modulus,
            });
        }
        if self.order() < residue {
            return Err(SeriesError::EmptyDissection {
                order: self.order(),
                residue,
            });
        }
        let order = (self.order() - residue) / modulus;
        let coeffs = (0..=order)
            .map(|n| self.coeffs[modulus * n + residue].clone())
            .collect();
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Exact coefficient comparison for exponents `0 ..= order`, reporting
    /// the smallest mismatching exponent.
    pub fn equal_upto(&self, other: &Self, order: usize) -> Result<Comparison<R>, SeriesError> {
        self.check_ring(other)?;
        let available = self.order().min(other.order());
        if order > available {
            return Err(SeriesError::OrderTooSmall {
                requested: order,
                available,
            });
        }
        for n in 0..=order {
            if self.coeffs[n] != other.coeffs[n] {
                return Ok(Comparison::Mismatch {
                    exponent: n,
                    lhs: self.coeffs[n].clone(),
                    rhs: other.coeffs[n].clone(),
                });
            }
        }
        Ok(Comparison::Equal)
    }
}

fn pad<R: CoeffRing>(ring: &R, coeffs: &[R::Elem], order: usize) -> Vec<R::Elem> {
    let mut out = coeffs.to_vec();
    out.resize(order + 1, ring.zero());
    out
}

impl Series<Exact> {
    /// Coefficientwise canonical reduction into `Z/mZ`; order preserved.
    pub fn reduce_mod(&self, modulus: u64) -> Result<Series<Mod>, SeriesError> {
        let ring = Mod::new(modulus)?;
        let coeffs = self.coeffs.iter().map(|c| ring.embed_bigint(c)).collect();
        Ok(Series { ring, coeffs })
    }
}

impl<R: CoeffRing> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let text = self.ring.elem_to_string(c);
            let (sign, magnitude) = match text.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", text),
            };
            if wrote {
                write!(f, " {} ", sign)?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            wrote = true;
            match n {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if magnitude != "1" {
                        write!(f, "{magnitude}*")?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
