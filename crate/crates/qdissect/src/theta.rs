//! The Borwein cubic theta function
//!
//! ```text
//! alpha(q) = sum_{u, v in Z} q^{u^2 + uv + v^2}
//! ```
//!
//! i.e. the theta series of the hexagonal lattice: the coefficient of
//! `q^n` counts the representations `r(n) = #{(u, v) : u^2 + uv + v^2 = n}`.
//!
//! The expansion is produced by direct lattice enumeration, *not* through
//! any eta-quotient identity. That keeps this generator independent of the
//! eta engine, so the classical representations of `alpha` in terms of
//! `f_m` act as genuine cross-checks rather than tautologies.

use crate::ring::CoeffRing;
use crate::series::Series;

/// Representation counts `r(0) ..= r(max)` for the quadratic form
/// `u^2 + uv + v^2`, by exhaustive enumeration.
///
/// Since `u^2 + uv + v^2 >= (u^2 + v^2) / 2`, any representation of
/// `n <= max` has `|u|, |v| <= sqrt(2 max) <= 2 sqrt(max)`; the enumeration
/// box uses `2*isqrt(max) + 2`, which covers that bound with margin.
pub fn hex_lattice_counts(max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max + 1];
    let bound = 2 * (max as u64).isqrt() as i64 + 2;
    for u in -bound..=bound {
        for v in -bound..=bound {
            let value = u * u + u * v + v * v;
            debug_assert!(value >= 0);
            if (value as usize) <= max {
                counts[value as usize] += 1;
            }
        }
    }
    counts
}

/// `alpha(q^k)` to the given order: the coefficient of `q^{kn}` is `r(n)`,
/// every other coefficient is zero.
pub fn alpha<R: CoeffRing>(ring: &R, k: usize, order: usize) -> Series<R> {
    assert!(k >= 1, "substitution scale must be at least 1");
    let counts = hex_lattice_counts(order / k);
    let mut coeffs = vec![ring.zero(); order + 1];
    for (n, &r) in counts.iter().enumerate() {
        let exponent = k * n;
        if exponent <= order {
            coeffs[exponent] = ring.embed_i64(r as i64);
        }
    }
    Series::from_coeffs(ring.clone(), coeffs)
}
