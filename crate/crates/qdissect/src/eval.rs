//! Structural evaluation of DSL expressions into truncated series.
//!
//! The one piece of real bookkeeping lives here: a `dissect(inner, m, r)`
//! node evaluates its inner expression at order `m*order + r`, so the
//! extracted progression is exact to the requested order. Under-expanded
//! inner series are the classic silent failure of dissection arguments,
//! and the evaluator owns that arithmetic so callers cannot get it wrong.
//!
//! Division is evaluated factor by factor: for `x / (a * b^k)` the
//! evaluator long-divides by `a` once and by `b` k times instead of
//! inverting the expanded product. The result is coefficient-identical
//! (truncated inverses are unique), but each division against an eta
//! factor touches only its O(sqrt N) nonzero terms, which is what makes
//! order-10^5 congruence expansions affordable. If the factored walk hits
//! any error, evaluation falls back to the plain quotient so error
//! reporting matches the direct semantics.

use crate::expr::Expr;
use crate::ring::CoeffRing;
use crate::series::{Series, SeriesError};
use crate::{eta, theta};

/// Evaluate `expr` to a series of the given order.
pub fn eval_expr<R: CoeffRing>(
    expr: &Expr,
    ring: &R,
    order: usize,
) -> Result<Series<R>, SeriesError> {
    match expr {
        Expr::Int(v) => Ok(constant(ring, order, *v)),
        Expr::Q => Ok(Series::monomial(ring.clone(), order, 1)),
        Expr::Eta(m) => Ok(eta::eta(ring, *m, order)),
        Expr::Alpha(k) => Ok(theta::alpha(ring, *k, order)),
        Expr::Add(l, r) => eval_expr(l, ring, order)?.add(&eval_expr(r, ring, order)?),
        Expr::Sub(l, r) => eval_expr(l, ring, order)?.sub(&eval_expr(r, ring, order)?),
        Expr::Mul(l, r) => eval_expr(l, ring, order)?.mul(&eval_expr(r, ring, order)?),
        Expr::Div(num, den) => {
            let numerator = eval_expr(num, ring, order)?;
            match divide_by_factors(numerator.clone(), den, ring, order) {
                Ok(quotient) => Ok(quotient),
                // Re-run with the direct semantics so the reported error is
                // the one the plain quotient would produce.
                Err(_) => numerator.divide(&eval_expr(den, ring, order)?),
            }
        }
        Expr::Pow(base, exponent) => eval_expr(base, ring, order)?.pow(*exponent),
        Expr::Dissect(inner, modulus, residue) => {
            let inner_order = modulus
                .checked_mul(order)
                .and_then(|v| v.checked_add(*residue))
                .ok_or(SeriesError::OrderOverflow)?;
            eval_expr(inner, ring, inner_order)?.dissect(*modulus, *residue)
        }
    }
}

fn constant<R: CoeffRing>(ring: &R, order: usize, value: i64) -> Series<R> {
    let mut coeffs = vec![ring.zero(); order + 1];
    coeffs[0] = ring.embed_i64(value);
    Series::from_coeffs(ring.clone(), coeffs)
}

/// Divide `acc` by the denominator expression, walking `Mul` chains and
/// positive `Pow` nodes so each long division sees one factor at a time.
/// Anything else (including nested `Div` and negative powers) is evaluated
/// whole and divided in one step, keeping the error semantics of the
/// direct quotient.
fn divide_by_factors<R: CoeffRing>(
    acc: Series<R>,
    den: &Expr,
    ring: &R,
    order: usize,
) -> Result<Series<R>, SeriesError> {
    match den {
        Expr::Mul(a, b) => {
            let acc = divide_by_factors(acc, a, ring, order)?;
            divide_by_factors(acc, b, ring, order)
        }
        Expr::Pow(base, exponent) if *exponent > 0 => {
            let factor = eval_expr(base, ring, order)?;
            let mut acc = acc;
            for _ in 0..*exponent {
                acc = acc.divide(&factor)?;
            }
            Ok(acc)
        }
        _ => {
            let factor = eval_expr(den, ring, order)?;
            acc.divide(&factor)
        }
    }
}
