//! Finite-range checks of the Ramanujan-type congruence and the internal
//! congruence families for Lin's b(n), plus a generic residue-class
//! scanner.
//!
//! Truth in labeling: none of this proves a congruence. Each check
//! expands the relevant generating function modulo 3 to a stated order
//! and verifies the claim for every progression index in range; a
//! scanner hit is a *candidate*, not a theorem, and the reports say so.
//!
//! Everything runs end to end with mod-3 coefficients (never exact
//! integers reduced afterwards): the order-3000 expansions the internal
//! families need stay small and fast that way.

use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::eta::lin_b_spec;
use crate::eval::eval_expr;
use crate::expr::Expr;
use crate::ring::{CoeffRing, Mod};
use crate::series::{Series, SeriesError};
use crate::verify::Status;

/// Refuse expansions beyond this order unless the caller raises the cap.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("required series order {required} exceeds the cap {cap} (raise --order-cap to override)")]
    OrderCapExceeded { required: usize, cap: usize },
    #[error("family index {0} is too large: the progression modulus overflows")]
    FamilyTooLarge(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One member of the internal-congruence family
/// `b(A n + B) == sign * b(9n + 6) (mod 3)` with `A = 9^(k+1)` and
/// `B = (5 A + 3) / 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InternalFamily {
    pub index: u32,
    pub modulus_a: u64,
    pub offset_b: u64,
    pub sign: i64,
}

impl InternalFamily {
    pub fn new(index: u32) -> Result<Self, CongruenceError> {
        let exponent = 2 * (index + 1);
        let modulus_a = 3u64
            .checked_pow(exponent)
            .ok_or(CongruenceError::FamilyTooLarge(index))?;
        let numerator = modulus_a
            .checked_mul(5)
            .and_then(|v| v.checked_add(3))
            .ok_or(CongruenceError::FamilyTooLarge(index))?;
        // 9^(k+1) == 1 (mod 8), so 5*9^(k+1) + 3 == 0 (mod 8) always.
        assert_eq!(numerator % 8, 0, "offset is an exact integer by construction");
        let offset_b = numerator / 8;
        let sign = if index.is_multiple_of(2) { 1 } else { -1 };
        Ok(InternalFamily {
            index,
            modulus_a,
            offset_b,
            sign,
        })
    }
}

/// First progression index where a check failed, with both values reduced
/// mod 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one congruence check over `n <= n_max`.
#[derive(Debug, Clone)]
pub struct CongruenceReport {
    /// Human-readable statement of what was checked.
    pub label: String,
    /// Order of the underlying series expansion.
    pub order: usize,
    /// Number of progression indices checked (`n_max + 1`).
    pub cases: usize,
    pub status: Status,
    pub first_failure: Option<CaseFailure>,
    pub millis: u64,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut object = json!({
            "label": self.label,
            "order": self.order,
            "cases": self.cases,
            "status": self.status.as_str(),
            "millis": self.millis,
        });
        if let Some(failure) = &self.first_failure {
            object["first_failure"] = json!({
                "n": failure.n,
                "lhs": failure.lhs,
                "rhs": failure.rhs,
            });
        }
        object
    }
}

fn guard_cap(required: usize, cap: usize) -> Result<(), CongruenceError> {
    if required > cap {
        return Err(CongruenceError::OrderCapExceeded { required, cap });
    }
    Ok(())
}

fn b_series_mod3(order: usize) -> Result<Series<Mod>, CongruenceError> {
    let ring = Mod::new(3).map_err(SeriesError::from)?;
    Ok(lin_b_spec().expand(&ring, order)?)
}

fn finish(
    label: String,
    order: usize,
    cases: usize,
    first_failure: Option<CaseFailure>,
    started: Instant,
) -> CongruenceReport {
    CongruenceReport {
        label,
        order,
        cases,
        status: if first_failure.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        first_failure,
        millis: started.elapsed().as_millis() as u64,
    }
}

/// Check `b(3n+2) == 0 (mod 3)` for all `n <= n_max`.
pub fn verify_ramanujan_17(n_max: usize, cap: usize) -> Result<CongruenceReport, CongruenceError> {
    let started = Instant::now();
    let order = 3usize
        .checked_mul(n_max)
        .and_then(|v| v.checked_add(2))
        .ok_or(SeriesError::OrderOverflow)?;
    guard_cap(order, cap)?;
    let series = b_series_mod3(order)?;
    let mut first_failure = None;
    for n in 0..=n_max {
        let value = series.coeff(3 * n + 2);
        if *value != 0 {
            first_failure = Some(CaseFailure {
                n,
                lhs: value.to_string(),
                rhs: "0".to_string(),
            });
            break;
        }
    }
    Ok(finish(
        "b(3n+2) == 0 (mod 3)".to_string(),
        order,
        n_max + 1,
        first_failure,
        started,
    ))
}

/// Check `b(A n + B) == sign * b(9n + 6) (mod 3)` for all `n <= n_max`,
/// where `(A, B, sign)` is the family member of the given index.
pub fn verify_family_19(
    index: u32,
    n_max: usize,
    cap: usize,
) -> Result<CongruenceReport, CongruenceError> {
    let started = Instant::now();
    let family = InternalFamily::new(index)?;
    let a = usize::try_from(family.modulus_a)
        .map_err(|_| CongruenceError::FamilyTooLarge(index))?;
    let b = usize::try_from(family.offset_b)
        .map_err(|_| CongruenceError::FamilyTooLarge(index))?;
    let order = a
        .checked_mul(n_max)
        .and_then(|v| v.checked_add(b))
        .ok_or(CongruenceError::FamilyTooLarge(index))?;
    guard_cap(order, cap)?;
    let ring = Mod::new(3).map_err(SeriesError::from)?;
    let series = b_series_mod3(order)?;
    let mut first_failure = None;
    for n in 0..=n_max {
        let lhs = *series.coeff(a * n + b);
        let base = *series.coeff(9 * n + 6);
        let rhs = if family.sign >= 0 {
            base
        } else {
            ring.neg(&base)
        };
        if lhs != rhs {
            first_failure = Some(CaseFailure {
                n,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            break;
        }
    }
    let sign = if family.sign >= 0 { "" } else { "-" };
    Ok(finish(
        format!("b({a}n+{b}) == {sign}b(9n+6) (mod 3)"),
        order,
        n_max + 1,
        first_failure,
        started,
    ))
}

/// Check `b(81n + 24) == -b(9n + 3) (mod 3)` for all `n <= n_max`.
pub fn verify_eq_110(n_max: usize, cap: usize) -> Result<CongruenceReport, CongruenceError> {
    let started = Instant::now();
    let order = 81usize
        .checked_mul(n_max)
        .and_then(|v| v.checked_add(24))
        .ok_or(SeriesError::OrderOverflow)?;
    guard_cap(order, cap)?;
    let ring = Mod::new(3).map_err(SeriesError::from)?;
    let series = b_series_mod3(order)?;
    let mut first_failure = None;
    for n in 0..=n_max {
        let lhs = *series.coeff(81 * n + 24);
        let rhs = ring.neg(series.coeff(9 * n + 3));
        if lhs != rhs {
            first_failure = Some(CaseFailure {
                n,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            break;
        }
    }
    Ok(finish(
        "b(81n+24) == -b(9n+3) (mod 3)".to_string(),
        order,
        n_max + 1,
        first_failure,
        started,
    ))
}

/// Expand `expr` modulo `modulus` and return every residue `r < step` whose
/// coefficients of `q^(step*n + r)` vanish for all `n <= n_max`.
///
/// Hits are candidates for congruences, established only over the scanned
/// range; callers must not read them as theorems.
pub fn scan_progressions(
    expr: &Expr,
    modulus: u64,
    step: usize,
    n_max: usize,
) -> Result<Vec<usize>, CongruenceError> {
    if step == 0 {
        return Err(CongruenceError::Series(SeriesError::ZeroScale));
    }
    let order = step
        .checked_mul(n_max)
        .and_then(|v| v.checked_add(step - 1))
        .ok_or(SeriesError::OrderOverflow)?;
    let ring = Mod::new(modulus).map_err(SeriesError::from)?;
    let series = eval_expr(expr, &ring, order)?;
    let mut vanishing = Vec::new();
    for residue in 0..step {
        let all_zero = (0..=n_max).all(|n| {
            let exponent = step * n + residue;
            exponent > series.order() || *series.coeff(exponent) == 0
        });
        if all_zero {
            vanishing.push(residue);
        }
    }
    Ok(vanishing)
}
