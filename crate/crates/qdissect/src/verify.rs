//! Identity verification: evaluate both sides, compare coefficients, and
//! report the outcome.
//!
//! Exact entries are checked over the integers; congruent entries over
//! `Z/mZ`. Either way the check is a plain coefficient comparison at the
//! requested order, with no tolerances anywhere, and a failure carries the
//! smallest mismatching exponent with both coefficient values rendered as
//! decimal strings.

use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::eval::eval_expr;
use crate::registry::{find, registry, Identity, IdentityKind};
use crate::ring::{CoeffRing, Exact, Mod};
use crate::series::{Comparison, SeriesError};

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// The smallest exponent where the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Result of verifying one identity at one order.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    pub kind: IdentityKind,
    pub order: usize,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON shape: `{id, kind, modulus?, order, status, first_mismatch?, millis}`
    /// with `first_mismatch = {n, lhs, rhs}`; coefficient values are decimal
    /// strings since exact values exceed both 64-bit and JSON number range.
    pub fn to_json(&self) -> Value {
        let mut object = json!({
            "id": self.id,
            "kind": match self.kind {
                IdentityKind::Exact => "exact",
                IdentityKind::Congruent(_) => "congruent",
            },
            "order": self.order,
            "status": self.status.as_str(),
            "millis": self.millis,
        });
        if let Some(m) = self.kind.modulus() {
            object["modulus"] = json!(m);
        }
        if let Some(mismatch) = &self.first_mismatch {
            object["first_mismatch"] = json!({
                "n": mismatch.exponent,
                "lhs": mismatch.lhs,
                "rhs": mismatch.rhs,
            });
        }
        object
    }
}

/// Verifier errors: lookups and propagated evaluation failures.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{id}`: {source}")]
    Evaluation {
        id: String,
        #[source]
        source: SeriesError,
    },
}

fn check_sides<R: CoeffRing>(
    identity: &Identity,
    ring: &R,
    order: usize,
) -> Result<Option<Mismatch>, SeriesError> {
    let lhs = eval_expr(&identity.lhs, ring, order)?;
    let rhs = eval_expr(&identity.rhs, ring, order)?;
    // Compare at the largest order both sides reached; the requested order
    // must be available.
    let available = lhs.order().min(rhs.order());
    if available < order {
        return Err(SeriesError::OrderTooSmall {
            requested: order,
            available,
        });
    }
    match lhs.equal_upto(&rhs, available)? {
        Comparison::Equal => Ok(None),
        Comparison::Mismatch { exponent, lhs, rhs } => Ok(Some(Mismatch {
            exponent,
            lhs: ring.elem_to_string(&lhs),
            rhs: ring.elem_to_string(&rhs),
        })),
    }
}

/// Verify one identity at the given order.
pub fn verify(identity: &Identity, order: usize) -> Result<VerificationReport, EngineError> {
    let started = Instant::now();
    let outcome = match identity.kind {
        IdentityKind::Exact => check_sides(identity, &Exact, order),
        IdentityKind::Congruent(m) => {
            let ring = Mod::new(m).map_err(SeriesError::from);
            match ring {
                Ok(ring) => check_sides(identity, &ring, order),
                Err(e) => Err(e),
            }
        }
    };
    let first_mismatch = outcome.map_err(|source| EngineError::Evaluation {
        id: identity.id.to_string(),
        source,
    })?;
    Ok(VerificationReport {
        id: identity.id.to_string(),
        kind: identity.kind,
        order,
        status: if first_mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        first_mismatch,
        millis: started.elapsed().as_millis() as u64,
    })
}

/// Verify the identity with the given id (registry entries and mutation
/// fixtures are both addressable).
pub fn verify_identity(id: &str, order: usize) -> Result<VerificationReport, EngineError> {
    let identity = find(id).ok_or_else(|| EngineError::UnknownIdentity(id.to_string()))?;
    verify(identity, order)
}

/// Verify every registry entry at the given order. Entries run on worker
/// threads (each check is independent and the registry is immutable);
/// reports come back in registry order regardless.
pub fn verify_all(order: usize) -> Result<Vec<VerificationReport>, EngineError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = registry()
            .iter()
            .map(|entry| scope.spawn(move || verify(entry, order)))
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("verification worker panicked"))
            .collect()
    })
}
