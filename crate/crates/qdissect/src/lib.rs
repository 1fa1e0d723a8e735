//! Truncated q-series arithmetic with an identity verification harness.
//!
//! The crate revolves around one famously concrete object: Lin's
//! restricted partition function `b(n)`, which counts partition triples
//! `(p1, p2, p3)` of `n` where `p1` has distinct odd parts and `p2`, `p3`
//! have parts divisible by 4. Its generating function is the eta quotient
//! `f2^2/(f1 f4^3)`, its progressions `b(3n+1)` and `b(3n+2)` have closed
//! forms, and `b(n)` satisfies internal congruences such as
//! `b(81n+51) == -b(9n+6) (mod 3)`.
//!
//! The pieces:
//!
//! * [`series`]: dense truncated power series over [`ring::Exact`]
//!   (bignum integers) or [`ring::Mod`] (integers mod m), with arithmetic,
//!   inversion, substitution and m-dissection.
//! * [`eta`] / [`theta`]: generators, Euler products `f_m` from the
//!   pentagonal number theorem, eta quotients, and the Borwein cubic theta
//!   function by hexagonal lattice enumeration.
//! * [`oracle`]: combinatorial counters (pure dynamic programming) for
//!   eight partition families; ground truth the series engine must match.
//! * [`expr`] / [`parser`] / [`eval`]: a small expression DSL
//!   (`"f2^2/(f1*f4^3)"`, `"alpha(q^4)"`, `"dissect(..., 3, 2)"`) and its
//!   evaluator over either ring.
//! * [`registry`](mod@registry) / [`verify`]: a compiled-in catalog of
//!   29 identities and congruences with a verifier that checks each one
//!   exactly or mod m to any order.
//! * [`congruence`]: desk-scale checks of the Ramanujan-type congruence
//!   `b(3n+2) == 0 (mod 3)`, the internal congruence families, and a
//!   residue-class scanner.
//!
//! ```
//! use qdissect::{eval::eval_expr, parser::parse_expr, ring::Exact};
//!
//! // b(0..6) = 1, 1, 0, 1, 3, 3, 1
//! let b = parse_expr("f2^2/(f1*f4^3)").unwrap();
//! let series = eval_expr(&b, &Exact, 6).unwrap();
//! let have: Vec<i64> = series.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect();
//! assert_eq!(have, [1, 1, 0, 1, 3, 3, 1]);
//! ```
//!
//! Everything is immutable after construction and safe to share across
//! threads; [`verify::verify_all`] fans entries out to workers.

pub mod congruence;
pub mod eta;
pub mod eval;
pub mod expr;
pub mod oracle;
pub mod parser;
pub mod registry;
pub mod ring;
pub mod series;
pub mod theta;
pub mod verify;

pub use eta::{eta as euler_product, lin_b_spec, EtaQuotientSpec};
pub use eval::eval_expr;
pub use expr::Expr;
pub use oracle::Family;
pub use parser::parse_expr;
pub use registry::{registry, Identity, IdentityKind};
pub use ring::{CoeffRing, Exact, Mod};
pub use series::{Comparison, Series, SeriesError};
pub use theta::alpha;
pub use verify::{verify_all, verify_identity, VerificationReport};

// The guide chapters double as doc-tests so their code blocks are compiled
// and run by `cargo test --doc`; the book and the library cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/eta-theta.md")]
    mod eta_theta {}
    #[doc = include_str!("../../../book/src/dissection.md")]
    mod dissection {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/congruences.md")]
    mod congruences {}
}
