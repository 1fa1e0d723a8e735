//! Independent combinatorial counters for the partition families whose
//! generating functions this crate manipulates.
//!
//! Everything here is dynamic programming over part types, with no power
//! series arithmetic at all, so these tables provide ground truth for the
//! eta-quotient expansions. Counts are arbitrary-precision: several
//! families overflow 64 bits well below n = 1000.
//!
//! Family definitions:
//!
//! * `Partitions`: unrestricted partitions, `p(n)`.
//! * `Cubic`: odd parts in one kind, even parts in two kinds (`a(n)`).
//! * `Overcubic`: cubic partitions where the first occurrence of every
//!   (part, kind) may be overlined.
//! * `LinB`: triples `(p1, p2, p3)`: `p1` distinct odd parts, `p2` and
//!   `p3` parts divisible by 4 (`b(n)`, with `b(0) = 1`; empty components
//!   are allowed, which the base case forces).
//! * `DistinctOddOnly`: all parts odd and distinct.
//! * `PodFree`: odd parts distinct, even parts unrestricted (POD).
//! * `DistinctEvenFree`: even parts distinct, odd parts unrestricted (PED).
//! * `TwoColorMult4`: parts divisible by 4 in two kinds.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::ring::Exact;
use crate::series::Series;

/// A counted partition family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Partitions,
    Cubic,
    Overcubic,
    LinB,
    DistinctOddOnly,
    PodFree,
    DistinctEvenFree,
    TwoColorMult4,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Partitions,
        Family::Cubic,
        Family::Overcubic,
        Family::LinB,
        Family::DistinctOddOnly,
        Family::PodFree,
        Family::DistinctEvenFree,
        Family::TwoColorMult4,
    ];

    /// Stable kebab-case name, used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Partitions => "partitions",
            Family::Cubic => "cubic",
            Family::Overcubic => "overcubic",
            Family::LinB => "linb",
            Family::DistinctOddOnly => "distinct-odd",
            Family::PodFree => "pod",
            Family::DistinctEvenFree => "ped",
            Family::TwoColorMult4 => "two-color-mult4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .find(|fam| fam.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(Family::name).collect();
                format!("unknown family `{s}` (expected one of: {})", names.join(", "))
            })
    }
}

/// Multiplicity rule for one part type in the knapsack DP.
enum Rule {
    /// Any number of copies: factor `1/(1 - x^t)`.
    Unbounded,
    /// At most one copy: factor `1 + x^t`.
    Distinct,
    /// Any number of copies, first one optionally overlined:
    /// factor `1 + 2(x^t + x^{2t} + ...)`.
    Overlined,
}

fn apply(dp: &mut [BigUint], t: usize, rule: Rule) {
    match rule {
        Rule::Unbounded => {
            for i in t..dp.len() {
                dp[i] = &dp[i] + &dp[i - t];
            }
        }
        Rule::Distinct => {
            for i in (t..dp.len()).rev() {
                dp[i] = &dp[i] + &dp[i - t];
            }
        }
        Rule::Overlined => {
            // cum[i] = dp[i-t] + dp[i-2t] + ... accumulated along the
            // residue class of i mod t
            let mut cum = vec![BigUint::zero(); dp.len()];
            for i in t..dp.len() {
                cum[i] = &dp[i - t] + &cum[i - t];
            }
            for i in t..dp.len() {
                dp[i] = &dp[i] + &(&cum[i] * 2u32);
            }
        }
    }
}

/// Counts `0 ..= max` for one family, by DP over part types.
pub fn counts(family: Family, max: usize) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); max + 1];
    dp[0] = BigUint::from(1u32);
    for t in 1..=max {
        let odd = t % 2 == 1;
        match family {
            Family::Partitions => apply(&mut dp, t, Rule::Unbounded),
            Family::Cubic => {
                apply(&mut dp, t, Rule::Unbounded);
                if !odd {
                    apply(&mut dp, t, Rule::Unbounded);
                }
            }
            Family::Overcubic => {
                apply(&mut dp, t, Rule::Overlined);
                if !odd {
                    apply(&mut dp, t, Rule::Overlined);
                }
            }
            Family::LinB => {
                if odd {
                    apply(&mut dp, t, Rule::Distinct);
                } else if t % 4 == 0 {
                    apply(&mut dp, t, Rule::Unbounded);
                    apply(&mut dp, t, Rule::Unbounded);
                }
            }
            Family::DistinctOddOnly => {
                if odd {
                    apply(&mut dp, t, Rule::Distinct);
                }
            }
            Family::PodFree => {
                if odd {
                    apply(&mut dp, t, Rule::Distinct);
                } else {
                    apply(&mut dp, t, Rule::Unbounded);
                }
            }
            Family::DistinctEvenFree => {
                if odd {
                    apply(&mut dp, t, Rule::Unbounded);
                } else {
                    apply(&mut dp, t, Rule::Distinct);
                }
            }
            Family::TwoColorMult4 => {
                if t % 4 == 0 {
                    apply(&mut dp, t, Rule::Unbounded);
                    apply(&mut dp, t, Rule::Unbounded);
                }
            }
        }
    }
    dp
}

/// Exact count for a single `n`.
pub fn count(family: Family, n: usize) -> BigUint {
    counts(family, n).pop().expect("table covers n")
}

/// The generating series `sum_{n <= order} count(family, n) q^n`, built
/// solely from the DP table.
pub fn oracle_series(family: Family, order: usize) -> Series<Exact> {
    let table = counts(family, order);
    let coeffs = table.into_iter().map(BigInt::from).collect();
    Series::from_coeffs(Exact, coeffs)
}
