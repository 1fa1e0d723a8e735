//! The built-in identity registry.
//!
//! Every entry pairs two DSL expressions with a comparison kind: `Exact`
//! entries must agree coefficient for coefficient over the integers,
//! `Congruent(m)` entries must agree over `Z/mZ`. The catalog covers the
//! classical progression identities for `p(n)`, the cubic and overcubic
//! analogues, Lin's generating functions for `b(3n+1)` and `b(3n+2)`, the
//! 2- and 3-dissection lemmas they rest on, and the mod-3 reduction chain
//! that yields the internal congruences for `b(n)`.
//!
//! The registry is compiled in: the identity set is fixed, so code review
//! is the audit trail, and `qdissect verify --export-json` dumps the same
//! data for external tooling. Throughout, `gen_b = f2^2/(f1*f4^3)` is the
//! generating function of `b(n)` and progressions are reached by nested
//! `dissect` nodes, e.g. `b(9n+6)` is `dissect(dissect(gen_b, 3, 0), 3, 2)`.

use std::sync::LazyLock;

use crate::expr::Expr;
use crate::parser::parse_expr;

/// How an identity's two sides are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// Equality of integer coefficients.
    Exact,
    /// Congruence of coefficients modulo the given modulus.
    Congruent(u64),
}

impl IdentityKind {
    pub fn modulus(&self) -> Option<u64> {
        match self {
            IdentityKind::Exact => None,
            IdentityKind::Congruent(m) => Some(*m),
        }
    }
}

/// One registry entry: a named, sourced LHS = RHS (or LHS ≡ RHS) claim.
#[derive(Debug, Clone)]
pub struct Identity {
    pub id: &'static str,
    pub lhs_src: &'static str,
    pub rhs_src: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
    pub kind: IdentityKind,
    /// Where the identity comes from in the classical literature.
    pub source: &'static str,
    /// What the identity says, in words.
    pub note: &'static str,
}

/// The generating function of Lin's b(n) as DSL source.
pub const B_GEN: &str = "f2^2/(f1*f4^3)";

/// Toh's 3-dissection of f2/(f1*f4), reused by several entries below.
const TOH_DISSECTION: &str = "f18^9/(f3^2*f9^3*f12^2*f36^3) + q*f6^2*f18^3/(f3^3*f12^3) + q^2*f6^4*f9^3*f36^3/(f3^4*f12^4*f18^3)";

struct RawEntry {
    id: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    kind: IdentityKind,
    source: &'static str,
    note: &'static str,
}

const EXACT: IdentityKind = IdentityKind::Exact;
const MOD3: IdentityKind = IdentityKind::Congruent(3);

static RAW: LazyLock<Vec<RawEntry>> = LazyLock::new(|| {
    vec![
        // -- exact identities ------------------------------------------------
        RawEntry {
            id: "eq1.1",
            lhs: "dissect(1/f1, 5, 4)",
            rhs: "5*f5^5/f1^6",
            kind: EXACT,
            source: "Ramanujan",
            note: "generating function of p(5n+4); implies p(5n+4) == 0 mod 5",
        },
        RawEntry {
            id: "eq1.2",
            lhs: "dissect(1/(f1*f2), 3, 2)",
            rhs: "3*f3^3*f6^3/(f1^4*f2^4)",
            kind: EXACT,
            source: "Chan",
            note: "cubic partitions: a(3n+2) generating function, so a(3n+2) == 0 mod 3",
        },
        RawEntry {
            id: "eq1.3",
            lhs: "dissect(f4/(f1^2*f2), 3, 2)",
            rhs: "6*f3^6*f4^3/(f1^8*f2^3)",
            kind: EXACT,
            source: "Kim; elementary proof by Hirschhorn",
            note: "overcubic partitions: abar(3n+2) generating function, so abar(3n+2) == 0 mod 6",
        },
        RawEntry {
            id: "eq1.5",
            lhs: "dissect(f2^2/(f1*f4^3), 3, 2)",
            rhs: "3*q*f2^6*f12^6/(f1^3*f4^11)",
            kind: EXACT,
            source: "Lin",
            note: "generating function of b(3n+2)",
        },
        RawEntry {
            id: "eq1.6",
            lhs: "dissect(f2^2/(f1*f4^3), 3, 1)",
            rhs: "alpha(q^4)*f2^6*f12^3/(f1^3*f4^10)",
            kind: EXACT,
            source: "Lin",
            note: "generating function of b(3n+1) via the cubic theta function",
        },
        RawEntry {
            id: "eq1.8",
            lhs: "f2^2/f1",
            rhs: "f6*f9^2/(f3*f18) + q*f18^2/f9",
            kind: EXACT,
            source: "Hirschhorn, The Power of q, (14.3.3)",
            note: "3-dissection of psi(q) = f2^2/f1",
        },
        RawEntry {
            id: "eq2.1",
            lhs: "f3^3/f1",
            rhs: "f4^3*f6^2/(f2^2*f12) + q*f12^3/f4",
            kind: EXACT,
            source: "Hirschhorn-Roselin",
            note: "2-dissection of f3^3/f1",
        },
        RawEntry {
            id: "eq2.2",
            lhs: "f1/f3^3",
            rhs: "f2^3*f12^3/(f4*f6^9)*(f4^3*f6^2/(f2^2*f12) - q*f12^3/f4)",
            kind: EXACT,
            source: "Hirschhorn-Roselin",
            note: "2-dissection of f1/f3^3",
        },
        RawEntry {
            id: "eq2.3",
            lhs: "1/f1^3",
            rhs: "f9^3/f3^10*(alpha(q^3)^2 + 3*q*alpha(q^3)*f9^3/f3 + 9*q^2*f9^6/f3^2)",
            kind: EXACT,
            source: "Hirschhorn",
            note: "3-dissection of 1/f1^3 in terms of alpha(q^3)",
        },
        RawEntry {
            id: "eq2.4",
            lhs: "alpha(q)",
            rhs: "f2^6*f3/(f1^3*f6^2) + 3*q*f6^6*f1/(f3^3*f2^2)",
            kind: EXACT,
            source: "Hirschhorn, The Power of q, (22.11.6)",
            note: "eta representation of the cubic theta function; a genuine cross-check because alpha is generated by lattice enumeration",
        },
        RawEntry {
            id: "eq2.5",
            lhs: "alpha(q^4)",
            rhs: "alpha(q) - 6*q*f4^2*f12^2/(f2*f6)",
            kind: EXACT,
            source: "Hirschhorn, The Power of q, (22.6.1)",
            note: "relates alpha at q^4 to alpha at q",
        },
        RawEntry {
            id: "lemma2.1",
            lhs: "f6^8*f1/(f3^4*f2^2) + f2*f3^2*f12^3/(f1*f4*f6)",
            rhs: "2*f4^2*f12^2*f6/(f2*f3)",
            kind: EXACT,
            source: "combination of the Hirschhorn-Roselin 2-dissections",
            note: "theta identity used to collapse the b(3n+2) extraction",
        },
        RawEntry {
            id: "lemma2.2",
            lhs: "alpha(q^4)*f6^2/f3 + 3*q*f2*f3^2*f12^3/(f1*f4*f6)",
            rhs: "f2^6/f1^3",
            kind: EXACT,
            source: "follows from lemma2.1 with eq2.4 and eq2.5",
            note: "the closed form that turns both b-progression extractions into single quotients",
        },
        RawEntry {
            id: "eq2.6",
            lhs: "f2^2/(f1*f4^3)",
            rhs: "(f6*f9^2/(f3*f18) + q*f18^2/f9)*(f36^3/f12^10)*(alpha(q^12)^2 + 3*q^4*alpha(q^12)*f36^3/f12 + 9*q^8*f36^6/f12^2)",
            kind: EXACT,
            source: "eq1.8 with eq2.3 at q -> q^4",
            note: "the master 3-dissectable form of the b(n) generating function",
        },
        RawEntry {
            id: "eq3.1",
            lhs: "f1^2/f2",
            rhs: "f9^2/f18 - 2*q*f3*f18^2/(f6*f9)",
            kind: EXACT,
            source: "Hirschhorn, The Power of q, (14.3.2)",
            note: "3-dissection of phi(-q) = f1^2/f2",
        },
        RawEntry {
            id: "eq3.2",
            lhs: "f2/(f1*f4)",
            rhs: TOH_DISSECTION,
            kind: EXACT,
            source: "Toh",
            note: "3-dissection of the POD generating function (odd parts distinct)",
        },
        RawEntry {
            id: "eq3.3",
            lhs: "f4/f1",
            rhs: "f12*f18^4/(f3^3*f36^2) + q*f6^2*f9^3*f36/(f3^4*f18^2) + 2*q^2*f6*f18*f36/f3^3",
            kind: EXACT,
            source: "Andrews-Hirschhorn-Sellers",
            note: "3-dissection of the PED generating function (even parts distinct)",
        },
        RawEntry {
            id: "eq3.4",
            lhs: "f1^3/f3",
            rhs: "f4^3/f12 - 3*q*f2^2*f12^3/(f4*f6^2)",
            kind: EXACT,
            source: "Hirschhorn, The Power of q, (22.6.2)",
            note: "2-dissection of f1^3/f3",
        },
        RawEntry {
            id: "lemma3.1",
            lhs: "f2^2*f3*f12^3/(f4^4*f6^2) + f2^4*f3^5*f12^3/(f1^4*f4^4*f6^4)",
            rhs: "2*f2*f6^5/(f1^2*f3*f4^3)",
            kind: EXACT,
            source: "follows from eq2.1, eq2.2 and eq3.4",
            note: "theta identity feeding the b(27n+24) extraction",
        },
        RawEntry {
            id: "eq3.5",
            lhs: "f2*f12^3/(f4*f6^2)*f1^2*f3^2 + f2^3*f12^3/(f4*f6^4)*(f3^3/f1)^2",
            rhs: "2*f6^5",
            kind: EXACT,
            source: "follows from eq2.1, eq2.2 and eq3.4",
            note: "lemma3.1 before division by f2/(f1^2*f3*f4^3)",
        },
        // -- congruences modulo 3 ---------------------------------------------
        RawEntry {
            id: "eq1.7",
            lhs: "dissect(f2^2/(f1*f4^3), 3, 2)",
            rhs: "0",
            kind: MOD3,
            source: "corollary of eq1.5",
            note: "Ramanujan-type congruence b(3n+2) == 0 mod 3",
        },
        RawEntry {
            id: "quickproof",
            lhs: "f2^2/(f1*f4^3)",
            rhs: "(f6*f9^2/(f3*f18) + q*f18^2/f9)/f12",
            kind: MOD3,
            source: "eq1.8 plus the Frobenius congruence f4^3 == f12 mod 3",
            note: "one-line route to eq1.7: the right side has no q^(3n+2) terms at all",
        },
        RawEntry {
            id: "eq3.6",
            lhs: "dissect(f2^2/(f1*f4^3), 3, 0)",
            rhs: "f3^2/f6*(f18^9/(f3^2*f9^3*f12^2*f36^3) + q*f6^2*f18^3/(f3^3*f12^3) + q^2*f6^4*f9^3*f36^3/(f3^4*f12^4*f18^3))",
            kind: MOD3,
            source: "eq2.6 reduced mod 3, then eq3.2",
            note: "b(3n) == (f3^2/f6) * f2/(f1*f4) mod 3, with Toh's dissection substituted",
        },
        RawEntry {
            id: "eq3.7/3.8",
            lhs: "dissect(dissect(f2^2/(f1*f4^3), 3, 0), 3, 2)",
            rhs: "f3^2*f12^2/f6^2*(f9^2/f18 - 2*q*f3*f18^2/(f6*f9))*(f18^9/(f3^2*f9^3*f12^2*f36^3) + q*f6^2*f18^3/(f3^3*f12^3) + q^2*f6^4*f9^3*f36^3/(f3^4*f12^4*f18^3))",
            kind: MOD3,
            source: "extraction from eq3.6, then eq3.1 and eq3.2",
            note: "b(9n+6) mod 3; closed form (f1/f4)*(f3^2*f12^2/f6^2), here fully dissected",
        },
        RawEntry {
            id: "eq3.9",
            lhs: "dissect(dissect(dissect(f2^2/(f1*f4^3), 3, 0), 3, 2), 3, 2)",
            rhs: "-(f3^2*f12^2/f6^2)*(f12*f18^4/(f3^3*f36^2) + q*f6^2*f9^3*f36/(f3^4*f18^2) + 2*q^2*f6*f18*f36/f3^3)",
            kind: MOD3,
            source: "extraction from eq3.7/3.8 via lemma3.1, then eq3.3",
            note: "b(27n+24) == -(f4/f1)*(f3^2*f12^2/f6^2) mod 3, with the PED dissection substituted",
        },
        RawEntry {
            id: "eq3.10",
            lhs: "dissect(dissect(dissect(dissect(f2^2/(f1*f4^3), 3, 0), 3, 2), 3, 2), 3, 1)",
            rhs: "-(f1/f4)*(f3^2*f12^2/f6^2)",
            kind: MOD3,
            source: "extraction from eq3.9",
            note: "b(81n+51) mod 3; comparing with eq3.7/3.8 gives b(81n+51) == -b(9n+6)",
        },
        RawEntry {
            id: "eq3.11",
            lhs: "dissect(dissect(f2^2/(f1*f4^3), 3, 0), 3, 1)",
            rhs: "f2*f6^3/(f1*f12)",
            kind: MOD3,
            source: "extraction from eq3.6",
            note: "b(9n+3) mod 3",
        },
        RawEntry {
            id: "eq3.12",
            lhs: "dissect(dissect(dissect(dissect(f2^2/(f1*f4^3), 3, 0), 3, 2), 3, 2), 3, 0)",
            rhs: "-(f2*f6^3/(f1*f12))",
            kind: MOD3,
            source: "extraction from eq3.9",
            note: "b(81n+24) mod 3; comparing with eq3.11 gives b(81n+24) == -b(9n+3)",
        },
        RawEntry {
            id: "alpha-mod3",
            lhs: "alpha(q^4)",
            rhs: "1",
            kind: MOD3,
            source: "eq2.4 and eq2.5 reduced mod 3",
            note: "alpha(q^4) == alpha(q) == 1 mod 3; since alpha(q^4) is supported on multiples of 4, this single check covers both claims",
        },
    ]
});

static REGISTRY: LazyLock<Vec<Identity>> = LazyLock::new(|| {
    RAW.iter().map(build).collect()
});

static FIXTURES: LazyLock<Vec<Identity>> = LazyLock::new(|| {
    vec![build(&RawEntry {
        id: "eq1.5-broken",
        lhs: "dissect(f2^2/(f1*f4^3), 3, 2)",
        rhs: "3*q*f2^6*f12^6/(f1^3*f4^10)",
        kind: EXACT,
        source: "deliberately corrupted copy of eq1.5 (f4 exponent 10 instead of 11)",
        note: "mutation fixture: must fail with a small first-mismatch exponent",
    })]
});

fn build(raw: &RawEntry) -> Identity {
    let lhs = parse_expr(raw.lhs)
        .unwrap_or_else(|e| panic!("registry entry {} lhs does not parse: {e}", raw.id));
    let rhs = parse_expr(raw.rhs)
        .unwrap_or_else(|e| panic!("registry entry {} rhs does not parse: {e}", raw.id));
    Identity {
        id: raw.id,
        lhs_src: raw.lhs,
        rhs_src: raw.rhs,
        lhs,
        rhs,
        kind: raw.kind,
        source: raw.source,
        note: raw.note,
    }
}

/// The full built-in identity list, in catalog order.
pub fn registry() -> &'static [Identity] {
    &REGISTRY
}

/// Deliberately broken variants used to prove the verifier can fail.
/// Never included in `verify --all`.
pub fn fixtures() -> &'static [Identity] {
    &FIXTURES
}

/// Look up an identity by id, searching the registry first and the
/// mutation fixtures second.
pub fn find(id: &str) -> Option<&'static Identity> {
    registry()
        .iter()
        .chain(fixtures().iter())
        .find(|entry| entry.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_the_expected_catalog() {
        let ids: Vec<&str> = registry().iter().map(|e| e.id).collect();
        assert_eq!(
            ids,
            vec![
                "eq1.1", "eq1.2", "eq1.3", "eq1.5", "eq1.6", "eq1.8", "eq2.1", "eq2.2", "eq2.3",
                "eq2.4", "eq2.5", "lemma2.1", "lemma2.2", "eq2.6", "eq3.1", "eq3.2", "eq3.3",
                "eq3.4", "lemma3.1", "eq3.5", "eq1.7", "quickproof", "eq3.6", "eq3.7/3.8",
                "eq3.9", "eq3.10", "eq3.11", "eq3.12", "alpha-mod3",
            ]
        );
    }

    #[test]
    fn kinds_split_as_expected() {
        let exact = registry()
            .iter()
            .filter(|e| e.kind == IdentityKind::Exact)
            .count();
        let congruent = registry()
            .iter()
            .filter(|e| e.kind == IdentityKind::Congruent(3))
            .count();
        assert_eq!(exact, 20);
        assert_eq!(congruent, 9);
        assert_eq!(exact + congruent, registry().len());
        assert_eq!(
            find("eq1.5").unwrap().kind,
            IdentityKind::Exact
        );
        assert_eq!(
            find("eq3.11").unwrap().kind,
            IdentityKind::Congruent(3)
        );
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = registry()
            .iter()
            .chain(fixtures().iter())
            .map(|e| e.id)
            .collect();
        let before = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn fixture_is_not_in_the_registry() {
        assert!(registry().iter().all(|e| e.id != "eq1.5-broken"));
        assert!(find("eq1.5-broken").is_some());
        assert!(find("nosuch").is_none());
    }

    #[test]
    fn sources_round_trip_through_the_printer() {
        for entry in registry().iter().chain(fixtures().iter()) {
            let lhs_printed = entry.lhs.to_string();
            let rhs_printed = entry.rhs.to_string();
            assert_eq!(
                parse_expr(&lhs_printed).unwrap(),
                entry.lhs,
                "{} lhs: {lhs_printed}",
                entry.id
            );
            assert_eq!(
                parse_expr(&rhs_printed).unwrap(),
                entry.rhs,
                "{} rhs: {rhs_printed}",
                entry.id
            );
        }
    }
}
