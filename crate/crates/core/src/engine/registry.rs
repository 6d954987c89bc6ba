use serde::Serialize;

use crate::report::Expectation;
use crate::sequence::Family;

/// What an identity is evaluated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    /// Any admissible sequence.
    Sequence,
    /// Classical or q-Gaussian sequences only.
    QSequence,
    /// A diagonal q̂ operator (a plain sequence selector means its
    /// ratio mutator).
    Operator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Universal,
    /// Holds for the classical sequence only.
    ClassicalOnly,
    /// Holds for classical and q-Gaussian sequences; Fibonomial fails.
    GaussianFamily,
    /// Holds for q-type sequences, undefined elsewhere.
    QOnly,
    /// Denominators are 1 for the integral built-ins.
    Integral,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub target: TargetKind,
    /// Parameter names accepted besides the target selector.
    pub params: &'static [&'static str],
    #[serde(skip)]
    rule: Rule,
}

impl IdentitySpec {
    pub fn expectation(&self, family: Family) -> Expectation {
        use Expectation::*;
        use Family::*;
        match (self.rule, family) {
            (Rule::Universal, _) => MustPass,
            (_, Custom) => Informative,
            (Rule::ClassicalOnly, Classical) => MustPass,
            (Rule::ClassicalOnly, _) => ExpectedFail,
            (Rule::GaussianFamily, Fibonomial) => ExpectedFail,
            (Rule::GaussianFamily, _) => MustPass,
            (Rule::QOnly, Fibonomial) => Informative,
            (Rule::QOnly, _) => MustPass,
            (Rule::Integral, QNumeric) => Informative,
            (Rule::Integral, _) => MustPass,
        }
    }

    pub fn applies_to(&self, family: Family) -> bool {
        self.target != TargetKind::QSequence
            || matches!(family, Family::Classical | Family::QSymbolic | Family::QNumeric)
    }

    pub fn accepts(&self, param: &str) -> bool {
        self.params.contains(&param)
    }
}

const SEQ_N: &[&str] = &["n"];

static REGISTRY: &[IdentitySpec] = &[
    IdentitySpec {
        id: "exp-vs-closed",
        summary: "exp_psi(x K_psi) summed as a series equals the closed form x^(i-j) binom(i,j)",
        target: TargetKind::Sequence,
        params: &["n", "x"],
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "nilpotent",
        summary: "K_psi^n = 0 while K_psi^(n-1) != 0",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "eq4",
        summary: "P[1] P[1] = P[1 +psi 1]: sum_k binom(i,k) binom(k,j) = (1 +psi 1)^(i-j) binom(i,j)",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "eq5",
        summary: "P[1] P[-1] = P[1 -psi 1], signs (-1)^(k-j) as produced by the matrix product",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "semigroup",
        summary: "P[x] P[y] has entries binom(i,j) (x +psi y)^(i-j)",
        target: TargetKind::Sequence,
        params: &["n", "x", "y"],
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "odd-cancel",
        summary: "(a +psi (-a))^(2k+1) = 0",
        target: TargetKind::Sequence,
        params: &["n", "x"],
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "normality",
        summary: "(1 -psi 1)^n = 0 for 1 <= n <= N; only normal sequences pass",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::ClassicalOnly,
    },
    IdentitySpec {
        id: "eq6",
        summary: "P[1] P[1]^T equals the Fermat matrix binom(i+j, i); fails off the classical case",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::ClassicalOnly,
    },
    IdentitySpec {
        id: "eq9",
        summary: "q-Vandermonde: sum_k q^((r-k)(j-k)) [r,k] [s,j-k] = [r+s, j]",
        target: TargetKind::QSequence,
        params: &["n", "r", "s", "j"],
        rule: Rule::QOnly,
    },
    IdentitySpec {
        id: "eq10",
        summary: "symmetric Pascal entries: sum_k q^((i-k)(j-k)) [i,k] [j,k] = [i+j, j]",
        target: TargetKind::QSequence,
        params: &["n", "i", "j"],
        rule: Rule::QOnly,
    },
    IdentitySpec {
        id: "eq8",
        summary: "operator Cauchy identity for q-hat binomials, checked on each monomial x^m",
        target: TargetKind::Operator,
        params: &["n", "i", "j", "m", "max-degree"],
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "qhat-coincide",
        summary: "q-hat binomials from the sequence's own mutator equal its binomials on every x^m, m >= 1",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::GaussianFamily,
    },
    IdentitySpec {
        id: "eq11-basic",
        summary: "psi-Sheffer identity for x^n: exp_psi(y d_psi) x^n = sum_k binom(n,k) y^k x^(n-k)",
        target: TargetKind::Sequence,
        params: &["n", "x", "y"],
        rule: Rule::Universal,
    },
    IdentitySpec {
        id: "integrality",
        summary: "binom(n,k) has denominator 1 (integers, or polynomials in q)",
        target: TargetKind::Sequence,
        params: SEQ_N,
        rule: Rule::Integral,
    },
];

/// All registered identities in their fixed order.
pub fn list_identities() -> &'static [IdentitySpec] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static IdentitySpec> {
    REGISTRY.iter().find(|s| s.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_unique() {
        let ids: Vec<&str> = list_identities().iter().map(|s| s.id).collect();
        for want in [
            "eq4", "eq5", "eq6", "eq8", "eq9", "eq10", "eq11-basic", "semigroup", "exp-vs-closed",
            "nilpotent", "odd-cancel", "normality",
        ] {
            assert!(ids.contains(&want), "{want} missing");
        }
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(ids.len() >= 11);
    }

    #[test]
    fn expectations() {
        let eq6 = lookup("eq6").unwrap();
        assert_eq!(eq6.expectation(Family::Classical), Expectation::MustPass);
        assert_eq!(eq6.expectation(Family::Fibonomial), Expectation::ExpectedFail);
        assert_eq!(eq6.expectation(Family::Custom), Expectation::Informative);
        assert_eq!(lookup("eq4").unwrap().expectation(Family::Custom), Expectation::MustPass);
        assert!(!lookup("eq10").unwrap().applies_to(Family::Fibonomial));
    }
}
