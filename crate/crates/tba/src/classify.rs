//! Subvariety classification: evaluates every condition of the three
//! characterization theorems independently and audits that the conditions
//! inside each theorem agree.
//!
//! Each theorem states several equivalent conditions. On any model passing
//! the axiom suite the per-theorem condition vector must therefore be
//! uniform (all true or all false); a mixed vector is reported as a
//! disagreement and indicates an implementation bug.

use crate::laws::{axiom_suite, first_failure, EquationFailure, LawReport};
use crate::model::{DerivedOps, PointedTernaryAlgebra};
use crate::term::{parse_equation, Equation};

/// One named condition with its outcome and, when false, the first failing
/// equation and assignment.
#[derive(Debug, Clone)]
pub struct ConditionOutcome {
    pub id: &'static str,
    pub holds: bool,
    pub failure: Option<EquationFailure>,
}

/// The evaluated condition vector of one theorem.
#[derive(Debug, Clone)]
pub struct TheoremVector {
    pub theorem: &'static str,
    pub conditions: Vec<ConditionOutcome>,
}

impl TheoremVector {
    pub fn uniform(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].holds == w[1].holds)
    }

    pub fn all_true(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn values(&self) -> Vec<(&'static str, bool)> {
        self.conditions.iter().map(|c| (c.id, c.holds)).collect()
    }
}

/// The three headline verdicts derived from the theorem vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub boolean: bool,
    pub ring2: bool,
    pub near_ring2: bool,
}

/// A non-uniform condition vector (expected never to occur on axiom-passing
/// models).
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub theorem: &'static str,
    pub values: Vec<(&'static str, bool)>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub axioms: LawReport,
    /// `None` when the axioms fail: the theorems only speak about models of
    /// T1..T4, so classification is not applicable.
    pub vectors: Option<[TheoremVector; 3]>,
    pub verdicts: Option<Verdicts>,
    pub disagreements: Vec<Disagreement>,
}

impl ClassificationReport {
    pub fn applicable(&self) -> bool {
        self.vectors.is_some()
    }
}

fn eq(src: &str) -> Equation {
    parse_equation(src).expect("classification equation parses")
}

fn condition(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    id: &'static str,
    sources: &[&str],
) -> ConditionOutcome {
    let equations: Vec<Equation> = sources.iter().map(|s| eq(s)).collect();
    let failure = first_failure(model, ops, &equations);
    ConditionOutcome {
        id,
        holds: failure.is_none(),
        failure,
    }
}

/// Bounded distributive lattice laws for `(@,*,0,1)` plus the two
/// complement laws; the direct reading of "Boolean algebra" on the derived
/// operations.
const BOOLEAN_ALGEBRA: &[&str] = &[
    "a*b = b*a",
    "a@b = b@a",
    "(a*b)*c = a*(b*c)",
    "(a@b)@c = a@(b@c)",
    "a*a = a",
    "a@a = a",
    "a*(a@b) = a",
    "a@(a*b) = a",
    "a*(b@c) = (a*b)@(a*c)",
    "a@(b*c) = (a@b)*(a@c)",
    "a*1 = a",
    "1*a = a",
    "a@0 = a",
    "0@a = a",
    "a*0 = 0",
    "0*a = 0",
    "a@1 = 1",
    "1@a = 1",
    "a*~a = 0",
    "a@~a = 1",
];

/// Unitary ring of characteristic 2 on `(+,*,0,1)`: abelian group with
/// `a+a = 0`, `*`-monoid, both distributivity laws.
const RING_CHAR_TWO: &[&str] = &[
    "(a+b)+c = a+(b+c)",
    "a+b = b+a",
    "a+0 = a",
    "0+a = a",
    "a+a = 0",
    "(a*b)*c = a*(b*c)",
    "a*1 = a",
    "1*a = a",
    "a*(b+c) = (a*b)+(a*c)",
    "(a+b)*c = (a*c)+(b*c)",
];

/// Boolean ring: a characteristic-2 unitary ring with idempotent `*`.
const BOOLEAN_RING: &[&str] = &[
    "(a+b)+c = a+(b+c)",
    "a+b = b+a",
    "a+0 = a",
    "0+a = a",
    "a+a = 0",
    "(a*b)*c = a*(b*c)",
    "a*1 = a",
    "1*a = a",
    "a*(b+c) = (a*b)+(a*c)",
    "(a+b)*c = (a*c)+(b*c)",
    "a*a = a",
];

/// Unitary right near-ring of characteristic 2 on `(+,*,0,1)`: a group
/// under `+` with `a+a = 0` (commutativity not assumed; it follows and is
/// audited via the other conditions), `*`-monoid, right distributivity.
const NEAR_RING_CHAR_TWO: &[&str] = &[
    "(a+b)+c = a+(b+c)",
    "a+0 = a",
    "0+a = a",
    "a+a = 0",
    "(a*b)*c = a*(b*c)",
    "a*1 = a",
    "1*a = a",
    "(a+b)*c = (a*c)+(b*c)",
];

/// Evaluates the five conditions of the Boolean-algebra characterization.
pub fn thm1_conditions(model: &PointedTernaryAlgebra) -> TheoremVector {
    let ops = model.derived_ops();
    TheoremVector {
        theorem: "thm1",
        conditions: vec![
            condition(model, &ops, "i_boolean_algebra", BOOLEAN_ALGEBRA),
            condition(model, &ops, "ii_boolean_ring", BOOLEAN_RING),
            condition(
                model,
                &ops,
                "iii_church_formula",
                &["p(a,b,c) = (~b*a)@(b*c)"],
            ),
            condition(model, &ops, "iv_p_aab", &["p(a,a,b) = a*b"]),
            condition(model, &ops, "v_p_abb", &["p(a,b,b) = a@b"]),
        ],
    }
}

/// Evaluates the three conditions of the characteristic-2 ring
/// characterization.
pub fn thm2_conditions(model: &PointedTernaryAlgebra) -> TheoremVector {
    let ops = model.derived_ops();
    TheoremVector {
        theorem: "thm2",
        conditions: vec![
            condition(model, &ops, "i_ring2", RING_CHAR_TWO),
            condition(
                model,
                &ops,
                "ii_ring_formula",
                &["p(a,b,c) = (~b*a)+(b*c)"],
            ),
            condition(
                model,
                &ops,
                "iii_left_distributive",
                &["a*(b+c) = (a*b)+(a*c)"],
            ),
        ],
    }
}

/// Evaluates the four conditions of the characteristic-2 near-ring
/// characterization.
pub fn thm3_conditions(model: &PointedTernaryAlgebra) -> TheoremVector {
    let ops = model.derived_ops();
    TheoremVector {
        theorem: "thm3",
        conditions: vec![
            condition(model, &ops, "i_near_ring2", NEAR_RING_CHAR_TWO),
            condition(
                model,
                &ops,
                "ii_near_ring_formula",
                &["p(a,b,c) = a+(b*(a+c))"],
            ),
            condition(model, &ops, "iii_char_two", &["a+a = 0"]),
            condition(
                model,
                &ops,
                "iv_right_distributive",
                &["(a+b)*c = (a*c)+(b*c)"],
            ),
        ],
    }
}

fn disagreements_of(vectors: &[TheoremVector; 3]) -> Vec<Disagreement> {
    vectors
        .iter()
        .filter(|v| !v.uniform())
        .map(|v| Disagreement {
            theorem: v.theorem,
            values: v.values(),
        })
        .collect()
}

/// Runs the axiom suite and, when it passes, evaluates all three condition
/// vectors, the headline verdicts and the intra-theorem agreement audit.
pub fn classify(model: &PointedTernaryAlgebra) -> ClassificationReport {
    let axioms = axiom_suite(model);
    if !axioms.all_passed() {
        return ClassificationReport {
            axioms,
            vectors: None,
            verdicts: None,
            disagreements: Vec::new(),
        };
    }
    let vectors = [
        thm1_conditions(model),
        thm2_conditions(model),
        thm3_conditions(model),
    ];
    let verdicts = Verdicts {
        boolean: vectors[0].all_true(),
        ring2: vectors[1].all_true(),
        near_ring2: vectors[2].all_true(),
    };
    let disagreements = disagreements_of(&vectors);
    ClassificationReport {
        axioms,
        vectors: Some(vectors),
        verdicts: Some(verdicts),
        disagreements,
    }
}

/// One model's entry in the output of [`equivalence_audit`].
#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub model_index: usize,
    pub disagreement: Disagreement,
}

/// Audits the per-theorem condition vectors of many axiom-verified models.
/// Returns every intra-theorem disagreement found (expected: none).
pub fn equivalence_audit(models: &[PointedTernaryAlgebra]) -> Vec<AuditEntry> {
    let mut out = Vec::new();
    for (model_index, m) in models.iter().enumerate() {
        let vectors = [thm1_conditions(m), thm2_conditions(m), thm3_conditions(m)];
        for d in disagreements_of(&vectors) {
            out.push(AuditEntry {
                model_index,
                disagreement: d,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog_model;

    fn verdict_triple(name: &str) -> (bool, bool, bool) {
        let report = classify(&catalog_model(name).unwrap());
        let v = report.verdicts.expect("axioms pass");
        assert!(report.disagreements.is_empty(), "{name}: {report:?}");
        (v.boolean, v.ring2, v.near_ring2)
    }

    #[test]
    fn gf2_is_boolean() {
        let report = classify(&catalog_model("gf2").unwrap());
        let vectors = report.vectors.as_ref().unwrap();
        assert!(vectors.iter().all(|v| v.all_true()));
        assert_eq!(verdict_triple("gf2"), (true, true, true));
    }

    #[test]
    fn ut2gf2_is_a_ring_but_not_boolean() {
        let m = catalog_model("ut2gf2").unwrap();
        let v1 = thm1_conditions(&m);
        assert!(v1.uniform() && !v1.all_true(), "{v1:?}");
        // the idempotency condition fails on the strictly-upper matrix:
        // p(a,a,b) = a*b first breaks at a = 010 (with b = 000)
        let iv = &v1.conditions[3];
        assert_eq!(iv.id, "iv_p_aab");
        let f = iv.failure.as_ref().unwrap();
        assert_eq!(f.counterexample.display_with(&m), "a=010 b=000 lhs=010 rhs=000");
        assert_eq!(verdict_triple("ut2gf2"), (false, true, true));
    }

    #[test]
    fn n4_is_a_near_ring_only() {
        let m = catalog_model("n4paper").unwrap();
        assert_eq!(verdict_triple("n4paper"), (false, false, true));
        let v2 = thm2_conditions(&m);
        let iii = &v2.conditions[2];
        assert_eq!(iii.id, "iii_left_distributive");
        let f = iii.failure.as_ref().unwrap();
        // lexicographically first witness: u*(u+v) = u*1 = u vs (u*u)+(u*v) = 0
        assert_eq!(f.counterexample.display_with(&m), "a=u b=u c=v lhs=u rhs=0");
    }

    #[test]
    fn gf4_and_dualnum2_and_z4affine_are_char_two_rings() {
        for name in ["gf4", "dualnum2", "z4affine"] {
            assert_eq!(verdict_triple(name), (false, true, true), "{name}");
        }
    }

    #[test]
    fn verdict_nesting_on_catalog() {
        for name in ["gf2", "gf2^2", "gf2^3", "gf4", "dualnum2", "z4affine", "ut2gf2", "n4paper"]
        {
            let (b, r, nr) = verdict_triple(name);
            assert!(!b || r, "{name}: boolean implies ring2");
            assert!(!r || nr, "{name}: ring2 implies nearRing2");
        }
    }

    #[test]
    fn corrupted_model_is_not_classified() {
        let m = catalog_model("gf2^2").unwrap();
        let mut table = m.table().to_vec();
        // break T2 at p(2,2,2)
        let n = m.size();
        let idx = (2 * n + 2) * n + 2;
        table[idx] = if table[idx] == 0 { 1 } else { 0 };
        let bad =
            PointedTernaryAlgebra::new(m.names().to_vec(), m.zero(), m.one(), table).unwrap();
        let report = classify(&bad);
        assert!(!report.applicable());
        assert!(report.verdicts.is_none());
        assert!(!report.axioms.all_passed());
    }

    #[test]
    fn boolean_models_make_the_three_formulas_coincide() {
        // on a model classified boolean, the church, ring and near-ring
        // interpretations of p all reproduce the table itself
        let m = catalog_model("gf2^2").unwrap();
        assert!(classify(&m).verdicts.unwrap().boolean);
        let ops = m.derived_ops();
        let n = m.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let church = ops.circ(ops.dot(ops.bar(b), a), ops.dot(b, c));
                    let ring = ops.plus(ops.dot(ops.bar(b), a), ops.dot(b, c));
                    let near_ring = ops.plus(a, ops.dot(b, ops.plus(a, c)));
                    assert_eq!(church, m.p(a, b, c));
                    assert_eq!(ring, m.p(a, b, c));
                    assert_eq!(near_ring, m.p(a, b, c));
                }
            }
        }
    }

    #[test]
    fn audit_is_empty_on_catalog_models() {
        let models: Vec<_> = ["gf2", "gf2^2", "gf4", "dualnum2", "z4affine", "n4paper"]
            .iter()
            .map(|n| catalog_model(n).unwrap())
            .collect();
        assert!(equivalence_audit(&models).is_empty());
    }
}
