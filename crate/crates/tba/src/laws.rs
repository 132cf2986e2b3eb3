//! Catalog of the axioms and derived laws as checkable objects, plus the
//! suite runners.
//!
//! Unconditional laws are lists of equations. Conditional laws pair
//! hypothesis equations with conclusion equations under one of two scopes:
//! universal (hypotheses quantified over the whole carrier) or pointwise
//! (the implication is demanded separately at each value of the shared
//! variables).

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{DerivedOps, PointedTernaryAlgebra};
use crate::term::{check_equation_with, parse_equation, CheckOutcome, Counterexample, Equation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    T1,
    T2,
    T3,
    T4,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
    L10,
    Eq1,
}

pub const AXIOM_IDS: [LawId; 4] = [LawId::T1, LawId::T2, LawId::T3, LawId::T4];

pub const LAW_IDS: [LawId; 11] = [
    LawId::L1,
    LawId::L2,
    LawId::L3,
    LawId::L4,
    LawId::L5,
    LawId::L6,
    LawId::L7,
    LawId::L8,
    LawId::L9,
    LawId::L10,
    LawId::Eq1,
];

impl LawId {
    pub fn as_str(&self) -> &'static str {
        match self {
            LawId::T1 => "T1",
            LawId::T2 => "T2",
            LawId::T3 => "T3",
            LawId::T4 => "T4",
            LawId::L1 => "L1",
            LawId::L2 => "L2",
            LawId::L3 => "L3",
            LawId::L4 => "L4",
            LawId::L5 => "L5",
            LawId::L6 => "L6",
            LawId::L7 => "L7",
            LawId::L8 => "L8",
            LawId::L9 => "L9",
            LawId::L10 => "L10",
            LawId::Eq1 => "EQ1",
        }
    }

    pub fn all() -> impl Iterator<Item = LawId> {
        AXIOM_IDS.into_iter().chain(LAW_IDS)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown law id `{0}`")]
pub struct UnknownLawId(String);

impl FromStr for LawId {
    type Err = UnknownLawId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawId::all()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownLawId(s.to_string()))
    }
}

/// Quantification scope of a conditional law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawScope {
    /// Hypotheses must hold over the whole carrier for the conclusions to be
    /// demanded at all.
    Universal,
    /// The implication is demanded at each assignment of the shared
    /// variables separately; other variables stay universally quantified
    /// per equation.
    Pointwise { shared: Vec<String> },
}

/// One `hypotheses => conclusions` implication.
#[derive(Debug, Clone)]
pub struct LawClause {
    pub hypotheses: Vec<Equation>,
    pub conclusions: Vec<Equation>,
}

/// A named, checkable law: one or more clauses under a common scope.
#[derive(Debug, Clone)]
pub struct Law {
    pub id: LawId,
    pub summary: &'static str,
    pub scope: LawScope,
    pub clauses: Vec<LawClause>,
}

fn eq(src: &str) -> Equation {
    parse_equation(src).expect("law catalog equation parses")
}

fn eqs(srcs: &[&str]) -> Vec<Equation> {
    srcs.iter().map(|s| eq(s)).collect()
}

fn unconditional(id: LawId, summary: &'static str, conclusions: &[&str]) -> Law {
    Law {
        id,
        summary,
        scope: LawScope::Universal,
        clauses: vec![LawClause {
            hypotheses: Vec::new(),
            conclusions: eqs(conclusions),
        }],
    }
}

/// The law with the given id, built from the equation catalog.
pub fn law(id: LawId) -> Law {
    match id {
        LawId::T1 => unconditional(id, "p(0,a,1) = a", &["p(0,a,1) = a"]),
        LawId::T2 => unconditional(id, "p(a,b,a) = a", &["p(a,b,a) = a"]),
        LawId::T3 => unconditional(
            id,
            "p distributes over itself in the middle argument",
            &["p(a,p(b1,b2,b3),c) = p(p(a,b1,c),b2,p(a,b3,c))"],
        ),
        LawId::T4 => unconditional(
            id,
            "middle 0 selects the left argument, middle 1 the right",
            &["p(a,0,b) = a", "p(b,1,a) = a"],
        ),
        LawId::L1 => unconditional(
            id,
            "complement swaps the constants and is an involution",
            &["~1 = 0", "~0 = 1", "~~a = a"],
        ),
        LawId::L2 => unconditional(
            id,
            "complement acts on the outer arguments; outer swap with middle complement",
            &["~p(a,b,c) = p(~a,b,~c)", "p(a,b,c) = p(c,~b,a)"],
        ),
        LawId::L3 => unconditional(
            id,
            "De Morgan duality between * and @; complement shifts through +",
            &[
                "~(a*b) = ~b@~a",
                "~(a@b) = ~b*~a",
                "~(a+b) = ~a+b",
                "~(a+b) = a+~b",
            ],
        ),
        LawId::L4 => unconditional(
            id,
            "(A,*,1), (A,@,0) and (A,+,0) are monoids",
            &[
                "(a*b)*c = a*(b*c)",
                "a*1 = a",
                "1*a = a",
                "(a@b)@c = a@(b@c)",
                "a@0 = a",
                "0@a = a",
                "(a+b)+c = a+(b+c)",
                "a+0 = a",
                "0+a = a",
            ],
        ),
        LawId::L5 => unconditional(
            id,
            "0 absorbs *, 1 absorbs @",
            &["a*0 = 0", "0*a = 0", "a@1 = 1", "1@a = 1"],
        ),
        LawId::L6 => unconditional(
            id,
            "adding 1 complements; 1+1 = 0",
            &["a+1 = ~a", "1+a = ~a", "1+1 = 0"],
        ),
        LawId::L7 => Law {
            id,
            summary: "if p(0,a,b) = p(a,a,b) then * and @ are commutative with complements",
            scope: LawScope::Universal,
            clauses: vec![LawClause {
                hypotheses: eqs(&["p(0,a,b) = p(a,a,b)"]),
                conclusions: eqs(&["a*b = b*a", "a@b = b@a", "a*~a = 0", "a@~a = 1"]),
            }],
        },
        // The two clauses are De Morgan duals of each other: pushing the
        // complement through ~a*a = 0 lands it on the right of @.
        LawId::L8 => Law {
            id,
            summary: "elementwise: ~a*a = 0 forces a*a = a, and a@~a = 1 forces a@a = a",
            scope: LawScope::Pointwise {
                shared: vec!["a".to_string()],
            },
            clauses: vec![
                LawClause {
                    hypotheses: eqs(&["~a*a = 0"]),
                    conclusions: eqs(&["a*a = a"]),
                },
                LawClause {
                    hypotheses: eqs(&["a@~a = 1"]),
                    conclusions: eqs(&["a@a = a"]),
                },
            ],
        },
        LawId::L9 => Law {
            id,
            summary: "a commutative idempotent *-monoid makes (@,*,0,1) a bounded distributive lattice",
            scope: LawScope::Universal,
            clauses: vec![LawClause {
                hypotheses: eqs(&["a*b = b*a", "a*a = a"]),
                conclusions: eqs(&[
                    "a@b = b@a",
                    "(a*b)*c = a*(b*c)",
                    "(a@b)@c = a@(b@c)",
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
                ]),
            }],
        },
        LawId::L10 => Law {
            id,
            summary: "a+a = 0 makes + commutative and * right-distributive",
            scope: LawScope::Universal,
            clauses: vec![LawClause {
                hypotheses: eqs(&["a+a = 0"]),
                conclusions: eqs(&["a+b = b+a", "(a+b)*c = (a*c)+(b*c)"]),
            }],
        },
        LawId::Eq1 => Law {
            id,
            summary: "under a+a = 0, adding a to p(a,b,c) gives b*(a+c)",
            scope: LawScope::Universal,
            clauses: vec![LawClause {
                hypotheses: eqs(&["a+a = 0"]),
                conclusions: eqs(&["a + p(a,b,c) = b*(a+c)"]),
            }],
        },
    }
}

/// An equation together with the assignment falsifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationFailure {
    pub equation: String,
    pub counterexample: Counterexample,
}

impl EquationFailure {
    fn from(eq: &Equation, cex: Counterexample) -> Self {
        EquationFailure {
            equation: eq.to_string(),
            counterexample: cex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Passed,
    /// The law holds vacuously: a hypothesis failed (universal scope) or no
    /// shared assignment satisfied the hypotheses (pointwise scope).
    HypothesisFailed(EquationFailure),
    /// A conclusion failed while the hypotheses held.
    Violated(EquationFailure),
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn is_passed(&self) -> bool {
        matches!(self, Verdict::Passed)
    }
}

#[derive(Debug, Clone)]
pub struct LawOutcome {
    pub id: LawId,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    /// True when every law passed outright (no violations, nothing vacuous).
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.verdict.is_passed())
    }

    /// True when no law is violated (vacuous passes allowed).
    pub fn no_violations(&self) -> bool {
        !self.outcomes.iter().any(|o| o.verdict.is_violated())
    }

    pub fn outcome(&self, id: LawId) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn first_violation(&self) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.verdict.is_violated())
    }
}

/// Checks all equations in order; returns the first failure.
pub fn first_failure(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    equations: &[Equation],
) -> Option<EquationFailure> {
    for e in equations {
        if let CheckOutcome::Counterexample(cex) = check_equation_with(model, ops, e, &[]) {
            return Some(EquationFailure::from(e, cex));
        }
    }
    None
}

fn check_universal_clause(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    clause: &LawClause,
) -> Verdict {
    if let Some(fail) = first_failure(model, ops, &clause.hypotheses) {
        return Verdict::HypothesisFailed(fail);
    }
    match first_failure(model, ops, &clause.conclusions) {
        Some(fail) => Verdict::Violated(fail),
        None => Verdict::Passed,
    }
}

fn check_pointwise_clause(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    shared: &[String],
    clause: &LawClause,
) -> Verdict {
    let n = model.size();
    let mut values = vec![0usize; shared.len()];
    let mut any_hypothesis_held = false;
    let mut first_hypothesis_failure: Option<EquationFailure> = None;
    loop {
        let fixed: Vec<(String, usize)> = shared
            .iter()
            .cloned()
            .zip(values.iter().copied())
            .collect();
        let mut hyps_hold = true;
        for h in &clause.hypotheses {
            if let CheckOutcome::Counterexample(cex) = check_equation_with(model, ops, h, &fixed) {
                if first_hypothesis_failure.is_none() {
                    first_hypothesis_failure = Some(EquationFailure::from(h, cex));
                }
                hyps_hold = false;
                break;
            }
        }
        if hyps_hold {
            any_hypothesis_held = true;
            for c in &clause.conclusions {
                if let CheckOutcome::Counterexample(cex) =
                    check_equation_with(model, ops, c, &fixed)
                {
                    return Verdict::Violated(EquationFailure::from(c, cex));
                }
            }
        }
        // next shared assignment, last variable fastest
        let mut done = true;
        for slot in (0..values.len()).rev() {
            values[slot] += 1;
            if values[slot] < n {
                done = false;
                break;
            }
            values[slot] = 0;
        }
        if done {
            break;
        }
    }
    if any_hypothesis_held {
        Verdict::Passed
    } else {
        Verdict::HypothesisFailed(
            first_hypothesis_failure.expect("vacuous law has a failing hypothesis"),
        )
    }
}

/// Checks a single law. Violations win over vacuous clauses; the law is
/// vacuous only when every clause is.
pub fn check_law(model: &PointedTernaryAlgebra, law: &Law) -> LawOutcome {
    let start = Instant::now();
    let ops = model.derived_ops();
    let mut vacuous: Option<EquationFailure> = None;
    let mut all_vacuous = true;
    for clause in &law.clauses {
        let verdict = match &law.scope {
            LawScope::Universal => check_universal_clause(model, &ops, clause),
            LawScope::Pointwise { shared } => check_pointwise_clause(model, &ops, shared, clause),
        };
        match verdict {
            Verdict::Violated(f) => {
                return LawOutcome {
                    id: law.id,
                    verdict: Verdict::Violated(f),
                    elapsed: start.elapsed(),
                };
            }
            Verdict::HypothesisFailed(f) => {
                if vacuous.is_none() {
                    vacuous = Some(f);
                }
            }
            Verdict::Passed => all_vacuous = false,
        }
    }
    let verdict = match (all_vacuous, vacuous) {
        (true, Some(f)) => Verdict::HypothesisFailed(f),
        _ => Verdict::Passed,
    };
    LawOutcome {
        id: law.id,
        verdict,
        elapsed: start.elapsed(),
    }
}

pub fn check_law_by_id(model: &PointedTernaryAlgebra, id: LawId) -> LawOutcome {
    check_law(model, &law(id))
}

fn run_suite(model: &PointedTernaryAlgebra, ids: &[LawId]) -> LawReport {
    LawReport {
        outcomes: ids.iter().map(|&id| check_law_by_id(model, id)).collect(),
    }
}

/// Checks the four axioms T1..T4.
pub fn axiom_suite(model: &PointedTernaryAlgebra) -> LawReport {
    run_suite(model, &AXIOM_IDS)
}

/// Checks L1..L10 and EQ1. Meaningful on models that pass [`axiom_suite`];
/// on such models a `Violated` verdict indicates a bug in this crate, not a
/// property of the model.
pub fn law_suite(model: &PointedTernaryAlgebra) -> LawReport {
    run_suite(model, &LAW_IDS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_model, catalog_model, catalog_presentation, FormulaKind};

    #[test]
    fn law_ids_round_trip() {
        for id in LawId::all() {
            assert_eq!(id.as_str().parse::<LawId>().unwrap(), id);
        }
        assert!("T9".parse::<LawId>().is_err());
        assert_eq!("EQ1".parse::<LawId>().unwrap(), LawId::Eq1);
    }

    #[test]
    fn axioms_pass_on_affine_n4() {
        let m = catalog_model("n4paper").unwrap();
        let report = axiom_suite(&m);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn ring2_formula_on_n4_violates_t3_only() {
        let pres = catalog_presentation("n4paper").unwrap();
        let built = build_model(&pres, FormulaKind::Ring2).unwrap();
        let report = axiom_suite(&built.model);
        assert!(report.outcome(LawId::T1).unwrap().verdict.is_passed());
        assert!(report.outcome(LawId::T2).unwrap().verdict.is_passed());
        assert!(report.outcome(LawId::T4).unwrap().verdict.is_passed());
        let t3 = report.outcome(LawId::T3).unwrap();
        let failure = match &t3.verdict {
            Verdict::Violated(f) => f,
            other => panic!("expected T3 violation, got {other:?}"),
        };
        // lexicographically first witnessing quintuple: a=v b1=0 b2=u b3=u c=1
        assert_eq!(
            failure.counterexample.display_with(&built.model),
            "a=v b1=0 b2=u b3=u c=1 lhs=v rhs=1"
        );
    }

    #[test]
    fn unique_size_two_table_passes() {
        let m = catalog_model("gf2").unwrap();
        assert!(axiom_suite(&m).all_passed());
        assert!(law_suite(&m).all_passed() || law_suite(&m).no_violations());
    }

    #[test]
    fn l9_passes_on_boolean_square() {
        let m = catalog_model("gf2^2").unwrap();
        let outcome = check_law_by_id(&m, LawId::L9);
        assert!(outcome.verdict.is_passed());
    }

    #[test]
    fn l7_is_vacuous_on_n4() {
        let m = catalog_model("n4paper").unwrap();
        let outcome = check_law_by_id(&m, LawId::L7);
        let failure = match &outcome.verdict {
            Verdict::HypothesisFailed(f) => f,
            other => panic!("expected vacuous pass, got {other:?}"),
        };
        assert_eq!(failure.equation, "p(0,a,b) = p(a,a,b)");
        assert_eq!(
            failure.counterexample.display_with(&m),
            "a=u b=0 lhs=0 rhs=u"
        );
    }

    #[test]
    fn l8_passes_pointwise_on_n4() {
        let m = catalog_model("n4paper").unwrap();
        let outcome = check_law_by_id(&m, LawId::L8);
        assert!(outcome.verdict.is_passed(), "{outcome:?}");
    }

    #[test]
    fn eq1_passes_on_char_two_models() {
        for name in ["gf2", "n4paper", "z4affine"] {
            let m = catalog_model(name).unwrap();
            let outcome = check_law_by_id(&m, LawId::Eq1);
            assert!(outcome.verdict.is_passed(), "{name}: {outcome:?}");
        }
    }

    #[test]
    fn l6_passes_on_z4affine() {
        let m = catalog_model("z4affine").unwrap();
        assert!(check_law_by_id(&m, LawId::L6).verdict.is_passed());
    }

    #[test]
    fn law_suite_has_no_violations_on_catalog() {
        for name in crate::construct::CATALOG_NAMES {
            if *name == "gf2^4" {
                continue; // size 16: covered by the cheaper per-law tests above
            }
            let m = catalog_model(name).unwrap();
            assert!(axiom_suite(&m).all_passed(), "{name} axioms");
            let report = law_suite(&m);
            assert!(report.no_violations(), "{name}: {report:?}");
            // L1..L6 are unconditional and must pass outright
            for id in [LawId::L1, LawId::L2, LawId::L3, LawId::L4, LawId::L5, LawId::L6] {
                assert!(
                    report.outcome(id).unwrap().verdict.is_passed(),
                    "{name} {id}"
                );
            }
        }
    }
}
