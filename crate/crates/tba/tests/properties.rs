//! Property tests: printer/parser round-trip, variable-renaming invariance,
//! and invariance of every verdict under constant-fixing relabelings.

use proptest::prelude::*;

use tba::classify::classify;
use tba::construct::catalog_model;
use tba::laws::{axiom_suite, law_suite, Verdict};
use tba::model::{canonical_names, PointedTernaryAlgebra, Relabeling};
use tba::term::{check_equation, parse_term, CheckOutcome, Equation, Term};

fn arb_var() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,2}".prop_filter("p is reserved", |s| s != "p")
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::One),
        arb_var().prop_map(Term::Var),
    ];
    leaf.prop_recursive(4, 48, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(|(a, b, c)| Term::P(Box::new(a), Box::new(b), Box::new(c))),
            inner.clone().prop_map(|t| Term::Bar(Box::new(t))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Term::Dot(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Term::Circ(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Term::Plus(Box::new(l), Box::new(r))),
        ]
    })
}

/// Seed-driven Fisher-Yates permutation of the non-constant elements.
fn seeded_constant_fixing_perm(m: &PointedTernaryAlgebra, seed: u64) -> Relabeling {
    let slots: Vec<usize> = (0..m.size())
        .filter(|&i| i != m.zero() && i != m.one())
        .collect();
    let mut images = slots.clone();
    let mut state = seed | 1;
    for i in (1..images.len()).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        images.swap(i, j);
    }
    let mut perm = vec![0usize; m.size()];
    perm[m.zero()] = m.zero();
    perm[m.one()] = m.one();
    for (slot, image) in slots.iter().zip(images.iter()) {
        perm[*slot] = *image;
    }
    Relabeling::new(perm).unwrap()
}

fn arb_sized_table() -> impl Strategy<Value = PointedTernaryAlgebra> {
    (2usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n * n).prop_map(move |table| {
            PointedTernaryAlgebra::new(canonical_names(n), 0, 1, table).unwrap()
        })
    })
}

// a shared prefix keeps the lexicographic order of the variable list, so
// the counterexample sweep visits assignments in the same order
fn rename_vars(t: &Term) -> Term {
    match t {
        Term::Zero => Term::Zero,
        Term::One => Term::One,
        Term::Var(v) => Term::Var(format!("q{v}")),
        Term::P(a, b, c) => Term::P(
            Box::new(rename_vars(a)),
            Box::new(rename_vars(b)),
            Box::new(rename_vars(c)),
        ),
        Term::Bar(x) => Term::Bar(Box::new(rename_vars(x))),
        Term::Dot(l, r) => Term::Dot(Box::new(rename_vars(l)), Box::new(rename_vars(r))),
        Term::Circ(l, r) => Term::Circ(Box::new(rename_vars(l)), Box::new(rename_vars(r))),
        Term::Plus(l, r) => Term::Plus(Box::new(rename_vars(l)), Box::new(rename_vars(r))),
    }
}

fn verdict_kind(v: &Verdict) -> u8 {
    match v {
        Verdict::Passed => 0,
        Verdict::HypothesisFailed(_) => 1,
        Verdict::Violated(_) => 2,
    }
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(t in arb_term()) {
        let printed = t.to_string();
        let reparsed = parse_term(&printed).unwrap();
        prop_assert_eq!(reparsed, t, "printed form: {}", printed);
    }

    #[test]
    fn checking_is_invariant_under_consistent_renaming(
        l in arb_term(),
        r in arb_term(),
    ) {
        let m = catalog_model("n4paper").unwrap();
        let original = check_equation(&m, &Equation::new(l.clone(), r.clone()));
        let renamed = check_equation(&m, &Equation::new(rename_vars(&l), rename_vars(&r)));
        match (&original, &renamed) {
            (CheckOutcome::Holds, CheckOutcome::Holds) => {}
            (CheckOutcome::Counterexample(a), CheckOutcome::Counterexample(b)) => {
                prop_assert_eq!(a.lhs, b.lhs);
                prop_assert_eq!(a.rhs, b.rhs);
                let values: Vec<usize> = a.assignment.iter().map(|(_, v)| *v).collect();
                let renamed_values: Vec<usize> = b.assignment.iter().map(|(_, v)| *v).collect();
                prop_assert_eq!(values, renamed_values);
            }
            _ => prop_assert!(false, "verdicts differ: {:?} vs {:?}", original, renamed),
        }
    }

    // canonicalization does not require the axioms: any relabeling of any
    // table must canonicalize identically
    #[test]
    fn canonical_form_is_invariant_on_arbitrary_tables(
        m in arb_sized_table(),
        seed in any::<u64>(),
    ) {
        let sigma = seeded_constant_fixing_perm(&m, seed);
        let relabeled = m.relabel(&sigma).unwrap();
        prop_assert_eq!(m.canonical_form(), relabeled.canonical_form());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn all_verdicts_are_invariant_under_relabeling(
        name in proptest::sample::select(vec![
            "gf2^2", "gf4", "dualnum2", "n4paper", "z4affine", "gf2^3",
        ]),
        seed in any::<u64>(),
    ) {
        let m = catalog_model(name).unwrap();
        let sigma = seeded_constant_fixing_perm(&m, seed);
        let relabeled = m.relabel(&sigma).unwrap();

        let a1 = axiom_suite(&m);
        let a2 = axiom_suite(&relabeled);
        for (x, y) in a1.outcomes.iter().zip(a2.outcomes.iter()) {
            prop_assert_eq!(verdict_kind(&x.verdict), verdict_kind(&y.verdict), "axiom {}", x.id);
        }
        let l1 = law_suite(&m);
        let l2 = law_suite(&relabeled);
        for (x, y) in l1.outcomes.iter().zip(l2.outcomes.iter()) {
            prop_assert_eq!(verdict_kind(&x.verdict), verdict_kind(&y.verdict), "law {}", x.id);
        }
        let c1 = classify(&m);
        let c2 = classify(&relabeled);
        prop_assert_eq!(c1.verdicts, c2.verdicts);
        prop_assert_eq!(c1.disagreements.len(), 0);
        prop_assert_eq!(c2.disagreements.len(), 0);
    }

    #[test]
    fn equation_verdicts_are_invariant_under_relabeling(
        name in proptest::sample::select(vec!["gf2^2", "gf4", "dualnum2", "n4paper"]),
        src in proptest::sample::select(vec![
            "x*y = y*x",
            "p(x,y,z) = p(z,~y,x)",
            "x+x = 0",
            "x@~x = 1",
            "x*(y+z) = (x*y)+(x*z)",
            "x + p(x,y,z) = y*(x+z)",
        ]),
        seed in any::<u64>(),
    ) {
        let m = catalog_model(name).unwrap();
        let sigma = seeded_constant_fixing_perm(&m, seed);
        let relabeled = m.relabel(&sigma).unwrap();
        let eq = tba::term::parse_equation(src).unwrap();
        prop_assert_eq!(
            check_equation(&m, &eq).holds(),
            check_equation(&relabeled, &eq).holds(),
            "equation {}", src
        );
    }
}

#[test]
fn lemma_identities_hold_directly_on_catalog_models() {
    // spot checks of the derived-operation identities straight from the
    // tables, complementing the equation-based law suite
    for name in ["gf2", "gf2^2", "gf4", "dualnum2", "z4affine", "n4paper", "ut2gf2"] {
        let m = catalog_model(name).unwrap();
        let ops = m.derived_ops();
        let n = m.size();
        assert_eq!(ops.bar(m.zero()), m.one(), "{name}");
        assert_eq!(ops.bar(m.one()), m.zero(), "{name}");
        for a in 0..n {
            assert_eq!(ops.bar(ops.bar(a)), a, "{name}");
            assert_eq!(ops.dot(a, m.zero()), m.zero(), "{name}");
            assert_eq!(ops.dot(m.zero(), a), m.zero(), "{name}");
            assert_eq!(ops.circ(a, m.one()), m.one(), "{name}");
            assert_eq!(ops.circ(m.one(), a), m.one(), "{name}");
            assert_eq!(ops.plus(a, m.one()), ops.bar(a), "{name}");
            assert_eq!(ops.plus(m.one(), a), ops.bar(a), "{name}");
            for b in 0..n {
                assert_eq!(ops.bar(ops.dot(a, b)), ops.circ(ops.bar(b), ops.bar(a)), "{name}");
                assert_eq!(ops.bar(ops.circ(a, b)), ops.dot(ops.bar(b), ops.bar(a)), "{name}");
                assert_eq!(ops.bar(ops.plus(a, b)), ops.plus(ops.bar(a), b), "{name}");
                assert_eq!(ops.bar(ops.plus(a, b)), ops.plus(a, ops.bar(b)), "{name}");
                for c in 0..n {
                    assert_eq!(m.p(a, b, c), m.p(c, ops.bar(b), a), "{name}");
                    assert_eq!(ops.bar(m.p(a, b, c)), m.p(ops.bar(a), b, ops.bar(c)), "{name}");
                }
            }
        }
    }
}
