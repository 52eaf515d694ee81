mod common;

use common::*;
use trivalent::catalog::{evaluate_principle, find, full_report, nested_fixtures, principles, Group, Mark, Shape};
use trivalent::{eval, Checker, Formula, Logic, SemanticsConfig, Sequent, Status, TruthValue, ValuationMode};

use ValuationMode::{Bivalent, Trivalent};

const CQ: SemanticsConfig = SemanticsConfig::COOPER_QUASI;

fn oracle_c_valid(s: &Sequent, values: &[V]) -> bool {
    let ws = worlds(&sequent_atoms(s), values);
    ws.iter().all(|w| {
        s.premises.iter().any(|p| oracle_eval(p, w, &COOPER_QUASI) == 0)
            || oracle_eval(&s.conclusion, w, &COOPER_QUASI) > 0
    })
}

fn subformulas(f: &Formula, out: &mut Vec<Formula>) {
    out.push(f.clone());
    match f {
        Formula::Not(x) => subformulas(x, out),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Cond(x, y) => {
            subformulas(x, out);
            subformulas(y, out);
        }
        _ => {}
    }
}

#[test]
fn bivalent_only_rows_fail_at_an_indeterminate_sentence() {
    for p in principles().iter().chain(nested_fixtures().iter()) {
        for logic in [Logic::C, Logic::U] {
            if p.mark(logic) != Some(Mark::BivalentOnly) {
                continue;
            }
            let t = evaluate_principle(p, logic, Trivalent, CQ).unwrap();
            assert_eq!(t.status, Status::Invalid, "{} in {logic}", p.name);
            let cm = t.countermodel.expect("invalid verdicts carry a countermodel");
            match p.shape {
                Shape::MetaRule(_) => {
                    // the indeterminate sentence is a formula substituted for a letter
                    let s = Sequent::parse(&t.instance.unwrap()).unwrap();
                    let mut parts = Vec::new();
                    s.formulas().for_each(|f| subformulas(f, &mut parts));
                    assert!(
                        parts
                            .iter()
                            .any(|f| eval(f, &cm, CQ).unwrap() == TruthValue::Indeterminate),
                        "{} in {logic}: {s} at {cm}",
                        p.name
                    );
                }
                _ => assert!(cm.indeterminate_count() > 0, "{} in {logic}: {cm}", p.name),
            }
            assert_eq!(
                evaluate_principle(p, logic, Bivalent, CQ).unwrap().status,
                Status::Valid,
                "{}",
                p.name
            );
        }
    }
}

#[test]
fn invalid_rows_fail_with_classical_atoms() {
    for p in principles() {
        for logic in [Logic::C, Logic::U] {
            if p.mark(logic) == Some(Mark::Invalid) {
                let v = evaluate_principle(&p, logic, Bivalent, CQ).unwrap();
                assert_eq!(v.status, Status::Invalid, "{} in {logic}", p.name);
                assert_eq!(v.countermodel.unwrap().indeterminate_count(), 0);
            }
        }
    }
}

#[test]
fn connexive_theses_never_take_the_value_false() {
    for p in principles().iter().filter(|p| p.group == Group::Connexive) {
        let Shape::Theorem(_) = p.shape else {
            panic!("{} is a theorem", p.name)
        };
        let f = &p.instances().unwrap()[0].conclusion;
        let ws = worlds(&f.atoms().into_iter().collect::<Vec<_>>(), &[0, 1, 2]);
        assert!(ws.iter().all(|w| oracle_eval(f, w, &COOPER_QUASI) > 0), "{}", p.name);
        assert!(Checker::default().is_theorem_c(f).unwrap().is_valid());
    }
}

#[test]
fn system_p_holds_for_classical_atoms() {
    for name in [
        "Law of Identity",
        "AND",
        "OR",
        "Cautious Monotonicity",
        "Left Logical Equivalence",
        "Right Weakening",
    ] {
        let p = find(name).unwrap();
        assert_eq!(
            evaluate_principle(&p, Logic::U, Bivalent, CQ).unwrap().status,
            Status::Valid,
            "{name}"
        );
    }
}

#[test]
fn c_column_agrees_with_reference_evaluator() {
    for p in principles().iter().chain(nested_fixtures().iter()) {
        if let Shape::MetaRule(_) = p.shape {
            continue;
        }
        let instances = p.instances().unwrap();
        for (mode, values) in [(Trivalent, &[0u8, 1, 2][..]), (Bivalent, &[0u8, 2][..])] {
            let reference = instances.iter().all(|s| oracle_c_valid(s, values));
            let expected = p.c.expected(mode) == Status::Valid;
            assert_eq!(reference, expected, "{} ({mode:?})", p.name);
        }
    }
}

#[test]
fn only_the_monotonicity_rows_disagree_with_the_table() {
    let report = full_report(CQ).unwrap();
    let mut off: Vec<_> = report.mismatched().map(|r| (r.name, r.logic, r.mode)).collect();
    off.sort_by_key(|r| r.0);
    assert_eq!(
        off,
        vec![
            ("Cautious Monotonicity", Logic::U, Trivalent),
            ("Rational Monotonicity", Logic::U, Trivalent),
        ]
    );
    for r in report.mismatched() {
        let cm = r.countermodel.as_ref().unwrap();
        assert_eq!(cm.get("b"), Some(TruthValue::Indeterminate));
    }
}

#[test]
fn definetti_loses_modus_ponens() {
    let p = find("Modus Ponens").unwrap();
    let v = evaluate_principle(&p, Logic::C, Trivalent, SemanticsConfig::DEFINETTI_QUASI).unwrap();
    assert_eq!(v.status, Status::Invalid);
    assert_eq!(v.countermodel.unwrap().to_string(), "a=1/2,b=0");
}

#[test]
fn strong_kleene_makes_partitions_indeterminate() {
    let f = Formula::parse("(a -> a) & (~a -> ~a)").unwrap();
    let cem = Formula::parse("(a -> b) | (a -> ~b)").unwrap();
    let cfg = SemanticsConfig::COOPER_SK;
    let table = trivalent::truth_table(&f, cfg, Trivalent, &Default::default()).unwrap();
    assert!(table.rows.iter().all(|r| r.value == TruthValue::Indeterminate));
    let v = trivalent::Valuation::parse("a=0,b=1", Trivalent).unwrap();
    assert_eq!(eval(&cem, &v, cfg).unwrap(), TruthValue::Indeterminate);
    // still never false, so it remains a theorem of C
    let checker = Checker::new(cfg, Trivalent);
    assert!(checker.is_theorem_c(&cem).unwrap().is_valid());
    assert!(!checker.entails_ss(&Formula::Top, &cem).unwrap().is_valid());
}
