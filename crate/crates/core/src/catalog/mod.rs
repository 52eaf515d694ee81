//! Named inference principles with their expected status in `C` and `U`,
//! and a report comparing expectations with computed verdicts.

mod meta;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use meta::{meta_rule_check, MetaOutcome, MetaRule};

use crate::consequence::{Checker, Logic, Sequent, Status};
use crate::error::Result;
use crate::formula::Formula;
use crate::semantics::{SemanticsConfig, Valuation, ValuationMode};

/// Default formula depth for meta-rule checks.
pub const DEFAULT_META_DEPTH: usize = 2;

/// Three-way mark: valid, valid for classical atoms only, or invalid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mark {
    Valid,
    BivalentOnly,
    Invalid,
}

impl Mark {
    pub fn expected(self, mode: ValuationMode) -> Status {
        match (self, mode) {
            (Mark::Valid, _) | (Mark::BivalentOnly, ValuationMode::Bivalent) => Status::Valid,
            _ => Status::Invalid,
        }
    }

    pub fn from_statuses(trivalent: Status, bivalent: Status) -> Self {
        match (trivalent, bivalent) {
            (Status::Valid, _) => Mark::Valid,
            (Status::Invalid, Status::Valid) => Mark::BivalentOnly,
            (Status::Invalid, Status::Invalid) => Mark::Invalid,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Mark::Valid => "v",
            Mark::BivalentOnly => "(v)",
            Mark::Invalid => "x",
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Desirable,
    Disputed,
    Connexive,
    Undesirable,
    /// Instances with nested conditionals, beyond the one-atom-per-letter
    /// instantiation of the named rows.
    NestedFixture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Sequent {
        premises: &'static [&'static str],
        conclusion: &'static str,
    },
    Theorem(&'static str),
    /// Mutual entailment of two schemas.
    Equivalence(&'static str, &'static str),
    MetaRule(MetaRule),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Principle {
    pub name: &'static str,
    pub group: Group,
    pub shape: Shape,
    pub c: Mark,
    pub u: Mark,
}

/// Schema letters become lowercase atoms: `A` to `a` and so on.
fn instantiate(schema: &str) -> Result<Formula> {
    let f = Formula::parse_schema(schema)?;
    let binding: BTreeMap<String, Formula> = f
        .atoms()
        .into_iter()
        .map(|name| {
            let atom = Formula::atom(&name.to_ascii_lowercase());
            (name, atom)
        })
        .collect();
    f.substitute(&binding)
}

impl Principle {
    pub fn mark(&self, logic: Logic) -> Option<Mark> {
        match logic {
            Logic::C => Some(self.c),
            Logic::U => Some(self.u),
            Logic::SS => None,
        }
    }

    /// Sequents whose joint validity the principle asserts; empty for
    /// meta-rules.
    pub fn instances(&self) -> Result<Vec<Sequent>> {
        Ok(match &self.shape {
            Shape::Sequent { premises, conclusion } => {
                let premises = premises.iter().map(|p| instantiate(p)).collect::<Result<_>>()?;
                vec![Sequent::new(premises, instantiate(conclusion)?)]
            }
            Shape::Theorem(f) => vec![Sequent::theorem(instantiate(f)?)],
            Shape::Equivalence(l, r) => {
                let (l, r) = (instantiate(l)?, instantiate(r)?);
                vec![Sequent::new(vec![l.clone()], r.clone()), Sequent::new(vec![r], l)]
            }
            Shape::MetaRule(_) => Vec::new(),
        })
    }

    pub fn describe(&self) -> String {
        match &self.shape {
            Shape::Sequent { premises, conclusion } => format!("{} |- {}", premises.join("; "), conclusion),
            Shape::Theorem(f) => format!("|- {f}"),
            Shape::Equivalence(l, r) => format!("{l} -||- {r}"),
            Shape::MetaRule(rule) => format!("rule: {rule:?}"),
        }
    }
}

macro_rules! seq {
    ([$($p:expr),*] => $c:expr) => {
        Shape::Sequent { premises: &[$($p),*], conclusion: $c }
    };
}

fn row(name: &'static str, group: Group, shape: Shape, c: Mark, u: Mark) -> Principle {
    Principle {
        name,
        group,
        shape,
        c,
        u,
    }
}

/// The named principles, in table order.
pub fn principles() -> Vec<Principle> {
    use Group::*;
    use Mark::{BivalentOnly as B, Invalid as X, Valid as V};
    vec![
        row("Logical Truth", Desirable, Shape::Theorem("A -> T"), V, V),
        row("Law of Identity", Desirable, Shape::Theorem("A -> A"), V, V),
        row(
            "Supraclassicality (Laws)",
            Desirable,
            Shape::MetaRule(MetaRule::SupraclassicalityLaws),
            B,
            B,
        ),
        row(
            "Left Logical Equivalence",
            Desirable,
            Shape::MetaRule(MetaRule::LeftLogicalEquivalence),
            V,
            V,
        ),
        row("Stronger-Than-Material", Desirable, seq!(["A -> B"] => "~A | B"), B, B),
        row("Conjunctive Sufficiency", Desirable, seq!(["A", "B"] => "A -> B"), V, B),
        row("AND", Desirable, seq!(["A -> B", "A -> C"] => "A -> B & C"), V, V),
        row("OR", Desirable, seq!(["A -> C", "B -> C"] => "A | B -> C"), V, B),
        row(
            "Cautious Transitivity",
            Desirable,
            seq!(["A -> B", "A & B -> C"] => "A -> C"),
            V,
            B,
        ),
        row(
            "Cautious Monotonicity",
            Desirable,
            seq!(["A -> B", "A -> C"] => "A & C -> B"),
            V,
            V,
        ),
        row(
            "Rational Monotonicity",
            Desirable,
            seq!(["A -> B", "~(A -> ~C)"] => "A & C -> B"),
            V,
            V,
        ),
        row(
            "Reciprocity",
            Desirable,
            seq!(["A -> B", "B -> A"] => "((A -> C) => (B -> C)) & ((B -> C) => (A -> C))"),
            V,
            B,
        ),
        row(
            "Right Weakening",
            Desirable,
            Shape::MetaRule(MetaRule::RightWeakening),
            V,
            B,
        ),
        row(
            "Rule of Conditional K",
            Desirable,
            Shape::MetaRule(MetaRule::ConditionalK),
            V,
            B,
        ),
        row(
            "Supraclassicality (Inferences)",
            Disputed,
            Shape::MetaRule(MetaRule::SupraclassicalityInferences),
            X,
            X,
        ),
        row("Modus Ponens", Disputed, seq!(["A -> B", "A"] => "B"), V, B),
        row("Modus Tollens", Disputed, seq!(["A -> B", "~B"] => "~A"), B, B),
        row(
            "Simplifying Disjunctive Antecedents",
            Disputed,
            seq!(["A | B -> C"] => "(A -> C) & (B -> C)"),
            B,
            B,
        ),
        row(
            "Import-Export",
            Disputed,
            Shape::Equivalence("A -> B -> C", "A & B -> C"),
            V,
            V,
        ),
        row("Or-to-If", Disputed, seq!(["~A | B"] => "A -> B"), V, X),
        row(
            "Conditional Excluded Middle",
            Disputed,
            Shape::Theorem("(A -> B) | (A -> ~B)"),
            V,
            V,
        ),
        row("Aristotle's Thesis", Connexive, Shape::Theorem("~(~A -> A)"), V, V),
        row(
            "Boethius's Thesis",
            Connexive,
            Shape::Theorem("(A -> C) -> ~(A -> ~C)"),
            V,
            V,
        ),
        row("Contraposition", Undesirable, seq!(["A -> C"] => "~C -> ~A"), B, X),
        row("Monotonicity", Undesirable, seq!(["A -> C"] => "A & B -> C"), V, X),
        row(
            "Transitivity",
            Undesirable,
            seq!(["A -> B", "B -> C"] => "A -> C"),
            V,
            X,
        ),
    ]
}

/// Instances where a letter is itself a conditional, or where classical
/// atoms are not enough to rescue an inference.
pub fn nested_fixtures() -> Vec<Principle> {
    use Group::NestedFixture as N;
    use Mark::{BivalentOnly as B, Invalid as X, Valid as V};
    vec![
        row(
            "Modus Ponens, nested consequent",
            N,
            seq!(["a -> b -> c", "a"] => "b -> c"),
            V,
            X,
        ),
        row(
            "Modus Tollens, nested consequent",
            N,
            seq!(["a -> b -> c", "~(b -> c)"] => "~a"),
            X,
            X,
        ),
        row(
            "Modus Ponens, election",
            N,
            seq!(["a | b -> ~a -> b", "a | b"] => "~a -> b"),
            V,
            X,
        ),
        row("Or-to-If, election", N, seq!(["a | b"] => "~a -> b"), V, X),
        row("Disjunction Introduction", N, seq!(["a"] => "a | b"), B, B),
        row(
            "Disjunction Introduction, nested",
            N,
            seq!(["a -> b"] => "(a -> b) | c"),
            X,
            X,
        ),
        row("Explosion", N, seq!(["a & ~a"] => "b"), B, B),
        row("Explosion, nested", N, seq!(["(a -> b) & ~(a -> b)"] => "c"), X, X),
    ]
}

/// Looks a principle up by name, ignoring case.
pub fn find(name: &str) -> Option<Principle> {
    principles()
        .into_iter()
        .chain(nested_fixtures())
        .find(|p| p.name.eq_ignore_ascii_case(name))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipleVerdict {
    pub status: Status,
    /// The failing instance, rendered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<Valuation>,
    /// For meta-rules without a violation: instances checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances_checked: Option<u64>,
}

pub fn evaluate_principle(
    p: &Principle,
    logic: Logic,
    mode: ValuationMode,
    cfg: SemanticsConfig,
) -> Result<PrincipleVerdict> {
    evaluate_principle_at(p, logic, mode, cfg, DEFAULT_META_DEPTH)
}

/// As [`evaluate_principle`], with an explicit meta-rule depth bound.
pub fn evaluate_principle_at(
    p: &Principle,
    logic: Logic,
    mode: ValuationMode,
    cfg: SemanticsConfig,
    depth: usize,
) -> Result<PrincipleVerdict> {
    if let Shape::MetaRule(rule) = p.shape {
        return Ok(match meta_rule_check(rule, logic, mode, depth, cfg)? {
            MetaOutcome::NoViolationFound { instances, .. } => PrincipleVerdict {
                status: Status::Valid,
                instance: None,
                countermodel: None,
                instances_checked: Some(instances),
            },
            MetaOutcome::Violation { instance, countermodel } => PrincipleVerdict {
                status: Status::Invalid,
                instance: Some(instance),
                countermodel: Some(countermodel),
                instances_checked: None,
            },
        });
    }
    let checker = Checker::new(cfg, mode);
    for s in p.instances()? {
        let v = checker.entails(logic, &s)?;
        if !v.is_valid() {
            return Ok(PrincipleVerdict {
                status: Status::Invalid,
                instance: Some(s.to_string()),
                countermodel: v.countermodel,
                instances_checked: None,
            });
        }
    }
    Ok(PrincipleVerdict {
        status: Status::Valid,
        instance: None,
        countermodel: None,
        instances_checked: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub name: &'static str,
    pub group: Group,
    pub logic: Logic,
    pub mode: ValuationMode,
    pub expected: Status,
    pub computed: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<Valuation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub semantics: SemanticsConfig,
    pub meta_depth: usize,
    pub rows: Vec<ReportRow>,
    pub mismatches: usize,
}

impl Report {
    pub fn mismatched(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    /// One line per principle: computed marks for C and U, with the
    /// expected mark in brackets where they differ.
    pub fn to_text(&self) -> String {
        let mut by_name: Vec<(&str, [Option<&ReportRow>; 4])> = Vec::new();
        for r in &self.rows {
            let slot = match (r.logic, r.mode) {
                (Logic::C, ValuationMode::Trivalent) => 0,
                (Logic::C, ValuationMode::Bivalent) => 1,
                (Logic::U, ValuationMode::Trivalent) => 2,
                _ => 3,
            };
            match by_name.iter_mut().find(|(n, _)| *n == r.name) {
                Some((_, cells)) => cells[slot] = Some(r),
                None => {
                    let mut cells = [None; 4];
                    cells[slot] = Some(r);
                    by_name.push((r.name, cells));
                }
            }
        }
        let width = by_name.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        let mut out = format!("{:width$}  {:9}  {:9}\n", "principle", "C", "U");
        for (name, cells) in &by_name {
            let mark = |t: Option<&ReportRow>, b: Option<&ReportRow>| -> String {
                let (Some(t), Some(b)) = (t, b) else { return "-".into() };
                let computed = Mark::from_statuses(t.computed, b.computed);
                let expected = Mark::from_statuses(t.expected, b.expected);
                if computed == expected {
                    computed.to_string()
                } else {
                    format!("{computed} [{expected}]")
                }
            };
            out += &format!(
                "{name:width$}  {:9}  {:9}\n",
                mark(cells[0], cells[1]),
                mark(cells[2], cells[3])
            );
        }
        out += &format!("mismatches: {}\n", self.mismatches);
        out
    }
}

/// Every principle and fixture under `C` and `U`, trivalent and bivalent.
pub fn full_report(cfg: SemanticsConfig) -> Result<Report> {
    full_report_at(cfg, DEFAULT_META_DEPTH)
}

pub fn full_report_at(cfg: SemanticsConfig, depth: usize) -> Result<Report> {
    let mut rows = Vec::new();
    for p in principles().iter().chain(nested_fixtures().iter()) {
        for logic in [Logic::C, Logic::U] {
            let mark = p.mark(logic).expect("C and U are always marked");
            for mode in [ValuationMode::Trivalent, ValuationMode::Bivalent] {
                let v = evaluate_principle_at(p, logic, mode, cfg, depth)?;
                rows.push(ReportRow {
                    name: p.name,
                    group: p.group,
                    logic,
                    mode,
                    expected: mark.expected(mode),
                    computed: v.status,
                    countermodel: v.countermodel,
                    instance: v.instance,
                });
            }
        }
    }
    let mismatches = rows.iter().filter(|r| !r.matches()).count();
    Ok(Report {
        semantics: cfg,
        meta_depth: depth,
        rows,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ValuationMode::{Bivalent, Trivalent};

    const CQ: SemanticsConfig = SemanticsConfig::COOPER_QUASI;

    fn status(name: &str, logic: Logic, mode: ValuationMode) -> Status {
        evaluate_principle(&find(name).unwrap(), logic, mode, CQ)
            .unwrap()
            .status
    }

    #[test]
    fn table_shape() {
        let all = principles();
        assert_eq!(all.len(), 26);
        let mut names: Vec<_> = all.iter().map(|p| p.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 26);
        assert_eq!(all.first().unwrap().name, "Logical Truth");
        assert_eq!(all.last().unwrap().name, "Transitivity");
        for p in all.iter().chain(nested_fixtures().iter()) {
            p.instances().unwrap();
        }
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(status("Conjunctive Sufficiency", Logic::U, Bivalent), Status::Valid);
        assert_eq!(status("Conjunctive Sufficiency", Logic::U, Trivalent), Status::Invalid);
        assert_eq!(status("Contraposition", Logic::C, Bivalent), Status::Valid);
        assert_eq!(status("Contraposition", Logic::U, Bivalent), Status::Invalid);
        assert_eq!(status("Import-Export", Logic::U, Trivalent), Status::Valid);
        assert_eq!(status("Or-to-If", Logic::C, Trivalent), Status::Valid);
        for mode in [Trivalent, Bivalent] {
            assert_eq!(status("or-to-if", Logic::U, mode), Status::Invalid);
        }
    }

    #[test]
    fn instantiation_uses_fresh_lowercase_atoms() {
        let s = &find("Modus Ponens").unwrap().instances().unwrap()[0];
        assert_eq!(s.to_string(), "a -> b; a |- b");
        let ie = find("Import-Export").unwrap().instances().unwrap();
        assert_eq!(ie.len(), 2);
        assert_eq!(ie[1].to_string(), "a & b -> c |- a -> b -> c");
    }

    #[test]
    fn marks() {
        assert_eq!(Mark::BivalentOnly.expected(Trivalent), Status::Invalid);
        assert_eq!(Mark::BivalentOnly.expected(Bivalent), Status::Valid);
        assert_eq!(Mark::from_statuses(Status::Invalid, Status::Valid), Mark::BivalentOnly);
    }
}
