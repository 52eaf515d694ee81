//! Bounded checks of rule-level principles over formula pools on `{a, b}`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::consequence::{c_violation, u_holds, Checker, Logic, Sequent};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pool::{FormulaPool, PoolEntry};
use crate::semantics::{SemanticsConfig, TruthValue, Valuation, ValuationMode, F0, HALF, T1};

const ATOMS: [&str; 2] = ["a", "b"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetaRule {
    /// Classical tautologies without `->` are theorems.
    SupraclassicalityLaws,
    /// Classical consequence, with `->` read materially, carries over.
    SupraclassicalityInferences,
    /// `A ⊨_C B` and `B ⊨_C A` give `A -> C ⊨ B -> C`.
    LeftLogicalEquivalence,
    /// `B ⊨_C C` gives `A -> B ⊨ A -> C`.
    RightWeakening,
    /// `A1, ..., An ⊨_C C` gives `B -> A1, ..., B -> An ⊨ B -> C`, for
    /// `n ∈ {1, 2}`.
    ConditionalK,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MetaOutcome {
    NoViolationFound { depth: usize, instances: u64 },
    Violation { instance: String, countermodel: Valuation },
}

impl MetaOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, MetaOutcome::Violation { .. })
    }
}

impl fmt::Display for MetaOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaOutcome::NoViolationFound { depth, instances } => {
                write!(f, "verified at depth {depth} ({instances} instances)")
            }
            MetaOutcome::Violation { instance, countermodel } => {
                write!(f, "violation found: {instance} at {countermodel}")
            }
        }
    }
}

struct Ctx {
    logic: Logic,
    mode: ValuationMode,
    cfg: SemanticsConfig,
    instances: u64,
}

impl Ctx {
    fn holds(&mut self, premises: &[&[TruthValue]], conclusion: &[TruthValue]) -> bool {
        self.instances += 1;
        match self.logic {
            Logic::C => c_violation(premises, conclusion).is_none(),
            Logic::U => u_holds(premises, conclusion, self.cfg),
            Logic::SS => unreachable!("rejected on entry"),
        }
    }

    fn cond(&self, x: &[TruthValue], y: &[TruthValue]) -> Vec<TruthValue> {
        x.iter().zip(y).map(|(u, v)| self.cfg.cond(*u, *v)).collect()
    }

    fn violation(&self, premises: Vec<Formula>, conclusion: Formula) -> Result<MetaOutcome> {
        let instance = Sequent::new(premises, conclusion);
        let verdict = Checker::new(self.cfg, self.mode).entails(self.logic, &instance)?;
        let countermodel = verdict
            .countermodel
            .expect("table-level failure must reproduce on the concrete instance");
        Ok(MetaOutcome::Violation {
            instance: instance.to_string(),
            countermodel,
        })
    }
}

fn entails_c(premise: &[TruthValue], conclusion: &[TruthValue]) -> bool {
    c_violation(&[premise], conclusion).is_none()
}

/// Entries whose conditional behaviour as antecedent differs.
fn antecedent_reps(pool: &FormulaPool, cfg: SemanticsConfig) -> Vec<&PoolEntry> {
    let mut seen = std::collections::HashSet::new();
    pool.entries()
        .iter()
        .filter(|e| {
            let key: Vec<[TruthValue; 3]> = e
                .table
                .iter()
                .map(|&x| [cfg.cond(x, F0), cfg.cond(x, HALF), cfg.cond(x, T1)])
                .collect();
            seen.insert(key)
        })
        .collect()
}

/// Checks every instance of `rule` built from formulas over `{a, b}` of
/// depth at most `depth`, stopping at the first violation.
///
/// In bivalent mode schema letters range over conditional-free formulas,
/// except for [`MetaRule::SupraclassicalityInferences`], whose premises may
/// contain conditionals in any mode.
pub fn meta_rule_check(
    rule: MetaRule,
    logic: Logic,
    mode: ValuationMode,
    depth: usize,
    cfg: SemanticsConfig,
) -> Result<MetaOutcome> {
    if logic == Logic::SS {
        return Err(Error::InvalidSequent("meta-rules are checked for C and U only".into()));
    }
    let conditionals = mode == ValuationMode::Trivalent;
    let mut ctx = Ctx {
        logic,
        mode,
        cfg,
        instances: 0,
    };
    let found = match rule {
        MetaRule::SupraclassicalityLaws => {
            let pool = FormulaPool::build(&ATOMS, depth, cfg, mode, false)?;
            supra_laws(&mut ctx, &pool)?
        }
        MetaRule::SupraclassicalityInferences => {
            let pool = FormulaPool::build_with_material(&ATOMS, depth, cfg, mode)?;
            let small = FormulaPool::build_with_material(&ATOMS, 1, cfg, mode)?;
            supra_inferences(&mut ctx, &pool, &small)?
        }
        MetaRule::LeftLogicalEquivalence => {
            let pool = FormulaPool::build(&ATOMS, depth, cfg, mode, conditionals)?;
            left_equivalence(&mut ctx, &pool)?
        }
        MetaRule::RightWeakening => {
            let pool = FormulaPool::build(&ATOMS, depth, cfg, mode, conditionals)?;
            right_weakening(&mut ctx, &pool)?
        }
        MetaRule::ConditionalK => {
            let pool = FormulaPool::build(&ATOMS, depth, cfg, mode, conditionals)?;
            match right_weakening(&mut ctx, &pool)? {
                Some(v) => Some(v),
                None => {
                    let small = FormulaPool::build(&ATOMS, 1, cfg, mode, conditionals)?;
                    conditional_k2(&mut ctx, &pool, &small)?
                }
            }
        }
    };
    Ok(found.unwrap_or(MetaOutcome::NoViolationFound {
        depth,
        instances: ctx.instances,
    }))
}

fn supra_laws(ctx: &mut Ctx, pool: &FormulaPool) -> Result<Option<MetaOutcome>> {
    let classical = pool.classical_worlds();
    for e in pool.entries() {
        if classical.iter().all(|&w| e.material[w] == T1) && !ctx.holds(&[], &e.table) {
            return ctx.violation(Vec::new(), e.formula.clone()).map(Some);
        }
    }
    Ok(None)
}

fn supra_inferences(ctx: &mut Ctx, pool: &FormulaPool, small: &FormulaPool) -> Result<Option<MetaOutcome>> {
    let classical = pool.classical_worlds();
    let follows = |premises: &[&PoolEntry], b: &PoolEntry| {
        classical
            .iter()
            .all(|&w| b.material[w] == T1 || premises.iter().any(|p| p.material[w] != T1))
    };
    for a in pool.entries() {
        for b in pool.entries() {
            if follows(&[a], b) && !ctx.holds(&[&a.table], &b.table) {
                return ctx.violation(vec![a.formula.clone()], b.formula.clone()).map(Some);
            }
        }
    }
    for a1 in small.entries() {
        for a2 in small.entries() {
            for b in small.entries() {
                if follows(&[a1, a2], b) && !ctx.holds(&[&a1.table, &a2.table], &b.table) {
                    let premises = vec![a1.formula.clone(), a2.formula.clone()];
                    return ctx.violation(premises, b.formula.clone()).map(Some);
                }
            }
        }
    }
    Ok(None)
}

fn left_equivalence(ctx: &mut Ctx, pool: &FormulaPool) -> Result<Option<MetaOutcome>> {
    // group by non-false pattern, i.e. mutual C-entailment
    let reps = antecedent_reps(pool, ctx.cfg);
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut groups: Vec<Vec<&PoolEntry>> = Vec::new();
    for e in reps {
        let key: Vec<bool> = e.table.iter().map(|v| v.is_non_false()).collect();
        let slot = *index.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(e);
    }
    for group in &groups {
        for a in group {
            for b in group {
                for c in pool.entries() {
                    let premise = ctx.cond(&a.table, &c.table);
                    let conclusion = ctx.cond(&b.table, &c.table);
                    if !ctx.holds(&[&premise], &conclusion) {
                        let p = Formula::cond(a.formula.clone(), c.formula.clone());
                        let q = Formula::cond(b.formula.clone(), c.formula.clone());
                        return ctx.violation(vec![p], q).map(Some);
                    }
                }
            }
        }
    }
    Ok(None)
}

fn right_weakening(ctx: &mut Ctx, pool: &FormulaPool) -> Result<Option<MetaOutcome>> {
    let reps = antecedent_reps(pool, ctx.cfg);
    for b in pool.entries() {
        for c in pool.entries() {
            if !entails_c(&b.table, &c.table) {
                continue;
            }
            for a in &reps {
                let premise = ctx.cond(&a.table, &b.table);
                let conclusion = ctx.cond(&a.table, &c.table);
                if !ctx.holds(&[&premise], &conclusion) {
                    let p = Formula::cond(a.formula.clone(), b.formula.clone());
                    let q = Formula::cond(a.formula.clone(), c.formula.clone());
                    return ctx.violation(vec![p], q).map(Some);
                }
            }
        }
    }
    Ok(None)
}

fn conditional_k2(ctx: &mut Ctx, pool: &FormulaPool, small: &FormulaPool) -> Result<Option<MetaOutcome>> {
    let reps = antecedent_reps(pool, ctx.cfg);
    for a1 in small.entries() {
        for a2 in small.entries() {
            for c in small.entries() {
                if c_violation(&[&a1.table, &a2.table], &c.table).is_some() {
                    continue;
                }
                for b in &reps {
                    let p1 = ctx.cond(&b.table, &a1.table);
                    let p2 = ctx.cond(&b.table, &a2.table);
                    let conclusion = ctx.cond(&b.table, &c.table);
                    if !ctx.holds(&[&p1, &p2], &conclusion) {
                        let premises = vec![
                            Formula::cond(b.formula.clone(), a1.formula.clone()),
                            Formula::cond(b.formula.clone(), a2.formula.clone()),
                        ];
                        let q = Formula::cond(b.formula.clone(), c.formula.clone());
                        return ctx.violation(premises, q).map(Some);
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CQ: SemanticsConfig = SemanticsConfig::COOPER_QUASI;
    use ValuationMode::{Bivalent, Trivalent};

    fn check(rule: MetaRule, logic: Logic, mode: ValuationMode, depth: usize) -> MetaOutcome {
        meta_rule_check(rule, logic, mode, depth, CQ).unwrap()
    }

    #[test]
    fn supraclassical_laws() {
        assert!(!check(MetaRule::SupraclassicalityLaws, Logic::C, Bivalent, 3).is_violation());
        let v = check(MetaRule::SupraclassicalityLaws, Logic::C, Trivalent, 2);
        assert!(v.is_violation());
    }

    #[test]
    fn explosion_breaks_supraclassical_inferences() {
        for mode in [Trivalent, Bivalent] {
            for logic in [Logic::C, Logic::U] {
                assert!(check(MetaRule::SupraclassicalityInferences, logic, mode, 2).is_violation());
            }
        }
    }

    #[test]
    fn right_weakening_fails_trivalent_u_only() {
        assert!(check(MetaRule::RightWeakening, Logic::U, Trivalent, 2).is_violation());
        assert!(!check(MetaRule::RightWeakening, Logic::U, Bivalent, 2).is_violation());
        assert!(!check(MetaRule::RightWeakening, Logic::C, Trivalent, 1).is_violation());
    }

    #[test]
    fn left_equivalence_holds() {
        for mode in [Trivalent, Bivalent] {
            let out = check(MetaRule::LeftLogicalEquivalence, Logic::U, mode, 2);
            assert!(matches!(out, MetaOutcome::NoViolationFound { instances, .. } if instances > 0));
        }
    }

    #[test]
    fn rejects_ss_and_deep_bounds() {
        assert!(meta_rule_check(MetaRule::RightWeakening, Logic::SS, Trivalent, 1, CQ).is_err());
        assert!(matches!(
            meta_rule_check(MetaRule::RightWeakening, Logic::C, Trivalent, 4, CQ),
            Err(Error::BoundTooLarge { .. })
        ));
    }
}
