//! Worked examples: the three-candidate election, and a credence on which
//! `p(a → c)` and `p(c)` come apart.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{conditional_probability, probability, probability_of_table, Credence, CredenceSampler};
use crate::error::Result;
use crate::formula::Formula;
use crate::pool::FormulaPool;
use crate::scalar::Scalar;
use crate::semantics::{SemanticsConfig, Valuation, ValuationMode, F0, T1};

/// `lhs = p(target | given)`; `rhs` is its expansion over `split` and `¬split`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalProbability<S> {
    pub lhs: S,
    pub rhs: S,
}

impl<S: Scalar> TotalProbability<S> {
    pub fn holds(&self) -> bool {
        self.lhs.approx_eq(&self.rhs)
    }
}

/// `p(C|B) = p(C|A∧B) p(A|B) + p(C|¬A∧B) (1 − p(A|B))`, skipping terms whose
/// condition has zero mass. All formulas must be conditional-free and the
/// credence bivalent.
pub fn total_probability<S: Scalar>(
    target: &Formula,
    given: &Formula,
    split: &Formula,
    cr: &Credence<S>,
) -> Result<TotalProbability<S>> {
    let lhs = conditional_probability(target, given, cr)?;
    let mut rhs = S::zero();
    for part in [split.clone(), Formula::not(split.clone())] {
        let weight = conditional_probability(&part, given, cr)?;
        if weight.is_zero() {
            continue;
        }
        let narrowed = Formula::and(part, given.clone());
        rhs = rhs + conditional_probability(target, &narrowed, cr)? * weight;
    }
    Ok(TotalProbability { lhs, rhs })
}

#[derive(Clone, Debug)]
pub struct McgeeReport<S> {
    pub credence: Credence<S>,
    /// `(r | n) -> (~r -> n)`
    pub nested_premise: S,
    /// `r | n`
    pub disjunctive_premise: S,
    /// `~r -> n`
    pub conclusion: S,
    /// `p(n) = p(n | r∨n) p(r∨n) + p(n | ¬(r∨n)) (1 − p(r∨n))`
    pub single_split: TotalProbability<S>,
    /// `p(n | ¬r) = p(n | (r∨n)∧¬r) p(r∨n | ¬r) + p(n | ¬(r∨n)∧¬r) (1 − p(r∨n | ¬r))`
    pub nested_split: TotalProbability<S>,
}

impl<S: Scalar> McgeeReport<S> {
    pub fn formulas() -> [(&'static str, Formula); 3] {
        [
            (
                "nested premise",
                Formula::parse("(r | n) -> (~r -> n)").expect("static"),
            ),
            ("disjunctive premise", Formula::parse("r | n").expect("static")),
            ("conclusion", Formula::parse("~r -> n").expect("static")),
        ]
    }
}

/// The election with Reagan (`r`), Carter and Anderson (`n`, the other
/// Republican). `weights` are the shares of the three candidates.
pub fn mcgee_report<S: Scalar>(reagan: S, carter: S, anderson: S) -> Result<McgeeReport<S>> {
    let atoms: BTreeSet<String> = ["n", "r"].iter().map(|s| s.to_string()).collect();
    let world = |text: &str| Valuation::parse(text, ValuationMode::Bivalent);
    let credence = Credence::from_assignments(
        &atoms,
        ValuationMode::Bivalent,
        [
            (world("r=1,n=0")?, reagan),
            (world("r=0,n=0")?, carter),
            (world("r=0,n=1")?, anderson),
        ],
    )?;
    let cfg = SemanticsConfig::COOPER_QUASI;
    let [(_, nested), (_, disjunction), (_, conclusion)] = McgeeReport::<S>::formulas();
    let (r, n) = (Formula::atom("r"), Formula::atom("n"));
    let single_split = total_probability(&n, &Formula::Top, &disjunction, &credence)?;
    let nested_split = total_probability(&n, &Formula::not(r), &disjunction, &credence)?;
    Ok(McgeeReport {
        nested_premise: probability(&nested, &credence, cfg)?,
        disjunctive_premise: probability(&disjunction, &credence, cfg)?,
        conclusion: probability(&conclusion, &credence, cfg)?,
        single_split,
        nested_split,
        credence,
    })
}

/// The election with shares 85%, 14% and 1%.
pub fn mcgee_demo<S: Scalar>() -> Result<McgeeReport<S>> {
    mcgee_report(S::from_ratio(85, 100), S::from_ratio(14, 100), S::from_ratio(1, 100))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationCheck {
    pub credences: usize,
    /// Pairs `(A, C)` with `p(A) > 0` and `p(C) = 0`.
    pub pairs_checked: usize,
    /// Rendered `A -> C` with positive probability, if any.
    pub violations: Vec<String>,
}

/// For conditional-free `A`, `C` on `{a, b}` and random bivalent credences:
/// `p(A) > 0` and `p(C) = 0` imply `p(A → C) = 0`.
pub fn preservation_check<S: Scalar>(samples: usize, seed: u64) -> Result<PreservationCheck> {
    let cfg = SemanticsConfig::COOPER_QUASI;
    let pool = FormulaPool::build(&["a", "b"], 3, cfg, ValuationMode::Bivalent, false)?;
    let sampler = CredenceSampler::new(Arc::clone(pool.space()), 6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PreservationCheck {
        credences: samples,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for _ in 0..samples {
        let cr: Credence<S> = sampler.sample(&mut rng);
        let probs: Vec<S> = pool
            .entries()
            .iter()
            .map(|e| probability_of_table(&e.table, &cr))
            .collect();
        for (a, pa) in pool.entries().iter().zip(&probs) {
            if pa.is_zero() {
                continue;
            }
            for (c, pc) in pool.entries().iter().zip(&probs) {
                if !pc.is_zero() {
                    continue;
                }
                out.pairs_checked += 1;
                let table: Vec<_> = a.table.iter().zip(&c.table).map(|(x, y)| cfg.cond(*x, *y)).collect();
                if !probability_of_table(&table, &cr).is_zero() {
                    out.violations
                        .push(Formula::cond(a.formula.clone(), c.formula.clone()).render());
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TrivialityReport<S> {
    pub credence: Credence<S>,
    pub conditional: S,
    pub consequent: S,
    /// Both `a ∧ c` and `a ∧ ¬c` carry positive mass.
    pub antecedent_compatible: bool,
    /// With `p(a) = 1` the two probabilities coincide.
    pub degenerate_conditional: S,
    pub degenerate_consequent: S,
    pub preservation: PreservationCheck,
}

impl<S: Scalar> TrivialityReport<S> {
    pub fn blocks_collapse(&self) -> bool {
        self.antecedent_compatible && self.conditional != self.consequent
    }
}

pub fn triviality_witness<S: Scalar>(preservation_samples: usize, seed: u64) -> Result<TrivialityReport<S>> {
    let atoms: BTreeSet<String> = ["a", "c"].iter().map(|s| s.to_string()).collect();
    let world = |text: &str| Valuation::parse(text, ValuationMode::Bivalent);
    let credence = Credence::from_assignments(
        &atoms,
        ValuationMode::Bivalent,
        [
            (world("a=1,c=1")?, S::from_ratio(1, 10)),
            (world("a=1,c=0")?, S::from_ratio(1, 10)),
            (world("a=0,c=1")?, S::from_ratio(7, 10)),
            (world("a=0,c=0")?, S::from_ratio(1, 10)),
        ],
    )?;
    let degenerate = Credence::from_assignments(
        &atoms,
        ValuationMode::Bivalent,
        [
            (world("a=1,c=1")?, S::from_ratio(1, 3)),
            (world("a=1,c=0")?, S::from_ratio(2, 3)),
        ],
    )?;
    let cfg = SemanticsConfig::COOPER_QUASI;
    let (a, c) = (Formula::atom("a"), Formula::atom("c"));
    let a_to_c = Formula::cond(a.clone(), c.clone());
    let space = credence.space();
    let ta = space.table(&a, cfg)?;
    let tc = space.table(&c, cfg)?;
    let mass = |pred: &dyn Fn(usize) -> bool| credence.support().any(|(w, _)| pred(w));
    let antecedent_compatible = mass(&|w| ta[w] == T1 && tc[w] == T1) && mass(&|w| ta[w] == T1 && tc[w] == F0);
    Ok(TrivialityReport {
        conditional: probability(&a_to_c, &credence, cfg)?,
        consequent: probability(&c, &credence, cfg)?,
        antecedent_compatible,
        degenerate_conditional: probability(&a_to_c, &degenerate, cfg)?,
        degenerate_consequent: probability(&c, &degenerate, cfg)?,
        preservation: preservation_check::<S>(preservation_samples, seed)?,
        credence,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::One;

    use super::*;

    type Q = BigRational;

    fn q(n: u64, d: u64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn election_numbers() {
        let r = mcgee_demo::<Q>().unwrap();
        assert_eq!(r.nested_premise, Q::one());
        assert_eq!(r.disjunctive_premise, q(86, 100));
        assert_eq!(r.conclusion, q(1, 15));
        assert!(r.single_split.holds());
        assert_eq!(r.single_split.lhs, q(1, 100));
        assert!(r.nested_split.holds());
        assert_eq!(r.nested_split.lhs, r.conclusion);
    }

    #[test]
    fn election_other_shares() {
        let r = mcgee_report(q(60, 100), q(30, 100), q(10, 100)).unwrap();
        assert_eq!(r.conclusion, q(1, 4));
        assert_eq!(r.nested_premise, Q::one());
    }

    #[test]
    fn triviality_numbers() {
        let t = triviality_witness::<Q>(50, 0).unwrap();
        assert_eq!(t.conditional, q(1, 2));
        assert_eq!(t.consequent, q(4, 5));
        assert!(t.blocks_collapse());
        assert_eq!(t.degenerate_conditional, t.degenerate_consequent);
        assert!(t.preservation.pairs_checked > 0);
        assert!(t.preservation.violations.is_empty());
    }

    #[test]
    fn float_election() {
        let r = mcgee_demo::<f64>().unwrap();
        assert!((r.conclusion - 1.0 / 15.0).abs() < 1e-12);
    }
}
