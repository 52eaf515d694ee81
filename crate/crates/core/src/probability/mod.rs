//! Probability over trivalent worlds.
//!
//! A credence spreads mass over atom valuations. The probability of a
//! formula is its true mass divided by its classical (true plus false) mass,
//! and `1` when it is indeterminate on the whole support.

mod credence;
pub mod demos;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use credence::Credence;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::scalar::Scalar;
use crate::semantics::{Limits, SemanticsConfig, TruthValue, ValuationMode, WorldSpace, F0, HALF, T1};

/// Masses of the worlds where a formula is true, indeterminate and false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthPartition<S> {
    pub true_mass: S,
    pub indeterminate_mass: S,
    pub false_mass: S,
}

impl<S: Scalar> TruthPartition<S> {
    pub fn of_table(table: &[TruthValue], cr: &Credence<S>) -> Self {
        let mut out = Self {
            true_mass: S::zero(),
            indeterminate_mass: S::zero(),
            false_mass: S::zero(),
        };
        for (i, w) in cr.support() {
            let slot = match table[i] {
                T1 => &mut out.true_mass,
                HALF => &mut out.indeterminate_mass,
                F0 => &mut out.false_mass,
            };
            *slot = slot.clone() + w.clone();
        }
        out
    }

    pub fn classical_mass(&self) -> S {
        self.true_mass.clone() + self.false_mass.clone()
    }

    pub fn probability(&self) -> S {
        let classical = self.classical_mass();
        if classical.is_zero() {
            S::one()
        } else {
            self.true_mass.clone() / classical
        }
    }

    pub fn decimal_odds(&self) -> Result<Odds<S>> {
        let classical = self.classical_mass();
        if classical.is_zero() {
            Err(Error::UndefinedOdds)
        } else if self.true_mass.is_zero() {
            Ok(Odds::Infinite)
        } else {
            Ok(Odds::Finite(classical / self.true_mass.clone()))
        }
    }
}

/// Decimal odds; `Infinite` for a bet that cannot win.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Odds<S> {
    Finite(S),
    Infinite,
}

impl<S: fmt::Display> fmt::Display for Odds<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Odds::Finite(x) => x.fmt(f),
            Odds::Infinite => f.write_str("inf"),
        }
    }
}

pub fn partition<S: Scalar>(f: &Formula, cr: &Credence<S>, cfg: SemanticsConfig) -> Result<TruthPartition<S>> {
    let table = cr.space().table(f, cfg)?;
    Ok(TruthPartition::of_table(&table, cr))
}

pub fn probability<S: Scalar>(f: &Formula, cr: &Credence<S>, cfg: SemanticsConfig) -> Result<S> {
    Ok(partition(f, cr, cfg)?.probability())
}

pub fn probability_of_table<S: Scalar>(table: &[TruthValue], cr: &Credence<S>) -> S {
    TruthPartition::of_table(table, cr).probability()
}

pub fn decimal_odds<S: Scalar>(f: &Formula, cr: &Credence<S>, cfg: SemanticsConfig) -> Result<Odds<S>> {
    partition(f, cr, cfg)?.decimal_odds()
}

fn require_classical(f: &Formula) -> Result<()> {
    if f.is_conditional_free() {
        Ok(())
    } else {
        Err(Error::ContainsConditional(f.render()))
    }
}

/// Ratio `c((given ∧ c_given)_T) / c(given_T)` on a bivalent credence.
pub fn conditional_probability<S: Scalar>(c_given: &Formula, given: &Formula, cr: &Credence<S>) -> Result<S> {
    require_classical(c_given)?;
    require_classical(given)?;
    if cr.mode() != ValuationMode::Bivalent {
        return Err(Error::NotBivalent);
    }
    let cfg = SemanticsConfig::default();
    let given_t = partition(given, cr, cfg)?.true_mass;
    if given_t.is_zero() {
        return Err(Error::ZeroProbabilityCondition);
    }
    let joint = partition(&Formula::and(given.clone(), c_given.clone()), cr, cfg)?.true_mass;
    Ok(joint / given_t)
}

/// `p(a → c) − p(c | a)`.
pub fn check_adams<S: Scalar>(a: &Formula, c: &Formula, cr: &Credence<S>, cfg: SemanticsConfig) -> Result<S> {
    let ratio = conditional_probability(c, a, cr)?;
    let conditional = probability(&Formula::cond(a.clone(), c.clone()), cr, cfg)?;
    Ok(conditional - ratio)
}

/// Probability with which [`CredenceSampler`] returns a point mass.
pub const POINT_MASS_PROBABILITY: f64 = 0.125;

/// Draws credences with rational weights over a common denominator.
///
/// A draw picks a support of random size, a denominator `D` uniform in
/// `1..=bound`, and assigns each of the `D` units to a random support
/// world. With probability [`POINT_MASS_PROBABILITY`] it returns a point
/// mass instead.
#[derive(Clone, Debug)]
pub struct CredenceSampler {
    space: Arc<WorldSpace>,
    bound: u64,
}

impl CredenceSampler {
    pub fn new(space: Arc<WorldSpace>, denominator_bound: u64) -> Result<Self> {
        if denominator_bound == 0 {
            return Err(Error::InvalidCredence("denominator bound must be at least 1".into()));
        }
        Ok(Self {
            space,
            bound: denominator_bound,
        })
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn sample<S: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> Credence<S> {
        let n = self.space.len();
        if rng.gen_bool(POINT_MASS_PROBABILITY) {
            return Credence::point_mass(self.space.clone(), rng.gen_range(0..n));
        }
        let denominator = rng.gen_range(1..=self.bound);
        let k = rng.gen_range(1..=n);
        let support = index::sample(rng, n, k).into_vec();
        let mut units = vec![0u64; n];
        for _ in 0..denominator {
            units[support[rng.gen_range(0..k)]] += 1;
        }
        let weights = units.iter().map(|&u| S::from_ratio(u, denominator)).collect();
        Credence::new(self.space.clone(), weights).expect("units sum to the denominator")
    }
}

pub fn random_credence<S: Scalar>(
    atoms: &BTreeSet<String>,
    mode: ValuationMode,
    seed: u64,
    denominator_bound: u64,
) -> Result<Credence<S>> {
    let space = Arc::new(WorldSpace::new(atoms, mode, &Limits::default())?);
    let sampler = CredenceSampler::new(space, denominator_bound)?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

/// A credence with `p(A) > p(B)`, built from one world where `A` beats `B`.
///
/// Uses a point mass where that suffices and otherwise splits the mass
/// evenly with a second world. Returns `None` when `A ≤ B` pointwise, or
/// when the only excess is at `A = 1, B = ½` and `B` is never false.
pub fn uncertainty_witness<S: Scalar>(
    space: &Arc<WorldSpace>,
    antecedent: &[TruthValue],
    conclusion: &[TruthValue],
) -> Option<Credence<S>> {
    let find = |pred: &dyn Fn(usize) -> bool| (0..space.len()).find(|&w| pred(w));
    if let Some(w) = find(&|w| antecedent[w] == T1 && conclusion[w] == F0) {
        return Some(Credence::point_mass(space.clone(), w));
    }
    if let Some(w) = find(&|w| antecedent[w] == HALF && conclusion[w] == F0) {
        // every world with A true has B non-false here
        return Some(match find(&|v| antecedent[v] == T1) {
            Some(v) => Credence::split(space.clone(), w, v),
            None => Credence::point_mass(space.clone(), w),
        });
    }
    let w = find(&|w| antecedent[w] == T1 && conclusion[w] == HALF)?;
    let v = find(&|v| conclusion[v] == F0)?;
    Some(Credence::split(space.clone(), w, v))
}

/// A credence with `p(A) > 0` and `p(B) = 0`, from a world where `A` is true
/// and `B` is not. `None` when no such world exists, or when `B` is never
/// false and the world found leaves `B` indeterminate.
pub fn possibility_witness<S: Scalar>(
    space: &Arc<WorldSpace>,
    premise: &[TruthValue],
    conclusion: &[TruthValue],
) -> Option<Credence<S>> {
    let find = |pred: &dyn Fn(usize) -> bool| (0..space.len()).find(|&w| pred(w));
    if let Some(w) = find(&|w| premise[w] == T1 && conclusion[w] == F0) {
        return Some(Credence::point_mass(space.clone(), w));
    }
    let w = find(&|w| premise[w] == T1 && conclusion[w] == HALF)?;
    let v = find(&|v| conclusion[v] == F0)?;
    Some(Credence::split(space.clone(), w, v))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use super::credence::sum;
    use super::*;
    use crate::semantics::Valuation;

    type Q = BigRational;

    fn q(n: u64, d: u64) -> Q {
        Q::from_ratio(n, d)
    }

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn atoms(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn uniform(names: &[&str], mode: ValuationMode) -> Credence<Q> {
        let space = WorldSpace::new(&atoms(names), mode, &Limits::default()).unwrap();
        Credence::uniform(Arc::new(space))
    }

    fn bivalent(names: &[&str], weights: &[(&str, Q)]) -> Credence<Q> {
        let pairs = weights
            .iter()
            .map(|(k, w)| (Valuation::parse(k, ValuationMode::Bivalent).unwrap(), w.clone()));
        Credence::from_assignments(&atoms(names), ValuationMode::Bivalent, pairs).unwrap()
    }

    const CQ: SemanticsConfig = SemanticsConfig::COOPER_QUASI;

    #[test]
    fn partition_examples() {
        let a = uniform(&["a"], ValuationMode::Bivalent);
        let part = partition(&p("a"), &a, CQ).unwrap();
        assert_eq!(
            (part.true_mass, part.indeterminate_mass, part.false_mass),
            (q(1, 2), q(0, 1), q(1, 2))
        );

        let ab = uniform(&["a", "b"], ValuationMode::Bivalent);
        let part = partition(&p("a -> b"), &ab, CQ).unwrap();
        assert_eq!(
            (part.true_mass, part.indeterminate_mass, part.false_mass),
            (q(1, 4), q(1, 2), q(1, 4))
        );

        let part = partition(&p("F -> T"), &ab, CQ).unwrap();
        assert_eq!(part.indeterminate_mass, Q::one());
    }

    #[test]
    fn probability_examples() {
        let ab = uniform(&["a", "b"], ValuationMode::Bivalent);
        assert_eq!(probability(&p("a -> b"), &ab, CQ).unwrap(), q(1, 2));
        assert_eq!(probability(&p("F -> T"), &ab, CQ).unwrap(), Q::one());
        let cr = bivalent(&["a"], &[("a=1", q(2, 3)), ("a=0", q(1, 3))]);
        assert_eq!(probability(&p("~a"), &cr, CQ).unwrap(), q(1, 3));
        assert!(matches!(probability(&p("z"), &cr, CQ), Err(Error::UnassignedAtom(_))));
    }

    #[test]
    fn odds() {
        let ab = uniform(&["a", "b"], ValuationMode::Bivalent);
        assert_eq!(decimal_odds(&p("a -> b"), &ab, CQ).unwrap(), Odds::Finite(q(2, 1)));
        assert_eq!(decimal_odds(&p("T"), &ab, CQ).unwrap(), Odds::Finite(Q::one()));
        let lost = TruthPartition {
            true_mass: Q::zero(),
            indeterminate_mass: q(1, 2),
            false_mass: q(1, 2),
        };
        assert_eq!(lost.decimal_odds().unwrap(), Odds::Infinite);
        assert_eq!(decimal_odds(&p("F -> T"), &ab, CQ), Err(Error::UndefinedOdds));
    }

    #[test]
    fn conditional_probability_examples() {
        let cr = bivalent(
            &["a", "b"],
            &[("a=1,b=1", q(3, 10)), ("a=1,b=0", q(2, 10)), ("a=0,b=0", q(5, 10))],
        );
        assert_eq!(conditional_probability(&p("b"), &p("a"), &cr).unwrap(), q(3, 5));
        assert_eq!(conditional_probability(&p("a"), &p("a"), &cr).unwrap(), Q::one());
        assert_eq!(
            conditional_probability(&p("b"), &p("T"), &cr).unwrap(),
            probability(&p("b"), &cr, CQ).unwrap()
        );
        assert_eq!(
            conditional_probability(&p("b"), &p("a & ~a"), &cr),
            Err(Error::ZeroProbabilityCondition)
        );
        assert!(matches!(
            conditional_probability(&p("a -> b"), &p("a"), &cr),
            Err(Error::ContainsConditional(_))
        ));
        let tri = uniform(&["a", "b"], ValuationMode::Trivalent);
        assert_eq!(conditional_probability(&p("b"), &p("a"), &tri), Err(Error::NotBivalent));
    }

    #[test]
    fn adams_examples() {
        let ac = uniform(&["a", "c"], ValuationMode::Bivalent);
        assert!(check_adams(&p("a"), &p("c"), &ac, CQ).unwrap().is_zero());
        let skew = bivalent(
            &["a", "c"],
            &[("a=1,c=1", q(1, 7)), ("a=1,c=0", q(2, 7)), ("a=0,c=0", q(4, 7))],
        );
        assert!(check_adams(&p("a"), &p("c"), &skew, CQ).unwrap().is_zero());
        assert_eq!(probability(&p("a -> c"), &skew, CQ).unwrap(), q(1, 3));
        let certain = bivalent(&["a", "c"], &[("a=1,c=1", q(1, 4)), ("a=1,c=0", q(3, 4))]);
        assert!(check_adams(&p("a"), &p("c"), &certain, CQ).unwrap().is_zero());
    }

    #[test]
    fn random_credences() {
        let names = atoms(&["a"]);
        let x: Credence<Q> = random_credence(&names, ValuationMode::Bivalent, 7, 10).unwrap();
        let y: Credence<Q> = random_credence(&names, ValuationMode::Bivalent, 7, 10).unwrap();
        assert_eq!(x.weights(), y.weights());
        assert_eq!(x.weights().len(), 2);
        for seed in 0..50 {
            let one: Credence<Q> = random_credence(&atoms(&["a", "b"]), ValuationMode::Trivalent, seed, 1).unwrap();
            assert_eq!(one.support().count(), 1);
            let any: Credence<Q> = random_credence(&atoms(&["a", "b"]), ValuationMode::Trivalent, seed, 12).unwrap();
            assert_eq!(sum(any.weights().iter()), Q::one());
            assert!(any.weights().iter().all(|w| *w.denom() <= 12.into()));
        }
        assert!(random_credence::<Q>(&names, ValuationMode::Bivalent, 0, 0).is_err());
    }

    #[test]
    fn uncertainty_witness_beats_bound() {
        let space =
            Arc::new(WorldSpace::new(&atoms(&["a", "b"]), ValuationMode::Trivalent, &Limits::default()).unwrap());
        let a = space.table(&p("~a | b"), CQ).unwrap();
        let b = space.table(&p("a -> b"), CQ).unwrap();
        let cr: Credence<Q> = uncertainty_witness(&space, &a, &b).unwrap();
        assert!(probability_of_table(&a, &cr) > probability_of_table(&b, &cr));
        let same = space.table(&p("a"), CQ).unwrap();
        assert!(uncertainty_witness::<Q>(&space, &same, &same).is_none());
    }
}
