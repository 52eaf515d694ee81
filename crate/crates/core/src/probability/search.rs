//! Search for credences under which a premise subset is more probable than
//! the conclusion.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{probability_of_table, Credence, CredenceSampler};
use crate::consequence::{conjoin_tables, subsets_by_size, Sequent};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semantics::{Limits, SemanticsConfig, ValuationMode, WorldSpace};

/// Denominator bound for the random phase.
pub const SEARCH_DENOMINATOR_BOUND: u64 = 24;

/// A credence showing that one premise subset does not bound the conclusion.
#[derive(Clone, Debug)]
pub struct SubsetCertificate<S> {
    pub subset: Vec<usize>,
    pub credence: Credence<S>,
    /// Probability of the quasi-conjunction of the subset (`1` if empty).
    pub premise_probability: S,
    pub conclusion_probability: S,
}

#[derive(Clone, Debug)]
pub struct SearchReport<S> {
    pub certificates: Vec<SubsetCertificate<S>>,
    /// Subsets for which the budget ran out.
    pub uncertified: Vec<Vec<usize>>,
}

impl<S> SearchReport<S> {
    /// True when every subset has a certificate, which refutes the sequent.
    pub fn is_countermodel(&self) -> bool {
        self.uncertified.is_empty()
    }

    pub fn into_countermodel(self) -> Option<Vec<SubsetCertificate<S>>> {
        self.is_countermodel().then_some(self.certificates)
    }
}

/// Looks for a failing credence for every subset of the premises.
///
/// Candidates per subset, up to `budget`: every point mass, every even split
/// over two worlds, then seeded random credences. Running out of budget is
/// inconclusive, never a proof of validity.
pub fn search_probabilistic_countermodel<S: Scalar>(
    s: &Sequent,
    cfg: SemanticsConfig,
    mode: ValuationMode,
    budget: usize,
    seed: u64,
) -> Result<SearchReport<S>> {
    if budget == 0 {
        return Err(Error::InvalidCredence("search budget must be at least 1".into()));
    }
    let limits = Limits::default();
    if s.premises.len() > limits.max_premises {
        return Err(Error::PremiseCapExceeded {
            count: s.premises.len(),
            cap: limits.max_premises,
        });
    }
    let space = Arc::new(WorldSpace::for_formulas(s.formulas(), mode, &limits)?);
    let premises = s
        .premises
        .iter()
        .map(|p| space.table(p, cfg))
        .collect::<Result<Vec<_>>>()?;
    let conclusion = space.table(&s.conclusion, cfg)?;
    let sampler = CredenceSampler::new(space.clone(), SEARCH_DENOMINATOR_BOUND)?;

    let mut report = SearchReport {
        certificates: Vec::new(),
        uncertified: Vec::new(),
    };
    for (k, subset) in subsets_by_size(s.premises.len()).enumerate() {
        let conj = conjoin_tables(&premises, &subset, space.len(), cfg);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let n = space.len();
        let structured = (0..n).map(|w| Credence::point_mass(space.clone(), w)).chain(
            (0..n)
                .flat_map(|w| (w + 1..n).map(move |v| (w, v)))
                .map(|(w, v)| Credence::split(space.clone(), w, v)),
        );
        let random = std::iter::repeat_with(|| sampler.sample(&mut rng));
        let found = structured.chain(random).take(budget).find_map(|cr: Credence<S>| {
            let pa = probability_of_table(&conj, &cr);
            let pb = probability_of_table(&conclusion, &cr);
            (pa > pb).then_some((cr, pa, pb))
        });
        match found {
            Some((credence, premise_probability, conclusion_probability)) => {
                report.certificates.push(SubsetCertificate {
                    subset,
                    credence,
                    premise_probability,
                    conclusion_probability,
                })
            }
            None => report.uncertified.push(subset),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    type Q = BigRational;

    fn seq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    const CQ: SemanticsConfig = SemanticsConfig::COOPER_QUASI;

    #[test]
    fn or_to_if_has_a_probabilistic_countermodel() {
        let r = search_probabilistic_countermodel::<Q>(&seq("~a | b |- a -> b"), CQ, ValuationMode::Bivalent, 50, 1)
            .unwrap();
        let certs = r.into_countermodel().expect("found");
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert!(c.premise_probability > c.conclusion_probability);
        }
    }

    #[test]
    fn valid_sequent_is_never_refuted() {
        let r =
            search_probabilistic_countermodel::<Q>(&seq("a; b |- a"), CQ, ValuationMode::Trivalent, 500, 3).unwrap();
        assert!(!r.is_countermodel());
        // {a, b} fails: a=1/2, b=1 makes the quasi-conjunction true
        assert_eq!(r.uncertified, vec![vec![0]]);
    }

    #[test]
    fn monotonicity_is_refuted() {
        let r =
            search_probabilistic_countermodel::<Q>(&seq("a -> c |- (a & b) -> c"), CQ, ValuationMode::Bivalent, 200, 9)
                .unwrap();
        assert!(r.is_countermodel());
    }

    #[test]
    fn deterministic_per_seed() {
        let run = || {
            search_probabilistic_countermodel::<Q>(
                &seq("a -> b; b -> c |- a -> c"),
                CQ,
                ValuationMode::Bivalent,
                300,
                5,
            )
            .unwrap()
            .certificates
            .iter()
            .map(|c| c.credence.to_json())
            .collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn zero_budget_is_rejected() {
        assert!(search_probabilistic_countermodel::<Q>(&seq("a |- a"), CQ, ValuationMode::Bivalent, 0, 0).is_err());
    }
}
