//! Decision procedures for the three consequence relations.
//!
//! * `C` preserves non-falsity: no valuation makes every premise `≥ ½` and
//!   the conclusion `0`.
//! * `SS` preserves strict truth (value `1`) from a single premise.
//! * `U` holds when the conclusion is a `C`-theorem, or when some subset of
//!   the premises has a quasi-conjunction whose value never exceeds the
//!   conclusion's.
//!
//! All three are decided by exhaustive table lookup over the valuations of
//! the atoms occurring anywhere in the sequent.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::semantics::{Limits, SemanticsConfig, TruthValue, Valuation, ValuationMode, WorldSpace, T1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    C,
    SS,
    U,
}

impl Logic {
    pub fn as_str(self) -> &'static str {
        match self {
            Logic::C => "c",
            Logic::SS => "ss",
            Logic::U => "u",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::C => "C",
            Logic::SS => "SS",
            Logic::U => "U",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "c" => Ok(Logic::C),
            "ss" | "pp" => Ok(Logic::SS),
            "u" => Ok(Logic::U),
            _ => Err(format!("unknown logic `{s}` (expected c, ss or u)")),
        }
    }
}

impl Serialize for Logic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Premises and a conclusion. Premise order is kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        Self { premises, conclusion }
    }

    pub fn theorem(conclusion: Formula) -> Self {
        Self::new(Vec::new(), conclusion)
    }

    /// Parses `P1; P2; ... |- C`. A bare formula is read as a theorem claim.
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = match text.split_once("|-") {
            Some((l, r)) => (l, r),
            None => ("", text),
        };
        if rhs.contains("|-") {
            return Err(Error::InvalidSequent("more than one `|-`".into()));
        }
        let premises = lhs
            .split(';')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Formula::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(premises, Formula::parse(rhs)?))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.premises.iter().chain(std::iter::once(&self.conclusion))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(Formula::render).collect();
        if premises.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", premises.join("; "), self.conclusion)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Valid,
    Invalid,
}

/// Countermodel for one premise subset in an exhaustive `U` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetCountermodel {
    pub subset: Vec<usize>,
    pub countermodel: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub logic: Logic,
    pub status: Status,
    /// Present exactly when the status is `Invalid`.
    pub countermodel: Option<Valuation>,
    /// For `U`: the premise indices whose quasi-conjunction is bounded by
    /// the conclusion.
    pub witness_subset: Option<Vec<usize>>,
    /// For `U`: validity came from the conclusion being a `C`-theorem.
    pub conclusion_is_theorem: bool,
    /// Set by [`Checker::check_both_modes`]: valid in bivalent mode only.
    pub bivalent_only: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subset_countermodels: Vec<SubsetCountermodel>,
}

impl Verdict {
    fn valid(logic: Logic) -> Self {
        Self {
            logic,
            status: Status::Valid,
            countermodel: None,
            witness_subset: None,
            conclusion_is_theorem: false,
            bivalent_only: None,
            subset_countermodels: Vec::new(),
        }
    }

    fn invalid(logic: Logic, countermodel: Valuation) -> Self {
        Self {
            status: Status::Invalid,
            countermodel: Some(countermodel),
            ..Self::valid(logic)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }
}

/// Subsets of `0..n`, by cardinality and then lexicographically.
pub fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Left-folded conjunction of the tables in `subset`; the empty subset is `⊤`.
pub(crate) fn conjoin_tables<T: AsRef<[TruthValue]>>(
    tables: &[T],
    subset: &[usize],
    worlds: usize,
    cfg: SemanticsConfig,
) -> Vec<TruthValue> {
    let mut iter = subset.iter();
    let Some(&first) = iter.next() else {
        return vec![T1; worlds];
    };
    let mut acc = tables[first].as_ref().to_vec();
    for &i in iter {
        for (a, v) in acc.iter_mut().zip(tables[i].as_ref()) {
            *a = cfg.and(*a, *v);
        }
    }
    acc
}

/// First world where every premise is non-false and the conclusion is false.
pub(crate) fn c_violation<T: AsRef<[TruthValue]>>(premises: &[T], conclusion: &[TruthValue]) -> Option<usize> {
    (0..conclusion.len())
        .find(|&w| !conclusion[w].is_non_false() && premises.iter().all(|t| t.as_ref()[w].is_non_false()))
}

/// Table-level `U` check: theorem conclusion or some bounded subset.
pub(crate) fn u_holds<T: AsRef<[TruthValue]>>(premises: &[T], conclusion: &[TruthValue], cfg: SemanticsConfig) -> bool {
    conclusion.iter().all(|v| v.is_non_false())
        || subsets_by_size(premises.len()).any(|subset| {
            conjoin_tables(premises, &subset, conclusion.len(), cfg)
                .iter()
                .zip(conclusion)
                .all(|(a, b)| a <= b)
        })
}

/// Pick a countermodel among `worlds`: fewest indeterminate atoms, then
/// earliest in enumeration order.
fn most_classical(space: &WorldSpace, worlds: impl Iterator<Item = usize>) -> Option<Valuation> {
    worlds
        .map(|w| space.valuation(w))
        .enumerate()
        .min_by_key(|(order, v)| (v.indeterminate_count(), *order))
        .map(|(_, v)| v)
}

/// Sequent checker for a fixed semantics, valuation mode and cap set.
#[derive(Clone, Copy, Debug, Default)]
pub struct Checker {
    pub semantics: SemanticsConfig,
    pub mode: ValuationMode,
    pub limits: Limits,
    /// For `U`: report a countermodel for every premise subset.
    pub exhaustive: bool,
}

impl Checker {
    pub fn new(semantics: SemanticsConfig, mode: ValuationMode) -> Self {
        Self {
            semantics,
            mode,
            ..Self::default()
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn exhaustive(mut self, on: bool) -> Self {
        self.exhaustive = on;
        self
    }

    fn space<'a>(&self, formulas: impl IntoIterator<Item = &'a Formula>) -> Result<WorldSpace> {
        WorldSpace::for_formulas(formulas, self.mode, &self.limits)
    }

    pub fn entails(&self, logic: Logic, s: &Sequent) -> Result<Verdict> {
        match logic {
            Logic::C => self.entails_c(s),
            Logic::U => self.entails_u(s),
            Logic::SS => match s.premises.as_slice() {
                [] => self.entails_ss(&Formula::Top, &s.conclusion),
                [p] => self.entails_ss(p, &s.conclusion),
                _ => Err(Error::InvalidSequent("SS entailment takes at most one premise".into())),
            },
        }
    }

    /// Non-falsity preservation. The countermodel is the first offending
    /// valuation in enumeration order.
    pub fn entails_c(&self, s: &Sequent) -> Result<Verdict> {
        let space = self.space(s.formulas())?;
        let premises = s
            .premises
            .iter()
            .map(|p| space.table(p, self.semantics))
            .collect::<Result<Vec<_>>>()?;
        let conclusion = space.table(&s.conclusion, self.semantics)?;
        Ok(match c_violation(&premises, &conclusion) {
            Some(w) => Verdict::invalid(Logic::C, space.valuation(w)),
            None => Verdict::valid(Logic::C),
        })
    }

    pub fn is_theorem_c(&self, f: &Formula) -> Result<Verdict> {
        self.entails_c(&Sequent::theorem(f.clone()))
    }

    /// Strict-truth preservation from a single premise.
    pub fn entails_ss(&self, premise: &Formula, conclusion: &Formula) -> Result<Verdict> {
        let space = self.space([premise, conclusion])?;
        let p = space.table(premise, self.semantics)?;
        let c = space.table(conclusion, self.semantics)?;
        let bad = (0..space.len()).find(|&w| p[w] == T1 && c[w] != T1);
        Ok(match bad {
            Some(w) => Verdict::invalid(Logic::SS, space.valuation(w)),
            None => Verdict::valid(Logic::SS),
        })
    }

    /// Uncertain inference. Subsets are searched smallest first, so the
    /// reported witness is minimal. The countermodel is for the full premise
    /// set, preferring valuations with the fewest indeterminate atoms.
    pub fn entails_u(&self, s: &Sequent) -> Result<Verdict> {
        let n = s.premises.len();
        if n > self.limits.max_premises {
            return Err(Error::PremiseCapExceeded {
                count: n,
                cap: self.limits.max_premises,
            });
        }
        let space = self.space(s.formulas())?;
        let cfg = self.semantics;
        let premises = s
            .premises
            .iter()
            .map(|p| space.table(p, cfg))
            .collect::<Result<Vec<_>>>()?;
        let conclusion = space.table(&s.conclusion, cfg)?;

        if conclusion.iter().all(|v| v.is_non_false()) {
            return Ok(Verdict {
                conclusion_is_theorem: true,
                ..Verdict::valid(Logic::U)
            });
        }

        let mut failures = Vec::new();
        for subset in subsets_by_size(n) {
            let conj = conjoin_tables(&premises, &subset, space.len(), cfg);
            let bounded = conj.iter().zip(&conclusion).all(|(a, b)| a <= b);
            if bounded {
                return Ok(Verdict {
                    witness_subset: Some(subset),
                    ..Verdict::valid(Logic::U)
                });
            }
            if self.exhaustive {
                let cm = most_classical(&space, (0..space.len()).filter(|&w| conj[w] > conclusion[w]))
                    .expect("an unbounded subset has an offending world");
                failures.push(SubsetCountermodel {
                    subset,
                    countermodel: cm,
                });
            }
        }

        let all: Vec<usize> = (0..n).collect();
        let conj = conjoin_tables(&premises, &all, space.len(), cfg);
        let cm = most_classical(&space, (0..space.len()).filter(|&w| conj[w] > conclusion[w]))
            .expect("the full premise set is unbounded when no subset is");
        Ok(Verdict {
            subset_countermodels: failures,
            ..Verdict::invalid(Logic::U, cm)
        })
    }

    /// Runs `logic` in both valuation modes and reports the verdict for this
    /// checker's mode with `bivalent_only` filled in.
    pub fn check_both_modes(&self, logic: Logic, s: &Sequent) -> Result<Verdict> {
        let tri = Checker {
            mode: ValuationMode::Trivalent,
            ..*self
        }
        .entails(logic, s)?;
        let biv = Checker {
            mode: ValuationMode::Bivalent,
            ..*self
        }
        .entails(logic, s)?;
        let flag = biv.is_valid() && !tri.is_valid();
        let mut out = match self.mode {
            ValuationMode::Trivalent => tri,
            ValuationMode::Bivalent => biv,
        };
        out.bivalent_only = Some(flag);
        Ok(out)
    }
}

/// Classical two-valued validity of a conditional-free formula.
pub fn classical_valid(f: &Formula) -> Result<bool> {
    if !f.is_conditional_free() {
        return Err(Error::ContainsConditional(f.render()));
    }
    let space = WorldSpace::new(&f.atoms(), ValuationMode::Bivalent, &Limits::default())?;
    Ok(space.table(f, SemanticsConfig::default())?.iter().all(|v| *v == T1))
}
