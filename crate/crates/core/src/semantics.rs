//! Truth-functional evaluation under the trivalent tables.
//!
//! Negation is always value inversion. The conditional follows either the
//! Cooper table (an indeterminate antecedent behaves like a true one) or the
//! de Finetti table (it behaves like a false one). Conjunction and
//! disjunction are either Cooper's quasi-connectives, in which `½` is
//! neutral, or the Strong Kleene min/max.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Formula;

/// A semantic value, ordered `False < Indeterminate < True`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False = 0,
    Indeterminate = 1,
    True = 2,
}

pub(crate) use TruthValue::{False as F0, Indeterminate as HALF, True as T1};

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [F0, HALF, T1];
    pub const CLASSICAL: [TruthValue; 2] = [F0, T1];

    pub fn negate(self) -> Self {
        match self {
            F0 => T1,
            HALF => HALF,
            T1 => F0,
        }
    }

    /// Designated for certainty-preserving consequence: `1` or `½`.
    pub fn is_non_false(self) -> bool {
        self != F0
    }

    pub fn is_classical(self) -> bool {
        self != HALF
    }

    pub fn as_str(self) -> &'static str {
        match self {
            F0 => "0",
            HALF => "1/2",
            T1 => "1",
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            T1
        } else {
            F0
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TruthValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(F0),
            "1/2" | "½" => Ok(HALF),
            "1" => Ok(T1),
            other => Err(Error::InvalidValuation(format!("unknown truth value `{other}`"))),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionalTable {
    #[default]
    Cooper,
    DeFinetti,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectiveFamily {
    #[default]
    Quasi,
    StrongKleene,
}

/// Which tables interpret `→`, `∧` and `∨`. The default is Cooper's
/// conditional with quasi-conjunction and quasi-disjunction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SemanticsConfig {
    pub conditional: ConditionalTable,
    pub connectives: ConnectiveFamily,
}

impl SemanticsConfig {
    pub const COOPER_QUASI: Self = Self::new(ConditionalTable::Cooper, ConnectiveFamily::Quasi);
    pub const DEFINETTI_QUASI: Self = Self::new(ConditionalTable::DeFinetti, ConnectiveFamily::Quasi);
    pub const COOPER_SK: Self = Self::new(ConditionalTable::Cooper, ConnectiveFamily::StrongKleene);
    pub const DEFINETTI_SK: Self = Self::new(ConditionalTable::DeFinetti, ConnectiveFamily::StrongKleene);
    pub const ALL: [Self; 4] = [
        Self::COOPER_QUASI,
        Self::DEFINETTI_QUASI,
        Self::COOPER_SK,
        Self::DEFINETTI_SK,
    ];

    pub const fn new(conditional: ConditionalTable, connectives: ConnectiveFamily) -> Self {
        Self {
            conditional,
            connectives,
        }
    }

    pub fn not(self, x: TruthValue) -> TruthValue {
        x.negate()
    }

    pub fn and(self, x: TruthValue, y: TruthValue) -> TruthValue {
        match self.connectives {
            ConnectiveFamily::StrongKleene => x.min(y),
            ConnectiveFamily::Quasi => match (x, y) {
                (F0, _) | (_, F0) => F0,
                (HALF, other) | (other, HALF) => other,
                (T1, T1) => T1,
            },
        }
    }

    pub fn or(self, x: TruthValue, y: TruthValue) -> TruthValue {
        match self.connectives {
            ConnectiveFamily::StrongKleene => x.max(y),
            ConnectiveFamily::Quasi => match (x, y) {
                (T1, _) | (_, T1) => T1,
                (HALF, other) | (other, HALF) => other,
                (F0, F0) => F0,
            },
        }
    }

    pub fn cond(self, antecedent: TruthValue, consequent: TruthValue) -> TruthValue {
        let live = match self.conditional {
            ConditionalTable::Cooper => antecedent != F0,
            ConditionalTable::DeFinetti => antecedent == T1,
        };
        if live {
            consequent
        } else {
            HALF
        }
    }

    pub fn name(self) -> &'static str {
        match (self.conditional, self.connectives) {
            (ConditionalTable::Cooper, ConnectiveFamily::Quasi) => "cooper-quasi",
            (ConditionalTable::DeFinetti, ConnectiveFamily::Quasi) => "definetti-quasi",
            (ConditionalTable::Cooper, ConnectiveFamily::StrongKleene) => "cooper-sk",
            (ConditionalTable::DeFinetti, ConnectiveFamily::StrongKleene) => "definetti-sk",
        }
    }
}

impl fmt::Display for SemanticsConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SemanticsConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for SemanticsConfig {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SemanticsConfig::ALL
            .into_iter()
            .find(|cfg| cfg.name() == s)
            .ok_or_else(|| {
                format!("unknown semantics `{s}` (expected cooper-quasi, definetti-quasi, cooper-sk or definetti-sk)")
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuationMode {
    #[default]
    Trivalent,
    /// Atoms take only classical values; compounds may still be `½`.
    Bivalent,
}

impl ValuationMode {
    pub fn atom_values(self) -> &'static [TruthValue] {
        match self {
            ValuationMode::Trivalent => &TruthValue::ALL,
            ValuationMode::Bivalent => &TruthValue::CLASSICAL,
        }
    }
}

impl fmt::Display for ValuationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValuationMode::Trivalent => "trivalent",
            ValuationMode::Bivalent => "bivalent",
        })
    }
}

/// Enumeration caps. `3^n` and `2^n` growth must fail loudly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_trivalent_atoms: usize,
    pub max_bivalent_atoms: usize,
    pub max_premises: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_trivalent_atoms: 12,
            max_bivalent_atoms: 20,
            max_premises: 16,
        }
    }
}

impl Limits {
    pub fn atom_cap(&self, mode: ValuationMode) -> usize {
        match mode {
            ValuationMode::Trivalent => self.max_trivalent_atoms,
            ValuationMode::Bivalent => self.max_bivalent_atoms,
        }
    }

    pub fn check_atoms(&self, count: usize, mode: ValuationMode) -> Result<()> {
        let cap = self.atom_cap(mode);
        if count > cap {
            return Err(Error::AtomCapExceeded { count, cap, mode });
        }
        Ok(())
    }
}

/// A total assignment of truth values to a sorted set of atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    atoms: Arc<[String]>,
    values: Vec<TruthValue>,
    mode: ValuationMode,
}

impl Valuation {
    /// Builds a valuation from `(atom, value)` pairs. Fails on duplicate
    /// atoms, bad names, or `½` in bivalent mode.
    pub fn new<I, S>(pairs: I, mode: ValuationMode) -> Result<Self>
    where
        I: IntoIterator<Item = (S, TruthValue)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, TruthValue)> = pairs.into_iter().map(|(k, v)| (k.into(), v)).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidValuation(format!("atom `{}` assigned twice", w[0].0)));
            }
        }
        for (name, value) in &pairs {
            if !is_atom_name(name) {
                return Err(Error::InvalidValuation(format!("`{name}` is not an atom name")));
            }
            if mode == ValuationMode::Bivalent && *value == HALF {
                return Err(Error::InvalidValuation(format!(
                    "bivalent valuation assigns 1/2 to `{name}`"
                )));
            }
        }
        let (atoms, values): (Vec<String>, Vec<TruthValue>) = pairs.into_iter().unzip();
        Ok(Self {
            atoms: atoms.into(),
            values,
            mode,
        })
    }

    pub(crate) fn from_parts(atoms: Arc<[String]>, values: Vec<TruthValue>, mode: ValuationMode) -> Self {
        debug_assert_eq!(atoms.len(), values.len());
        Self { atoms, values, mode }
    }

    /// Parses `a=1,b=1/2,c=0`. The empty string is the empty valuation.
    pub fn parse(text: &str, mode: ValuationMode) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidValuation(format!("expected `atom=value`, got `{part}`")))?;
            pairs.push((name.trim().to_string(), value.parse::<TruthValue>()?));
        }
        Self::new(pairs, mode)
    }

    pub fn get(&self, atom: &str) -> Option<TruthValue> {
        self.atoms
            .binary_search_by(|a| a.as_str().cmp(atom))
            .ok()
            .map(|i| self.values[i])
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn mode(&self) -> ValuationMode {
        self.mode
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, TruthValue)> {
        self.atoms.iter().map(String::as_str).zip(self.values.iter().copied())
    }

    /// Number of atoms mapped to `½`.
    pub fn indeterminate_count(&self) -> usize {
        self.values.iter().filter(|v| **v == HALF).count()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, value)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{atom}={value}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({self})")
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (atom, value) in self.iter() {
            map.serialize_entry(atom, value.as_str())?;
        }
        map.end()
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Evaluates `f` at `v` under `cfg`.
pub fn eval(f: &Formula, v: &Valuation, cfg: SemanticsConfig) -> Result<TruthValue> {
    Ok(match f {
        Formula::Atom(name) => v.get(name).ok_or_else(|| Error::UnassignedAtom(name.to_string()))?,
        Formula::Top => T1,
        Formula::Bot => F0,
        Formula::Not(x) => cfg.not(eval(x, v, cfg)?),
        Formula::And(l, r) => cfg.and(eval(l, v, cfg)?, eval(r, v, cfg)?),
        Formula::Or(l, r) => cfg.or(eval(l, v, cfg)?, eval(r, v, cfg)?),
        Formula::Cond(l, r) => cfg.cond(eval(l, v, cfg)?, eval(r, v, cfg)?),
    })
}

/// Lazily enumerates every valuation of `atoms` in lexicographic order:
/// the first atom varies slowest and values run `0, ½, 1`.
pub struct Valuations {
    atoms: Arc<[String]>,
    mode: ValuationMode,
    digits: Option<Vec<usize>>,
}

impl Iterator for Valuations {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        let digits = self.digits.as_mut()?;
        let domain = self.mode.atom_values();
        let values = digits.iter().map(|&d| domain[d]).collect();
        let out = Valuation::from_parts(self.atoms.clone(), values, self.mode);
        // odometer increment, last atom fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < domain.len() {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_valuations(atoms: &BTreeSet<String>, mode: ValuationMode, limits: &Limits) -> Result<Valuations> {
    limits.check_atoms(atoms.len(), mode)?;
    let atoms: Arc<[String]> = atoms.iter().cloned().collect();
    Ok(Valuations {
        digits: Some(vec![0; atoms.len()]),
        atoms,
        mode,
    })
}

/// Formula compiled against a fixed atom order.
#[derive(Debug)]
enum Node {
    Atom(usize),
    Const(TruthValue),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Cond(Box<Node>, Box<Node>),
}

impl Node {
    fn compile(f: &Formula, atoms: &[String]) -> Result<Node> {
        Ok(match f {
            Formula::Atom(name) => Node::Atom(
                atoms
                    .binary_search_by(|a| a.as_str().cmp(name))
                    .map_err(|_| Error::UnassignedAtom(name.to_string()))?,
            ),
            Formula::Top => Node::Const(T1),
            Formula::Bot => Node::Const(F0),
            Formula::Not(x) => Node::Not(Box::new(Node::compile(x, atoms)?)),
            Formula::And(l, r) => Node::And(Box::new(Node::compile(l, atoms)?), Box::new(Node::compile(r, atoms)?)),
            Formula::Or(l, r) => Node::Or(Box::new(Node::compile(l, atoms)?), Box::new(Node::compile(r, atoms)?)),
            Formula::Cond(l, r) => Node::Cond(Box::new(Node::compile(l, atoms)?), Box::new(Node::compile(r, atoms)?)),
        })
    }

    fn eval(&self, row: &[TruthValue], cfg: SemanticsConfig) -> TruthValue {
        match self {
            Node::Atom(i) => row[*i],
            Node::Const(v) => *v,
            Node::Not(x) => x.eval(row, cfg).negate(),
            Node::And(l, r) => cfg.and(l.eval(row, cfg), r.eval(row, cfg)),
            Node::Or(l, r) => cfg.or(l.eval(row, cfg), r.eval(row, cfg)),
            Node::Cond(l, r) => cfg.cond(l.eval(row, cfg), r.eval(row, cfg)),
        }
    }
}

/// All valuations of a fixed atom set, materialised. World `i` is the
/// `i`-th valuation in enumeration order.
#[derive(Clone, Debug)]
pub struct WorldSpace {
    atoms: Arc<[String]>,
    mode: ValuationMode,
    rows: Vec<Vec<TruthValue>>,
}

impl WorldSpace {
    pub fn new(atoms: &BTreeSet<String>, mode: ValuationMode, limits: &Limits) -> Result<Self> {
        let rows = enumerate_valuations(atoms, mode, limits)?.map(|v| v.values).collect();
        Ok(Self {
            atoms: atoms.iter().cloned().collect(),
            mode,
            rows,
        })
    }

    /// The world space over the atoms of all `formulas`.
    pub fn for_formulas<'a, I>(formulas: I, mode: ValuationMode, limits: &Limits) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut atoms = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut atoms);
        }
        Self::new(&atoms, mode, limits)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_set(&self) -> BTreeSet<String> {
        self.atoms.iter().cloned().collect()
    }

    pub fn mode(&self) -> ValuationMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn valuation(&self, world: usize) -> Valuation {
        Valuation::from_parts(self.atoms.clone(), self.rows[world].clone(), self.mode)
    }

    /// Index of the world matching `v`, which must assign exactly this
    /// space's atoms.
    pub fn index_of(&self, v: &Valuation) -> Option<usize> {
        if v.atoms() != &*self.atoms {
            return None;
        }
        let domain = self.mode.atom_values();
        let mut index = 0;
        for value in v.values() {
            let digit = domain.iter().position(|d| d == value)?;
            index = index * domain.len() + digit;
        }
        Some(index)
    }

    /// The value of `f` at every world.
    pub fn table(&self, f: &Formula, cfg: SemanticsConfig) -> Result<Vec<TruthValue>> {
        let node = Node::compile(f, &self.atoms)?;
        Ok(self.rows.iter().map(|row| node.eval(row, cfg)).collect())
    }
}

/// One row per enumerated valuation, in enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct TruthTable {
    pub formula: String,
    pub semantics: String,
    pub mode: ValuationMode,
    pub atoms: Vec<String>,
    pub rows: Vec<TruthTableRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruthTableRow {
    pub valuation: Valuation,
    pub value: TruthValue,
}

impl TruthTable {
    pub fn values(&self) -> Vec<TruthValue> {
        self.rows.iter().map(|r| r.value).collect()
    }

    /// Aligned plain-text rendering: one column per atom, then the value.
    pub fn to_text(&self) -> String {
        let header: Vec<&str> = self.atoms.iter().map(String::as_str).collect();
        let widths: Vec<usize> = header.iter().map(|h| h.len().max(3)).collect();
        let mut out = String::new();
        for (h, w) in header.iter().zip(&widths) {
            out.push_str(&format!("{h:<w$} "));
        }
        out.push_str(&format!("| {}\n", self.formula));
        let rule = widths.iter().map(|w| w + 1).sum::<usize>();
        out.push_str(&"-".repeat(rule));
        out.push_str(&format!("+{}\n", "-".repeat(self.formula.len() + 1)));
        for row in &self.rows {
            for (v, w) in row.valuation.values().iter().zip(&widths) {
                out.push_str(&format!("{:<w$} ", v.as_str()));
            }
            out.push_str(&format!("| {}\n", row.value));
        }
        out
    }
}

pub fn truth_table(f: &Formula, cfg: SemanticsConfig, mode: ValuationMode, limits: &Limits) -> Result<TruthTable> {
    let space = WorldSpace::new(&f.atoms(), mode, limits)?;
    let values = space.table(f, cfg)?;
    let rows = values
        .into_iter()
        .enumerate()
        .map(|(i, value)| TruthTableRow {
            valuation: space.valuation(i),
            value,
        })
        .collect();
    Ok(TruthTable {
        formula: f.render(),
        semantics: cfg.name().to_string(),
        mode,
        atoms: space.atoms().to_vec(),
        rows,
    })
}

/// Extensional equivalence over the union of both atom sets.
pub fn equivalent(
    f: &Formula,
    g: &Formula,
    cfg: SemanticsConfig,
    mode: ValuationMode,
    limits: &Limits,
) -> Result<bool> {
    let space = WorldSpace::for_formulas([f, g], mode, limits)?;
    Ok(space.table(f, cfg)? == space.table(g, cfg)?)
}
