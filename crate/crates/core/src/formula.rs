//! Syntax of the object language: atoms, the constants `T`/`F`, negation,
//! conjunction, disjunction and the primitive indicative conditional.
//!
//! Material implication (`=>`) and the biconditional (`<->`) exist only as
//! surface syntax; the parser desugars them, so they never appear as nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::parser;

/// A formula of the conditional language.
///
/// Subtrees are reference counted so that schema instantiation and formula
/// pools can share structure cheaply.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Arc<str>),
    Top,
    Bot,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Cond(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Arc::from(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn cond(l: Formula, r: Formula) -> Self {
        Formula::Cond(Arc::new(l), Arc::new(r))
    }

    /// `¬l ∨ r`, the material conditional.
    pub fn material(l: Formula, r: Formula) -> Self {
        Formula::or(Formula::not(l), r)
    }

    /// `(l → r) ∧ (r → l)`, the reading the parser gives to `<->`.
    pub fn biconditional(l: Formula, r: Formula) -> Self {
        Formula::and(Formula::cond(l.clone(), r.clone()), Formula::cond(r, l))
    }

    /// Left fold with quasi-conjunction order preserved; `None` when empty.
    pub fn conjoin<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Parses a formula in the concrete syntax. See [`crate::parser`].
    pub fn parse(text: &str) -> Result<Self> {
        Ok(parser::parse(text)?)
    }

    /// Parses a schema: single uppercase letters other than `T` and `F` are
    /// accepted as schema variables.
    pub fn parse_schema(text: &str) -> Result<Self> {
        Ok(parser::parse_schema(text)?)
    }

    /// Renders with the minimal parenthesisation that re-parses to `self`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_to(&mut out);
        out
    }

    /// Atom names in lexicographic order, without duplicates.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    pub(crate) fn collect_atoms(&self, set: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !set.contains(name.as_ref()) {
                    set.insert(name.to_string());
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(x) => x.collect_atoms(set),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Cond(l, r) => {
                l.collect_atoms(set);
                r.collect_atoms(set);
            }
        }
    }

    pub fn is_conditional_free(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => true,
            Formula::Not(x) => x.is_conditional_free(),
            Formula::And(l, r) | Formula::Or(l, r) => l.is_conditional_free() && r.is_conditional_free(),
            Formula::Cond(..) => false,
        }
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Cond(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(x) => 1 + x.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Cond(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Replaces every atom by its image under `binding`.
    pub fn substitute(&self, binding: &BTreeMap<String, Formula>) -> Result<Formula> {
        Ok(match self {
            Formula::Atom(name) => binding
                .get(name.as_ref())
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(name.to_string()))?,
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Not(x) => Formula::not(x.substitute(binding)?),
            Formula::And(l, r) => Formula::and(l.substitute(binding)?, r.substitute(binding)?),
            Formula::Or(l, r) => Formula::or(l.substitute(binding)?, r.substitute(binding)?),
            Formula::Cond(l, r) => Formula::cond(l.substitute(binding)?, r.substitute(binding)?),
        })
    }

    // 0 = conditional, 1 = disjunction, 2 = conjunction, 3 = unary/atomic.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Cond(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    fn write_operand(&self, out: &mut String, parens: bool) {
        if parens {
            out.push('(');
            self.write_to(out);
            out.push(')');
        } else {
            self.write_to(out);
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Formula::Atom(name) => out.push_str(name),
            Formula::Top => out.push('T'),
            Formula::Bot => out.push('F'),
            Formula::Not(x) => {
                out.push('~');
                x.write_operand(out, x.precedence() < 3);
            }
            Formula::And(l, r) => {
                l.write_operand(out, l.precedence() < 2);
                out.push_str(" & ");
                r.write_operand(out, r.precedence() <= 2);
            }
            Formula::Or(l, r) => {
                l.write_operand(out, l.precedence() < 1);
                out.push_str(" | ");
                r.write_operand(out, r.precedence() <= 1);
            }
            Formula::Cond(l, r) => {
                l.write_operand(out, l.precedence() == 0);
                out.push_str(" -> ");
                r.write_to(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::parse(s)
    }
}
