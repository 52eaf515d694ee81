//! Formula pools: every truth function reachable from a set of atoms within
//! a depth bound, one representative formula per truth table.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::semantics::{Limits, SemanticsConfig, TruthValue, ValuationMode, WorldSpace};

pub const MAX_POOL_DEPTH: usize = 3;

#[derive(Clone, Debug)]
pub struct PoolEntry {
    pub formula: Formula,
    pub table: Vec<TruthValue>,
    /// Table with every conditional read as `~A | B`.
    pub material: Vec<TruthValue>,
}

#[derive(Clone, Debug)]
pub struct FormulaPool {
    space: Arc<WorldSpace>,
    entries: Vec<PoolEntry>,
}

impl FormulaPool {
    /// Closes `atoms ∪ {T, F}` under the connectives `depth` times. The
    /// first formula found for a table is kept, so representatives are of
    /// minimal depth.
    pub fn build(
        atoms: &[&str],
        depth: usize,
        cfg: SemanticsConfig,
        mode: ValuationMode,
        conditionals: bool,
    ) -> Result<Self> {
        Self::build_keyed(atoms, depth, cfg, mode, conditionals, false)
    }

    /// Like [`FormulaPool::build`], but formulas are distinct when either
    /// their table or their material reading differs.
    pub fn build_with_material(
        atoms: &[&str],
        depth: usize,
        cfg: SemanticsConfig,
        mode: ValuationMode,
    ) -> Result<Self> {
        Self::build_keyed(atoms, depth, cfg, mode, true, true)
    }

    fn build_keyed(
        atoms: &[&str],
        depth: usize,
        cfg: SemanticsConfig,
        mode: ValuationMode,
        conditionals: bool,
        material_key: bool,
    ) -> Result<Self> {
        if !(1..=MAX_POOL_DEPTH).contains(&depth) {
            return Err(Error::BoundTooLarge {
                bound: depth,
                max: MAX_POOL_DEPTH,
            });
        }
        let names = atoms.iter().map(|s| s.to_string()).collect();
        let space = Arc::new(WorldSpace::new(&names, mode, &Limits::default())?);
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        let mut push = |entry: PoolEntry, entries: &mut Vec<PoolEntry>| {
            let key = if material_key {
                [entry.table.as_slice(), entry.material.as_slice()].concat()
            } else {
                entry.table.clone()
            };
            if seen.insert(key) {
                entries.push(entry);
            }
        };
        for f in atoms
            .iter()
            .map(|a| Formula::atom(a))
            .chain([Formula::Top, Formula::Bot])
        {
            let table = space.table(&f, cfg)?;
            let entry = PoolEntry {
                formula: f,
                material: table.clone(),
                table,
            };
            push(entry, &mut entries);
        }
        type Op = (
            fn(Formula, Formula) -> Formula,
            fn(SemanticsConfig, TruthValue, TruthValue) -> TruthValue,
        );
        let mut ops: Vec<Op> = vec![(Formula::and, SemanticsConfig::and), (Formula::or, SemanticsConfig::or)];
        if conditionals {
            ops.push((Formula::cond, SemanticsConfig::cond));
        }
        let combine =
            |op: fn(SemanticsConfig, TruthValue, TruthValue) -> TruthValue, x: &[TruthValue], y: &[TruthValue]| {
                x.iter().zip(y).map(|(u, v)| op(cfg, *u, *v)).collect::<Vec<_>>()
            };
        let material_cond = |c: SemanticsConfig, u: TruthValue, v: TruthValue| c.or(u.negate(), v);
        for _ in 0..depth {
            let prev = entries.clone();
            for x in &prev {
                let entry = PoolEntry {
                    formula: Formula::not(x.formula.clone()),
                    table: x.table.iter().map(|v| v.negate()).collect(),
                    material: x.material.iter().map(|v| v.negate()).collect(),
                };
                push(entry, &mut entries);
            }
            for x in &prev {
                for y in &prev {
                    for (i, (build, op)) in ops.iter().enumerate() {
                        let material_op = if i == 2 { material_cond } else { *op };
                        let entry = PoolEntry {
                            formula: build(x.formula.clone(), y.formula.clone()),
                            table: combine(*op, &x.table, &y.table),
                            material: combine(material_op, &x.material, &y.material),
                        };
                        push(entry, &mut entries);
                    }
                }
            }
        }
        Ok(Self { space, entries })
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn entries(&self) -> &[PoolEntry] {
        &self.entries
    }

    /// Worlds at which every atom is classical.
    pub fn classical_worlds(&self) -> Vec<usize> {
        (0..self.space.len())
            .filter(|&w| self.space.valuation(w).indeterminate_count() == 0)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
