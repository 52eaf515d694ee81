//! Shared generators and an independent reference evaluator.
//!
//! Values are counted in halves: 0 is false, 1 is indeterminate, 2 is true.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use trivalent::{Formula, Sequent, TruthValue};

pub type V = u8;

pub const NOT: [V; 3] = [2, 1, 0];

// Indexed [antecedent][consequent].
pub const COOPER: [[V; 3]; 3] = [[1, 1, 1], [0, 1, 2], [0, 1, 2]];
pub const DEFINETTI: [[V; 3]; 3] = [[1, 1, 1], [1, 1, 1], [0, 1, 2]];

pub const QUASI_AND: [[V; 3]; 3] = [[0, 0, 0], [0, 1, 2], [0, 2, 2]];
pub const QUASI_OR: [[V; 3]; 3] = [[0, 0, 2], [0, 1, 2], [2, 2, 2]];
pub const SK_AND: [[V; 3]; 3] = [[0, 0, 0], [0, 1, 1], [0, 1, 2]];
pub const SK_OR: [[V; 3]; 3] = [[0, 1, 2], [1, 1, 2], [2, 2, 2]];

#[derive(Clone, Copy)]
pub struct Tables {
    pub cond: [[V; 3]; 3],
    pub and: [[V; 3]; 3],
    pub or: [[V; 3]; 3],
}

pub const COOPER_QUASI: Tables = Tables {
    cond: COOPER,
    and: QUASI_AND,
    or: QUASI_OR,
};

pub fn to_truth(v: V) -> TruthValue {
    [TruthValue::False, TruthValue::Indeterminate, TruthValue::True][v as usize]
}

pub fn from_truth(t: TruthValue) -> V {
    match t {
        TruthValue::False => 0,
        TruthValue::Indeterminate => 1,
        TruthValue::True => 2,
    }
}

pub fn oracle_eval(f: &Formula, world: &BTreeMap<String, V>, t: &Tables) -> V {
    match f {
        Formula::Atom(name) => world[&**name],
        Formula::Top => 2,
        Formula::Bot => 0,
        Formula::Not(x) => NOT[oracle_eval(x, world, t) as usize],
        Formula::And(x, y) => t.and[oracle_eval(x, world, t) as usize][oracle_eval(y, world, t) as usize],
        Formula::Or(x, y) => t.or[oracle_eval(x, world, t) as usize][oracle_eval(y, world, t) as usize],
        Formula::Cond(x, y) => t.cond[oracle_eval(x, world, t) as usize][oracle_eval(y, world, t) as usize],
    }
}

/// Every assignment of `values` to `atoms`, first atom varying slowest.
pub fn worlds(atoms: &[String], values: &[V]) -> Vec<BTreeMap<String, V>> {
    let mut out = vec![BTreeMap::new()];
    for a in atoms {
        out = out
            .into_iter()
            .flat_map(|w| {
                values.iter().map(move |&v| {
                    let mut w = w.clone();
                    w.insert(a.clone(), v);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn sequent_atoms(s: &Sequent) -> Vec<String> {
    let mut atoms = std::collections::BTreeSet::new();
    for f in s.formulas() {
        atoms.extend(f.atoms());
    }
    atoms.into_iter().collect()
}

pub fn oracle_table(f: &Formula, ws: &[BTreeMap<String, V>], t: &Tables) -> Vec<V> {
    ws.iter().map(|w| oracle_eval(f, w, t)).collect()
}

/// Left-folded quasi-conjunction of tables; all-true when empty.
pub fn fold_and(tables: &[&[V]], len: usize, t: &Tables) -> Vec<V> {
    let mut it = tables.iter();
    let Some(first) = it.next() else { return vec![2; len] };
    it.fold(first.to_vec(), |acc, x| {
        acc.iter()
            .zip(x.iter())
            .map(|(&a, &b)| t.and[a as usize][b as usize])
            .collect()
    })
}

/// Probability from integer world weights, as a (numerator, denominator)
/// pair.
pub fn prob(table: &[V], weights: &[(usize, u64)]) -> (u64, u64) {
    let (mut t, mut f) = (0, 0);
    for &(w, x) in weights {
        match table[w] {
            2 => t += x,
            0 => f += x,
            _ => {}
        }
    }
    if t + f == 0 {
        (1, 1)
    } else {
        (t, t + f)
    }
}

pub fn greater(p: (u64, u64), q: (u64, u64)) -> bool {
    p.0 * q.1 > q.0 * p.1
}

pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize, conditionals: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..20) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    let ops = if conditionals { 4 } else { 3 };
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1, conditionals);
    match rng.gen_range(0..ops) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::cond(sub(rng), sub(rng)),
    }
}

/// Up to three premises over at most three atoms, depth at most three.
pub fn random_sequent<R: Rng>(rng: &mut R) -> Sequent {
    let atoms = &["a", "b", "c"][..rng.gen_range(1..=3)];
    let premises = (0..rng.gen_range(0..=3))
        .map(|_| random_formula(rng, atoms, 3, true))
        .collect();
    Sequent::new(premises, random_formula(rng, atoms, 3, true))
}

pub fn formula_strategy(atoms: &'static [&'static str], depth: u32, conditionals: bool) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        8 => prop::sample::select(atoms).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(x, y)| Formula::and(x, y))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(x, y)| Formula::or(x, y))
                .boxed(),
        ];
        if conditionals {
            options.push((inner.clone(), inner).prop_map(|(x, y)| Formula::cond(x, y)).boxed());
        }
        proptest::strategy::Union::new(options)
    })
    .boxed()
}

pub fn sequent_strategy(max_premises: usize) -> impl Strategy<Value = Sequent> {
    (
        prop::collection::vec(formula_strategy(&["a", "b", "c"], 2, true), 0..=max_premises),
        formula_strategy(&["a", "b", "c"], 2, true),
    )
        .prop_map(|(p, c)| Sequent::new(p, c))
}
