use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use trivalent::catalog;
use trivalent::probability::demos::{mcgee_report, triviality_witness, McgeeReport};
use trivalent::probability::search::search_probabilistic_countermodel;
use trivalent::probability::{check_adams, conditional_probability, partition, Odds};
use trivalent::{
    truth_table, Checker, Error, ExactCredence, Formula, Limits, Logic, Rational, Scalar, SemanticsConfig, Sequent,
    ValuationMode,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "trivalent",
    version,
    about = "Trivalent conditionals: truth tables, probability and consequence"
)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// Truth tables: cooper-quasi, definetti-quasi, cooper-sk, definetti-sk.
    #[arg(long, global = true, default_value = "cooper-quasi")]
    semantics: SemanticsConfig,
    /// Restrict atoms to classical values.
    #[arg(long, global = true)]
    bivalent: bool,
    /// Emit one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate credences per premise subset.
    #[arg(long, global = true, default_value_t = 2000)]
    budget: usize,
    /// Override the atom enumeration cap.
    #[arg(long, global = true)]
    max_atoms: Option<usize>,
}

impl Shared {
    fn mode(&self) -> ValuationMode {
        if self.bivalent {
            ValuationMode::Bivalent
        } else {
            ValuationMode::Trivalent
        }
    }

    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(n) = self.max_atoms {
            limits.max_trivalent_atoms = n;
            limits.max_bivalent_atoms = n;
        }
        limits
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent `P1; P2 |- C`.
    Check {
        #[arg(long, default_value = "c")]
        logic: Logic,
        /// For U: report a countermodel for every premise subset.
        #[arg(long)]
        exhaustive: bool,
        sequent: String,
    },
    /// Print the truth table of a formula.
    Table { formula: String },
    /// Probability and decimal odds of a formula under a credence file.
    Prob {
        #[arg(long)]
        credence: PathBuf,
        formula: String,
    },
    /// Compare p(a -> c) with p(c | a).
    Adams {
        #[arg(long)]
        credence: PathBuf,
        a: String,
        c: String,
    },
    /// Search for credences refuting every premise subset.
    CountermodelSearch { sequent: String },
    /// Reproduce the principle table.
    Principles {
        /// Formula depth for rule-level principles (1 to 3).
        #[arg(long, default_value_t = catalog::DEFAULT_META_DEPTH)]
        depth: usize,
    },
    /// The three-candidate election example.
    Mcgee {
        /// Shares of Reagan, Carter and Anderson, e.g. `60/100,30/100,10/100`.
        #[arg(long)]
        weights: Option<String>,
    },
    /// A credence on which p(a -> c) differs from p(c).
    Triviality {
        /// Random credences for the preservation check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

type Outcome = Result<(bool, Value, String), Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check {
            logic,
            exhaustive,
            sequent,
        } => check(&cli.shared, *logic, *exhaustive, sequent),
        Command::Table { formula } => table(&cli.shared, formula),
        Command::Prob { credence, formula } => prob(&cli.shared, credence, formula),
        Command::Adams { credence, a, c } => adams(&cli.shared, credence, a, c),
        Command::CountermodelSearch { sequent } => search(&cli.shared, sequent),
        Command::Principles { depth } => principles(&cli.shared, *depth),
        Command::Mcgee { weights } => mcgee(weights.as_deref()),
        Command::Triviality { samples } => triviality(&cli.shared, *samples),
    };
    match result {
        Ok((ok, mut doc, text)) => {
            let body = if cli.shared.json {
                doc["schema_version"] = json!(SCHEMA_VERSION);
                serde_json::to_string_pretty(&doc).expect("JSON values serialise") + "\n"
            } else {
                text
            };
            // A closed pipe downstream is not an error.
            let _ = std::io::stdout().write_all(body.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn read_credence(path: &PathBuf) -> Result<ExactCredence, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::InvalidCredence(format!("cannot read {}: {e}", path.display())))?;
    ExactCredence::from_json(&text)
}

fn check(shared: &Shared, logic: Logic, exhaustive: bool, text: &str) -> Outcome {
    let sequent = Sequent::parse(text)?;
    let checker = Checker::new(shared.semantics, shared.mode())
        .with_limits(shared.limits())
        .exhaustive(exhaustive);
    let v = checker.entails(logic, &sequent)?;
    let mut out = format!("{logic}: {}\n", if v.is_valid() { "valid" } else { "invalid" });
    if let Some(cm) = &v.countermodel {
        out += &format!("countermodel: {cm}\n");
    }
    if let Some(subset) = &v.witness_subset {
        let names: Vec<String> = subset.iter().map(|&i| sequent.premises[i].render()).collect();
        out += &format!("witness subset: {{{}}}\n", names.join("; "));
    }
    if v.conclusion_is_theorem {
        out += "conclusion is a C-theorem\n";
    }
    for s in &v.subset_countermodels {
        out += &format!("subset {:?}: countermodel {}\n", s.subset, s.countermodel);
    }
    let mut doc = to_value(&v);
    doc["sequent"] = json!(sequent.to_string());
    doc["semantics"] = to_value(&shared.semantics);
    doc["mode"] = to_value(&shared.mode());
    Ok((v.is_valid(), doc, out))
}

fn table(shared: &Shared, text: &str) -> Outcome {
    let f = Formula::parse(text)?;
    let t = truth_table(&f, shared.semantics, shared.mode(), &shared.limits())?;
    Ok((true, to_value(&t), t.to_text()))
}

fn prob(shared: &Shared, path: &PathBuf, text: &str) -> Outcome {
    let cr = read_credence(path)?;
    let f = Formula::parse(text)?;
    let part = partition(&f, &cr, shared.semantics)?;
    let p = part.probability();
    let odds = match part.decimal_odds() {
        Ok(Odds::Finite(x)) => Some(x.to_string()),
        Ok(Odds::Infinite) => Some("inf".to_string()),
        Err(Error::UndefinedOdds) => None,
        Err(e) => return Err(e),
    };
    let doc = json!({
        "formula": f.render(),
        "semantics": shared.semantics,
        "partition": {
            "true": part.true_mass.to_string(),
            "indeterminate": part.indeterminate_mass.to_string(),
            "false": part.false_mass.to_string(),
        },
        "probability": p.to_string(),
        "odds": odds,
    });
    let text = format!(
        "masses: true {}, indeterminate {}, false {}\np({}) = {} ~ {:.6}\nodds: {}\n",
        part.true_mass,
        part.indeterminate_mass,
        part.false_mass,
        f,
        p,
        p.to_f64(),
        odds.as_deref().unwrap_or("undefined"),
    );
    Ok((true, doc, text))
}

fn adams(shared: &Shared, path: &PathBuf, a: &str, c: &str) -> Outcome {
    let cr = read_credence(path)?;
    let (a, c) = (Formula::parse(a)?, Formula::parse(c)?);
    let ratio = conditional_probability(&c, &a, &cr)?;
    let residual = check_adams(&a, &c, &cr, shared.semantics)?;
    let conditional = ratio.clone() + residual.clone();
    let holds = residual == Rational::from_ratio(0, 1);
    let doc = json!({
        "a": a.render(),
        "c": c.render(),
        "probability_of_conditional": conditional.to_string(),
        "conditional_probability": ratio.to_string(),
        "residual": residual.to_string(),
        "holds": holds,
    });
    let text = format!(
        "p({}) = {conditional}\np({c} | {a}) = {ratio}\nresidual: {residual}\n",
        Formula::cond(a.clone(), c.clone())
    );
    Ok((holds, doc, text))
}

fn search(shared: &Shared, text: &str) -> Outcome {
    let sequent = Sequent::parse(text)?;
    let report = search_probabilistic_countermodel::<Rational>(
        &sequent,
        shared.semantics,
        shared.mode(),
        shared.budget,
        shared.seed,
    )?;
    let found = report.is_countermodel();
    let mut out = String::new();
    let certificates: Vec<Value> = report
        .certificates
        .iter()
        .map(|c| {
            out += &format!(
                "subset {:?}: p(premises) = {} > p(conclusion) = {} under {}\n",
                c.subset, c.premise_probability, c.conclusion_probability, c.credence
            );
            json!({
                "subset": c.subset,
                "premise_probability": c.premise_probability.to_string(),
                "conclusion_probability": c.conclusion_probability.to_string(),
                "credence": to_value(&c.credence),
            })
        })
        .collect();
    for s in &report.uncertified {
        out += &format!("subset {s:?}: no refuting credence within budget\n");
    }
    out += if found {
        "countermodel found: every premise subset is refuted\n"
    } else {
        "inconclusive\n"
    };
    let doc = json!({
        "sequent": sequent.to_string(),
        "found": found,
        "certificates": certificates,
        "uncertified": report.uncertified,
        "budget": shared.budget,
        "seed": shared.seed,
    });
    Ok((!found, doc, out))
}

fn principles(shared: &Shared, depth: usize) -> Outcome {
    let report = catalog::full_report_at(shared.semantics, depth)?;
    let mut text = report.to_text();
    for r in report.mismatched() {
        text += &format!(
            "mismatch: {} ({}, {}): expected {:?}, computed {:?}",
            r.name, r.logic, r.mode, r.expected, r.computed
        );
        if let (Some(i), Some(cm)) = (&r.instance, &r.countermodel) {
            text += &format!(" [{i} at {cm}]");
        }
        text.push('\n');
    }
    Ok((report.mismatches == 0, to_value(&report), text))
}

fn parse_weights(text: &str) -> Result<[Rational; 3], Error> {
    let parts: Vec<Rational> = text
        .split(',')
        .map(|s| Rational::parse_scalar(s).ok_or_else(|| Error::InvalidCredence(format!("bad weight `{s}`"))))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| Error::InvalidCredence("expected three weights".into()))
}

fn mcgee(weights: Option<&str>) -> Outcome {
    let [r, c, a] = match weights {
        Some(text) => parse_weights(text)?,
        None => [
            Rational::from_ratio(85, 100),
            Rational::from_ratio(14, 100),
            Rational::from_ratio(1, 100),
        ],
    };
    let report = mcgee_report(r, c, a)?;
    let [(_, nested), (_, disjunction), (_, conclusion)] = McgeeReport::<Rational>::formulas();
    let ok = report.single_split.holds() && report.nested_split.holds();
    let split = |t: &trivalent::probability::demos::TotalProbability<Rational>| json!({"lhs": t.lhs.to_string(), "rhs": t.rhs.to_string(), "holds": t.holds()});
    let doc = json!({
        "credence": to_value(&report.credence),
        "premises": [
            {"formula": nested.render(), "probability": report.nested_premise.to_string()},
            {"formula": disjunction.render(), "probability": report.disjunctive_premise.to_string()},
        ],
        "conclusion": {"formula": conclusion.render(), "probability": report.conclusion.to_string()},
        "total_probability": split(&report.single_split),
        "conditional_total_probability": split(&report.nested_split),
    });
    let line = |f: &Formula, p: &Rational| format!("p({f}) = {p} ~ {:.4}\n", p.to_f64());
    let mut text = format!("credence: {}\n", report.credence);
    text += &line(&nested, &report.nested_premise);
    text += &line(&disjunction, &report.disjunctive_premise);
    text += &line(&conclusion, &report.conclusion);
    text += &format!(
        "p(n) = p(n | r | n) p(r | n) + p(n | ~(r | n)) (1 - p(r | n)): {} = {} ({})\n",
        report.single_split.lhs,
        report.single_split.rhs,
        if report.single_split.holds() { "exact" } else { "FAILS" }
    );
    text += &format!(
        "p(n | ~r) = p(n | (r | n) & ~r) p(r | n | ~r) + p(n | ~(r | n) & ~r) (1 - p(r | n | ~r)): {} = {} ({})\n",
        report.nested_split.lhs,
        report.nested_split.rhs,
        if report.nested_split.holds() { "exact" } else { "FAILS" }
    );
    Ok((ok, doc, text))
}

fn triviality(shared: &Shared, samples: usize) -> Outcome {
    let t = triviality_witness::<Rational>(samples, shared.seed)?;
    let ok = t.blocks_collapse() && t.preservation.violations.is_empty();
    let doc = json!({
        "credence": to_value(&t.credence),
        "p_conditional": t.conditional.to_string(),
        "p_consequent": t.consequent.to_string(),
        "antecedent_compatible": t.antecedent_compatible,
        "degenerate": {
            "p_conditional": t.degenerate_conditional.to_string(),
            "p_consequent": t.degenerate_consequent.to_string(),
        },
        "preservation": {
            "credences": t.preservation.credences,
            "pairs_checked": t.preservation.pairs_checked,
            "violations": t.preservation.violations,
        },
    });
    let text = format!(
        "credence: {}\np(a -> c) = {}, p(c) = {} (a compatible with c and ~c: {})\n\
         with p(a) = 1: p(a -> c) = {}, p(c) = {}\n\
         preservation: {} credences, {} pairs with p(A) > 0 and p(C) = 0, {} violations\n",
        t.credence,
        t.conditional,
        t.consequent,
        t.antecedent_compatible,
        t.degenerate_conditional,
        t.degenerate_consequent,
        t.preservation.credences,
        t.preservation.pairs_checked,
        t.preservation.violations.len(),
    );
    Ok((ok, doc, text))
}
