//! Rendering helpers: human-readable tables by default, machine JSON with
//! `--json`.  Coefficients print as JSON numbers when they fit in a u64
//! and as decimal strings beyond that, so output is always exact.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qsc_core::polytope::{Inequality, InequalitySystem, MembershipReport};
use qsc_core::serial::rat_to_string;
use qsc_core::verify::{RealizeOutcome, SampleReport};
use serde_json::{json, Value};

use crate::CliError;

/// One term of a (quantum) product: q-degree and exact coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub partition: Vec<u32>,
    pub q: u32,
    pub coeff: BigInt,
}

/// Comma list of parts, `"0"` for the empty partition / trivial weight —
/// the same syntax the flags accept.
pub fn render_parts(parts: &[u32]) -> String {
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

fn coeff_json(c: &BigInt) -> Value {
    match c.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

pub fn emit_terms(json_mode: bool, terms: &[Term]) {
    if json_mode {
        let arr: Vec<Value> = terms
            .iter()
            .map(|t| json!({"partition": t.partition, "q": t.q, "coeff": coeff_json(&t.coeff)}))
            .collect();
        println!("{}", Value::from(arr));
    } else if terms.is_empty() {
        println!("0");
    } else {
        println!("{:<16} {:>2}  coeff", "partition", "q");
        for t in terms {
            println!("{:<16} {:>2}  {}", render_parts(&t.partition), t.q, t.coeff);
        }
    }
}

fn render_subsets(ineq: &Inequality) -> String {
    ineq.subsets()
        .iter()
        .map(|s| {
            format!("{{{}}}", s.elems().iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn print_system(sys: &InequalitySystem) {
    println!(
        "{:?} system for n = {}, l = {}: {} records",
        sys.kind,
        sys.n,
        sys.l,
        sys.inequalities.len()
    );
    println!("{:>3} {:>2} {:>4}  subsets", "r", "d", "gw");
    for q in &sys.inequalities {
        println!("{:>3} {:>2} {:>4}  {}", q.r(), q.d(), q.gw(), render_subsets(q));
    }
}

pub fn print_membership(report: &MembershipReport) {
    if report.member {
        println!("member");
    } else {
        println!("non-member: {} violated record(s)", report.violations.len());
        for v in &report.violations {
            println!(
                "  excess {} from r={} d={} {}",
                rat_to_string(&v.excess),
                v.inequality.r(),
                v.inequality.d(),
                render_subsets(&v.inequality)
            );
        }
    }
}

pub fn print_sample(report: &SampleReport) {
    println!(
        "trials = {}, tolerance = {:e}, violations = {}, max excess = {:e}",
        report.trials,
        report.tolerance,
        report.violations.len(),
        report.max_violation
    );
    for v in &report.violations {
        println!(
            "  trial {} (seed {}): record #{} exceeded by {:e}",
            v.trial, v.seed, v.inequality_index, v.excess
        );
    }
}

pub fn emit_realize(json_mode: bool, outcome: &RealizeOutcome) -> Result<(), CliError> {
    if json_mode {
        let v = match outcome {
            RealizeOutcome::Realized(r) => {
                json!({"realized": true, "residual": r.residual, "matrices": r.matrices})
            }
            RealizeOutcome::Failed { best_residual } => {
                json!({"realized": false, "residual": best_residual})
            }
        };
        println!("{v}");
    } else {
        match outcome {
            RealizeOutcome::Realized(r) => {
                println!("realized: product within {:e} of the identity", r.residual)
            }
            RealizeOutcome::Failed { best_residual } => {
                println!(
                    "not realized: best residual {best_residual:e} (not a non-membership proof)"
                )
            }
        }
    }
    Ok(())
}

pub fn emit_fusion(json_mode: bool, pairs: &[(String, BigInt)]) -> Result<(), CliError> {
    if json_mode {
        let mut map = serde_json::Map::new();
        for (k, c) in pairs {
            map.insert(k.clone(), coeff_json(c));
        }
        println!("{}", Value::Object(map));
    } else if pairs.is_empty() {
        println!("0");
    } else {
        println!("{:<16} coeff", "weight");
        for (k, c) in pairs {
            println!("{k:<16} {c}");
        }
    }
    Ok(())
}
