//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output.
//!
//! Criterion 2 is stated for every element of the candidate basis and is
//! false as stated (some quartic products have a squared variable in their
//! leading monomial). It is printed as FAIL; this target only checks that the
//! failure is exactly the known one and that the leading ideal is still
//! generated by square-free monomials.

use std::process::ExitCode;
use std::time::Instant;

use serde_json::json;
use sing_cli::suite::{self, CriterionOutcome, ALL};
use sing_core::VarOrder;

fn known_failure(o: &CriterionOutcome) -> Result<(), String> {
    if o.id != 2 {
        return Err("unexpected failure".into());
    }
    let per_m = o.details["per_m"].as_array().ok_or("missing per-m details")?;
    let counts: Vec<usize> = per_m
        .iter()
        .map(|r| r["nonsquarefree_leading_monomials"].as_array().map_or(0, Vec::len))
        .collect();
    if counts != [0, 2, 8, 20, 40, 70] {
        return Err(format!("non-square-free counts changed: {counts:?}"));
    }
    if o.details["leading_ideal_squarefree_all_m"] != json!(true) {
        return Err("leading ideal is no longer square-free".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    println!("acceptance criteria ({} total)", ALL.len());
    let mut unexpected = Vec::new();
    let total = Instant::now();
    for id in ALL {
        let start = Instant::now();
        let outcome = match suite::run(id, VarOrder::RowMajor) {
            Ok(o) => o,
            Err(e) => {
                println!("[FAIL] {id:>2} error: {e}");
                unexpected.push(id);
                continue;
            }
        };
        println!("{}  ({:.1}s)", outcome.line(), start.elapsed().as_secs_f64());
        if !outcome.passed {
            match known_failure(&outcome) {
                Ok(()) => println!("       known: literal claim false; radicality argument holds via minimal generators"),
                Err(why) => {
                    println!("       {why}");
                    unexpected.push(id);
                }
            }
        }
    }
    println!("total {:.1}s", total.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        println!("acceptance: ok (12 pass, 1 known literal failure)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results for {unexpected:?}");
        ExitCode::FAILURE
    }
}
