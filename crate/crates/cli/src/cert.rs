use serde::Serialize;
use serde_json::Value;
use sing_core::{Ring, VarOrder};

use crate::args::{Cli, Command, RepCommand};
use crate::commands::Outcome;

#[derive(Debug, Clone, Serialize)]
pub struct RingInfo {
    pub m: usize,
    pub n: usize,
    pub variables: usize,
    pub order: VarOrder,
    pub monomial_order: &'static str,
}

impl From<Ring> for RingInfo {
    fn from(r: Ring) -> Self {
        RingInfo { m: r.m(), n: r.n(), variables: r.num_vars(), order: r.order(), monomial_order: "degrevlex" }
    }
}

/// Self-contained record of one run. Byte-identical across reruns of the
/// same command line unless `--timings` is given.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub ring: Option<RingInfo>,
    pub passed: bool,
    pub exit_code: u8,
    pub result: Value,
    pub wall_time_ms: Option<u64>,
}

impl Certificate {
    pub fn new(cli: &Cli, outcome: Outcome, wall_time_ms: Option<u64>) -> Self {
        Certificate {
            tool: "singcheck",
            version: env!("CARGO_PKG_VERSION"),
            command: command_name(&cli.command),
            config: serde_json::to_value(cli).expect("config serializes"),
            ring: outcome.ring.map(RingInfo::from),
            passed: outcome.passed,
            exit_code: if outcome.passed { 0 } else { 1 },
            result: outcome.result,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen(_) => "gen",
        Command::GbCheck(_) => "gb-check",
        Command::Radical(_) => "radical",
        Command::Nonmember(_) => "nonmember",
        Command::QuarticCheck(_) => "quartic-check",
        Command::Sample(_) => "sample",
        Command::Vanish(_) => "vanish",
        Command::Act(_) => "act",
        Command::Member(_) => "member",
        Command::Dit(_) => "dit",
        Command::Rep(RepCommand::Cauchy { .. }) => "rep cauchy",
        Command::Rep(RepCommand::Lr { .. }) => "rep lr",
        Command::Rep(RepCommand::Obstruct { .. }) => "rep obstruct",
        Command::Suite(_) => "suite",
    }
}
