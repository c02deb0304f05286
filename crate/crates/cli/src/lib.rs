//! Subcommands of the `singcheck` binary as library functions, plus the
//! certificate format and the acceptance battery.

pub mod args;
pub mod cert;
pub mod commands;
pub mod suite;

use args::{Cli, Command};
use commands::{Outcome, Result};
use sing_core::VarOrder;

/// Runs the parsed command line and returns its outcome. Errors mean invalid
/// input (exit status 2).
pub fn run(cli: &Cli) -> Result<Outcome> {
    let order: VarOrder = cli.global.order.into();
    match &cli.command {
        Command::Gen(a) => commands::gen(a, order),
        Command::GbCheck(a) => commands::gb_check(a, order),
        Command::Radical(a) => commands::radical(a, order),
        Command::Nonmember(a) => commands::nonmember(a, order),
        Command::QuarticCheck(a) => commands::quartic_check(a, order),
        Command::Sample(a) => commands::sample(a, order),
        Command::Vanish(a) => commands::vanish(a, order),
        Command::Act(a) => commands::act_cmd(a, order),
        Command::Member(a) => commands::member(a, order),
        Command::Dit(a) => commands::dit(a, order),
        Command::Rep(c) => commands::rep(c),
        Command::Suite(a) => suite::run_all(&a.only, order),
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
