//! `pfg`: command-line front end for the picture fuzzy subgroup library.

mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use commands::Ctx;

/// The predicate held, or every check passed.
const HOLDS: u8 = 0;
/// The predicate failed, or some check failed.
const FAILS: u8 = 1;
/// Usage or input error. Clap exits with the same code on bad arguments.
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        max_order: cli.max_order,
    };
    let result = match &cli.command {
        Command::Check(args) => commands::check(&ctx, args),
        Command::Cut(args) => commands::cut(&ctx, args),
        Command::Coset(args) => commands::coset(&ctx, args),
        Command::Product(args) => commands::product(&ctx, args),
        Command::Image(args) => commands::image_cmd(&ctx, args),
        Command::Verify(args) => commands::verify(&ctx, args),
        Command::Sample(args) => commands::sample(&ctx, args),
        Command::Group(args) => commands::group(&ctx, args),
    };
    match result {
        Ok(true) => ExitCode::from(HOLDS),
        Ok(false) => ExitCode::from(FAILS),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(INPUT_ERROR)
        }
    }
}

/// The error chain joined by colons, skipping causes whose text the outer
/// message already includes.
fn describe(error: &anyhow::Error) -> String {
    let mut message = error.to_string();
    for cause in error.chain().skip(1) {
        let cause = cause.to_string();
        if !message.contains(&cause) {
            message.push_str(": ");
            message.push_str(&cause);
        }
    }
    message
}
