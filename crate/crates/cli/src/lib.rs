//! Command-line front end for `qmjac`: subcommands, JSON and CSV reporters,
//! the point-count cache and the reproduction pipelines.
//!
//! Exit codes: 0 success, 1 verdict mismatch, 2 usage error, 3 computational error.

pub mod args;
pub mod cache;
pub mod commands;
pub mod output;
pub mod pipeline;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, Parser};
use num_complex::Complex64;
use serde_json::{json, Value};

use args::{Cli, Command};
use cache::CountCache;
use commands::Context;
use output::{render, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// Roff source of the manual page.
pub fn manpage() -> std::io::Result<Vec<u8>> {
    let mut out = Vec::new();
    clap_mangen::Man::new(Cli::command()).render(&mut out)?;
    Ok(out)
}

fn error_value(e: &qmjac::Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or_default().to_string();
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

/// Run with explicit arguments, writing the report to `out`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if matches!(cli.command, Command::Man) {
        return match manpage().and_then(|roff| out.write_all(&roff)) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        };
    }
    let g = &cli.global;
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Pretty
    };
    if let Some(n) = g.threads {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cache = match &g.cache {
        Some(path) => match CountCache::open(path) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("error: cannot open cache {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => None,
    };
    let mut ctx = Context { budget: g.budget, seed: g.seed, cache };
    let result = dispatch(cli.command, &mut ctx);
    match result {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", render(&value, format));
            code
        }
        Err(e) => {
            let v = error_value(&e);
            let _ = writeln!(out, "{}", render(&v, format));
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, ctx: &mut Context) -> qmjac::Result<(Value, i32)> {
    let value = match command {
        Command::Family(f) => commands::family(&commands::fiber_params(&f)?)?,
        Command::Frobenius { fiber, p, ansatz } => {
            commands::frobenius(ctx, &commands::fiber_params(&fiber)?, p, commands::ansatz(ansatz))?
        }
        Command::Monodromy { fiber, primes, bad, omega, center } => commands::monodromy(
            ctx,
            &commands::fiber_params(&fiber)?,
            &primes.0,
            &bad.0,
            omega.as_ref().map(|o| o.0.as_slice()),
            center.as_ref().map(|c| c.0.as_slice()),
        )?,
        Command::Lattice => commands::lattice()?,
        Command::Periods { a_re, a_im, tol, stability, radius } => {
            commands::periods(Complex64::new(a_re, a_im), tol, stability, radius, ctx.seed)?
        }
        Command::Clusters { pullback, b, p, construct_bad, g } => match (pullback, b, p) {
            (Some(k), _, _) => commands::clusters_pullback(k)?,
            (None, Some(b), Some(p)) => commands::clusters_padic(&b.0, p)?,
            (None, None, Some(p)) if construct_bad => commands::clusters_construct(g, p)?,
            _ => {
                return Err(qmjac::Error::PreconditionFailed(
                    "clusters needs --pullback K, --b LIST --p P, or --construct-bad --p P".into(),
                ))
            }
        },
        Command::SchoenVerify { g, beta, gamma, trials, symbolic } => {
            commands::schoen(g, beta.0, gamma, trials, ctx.seed, symbolic)?
        }
        Command::Pipeline { name } => {
            let report = pipeline::run_pipeline(name, ctx)?;
            let code = if report.pass { EXIT_OK } else { EXIT_MISMATCH };
            return Ok((output::to_value(&report), code));
        }
        Command::Man => unreachable!("handled before dispatch"),
    };
    Ok((value, EXIT_OK))
}
