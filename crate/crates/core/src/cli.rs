//! Command-line front end. [`run_command`] does all the work and returns
//! the exit code and text instead of printing, so it can be tested in-process.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::caps::Caps;
use crate::error::Error;
use crate::fuzzy::SetFamily;
use crate::io::{parse_family, parse_fuzzy, parse_lattice_with_cap, render_family, render_fuzzy};
use crate::lattice::Lattice;
use crate::order::automorphisms;
use crate::representation::{analyze, brute_force_oracle_with_cap, closure_violation, enumerate_n};
use crate::selftest::{self, SelftestConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CLOSED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-cuts",
    about = "Count and enumerate L-fuzzy sets with a given family of cuts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print |S|, |OI| and |N| for a lattice and a family
    Count { lattice: PathBuf, family: PathBuf },
    /// Print every fuzzy set whose cut family is the given family
    Enumerate { lattice: PathBuf, family: PathBuf },
    /// Decide whether exactly one fuzzy set has the given cuts
    Unique { lattice: PathBuf, family: PathBuf },
    /// Scan all maps X -> L and compare with the enumeration
    Oracle { lattice: PathBuf, family: PathBuf },
    /// Print the cuts of a fuzzy set
    Cuts { lattice: PathBuf, fuzzy: PathBuf },
    /// List the automorphisms of a lattice, or of (F, ⊇) for a family file
    Automorphisms { file: PathBuf },
    /// Cross-check the counting formula on random instances
    Selftest {
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 6)]
        max_lattice: usize,
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub text: String,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput {
            code: EXIT_OK,
            text,
        }
    }

    fn fail(code: i32, text: String) -> Self {
        CommandOutput { code, text }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FamilyNotClosed(_) => EXIT_NOT_CLOSED,
        Error::CarrierTooLarge { .. } | Error::SearchSpaceTooLarge { .. } => EXIT_CAP,
        Error::InternalInvariantViolation(_) | Error::WitnessVerificationFailed(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for CommandOutput {
    fn from(e: Error) -> Self {
        CommandOutput::fail(exit_code(&e), format!("error: {e}\n"))
    }
}

/// Runs the command line `argv` (program name first) with caps taken from
/// the environment.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Caps::from_env() {
        Ok(caps) => run_command_with_caps(argv, &caps),
        Err(e) => e.into(),
    }
}

pub fn run_command_with_caps<I, T>(argv: I, caps: &Caps) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return CommandOutput::fail(code, e.render().to_string());
        }
    };
    match dispatch(cli.command, caps) {
        Ok(out) => out,
        Err(e) => e.into(),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn load_lattice(path: &Path, caps: &Caps) -> Result<Lattice, Error> {
    parse_lattice_with_cap(&read(path)?, caps.lattice).map_err(|e| in_file(path, e))
}

fn load_family(path: &Path) -> Result<SetFamily, Error> {
    parse_family(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_pair(lattice: &Path, family: &Path, caps: &Caps) -> Result<(Lattice, SetFamily), Error> {
    let l = load_lattice(lattice, caps)?;
    let f = load_family(family)?;
    if let Some(why) = closure_violation(&f) {
        return Err(Error::FamilyNotClosed(why));
    }
    Ok((l, f))
}

fn blocks(sets: &[crate::fuzzy::FuzzySet]) -> String {
    sets.iter()
        .map(render_fuzzy)
        .collect::<Vec<_>>()
        .join("\n")
}

fn dispatch(command: Command, caps: &Caps) -> Result<CommandOutput, Error> {
    Ok(match command {
        Command::Count { lattice, family } => {
            let (l, f) = load_pair(&lattice, &family, caps)?;
            let r = analyze(&l, &f, false);
            CommandOutput::ok(format!(
                "|S|={} |OI|={} |N|={}\n",
                r.s_members.len(),
                r.oi_size,
                r.total
            ))
        }
        Command::Enumerate { lattice, family } => {
            let (l, f) = load_pair(&lattice, &family, caps)?;
            CommandOutput::ok(blocks(&enumerate_n(&l, &f)?))
        }
        Command::Unique { lattice, family } => {
            let (l, f) = load_pair(&lattice, &family, caps)?;
            let r = analyze(&l, &f, false);
            CommandOutput::ok(if r.unique {
                "unique\n".to_owned()
            } else {
                format!("not-unique ({})\n", r.total)
            })
        }
        Command::Oracle { lattice, family } => {
            let (l, f) = load_pair(&lattice, &family, caps)?;
            let found = brute_force_oracle_with_cap(&l, &f, caps.oracle)?;
            let expected = enumerate_n(&l, &f)?;
            let mut text = blocks(&found);
            if !found.is_empty() {
                text.push('\n');
            }
            if found == expected {
                text.push_str("MATCH\n");
                CommandOutput::ok(text)
            } else {
                text.push_str("MISMATCH\n");
                CommandOutput::fail(EXIT_MISMATCH, text)
            }
        }
        Command::Cuts { lattice, fuzzy } => {
            let l = load_lattice(&lattice, caps)?;
            let mu = parse_fuzzy(&read(&fuzzy)?, &l).map_err(|e| in_file(&fuzzy, e))?;
            let mut text = String::new();
            for p in 0..l.len() {
                let names: Vec<&str> = mu
                    .cut(p)
                    .members()
                    .iter()
                    .map(|&x| mu.domain()[x].as_str())
                    .collect();
                if names.is_empty() {
                    text.push_str(&format!("cut {}:\n", l.name(p)));
                } else {
                    text.push_str(&format!("cut {}: {}\n", l.name(p), names.join(" ")));
                }
            }
            text.push_str(&render_family(&mu.cut_family()));
            CommandOutput::ok(text)
        }
        Command::Automorphisms { file } => {
            let text = read(&file)?;
            let is_family = text
                .lines()
                .any(|l| l.trim_start().starts_with("universe:"));
            let poset = if is_family {
                parse_family(&text).map_err(|e| in_file(&file, e))?.dual_poset()
            } else {
                parse_lattice_with_cap(&text, caps.lattice)
                    .map_err(|e| in_file(&file, e))?
                    .poset()
                    .clone()
            };
            let auts = automorphisms(&poset);
            let mut out = format!("|OI|={}\n", auts.len());
            for a in &auts {
                out.push_str(&a.to_string());
                out.push('\n');
            }
            CommandOutput::ok(out)
        }
        Command::Selftest {
            instances,
            max_lattice,
            max_domain,
            seed,
        } => {
            let cfg = SelftestConfig {
                instances,
                max_lattice,
                max_domain,
                seed,
            };
            let summary = selftest::run(&cfg, caps)?;
            let code = if summary.all_passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            CommandOutput::fail(code, summary.report)
        }
    })
}
