//! Batch front end: read a configuration, run commands, write the report
//! and map the outcome to an exit code.

mod config;
mod run;

use std::path::PathBuf;

pub use config::{parse_config, Command, ConfigError, RunConfig, Twist};
pub use run::{run_command, RunError};

use crate::report::Report;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

/// Command-line overrides of the configuration.
#[derive(Clone, Debug, Default)]
pub struct Invocation {
    pub config: PathBuf,
    pub command: Option<String>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// What a run produced: the rendered report (empty on configuration
/// errors), diagnostics for stderr and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub diagnostics: Vec<String>,
    pub exit: u8,
    /// Whether the full report went to a file rather than standard output.
    pub written: bool,
}

impl Outcome {
    fn config_error(msg: String) -> Self {
        Outcome { report: None, diagnostics: vec![msg], exit: EXIT_CONFIG, written: false }
    }
}

/// Commands to run: the command-line choice, else the configured list,
/// else `verify-all`.
fn commands(cfg: &RunConfig, inv: &Invocation) -> Result<Vec<Command>, String> {
    if let Some(c) = &inv.command {
        return Ok(vec![c.parse()?]);
    }
    Ok(if cfg.commands.is_empty() { vec![Command::VerifyAll] } else { cfg.commands.clone() })
}

/// Parse, run and report, without touching the file system beyond reading
/// the configuration.
pub fn execute_text(text: &str, inv: &Invocation) -> Outcome {
    let cfg = match parse_config(text) {
        Ok(c) => c,
        Err(e) => return Outcome::config_error(e.to_string()),
    };
    let cmds = match commands(&cfg, inv) {
        Ok(c) => c,
        Err(e) => return Outcome::config_error(e),
    };
    let threads = inv.threads.or(cfg.threads);
    let body = || {
        let mut report = Report::new();
        for &c in &cmds {
            match run_command(&cfg, c) {
                Ok(r) => report.merge(r),
                Err(e) if e.limit => return Err(format!("{}: {e}", c.name())),
                Err(e) => {
                    report.line(format!("{}: {e}", c.name()));
                    report.check(crate::report::Check::new(format!("{}.completed", c.name()), false, e.to_string()));
                }
            }
        }
        Ok(report)
    };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(body),
            Err(e) => return Outcome::config_error(format!("threads: {e}")),
        },
        None => body(),
    };
    match result {
        Ok(report) => {
            let failures: Vec<String> =
                report.failures().map(|c| format!("FAIL {}: {}", c.name, c.detail)).collect();
            let exit = if failures.is_empty() { EXIT_PASS } else { EXIT_CHECK_FAILED };
            Outcome { report: Some(report), diagnostics: failures, exit, written: false }
        }
        Err(msg) => Outcome::config_error(msg),
    }
}

/// Full run: read the configuration, execute and write the outputs.
pub fn execute(inv: &Invocation) -> Outcome {
    let text = match std::fs::read_to_string(&inv.config) {
        Ok(t) => t,
        Err(e) => return Outcome::config_error(format!("{}: {e}", inv.config.display())),
    };
    let mut outcome = execute_text(&text, inv);
    let Some(report) = &outcome.report else {
        return outcome;
    };
    // output paths are resolved against the configuration's directory
    let cfg = parse_config(&text).expect("parsed above");
    let base = inv.config.parent().map(PathBuf::from).unwrap_or_default();
    let resolve = |p: &PathBuf| if p.is_absolute() { p.clone() } else { base.join(p) };
    let report_path = inv.out.clone().or(cfg.report.as_ref().map(resolve));
    outcome.written = report_path.is_some();
    let targets = [(report_path, report.render()), (cfg.machine.as_ref().map(resolve), report.machine())];
    for (path, text) in targets {
        if let Some(path) = path {
            if let Err(e) = std::fs::write(&path, text) {
                outcome.diagnostics.push(format!("{}: {e}", path.display()));
                outcome.exit = EXIT_CONFIG;
            }
        }
    }
    outcome
}
