use std::io::Write;
use std::process::ExitCode;

use qmono::cli::{configure_threads, execute, exit_code, EXIT_USAGE};

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("qmono: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let outcome = execute(&argv, &mut out);
    let _ = out.flush();
    match &outcome {
        Ok(report) => eprintln!(
            "{}: {} instances, {} failures, {:.2}s",
            report.command,
            report.instances_checked,
            report.failures.len(),
            report.elapsed_seconds
        ),
        Err(e) => eprintln!("qmono: {e}"),
    }
    ExitCode::from(exit_code(&outcome) as u8)
}
