use std::io::Write;
use std::process::ExitCode;

use kaleido_cli::{run_with_format, Format, Verdict};

fn main() -> ExitCode {
    let ((code, report), format) = run_with_format(std::env::args_os());
    if report.query.command.is_empty() {
        // clap usage, help or version text
        let text = report.diagnostic.unwrap_or_default();
        if code == 0 {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
        return ExitCode::from(code as u8);
    }
    if report.verdict == Verdict::Error {
        if let Some(d) = &report.diagnostic {
            eprintln!("kscope: {d}");
        }
    }
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // a closed pipe is not an error for the verdict
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
