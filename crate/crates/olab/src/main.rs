use std::process::ExitCode;

use clap::Parser;
use olab::{out_args, run, summary, write_outputs, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli).and_then(|o| write_outputs(out_args(&cli), &o).map(|_| o)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("olab: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    eprintln!("{}", summary(&cli, &outcome));
    ExitCode::from(if outcome.pass { 0 } else { 1 })
}
