use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use sheffer_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (status, failures) = run(cli, &mut out);
    let _ = out.flush();
    if let Some(list) = failures {
        let text = serde_json::to_string(&list).unwrap_or_else(|_| "{\"failures\":[]}".into());
        eprintln!("{text}");
    }
    ExitCode::from(status.code())
}
