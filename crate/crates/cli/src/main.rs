use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fermispin_cli::error::{EXIT_FAILURE, EXIT_USAGE};
use fermispin_cli::{commands, output, Cli, CliError, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };

    match RunConfig::from_cli(cli).and_then(|cfg| commands::run(&cfg).map(|doc| (cfg, doc))) {
        Ok((cfg, doc)) => {
            let text = output::render(&doc, cfg.format);
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            // a reproduction report with any failing row is itself a failure
            if doc["result"]["all_pass"] == false {
                return ExitCode::from(EXIT_FAILURE as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_line());
    ExitCode::from(e.exit_code as u8)
}
