use clap::Parser;
use livsic_cli::{run_and_emit, Cli, CliError, JobConfig};

fn main() {
    let cli = Cli::parse();
    let code = match JobConfig::from_cli(cli) {
        Ok(cfg) => run_and_emit(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            CliError::EXIT_CODE
        }
    };
    std::process::exit(code);
}
