mod args;
mod error;
mod manifest;
mod run;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let outcome = match cli.command {
        Command::Embed(a) => run::embed(a),
        Command::Centrality(a) => run::centrality(a),
        Command::LambdaSweep(a) => run::lambda_sweep(a),
        Command::Replay(a) => run::replay(&a.manifest, a.out),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
