use clap::Parser;
use matchfactory::cli::{run, Cli, EXIT_INPUT_ERROR};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_INPUT_ERROR);
        }
    }
}
