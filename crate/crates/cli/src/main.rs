use clap::Parser;
use gca_qmee_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse(); // usage errors exit with code 2
    match execute(&cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
