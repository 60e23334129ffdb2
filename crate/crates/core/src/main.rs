use std::process::ExitCode;

use clap::Parser;
use vlimit::cli::{error_object, run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(text) => {
            if args.out.is_none() {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", error_object(&e));
            ExitCode::from(2)
        }
    }
}
