use clap::Parser;
use ftspanner_cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let outcome = run(&cfg);
    if let Some(out) = &outcome.stdout {
        print!("{out}");
    }
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    std::process::exit(outcome.status as i32);
}
