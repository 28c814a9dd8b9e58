use std::io::Write;

use clap::Parser;
use gpa::{max_vertices_from_env, run, Cli, EXIT_INPUT};

fn main() {
    // clap's own usage-error code (2) would collide with "verdict unknown"
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let max_vertices = match max_vertices_from_env() {
        Ok(m) => m,
        Err(msg) => {
            eprintln!("gpa: {msg}");
            std::process::exit(EXIT_INPUT);
        }
    };
    let out = run(&cli.into_request(max_vertices));
    std::io::stdout().write_all(&out.stdout).expect("write stdout");
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
