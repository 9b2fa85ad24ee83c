use std::process::ExitCode;

use clap::{Parser, Subcommand};

use topzeta::cli::report::{EXIT_MISMATCH, EXIT_OK, EXIT_PARSE};
use topzeta::cli::{run_corpus, run_report, ReportOptions};

#[derive(Parser)]
#[command(name = "zeta", version, about = "Topological zeta functions of plane curves from Newton polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: polygon, zeta function, poles and criterion verdict.
    Report {
        expr: String,
        #[arg(long)]
        json: bool,
        /// List the closed-form residue cross-checks.
        #[arg(long)]
        residues: bool,
        #[arg(long)]
        ascii_polygon: bool,
    },
    /// Check the B1-facet criterion against the computed poles.
    Verify {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the criterion over a seeded random corpus.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        json: bool,
    },
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Report {
            expr,
            json,
            residues,
            ascii_polygon,
        } => match run_report(&expr) {
            Ok(r) => {
                if json {
                    println!("{}", r.to_json());
                } else {
                    let opts = ReportOptions {
                        residues,
                        ascii_polygon,
                    };
                    print!("{}", r.to_text(&opts));
                }
                exit(r.exit_code())
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(EXIT_PARSE)
            }
        },
        Command::Verify { expr, json } => match run_report(&expr) {
            Ok(r) => {
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&r.criterion).expect("serializes")
                    );
                } else {
                    println!("f = {}", r.input);
                    print!("{}", r.criterion_text());
                }
                exit(r.exit_code())
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(EXIT_PARSE)
            }
        },
        Command::Corpus { seed, count, json } => match run_corpus(seed, count) {
            Ok(s) => {
                if json {
                    println!("{}", s.to_json());
                } else {
                    print!("{}", s.to_text());
                }
                exit(if s.all_agree() { EXIT_OK } else { EXIT_MISMATCH })
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(EXIT_PARSE)
            }
        },
    }
}
