//! Build the same records the `fracpois` binary prints and write them as CSV.
//!
//! cargo run --example cli_output

use fracpois::cli::output::{write_records, Format};
use fracpois::cli::{cmd_dist, Cli, Command};
use clap::Parser;

fn main() -> fracpois::Result<()> {
    let cli = Cli::parse_from(["fracpois", "dist", "--n", "2", "--nu", "0.6", "--lambda", "1", "pmf", "--t", "1", "--k-max", "4"]);
    let Command::Dist(args) = &cli.command else { unreachable!() };
    let records = cmd_dist(args)?;
    write_records(&records, Format::Csv, std::io::stdout()).expect("stdout");
    Ok(())
}
