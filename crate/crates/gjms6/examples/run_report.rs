//! Run the DtN suite programmatically, print the JSON report and write the
//! multiplier table as CSV to the system temp directory.

use gjms6::cli_report::{emit_csv, render_json, run_suite, CsvKind, RunConfig, Suite};

fn main() -> gjms6::Result<()> {
    let mut cfg = RunConfig::new(Suite::Dtn);
    cfg.lmax = 6;
    let report = run_suite(&cfg)?;
    print!("{}", render_json(&report));
    let path = emit_csv(&report, CsvKind::MultiplierTable, &std::env::temp_dir())?;
    println!("wrote {}", path.display());
    print!("{}", std::fs::read_to_string(path)?);
    Ok(())
}
