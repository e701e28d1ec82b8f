use qclocksync::experiments::{format_validation, validate_samplers};

fn main() -> qclocksync::Result<()> {
    let report = validate_samplers()?;
    print!("{}", format_validation(&report));
    if !report.all_passed() {
        std::process::exit(3);
    }
    Ok(())
}
