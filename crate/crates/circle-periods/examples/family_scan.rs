//! Scan the dream family and print the table as CSV.

use circle_periods::families::{mts1_scan, FamilyName, VerifyConfig};
use circle_periods::report::scan_csv;

fn main() -> anyhow::Result<()> {
    let report = mts1_scan(FamilyName::Dream, 3, 15, &VerifyConfig::default())?;
    print!("{}", scan_csv(&report)?);
    println!("monotone and green: {}", report.all_green());
    Ok(())
}
