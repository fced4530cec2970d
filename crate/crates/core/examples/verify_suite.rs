//! Running a slice of the verification suite and emitting its JSON report.

use aw_bispectral::harness::{all_pass, reports_to_json, run_suite, SuiteConfig};
use aw_bispectral::Result;

pub fn run() -> Result<()> {
    let config = SuiteConfig {
        checks: vec!["sears".into(), "duality".into(), "boundary".into()],
        d: 2,
        seed: 7,
        ..Default::default()
    };
    let reports = run_suite(&config)?;
    for r in reports.iter().take(3) {
        println!("{} {} pass={}", r.name, r.inputs, r.pass);
    }
    let json = reports_to_json(&reports)?;
    println!("{} reports, {} bytes of JSON", reports.len(), json.len());
    assert!(all_pass(&reports));
    assert_eq!(json, reports_to_json(&run_suite(&config)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
