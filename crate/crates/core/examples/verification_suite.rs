//! Run a verification suite and print its report.

use cmcheck::report::{run_suite, SuiteOptions};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "euler".to_string());
    let report = run_suite(&name, &SuiteOptions::default()).unwrap();
    print!("{}", report.to_table());
    std::process::exit(report.exit_code());
}
