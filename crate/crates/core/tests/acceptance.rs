use std::process::ExitCode;

use genus_core::verify::run_all;

fn main() -> ExitCode {
    let criteria = run_all();
    for c in &criteria {
        println!("{}", c.line());
    }
    let passed = criteria.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() && criteria.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
