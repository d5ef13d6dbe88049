//! Runs the acceptance criteria and prints one line per criterion.

fn main() {
    let reports = invgen::suite::run_all();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", reports.len() - failed, reports.len());
}
