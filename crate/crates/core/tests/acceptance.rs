use invgen::suite::{run_criterion, CRITERIA};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for (id, _, _) in CRITERIA {
        let report = run_criterion(id).expect("known criterion");
        println!("{}", report.line());
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
