use xychain_cli::verify::{self, CRITERIA};

#[test]
fn acceptance_criteria() {
    let reports = verify::run(None, |r| println!("{}", verify::line(r))).unwrap();
    assert_eq!(reports.len(), CRITERIA.len());
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "acceptance: {} passed, {} failed {:?}",
        reports.len() - failed.len(),
        failed.len(),
        failed
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
