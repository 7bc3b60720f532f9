//! One line per acceptance criterion; the test fails if any criterion fails.

use zkerov::acceptance::{run_suite, SuiteOptions};

#[test]
fn acceptance_suite() {
    let results = run_suite(&SuiteOptions::default());
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
