//! Prints the exact reproduction report for the worked spoke-tree examples.

fn main() -> hadamono::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let report = hadamono::repro::worked_examples(seed)?;
    for item in &report.items {
        println!("{} {:<22} {}", if item.passed { "ok  " } else { "FAIL" }, item.id, item.actual);
    }
    println!("{}", if report.passed { "all items reproduced" } else { "some items differ" });
    Ok(())
}
