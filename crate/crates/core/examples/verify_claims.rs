// Run every finite-range claim check and summarise the verdicts.

use harmonic_sections::claims::{verify_all, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let reports = verify_all()?;
    for r in &reports {
        let verdict = if r.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
        println!("{verdict}  {:<20} worst margin {:>11.3e}", r.claim_id, r.worst_margin);
        if r.verdict == Verdict::Fail {
            for note in &r.notes {
                println!("        {note}");
            }
        }
    }
    let passed = reports.iter().filter(|r| r.verdict == Verdict::Pass).count();
    println!("{passed}/{} claims pass", reports.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("claims");
}
