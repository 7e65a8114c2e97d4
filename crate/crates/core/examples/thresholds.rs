// Smallest order whose certified radius reaches 1/4, 1/2 and 3/4.

use harmonic_sections::radius::{ctc_threshold_n, threshold_n, FamilyClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for target in [0.25, 0.5, 0.75] {
        let g = threshold_n(FamilyClass::General, target)?;
        let c = threshold_n(FamilyClass::Convex, target)?;
        let ctc = ctc_threshold_n(target)?;
        println!(
            "target {target:<4}  general n = {:<3} convex (mu roots) n = {:<3} convex (1 - 3 ln n / n) n = {}",
            g.n, c.n, ctc.n
        );
        let prev = g.radius_at_previous.map_or("-".into(), |v| format!("{v:.6}"));
        println!("              general r({}) = {:.6}, r({}) = {prev}", g.n, g.radius_at_n, g.n - 1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("thresholds");
}
