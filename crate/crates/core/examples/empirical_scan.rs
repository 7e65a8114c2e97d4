// Empirical univalence radius of extremal-coefficient sections next to the
// certified radius.

use harmonic_sections::lab::{empirical_radius, section, ExtremalModel, ProbeGrid};
use harmonic_sections::radius::{solve_radius, FamilyClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Coarser than the default grid so the example finishes quickly.
    let grid = ProbeGrid::new(24, 128, 32, 0.5)?;
    for (class, n) in [(FamilyClass::General, 2), (FamilyClass::General, 5), (FamilyClass::Convex, 5)] {
        let certified = solve_radius(class, n, n)?.radius;
        let p = section(&ExtremalModel::new(class), n as usize, n as usize)?;
        let e = empirical_radius(&p, &grid)?;
        println!(
            "{:<8} n = m = {n:<3} certified {certified:.6}  empirical {:.3}  binding {:?}",
            class.name(),
            e.radius,
            e.binding
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scan");
}
