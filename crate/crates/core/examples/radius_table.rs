// Diagonal radii r_{n,n} for both families, with asymptotic lower bounds.

use harmonic_sections::radius::{solve_radius, FamilyClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for class in [FamilyClass::General, FamilyClass::Convex] {
        println!("{} class", class.name());
        println!("{:>5} {:>12} {:>12} {:>6}", "n", "radius", "lower bound", "iters");
        for n in [2, 3, 4, 5, 10, 17, 50, 100, 287] {
            let r = solve_radius(class, n, n)?;
            let lb = r.lower_bound.map_or("-".to_string(), |v| format!("{v:.6}"));
            println!("{n:>5} {:>12.6} {lb:>12} {:>6}", r.radius, r.iterations);
        }
        println!();
    }
    // Off-diagonal sections: the co-analytic order matters less.
    let r = solve_radius(FamilyClass::General, 2, 3)?;
    println!("general r_(2,3) = {:.7}", r.radius);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("radius table");
}
