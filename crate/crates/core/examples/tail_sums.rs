// Closed-form coefficient tails against plain truncated sums.

use harmonic_sections::series::{tail_brute, tail_weighted, TailClass};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<20} {:>4} {:>6} {:>22} {:>10}", "class", "n", "r", "closed form", "rel. err");
    for class in TailClass::ALL {
        for (n, r) in [(2, 0.1), (10, 0.5), (50, 0.9)] {
            let closed = tail_weighted(class, n, r)?;
            let brute = tail_brute(class, n, r, 100_000)?;
            let err = (closed - brute).abs() / closed;
            println!("{:<20} {n:>4} {r:>6} {closed:>22.15e} {err:>10.2e}", format!("{class:?}"));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tail sums");
}
