// The divided-difference kernel agrees with the chord slope of the map.

use std::f64::consts::FRAC_PI_4;

use harmonic_sections::lab::{divided_difference, kernel, kernel_identity_check, section, ExtremalModel};
use harmonic_sections::radius::FamilyClass;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = section(&ExtremalModel::new(FamilyClass::General), 4, 4)?;
    let (r, theta, t) = (0.2, 0.7, FRAC_PI_4);
    let z = Complex64::from_polar(r, theta);
    let k = kernel(&p, z, t)?;
    let dd = divided_difference(&p, Complex64::from_polar(r, theta + t), Complex64::from_polar(r, theta - t))?;
    println!("kernel / z          = {:.12}", k / z);
    println!("divided difference  = {:.12}", dd);

    let check = kernel_identity_check(42, 20, 50)?;
    println!(
        "seed 42, {} random polynomials x {} points: max relative error {:.2e}",
        check.polynomials, check.triples, check.max_relative_error
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("kernel identity");
}
