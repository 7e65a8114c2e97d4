// Write the ψ and μ curves and a boundary image as SVG files.

use std::path::PathBuf;

use harmonic_sections::cli::write_atomic;
use harmonic_sections::lab::{section, ExtremalModel};
use harmonic_sections::plot::{boundary_image_svg, radius_curve_svg};
use harmonic_sections::radius::FamilyClass;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::var_os("HSECT_PLOT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("hsect-plots"));
    std::fs::create_dir_all(&dir)?;

    let files = [
        ("psi_2.svg", radius_curve_svg(FamilyClass::General, 2, None)?),
        ("mu_17.svg", radius_curve_svg(FamilyClass::Convex, 17, Some(0.5))?),
        (
            "boundary_general_5.svg",
            boundary_image_svg(&section(&ExtremalModel::new(FamilyClass::General), 5, 5)?, 0.2)?,
        ),
    ];
    for (name, svg) in files {
        let path = dir.join(name);
        write_atomic(&path, svg.as_bytes())?;
        println!("wrote {} ({} bytes)", path.display(), svg.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("plots");
}
