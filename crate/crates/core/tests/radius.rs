use harmonic_sections::radius::{lower_bound_convex, lower_bound_general, solve_radius, FamilyClass};

const CLASSES: [FamilyClass; 2] = [FamilyClass::General, FamilyClass::Convex];

#[test]
fn single_sign_change_on_the_scan_grid() {
    for class in CLASSES {
        for n in 2..=300 {
            assert_eq!(solve_radius(class, n, n).unwrap().sign_changes, 1, "{class:?} n={n}");
        }
        for n in 2..=40 {
            for m in 2..=40 {
                assert_eq!(solve_radius(class, n, m).unwrap().sign_changes, 1, "{class:?} ({n}, {m})");
            }
        }
        for (n, m) in [(2, 300), (300, 2), (17, 250), (250, 17)] {
            assert_eq!(solve_radius(class, n, m).unwrap().sign_changes, 1, "{class:?} ({n}, {m})");
        }
    }
}

#[test]
fn off_diagonal_radius_dominates_min_order_radius() {
    for class in CLASSES {
        for n in 2..=40 {
            for m in 2..=40 {
                let l = n.min(m);
                let r = solve_radius(class, n, m).unwrap().radius;
                let diag = solve_radius(class, l, l).unwrap().radius;
                assert!(r >= diag - 1e-12, "{class:?} ({n}, {m})");
                let bound = match class {
                    FamilyClass::General if l >= 15 => Some(lower_bound_general(l).unwrap()),
                    FamilyClass::Convex if l >= 7 => Some(lower_bound_convex(l).unwrap()),
                    _ => None,
                };
                if let Some(b) = bound {
                    assert!(r > b, "{class:?} ({n}, {m})");
                }
            }
        }
    }
}
