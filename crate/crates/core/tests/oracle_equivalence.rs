mod common;

use common::{random_boundary, random_instance, rel_close, rng};
use perimeter_guard::multi_comp::{solve_multi_region_multi_comp, solve_single_region_multi_comp};
use perimeter_guard::oracle::{baseline_single_region, composition_multi_region};
use perimeter_guard::{validate_solution, Instance, Tolerance};
use rand::Rng;

/// Multiplies the case counts, e.g. `ORACLE_SCALE=50` for a long soak.
fn scale() -> u64 {
    std::env::var("ORACLE_SCALE").ok().and_then(|v| v.parse().ok()).unwrap_or(1)
}

#[test]
fn single_region_matches_baseline() {
    let tol = Tolerance::default();
    for seed in 0..500 * scale() {
        let mut r = rng(seed);
        let q = r.gen_range(1..=6);
        let n = r.gen_range(1..=12);
        let b = random_boundary(&mut r, q);
        let fast = solve_single_region_multi_comp(&b, n, tol).unwrap();
        let slow = baseline_single_region(&b, n, tol).unwrap();
        assert!(
            rel_close(fast.ell_star, slow.ell_star, 1e-9),
            "seed {seed}: {b:?} n={n}: fast {} vs baseline {}",
            fast.ell_star,
            slow.ell_star
        );
        let inst = Instance::new(vec![b], n).unwrap();
        let diags = validate_solution(&inst, &fast, tol);
        assert!(diags.is_empty(), "seed {seed}: {diags:?}");
    }
}

#[test]
fn multi_region_matches_composition() {
    let tol = Tolerance::default();
    for seed in 0..200 * scale() {
        let mut r = rng(10_000 + seed);
        let m = r.gen_range(1..=3);
        let n = r.gen_range(m as u64..=10);
        let inst = random_instance(&mut r, m, 4, n);
        let fast = solve_multi_region_multi_comp(&inst, tol).unwrap();
        let slow = composition_multi_region(&inst, tol).unwrap();
        assert!(
            rel_close(fast.ell_star, slow.ell_star, 1e-9),
            "seed {seed}: fast {} vs composition {}",
            fast.ell_star,
            slow.ell_star
        );
        let diags = validate_solution(&inst, &fast, tol);
        assert!(diags.is_empty(), "seed {seed}: {diags:?}");
    }
}

