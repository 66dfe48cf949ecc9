mod common;

use common::{
    distribution_oracle, lap_segments, min_covers_exhaustive, permutation_bottleneck, random_boundary, random_points,
    rel_close, rng,
};
use perimeter_guard::deploy::{bottleneck_assign, euclidean};
use perimeter_guard::oracle::unenhanced_multi_region_single_comp;
use perimeter_guard::single_comp::{solve_multi_region_single_comp, SingleCompView};
use perimeter_guard::tiling::tile_from;
use perimeter_guard::{validate_solution, Boundary, Instance, Tolerance};
use rand::Rng;

#[test]
fn greedy_tiling_is_minimal() {
    let tol = Tolerance::default();
    for seed in 0..400 {
        let mut r = rng(20_000 + seed);
        let q = r.gen_range(1..=4);
        let b = random_boundary(&mut r, q);
        if b.is_closed_curve() {
            continue;
        }
        let k = r.gen_range(0..q);
        let segs = lap_segments(&b, k);
        let ell = r.gen_range(0.3..6.0);
        let stop = segs[q - 1].1.rem_euclid(b.total_length());
        let got = tile_from(&b, segs[0].0, stop, ell, 10_000, tol, false).unwrap();
        assert!(got.feasible);
        let want = min_covers_exhaustive(&segs, tol.stretch(ell));
        assert_eq!(got.robots_used, want, "seed {seed}: {b:?} k={k} ell={ell}");
    }
}

#[test]
fn tile_from_respects_budget() {
    let b = Boundary::from_lengths(&[2.0, 2.0, 3.0, 3.0, 2.0], &[1.0; 5]).unwrap();
    let tol = Tolerance::default();
    let all = tile_from(&b, 0.0, 16.0, 2.5, 100, tol, true).unwrap();
    assert!(all.feasible);
    assert_eq!(all.covers.len() as u64, all.robots_used);
    let short = tile_from(&b, 0.0, 16.0, 2.5, all.robots_used - 1, tol, false).unwrap();
    assert!(!short.feasible);
    assert!(tile_from(&b, 0.5, 14.0, 2.5, 10, tol, false).is_err());
}

fn single_comp_case(seed: u64) -> (Instance, Vec<f64>) {
    let mut r = rng(30_000 + seed);
    let m = r.gen_range(1..=5);
    let n = r.gen_range(m as u64..=14);
    let boundaries: Vec<Boundary> = (0..m).map(|_| random_boundary(&mut r, 1)).collect();
    let lengths = boundaries.iter().map(|b| b.segments()[0]).collect();
    (Instance::new(boundaries, n).unwrap(), lengths)
}

#[test]
fn single_comp_matches_distribution_oracle() {
    let tol = Tolerance::default();
    for seed in 0..500 {
        let (inst, lengths) = single_comp_case(seed);
        let view = SingleCompView::from_instance(&inst).unwrap();
        let fast = solve_multi_region_single_comp(&view, tol).unwrap();
        let want = distribution_oracle(&lengths, inst.robots());
        assert!(rel_close(fast.ell_star, want, 1e-9), "seed {seed}: {} vs {want}", fast.ell_star);
        let slow = unenhanced_multi_region_single_comp(&view, tol).unwrap();
        assert!(rel_close(slow.ell_star, want, 1e-9), "seed {seed}: unenhanced {}", slow.ell_star);
        assert!(validate_solution(&inst, &fast, tol).is_empty(), "seed {seed}");
    }
}

#[test]
fn bottleneck_matches_permutations() {
    for seed in 0..200 {
        let mut r = rng(40_000 + seed);
        let stations = r.gen_range(1..=7);
        let robots = if seed % 4 == 0 { r.gen_range(stations..=7) } else { stations };
        let rp = random_points(&mut r, robots);
        let sp = random_points(&mut r, stations);
        let plan = bottleneck_assign(&rp, &sp, euclidean).unwrap();
        let dist: Vec<Vec<f64>> = sp.iter().map(|s| rp.iter().map(|p| euclidean(p, s)).collect()).collect();
        assert_eq!(plan.bottleneck, permutation_bottleneck(&dist), "seed {seed}");
        assert_eq!(plan.pairs.len(), stations);
        let mut used: Vec<usize> = plan.pairs.iter().map(|p| p.0).collect();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), stations);
        assert!(plan.pairs.iter().all(|&(r_, s)| dist[s][r_] <= plan.bottleneck));
    }
}
