#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use perimeter_guard::geometry::ArcKind;
use perimeter_guard::{bounds, solve, validate_solution, Boundary, Instance, Point, Solution, Tolerance, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Arc length drawn either from small integers (to provoke ties) or
/// uniformly from a continuous range.
pub fn arc_length(rng: &mut ChaCha8Rng, integral: bool) -> f64 {
    if integral {
        rng.gen_range(1..=5) as f64
    } else {
        rng.gen_range(0.2..5.0)
    }
}

/// Boundary with `q` segments; `q = 1` is a closed curve half the time.
pub fn random_boundary(rng: &mut ChaCha8Rng, q: usize) -> Boundary {
    let integral = rng.gen_bool(0.5);
    let segments: Vec<f64> = (0..q).map(|_| arc_length(rng, integral)).collect();
    if q == 1 && rng.gen_bool(0.5) {
        return Boundary::from_lengths(&segments, &[]).unwrap();
    }
    let gaps: Vec<f64> = (0..q).map(|_| arc_length(rng, integral)).collect();
    Boundary::from_lengths(&segments, &gaps).unwrap()
}

pub fn random_instance(rng: &mut ChaCha8Rng, m: usize, max_q: usize, n: u64) -> Instance {
    let boundaries = (0..m)
        .map(|_| {
            let q = rng.gen_range(1..=max_q);
            random_boundary(rng, q)
        })
        .collect();
    Instance::new(boundaries, n).unwrap()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Segment intervals of one lap starting at segment `k`, in unwrapped
/// offsets.
pub fn lap_segments(b: &Boundary, k: usize) -> Vec<(f64, f64)> {
    let starts: Vec<(f64, f64)> = b
        .arcs()
        .iter()
        .filter(|a| a.kind == ArcKind::Segment)
        .map(|a| (a.start, a.start + a.length))
        .collect();
    let q = starts.len();
    (k..k + q)
        .map(|t| {
            let shift = (t / q) as f64 * b.total_length();
            (starts[t % q].0 + shift, starts[t % q].1 + shift)
        })
        .collect()
}

/// Fewest covers of length `step` that cover every interval in `segs`
/// (sorted, disjoint), found by breadth-first search over cover placements
/// whose starts are an interval endpoint shifted by a whole multiple of
/// `step`.
pub fn min_covers_exhaustive(segs: &[(f64, f64)], step: f64) -> u64 {
    let lo = segs[0].0;
    let hi = segs[segs.len() - 1].1;
    let reach = ((hi - lo) / step).ceil() as i64 + 1;
    let mut cands: Vec<f64> = Vec::new();
    for &(a, b) in segs {
        for e in [a, b] {
            for j in -reach..=reach {
                let c = e + j as f64 * step;
                if c >= lo - step && c <= hi {
                    cands.push(c);
                }
            }
        }
    }
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    // E + j * step and a chain of j additions of step round differently
    let slack = 1e-12 * hi.abs().max(step);

    // state: everything up to and including `p` is covered; `None` = nothing yet
    let first_uncovered = |p: Option<f64>| -> Option<(f64, bool)> {
        match p {
            None => Some((lo, false)),
            Some(p) => segs.iter().find(|s| s.1 > p).map(|s| {
                if s.0 <= p {
                    (p, true)
                } else {
                    (s.0, false)
                }
            }),
        }
    };
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut queue: VecDeque<(Option<f64>, u64)> = VecDeque::from([(None, 0)]);
    while let Some((p, used)) = queue.pop_front() {
        let Some((u, inside)) = first_uncovered(p) else {
            return used;
        };
        for &c in &cands {
            let end = c + step;
            let progress = if inside {
                c <= u + slack && end > u
            } else {
                c <= u + slack && end >= u
            };
            if !progress {
                continue;
            }
            if seen.insert(end.to_bits(), used + 1).is_none() {
                queue.push_back((Some(end), used + 1));
            }
        }
    }
    unreachable!("some placement always makes progress")
}

/// min over compositions n_1 + ... + n_m = n, n_i >= 1, of max_i len_i / n_i.
pub fn distribution_oracle(lengths: &[f64], n: u64) -> f64 {
    fn go(lengths: &[f64], left: u64, worst: f64, best: &mut f64) {
        if lengths.len() == 1 {
            *best = best.min(worst.max(lengths[0] / left as f64));
            return;
        }
        let reserve = lengths.len() as u64 - 1;
        for n_i in 1..=left - reserve {
            go(&lengths[1..], left - n_i, worst.max(lengths[0] / n_i as f64), best);
        }
    }
    let mut best = f64::INFINITY;
    go(lengths, n, 0.0, &mut best);
    best
}

/// Smallest achievable maximum distance over all injective station-to-robot
/// maps; `dist[station][robot]`.
pub fn permutation_bottleneck(dist: &[Vec<f64>]) -> f64 {
    fn go(dist: &[Vec<f64>], s: usize, used: &mut Vec<bool>, worst: f64, best: &mut f64) {
        if s == dist.len() {
            *best = best.min(worst);
            return;
        }
        for r in 0..used.len() {
            if !used[r] {
                used[r] = true;
                go(dist, s + 1, used, worst.max(dist[s][r]), best);
                used[r] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; dist[0].len()];
    go(dist, 0, &mut used, 0.0, &mut best);
    best
}

pub fn random_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<Point> {
    (0..count)
        .map(|_| Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
        .collect()
}

/// Every maximal run of abutting covers must start at a segment's left
/// endpoint and end at a segment's right endpoint, and at least one gap per
/// region must be left uncovered.
pub fn run_alignment_violations(inst: &Instance, sol: &Solution) -> Vec<String> {
    let mut out = Vec::new();
    for b in inst.boundaries() {
        if b.is_closed_curve() {
            continue;
        }
        let total = b.total_length();
        let slack = 1e-9 * total;
        let near = |a: f64, x: f64| {
            let d = (a - x).rem_euclid(total);
            d <= slack || total - d <= slack
        };
        let segs = lap_segments(b, 0);
        let covers: Vec<(f64, f64)> = sol
            .covers
            .iter()
            .filter(|c| c.region == b.region())
            .map(|c| (c.start, c.start + c.length))
            .collect();
        let mut run_starts = 0;
        for (i, &(s, e)) in covers.iter().enumerate() {
            let has_pred = covers.iter().enumerate().any(|(j, c)| j != i && near(c.1, s));
            let has_succ = covers.iter().enumerate().any(|(j, c)| j != i && near(c.0, e));
            if !has_pred {
                run_starts += 1;
                if !segs.iter().any(|g| near(g.0, s)) {
                    out.push(format!("region {}: run starts at {s}, not a segment start", b.region()));
                }
            }
            if !has_succ && !segs.iter().any(|g| near(g.1, e)) {
                out.push(format!("region {}: run ends at {e}, not a segment end", b.region()));
            }
        }
        if run_starts == 0 {
            out.push(format!("region {}: no gap is skipped", b.region()));
        }
    }
    out
}

/// All structural properties of an optimal solution for one instance.
pub fn invariant_violations(inst: &Instance, tol: Tolerance) -> Vec<String> {
    let mut out = Vec::new();
    let sol = match solve(inst, Variant::Auto, tol) {
        Ok(s) => s,
        Err(e) => return vec![format!("solve failed: {e}")],
    };
    let ell = sol.ell_star;
    out.extend(validate_solution(inst, &sol, tol).iter().map(|d| d.to_string()));
    out.extend(run_alignment_violations(inst, &sol));

    // per-region bounds at the deployed counts
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for (b, &n_i) in inst.boundaries().iter().zip(&sol.robots_per_region) {
        let (l, h) = bounds(b, n_i.max(1)).unwrap();
        lo = lo.max(l);
        hi = hi.max(h);
    }
    if ell < lo * (1.0 - 1e-9) || ell > hi * (1.0 + 1e-9) {
        out.push(format!("ell* {ell} outside [{lo}, {hi}]"));
    }

    let more = solve(&inst.with_robots(inst.robots() + 1).unwrap(), Variant::Auto, tol).unwrap();
    if more.ell_star > ell * (1.0 + 1e-9) {
        out.push(format!("ell*(n+1) = {} > ell*(n) = {ell}", more.ell_star));
    }

    // powers of two scale every intermediate exactly, so the witness and
    // the counts must not move; other factors only need the value to scale
    for c in [0.5, 2.0, 8.0] {
        let scaled = solve(&inst.scaled(c).unwrap(), Variant::Auto, tol).unwrap();
        if !rel_close(scaled.ell_star, c * ell, 1e-9) {
            out.push(format!("scale {c}: {} != {}", scaled.ell_star, c * ell));
        }
        if scaled.witness != sol.witness || scaled.robots_per_region != sol.robots_per_region {
            out.push(format!("scale {c}: witness or counts changed"));
        }
    }
    let scaled = solve(&inst.scaled(3.7).unwrap(), Variant::Auto, tol).unwrap();
    if !rel_close(scaled.ell_star, 3.7 * ell, 1e-9) {
        out.push(format!("scale 3.7: {} != {}", scaled.ell_star, 3.7 * ell));
    }
    out
}
