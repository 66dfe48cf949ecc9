//! Exact solver for regions whose perimeters each have one connected
//! component.
//!
//! With a single component the per-region answer is `len(P_i) / n_i`, so only
//! the robot distribution matters. The longest perimeter is examined first:
//! a bisection over its robot count pins `n_1^c`, after which every shorter
//! perimeter has at most one candidate count left. Those candidates are
//! sorted and bisected for the smallest feasible one.

use crate::error::{Error, Result};
use crate::geometry::Boundary;
use crate::model::{CoverInterval, Instance, Optimum, Solution, Witness};
use crate::tolerance::Tolerance;

/// Lengths-only view of an instance whose boundaries all have one segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleCompView {
    lengths: Vec<f64>,
    closed: Vec<bool>,
    robots: u64,
    longest: usize,
}

impl SingleCompView {
    pub fn from_lengths(lengths: Vec<f64>, robots: u64) -> Result<Self> {
        let closed = vec![true; lengths.len()];
        Self::with_flags(lengths, closed, robots)
    }

    pub fn from_instance(instance: &Instance) -> Result<Self> {
        if !instance.is_single_component() {
            return Err(Error::invalid(
                "single-component solver needs exactly one segment per boundary",
            ));
        }
        let lengths = instance.boundaries().iter().map(|b| b.segments()[0]).collect();
        let closed = instance.boundaries().iter().map(Boundary::is_closed_curve).collect();
        Self::with_flags(lengths, closed, instance.robots())
    }

    fn with_flags(lengths: Vec<f64>, closed: Vec<bool>, robots: u64) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::invalid("no perimeters"));
        }
        if robots == 0 {
            return Err(Error::invalid("robot count must be positive"));
        }
        if let Some(bad) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::invalid(format!("perimeter length must be positive, got {bad}")));
        }
        let mut longest = 0;
        for (i, l) in lengths.iter().enumerate() {
            if *l > lengths[longest] {
                longest = i;
            }
        }
        Ok(SingleCompView {
            lengths,
            closed,
            robots,
            longest,
        })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn closed_flags(&self) -> &[bool] {
        &self.closed
    }

    pub fn robots(&self) -> u64 {
        self.robots
    }

    pub fn longest_index(&self) -> usize {
        self.longest
    }

    /// Equal slices of every perimeter, `counts[i]` robots on perimeter `i`.
    pub(crate) fn equal_slices(&self, counts: &[u64]) -> Vec<CoverInterval> {
        let mut out = Vec::new();
        for (i, (&len, &c)) in self.lengths.iter().zip(counts).enumerate() {
            let piece = len / c as f64;
            out.extend((0..c).map(|j| CoverInterval {
                region: i,
                start: j as f64 * piece,
                length: piece,
            }));
        }
        out
    }
}

/// One closed perimeter shared by `n` robots.
pub fn solve_closed_single(length: f64, n: u64) -> f64 {
    assert!(n >= 1, "need at least one robot");
    length / n as f64
}

/// Whether the perimeters other than `i` can be covered by the `n - n_i`
/// robots left when each covers at most `ell`.
pub fn is_feasible(ell: f64, n_i: u64, i: usize, view: &SingleCompView, tol: Tolerance) -> Result<bool> {
    if !(ell > 0.0) {
        return Err(Error::invalid(format!("cover length must be positive, got {ell}")));
    }
    Ok(others_fit(ell, n_i, i, view, tol))
}

fn others_fit(ell: f64, n_i: u64, i: usize, view: &SingleCompView, tol: Tolerance) -> bool {
    let Some(mut left) = view.robots.checked_sub(n_i) else {
        return false;
    };
    for (j, &len) in view.lengths.iter().enumerate() {
        if j == i {
            continue;
        }
        let need = tol.ceil(len / ell).max(1.0);
        if need > left as f64 {
            return false;
        }
        left -= need as u64;
    }
    true
}

/// Per-perimeter robot counts `ceil(len_i / ell)` for a final value `ell`.
pub(crate) fn counts_for(view: &SingleCompView, ell: f64, tol: Tolerance) -> Vec<u64> {
    view.lengths
        .iter()
        .map(|&len| tol.ceil(len / ell).max(1.0) as u64)
        .collect()
}

pub fn optimum_multi_region_single_comp(view: &SingleCompView, tol: Tolerance) -> Result<Optimum> {
    let m = view.lengths.len();
    let n = view.robots;
    if (n as u128) < m as u128 {
        return Err(Error::Infeasible {
            robots: n,
            regions: m,
        });
    }
    let p1 = view.longest;
    let len1 = view.lengths[p1];

    // robots on the longest perimeter
    let (mut lo, mut hi) = (1u64, n);
    let mut n1c = 1u64;
    while lo != hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if others_fit(len1 / mid as f64, mid, p1, view, tol) {
            n1c = mid;
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let mut ell_star = len1 / n1c as f64;
    let mut witness = (p1, n1c);

    // at most one candidate count per shorter perimeter
    let mut candidates: Vec<(f64, usize, u64)> = Vec::new();
    for (i, &len) in view.lengths.iter().enumerate() {
        if i == p1 || len * (1.0 + tol.eps) >= len1 {
            continue;
        }
        let lower = n1c as f64 * len / len1;
        let upper = (n1c + 1) as f64 * len / len1;
        debug_assert!(
            upper.floor() <= lower.ceil(),
            "perimeter {i}: more than one candidate in [{lower}, {upper}]"
        );
        let first = tol.ceil(lower).max(1.0) as u64;
        let last = tol.floor(upper) as u64;
        for n_i in first..=last.min(n) {
            let ell = len / n_i as f64;
            if ell < ell_star {
                candidates.push((ell, i, n_i));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    // smallest feasible candidate; feasibility is monotone in ell
    let (mut lo, mut hi) = (0usize, candidates.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let (ell, i, n_i) = candidates[mid];
        if others_fit(ell, n_i, i, view, tol) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if let Some(&(ell, i, n_i)) = candidates.get(lo) {
        ell_star = ell;
        witness = (i, n_i);
    }

    let mut counts = counts_for(view, ell_star, tol);
    counts[witness.0] = witness.1;
    Ok(Optimum {
        ell_star,
        witness: Some(Witness {
            region: witness.0,
            k: 0,
            k_prime: 0,
            n_c: witness.1,
        }),
        robots_per_region: counts,
    })
}

/// Solves the single-component case and slices every perimeter evenly among
/// its robots. Stations carry offsets only.
pub fn solve_multi_region_single_comp(view: &SingleCompView, tol: Tolerance) -> Result<Solution> {
    let opt = optimum_multi_region_single_comp(view, tol)?;
    let covers = view.equal_slices(&opt.robots_per_region);
    let totals = view.lengths.clone();
    Ok(crate::deploy::with_offset_stations(opt, covers, |r| totals[r]))
}
