//! Stations at cover midpoints and the robot-to-station bottleneck assignment.

use crate::error::{Error, Result};
use crate::geometry::{Boundary, Point};
use crate::model::{CoverInterval, Instance, Optimum, Solution, Station};

/// One station per cover, at `start + length / 2`, with its 2D location when
/// the boundary carries geometry.
pub fn stations(solution: &Solution, instance: &Instance) -> Vec<Station> {
    stations_for(&solution.covers, instance.boundaries())
}

fn stations_for(covers: &[CoverInterval], boundaries: &[Boundary]) -> Vec<Station> {
    covers
        .iter()
        .map(|c| {
            let b = &boundaries[c.region];
            let offset = c.midpoint(b.total_length());
            Station {
                region: c.region,
                offset,
                point: b.point_at(offset).ok(),
            }
        })
        .collect()
}

pub(crate) fn with_stations(opt: Optimum, covers: Vec<CoverInterval>, boundaries: &[Boundary]) -> Solution {
    // boundaries may be a one-element slice whose region id is not 0
    let stations = if boundaries.len() == 1 {
        let b = &boundaries[0];
        covers
            .iter()
            .map(|c| {
                let offset = c.midpoint(b.total_length());
                Station {
                    region: c.region,
                    offset,
                    point: b.point_at(offset).ok(),
                }
            })
            .collect()
    } else {
        stations_for(&covers, boundaries)
    };
    Solution {
        ell_star: opt.ell_star,
        witness: opt.witness,
        robots_per_region: opt.robots_per_region,
        covers,
        stations,
    }
}

pub(crate) fn with_offset_stations(
    opt: Optimum,
    covers: Vec<CoverInterval>,
    total_of: impl Fn(usize) -> f64,
) -> Solution {
    let stations = covers
        .iter()
        .map(|c| Station {
            region: c.region,
            offset: c.midpoint(total_of(c.region)),
            point: None,
        })
        .collect();
    Solution {
        ell_star: opt.ell_star,
        witness: opt.witness,
        robots_per_region: opt.robots_per_region,
        covers,
        stations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentPlan {
    /// `(robot, station)` pairs sorted by robot index.
    pub pairs: Vec<(usize, usize)>,
    pub bottleneck: f64,
}

pub fn euclidean(a: &Point, b: &Point) -> f64 {
    a.distance(b)
}

/// Matches every station to a distinct robot so that the longest travel
/// distance is as small as possible. Surplus robots stay unassigned.
///
/// Binary search over the sorted pairwise distances, with a maximum
/// bipartite matching deciding each threshold.
pub fn bottleneck_assign<F>(robots: &[Point], stations: &[Point], metric: F) -> Result<AssignmentPlan>
where
    F: Fn(&Point, &Point) -> f64,
{
    if stations.is_empty() {
        return Err(Error::invalid("no stations to assign"));
    }
    if robots.len() < stations.len() {
        return Err(Error::invalid(format!(
            "{} robots cannot staff {} stations",
            robots.len(),
            stations.len()
        )));
    }
    let dist: Vec<Vec<f64>> = stations
        .iter()
        .map(|s| robots.iter().map(|r| metric(r, s)).collect())
        .collect();
    if dist.iter().flatten().any(|d| d.is_nan()) {
        return Err(Error::invalid("metric returned NaN"));
    }
    let mut levels: Vec<f64> = dist.iter().flatten().copied().collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let (mut lo, mut hi) = (0usize, levels.len() - 1);
    let mut best = matching(&dist, levels[hi]).expect("every station can reach some robot");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match matching(&dist, levels[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let bottleneck = levels[lo];
    if best.iter().enumerate().any(|(s, &r)| dist[s][r] > bottleneck) {
        best = matching(&dist, bottleneck).expect("threshold was feasible");
    }
    let mut pairs: Vec<(usize, usize)> = best.iter().enumerate().map(|(s, &r)| (r, s)).collect();
    pairs.sort_unstable();
    Ok(AssignmentPlan { pairs, bottleneck })
}

/// Station-saturating matching using only edges with distance `<= limit`;
/// `result[station] = robot`. Augmenting paths are tried in index order so the
/// outcome is deterministic.
fn matching(dist: &[Vec<f64>], limit: f64) -> Option<Vec<usize>> {
    let robots = dist[0].len();
    let mut robot_of = vec![usize::MAX; dist.len()];
    let mut station_of = vec![usize::MAX; robots];
    for s in 0..dist.len() {
        let mut seen = vec![false; robots];
        if !augment(s, dist, limit, &mut seen, &mut robot_of, &mut station_of) {
            return None;
        }
    }
    Some(robot_of)
}

fn augment(
    s: usize,
    dist: &[Vec<f64>],
    limit: f64,
    seen: &mut [bool],
    robot_of: &mut [usize],
    station_of: &mut [usize],
) -> bool {
    for r in 0..seen.len() {
        if dist[s][r] > limit || seen[r] {
            continue;
        }
        seen[r] = true;
        if station_of[r] == usize::MAX || augment(station_of[r], dist, limit, seen, robot_of, station_of) {
            station_of[r] = s;
            robot_of[s] = r;
            return true;
        }
    }
    false
}
