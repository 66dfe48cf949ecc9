//! Problem instances, solutions, the basic bounds on the optimum and the
//! solution validator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Boundary, Point};
use crate::tolerance::Tolerance;

/// m region boundaries plus the robot count n.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    boundaries: Vec<Boundary>,
    robots: u64,
}

impl Instance {
    /// Region ids are reassigned to `0..m` in the given order.
    pub fn new(boundaries: Vec<Boundary>, robots: u64) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::invalid("an instance needs at least one region"));
        }
        if robots == 0 {
            return Err(Error::invalid("robot count must be positive"));
        }
        let boundaries = boundaries
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.with_region(i))
            .collect();
        Ok(Instance { boundaries, robots })
    }

    pub fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    pub fn robots(&self) -> u64 {
        self.robots
    }

    pub fn regions(&self) -> usize {
        self.boundaries.len()
    }

    pub fn check_feasible(&self) -> Result<()> {
        if (self.robots as u128) < self.boundaries.len() as u128 {
            return Err(Error::Infeasible {
                robots: self.robots,
                regions: self.boundaries.len(),
            });
        }
        Ok(())
    }

    /// True when every perimeter has a single connected component.
    pub fn is_single_component(&self) -> bool {
        self.boundaries.iter().all(|b| b.q() == 1)
    }

    pub fn with_robots(&self, robots: u64) -> Result<Self> {
        Instance::new(self.boundaries.clone(), robots)
    }

    /// Same instance with every arc length multiplied by `factor`.
    /// Geometry is dropped.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| {
                let s: Vec<f64> = b.segments().iter().map(|v| v * factor).collect();
                let g: Vec<f64> = b.gaps().iter().map(|v| v * factor).collect();
                Boundary::from_lengths(&s, &g)
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(boundaries, self.robots)
    }
}

/// One robot's closed boundary arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverInterval {
    pub region: usize,
    pub start: f64,
    pub length: f64,
}

impl CoverInterval {
    pub fn midpoint(&self, total_length: f64) -> f64 {
        (self.start + self.length / 2.0).rem_euclid(total_length)
    }
}

/// The tight span: region `region`, segments `k..=k_prime` clockwise (0-based),
/// split evenly among `n_c` robots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub region: usize,
    pub k: usize,
    pub k_prime: usize,
    pub n_c: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub region: usize,
    pub offset: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<Point>,
}

/// Optimal value without the materialised cover.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub ell_star: f64,
    pub witness: Option<Witness>,
    pub robots_per_region: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub ell_star: f64,
    pub witness: Option<Witness>,
    pub robots_per_region: Vec<u64>,
    pub covers: Vec<CoverInterval>,
    pub stations: Vec<Station>,
}

impl Solution {
    pub fn max_cover_length(&self) -> f64 {
        self.covers.iter().map(|c| c.length).fold(0.0, f64::max)
    }
}

/// Lower and upper bounds on the optimum of one boundary guarded by `n_i`
/// robots: all segments summed, versus the whole boundary minus its longest
/// gap, each divided by `n_i`.
pub fn bounds(boundary: &Boundary, n_i: u64) -> Result<(f64, f64)> {
    if n_i == 0 {
        return Err(Error::invalid("bounds need at least one robot"));
    }
    let n = n_i as f64;
    let lower = boundary.perimeter_length() / n;
    // summed without the longest gap rather than subtracted, so that a single
    // gap gives exactly the lower bound
    let upper = match boundary.longest_gap() {
        Some(g) => {
            let others: f64 = boundary
                .gaps()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != g)
                .map(|(_, v)| v)
                .sum();
            (boundary.perimeter_length() + others) / n
        }
        None => boundary.total_length() / n,
    };
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    UnknownRegion { cover: usize, region: usize },
    BadCoverLength { cover: usize, length: f64 },
    UncoveredSegment { region: usize, segment: usize, offset: f64 },
    OverlappingCovers { region: usize, offset: f64, overlap: f64 },
    PartialGapCoverage { region: usize, gap: usize, cover: usize },
    MaxLengthMismatch { max_length: f64, ell_star: f64 },
    TooManyCovers { covers: usize, robots: u64 },
    RobotCountMismatch { region: usize, claimed: u64, covers: u64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnknownRegion { cover, region } => {
                write!(f, "cover {cover} refers to unknown region {region}")
            }
            Diagnostic::BadCoverLength { cover, length } => {
                write!(f, "cover {cover} has invalid length {length}")
            }
            Diagnostic::UncoveredSegment {
                region,
                segment,
                offset,
            } => write!(
                f,
                "uncovered segment: region {region} segment {segment} near offset {offset}"
            ),
            Diagnostic::OverlappingCovers {
                region,
                offset,
                overlap,
            } => write!(
                f,
                "overlapping covers: region {region} at offset {offset} (overlap {overlap})"
            ),
            Diagnostic::PartialGapCoverage { region, gap, cover } => write!(
                f,
                "partial gap coverage: region {region} gap {gap} by cover {cover}"
            ),
            Diagnostic::MaxLengthMismatch {
                max_length,
                ell_star,
            } => write!(f, "max cover length {max_length} differs from ell_star {ell_star}"),
            Diagnostic::TooManyCovers { covers, robots } => {
                write!(f, "{covers} covers for {robots} robots")
            }
            Diagnostic::RobotCountMismatch {
                region,
                claimed,
                covers,
            } => write!(
                f,
                "region {region} claims {claimed} robots but has {covers} covers"
            ),
        }
    }
}

/// Checks a solution against the instance. Returns one diagnostic per
/// violation; an empty list means the solution is a valid cover whose longest
/// arc equals `ell_star` and which never partially covers a gap.
pub fn validate_solution(instance: &Instance, solution: &Solution, tol: Tolerance) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let m = instance.regions();

    if solution.covers.len() as u128 > instance.robots() as u128 {
        out.push(Diagnostic::TooManyCovers {
            covers: solution.covers.len(),
            robots: instance.robots(),
        });
    }

    // (cover index, start, end) pieces per region, split at offset 0
    let mut pieces: Vec<Vec<(usize, f64, f64)>> = vec![Vec::new(); m];
    let mut per_region = vec![0u64; m];
    for (j, c) in solution.covers.iter().enumerate() {
        let Some(b) = instance.boundaries().get(c.region) else {
            out.push(Diagnostic::UnknownRegion {
                cover: j,
                region: c.region,
            });
            continue;
        };
        let total = b.total_length();
        if !(c.length > 0.0) || !c.start.is_finite() || c.length > total * (1.0 + tol.eps) {
            out.push(Diagnostic::BadCoverLength {
                cover: j,
                length: c.length,
            });
            continue;
        }
        per_region[c.region] += 1;
        let s = c.start.rem_euclid(total);
        let e = s + c.length.min(total);
        if e > total {
            pieces[c.region].push((j, s, total));
            pieces[c.region].push((j, 0.0, e - total));
        } else {
            pieces[c.region].push((j, s, e));
        }
    }

    if solution.robots_per_region.len() == m {
        for (i, (&claimed, &covers)) in solution.robots_per_region.iter().zip(&per_region).enumerate() {
            if claimed != covers {
                out.push(Diagnostic::RobotCountMismatch {
                    region: i,
                    claimed,
                    covers,
                });
            }
        }
    }

    for (i, b) in instance.boundaries().iter().enumerate() {
        let slack = tol.eps * b.total_length().max(solution.ell_star);
        let ps = &mut pieces[i];
        ps.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.2.total_cmp(&b.2)));

        // interiors pairwise disjoint: compare each piece with the furthest
        // end seen so far
        let mut reach: Option<f64> = None;
        for &(_, s, e) in ps.iter() {
            if let Some(r) = reach {
                if r - s > slack {
                    out.push(Diagnostic::OverlappingCovers {
                        region: i,
                        offset: s,
                        overlap: r.min(e) - s,
                    });
                }
            }
            reach = Some(reach.map_or(e, |r| r.max(e)));
        }

        // union of pieces, joined across gaps smaller than the slack
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for &(_, s, e) in ps.iter() {
            match merged.last_mut() {
                Some(last) if s <= last.1 + slack => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        for k in 0..b.q() {
            let (a, z) = (b.seg_left(k), b.seg_right(k));
            let covered = merged.iter().any(|&(s, e)| s <= a + slack && e >= z - slack);
            if !covered {
                let hole = merged
                    .iter()
                    .filter(|&&(s, e)| s <= a + slack && e < z - slack && e > a)
                    .map(|&(_, e)| e)
                    .fold(a, f64::max);
                out.push(Diagnostic::UncoveredSegment {
                    region: i,
                    segment: k,
                    offset: hole,
                });
            }
        }

        for (g, &(gs, ge)) in b.gap_intervals().iter().enumerate() {
            for &(j, s, e) in ps.iter() {
                let inter = e.min(ge) - s.max(gs);
                if inter > slack && !(s <= gs + slack && e >= ge - slack) {
                    out.push(Diagnostic::PartialGapCoverage {
                        region: i,
                        gap: g,
                        cover: j,
                    });
                }
            }
        }
    }

    if !solution.covers.is_empty() {
        let max_length = solution.max_cover_length();
        if (max_length - solution.ell_star).abs() > 4.0 * tol.eps * solution.ell_star {
            out.push(Diagnostic::MaxLengthMismatch {
                max_length,
                ell_star: solution.ell_star,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Boundary {
        Boundary::from_lengths(&[6.0, 6.0, 1.5, 1.5], &[2.0, 2.0, 3.0, 2.0]).unwrap()
    }

    fn cover(region: usize, start: f64, length: f64) -> CoverInterval {
        CoverInterval {
            region,
            start,
            length,
        }
    }

    fn solution(ell: f64, covers: Vec<CoverInterval>) -> Solution {
        Solution {
            ell_star: ell,
            witness: None,
            robots_per_region: vec![],
            covers,
            stations: vec![],
        }
    }

    #[test]
    fn square_bounds() {
        assert_eq!(bounds(&square(), 3).unwrap(), (5.0, 7.0));
    }

    #[test]
    fn closed_curve_bounds() {
        let b = Boundary::from_lengths(&[10.0], &[]).unwrap();
        assert_eq!(bounds(&b, 5).unwrap(), (2.0, 2.0));
    }

    #[test]
    fn single_gap_bounds() {
        let b = Boundary::from_lengths(&[4.0], &[1.0]).unwrap();
        assert_eq!(bounds(&b, 2).unwrap(), (2.0, 2.0));
        assert!(bounds(&b, 0).is_err());
    }

    #[test]
    fn longest_gap_tie_breaks_low() {
        let b = Boundary::from_lengths(&[1.0, 1.0, 1.0], &[3.0, 1.0, 3.0]).unwrap();
        assert_eq!(b.longest_gap(), Some(0));
    }

    #[test]
    fn instance_checks() {
        assert!(Instance::new(vec![], 3).is_err());
        assert!(Instance::new(vec![square()], 0).is_err());
        let inst = Instance::new(vec![square(), square(), square()], 2).unwrap();
        assert!(matches!(inst.check_feasible(), Err(Error::Infeasible { .. })));
        assert_eq!(inst.boundaries()[2].region(), 2);
    }

    #[test]
    fn optimal_square_cover_is_clean() {
        let inst = Instance::new(vec![square()], 3).unwrap();
        let sol = solution(
            6.0,
            vec![cover(0, 0.0, 6.0), cover(0, 8.0, 6.0), cover(0, 16.0, 6.0)],
        );
        assert!(validate_solution(&inst, &sol, Tolerance::default()).is_empty());
    }

    #[test]
    fn partial_gap_is_reported() {
        let inst = Instance::new(vec![square()], 3).unwrap();
        // second cover ends inside G_2 = [14, 16]
        let sol = solution(
            7.0,
            vec![cover(0, 0.0, 6.0), cover(0, 8.0, 7.0), cover(0, 16.0, 6.0)],
        );
        let d = validate_solution(&inst, &sol, Tolerance::default());
        assert_eq!(d.len(), 1, "{d:?}");
        assert!(matches!(d[0], Diagnostic::PartialGapCoverage { gap: 1, .. }));
        assert!(d[0].to_string().contains("partial gap coverage"));
    }

    #[test]
    fn missing_segment_is_reported() {
        let inst = Instance::new(vec![square()], 3).unwrap();
        let sol = solution(6.0, vec![cover(0, 0.0, 6.0), cover(0, 16.0, 6.0)]);
        let d = validate_solution(&inst, &sol, Tolerance::default());
        assert_eq!(d.len(), 1, "{d:?}");
        assert!(matches!(d[0], Diagnostic::UncoveredSegment { segment: 1, .. }));
        assert!(d[0].to_string().contains("uncovered segment"));
    }

    #[test]
    fn overlap_and_count_and_length() {
        let inst = Instance::new(vec![square()], 2).unwrap();
        let sol = solution(
            6.0,
            vec![cover(0, 0.0, 14.0), cover(0, 10.0, 4.0), cover(0, 16.0, 6.0)],
        );
        let d = validate_solution(&inst, &sol, Tolerance::default());
        assert!(d.iter().any(|x| matches!(x, Diagnostic::OverlappingCovers { .. })));
        assert!(d.iter().any(|x| matches!(x, Diagnostic::TooManyCovers { .. })));
        assert!(d.iter().any(|x| matches!(x, Diagnostic::MaxLengthMismatch { .. })));
    }

    #[test]
    fn wrapping_cover_counts_on_both_sides() {
        let b = Boundary::from_lengths(&[10.0], &[]).unwrap();
        let inst = Instance::new(vec![b], 2).unwrap();
        let sol = solution(5.0, vec![cover(0, 7.5, 5.0), cover(0, 2.5, 5.0)]);
        assert!(validate_solution(&inst, &sol, Tolerance::default()).is_empty());
    }
}
