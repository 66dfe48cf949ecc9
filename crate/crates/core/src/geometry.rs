//! Polygons, arc-length parametrisation and the segment/gap decomposition of
//! a region boundary.
//!
//! Offsets are arc lengths measured clockwise. "Clockwise" is taken in screen
//! coordinates (y axis pointing down), i.e. a polygon is canonical when its
//! shoelace sum `Σ (x_i y_{i+1} - x_{i+1} y_i)` is positive. Polygons given the
//! other way round are reversed on load, keeping vertex 0 in place.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn lerp(&self, other: &Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Sum of Euclidean edge lengths; `closed` adds the edge from the last point
/// back to the first.
pub fn polyline_length(points: &[Point], closed: bool) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::invalid("a polyline needs at least 2 points"));
    }
    let open: f64 = points.windows(2).map(|w| w[0].distance(&w[1])).sum();
    Ok(if closed {
        open + points[points.len() - 1].distance(&points[0])
    } else {
        open
    })
}

/// A closed simple polygon in canonical (clockwise) order.
///
/// Simplicity is a documented precondition and is not checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    /// `cumulative[i]` is the arc-length offset of vertex `i`; the last entry
    /// is the perimeter.
    cumulative: Vec<f64>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::invalid("a polygon needs at least 3 vertices"));
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::invalid("polygon vertices must be finite"));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::invalid(format!(
                    "consecutive polygon vertices {} and {} coincide",
                    i,
                    (i + 1) % n
                )));
            }
        }
        let mut vertices = vertices;
        if signed_area2(&vertices) < 0.0 {
            vertices[1..].reverse();
        }
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for i in 0..n {
            acc += vertices[i].distance(&vertices[(i + 1) % n]);
            cumulative.push(acc);
        }
        if !(acc > 0.0) {
            return Err(Error::invalid("polygon perimeter must be positive"));
        }
        Ok(Polygon {
            vertices,
            cumulative,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn perimeter(&self) -> f64 {
        self.cumulative[self.vertices.len()]
    }

    /// Point reached by walking `offset` clockwise from vertex 0 (wrapped).
    pub fn point_at(&self, offset: f64) -> Point {
        let len = self.perimeter();
        let off = offset.rem_euclid(len);
        let n = self.vertices.len();
        // last edge index whose start offset is <= off
        let edge = match self.cumulative[..n].binary_search_by(|c| c.total_cmp(&off)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let a = &self.vertices[edge];
        let b = &self.vertices[(edge + 1) % n];
        let edge_len = self.cumulative[edge + 1] - self.cumulative[edge];
        a.lerp(b, ((off - self.cumulative[edge]) / edge_len).clamp(0.0, 1.0))
    }

    /// Points along the boundary from offset `from` to `to` (clockwise, `to`
    /// may exceed the perimeter), including every vertex passed on the way.
    pub fn trace(&self, from: f64, to: f64) -> Vec<Point> {
        let len = self.perimeter();
        let n = self.vertices.len();
        let mut out = vec![self.point_at(from)];
        let base = from.div_euclid(len) * len;
        let mut lap = base;
        'outer: loop {
            for i in 0..n {
                let at = lap + self.cumulative[i];
                if at <= from {
                    continue;
                }
                if at >= to {
                    break 'outer;
                }
                out.push(self.vertices[i]);
            }
            lap += len;
        }
        out.push(self.point_at(to));
        out
    }
}

fn signed_area2(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Segment,
    Gap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub kind: ArcKind,
    pub start: f64,
    pub length: f64,
}

/// Source polygon of a boundary; boundary offset 0 sits at polygon offset
/// `origin`.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub polygon: Polygon,
    pub origin: f64,
}

/// One region boundary as the circular sequence S_1, G_1, ..., S_q, G_q.
///
/// Offset 0 is the left endpoint of S_1. A closed curve that must be guarded
/// entirely is stored as a single segment with no gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    region: usize,
    segments: Vec<f64>,
    gaps: Vec<f64>,
    seg_starts: Vec<f64>,
    total: f64,
    placement: Option<Placement>,
}

impl Boundary {
    /// Builds a boundary directly from arc lengths, without geometry.
    pub fn from_lengths(segments: &[f64], gaps: &[f64]) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::invalid("a boundary needs at least one segment"));
        }
        if !gaps.is_empty() && gaps.len() != segments.len() {
            return Err(Error::invalid(format!(
                "{} segments need {} gaps (or none for a closed curve), got {}",
                segments.len(),
                segments.len(),
                gaps.len()
            )));
        }
        if gaps.is_empty() && segments.len() > 1 {
            return Err(Error::invalid(
                "consecutive segments without a gap between them form one segment",
            ));
        }
        for (what, v) in segments
            .iter()
            .map(|v| ("segment", v))
            .chain(gaps.iter().map(|v| ("gap", v)))
        {
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::invalid(format!("{what} length must be positive, got {v}")));
            }
        }
        let mut seg_starts = Vec::with_capacity(segments.len());
        let mut acc = 0.0;
        for k in 0..segments.len() {
            seg_starts.push(acc);
            acc += segments[k] + gaps.get(k).copied().unwrap_or(0.0);
        }
        Ok(Boundary {
            region: 0,
            segments: segments.to_vec(),
            gaps: gaps.to_vec(),
            seg_starts,
            total: acc,
            placement: None,
        })
    }

    pub(crate) fn with_region(mut self, region: usize) -> Self {
        self.region = region;
        self
    }

    pub fn region(&self) -> usize {
        self.region
    }

    /// Number of segments q.
    pub fn q(&self) -> usize {
        self.segments.len()
    }

    pub fn is_closed_curve(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn segments(&self) -> &[f64] {
        &self.segments
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn total_length(&self) -> f64 {
        self.total
    }

    pub fn perimeter_length(&self) -> f64 {
        self.segments.iter().sum()
    }

    pub fn placement(&self) -> Option<&Placement> {
        self.placement.as_ref()
    }

    /// Start offsets of S_1, G_1, S_2, ... in order (the arc prefix sums).
    pub fn prefix_sums(&self) -> Vec<f64> {
        self.arcs().iter().map(|a| a.start).collect()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(self.segments.len() + self.gaps.len());
        for k in 0..self.q() {
            out.push(Arc {
                kind: ArcKind::Segment,
                start: self.seg_starts[k],
                length: self.segments[k],
            });
            if let Some(&g) = self.gaps.get(k) {
                out.push(Arc {
                    kind: ArcKind::Gap,
                    start: self.seg_starts[k] + self.segments[k],
                    length: g,
                });
            }
        }
        out
    }

    /// Gap intervals `(start, end)` in boundary offsets.
    pub fn gap_intervals(&self) -> Vec<(f64, f64)> {
        (0..self.gaps.len())
            .map(|k| {
                let s = self.seg_starts[k] + self.segments[k];
                let e = if k + 1 < self.q() {
                    self.seg_starts[k + 1]
                } else {
                    self.total
                };
                (s, e)
            })
            .collect()
    }

    /// Index of the longest gap, ties broken by the lowest index.
    pub fn longest_gap(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, g) in self.gaps.iter().enumerate() {
            if best.is_none_or(|b| *g > self.gaps[b]) {
                best = Some(k);
            }
        }
        best
    }

    /// Left endpoint of segment `t`, where `t` may run past `q` to denote
    /// later laps around the boundary.
    #[inline]
    pub(crate) fn seg_left(&self, t: usize) -> f64 {
        let q = self.q();
        self.seg_starts[t % q] + (t / q) as f64 * self.total
    }

    #[inline]
    pub(crate) fn seg_right(&self, t: usize) -> f64 {
        self.seg_left(t) + self.segments[t % self.q()]
    }

    /// 2D location of a boundary offset (wrapped modulo the total length).
    pub fn point_at(&self, offset: f64) -> Result<Point> {
        let placement = self.placement.as_ref().ok_or_else(|| {
            Error::Unsupported("boundary has no source geometry".into())
        })?;
        let off = offset.rem_euclid(self.total);
        Ok(placement.polygon.point_at(placement.origin + off))
    }

    /// Polyline of the boundary stretch `[from, from + length]`.
    pub fn trace(&self, from: f64, length: f64) -> Result<Vec<Point>> {
        let placement = self.placement.as_ref().ok_or_else(|| {
            Error::Unsupported("boundary has no source geometry".into())
        })?;
        let start = placement.origin + from.rem_euclid(self.total);
        Ok(placement.polygon.trace(start, start + length))
    }

    /// Gap intervals mapped back to polygon offsets measured from vertex 0.
    pub fn source_gap_intervals(&self) -> Option<Vec<(f64, f64)>> {
        let placement = self.placement.as_ref()?;
        let len = self.total;
        let mut out: Vec<(f64, f64)> = self
            .gap_intervals()
            .into_iter()
            .map(|(s, e)| {
                let shifted = (s + placement.origin).rem_euclid(len);
                (shifted, shifted + (e - s))
            })
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        Some(out)
    }
}

/// Decomposes a polygon boundary into segments and gaps.
///
/// `gaps` are `(start, end)` arc-length intervals measured clockwise from
/// vertex 0, sorted, pairwise disjoint and separated by at least one
/// segment. Boundary offset 0 is re-anchored to the left endpoint of the first
/// segment at or after vertex 0.
pub fn build_boundary(polygon: Polygon, gaps: &[(f64, f64)]) -> Result<Boundary> {
    let len = polygon.perimeter();
    for (i, &(s, e)) in gaps.iter().enumerate() {
        if !(s.is_finite() && e.is_finite()) || s < 0.0 || e > len || s >= e {
            return Err(Error::invalid(format!(
                "gap {i} = ({s}, {e}) is not a non-empty interval within [0, {len}]"
            )));
        }
        if i > 0 && s <= gaps[i - 1].1 {
            return Err(Error::invalid(format!(
                "gap {i} overlaps, touches or precedes gap {}",
                i - 1
            )));
        }
    }
    if let (Some(first), Some(last)) = (gaps.first(), gaps.last()) {
        if first.0 == 0.0 && last.1 == len {
            return Err(if gaps.len() == 1 {
                Error::invalid("gaps cover the entire boundary (empty perimeter)")
            } else {
                Error::invalid("first and last gap meet at vertex 0 without a segment between")
            });
        }
    }

    if gaps.is_empty() {
        let mut b = Boundary::from_lengths(&[len], &[])?;
        b.placement = Some(Placement {
            polygon,
            origin: 0.0,
        });
        return Ok(b);
    }

    let anchor = if gaps[gaps.len() - 1].1 == len {
        0.0
    } else {
        gaps[0].1
    };
    // shift to anchored offsets; the gap ending at the anchor moves last
    let mut rel: Vec<(f64, f64)> = gaps
        .iter()
        .map(|&(s, e)| {
            let rs = if s >= anchor { s - anchor } else { s - anchor + len };
            let re = if e == anchor || (anchor == 0.0 && e == len) {
                len
            } else if e > anchor {
                e - anchor
            } else {
                e - anchor + len
            };
            (rs, re)
        })
        .collect();
    rel.sort_by(|a, b| a.0.total_cmp(&b.0));

    let q = rel.len();
    let mut seg_starts = Vec::with_capacity(q);
    let mut segments = Vec::with_capacity(q);
    let mut gap_lens = Vec::with_capacity(q);
    let mut cursor = 0.0;
    for &(rs, re) in &rel {
        seg_starts.push(cursor);
        segments.push(rs - cursor);
        gap_lens.push(re - rs);
        cursor = re;
    }
    if segments.iter().chain(&gap_lens).any(|v| !(*v > 0.0)) {
        return Err(Error::invalid("degenerate segment or gap after decomposition"));
    }
    Ok(Boundary {
        region: 0,
        segments,
        gaps: gap_lens,
        seg_starts,
        total: len,
        placement: Some(Placement {
            polygon,
            origin: anchor,
        }),
    })
}
