//! Seeded random instances.
//!
//! Each region is a star-shaped polygon: vertex angles are sorted uniform
//! draws and radii are uniform in `[0.5, 1]` around the region centre. The
//! polygon is scaled so its boundary length is uniform in `[1, 10]`, and its
//! gaps come from `2q` sorted uniform offsets paired up as
//! `(p0, p1), (p2, p3), ...`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Boundary, Point, Polygon};
use crate::io::{InstanceDoc, RegionDoc};
use crate::model::Instance;

const VERTICES: usize = 12;
const SPACING: f64 = 8.0;
const MAX_REDRAWS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub regions: usize,
    pub components: usize,
    pub robots: u64,
    pub seed: u64,
}

/// Component count for one region: exactly `q` when there is a single
/// region, `round(q * (0.5 + U))` otherwise.
fn components_for(rng: &mut ChaCha8Rng, q: usize, m: usize) -> usize {
    if m == 1 {
        q
    } else {
        ((q as f64 * (0.5 + rng.gen::<f64>())).round() as usize).max(1)
    }
}

fn star_polygon(rng: &mut ChaCha8Rng, centre: Point) -> Result<Polygon> {
    let mut angles: Vec<f64> = (0..VERTICES).map(|_| rng.gen::<f64>() * TAU).collect();
    angles.sort_by(f64::total_cmp);
    let raw: Vec<Point> = angles
        .iter()
        .map(|&a| {
            let r = rng.gen_range(0.5..=1.0);
            Point::new(r * a.cos(), r * a.sin())
        })
        .collect();
    let target = rng.gen_range(1.0..=10.0);
    let unit = Polygon::new(raw.clone())?;
    let s = target / unit.perimeter();
    Polygon::new(
        raw.iter()
            .map(|p| Point::new(centre.x + s * p.x, centre.y + s * p.y))
            .collect(),
    )
}

/// `2q` sorted offsets in `(0, len)`, redrawn until consecutive points and
/// the wrap-around pair are clearly separated.
fn gap_offsets(rng: &mut ChaCha8Rng, q: usize, len: f64) -> Vec<[f64; 2]> {
    let min_sep = len * 1e-6;
    for _ in 0..MAX_REDRAWS {
        let mut p: Vec<f64> = (0..2 * q).map(|_| rng.gen::<f64>() * len).collect();
        p.sort_by(f64::total_cmp);
        let separated = p[0] > min_sep
            && len - p[2 * q - 1] > min_sep
            && p.windows(2).all(|w| w[1] - w[0] > min_sep);
        if separated {
            return p.chunks(2).map(|c| [c[0], c[1]]).collect();
        }
    }
    // evenly spaced fallback; practically unreachable
    let step = len / (2 * q + 1) as f64;
    (0..q)
        .map(|k| [step * (2 * k + 1) as f64, step * (2 * k + 2) as f64])
        .collect()
}

/// Random polygon instance.
pub fn generate_instance(params: GenParams) -> Result<InstanceDoc> {
    let GenParams {
        regions: m,
        components: q,
        robots: n,
        seed,
    } = params;
    if m == 0 || q == 0 || n == 0 {
        return Err(Error::invalid("regions, components and robots must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = (m as f64).sqrt().ceil() as usize;
    let mut docs = Vec::with_capacity(m);
    for i in 0..m {
        let centre = Point::new((i % cols) as f64 * SPACING, (i / cols) as f64 * SPACING);
        let polygon = star_polygon(&mut rng, centre)?;
        let q_i = components_for(&mut rng, q, m);
        let gaps = gap_offsets(&mut rng, q_i, polygon.perimeter());
        docs.push(RegionDoc::Polygon {
            vertices: polygon.vertices().iter().map(|p| [p.x, p.y]).collect(),
            gaps,
        });
    }
    Ok(InstanceDoc {
        robots: n,
        regions: docs,
    })
}

/// Lengths-only instance with the same length model and no geometry.
/// `q = 1` yields closed curves, which is what the single-component solver
/// is benchmarked on.
pub fn generate_lengths(params: GenParams) -> Result<Instance> {
    let GenParams {
        regions: m,
        components: q,
        robots: n,
        seed,
    } = params;
    if m == 0 || q == 0 || n == 0 {
        return Err(Error::invalid("regions, components and robots must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut boundaries = Vec::with_capacity(m);
    for _ in 0..m {
        let len = rng.gen_range(1.0..=10.0);
        let b = if q == 1 {
            Boundary::from_lengths(&[len], &[])?
        } else {
            let q_i = components_for(&mut rng, q, m);
            let arcs: Vec<f64> = gap_offsets(&mut rng, q_i, len).concat();
            // segment k runs from the end of gap k-1 to the start of gap k;
            // the first and last stretches join across offset 0
            let mut segments = Vec::with_capacity(q_i);
            let mut gaps = Vec::with_capacity(q_i);
            for k in 0..q_i {
                let (s, e) = (arcs[2 * k], arcs[2 * k + 1]);
                gaps.push(e - s);
                let next = if k + 1 < q_i { arcs[2 * k + 2] } else { len + arcs[0] };
                segments.push(next - e);
            }
            Boundary::from_lengths(&segments, &gaps)?
        };
        boundaries.push(b);
    }
    Instance::new(boundaries, n)
}
