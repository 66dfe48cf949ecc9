//! JSON documents for instances and solutions.
//!
//! Instance:
//! ```json
//! { "robots": 3,
//!   "regions": [ { "vertices": [[0,0],[6,0],[6,6],[0,6]], "gaps": [[6,8],[14,16]] },
//!                { "segments": [6, 6], "gaps": [2, 2] } ] }
//! ```
//! Polygon regions list gaps as `[start, end]` arc-length intervals clockwise
//! from vertex 0. Lengths-only regions list alternating segment and gap
//! lengths (no gaps for a closed curve).

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_boundary, Boundary, Point, Polygon};
use crate::model::{CoverInterval, Instance, Solution, Station, Witness};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionDoc {
    Polygon {
        vertices: Vec<[f64; 2]>,
        #[serde(default)]
        gaps: Vec<[f64; 2]>,
    },
    Lengths {
        segments: Vec<f64>,
        #[serde(default)]
        gaps: Vec<f64>,
    },
}

impl RegionDoc {
    pub fn to_boundary(&self) -> Result<Boundary> {
        match self {
            RegionDoc::Polygon { vertices, gaps } => {
                let polygon = Polygon::new(vertices.iter().map(|&v| Point::from(v)).collect())?;
                let gaps: Vec<(f64, f64)> = gaps.iter().map(|&[s, e]| (s, e)).collect();
                build_boundary(polygon, &gaps)
            }
            RegionDoc::Lengths { segments, gaps } => Boundary::from_lengths(segments, gaps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub robots: u64,
    pub regions: Vec<RegionDoc>,
}

impl InstanceDoc {
    pub fn to_instance(&self) -> Result<Instance> {
        let boundaries = self
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.to_boundary()
                    .map_err(|e| Error::invalid(format!("region {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(boundaries, self.robots)
    }

    /// Document for an instance built in memory. Polygon regions keep their
    /// vertices and gaps; the rest are written in lengths-only form.
    pub fn from_instance(instance: &Instance) -> Self {
        let regions = instance
            .boundaries()
            .iter()
            .map(|b| match (b.placement(), b.source_gap_intervals()) {
                (Some(p), Some(gaps)) => {
                    let len = p.polygon.perimeter();
                    RegionDoc::Polygon {
                        vertices: p.polygon.vertices().iter().map(|&v| v.into()).collect(),
                        gaps: gaps.into_iter().map(|(s, e)| [s, e.min(len)]).collect(),
                    }
                }
                _ => RegionDoc::Lengths {
                    segments: b.segments().to_vec(),
                    gaps: b.gaps().to_vec(),
                },
            })
            .collect();
        InstanceDoc {
            robots: instance.robots(),
            regions,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("instance document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance documents always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationDoc {
    pub region: usize,
    pub offset: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub ell_star: f64,
    pub witness: Option<Witness>,
    pub robots_per_region: Vec<u64>,
    pub covers: Vec<CoverInterval>,
    pub stations: Vec<StationDoc>,
}

impl From<&Solution> for SolutionDoc {
    fn from(s: &Solution) -> Self {
        SolutionDoc {
            ell_star: s.ell_star,
            witness: s.witness,
            robots_per_region: s.robots_per_region.clone(),
            covers: s.covers.clone(),
            stations: s
                .stations
                .iter()
                .map(|st| StationDoc {
                    region: st.region,
                    offset: st.offset,
                    x: st.point.map(|p| p.x),
                    y: st.point.map(|p| p.y),
                })
                .collect(),
        }
    }
}

impl From<SolutionDoc> for Solution {
    fn from(d: SolutionDoc) -> Self {
        Solution {
            ell_star: d.ell_star,
            witness: d.witness,
            robots_per_region: d.robots_per_region,
            covers: d.covers,
            stations: d
                .stations
                .into_iter()
                .map(|st| Station {
                    region: st.region,
                    offset: st.offset,
                    point: match (st.x, st.y) {
                        (Some(x), Some(y)) => Some(Point::new(x, y)),
                        _ => None,
                    },
                })
                .collect(),
        }
    }
}

impl SolutionDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("solution document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution documents always serialize")
    }
}

pub fn read_instance(path: &Path) -> Result<InstanceDoc> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    InstanceDoc::from_json(&text)
}

pub fn read_solution(path: &Path) -> Result<SolutionDoc> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    SolutionDoc::from_json(&text)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
