//! Exact solvers for optimal perimeter guarding.
//!
//! n robots are spread over the boundaries of m planar regions. Each boundary
//! alternates between segments, which must be covered, and gaps, which may be
//! covered whole or skipped. Every robot gets one contiguous boundary arc and
//! the longest arc is minimised.
//!
//! ```
//! use perimeter_guard::{solve, Boundary, Instance, Tolerance, Variant};
//!
//! let b = Boundary::from_lengths(&[6.0, 6.0, 1.5, 1.5], &[2.0, 2.0, 3.0, 2.0]).unwrap();
//! let instance = Instance::new(vec![b], 3).unwrap();
//! let solution = solve(&instance, Variant::Auto, Tolerance::default()).unwrap();
//! assert!((solution.ell_star - 6.0).abs() < 1e-9);
//! ```

pub mod deploy;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod model;
pub mod multi_comp;
pub mod oracle;
pub mod render;
pub mod single_comp;
pub mod tiling;
pub mod tolerance;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};
pub use geometry::{build_boundary, Boundary, Point, Polygon};
pub use model::{bounds, validate_solution, CoverInterval, Diagnostic, Instance, Optimum, Solution, Witness};
pub use tolerance::Tolerance;

/// Which solver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Single-component solver when every perimeter has one segment,
    /// multi-component solver otherwise.
    #[default]
    Auto,
    SingleComp,
    MultiComp,
}

impl Variant {
    pub fn resolve(self, instance: &Instance) -> Result<Variant> {
        match self {
            Variant::Auto if instance.is_single_component() => Ok(Variant::SingleComp),
            Variant::Auto => Ok(Variant::MultiComp),
            Variant::SingleComp if !instance.is_single_component() => Err(Error::invalid(
                "single-comp variant needs one segment per boundary",
            )),
            v => Ok(v),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Variant::Auto),
            "single-comp" => Ok(Variant::SingleComp),
            "multi-comp" => Ok(Variant::MultiComp),
            other => Err(Error::invalid(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Auto => "auto",
            Variant::SingleComp => "single-comp",
            Variant::MultiComp => "multi-comp",
        })
    }
}

/// Optimal value, witness and robot distribution, without building covers.
pub fn optimum(instance: &Instance, variant: Variant, tol: Tolerance) -> Result<Optimum> {
    instance.check_feasible()?;
    match variant.resolve(instance)? {
        Variant::SingleComp => {
            let view = single_comp::SingleCompView::from_instance(instance)?;
            single_comp::optimum_multi_region_single_comp(&view, tol)
        }
        _ => {
            if instance.regions() == 1 && instance.boundaries()[0].is_closed_curve() {
                let view = single_comp::SingleCompView::from_instance(instance)?;
                return single_comp::optimum_multi_region_single_comp(&view, tol);
            }
            multi_comp::optimum_multi_comp(instance.boundaries(), instance.robots(), tol).map(|(o, _)| o)
        }
    }
}

/// Solves the instance and materialises covers and stations.
pub fn solve(instance: &Instance, variant: Variant, tol: Tolerance) -> Result<Solution> {
    instance.check_feasible()?;
    let mut solution = match variant.resolve(instance)? {
        Variant::SingleComp => {
            let view = single_comp::SingleCompView::from_instance(instance)?;
            single_comp::solve_multi_region_single_comp(&view, tol)?
        }
        _ if instance.regions() == 1 => {
            multi_comp::solve_single_region_multi_comp(&instance.boundaries()[0], instance.robots(), tol)?
        }
        _ => multi_comp::solve_multi_region_multi_comp(instance, tol)?,
    };
    solution.stations = deploy::stations(&solution, instance);
    Ok(solution)
}
