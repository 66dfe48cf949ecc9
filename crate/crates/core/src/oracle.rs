//! Brute-force reference solvers.
//!
//! These share the tiling kernel with the fast solvers but search the
//! candidate space exhaustively, so they are only usable on small inputs.
//! Inputs beyond the work budget are rejected with
//! [`Error::BudgetExceeded`].

use crate::error::{Error, Result};
use crate::geometry::Boundary;
use crate::model::{Instance, Optimum, Solution, Witness};
use crate::multi_comp::{deployed_counts, materialize};
use crate::single_comp::{counts_for, SingleCompView};
use crate::tiling::{is_tiling_feasible_partial, span_length, SpanIndex};
use crate::tolerance::Tolerance;

/// Candidate count cap for [`baseline_single_region`] (q² · n).
pub const BASELINE_LIMIT: u128 = 1_000_000;
/// Composition count cap for [`composition_multi_region`].
pub const COMPOSITION_LIMIT: u128 = 1_000_000;

fn baseline_optimum(b: &Boundary, n: u64, tol: Tolerance) -> Result<Optimum> {
    if n == 0 {
        return Err(Error::invalid("baseline needs at least one robot"));
    }
    let q = b.q();
    let witness_for = |k, k_prime, n_c| Witness {
        region: b.region(),
        k,
        k_prime,
        n_c,
    };
    if b.is_closed_curve() {
        return Ok(Optimum {
            ell_star: b.total_length() / n as f64,
            witness: Some(witness_for(0, 0, n)),
            robots_per_region: vec![n],
        });
    }
    let work = (q as u128) * (q as u128) * n as u128;
    if work > BASELINE_LIMIT {
        return Err(Error::BudgetExceeded {
            work,
            limit: BASELINE_LIMIT,
        });
    }
    let mut all: Vec<(f64, Witness)> = Vec::with_capacity(work as usize);
    for k in 0..q {
        for d in 0..q {
            let span = SpanIndex::new(k, (k + d) % q);
            let len = span_length(b, span);
            for n_c in 1..=n {
                all.push((len / n_c as f64, witness_for(span.k, span.k_prime, n_c)));
            }
        }
    }
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (ell, w) in all {
        let r = is_tiling_feasible_partial(b, SpanIndex::new(w.k, w.k_prime), w.n_c, n, tol, false);
        if r.feasible {
            return Ok(Optimum {
                ell_star: ell,
                witness: Some(w),
                robots_per_region: vec![r.robots_used],
            });
        }
    }
    unreachable!("splitting the whole boundary minus one gap is always feasible")
}

/// Tries every span and every robot count for it, each with the partial
/// tiling check, and keeps the smallest feasible cover length.
pub fn baseline_single_region(boundary: &Boundary, n: u64, tol: Tolerance) -> Result<Solution> {
    let mut opt = baseline_optimum(boundary, n, tol)?;
    let boundaries = std::slice::from_ref(boundary);
    let covers = materialize(boundaries, &opt, tol);
    opt.robots_per_region = deployed_counts(boundaries, &covers);
    Ok(crate::deploy::with_stations(opt, covers, boundaries))
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

/// Enumerates every distribution `n_1 + ... + n_m = n` with `n_i >= 1`,
/// solves each region with [`baseline_single_region`] and keeps the
/// distribution with the smallest maximum.
pub fn composition_multi_region(instance: &Instance, tol: Tolerance) -> Result<Solution> {
    instance.check_feasible()?;
    let m = instance.regions();
    let n = instance.robots();
    let compositions = binomial(n as u128 - 1, m as u128 - 1);
    if compositions > COMPOSITION_LIMIT {
        return Err(Error::BudgetExceeded {
            work: compositions,
            limit: COMPOSITION_LIMIT,
        });
    }
    let max_each = n - m as u64 + 1;
    // per-region optimum for every robot count it could receive
    let table: Vec<Vec<Optimum>> = instance
        .boundaries()
        .iter()
        .map(|b| (1..=max_each).map(|n_i| baseline_optimum(b, n_i, tol)).collect())
        .collect::<Result<_>>()?;

    let mut best: Option<(f64, Vec<u64>)> = None;
    let mut current = vec![0u64; m];
    enumerate(&table, 0, n, f64::NEG_INFINITY, &mut current, &mut best);
    let (ell_star, dist) = best.expect("n >= m admits a composition");

    // the region attaining the maximum supplies the witness
    let tight = (0..m)
        .find(|&i| table[i][dist[i] as usize - 1].ell_star == ell_star)
        .expect("maximum is attained");
    let mut covers = Vec::new();
    let mut per_region = Vec::with_capacity(m);
    for (i, b) in instance.boundaries().iter().enumerate() {
        let opt = &table[i][dist[i] as usize - 1];
        let region = materialize(std::slice::from_ref(b), opt, tol);
        per_region.push(region.len() as u64);
        covers.extend(region);
    }
    let opt = Optimum {
        ell_star,
        witness: table[tight][dist[tight] as usize - 1].witness,
        robots_per_region: per_region,
    };
    Ok(crate::deploy::with_stations(opt, covers, instance.boundaries()))
}

fn enumerate(
    table: &[Vec<Optimum>],
    i: usize,
    left: u64,
    worst: f64,
    current: &mut Vec<u64>,
    best: &mut Option<(f64, Vec<u64>)>,
) {
    let m = table.len();
    if let Some((b, _)) = best {
        if worst >= *b {
            return;
        }
    }
    if i + 1 == m {
        current[i] = left;
        let worst = worst.max(table[i][left as usize - 1].ell_star);
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            *best = Some((worst, current.clone()));
        }
        return;
    }
    let reserve = (m - i - 1) as u64;
    for n_i in 1..=left - reserve {
        current[i] = n_i;
        let w = worst.max(table[i][n_i as usize - 1].ell_star);
        enumerate(table, i + 1, left - n_i, w, current, best);
    }
}

/// The single-component solver without the sorted-candidate bisection: every
/// shorter perimeter's candidate is tested in turn.
pub fn unenhanced_multi_region_single_comp(view: &SingleCompView, tol: Tolerance) -> Result<Solution> {
    let opt = unenhanced_optimum(view, tol)?;
    let covers = view.equal_slices(&opt.robots_per_region);
    let totals = view.lengths().to_vec();
    Ok(crate::deploy::with_offset_stations(opt, covers, |r| totals[r]))
}

fn unenhanced_optimum(view: &SingleCompView, tol: Tolerance) -> Result<Optimum> {
    let lengths = view.lengths();
    let m = lengths.len();
    let n = view.robots();
    if (n as u128) < m as u128 {
        return Err(Error::Infeasible { robots: n, regions: m });
    }
    let p1 = view.longest_index();
    let len1 = lengths[p1];
    let fits = |ell: f64, n_i: u64, i: usize| {
        crate::single_comp::is_feasible(ell, n_i, i, view, tol).unwrap_or(false)
    };

    let (mut lo, mut hi, mut n1c) = (1u64, n, 1u64);
    while lo != hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if fits(len1 / mid as f64, mid, p1) {
            n1c = mid;
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let mut ell_star = len1 / n1c as f64;
    let mut witness = (p1, n1c);
    for (i, &len) in lengths.iter().enumerate() {
        if i == p1 || len * (1.0 + tol.eps) >= len1 {
            continue;
        }
        let first = tol.ceil(n1c as f64 * len / len1).max(1.0) as u64;
        let last = tol.floor((n1c + 1) as f64 * len / len1) as u64;
        for n_i in first..=last.min(n) {
            let ell = len / n_i as f64;
            if ell < ell_star && fits(ell, n_i, i) {
                ell_star = ell;
                witness = (i, n_i);
            }
        }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_solution;

    fn square() -> Boundary {
        Boundary::from_lengths(&[6.0, 6.0, 1.5, 1.5], &[2.0, 2.0, 3.0, 2.0]).unwrap()
    }

    #[test]
    fn baseline_examples() {
        let tol = Tolerance::default();
        assert!((baseline_single_region(&square(), 3, tol).unwrap().ell_star - 6.0).abs() < 1e-12);
        assert!((baseline_single_region(&square(), 4, tol).unwrap().ell_star - 4.75).abs() < 1e-12);
        let b = Boundary::from_lengths(&[4.0], &[1.0]).unwrap();
        assert_eq!(baseline_single_region(&b, 2, tol).unwrap().ell_star, 2.0);
    }

    #[test]
    fn baseline_budget_guard() {
        let err = baseline_single_region(&square(), 1_000_000, Tolerance::default());
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn composition_examples() {
        let tol = Tolerance::default();
        let closed = |l: f64| Boundary::from_lengths(&[l], &[]).unwrap();
        let inst = Instance::new(vec![closed(10.0), closed(6.0), closed(4.0)], 10).unwrap();
        let sol = composition_multi_region(&inst, tol).unwrap();
        assert_eq!(sol.ell_star, 2.0);
        assert!(validate_solution(&inst, &sol, tol).is_empty());

        let inst = Instance::new(vec![square(), square()], 6).unwrap();
        let sol = composition_multi_region(&inst, tol).unwrap();
        assert!((sol.ell_star - 6.0).abs() < 1e-12);
        assert!(validate_solution(&inst, &sol, tol).is_empty());

        let inst = Instance::new(vec![square()], 4).unwrap();
        assert_eq!(
            composition_multi_region(&inst, tol).unwrap().ell_star,
            baseline_single_region(&square(), 4, tol).unwrap().ell_star
        );
    }

    #[test]
    fn composition_budget_guard() {
        let closed = Boundary::from_lengths(&[1.0], &[]).unwrap();
        let inst = Instance::new(vec![closed; 6], 200).unwrap();
        assert!(matches!(
            composition_multi_region(&inst, Tolerance::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn unenhanced_examples() {
        let tol = Tolerance::default();
        let v = SingleCompView::from_lengths(vec![5.0, 5.0, 5.0], 3).unwrap();
        assert_eq!(unenhanced_multi_region_single_comp(&v, tol).unwrap().ell_star, 5.0);
        let v = SingleCompView::from_lengths(vec![10.0, 6.0, 4.0], 10).unwrap();
        assert_eq!(unenhanced_multi_region_single_comp(&v, tol).unwrap().ell_star, 2.0);
    }
}
