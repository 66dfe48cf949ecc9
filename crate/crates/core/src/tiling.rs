//! Greedy tiling of fixed-length covers along a boundary.
//!
//! Covers are laid clockwise from a segment's left endpoint. A cover whose end
//! falls strictly inside a gap is cut back to the gap's left endpoint and the
//! next cover starts at the gap's right endpoint; a cover ending inside a
//! segment is followed directly by the next one. Gaps swallowed whole by a
//! cover stay covered. An end landing exactly on a segment's right endpoint
//! completes that segment and skips the gap after it.
//!
//! Every count is made with the stretched step `ell * (1 + eps)` so that
//! spans which are exact multiples of `ell` do not lose a robot to rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Boundary;
use crate::model::CoverInterval;
use crate::tolerance::Tolerance;

/// Clockwise run of segments `k..=k_prime` (0-based, `k_prime` may precede `k`
/// to wrap around offset 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpanIndex {
    pub k: usize,
    pub k_prime: usize,
}

impl SpanIndex {
    pub fn new(k: usize, k_prime: usize) -> Self {
        SpanIndex { k, k_prime }
    }

    /// Number of segments after `k` included in the span.
    fn extent(&self, q: usize) -> usize {
        (self.k_prime + q - self.k) % q
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TilingResult {
    pub feasible: bool,
    pub robots_used: u64,
    pub covers: Vec<CoverInterval>,
}

/// Length from the left endpoint of S_k clockwise to the right endpoint of
/// S_k', gaps in between included.
pub fn span_length(boundary: &Boundary, span: SpanIndex) -> f64 {
    let q = boundary.q();
    debug_assert!(span.k < q && span.k_prime < q);
    let last = span.k + span.extent(q);
    boundary.seg_right(last) - boundary.seg_left(span.k)
}

/// Outcome of one greedy run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Run {
    /// Every segment covered with this many robots.
    Done(u64),
    /// The budget ran out first.
    OverBudget,
}

/// Greedily tiles segments `first..=last` (lap-extended indices) with covers of
/// length `step`, stopping as soon as more than `budget` robots would be
/// needed.
pub(crate) fn tile_run(
    b: &Boundary,
    first: usize,
    last: usize,
    step: f64,
    budget: u64,
    mut emit: Option<&mut Vec<CoverInterval>>,
) -> Run {
    debug_assert!(first <= last && step > 0.0);
    let total = b.total_length();
    let mut t = first;
    let mut pos = b.seg_left(first);
    let mut used: u64 = 0;
    loop {
        let right = b.seg_right(t);
        let need = ((right - pos) / step).ceil().max(1.0);
        if need > (budget - used) as f64 {
            return Run::OverBudget;
        }
        let need_n = need as u64;
        used += need_n;
        let end = pos + need * step;

        let mut next = t + 1;
        while next <= last && end >= b.seg_right(next) {
            next += 1;
        }
        let (cut, resume) = if next > last {
            (end.min(b.seg_right(last)), None)
        } else if end >= b.seg_left(next) {
            (end, Some(end))
        } else {
            (b.seg_right(next - 1), Some(b.seg_left(next)))
        };

        if let Some(out) = emit.as_deref_mut() {
            for j in 0..need_n {
                let s = pos + j as f64 * step;
                let e = if j + 1 == need_n { cut } else { s + step };
                out.push(CoverInterval {
                    region: b.region(),
                    start: s.rem_euclid(total),
                    length: e - s,
                });
            }
        }

        match resume {
            None => return Run::Done(used),
            Some(p) => {
                pos = p;
                t = next;
            }
        }
    }
}

fn segment_at(b: &Boundary, offset: f64, right: bool, tol: Tolerance) -> Option<usize> {
    let slack = tol.eps * b.total_length();
    let off = offset.rem_euclid(b.total_length());
    (0..b.q()).find(|&k| {
        let at = if right { b.seg_right(k) } else { b.seg_left(k) };
        let d = (at - off).abs();
        d <= slack || (b.total_length() - d).abs() <= slack
    })
}

/// Greedy tiling from `start` (a segment's left endpoint) clockwise up to
/// `stop` (a segment's right endpoint) with covers of length `ell`.
///
/// When `stop` belongs to the segment just before `start`'s segment, the run
/// goes all the way around the boundary.
pub fn tile_from(
    boundary: &Boundary,
    start: f64,
    stop: f64,
    ell: f64,
    budget: u64,
    tol: Tolerance,
    emit: bool,
) -> Result<TilingResult> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(Error::invalid(format!("cover length must be positive, got {ell}")));
    }
    let first = segment_at(boundary, start, false, tol)
        .ok_or_else(|| Error::invalid(format!("start offset {start} is not a segment left endpoint")))?;
    let stop_k = segment_at(boundary, stop, true, tol)
        .ok_or_else(|| Error::invalid(format!("stop offset {stop} is not a segment right endpoint")))?;
    let last = if stop_k >= first {
        stop_k
    } else {
        stop_k + boundary.q()
    };
    let mut covers = Vec::new();
    let run = tile_run(
        boundary,
        first,
        last,
        tol.stretch(ell),
        budget,
        emit.then_some(&mut covers),
    );
    Ok(match run {
        Run::Done(used) => TilingResult {
            feasible: true,
            robots_used: used,
            covers,
        },
        Run::OverBudget => TilingResult {
            feasible: false,
            robots_used: budget.saturating_add(1),
            covers: Vec::new(),
        },
    })
}

/// Splits the span evenly among `n_c` robots, then tiles the rest of the
/// boundary from the segment after the span with the leftover budget
/// `n_total - n_c`.
pub fn is_tiling_feasible_partial(
    boundary: &Boundary,
    span: SpanIndex,
    n_c: u64,
    n_total: u64,
    tol: Tolerance,
    emit: bool,
) -> TilingResult {
    assert!(n_c >= 1, "a span needs at least one robot");
    let span_len = span_length(boundary, span);
    let ell = span_len / n_c as f64;
    if n_c > n_total {
        return TilingResult {
            feasible: false,
            robots_used: n_c,
            covers: Vec::new(),
        };
    }
    let q = boundary.q();
    let extent = span.extent(q);
    let mut covers = Vec::new();
    if emit {
        emit_split(boundary, span.k, span.k + extent, n_c, &mut covers);
    }
    if extent + 1 == q {
        return TilingResult {
            feasible: true,
            robots_used: n_c,
            covers,
        };
    }
    let first = span.k + extent + 1;
    let last = span.k + q - 1;
    let run = tile_run(
        boundary,
        first,
        last,
        tol.stretch(ell),
        n_total - n_c,
        emit.then_some(&mut covers),
    );
    match run {
        Run::Done(used) => TilingResult {
            feasible: true,
            robots_used: n_c + used,
            covers,
        },
        Run::OverBudget => TilingResult {
            feasible: false,
            robots_used: n_total.saturating_add(1),
            covers: Vec::new(),
        },
    }
}

/// Splits segments `first..=last` (lap-extended) into `n` equal pieces, each
/// clipped to the segments it touches so that no piece ends inside a gap.
/// A piece falling entirely inside a gap is dropped.
fn emit_split(b: &Boundary, first: usize, last: usize, n: u64, out: &mut Vec<CoverInterval>) {
    let origin = b.seg_left(first);
    let end = b.seg_right(last);
    let piece = (end - origin) / n as f64;
    let total = b.total_length();
    let mut t = first;
    for j in 0..n {
        let mut s = origin + j as f64 * piece;
        let mut e = if j + 1 == n { end } else { s + piece };
        while b.seg_right(t) <= s {
            t += 1;
        }
        s = s.max(b.seg_left(t));
        let mut u = t;
        while u < last && b.seg_left(u + 1) < e {
            u += 1;
        }
        e = e.min(b.seg_right(u));
        if e > s {
            out.push(CoverInterval {
                region: b.region(),
                start: s.rem_euclid(total),
                length: e - s,
            });
        }
    }
}

/// Robots needed to cover the whole boundary when it is treated as one closed
/// curve, gaps included.
fn whole_curve_count(boundary: &Boundary, step: f64) -> u64 {
    (boundary.total_length() / step).ceil().max(1.0) as u64
}

/// Minimum number of covers of length `ell` over all segment-aligned starting
/// points (and the whole-curve fallback), or `None` when it exceeds `cap`.
/// Returns the best starting segment alongside the count; `None` as the start
/// means the whole-curve fallback won.
pub(crate) fn min_robots(
    boundary: &Boundary,
    ell: f64,
    cap: u64,
    tol: Tolerance,
) -> Option<(u64, Option<usize>)> {
    let step = tol.stretch(ell);
    let q = boundary.q();
    let fallback = whole_curve_count(boundary, step);
    if boundary.is_closed_curve() {
        return (fallback <= cap).then_some((fallback, Some(0)));
    }
    let mut best: Option<(u64, Option<usize>)> = (fallback <= cap).then_some((fallback, None));
    for k in 0..q {
        let limit = match best {
            Some((b, _)) => b,
            None => cap.saturating_add(1),
        };
        if limit == 0 {
            break;
        }
        // ties keep the earliest segment start over the fallback
        let allowance = match best {
            Some((_, None)) => limit,
            _ => limit - 1,
        };
        if let Run::Done(used) = tile_run(boundary, k, k + q - 1, step, allowance, None) {
            if best.is_none_or(|(b, s)| used < b || (used == b && s.is_none())) {
                best = Some((used, Some(k)));
            }
        }
    }
    best
}

/// Whether `budget` robots of length `ell` can cover every segment, trying
/// each segment as the starting point. `robots_used` is the minimum count
/// over all starts, capped by covering the whole closed curve.
pub fn is_tiling_feasible_full(
    boundary: &Boundary,
    ell: f64,
    budget: u64,
    tol: Tolerance,
    emit: bool,
) -> TilingResult {
    assert!(ell > 0.0, "cover length must be positive");
    let (count, start) = min_robots(boundary, ell, u64::MAX, tol)
        .expect("uncapped minimum always exists");
    let feasible = count <= budget;
    let covers = if emit && feasible {
        emit_best(boundary, ell, count, start, tol)
    } else {
        Vec::new()
    };
    TilingResult {
        feasible,
        robots_used: count,
        covers,
    }
}

pub(crate) fn emit_best(
    boundary: &Boundary,
    ell: f64,
    count: u64,
    start: Option<usize>,
    tol: Tolerance,
) -> Vec<CoverInterval> {
    let mut out = Vec::new();
    match start {
        Some(k) if !boundary.is_closed_curve() => {
            let run = tile_run(
                boundary,
                k,
                k + boundary.q() - 1,
                tol.stretch(ell),
                count,
                Some(&mut out),
            );
            debug_assert_eq!(run, Run::Done(count));
        }
        _ => {
            let piece = boundary.total_length() / count as f64;
            out.extend((0..count).map(|j| CoverInterval {
                region: boundary.region(),
                start: j as f64 * piece,
                length: piece,
            }));
        }
    }
    out
}
