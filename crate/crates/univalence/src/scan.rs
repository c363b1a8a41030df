//! Pair-scan kernels and derivative-free local refinement.
//!
//! The K estimator and the collision oracle both reduce an objective over
//! all unordered grid-point pairs. The scan is embarrassingly parallel; the
//! reduction is a pure minimum with a (value, i, j) tie-break so that the
//! parallel and sequential paths return identical results.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Best pair found by a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMin {
    pub value: f64,
    pub i: usize,
    pub j: usize,
}

/// Scan result plus the number of pairs the objective accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOutcome {
    pub best: Option<PairMin>,
    pub evaluated: u64,
}

fn better(a: &PairMin, b: &PairMin) -> bool {
    (a.value, a.i, a.j) < (b.value, b.i, b.j)
}

fn row_scan<F>(n: usize, include_diagonal: bool, i: usize, obj: &F) -> (Option<PairMin>, u64)
where
    F: Fn(usize, usize) -> Option<f64>,
{
    let mut best: Option<PairMin> = None;
    let mut evaluated = 0u64;
    let start = if include_diagonal { i } else { i + 1 };
    for j in start..n {
        if let Some(value) = obj(i, j) {
            evaluated += 1;
            let cand = PairMin { value, i, j };
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
    }
    (best, evaluated)
}

fn merge(a: (Option<PairMin>, u64), b: (Option<PairMin>, u64)) -> (Option<PairMin>, u64) {
    let best = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(if better(&x, &y) { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    };
    (best, a.1 + b.1)
}

/// Sequential scan over unordered index pairs (i <= j or i < j).
pub fn min_over_pairs_seq<F>(n: usize, include_diagonal: bool, obj: F) -> ScanOutcome
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    let mut acc = (None, 0u64);
    for i in 0..n {
        acc = merge(acc, row_scan(n, include_diagonal, i, &obj));
    }
    ScanOutcome {
        best: acc.0,
        evaluated: acc.1,
    }
}

/// Parallel scan; returns exactly what the sequential scan returns.
#[cfg(feature = "parallel")]
pub fn min_over_pairs_par<F>(n: usize, include_diagonal: bool, obj: F) -> ScanOutcome
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    let acc = (0..n)
        .into_par_iter()
        .map(|i| row_scan(n, include_diagonal, i, &obj))
        .reduce(|| (None, 0), merge);
    ScanOutcome {
        best: acc.0,
        evaluated: acc.1,
    }
}

/// Dispatch to the parallel kernel when the feature is enabled.
pub fn min_over_pairs<F>(n: usize, include_diagonal: bool, obj: F) -> ScanOutcome
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        min_over_pairs_par(n, include_diagonal, obj)
    }
    #[cfg(not(feature = "parallel"))]
    {
        min_over_pairs_seq(n, include_diagonal, obj)
    }
}

/// Per-row best pairs (row i reduced over j >= i), used to pick multi-start
/// refinement seeds. Rows come back in index order in both kernels.
pub fn row_minima_seq<F>(n: usize, include_diagonal: bool, obj: F) -> (Vec<PairMin>, u64)
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    let mut rows = Vec::with_capacity(n);
    let mut evaluated = 0;
    for i in 0..n {
        let (best, count) = row_scan(n, include_diagonal, i, &obj);
        evaluated += count;
        rows.extend(best);
    }
    (rows, evaluated)
}

#[cfg(feature = "parallel")]
pub fn row_minima_par<F>(n: usize, include_diagonal: bool, obj: F) -> (Vec<PairMin>, u64)
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    let per_row: Vec<(Option<PairMin>, u64)> = (0..n)
        .into_par_iter()
        .map(|i| row_scan(n, include_diagonal, i, &obj))
        .collect();
    let evaluated = per_row.iter().map(|(_, c)| c).sum();
    (per_row.into_iter().filter_map(|(b, _)| b).collect(), evaluated)
}

pub fn row_minima<F>(n: usize, include_diagonal: bool, obj: F) -> (Vec<PairMin>, u64)
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        row_minima_par(n, include_diagonal, obj)
    }
    #[cfg(not(feature = "parallel"))]
    {
        row_minima_seq(n, include_diagonal, obj)
    }
}

/// Multiplicative shrink applied to the step when no move improves.
pub const REFINE_SHRINK: f64 = 0.5;
/// Step below which refinement stops.
pub const REFINE_STEP_MIN: f64 = 1e-10;

/// Result of one refinement run.
#[derive(Debug, Clone, Copy)]
pub struct Refined {
    pub a: Complex64,
    pub b: Complex64,
    pub value: f64,
    pub rounds: usize,
}

fn clamp_to_disk(z: Complex64, radius: f64) -> Complex64 {
    let n = z.norm();
    if n > radius {
        z * (radius / n)
    } else {
        z
    }
}

/// Moves accepted within one round before the step shrinks anyway.
const MOVES_PER_ROUND: usize = 256;

/// Coordinate-wise descent on (Re a, Im a, Re b, Im b) with a geometrically
/// shrinking step. Each round walks the pair while moves of the current
/// step length keep improving, then halves the step. Points are projected
/// back into the closed disk; the objective may reject a candidate pair by
/// returning None. Only strict improvements are accepted, so the result
/// never exceeds the start value.
pub fn refine_pair<F>(
    obj: F,
    start: (Complex64, Complex64),
    start_value: f64,
    radius: f64,
    initial_step: f64,
    max_rounds: usize,
) -> Refined
where
    F: Fn(Complex64, Complex64) -> Option<f64>,
{
    let (mut a, mut b) = start;
    let mut value = start_value;
    let mut step = initial_step;
    let mut rounds = 0;
    while rounds < max_rounds && step >= REFINE_STEP_MIN {
        rounds += 1;
        for _ in 0..MOVES_PER_ROUND {
            let mut best_move: Option<(Complex64, Complex64, f64)> = None;
            for k in 0..8 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let (mut ca, mut cb) = (a, b);
                match k / 2 {
                    0 => ca.re += sign * step,
                    1 => ca.im += sign * step,
                    2 => cb.re += sign * step,
                    _ => cb.im += sign * step,
                }
                ca = clamp_to_disk(ca, radius);
                cb = clamp_to_disk(cb, radius);
                if let Some(v) = obj(ca, cb) {
                    let improves = v < best_move.as_ref().map_or(value, |(_, _, bv)| *bv);
                    if improves {
                        best_move = Some((ca, cb, v));
                    }
                }
            }
            match best_move {
                Some((na, nb, nv)) => {
                    a = na;
                    b = nb;
                    value = nv;
                }
                None => break,
            }
        }
        step *= REFINE_SHRINK;
    }
    Refined {
        a,
        b,
        value,
        rounds,
    }
}
