//! Estimation of the injectivity constant
//!
//! ```text
//! K(f, D) = inf over a != b in D of |(f(a) - f(b)) / (a - b)|,
//! ```
//!
//! extended across the diagonal by |f'|. A positive K certifies that f is
//! injective on D; a sampled estimate is an upper bound on the true infimum,
//! so only closed forms are ever treated as rigorous lower bounds.
//!
//! A caveat worth keeping in mind when reading estimates near the full unit
//! disk: there are injective maps on the open disk (for instance a conformal
//! map onto a slit disk, where two boundary arcs meet along the slit) whose
//! K over the whole disk is 0. Positivity of K is only guaranteed on disks
//! strictly inside the domain of analyticity, which is why every estimator
//! here demands radius < analyticity radius.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{difference_quotient, AnalyticFn, Disk, GridScheme, DEFAULT_SWITCH_EPS};
use crate::error::{Error, Result};
use crate::scan;
use crate::util::complex_array;

/// Default polar resolution and refinement schedule.
pub const DEFAULT_RINGS: usize = 48;
pub const DEFAULT_SPOKES: usize = 48;
pub const DEFAULT_REFINE_ITERS: usize = 60;

/// Number of best grid pairs used as independent refinement starts.
const MULTISTART: usize = 8;

/// Where a K value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KSource {
    ClosedForm,
    GridRefined,
    UserSupplied,
}

/// Best-found infimum of the difference-quotient modulus.
///
/// `value` is an upper bound on the true K; `source` records whether it is
/// exact (closed form) or sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KEstimate {
    pub value: f64,
    #[serde(with = "complex_array")]
    pub argmin_a: Complex64,
    #[serde(with = "complex_array")]
    pub argmin_b: Complex64,
    pub rings: usize,
    pub spokes: usize,
    pub refine_iterations: usize,
    pub source: KSource,
}

/// Exact K where a closed form is known.
///
/// Linear maps have K = |slope| on any disk. For z/(1-z) the quotient
/// modulus is 1/(|1-a||1-b|), minimized on the closed subdisk of radius
/// r < 1 at a = b = -r, giving 1/(1+r)^2; at r = 1 the conventional
/// full-disk value 1 is returned.
pub fn closed_form_k(f: &AnalyticFn, disk: Disk) -> Option<f64> {
    match f {
        AnalyticFn::Linear { slope, .. } => Some(slope.norm()),
        AnalyticFn::HalfPlaneMap => {
            let r = disk.radius();
            if r == 1.0 {
                Some(1.0)
            } else {
                Some(1.0 / ((1.0 + r) * (1.0 + r)))
            }
        }
        _ => None,
    }
}

/// A rigorous lower bound for K, available only when a closed form exists.
/// Sampled estimates are upper bounds of the infimum and never certify.
pub fn k_lower_bound_certified(f: &AnalyticFn, disk: Disk) -> Option<f64> {
    closed_form_k(f, disk)
}

impl KEstimate {
    /// Closed-form estimate with its attaining pair, when one exists inside
    /// the closed disk. The full-disk value for z/(1-z) at r = 1 has no
    /// attaining pair and is not representable here.
    pub fn from_closed_form(f: &AnalyticFn, disk: Disk) -> Option<KEstimate> {
        if !(disk.radius() < f.analyticity_radius()) {
            return None;
        }
        let value = closed_form_k(f, disk)?;
        let at = Complex64::new(-disk.radius(), 0.0);
        Some(KEstimate {
            value,
            argmin_a: at,
            argmin_b: at,
            rings: 0,
            spokes: 0,
            refine_iterations: 0,
            source: KSource::ClosedForm,
        })
    }
}

/// Grid scan plus multi-start coordinate-descent refinement for K.
///
/// Scans |difference quotient| over all unordered pairs of the polar grid,
/// diagonal included via |f'|, then refines from the best grid pairs with a
/// geometrically shrinking step, projecting back into the closed disk. The
/// result never exceeds the initial grid minimum.
pub fn estimate_k(
    f: &AnalyticFn,
    disk: Disk,
    rings: usize,
    spokes: usize,
    refine_iters: usize,
) -> Result<KEstimate> {
    estimate_k_seeded(f, disk, rings, spokes, refine_iters, &[])
}

/// `estimate_k` with extra caller-supplied refinement start pairs, used to
/// zoom in on a neighborhood (for example a reported collision pair).
pub fn estimate_k_seeded(
    f: &AnalyticFn,
    disk: Disk,
    rings: usize,
    spokes: usize,
    refine_iters: usize,
    seeds: &[(Complex64, Complex64)],
) -> Result<KEstimate> {
    if rings * spokes < 4 {
        return Err(Error::ResolutionTooLow(rings * spokes));
    }
    let radius = disk.radius();
    if !(radius < f.analyticity_radius()) {
        return Err(Error::DomainExceeded(
            Complex64::new(radius, 0.0),
            f.analyticity_radius(),
        ));
    }

    let grid = crate::analytic::make_grid(disk, GridScheme::Polar { rings, spokes });
    let points = grid.points();
    let n = points.len();
    let mut centered = Vec::with_capacity(n);
    let mut derivs = Vec::with_capacity(n);
    for &z in points {
        centered.push(f.eval_centered(z)?);
        derivs.push(f.eval_deriv(z)?);
    }

    // Pure scan over cached values; grid pairs closer than the quotient
    // switch are covered by the diagonal entries and skipped.
    let obj = |i: usize, j: usize| -> Option<f64> {
        if i == j {
            return Some(derivs[i].norm());
        }
        let d = points[i] - points[j];
        if d.norm() < DEFAULT_SWITCH_EPS {
            return None;
        }
        Some(((centered[i] - centered[j]) / d).norm())
    };
    let (mut rows, _evaluated) = scan::row_minima(n, true, obj);
    rows.sort_by(|a, b| (a.value, a.i, a.j).partial_cmp(&(b.value, b.i, b.j)).unwrap());
    let grid_best = rows.first().copied();

    let quotient = |a: Complex64, b: Complex64| -> Option<f64> {
        difference_quotient(f, a, b, DEFAULT_SWITCH_EPS)
            .ok()
            .map(|q| q.norm())
    };

    let radial = radius / rings as f64;
    let arc = std::f64::consts::TAU * radius / spokes as f64;
    let step0 = radial.max(arc);

    let mut starts: Vec<(Complex64, Complex64, f64)> = rows
        .iter()
        .take(MULTISTART)
        .map(|p| (points[p.i], points[p.j], p.value))
        .collect();
    for &(a, b) in seeds {
        if let Some(v) = quotient(a, b) {
            starts.push((a, b, v));
        }
    }

    let mut best: Option<scan::Refined> = None;
    for &(a, b, v) in &starts {
        let refined = scan::refine_pair(quotient, (a, b), v, radius, step0, refine_iters);
        let improves = best
            .as_ref()
            .is_none_or(|cur| refined.value.total_cmp(&cur.value).is_lt());
        if improves {
            best = Some(refined);
        }
    }

    let refined = best.expect("grid has at least one diagonal pair");
    debug_assert!(grid_best.is_none_or(|g| refined.value <= g.value));
    Ok(KEstimate {
        value: refined.value,
        argmin_a: refined.a,
        argmin_b: refined.b,
        rings,
        spokes,
        refine_iterations: refined.rounds,
        source: KSource::GridRefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::AnalyticFn;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn linear_k_is_exact_on_any_grid() {
        let f = AnalyticFn::linear(Complex64::new(2.0, 0.0), ZERO);
        let disk = Disk::new(1.0);
        for (rings, spokes) in [(2, 2), (8, 16), (24, 24)] {
            let est = estimate_k(&f, disk, rings, spokes, 20).unwrap();
            assert_eq!(est.value, 2.0);
            assert_eq!(est.source, KSource::GridRefined);
        }
    }

    #[test]
    fn square_collapses_to_zero() {
        // z^2 glues antipodal points, so K on any centered disk is 0.
        let f = AnalyticFn::PowerSeries(vec![ZERO, ZERO, ONE]);
        let est = estimate_k(&f, Disk::new(1.0), 64, 64, 40).unwrap();
        assert!(est.value <= 1e-3, "value = {}", est.value);
    }

    #[test]
    fn halfplane_k_on_subdisk() {
        let f = AnalyticFn::HalfPlaneMap;
        let est = estimate_k(&f, Disk::new(0.9), DEFAULT_RINGS, DEFAULT_SPOKES, 40).unwrap();
        let expect = 1.0 / (1.9 * 1.9);
        assert!((est.value - expect).abs() <= 1e-4, "value = {}", est.value);
        // The infimum sits on the diagonal at -r.
        assert!((est.argmin_a - Complex64::new(-0.9, 0.0)).norm() <= 1e-2);
    }

    #[test]
    fn closed_forms() {
        let c = Complex64::from_polar(0.5, std::f64::consts::FRAC_PI_4);
        let f = AnalyticFn::linear(c, ZERO);
        assert_eq!(closed_form_k(&f, Disk::new(0.7)), Some(c.norm()));
        assert!((closed_form_k(&f, Disk::new(0.7)).unwrap() - 0.5).abs() <= 1e-15);

        assert_eq!(closed_form_k(&AnalyticFn::HalfPlaneMap, Disk::new(1.0)), Some(1.0));
        let k_half = closed_form_k(&AnalyticFn::HalfPlaneMap, Disk::new(0.5)).unwrap();
        assert!((k_half - 1.0 / 2.25).abs() <= 1e-15);
        let est = estimate_k(&AnalyticFn::HalfPlaneMap, Disk::new(0.5), 48, 48, 40).unwrap();
        assert!((est.value - k_half).abs() <= 1e-4);

        assert_eq!(
            closed_form_k(&AnalyticFn::PowerSeries(vec![ZERO, ONE, ONE * 0.25]), Disk::new(0.9)),
            None
        );
    }

    #[test]
    fn lower_bound_only_from_closed_forms() {
        assert_eq!(
            k_lower_bound_certified(&AnalyticFn::linear(ONE, ZERO), Disk::new(0.9)),
            Some(1.0)
        );
        assert_eq!(
            k_lower_bound_certified(&AnalyticFn::HalfPlaneMap, Disk::new(1.0)),
            Some(1.0)
        );
        assert_eq!(
            k_lower_bound_certified(
                &AnalyticFn::PowerSeries(vec![ZERO, ONE, Complex64::new(0.25, 0.0)]),
                Disk::new(0.9)
            ),
            None
        );
    }

    #[test]
    fn resolution_guard() {
        let f = AnalyticFn::linear(ONE, ZERO);
        assert!(matches!(
            estimate_k(&f, Disk::new(0.9), 1, 3, 10),
            Err(Error::ResolutionTooLow(3))
        ));
    }

    #[test]
    fn radius_must_be_strictly_inside() {
        let f = AnalyticFn::HalfPlaneMap;
        assert!(matches!(
            estimate_k(&f, Disk::new(1.0), 8, 8, 10),
            Err(Error::DomainExceeded(_, _))
        ));
    }

    #[test]
    fn estimate_never_exceeds_grid_minimum_and_argmin_reproduces_value() {
        let f = AnalyticFn::PowerSeries(vec![
            ZERO,
            ONE,
            Complex64::new(0.31, -0.12),
            Complex64::new(-0.05, 0.04),
        ]);
        let disk = Disk::new(0.9);
        let est = estimate_k(&f, disk, 24, 24, 40).unwrap();
        let q = difference_quotient(&f, est.argmin_a, est.argmin_b, DEFAULT_SWITCH_EPS)
            .unwrap()
            .norm();
        assert!((q - est.value).abs() <= 1e-12 * q.max(1e-300));
        assert!(disk.contains(est.argmin_a) && disk.contains(est.argmin_b));
    }

    #[test]
    fn from_closed_form_constructor() {
        let est = KEstimate::from_closed_form(&AnalyticFn::linear(ONE * 2.0, ZERO), Disk::new(0.9))
            .unwrap();
        assert_eq!(est.value, 2.0);
        assert_eq!(est.source, KSource::ClosedForm);
        assert_eq!(est.refine_iterations, 0);
        // No attaining pair for the conventional full-disk value.
        assert!(KEstimate::from_closed_form(&AnalyticFn::HalfPlaneMap, Disk::new(1.0)).is_none());
    }
}
