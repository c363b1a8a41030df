//! Brute-force ground truth for injectivity: pair scanning for approximate
//! collisions, local injectivity via |f'|, and the analytic collision
//! witness for the quadratic family z + a z^2.
//!
//! A clean scan is evidence, not proof; it means "no collision found at
//! this resolution", never "injective".

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{difference_quotient, make_grid, AnalyticFn, Disk, GridScheme, SampleGrid,
    DEFAULT_SWITCH_EPS};
use crate::error::{Error, Result};
use crate::scan;
use crate::util::complex_array;

/// Pairs closer than this are left to the local-injectivity check; it keeps
/// the refinement from collapsing onto the diagonal and reporting zeros of
/// f' as collisions.
pub const MIN_SEPARATION: f64 = 1e-3;

/// A pair counts as a collision when |f(z1) - f(z2)| / |z1 - z2| falls to
/// this level after refinement.
pub const COLLISION_TOL: f64 = 1e-8;

/// Refinement rounds used by the scan.
const SCAN_REFINE_ITERS: usize = 80;

/// Verdict of a pair scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub found: bool,
    #[serde(with = "complex_array")]
    pub z1: Complex64,
    #[serde(with = "complex_array")]
    pub z2: Complex64,
    /// |f(z1) - f(z2)|.
    pub residual: f64,
    /// |z1 - z2|.
    pub separation: f64,
    /// residual / separation.
    pub quotient_modulus: f64,
    pub pairs_scanned: u64,
}

/// Scan all grid pairs with separation >= MIN_SEPARATION for the smallest
/// quotient modulus, refine the best pair under the same separation
/// constraint, and report whether it reached the collision tolerance.
pub fn pairwise_scan(
    f: &AnalyticFn,
    disk: Disk,
    rings: usize,
    spokes: usize,
) -> Result<CollisionReport> {
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

    let grid = make_grid(disk, GridScheme::Polar { rings, spokes });
    let points = grid.points();
    let n = points.len();
    let mut centered = Vec::with_capacity(n);
    for &z in points {
        centered.push(f.eval_centered(z)?);
    }

    let obj = |i: usize, j: usize| -> Option<f64> {
        let d = points[i] - points[j];
        if d.norm() < MIN_SEPARATION {
            return None;
        }
        Some(((centered[i] - centered[j]) / d).norm())
    };
    let outcome = scan::min_over_pairs(n, false, obj);
    let best = outcome
        .best
        .ok_or(Error::ResolutionTooLow(rings * spokes))?;

    let constrained = |a: Complex64, b: Complex64| -> Option<f64> {
        if (a - b).norm() < MIN_SEPARATION {
            return None;
        }
        difference_quotient(f, a, b, DEFAULT_SWITCH_EPS)
            .ok()
            .map(|q| q.norm())
    };
    let step0 = (radius / rings as f64).max(std::f64::consts::TAU * radius / spokes as f64);
    let refined = scan::refine_pair(
        constrained,
        (points[best.i], points[best.j]),
        best.value,
        radius,
        step0,
        SCAN_REFINE_ITERS,
    );

    let residual = (f.eval(refined.a)? - f.eval(refined.b)?).norm();
    let separation = (refined.a - refined.b).norm();
    let quotient_modulus = residual / separation;
    Ok(CollisionReport {
        found: quotient_modulus <= COLLISION_TOL,
        z1: refined.a,
        z2: refined.b,
        residual,
        separation,
        quotient_modulus,
        pairs_scanned: outcome.evaluated,
    })
}

/// Minimum of |f'| over the grid with its location. A value at roundoff
/// scale flags a critical point, where injectivity already fails locally.
pub fn local_univalence(f: &AnalyticFn, grid: &SampleGrid) -> Result<(f64, Complex64)> {
    let mut min = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for &z in grid.points() {
        let v = f.eval_deriv(z)?.norm();
        if v < min {
            min = v;
            witness = z;
        }
    }
    Ok((min, witness))
}

/// Analytic collision witness for f(z) = z + a z^2.
///
/// Distinct points collide exactly when z1 + z2 = -1/a. When the midpoint
/// m = -1/(2a) lies inside the unit disk, the pair m +/- i t m/|m| with
/// t = (1 - |m|)/2 is a genuine interior collision; otherwise there is no
/// interior collision pair, which happens exactly when |a| <= 1/2.
pub fn quadratic_collision(a: Complex64) -> Result<Option<(Complex64, Complex64)>> {
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroParameter);
    }
    let midpoint = -1.0 / (2.0 * a);
    let m = midpoint.norm();
    if m >= 1.0 {
        return Ok(None);
    }
    let t = 0.5 * (1.0 - m);
    let offset = Complex64::new(0.0, t) * (midpoint / m);
    Ok(Some((midpoint + offset, midpoint - offset)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn quadratic(a: Complex64) -> AnalyticFn {
        AnalyticFn::PowerSeries(vec![ZERO, ONE, a])
    }

    #[test]
    fn identity_map_never_collides() {
        let f = AnalyticFn::linear(ONE, ZERO);
        let report = pairwise_scan(&f, Disk::new(0.9), 24, 24, ).unwrap();
        assert!(!report.found);
        assert!((report.quotient_modulus - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn square_collides_at_antipodes() {
        let f = AnalyticFn::PowerSeries(vec![ZERO, ZERO, ONE]);
        let report = pairwise_scan(&f, Disk::new(0.9), 32, 32).unwrap();
        assert!(report.found);
        assert!((report.z1 + report.z2).norm() <= 1e-6);
        assert!(report.separation >= MIN_SEPARATION);
    }

    #[test]
    fn quadratic_above_half_collides_on_the_locus() {
        let f = quadratic(Complex64::new(0.6, 0.0));
        let report = pairwise_scan(&f, Disk::new(0.99), 48, 48).unwrap();
        assert!(report.found);
        assert!(report.residual <= 1e-8);
        // Collision locus: z1 + z2 = -1/a.
        let locus = report.z1 + report.z2 + 1.0 / Complex64::new(0.6, 0.0);
        assert!(locus.norm() <= 1e-4, "locus residual {}", locus.norm());
    }

    #[test]
    fn scan_counts_pairs() {
        let f = AnalyticFn::linear(ONE, ZERO);
        let report = pairwise_scan(&f, Disk::new(0.9), 4, 8).unwrap();
        // 33 points, minus near-diagonal exclusions; bounded by C(33, 2).
        assert!(report.pairs_scanned > 0 && report.pairs_scanned <= 528);
    }

    #[test]
    fn local_univalence_flags_critical_point() {
        // f' = 1 + 2z vanishes at -1/2.
        let f = quadratic(ONE);
        let disk = Disk::new(0.9);
        let grid = make_grid(disk, GridScheme::Polar { rings: 24, spokes: 48 })
            .with_point(Complex64::new(-0.5, 0.0))
            .unwrap();
        let (min, at) = local_univalence(&f, &grid).unwrap();
        assert!(min <= 1e-12);
        assert!((at - Complex64::new(-0.5, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn local_univalence_on_tame_functions() {
        let f = AnalyticFn::linear(Complex64::new(3.0, 0.0), ZERO);
        let grid = make_grid(Disk::new(0.9), GridScheme::Polar { rings: 8, spokes: 8 });
        let (min, _) = local_univalence(&f, &grid).unwrap();
        assert_eq!(min, 3.0);

        let f = quadratic(Complex64::new(0.5, 0.0));
        let disk = Disk::new(0.99);
        let grid = make_grid(disk, GridScheme::Polar { rings: 32, spokes: 64 });
        let (min, _) = local_univalence(&f, &grid).unwrap();
        assert!((min - 0.01).abs() <= 1e-2);
        assert!(min > 0.0);
    }

    #[test]
    fn quadratic_collision_witness_is_genuine() {
        let a = Complex64::new(0.6, 0.0);
        let (z1, z2) = quadratic_collision(a).unwrap().unwrap();
        assert!((z1 + z2 + 1.0 / a).norm() <= 1e-12);
        assert!(z1.norm() < 1.0 && z2.norm() < 1.0);
        let f = quadratic(a);
        let residual = (f.eval(z1).unwrap() - f.eval(z2).unwrap()).norm();
        assert!(residual <= 1e-12, "residual {residual}");
    }

    #[test]
    fn quadratic_collision_absent_at_and_below_half() {
        assert!(quadratic_collision(Complex64::new(0.5, 0.0)).unwrap().is_none());
        assert!(quadratic_collision(Complex64::new(0.3, 0.0)).unwrap().is_none());
        assert!(matches!(
            quadratic_collision(ZERO),
            Err(Error::ZeroParameter)
        ));
    }

    #[test]
    fn quadratic_collision_present_iff_above_half() {
        let mut rng = SplitMix64::new(2024);
        let mut checked = 0;
        while checked < 200 {
            let modulus = rng.range(0.05, 2.0);
            if (modulus - 0.5).abs() <= 0.001 {
                continue;
            }
            let a = Complex64::from_polar(modulus, rng.range(0.0, std::f64::consts::TAU));
            let witness = quadratic_collision(a).unwrap();
            assert_eq!(witness.is_some(), modulus > 0.5, "|a| = {modulus}");
            if let Some((z1, z2)) = witness {
                let f = quadratic(a);
                let residual = (f.eval(z1).unwrap() - f.eval(z2).unwrap()).norm();
                assert!(residual <= 1e-12);
            }
            checked += 1;
        }
    }

    #[test]
    fn scan_midpoint_matches_locus_at_three_quarters() {
        let a = Complex64::new(0.75, 0.0);
        let f = quadratic(a);
        let report = pairwise_scan(&f, Disk::new(0.9), 48, 48).unwrap();
        assert!(report.found);
        assert!((report.z1 + report.z2 + 1.0 / a).norm() <= 1e-4);
    }

    #[test]
    fn collision_pair_seeds_k_to_zero() {
        let a = Complex64::new(0.6, 0.0);
        let f = quadratic(a);
        let (z1, z2) = quadratic_collision(a).unwrap().unwrap();
        let est = crate::kconstant::estimate_k_seeded(&f, Disk::new(0.99), 16, 16, 60, &[(z1, z2)])
            .unwrap();
        assert!(est.value <= 1e-6, "K estimate {}", est.value);
    }

    #[test]
    fn critical_point_seeds_k_to_zero() {
        let f = quadratic(ONE);
        let w = Complex64::new(-0.5, 0.0);
        assert!(f.eval_deriv(w).unwrap().norm() <= 1e-10);
        let est =
            crate::kconstant::estimate_k_seeded(&f, Disk::new(0.9), 16, 16, 60, &[(w, w)]).unwrap();
        assert!(est.value <= 1e-8, "K estimate {}", est.value);
    }
}
