//! Decision procedures for the injectivity criteria, producing auditable
//! certificates.
//!
//! Status semantics: `Certified` requires that the K side of the inequality
//! is exact (closed form or supplied by the caller) and the margin is
//! nonnegative. A sampled K is only an upper bound of the true infimum, so
//! a nonnegative margin against it yields `HeuristicCertified`: plausible,
//! not proven.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{make_grid, AnalyticFn, Disk, GridScheme, SampleGrid};
use crate::error::{Error, Result};
use crate::kconstant::{
    estimate_k, k_lower_bound_certified, KSource, DEFAULT_REFINE_ITERS, DEFAULT_RINGS,
    DEFAULT_SPOKES,
};

/// Boundary sample count used by the certifiers.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 512;
/// Golden-section refinement iterations for the boundary sup.
const GOLDEN_ITERS: usize = 20;
/// Boundary samples appended to every positivity grid.
const NWW_BOUNDARY_SAMPLES: usize = 512;
/// Relative inflation applied to the enclosing-disk parameter so sampled
/// derivative values land strictly inside the disk.
const ENCLOSING_INFLATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Perturbation,
    LinearDisk,
    Nww,
    TaylorSum,
    ZetaTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Certified,
    HeuristicCertified,
    NotCertified,
}

/// Location of the extremum that determined the margin: a point in the
/// disk (stored as [re, im]) or a coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Point([f64; 2]),
    Index(usize),
}

impl Witness {
    pub fn point(z: Complex64) -> Self {
        Witness::Point([z.re, z.im])
    }

    pub fn as_point(&self) -> Option<Complex64> {
        match self {
            Witness::Point([re, im]) => Some(Complex64::new(*re, *im)),
            Witness::Index(_) => None,
        }
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub criterion: CriterionKind,
    pub status: CertStatus,
    pub margin: f64,
    pub witness: Witness,
    pub k_source: KSource,
    /// The exact side of the inequality (K, c, or k), when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_value: Option<f64>,
    /// The measured side (sup gap, min Re f', coefficient sum, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<f64>,
    /// Margin is exactly zero: the inequality holds with equality.
    pub boundary_case: bool,
}

fn status_for(margin: f64, source: KSource) -> CertStatus {
    if margin >= 0.0 {
        match source {
            KSource::GridRefined => CertStatus::HeuristicCertified,
            KSource::ClosedForm | KSource::UserSupplied => CertStatus::Certified,
        }
    } else {
        CertStatus::NotCertified
    }
}

/// Evaluates f' - g', through the coefficient-level difference when the
/// family supports it (exact cancellation), otherwise pointwise.
enum GapFn {
    Formal(AnalyticFn),
    Pair(AnalyticFn, AnalyticFn),
}

impl GapFn {
    fn between(f: &AnalyticFn, g: &AnalyticFn) -> GapFn {
        let df = f.deriv();
        let dg = g.deriv();
        match df.formal_sub(&dg) {
            Some(gap) => GapFn::Formal(gap),
            None => GapFn::Pair(df, dg),
        }
    }

    fn at(&self, z: Complex64) -> Result<Complex64> {
        match self {
            GapFn::Formal(gap) => gap.eval(z),
            GapFn::Pair(df, dg) => Ok(df.eval(z)? - dg.eval(z)?),
        }
    }
}

/// Supremum of |f' - g'| over the closed disk, located on the boundary
/// circle by the maximum modulus principle.
///
/// Scans `boundary_samples` equally spaced boundary points, refines the
/// angle around the best sample by golden section, and cross-checks that no
/// interior grid point exceeds the boundary value. Returns the sup and the
/// point where it is attained.
pub fn sup_deriv_gap(
    f: &AnalyticFn,
    g: &AnalyticFn,
    disk: Disk,
    boundary_samples: usize,
) -> Result<(f64, Complex64)> {
    if boundary_samples < 64 {
        return Err(Error::BoundarySamplesTooFew(boundary_samples));
    }
    let r = disk.radius();
    for h in [f, g] {
        if !(r < h.analyticity_radius()) {
            return Err(Error::DomainExceeded(
                Complex64::new(r, 0.0),
                h.analyticity_radius(),
            ));
        }
    }
    let gap = GapFn::between(f, g);
    let at_angle = |theta: f64| -> Result<(f64, Complex64)> {
        let z = Complex64::from_polar(r, theta);
        Ok((gap.at(z)?.norm(), z))
    };

    let dtheta = std::f64::consts::TAU / boundary_samples as f64;
    let mut best_theta = 0.0;
    let mut best = at_angle(0.0)?;
    for j in 1..boundary_samples {
        let theta = dtheta * j as f64;
        let cand = at_angle(theta)?;
        if cand.0 > best.0 {
            best = cand;
            best_theta = theta;
        }
    }

    // Golden-section maximization of the angle around the best sample.
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut lo = best_theta - dtheta;
    let mut hi = best_theta + dtheta;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = at_angle(x1)?;
    let mut f2 = at_angle(x2)?;
    for _ in 0..GOLDEN_ITERS {
        if f1.0 > best.0 {
            best = f1;
        }
        if f2.0 > best.0 {
            best = f2;
        }
        if f1.0 < f2.0 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = at_angle(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = at_angle(x1)?;
        }
    }
    if f1.0 > best.0 {
        best = f1;
    }
    if f2.0 > best.0 {
        best = f2;
    }

    // Interior grid must not beat the boundary (maximum modulus); if
    // rounding ever lets it, report the larger value rather than hide it.
    let interior = make_grid(disk, GridScheme::Polar { rings: 16, spokes: 64 });
    for &z in interior.points() {
        let v = gap.at(z)?.norm();
        if v > best.0 {
            best = (v, z);
        }
    }

    Ok(best)
}

/// The perturbation criterion: if sup |f' - g'| <= K(g, D) for a function g
/// injective on D, then f is injective on D.
///
/// K is taken from `k` when supplied (the caller asserts both its value and
/// g's injectivity), else from the closed form, else from a grid estimate,
/// and the certificate records which.
pub fn certify_perturbation(
    f: &AnalyticFn,
    g: &AnalyticFn,
    disk: Disk,
    k: Option<f64>,
) -> Result<Certificate> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let (k_value, k_source) = match k {
        Some(v) => (v, KSource::UserSupplied),
        None => match k_lower_bound_certified(g, disk) {
            Some(v) => (v, KSource::ClosedForm),
            None => {
                let est = estimate_k(g, disk, DEFAULT_RINGS, DEFAULT_SPOKES, DEFAULT_REFINE_ITERS)?;
                (est.value, KSource::GridRefined)
            }
        },
    };
    let (sup, witness) = sup_deriv_gap(f, g, disk, DEFAULT_BOUNDARY_SAMPLES)?;
    let margin = k_value - sup;
    Ok(Certificate {
        criterion: CriterionKind::Perturbation,
        status: status_for(margin, k_source),
        margin,
        witness: Witness::point(witness),
        k_source,
        k_value: Some(k_value),
        observed: Some(sup),
        boundary_case: margin == 0.0,
    })
}

/// Grid points plus a boundary ring: the sample set shared by the
/// positivity check, the enclosing-disk parameter, and the sample-level
/// linear-disk check, so their equivalences hold pointwise.
pub fn positivity_samples(disk: Disk, grid: &SampleGrid) -> Vec<Complex64> {
    let boundary = make_grid(
        disk,
        GridScheme::BoundaryCircle {
            samples: NWW_BOUNDARY_SAMPLES,
        },
    );
    grid.points()
        .iter()
        .chain(boundary.points())
        .copied()
        .collect()
}

/// Positivity of Re f' over the sampled disk (the classical sufficient
/// condition for injectivity on a convex domain).
///
/// Sampled positivity does not bound the un-sampled set, so the result is
/// `HeuristicCertified` for everything except linear maps, whose derivative
/// is constant.
pub fn check_nww(f: &AnalyticFn, disk: Disk, grid: &SampleGrid) -> Result<Certificate> {
    if grid.disk().radius() > disk.radius() * (1.0 + 1e-12) {
        return Err(Error::DomainExceeded(
            Complex64::new(grid.disk().radius(), 0.0),
            disk.radius(),
        ));
    }
    let mut min_re = f64::INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for z in positivity_samples(disk, grid) {
        let re = f.eval_deriv(z)?.re;
        if re < min_re {
            min_re = re;
            witness = z;
        }
    }
    let exact = matches!(f, AnalyticFn::Linear { .. });
    let k_source = if exact {
        KSource::ClosedForm
    } else {
        KSource::GridRefined
    };
    let status = if min_re > 0.0 {
        if exact {
            CertStatus::Certified
        } else {
            CertStatus::HeuristicCertified
        }
    } else {
        CertStatus::NotCertified
    };
    Ok(Certificate {
        criterion: CriterionKind::Nww,
        status,
        margin: min_re,
        witness: Witness::point(witness),
        k_source,
        k_value: None,
        observed: Some(min_re),
        boundary_case: min_re == 0.0,
    })
}

/// Least c (inflated by 1e-6) such that every sampled derivative value w
/// lies strictly inside the disk { |w - c| < c }: w is inside exactly when
/// c > |w|^2 / (2 Re w).
pub fn enclosing_disk_parameter(f: &AnalyticFn, disk: Disk, grid: &SampleGrid) -> Result<f64> {
    let mut max_ratio: f64 = 0.0;
    for z in positivity_samples(disk, grid) {
        let w = f.eval_deriv(z)?;
        if w.re <= 0.0 {
            return Err(Error::NwwViolated { at: z, re: w.re });
        }
        max_ratio = max_ratio.max(w.norm_sqr() / (2.0 * w.re));
    }
    Ok((1.0 + ENCLOSING_INFLATION) * max_ratio)
}

/// Margin of the sample-level disk condition |f'(z) - c| <= c over an
/// explicit sample set. Positive margin means every sampled derivative lies
/// in the disk of radius c around c.
pub fn linear_disk_margin_on_samples(
    f: &AnalyticFn,
    samples: &[Complex64],
    c: f64,
) -> Result<(f64, Complex64)> {
    if !(c > 0.0) {
        return Err(Error::NonpositiveC(c));
    }
    let center = Complex64::new(c, 0.0);
    let gap = GapFn::between(f, &AnalyticFn::linear(center, Complex64::new(0.0, 0.0)));
    let mut sup = f64::NEG_INFINITY;
    let mut witness = Complex64::new(0.0, 0.0);
    for &z in samples {
        let v = gap.at(z)?.norm();
        if v > sup {
            sup = v;
            witness = z;
        }
    }
    Ok((c - sup, witness))
}

/// Same check as `check_nww`'s companion: the whole-disk condition
/// |f'(z) - c| <= c via the boundary sup, certified because c is exact.
/// Equivalent to `certify_perturbation` against g(z) = cz with K = c.
pub fn certify_linear_disk(f: &AnalyticFn, disk: Disk, c: f64) -> Result<Certificate> {
    if !(c > 0.0) {
        return Err(Error::NonpositiveC(c));
    }
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let g = AnalyticFn::linear(Complex64::new(c, 0.0), Complex64::new(0.0, 0.0));
    let (sup, witness) = sup_deriv_gap(f, &g, disk, DEFAULT_BOUNDARY_SAMPLES)?;
    let margin = c - sup;
    Ok(Certificate {
        criterion: CriterionKind::LinearDisk,
        status: status_for(margin, KSource::UserSupplied),
        margin,
        witness: Witness::point(witness),
        k_source: KSource::UserSupplied,
        k_value: Some(c),
        observed: Some(sup),
        boundary_case: margin == 0.0,
    })
}

fn coeff_at(list: &[Complex64], n: usize) -> Complex64 {
    list.get(n).copied().unwrap_or(Complex64::new(0.0, 0.0))
}

/// Coefficient-sum criterion: sum over n >= 1 of n |a_n - b_n| must be
/// strictly below k. Entries absent from a finite list are zero; callers
/// who intend equal tails must pad explicitly.
pub fn taylor_sum_criterion(
    a: &[Complex64],
    b: &[Complex64],
    k: f64,
) -> Result<Certificate> {
    if !(k > 0.0) {
        return Err(Error::NonpositiveK(k));
    }
    let len = a.len().max(b.len());
    let mut sum = 0.0;
    let mut largest = (0.0_f64, 1usize);
    for n in 1..len {
        let term = (n as f64) * (coeff_at(a, n) - coeff_at(b, n)).norm();
        sum += term;
        if term > largest.0 {
            largest = (term, n);
        }
    }
    let margin = k - sum;
    Ok(Certificate {
        criterion: CriterionKind::TaylorSum,
        status: if sum < k {
            CertStatus::Certified
        } else {
            CertStatus::NotCertified
        },
        margin,
        witness: Witness::Index(largest.1),
        k_source: KSource::UserSupplied,
        k_value: Some(k),
        observed: Some(sum),
        boundary_case: margin == 0.0,
    })
}

/// Riemann zeta for real p > 1: direct partial sum plus the integral tail
/// correction N^(1-p)/(p-1) + N^(-p)/2, with N chosen so the first omitted
/// correction term stays below 1e-13.
pub fn zeta(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::ZetaExponentTooSmall(p));
    }
    let n_terms = ((p / 12.0) / 1e-13).powf(1.0 / (p + 1.0)).ceil();
    let n = (n_terms as usize).clamp(16, 50_000_000) as u64;

    // Kahan summation of n^{-p} for 1 <= i < N keeps the rounding error at
    // a few ulps even for the ~1e6 terms needed near p = 1.
    let mut sum = 0.0;
    let mut carry = 0.0;
    for i in 1..n {
        let term = (i as f64).powf(-p);
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    let nf = n as f64;
    let tail = nf.powf(1.0 - p) / (p - 1.0) + 0.5 * nf.powf(-p);
    Ok(sum + tail)
}

/// Per-coefficient tail criterion: |a_n - b_n| < k zeta(p) / n^(p+1),
/// strictly, for every coefficient index present.
pub fn zeta_criterion(
    a: &[Complex64],
    b: &[Complex64],
    k: f64,
    p: f64,
) -> Result<Certificate> {
    if !(k > 0.0) {
        return Err(Error::NonpositiveK(k));
    }
    let zp = zeta(p)?;
    let len = a.len().max(b.len());
    let mut min_gap = f64::INFINITY;
    let mut worst_diff = 0.0;
    let mut witness = 1usize;
    let mut all_strict = true;
    for n in 1..len {
        let diff = (coeff_at(a, n) - coeff_at(b, n)).norm();
        let bound = k * zp / (n as f64).powf(p + 1.0);
        all_strict &= diff < bound;
        let gap = bound - diff;
        if gap < min_gap {
            min_gap = gap;
            worst_diff = diff;
            witness = n;
        }
    }
    if len <= 1 {
        // No coefficient index to compare; the condition holds vacuously
        // with the n = 1 bound as the margin.
        min_gap = k * zp;
        worst_diff = 0.0;
    }
    Ok(Certificate {
        criterion: CriterionKind::ZetaTail,
        status: if all_strict {
            CertStatus::Certified
        } else {
            CertStatus::NotCertified
        },
        margin: min_gap,
        witness: Witness::Index(witness),
        k_source: KSource::UserSupplied,
        k_value: Some(k),
        observed: Some(worst_diff),
        boundary_case: min_gap == 0.0,
    })
}
