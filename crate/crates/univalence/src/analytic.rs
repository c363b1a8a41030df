//! Analytic functions on origin-centered disks.
//!
//! A function is either a truncated power series, a linear map, one of two
//! rational builtins with a pole at z = 1, or a `Rational` combination of a
//! polynomial and a scaled power of 1/(1-z). The last form keeps the family
//! closed under differentiation and under coefficient-level subtraction,
//! which several certification routines rely on for exact cancellation.

use num_complex::Complex64;

use crate::error::{Error, ParseError, Result, POLE_GUARD};

/// Radius reported for entire functions. Finite so that strict
/// radius comparisons stay well-defined.
pub const ENTIRE_RADIUS: f64 = 1e300;

/// Below this separation the difference quotient switches to the
/// midpoint-derivative extension to avoid catastrophic cancellation.
pub const DEFAULT_SWITCH_EPS: f64 = 1e-6;

/// Origin-centered closed evaluation disk, radius in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    radius: f64,
}

impl Disk {
    /// Panics if the radius is outside (0, 1].
    pub fn new(radius: f64) -> Self {
        assert!(
            radius > 0.0 && radius <= 1.0,
            "disk radius must lie in (0, 1], got {radius}"
        );
        Self { radius }
    }

    pub fn try_new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(Error::DomainExceeded(Complex64::new(radius, 0.0), 1.0));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.norm() <= self.radius * (1.0 + 1e-12)
    }
}

/// An analytic function with an exact formal derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFn {
    /// c0 + c1 z + ... + cN z^N, evaluated highest coefficient first.
    PowerSeries(Vec<Complex64>),
    /// slope * z + intercept.
    Linear {
        slope: Complex64,
        intercept: Complex64,
    },
    /// z / (1 - z), analytic on the unit disk.
    HalfPlaneMap,
    /// z^2 / (1 - z), analytic on the unit disk.
    HalfPlaneMapSq,
    /// poly(z) + scale / (1 - z)^order. Derivatives of the rational
    /// builtins and their series perturbations live here.
    Rational {
        poly: Vec<Complex64>,
        scale: Complex64,
        order: u32,
    },
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Nested multiplication, highest coefficient first. The fixed order keeps
/// results bit-reproducible across runs on one platform.
fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Same recurrence with the constant term replaced by zero.
fn horner_no_const(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for (n, &c) in coeffs.iter().enumerate().rev() {
        let c = if n == 0 { ZERO } else { c };
        acc = acc * z + c;
    }
    acc
}

/// Derivative evaluated directly: sum of n * c_n * z^(n-1), highest term first.
fn horner_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for (n, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * (n as f64);
    }
    acc
}

fn pole_term(z: Complex64, scale: Complex64, order: u32) -> Result<Complex64> {
    if scale == ZERO {
        return Ok(ZERO);
    }
    let w = ONE - z;
    if w.norm() < POLE_GUARD {
        return Err(Error::PoleProximity(z));
    }
    Ok(scale / w.powu(order))
}

impl AnalyticFn {
    /// Validating constructor for a truncated power series.
    pub fn power_series(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ResolutionTooLow(0));
        }
        for &c in &coeffs {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite(c));
            }
        }
        Ok(Self::PowerSeries(coeffs))
    }

    pub fn linear(slope: Complex64, intercept: Complex64) -> Self {
        Self::Linear { slope, intercept }
    }

    /// Radius of the largest origin-centered disk of analyticity.
    pub fn analyticity_radius(&self) -> f64 {
        match self {
            Self::PowerSeries(_) | Self::Linear { .. } => ENTIRE_RADIUS,
            Self::HalfPlaneMap | Self::HalfPlaneMapSq => 1.0,
            Self::Rational { scale, .. } => {
                if *scale == ZERO {
                    ENTIRE_RADIUS
                } else {
                    1.0
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Self::PowerSeries(c) => c.iter().skip(1).all(|&c| c == ZERO),
            Self::Linear { slope, .. } => *slope == ZERO,
            Self::HalfPlaneMap | Self::HalfPlaneMapSq => false,
            Self::Rational { poly, scale, .. } => {
                *scale == ZERO && poly.iter().skip(1).all(|&c| c == ZERO)
            }
        }
    }

    fn check_domain(&self, z: Complex64) -> Result<()> {
        // A NaN norm fails the comparison and is rejected with the point.
        if !(z.norm() < self.analyticity_radius()) {
            return Err(Error::DomainExceeded(z, self.analyticity_radius()));
        }
        Ok(())
    }

    /// Evaluate f(z).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.check_domain(z)?;
        match self {
            Self::PowerSeries(c) => Ok(horner(c, z)),
            Self::Linear { slope, intercept } => Ok(slope * z + intercept),
            Self::HalfPlaneMap => {
                let w = ONE - z;
                if w.norm() < POLE_GUARD {
                    return Err(Error::PoleProximity(z));
                }
                Ok(z / w)
            }
            Self::HalfPlaneMapSq => {
                let w = ONE - z;
                if w.norm() < POLE_GUARD {
                    return Err(Error::PoleProximity(z));
                }
                Ok(z * z / w)
            }
            Self::Rational { poly, scale, order } => {
                Ok(horner(poly, z) + pole_term(z, *scale, *order)?)
            }
        }
    }

    /// Evaluate f(z) with the additive constant stripped. Difference
    /// quotients are translation-invariant, so dropping the constant before
    /// subtracting makes that invariance exact in floating point and avoids
    /// cancellation against large constants.
    pub(crate) fn eval_centered(&self, z: Complex64) -> Result<Complex64> {
        self.check_domain(z)?;
        match self {
            Self::PowerSeries(c) => Ok(horner_no_const(c, z)),
            Self::Linear { slope, .. } => Ok(slope * z),
            Self::HalfPlaneMap | Self::HalfPlaneMapSq => self.eval(z),
            Self::Rational { poly, scale, order } => {
                Ok(horner_no_const(poly, z) + pole_term(z, *scale, *order)?)
            }
        }
    }

    /// Evaluate f'(z) without building the derivative object. Agrees
    /// bit-for-bit with `eval` of `deriv`.
    pub fn eval_deriv(&self, z: Complex64) -> Result<Complex64> {
        self.check_domain(z)?;
        match self {
            Self::PowerSeries(c) => Ok(horner_deriv(c, z)),
            Self::Linear { slope, .. } => Ok(*slope),
            Self::HalfPlaneMap => pole_term(z, ONE, 2),
            Self::HalfPlaneMapSq => Ok(-ONE + pole_term(z, ONE, 2)?),
            Self::Rational { poly, scale, order } => {
                Ok(horner_deriv(poly, z) + pole_term(z, scale * (*order as f64), order + 1)?)
            }
        }
    }

    /// Exact formal derivative.
    pub fn deriv(&self) -> AnalyticFn {
        match self {
            Self::PowerSeries(c) => {
                let d: Vec<Complex64> = c
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(n, &c)| c * (n as f64))
                    .collect();
                Self::PowerSeries(if d.is_empty() { vec![ZERO] } else { d })
            }
            Self::Linear { slope, .. } => Self::Linear {
                slope: ZERO,
                intercept: *slope,
            },
            Self::HalfPlaneMap => Self::Rational {
                poly: vec![],
                scale: ONE,
                order: 2,
            },
            Self::HalfPlaneMapSq => Self::Rational {
                poly: vec![-ONE],
                scale: ONE,
                order: 2,
            },
            Self::Rational { poly, scale, order } => Self::Rational {
                poly: poly
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(n, &c)| c * (n as f64))
                    .collect(),
                scale: scale * (*order as f64),
                order: order + 1,
            },
        }
    }

    /// Normal form for coefficient-level arithmetic: polynomial part plus
    /// scale / (1-z)^order.
    fn as_rational(&self) -> Option<(Vec<Complex64>, Complex64, u32)> {
        match self {
            Self::PowerSeries(c) => Some((c.clone(), ZERO, 0)),
            Self::Linear { slope, intercept } => Some((vec![*intercept, *slope], ZERO, 0)),
            // z/(1-z) = 1/(1-z) - 1 and z^2/(1-z) = 1/(1-z) - 1 - z.
            Self::HalfPlaneMap => Some((vec![-ONE], ONE, 1)),
            Self::HalfPlaneMapSq => Some((vec![-ONE, -ONE], ONE, 1)),
            Self::Rational { poly, scale, order } => Some((poly.clone(), *scale, *order)),
        }
    }

    /// Coefficient-level subtraction, when the difference stays inside the
    /// representable family. Exact where it applies: matching pole terms
    /// cancel to a literal zero rather than to rounding noise.
    pub fn formal_sub(&self, other: &AnalyticFn) -> Option<AnalyticFn> {
        let (pa, sa, oa) = self.as_rational()?;
        let (pb, sb, ob) = other.as_rational()?;
        let (scale, order) = if sa == ZERO && sb == ZERO {
            (ZERO, 0)
        } else if sb == ZERO {
            (sa, oa)
        } else if sa == ZERO {
            (-sb, ob)
        } else if oa == ob {
            (sa - sb, oa)
        } else {
            return None;
        };
        let len = pa.len().max(pb.len()).max(1);
        let poly: Vec<Complex64> = (0..len)
            .map(|n| {
                pa.get(n).copied().unwrap_or(ZERO) - pb.get(n).copied().unwrap_or(ZERO)
            })
            .collect();
        Some(AnalyticFn::Rational { poly, scale, order })
    }
}

/// f'(z) - g'(z), exact when the coefficient-level difference is
/// representable, otherwise evaluated and subtracted.
pub fn sub_deriv(f: &AnalyticFn, g: &AnalyticFn, z: Complex64) -> Result<Complex64> {
    let df = f.deriv();
    let dg = g.deriv();
    match df.formal_sub(&dg) {
        Some(gap) => gap.eval(z),
        None => Ok(df.eval(z)? - dg.eval(z)?),
    }
}

/// The stabilized difference quotient (f(a) - f(b)) / (a - b), continued
/// across the diagonal by f' at the midpoint once |a - b| < switch_eps.
pub fn difference_quotient(
    f: &AnalyticFn,
    a: Complex64,
    b: Complex64,
    switch_eps: f64,
) -> Result<Complex64> {
    debug_assert!(switch_eps > 0.0);
    let sep = (a - b).norm();
    if sep >= switch_eps {
        Ok((f.eval_centered(a)? - f.eval_centered(b)?) / (a - b))
    } else {
        f.eval_deriv((a + b) * 0.5)
    }
}

/// Sampling scheme for a grid on a disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    Polar { rings: usize, spokes: usize },
    BoundaryCircle { samples: usize },
    Explicit,
}

/// A finite list of sample points inside a closed disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    points: Vec<Complex64>,
    scheme: GridScheme,
    disk: Disk,
}

impl SampleGrid {
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn disk(&self) -> Disk {
        self.disk
    }

    /// Build a grid from explicit points; every point must lie in the disk.
    pub fn from_points(disk: Disk, points: Vec<Complex64>) -> Result<Self> {
        for &z in &points {
            if !disk.contains(z) {
                return Err(Error::DomainExceeded(z, disk.radius()));
            }
        }
        Ok(Self {
            points,
            scheme: GridScheme::Explicit,
            disk,
        })
    }

    /// Append one extra sample, keeping the containment invariant.
    pub fn with_point(mut self, z: Complex64) -> Result<Self> {
        if !self.disk.contains(z) {
            return Err(Error::DomainExceeded(z, self.disk.radius()));
        }
        self.points.push(z);
        self.scheme = GridScheme::Explicit;
        Ok(self)
    }
}

/// Sample the disk according to the scheme. Polar grids contain the origin
/// plus rings x spokes interior points at radii radius*i/rings; boundary
/// grids sit on |z| = radius up to unit roundoff.
pub fn make_grid(disk: Disk, scheme: GridScheme) -> SampleGrid {
    let points = match scheme {
        GridScheme::Polar { rings, spokes } => {
            assert!(rings >= 1 && spokes >= 1, "ring/spoke counts must be >= 1");
            let mut pts = Vec::with_capacity(rings * spokes + 1);
            pts.push(ZERO);
            for i in 1..=rings {
                let r = disk.radius() * (i as f64) / (rings as f64);
                for j in 0..spokes {
                    let theta = std::f64::consts::TAU * (j as f64) / (spokes as f64);
                    pts.push(Complex64::from_polar(r, theta));
                }
            }
            pts
        }
        GridScheme::BoundaryCircle { samples } => {
            assert!(samples >= 1, "sample count must be >= 1");
            (0..samples)
                .map(|j| {
                    let theta = std::f64::consts::TAU * (j as f64) / (samples as f64);
                    Complex64::from_polar(disk.radius(), theta)
                })
                .collect()
        }
        GridScheme::Explicit => panic!("make_grid needs a sampling scheme"),
    };
    SampleGrid {
        points,
        scheme,
        disk,
    }
}

// ---------------------------------------------------------------------------
// Function-spec mini-language.
//
//   poly:<c0>,<c1>,...      complex literals a, a+bi, a-bi
//   linear:<c>[,<d>]
//   builtin:halfplane       z/(1-z)
//   builtin:halfplane2      z^2/(1-z)
// ---------------------------------------------------------------------------

/// Parse one complex literal; `offset` is its base position in the original
/// input, used for error reporting.
fn parse_complex(token: &str, offset: usize) -> std::result::Result<Complex64, ParseError> {
    // Whitespace around a literal is insignificant.
    let trimmed = token.trim_start();
    let offset = offset + (token.len() - trimmed.len());
    let token = trimmed.trim_end();
    if token.is_empty() {
        return Err(ParseError::new(offset, "empty complex literal"));
    }
    // Split at the sign that separates real and imaginary parts. Signs at
    // position 0 or directly after an exponent marker belong to a number.
    let bytes = token.as_bytes();
    let mut split = None;
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && i > 0 {
            let prev = bytes[i - 1];
            if prev != b'e' && prev != b'E' {
                split = Some(i);
            }
        }
    }
    let parse_real = |s: &str, at: usize| -> std::result::Result<f64, ParseError> {
        s.parse::<f64>()
            .map_err(|_| ParseError::new(at, format!("invalid real literal `{s}`")))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(ParseError::new(at, "non-finite literal"))
                }
            })
    };
    match split {
        Some(i) => {
            let (re_part, rest) = token.split_at(i);
            let im_part = rest
                .strip_suffix('i')
                .ok_or_else(|| ParseError::new(offset + token.len(), "expected trailing `i`"))?;
            // Keep the sign with the imaginary magnitude.
            let re = parse_real(re_part, offset)?;
            let im = parse_real(im_part, offset + i)?;
            Ok(Complex64::new(re, im))
        }
        None => {
            if token.ends_with('i') {
                return Err(ParseError::new(
                    offset,
                    "imaginary literal must be written a+bi",
                ));
            }
            Ok(Complex64::new(parse_real(token, offset)?, 0.0))
        }
    }
}

/// Parse a comma-separated list of complex literals. `base` is the byte
/// offset of the list inside the surrounding input.
pub fn parse_complex_list(
    input: &str,
    base: usize,
) -> std::result::Result<Vec<Complex64>, ParseError> {
    if input.is_empty() {
        return Err(ParseError::new(base, "empty coefficient list"));
    }
    let mut out = Vec::new();
    let mut offset = base;
    for token in input.split(',') {
        out.push(parse_complex(token, offset)?);
        offset += token.len() + 1;
    }
    Ok(out)
}

/// Parse a function spec in the mini-language.
pub fn parse_fn_spec(input: &str) -> std::result::Result<AnalyticFn, ParseError> {
    let colon = input
        .find(':')
        .ok_or_else(|| ParseError::new(0, "expected `kind:...`"))?;
    let (kind, rest) = input.split_at(colon);
    let body = &rest[1..];
    let body_at = colon + 1;
    match kind {
        "poly" => {
            let coeffs = parse_complex_list(body, body_at)?;
            AnalyticFn::power_series(coeffs)
                .map_err(|e| ParseError::new(body_at, e.to_string()))
        }
        "linear" => {
            let parts = parse_complex_list(body, body_at)?;
            match parts.len() {
                1 => Ok(AnalyticFn::linear(parts[0], ZERO)),
                2 => Ok(AnalyticFn::linear(parts[0], parts[1])),
                n => Err(ParseError::new(
                    body_at,
                    format!("linear takes 1 or 2 coefficients, got {n}"),
                )),
            }
        }
        "builtin" => match body {
            "halfplane" => Ok(AnalyticFn::HalfPlaneMap),
            "halfplane2" => Ok(AnalyticFn::HalfPlaneMapSq),
            other => Err(ParseError::new(
                body_at,
                format!("unknown builtin `{other}`"),
            )),
        },
        other => Err(ParseError::new(0, format!("unknown function kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn eval_halfplane_at_half() {
        let f = AnalyticFn::HalfPlaneMap;
        assert_eq!(f.eval(c(0.5, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn eval_series_at_i() {
        let f = AnalyticFn::PowerSeries(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(f.eval(c(0.0, 1.0)).unwrap(), c(-0.5, 1.0));
    }

    #[test]
    fn eval_linear() {
        let f = AnalyticFn::linear(c(2.0, 0.0), ZERO);
        assert_eq!(f.eval(c(0.3, 0.4)).unwrap(), c(0.6, 0.8));
    }

    #[test]
    fn eval_rejects_pole_neighborhood() {
        let f = AnalyticFn::HalfPlaneMap;
        assert!(matches!(
            f.eval(c(1.0 - 1e-13, 0.0)),
            Err(Error::PoleProximity(_))
        ));
    }

    #[test]
    fn eval_rejects_outside_radius() {
        let f = AnalyticFn::HalfPlaneMap;
        assert!(matches!(
            f.eval(c(1.5, 0.0)),
            Err(Error::DomainExceeded(_, _))
        ));
        assert!(f.eval(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn deriv_series_term_shift() {
        let a = c(0.3, 0.1);
        let f = AnalyticFn::PowerSeries(vec![ZERO, ONE, a]);
        let df = f.deriv();
        assert_eq!(
            df,
            AnalyticFn::PowerSeries(vec![ONE, a * 2.0])
        );
        let z = c(0.2, -0.4);
        assert!(close(df.eval(z).unwrap(), ONE + a * 2.0 * z, 1e-15));
    }

    #[test]
    fn deriv_linear_is_constant() {
        let f = AnalyticFn::linear(c(3.0, -1.0), c(5.0, 5.0));
        let df = f.deriv();
        for &z in &[ZERO, c(0.5, 0.25), c(-0.9, 0.0)] {
            assert_eq!(df.eval(z).unwrap(), c(3.0, -1.0));
        }
        assert!(df.is_constant());
    }

    #[test]
    fn deriv_halfplane_sq_vanishes_at_origin() {
        // Oracle: central finite difference of eval at h = 1e-6.
        let f = AnalyticFn::HalfPlaneMapSq;
        let exact = f.eval_deriv(ZERO).unwrap();
        assert_eq!(exact, ZERO);
        let h = 1e-6;
        let fd = (f.eval(c(h, 0.0)).unwrap() - f.eval(c(-h, 0.0)).unwrap()) / (2.0 * h);
        assert!(close(exact, fd, 1e-8));
    }

    #[test]
    fn eval_deriv_matches_deriv_eval_bitwise() {
        let fns = [
            AnalyticFn::PowerSeries(vec![c(0.1, 0.2), c(1.0, 0.0), c(0.3, -0.4), c(0.0, 0.25)]),
            AnalyticFn::HalfPlaneMap,
            AnalyticFn::HalfPlaneMapSq,
            AnalyticFn::linear(c(2.0, 1.0), c(-0.5, 0.0)),
        ];
        let mut rng = crate::util::SplitMix64::new(11);
        for f in &fns {
            let df = f.deriv();
            for _ in 0..50 {
                let z = rng.in_disk(0.9);
                assert_eq!(f.eval_deriv(z).unwrap(), df.eval(z).unwrap());
            }
        }
    }

    #[test]
    fn sub_deriv_builtin_pair_is_exactly_minus_one() {
        let f = AnalyticFn::HalfPlaneMapSq;
        let g = AnalyticFn::HalfPlaneMap;
        let mut rng = crate::util::SplitMix64::new(3);
        for _ in 0..200 {
            let z = rng.in_disk(0.99);
            assert_eq!(sub_deriv(&f, &g, z).unwrap(), c(-1.0, 0.0));
        }
    }

    #[test]
    fn sub_deriv_same_function_is_zero() {
        let f = AnalyticFn::PowerSeries(vec![ZERO, ONE, c(0.5, 0.5)]);
        assert_eq!(sub_deriv(&f, &f, c(0.3, 0.3)).unwrap(), ZERO);
    }

    #[test]
    fn sub_deriv_series_vs_linear() {
        let f = AnalyticFn::PowerSeries(vec![ZERO, ONE, c(0.5, 0.0)]);
        let g = AnalyticFn::linear(ONE, ZERO);
        let got = sub_deriv(&f, &g, c(0.8, 0.0)).unwrap();
        assert!(close(got, c(0.8, 0.0), 1e-15));
    }

    #[test]
    fn quotient_of_square_cancels_at_opposite_points() {
        let f = AnalyticFn::PowerSeries(vec![ZERO, ZERO, ONE]);
        let q = difference_quotient(&f, c(0.3, 0.0), c(-0.3, 0.0), DEFAULT_SWITCH_EPS).unwrap();
        assert_eq!(q, ZERO);
    }

    #[test]
    fn quotient_of_linear_is_slope() {
        let slope = c(0.7, -0.2);
        let f = AnalyticFn::linear(slope, c(4.0, 4.0));
        let q = difference_quotient(&f, c(0.4, 0.1), c(-0.2, 0.6), DEFAULT_SWITCH_EPS).unwrap();
        assert!(close(q, slope, 1e-14));
    }

    #[test]
    fn quotient_on_diagonal_is_derivative() {
        let f = AnalyticFn::PowerSeries(vec![ZERO, ONE, c(0.25, 0.0)]);
        let w = c(0.3, -0.2);
        assert_eq!(
            difference_quotient(&f, w, w, DEFAULT_SWITCH_EPS).unwrap(),
            f.eval_deriv(w).unwrap()
        );
    }

    #[test]
    fn polar_grid_small_case() {
        let g = make_grid(Disk::new(1.0), GridScheme::Polar { rings: 1, spokes: 4 });
        let expect = [ZERO, ONE, c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        assert_eq!(g.points().len(), 5);
        for (p, e) in g.points().iter().zip(expect) {
            assert!(close(*p, e, 1e-15));
        }
    }

    #[test]
    fn boundary_grid_small_case() {
        let g = make_grid(
            Disk::new(0.5),
            GridScheme::BoundaryCircle { samples: 4 },
        );
        let expect = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        for (p, e) in g.points().iter().zip(expect) {
            assert!(close(*p, e, 1e-15));
            assert!((p.norm() - 0.5).abs() <= 1e-15);
        }
    }

    #[test]
    fn polar_grid_count() {
        for (rings, spokes) in [(3, 5), (7, 2), (10, 10)] {
            let g = make_grid(Disk::new(0.9), GridScheme::Polar { rings, spokes });
            assert_eq!(g.points().len(), rings * spokes + 1);
            assert!(g.points().iter().all(|&z| g.disk().contains(z)));
        }
    }

    #[test]
    fn parse_poly_and_literals() {
        let f = parse_fn_spec("poly:0,1,0.5").unwrap();
        assert_eq!(
            f,
            AnalyticFn::PowerSeries(vec![ZERO, ONE, c(0.5, 0.0)])
        );
        let f = parse_fn_spec("poly:1+2i,-0.5-0.25i,3").unwrap();
        assert_eq!(
            f,
            AnalyticFn::PowerSeries(vec![c(1.0, 2.0), c(-0.5, -0.25), c(3.0, 0.0)])
        );
    }

    #[test]
    fn parse_linear_and_builtins() {
        assert_eq!(
            parse_fn_spec("linear:2").unwrap(),
            AnalyticFn::linear(c(2.0, 0.0), ZERO)
        );
        assert_eq!(
            parse_fn_spec("linear:2,1i").unwrap_err().offset,
            9 // bare `1i` is not in the literal grammar
        );
        assert_eq!(
            parse_fn_spec("linear:0.5+0.5i,1").unwrap(),
            AnalyticFn::linear(c(0.5, 0.5), ONE)
        );
        assert_eq!(parse_fn_spec("builtin:halfplane").unwrap(), AnalyticFn::HalfPlaneMap);
        assert_eq!(
            parse_fn_spec("builtin:halfplane2").unwrap(),
            AnalyticFn::HalfPlaneMapSq
        );
    }

    #[test]
    fn parse_errors_carry_byte_offsets() {
        let e = parse_fn_spec("poly:0,1,x").unwrap_err();
        assert_eq!(e.offset, 9);
        let e = parse_fn_spec("builtin:nope").unwrap_err();
        assert_eq!(e.offset, 8);
        let e = parse_fn_spec("poly:").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_fn_spec("nope:1").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_fn_spec("poly:1e-3,2e+4").unwrap();
        assert_eq!(
            e,
            AnalyticFn::PowerSeries(vec![c(1e-3, 0.0), c(2e4, 0.0)])
        );
    }
}
