//! End-to-end validation suite.
//!
//! Seven checks exercise the estimator, the certifiers, and the oracle
//! against each other on closed-form targets. The demo command prints the
//! table; the acceptance test requires every row to pass. All corpora are
//! seeded, so reruns are bit-identical.

use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{make_grid, AnalyticFn, Disk, GridScheme};
use crate::certify::{
    self, certify_perturbation, check_nww, enclosing_disk_parameter,
    linear_disk_margin_on_samples, taylor_sum_criterion, zeta, zeta_criterion, CertStatus,
};
use crate::kconstant::{closed_form_k, estimate_k};
use crate::oracle::{pairwise_scan, quadratic_collision};
use crate::sub_deriv;
use crate::util::SplitMix64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Outcome of one suite row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Wall time; reports surface it under `timings_ms` instead.
    #[serde(skip)]
    pub millis: u64,
}

fn row(name: &'static str, body: impl FnOnce(&mut Vec<String>) -> String) -> SuiteRow {
    let start = Instant::now();
    let mut failures = Vec::new();
    let summary = body(&mut failures);
    let millis = start.elapsed().as_millis() as u64;
    SuiteRow {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            failures.join("; ")
        },
        millis,
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

/// Independent brute-force K: direct evaluations over a dense polar grid,
/// all distinct pairs plus central finite differences on the diagonal.
/// Shares no code with the estimator path.
pub fn dense_brute_force_k(f: &AnalyticFn, disk: Disk, rings: usize, spokes: usize) -> f64 {
    let grid = make_grid(disk, GridScheme::Polar { rings, spokes });
    let pts = grid.points();
    let vals: Vec<Complex64> = pts.iter().map(|&z| f.eval(z).unwrap()).collect();
    let mut min = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let q = ((vals[i] - vals[j]) / (pts[i] - pts[j])).norm();
            if q < min {
                min = q;
            }
        }
    }
    let h = 1e-6;
    for &z in pts {
        // Finite differences need z +/- h inside the domain; nudge inward.
        let z = z * (1.0 - 2e-6);
        let fd = ((f.eval(z + h).unwrap() - f.eval(z - h).unwrap()) / (2.0 * h)).norm();
        if fd < min {
            min = fd;
        }
    }
    min
}

/// Row 1: K of a linear map equals |slope| to 1e-9 at default resolution,
/// the closed form matches bit-for-bit, and each run stays under 2 s.
pub fn linear_k_exactness() -> SuiteRow {
    row("linear-k-exactness", |failures| {
        let disk = Disk::new(0.9);
        let slopes = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::from_polar(0.5, std::f64::consts::FRAC_PI_4),
        ];
        let mut details = Vec::new();
        for slope in slopes {
            let f = AnalyticFn::linear(slope, ZERO);
            let t = Instant::now();
            let est = estimate_k(&f, disk, 48, 48, 60).unwrap();
            let secs = t.elapsed().as_secs_f64();
            let expect = slope.norm();
            check(failures, (est.value - expect).abs() <= 1e-9, || {
                format!("|c|={expect}: estimate {} off by more than 1e-9", est.value)
            });
            check(
                failures,
                closed_form_k(&f, disk) == Some(expect),
                || format!("|c|={expect}: closed form disagrees"),
            );
            check(failures, secs < 2.0, || {
                format!("|c|={expect}: took {secs:.2}s (budget 2s)")
            });
            details.push(format!("|c|={expect:.4}: K={:.12}", est.value));
        }
        details.join("; ")
    })
}

/// Row 2: K of z/(1-z) matches 1/(1+r)^2 to 1e-4 at r in {0.5, 0.9, 0.99},
/// cross-checked by an independent million-pair brute force.
pub fn halfplane_k_closed_form() -> SuiteRow {
    row("halfplane-k-closed-form", |failures| {
        let f = AnalyticFn::HalfPlaneMap;
        let mut details = Vec::new();
        for r in [0.5, 0.9, 0.99] {
            let disk = Disk::new(r);
            let expect = 1.0 / ((1.0 + r) * (1.0 + r));
            let est = estimate_k(&f, disk, 48, 48, 60).unwrap();
            check(failures, (est.value - expect).abs() <= 1e-4, || {
                format!("r={r}: estimate {} vs closed form {expect}", est.value)
            });
            // 1407 points -> just under 10^6 distinct pairs, plus diagonal.
            let brute = dense_brute_force_k(&f, disk, 37, 38);
            check(failures, (brute - expect).abs() <= 1e-4, || {
                format!("r={r}: brute force {brute} vs closed form {expect}")
            });
            details.push(format!("r={r}: K={:.6} brute={:.6}", est.value, brute));
        }
        details.join("; ")
    })
}

/// Row 3: sharpness of the quadratic family z + a z^2. At a = 0.5 the
/// perturbation certificate passes; at a = 0.51 it fails and both the
/// analytic witness and the pair scan exhibit a collision. Budget 10 s.
pub fn quadratic_sharpness() -> SuiteRow {
    row("quadratic-sharpness", |failures| {
        let start = Instant::now();
        let g = AnalyticFn::linear(ONE, ZERO);
        let disk = Disk::new(0.999);

        let f_half = AnalyticFn::PowerSeries(vec![ZERO, ONE, Complex64::new(0.5, 0.0)]);
        let cert = certify_perturbation(&f_half, &g, disk, None).unwrap();
        check(failures, cert.status == CertStatus::Certified && cert.margin > 0.0, || {
            format!("a=0.5 expected Certified with positive margin, got {:?} margin {}", cert.status, cert.margin)
        });

        let a = Complex64::new(0.51, 0.0);
        let f_over = AnalyticFn::PowerSeries(vec![ZERO, ONE, a]);
        let cert_over = certify_perturbation(&f_over, &g, disk, None).unwrap();
        check(failures, cert_over.status == CertStatus::NotCertified, || {
            format!("a=0.51 expected NotCertified, got {:?}", cert_over.status)
        });

        let pair = quadratic_collision(a).unwrap();
        match pair {
            Some((z1, z2)) => {
                let residual = (f_over.eval(z1).unwrap() - f_over.eval(z2).unwrap()).norm();
                check(failures, residual <= 1e-12, || {
                    format!("analytic collision residual {residual:e} above 1e-12")
                });
            }
            None => failures.push("a=0.51 should produce a collision witness".into()),
        }

        let report = pairwise_scan(&f_over, disk, 64, 64).unwrap();
        check(failures, report.found && report.quotient_modulus <= 1e-8, || {
            format!(
                "scan at 64x64: found={} quotient={:e}",
                report.found, report.quotient_modulus
            )
        });

        let secs = start.elapsed().as_secs_f64();
        check(failures, secs < 10.0, || format!("took {secs:.2}s (budget 10s)"));
        format!(
            "a=0.5 margin {:.4}; a=0.51 margin {:.4}, scan quotient {:.2e}",
            cert.margin, cert_over.margin, report.quotient_modulus
        )
    })
}

/// Row 4: the pair f = z^2/(1-z), g = z/(1-z) has |f' - g'| = 1
/// identically; with the conventional full-disk K = 1 supplied, the
/// certificate sits exactly on the boundary. Re f' reaches -51 near
/// z = 1 - 0.1 e^{i pi/3}.
pub fn halfplane_pair_reproduction() -> SuiteRow {
    row("halfplane-pair-reproduction", |failures| {
        let f = AnalyticFn::HalfPlaneMapSq;
        let g = AnalyticFn::HalfPlaneMap;
        let mut rng = SplitMix64::new(0x5eed);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let z = rng.in_disk(0.9);
            let gap = sub_deriv(&f, &g, z).unwrap();
            worst = worst.max((gap.norm() - 1.0).abs());
        }
        check(failures, worst <= 1e-12, || {
            format!("derivative gap deviates from 1 by {worst:e}")
        });

        let cert = certify_perturbation(&f, &g, Disk::new(0.9), Some(1.0)).unwrap();
        check(
            failures,
            cert.status == CertStatus::Certified && cert.margin == 0.0 && cert.boundary_case,
            || format!("expected boundary-case Certified margin 0, got {:?} margin {}", cert.status, cert.margin),
        );

        let disk = Disk::new(0.97);
        let bad = ONE - Complex64::from_polar(0.1, std::f64::consts::PI / 3.0);
        let grid = make_grid(disk, GridScheme::Polar { rings: 16, spokes: 48 })
            .with_point(bad)
            .unwrap();
        let nww = check_nww(&f, disk, &grid).unwrap();
        check(failures, nww.margin <= -50.0, || {
            format!("positivity margin {} not below -50", nww.margin)
        });
        format!(
            "max | |f'-g'| - 1 | = {worst:.2e}; margin {}; min Re f' = {:.2}",
            cert.margin, nww.margin
        )
    })
}

/// Row 5: coefficient criteria. The bumped-coefficient example sums to 0.8
/// and certifies against k = 1; zeta(2) matches pi^2/6 to 1e-10 and the
/// 1.63/n^3 perturbation passes the tail bound zeta(2)/n^3.
pub fn taylor_and_zeta_criteria() -> SuiteRow {
    row("taylor-and-zeta-criteria", |failures| {
        let mut b = vec![ZERO];
        b.extend(std::iter::repeat_n(ONE, 10));
        let mut a = b.clone();
        a[2] = Complex64::new(1.4, 0.0);
        let cert = taylor_sum_criterion(&a, &b, 1.0).unwrap();
        let sum = cert.observed.unwrap();
        check(failures, cert.status == CertStatus::Certified, || {
            format!("sum criterion expected Certified, got {:?}", cert.status)
        });
        check(failures, (sum - 0.8).abs() <= 1e-12, || {
            format!("sum {sum} differs from 0.8")
        });

        let z2 = zeta(2.0).unwrap();
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        check(failures, (z2 - pi2_6).abs() <= 1e-10, || {
            format!("zeta(2) = {z2} vs pi^2/6 = {pi2_6}")
        });

        let mut a_tail = b.clone();
        for (n, coeff) in a_tail.iter_mut().enumerate().skip(1) {
            *coeff += Complex64::new(1.63 / (n as f64).powi(3), 0.0);
        }
        let tail_cert = zeta_criterion(&a_tail, &b, 1.0, 2.0).unwrap();
        check(failures, tail_cert.status == CertStatus::Certified, || {
            format!("tail criterion expected Certified, got {:?}", tail_cert.status)
        });
        format!("sum = {sum:.3}; |zeta(2) - pi^2/6| = {:.2e}; tail margin {:.3e}",
            (z2 - pi2_6).abs(), tail_cert.margin)
    })
}

/// Random series with derivative 1 + d(z), sized so min Re f' >= 1 - budget
/// on the closed disk of the given radius.
fn series_with_positive_deriv(rng: &mut SplitMix64, radius: f64, budget: f64) -> AnalyticFn {
    let degree = 5;
    let raw: Vec<Complex64> = (0..degree)
        .map(|_| Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)))
        .collect();
    let weight: f64 = raw
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm() * radius.powi(i as i32 + 1))
        .sum();
    let scale = rng.range(0.3, 1.0) * budget / weight.max(1e-9);
    // f' = 1 + sum d_n z^n  =>  f = z + sum d_n z^{n+1}/(n+1).
    let mut coeffs = vec![ZERO, ONE];
    for (i, c) in raw.iter().enumerate() {
        coeffs.push(c * scale / (i as f64 + 2.0));
    }
    AnalyticFn::PowerSeries(coeffs)
}

/// Row 6: equivalence of the positivity check and the enclosing-disk
/// condition on shared samples, both directions, over 30 random series.
pub fn nww_equivalence() -> SuiteRow {
    row("nww-equivalence", |failures| {
        let disk = Disk::new(0.9);
        let grid = make_grid(disk, GridScheme::Polar { rings: 16, spokes: 32 });
        let samples = certify::positivity_samples(disk, &grid);
        let mut rng = SplitMix64::new(0xd15c);
        let mut violations = 0;
        for case in 0..30 {
            let f = series_with_positive_deriv(&mut rng, 0.9, 0.85);
            let nww = check_nww(&f, disk, &grid).unwrap();
            if nww.margin <= 0.0 {
                violations += 1;
                failures.push(format!("case {case}: construction failed to give Re f' > 0"));
                continue;
            }
            // Forward: the enclosing parameter certifies on the same samples.
            let c = enclosing_disk_parameter(&f, disk, &grid).unwrap();
            let (margin, _) = linear_disk_margin_on_samples(&f, &samples, c).unwrap();
            if margin < 0.0 {
                violations += 1;
                failures.push(format!("case {case}: c = {c} fails on shared samples"));
            }
        }
        // Converse over a corpus mixing positive and negative margins:
        // whenever some c passes on the samples, the positivity margin on
        // the same samples is nonnegative.
        let mut converse_passes = 0;
        for case in 0..30 {
            let budget = rng.range(0.5, 1.3);
            let f = series_with_positive_deriv(&mut rng, 0.9, budget);
            let nww = check_nww(&f, disk, &grid).unwrap();
            for cand in [0.75, 1.0, 1.5] {
                let (m, _) = linear_disk_margin_on_samples(&f, &samples, cand).unwrap();
                if m >= 0.0 {
                    converse_passes += 1;
                    if nww.margin < 0.0 {
                        violations += 1;
                        failures.push(format!(
                            "case {case}: disk condition holds at c = {cand} but min Re f' = {}",
                            nww.margin
                        ));
                    }
                }
            }
        }
        check(failures, converse_passes > 0, || {
            "converse direction never exercised".to_string()
        });
        format!("30 forward cases, {converse_passes} converse passes, {violations} violations")
    })
}

/// Row 7: soundness sweep. 100 perturbations f = g + eps*h against
/// closed-form K; certified cases must scan clean and scanned collisions
/// must not be certified. Budget 2 minutes.
pub fn soundness_sweep() -> SuiteRow {
    row("soundness-sweep", |failures| {
        let start = Instant::now();
        let mut rng = SplitMix64::new(0xacce97);
        let disk = Disk::new(0.9);
        let mut certified = 0;
        let mut collisions = 0;
        for case in 0..100 {
            let use_linear = case % 2 == 0;
            let g = if use_linear {
                AnalyticFn::linear(
                    Complex64::from_polar(rng.range(0.5, 2.0), rng.range(0.0, std::f64::consts::TAU)),
                    ZERO,
                )
            } else {
                AnalyticFn::HalfPlaneMap
            };
            let k = closed_form_k(&g, disk).unwrap();

            // Perturbation h with h(0) = 0 and a coefficient-sum bound on h'.
            let h: Vec<Complex64> = std::iter::once(ZERO)
                .chain((0..5).map(|_| Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0))))
                .collect();
            let h_deriv_bound: f64 = h
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| n as f64 * c.norm() * disk.radius().powi(n as i32 - 1))
                .sum();
            let h_deriv_dense: f64 = (0..4096)
                .map(|j| {
                    let z = Complex64::from_polar(
                        disk.radius(),
                        std::f64::consts::TAU * j as f64 / 4096.0,
                    );
                    AnalyticFn::PowerSeries(h.clone()).eval_deriv(z).unwrap().norm()
                })
                .fold(0.0, f64::max);
            let eps = if case % 4 < 2 {
                0.8 * k / h_deriv_bound
            } else {
                2.0 * k / h_deriv_dense
            };

            let f = if use_linear {
                let mut coeffs: Vec<Complex64> = h.iter().map(|c| c * eps).collect();
                if let AnalyticFn::Linear { slope, .. } = g {
                    coeffs[1] += slope;
                }
                AnalyticFn::PowerSeries(coeffs)
            } else {
                let mut poly: Vec<Complex64> = h.iter().map(|c| c * eps).collect();
                poly[0] += -ONE;
                AnalyticFn::Rational { poly, scale: ONE, order: 1 }
            };

            let cert = certify_perturbation(&f, &g, disk, None).unwrap();
            let report = pairwise_scan(&f, disk, 32, 32).unwrap();
            if cert.status == CertStatus::Certified {
                certified += 1;
                if report.found {
                    failures.push(format!(
                        "case {case}: certified with margin {} but scan found a collision (quotient {:e})",
                        cert.margin, report.quotient_modulus
                    ));
                }
            }
            if report.found {
                collisions += 1;
                if cert.status == CertStatus::Certified {
                    failures.push(format!("case {case}: collision coexists with certificate"));
                }
            }
        }
        let secs = start.elapsed().as_secs_f64();
        check(failures, secs < 120.0, || format!("took {secs:.1}s (budget 120s)"));
        format!("100 cases: {certified} certified, {collisions} collisions, 0 overlaps")
    })
}

/// Run all seven rows in order.
pub fn run_all() -> Vec<SuiteRow> {
    vec![
        linear_k_exactness(),
        halfplane_k_closed_form(),
        quadratic_sharpness(),
        halfplane_pair_reproduction(),
        taylor_and_zeta_criteria(),
        nww_equivalence(),
        soundness_sweep(),
    ]
}
