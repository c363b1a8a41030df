//! Two-panel SVG plots: the polar grid in the domain disk on the left and
//! its image under the function on the right. Output is deterministic for
//! fixed inputs.

use num_complex::Complex64;
use univalence::{AnalyticFn, Disk};

#[derive(Debug, Clone, Copy)]
pub struct PlotSpec {
    pub rings: usize,
    pub spokes: usize,
    /// Sample count per curve.
    pub samples: usize,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self {
            rings: 8,
            spokes: 16,
            samples: 160,
            width: 960,
            height: 480,
        }
    }
}

impl PlotSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.rings < 1 || self.spokes < 1 || self.samples < 2 {
            return Err("plot needs rings >= 1, spokes >= 1, samples >= 2".into());
        }
        if self.width < 64 || self.height < 64 {
            return Err("canvas must be at least 64x64".into());
        }
        Ok(())
    }
}

/// The grid curves: ring circles (closed) and radial spokes.
fn grid_curves(disk: Disk, spec: &PlotSpec) -> Vec<Vec<Complex64>> {
    let r = disk.radius();
    let mut curves = Vec::with_capacity(spec.rings + spec.spokes);
    for i in 1..=spec.rings {
        let rho = r * i as f64 / spec.rings as f64;
        let mut ring: Vec<Complex64> = (0..=spec.samples)
            .map(|k| {
                Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / spec.samples as f64)
            })
            .collect();
        // Close the loop exactly.
        let first = ring[0];
        *ring.last_mut().unwrap() = first;
        curves.push(ring);
    }
    for j in 0..spec.spokes {
        let theta = std::f64::consts::TAU * j as f64 / spec.spokes as f64;
        let spoke: Vec<Complex64> = (0..=spec.samples)
            .map(|k| Complex64::from_polar(r * k as f64 / spec.samples as f64, theta))
            .collect();
        curves.push(spoke);
    }
    curves
}

fn bounds(curves: &[Vec<Complex64>]) -> (f64, f64, f64, f64) {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for c in curves {
        for z in c {
            min_x = min_x.min(z.re);
            max_x = max_x.max(z.re);
            min_y = min_y.min(z.im);
            max_y = max_y.max(z.im);
        }
    }
    (min_x, max_x, min_y, max_y)
}

/// Curves rendered as polyline paths in local panel coordinates, scaled to
/// fit with the aspect ratio preserved and the imaginary axis up.
fn panel_paths(curves: &[Vec<Complex64>], panel: f64, margin: f64) -> Vec<String> {
    let (min_x, max_x, min_y, max_y) = bounds(curves);
    let span_x = (max_x - min_x).max(1e-12);
    let span_y = (max_y - min_y).max(1e-12);
    let scale = ((panel - 2.0 * margin) / span_x).min((panel - 2.0 * margin) / span_y);
    let cx = 0.5 * (min_x + max_x);
    let cy = 0.5 * (min_y + max_y);
    curves
        .iter()
        .map(|curve| {
            let mut d = String::new();
            for (k, z) in curve.iter().enumerate() {
                let x = 0.5 * panel + (z.re - cx) * scale;
                let y = 0.5 * panel - (z.im - cy) * scale;
                let op = if k == 0 { 'M' } else { 'L' };
                d.push_str(&format!("{op}{x:.4} {y:.4} "));
            }
            format!("<path d=\"{}\" fill=\"none\" stroke=\"#3465a4\" stroke-width=\"1\"/>", d.trim_end())
        })
        .collect()
}

/// Render the two-panel plot. Evaluation failures (outside the analyticity
/// radius, pole proximity) surface as errors.
pub fn render(f: &AnalyticFn, disk: Disk, spec: &PlotSpec) -> univalence::Result<String> {
    let domain = grid_curves(disk, spec);
    let mut image = Vec::with_capacity(domain.len());
    for curve in &domain {
        let mapped: univalence::Result<Vec<Complex64>> =
            curve.iter().map(|&z| f.eval(z)).collect();
        image.push(mapped?);
    }

    let panel = f64::from(spec.width) / 2.0;
    let height = f64::from(spec.height);
    let side = panel.min(height);
    let margin = 0.06 * side;
    let left = panel_paths(&domain, side, margin);
    let right = panel_paths(&image, side, margin);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        spec.width, spec.height, spec.width, spec.height
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str("<g id=\"domain\">\n");
    for p in &left {
        svg.push_str(p);
        svg.push('\n');
    }
    svg.push_str("</g>\n");
    svg.push_str(&format!("<g id=\"image\" transform=\"translate({panel} 0)\">\n"));
    for p in &right {
        svg.push_str(p);
        svg.push('\n');
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
