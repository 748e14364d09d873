//! Panel-based Gauss–Legendre quadrature on vertical lines and rectangles.
//!
//! Integrands here are analytic and exponentially flat per panel, so fixed
//! 16-point panels of unit height converge spectrally; node density is a
//! config knob for the oscillatory cases. Reductions are chunk-deterministic.

use crate::sum::{sum_c64, CompensatedC64};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Gauss–Legendre nodes/weights on [-1, 1], computed by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| gauss_legendre(16))
}

/// ∫ f(z) dz along the segment from `a` to `b` (straight line), composite
/// Gauss–Legendre with `panels` equal panels of 16 nodes.
pub fn segment_integral<F>(f: &F, a: Complex64, b: Complex64, panels: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let (nodes, weights) = gl16();
    let dir = (b - a) / panels as f64;
    use rayon::prelude::*;
    let partials: Vec<Complex64> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let lo = a + dir * p as f64;
            let mid = lo + dir * 0.5;
            let half = dir * 0.5;
            let mut acc = CompensatedC64::new();
            for (x, w) in nodes.iter().zip(weights.iter()) {
                acc.add(f(mid + half * *x) * *w);
            }
            acc.value() * half
        })
        .collect();
    sum_c64(partials)
}

/// ∫_{x0-iT}^{x0+iT} f(z) dz up a vertical line, `nodes_per_unit` sets the
/// panel density (panel height = 16/nodes_per_unit).
pub fn vertical_line_integral<F>(f: &F, x0: f64, t: f64, nodes_per_unit: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let panels = ((2.0 * t * nodes_per_unit as f64 / 16.0).ceil() as usize).max(1);
    segment_integral(f, Complex64::new(x0, -t), Complex64::new(x0, t), panels)
}

/// Counterclockwise ∮ f(z) dz over the rectangle [left, right] × [-t, t],
/// returned per side: (right-up, top-leftward, left-down, bottom-rightward).
pub fn rectangle_sides<F>(
    f: &F,
    left: f64,
    right: f64,
    t: f64,
    nodes_per_unit: usize,
) -> [Complex64; 4]
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let v_panels = ((2.0 * t * nodes_per_unit as f64 / 16.0).ceil() as usize).max(1);
    let h_panels = (((right - left) * nodes_per_unit as f64 / 16.0).ceil() as usize).max(1);
    let br = Complex64::new(right, -t);
    let tr = Complex64::new(right, t);
    let tl = Complex64::new(left, t);
    let bl = Complex64::new(left, -t);
    [
        segment_integral(f, br, tr, v_panels),
        segment_integral(f, tr, tl, h_panels),
        segment_integral(f, tl, bl, v_panels),
        segment_integral(f, bl, br, h_panels),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        // degree-31 exactness: ∫_{-1}^{1} t^30 dt = 2/31
        let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(30)).sum();
        assert_relative_eq!(s, 2.0 / 31.0, max_relative = 1e-13);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn cauchy_residue_on_rectangle() {
        // ∮ dz/(z - z0) = 2πi for z0 inside
        let z0 = Complex64::new(0.3, 0.2);
        let f = |z: Complex64| (z - z0).finv();
        let sides = rectangle_sides(&f, -1.0, 1.5, 2.0, 24);
        let total: Complex64 = sides.iter().sum();
        let expect = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        assert!((total - expect).norm() < 1e-12);
    }

    #[test]
    fn vertical_line_gaussian() {
        // ∫ e^{-z^2} dz up the imaginary axis segment: exact via error function series
        let f = |z: Complex64| (-z * z).exp();
        let v = vertical_line_integral(&f, 0.0, 3.0, 16);
        // on the imaginary axis z = it: ∫_{-3}^{3} e^{t^2} i dt
        let mut acc = 0.0;
        let h = 1e-5;
        let mut t = -3.0;
        while t < 3.0 {
            acc += ((t * t) as f64).exp() * h;
            t += h;
        }
        assert!((v - Complex64::new(0.0, acc)).norm() < 1e-4 * acc);
    }
}
