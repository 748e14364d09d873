//! Complex log-gamma via shifted Stirling series, plus small helpers.

use crate::error::{Error, Result};
use num_complex::Complex64;

const LN_2PI_HALF: f64 = 0.918938533204672741780329736406; // ln(2π)/2

/// B_{2k}/(2k(2k-1)) for k = 1..=12, the Stirling series coefficients.
const STIRLING: [f64; 12] = [
    8.333333333333333e-2,   // 1/12
    -2.777777777777778e-3,  // -1/360
    7.936507936507937e-4,   // 1/1260
    -5.952380952380953e-4,  // -1/1680
    8.417508417508418e-4,   // 1/1188
    -1.9175269175269175e-3, // -691/360360
    6.410256410256410e-3,   // 1/156
    -2.955065359477124e-2,  // -3617/122400
    1.7964437236883057e-1,  // 43867/244188
    -1.3924322169059011,    // -174611/125400
    1.3402864044168392e1,   // 77683/5796
    -1.5684828462600202e2,  // -236364091/1506960
];

/// Radius past which the bare Stirling series is good to ~1e-15.
const SHIFT_RADIUS: f64 = 12.0;

fn stirling_lgamma(w: Complex64) -> Complex64 {
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut wp = w;
    for c in STIRLING {
        series += c / wp;
        wp *= w2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series
}

fn near_nonpositive_integer(s: Complex64, eps: f64) -> Option<f64> {
    if s.re > 0.5 || s.im.abs() > eps {
        return None;
    }
    let n = s.re.round();
    if n <= 0.0 && (s.re - n).abs() <= eps {
        Some(n)
    } else {
        None
    }
}

/// log sin(πs), branch chosen so that reflection yields the principal
/// log-gamma (continuous off the negative real axis).
fn log_sin_pi(s: Complex64) -> Complex64 {
    use std::f64::consts::PI;
    if s.im >= 0.0 {
        // sin(πs) = (i/2) e^{-iπs} (1 - e^{2iπs})
        let e = (Complex64::i() * 2.0 * PI * s).exp();
        Complex64::new(-std::f64::consts::LN_2, PI / 2.0) - Complex64::i() * PI * s
            + (Complex64::new(1.0, 0.0) - e).ln()
    } else {
        log_sin_pi(s.conj()).conj()
    }
}

/// Principal-branch log Γ(s). No pole checking; see [`log_gamma`].
pub fn log_gamma_unchecked(s: Complex64) -> Complex64 {
    use std::f64::consts::PI;
    if s.re < 0.5 {
        // reflection: log Γ(s) = log π - log sin(πs) - log Γ(1-s)
        return PI.ln() - log_sin_pi(s) - log_gamma_unchecked(Complex64::new(1.0, 0.0) - s);
    }
    let mut w = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling_lgamma(w) - shift
}

/// Principal-branch log Γ(s); errors at the poles s = 0, -1, -2, ...
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(s, 1e-12).is_some() {
        return Err(Error::GammaPole(format!("{s}")));
    }
    Ok(log_gamma_unchecked(s))
}

/// Γ(s), errors at poles.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

/// 1/Γ(s); entire, returns exactly 0 at the poles of Γ.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if near_nonpositive_integer(s, 1e-12).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    (-log_gamma_unchecked(s)).exp()
}

/// Γ(s)/Γ(s+m) = 1/((s)(s+1)...(s+m-1)) for integer m >= 1.
///
/// This is the only form in which the Perron kernels need gamma ratios, and
/// it avoids the gammas entirely (with their overflow and pole bookkeeping).
pub fn gamma_ratio_recip(s: Complex64, m: u32) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 0..m {
        prod *= s + j as f64;
    }
    prod.finv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn integer_values() {
        // Γ(1) = 1, Γ(4) = 6
        assert!(log_gamma(Complex64::new(1.0, 0.0)).unwrap().norm() < 1e-14);
        let g4 = log_gamma(Complex64::new(4.0, 0.0)).unwrap();
        assert_relative_eq!(g4.re, 6.0_f64.ln(), max_relative = 1e-14);
        assert!(g4.im.abs() < 1e-14);
    }

    #[test]
    fn half_integer() {
        // Γ(1/2) = √π so log Γ(1/2) = ln(π)/2
        let g = log_gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(g.re, PI.ln() / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn recurrence_on_grid() {
        // log Γ(s+1) = log Γ(s) + log s, 100 pseudo-random points
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut rnd = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let s = Complex64::new(0.5 + 19.5 * rnd(), -50.0 + 100.0 * rnd());
            let lhs = log_gamma(s + 1.0).unwrap();
            let rhs = log_gamma(s).unwrap() + s.ln();
            assert!(
                (lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()),
                "recurrence failed at {s}"
            );
        }
    }

    #[test]
    fn reflection_on_grid() {
        // Γ(s)Γ(1-s) sin(πs)/π = 1 away from integers
        let pts = [
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.5, -3.0),
            Complex64::new(-2.3, 1.7),
            Complex64::new(-5.5, -0.2),
            Complex64::new(0.1, 8.0),
        ];
        for s in pts {
            let lhs = (log_gamma(s).unwrap() + log_gamma(1.0 - s).unwrap()).exp()
                * (PI * s).sin()
                / PI;
            assert!(
                (lhs - 1.0).norm() < 1e-10,
                "reflection failed at {s}: {lhs}"
            );
        }
    }

    #[test]
    fn pole_detection() {
        assert!(log_gamma(Complex64::new(0.0, 0.0)).is_err());
        assert!(log_gamma(Complex64::new(-3.0, 0.0)).is_err());
        assert_eq!(recip_gamma(Complex64::new(-7.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ratio_recip_matches_gammas() {
        let s = Complex64::new(2.3, 1.1);
        let direct = gamma_ratio_recip(s, 4);
        let via = (log_gamma(s).unwrap() - log_gamma(s + 4.0).unwrap()).exp();
        assert!((direct - via).norm() < 1e-13 * via.norm());
    }

    #[test]
    fn large_argument_accuracy() {
        // |s| up to 1e3: check the recurrence chain stays consistent
        let s = Complex64::new(800.0, 600.0);
        let lhs = log_gamma(s + 1.0).unwrap();
        let rhs = log_gamma(s).unwrap() + s.ln();
        assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }
}
