//! The hypergeometric series ₁F₂(d; b, c; w).
//!
//! Terms are accumulated with compensation and the running maximum term is
//! tracked: the ratio max-term / |result| is the cancellation severity that
//! decides whether the f64 result can be trusted, whether to escalate to
//! double-double, or whether the caller must fall back to the contour route.

use crate::error::{Error, Result};
use crate::sum::{CDd, CompensatedC64};
use num_complex::Complex64;

const MAX_TERMS: usize = 4000;

/// How much cancellation the f64 path tolerates before escalating.
pub const SEVERITY_F64_LIMIT: f64 = 1e12;
/// Beyond this even double-double has lost too much.
pub const SEVERITY_DD_LIMIT: f64 = 1e26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    DoubleDouble,
    /// Try f64 first, redo in double-double if the severity is too high.
    Auto,
}

/// Series value together with its cancellation severity.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    /// running max |term| / |value|; 1.0 means no cancellation at all.
    pub severity: f64,
}

fn nonpositive_int(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-12
}

fn hyp_1f2_f64(d: Complex64, b: Complex64, c: Complex64, w: Complex64) -> Result<SeriesValue> {
    let mut acc = CompensatedC64::new();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut max_term = 1.0_f64;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        term *= (d + jf) * w / ((b + jf) * (c + jf) * (jf + 1.0));
        acc.add(term);
        let t = term.norm();
        max_term = max_term.max(t);
        if t < 1e-18 * max_term && t < 1e-18 * (1.0 + acc.value().norm()) {
            let value = acc.value();
            let severity = max_term / value.norm().max(f64::MIN_POSITIVE);
            return Ok(SeriesValue { value, severity });
        }
    }
    Err(Error::Convergence {
        what: "1F2 series",
        iterations: MAX_TERMS,
    })
}

fn hyp_1f2_dd(d: Complex64, b: Complex64, c: Complex64, w: Complex64) -> Result<SeriesValue> {
    let mut acc = CDd::ZERO;
    let mut term = CDd::ONE;
    acc = acc.add(term);
    let mut max_term = 1.0_f64;
    let wdd = CDd::from_c64(w);
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        let num = CDd::from_c64(d + jf).mul(wdd);
        term = term.mul(num);
        term = term.div_c64(b + jf);
        term = term.div_c64(c + jf);
        term = term.div_c64(Complex64::new(jf + 1.0, 0.0));
        acc = acc.add(term);
        let t = term.norm_estimate();
        max_term = max_term.max(t);
        if t < 1e-34 * max_term && t < 1e-34 * (1.0 + acc.norm_estimate()) {
            let value = acc.to_c64();
            let severity = max_term / value.norm().max(f64::MIN_POSITIVE);
            return Ok(SeriesValue { value, severity });
        }
    }
    Err(Error::Convergence {
        what: "1F2 series (double-double)",
        iterations: MAX_TERMS,
    })
}

/// ₁F₂(d; b, c; w) = Σ_{j≥0} (d)_j / (j! (b)_j (c)_j) w^j.
///
/// Errors with `PrecisionExhausted` when cancellation exceeds what the
/// requested precision supports; callers then use the contour route.
pub fn hyp_1f2(
    d: Complex64,
    b: Complex64,
    c: Complex64,
    w: Complex64,
    precision: Precision,
) -> Result<SeriesValue> {
    if nonpositive_int(b) || nonpositive_int(c) {
        return Err(Error::InvalidParams(format!(
            "1F2 lower parameters must not be nonpositive integers (b={b}, c={c})"
        )));
    }
    match precision {
        Precision::Double => {
            let r = hyp_1f2_f64(d, b, c, w)?;
            if r.severity > SEVERITY_F64_LIMIT {
                return Err(Error::PrecisionExhausted {
                    what: "1F2 (f64)",
                    severity: r.severity,
                });
            }
            Ok(r)
        }
        Precision::DoubleDouble => {
            let r = hyp_1f2_dd(d, b, c, w)?;
            if r.severity > SEVERITY_DD_LIMIT {
                return Err(Error::PrecisionExhausted {
                    what: "1F2 (double-double)",
                    severity: r.severity,
                });
            }
            Ok(r)
        }
        Precision::Auto => {
            let r = hyp_1f2_f64(d, b, c, w)?;
            if r.severity <= 1e9 {
                Ok(r)
            } else {
                let r = hyp_1f2_dd(d, b, c, w)?;
                if r.severity > SEVERITY_DD_LIMIT {
                    return Err(Error::PrecisionExhausted {
                        what: "1F2 (double-double)",
                        severity: r.severity,
                    });
                }
                Ok(r)
            }
        }
    }
}
