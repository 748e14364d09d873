//! Compensated summation and double-double scalars.
//!
//! All long reductions in this crate go through [`CompensatedC64`] (Neumaier
//! variant of Kahan summation) so that truncation control, not accumulated
//! roundoff, dominates the reported error. The [`Dd`]/[`CDd`] types provide a
//! ~31-digit working format for the hypergeometric series, whose terms cancel
//! badly for moderate arguments.

use num_complex::Complex64;

/// Neumaier compensated accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex values (independent re/im parts).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedC64 {
    re: Compensated,
    im: Compensated,
}

impl CompensatedC64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum of an iterator with compensation.
pub fn sum_c64<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    let mut acc = CompensatedC64::new();
    for v in iter {
        acc.add(v);
    }
    acc.value()
}

/// Deterministic chunked parallel sum.
///
/// The sequence is split into fixed-size chunks; each chunk is summed
/// sequentially with compensation and the chunk results are combined in index
/// order. The result is bit-identical for any thread count.
pub fn par_sum_c64<F>(n: usize, chunk: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    use rayon::prelude::*;
    let chunk = chunk.max(1);
    let n_chunks = n.div_ceil(chunk);
    let partials: Vec<Complex64> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(n);
            let mut acc = CompensatedC64::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    sum_c64(partials)
}

// ---------------------------------------------------------------------------
// double-double
// ---------------------------------------------------------------------------

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

/// Unevaluated sum of two doubles, `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p, e) = two_prod(self.hi, other);
        let e = e + self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: CDd = CDd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: CDd) -> CDd {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        CDd { re, im }
    }

    /// Divide by an ordinary complex number.
    #[inline]
    pub fn div_c64(self, other: Complex64) -> CDd {
        let den = other.norm_sqr();
        let conj = CDd::from_c64(other.conj());
        let num = self.mul(conj);
        CDd {
            re: num.re.mul_f64(1.0 / den),
            im: num.im.mul_f64(1.0 / den),
        }
    }

    #[inline]
    pub fn norm_estimate(self) -> f64 {
        self.to_c64().norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_beats_naive() {
        // 1 + 1e-16 added 10^7 times loses the small part in naive f64
        let mut acc = Compensated::new();
        acc.add(1.0);
        for _ in 0..10_000_000 {
            acc.add(1e-16);
        }
        let exact = 1.0 + 1e-9;
        assert!((acc.value() - exact).abs() < 1e-12);
    }

    #[test]
    fn par_sum_matches_serial_bitwise() {
        let f = |i: usize| Complex64::new((i as f64 + 1.0).recip(), (i as f64 + 1.0).powi(-2));
        let a = par_sum_c64(100_000, 1024, f);
        let b = par_sum_c64(100_000, 1024, f);
        assert_eq!(a, b);
    }

    #[test]
    fn dd_mul_precision() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80; f64 drops the last term
        let x = Dd::from_f64(1.0).add(Dd::from_f64((2.0_f64).powi(-40)));
        let sq = x.mul(x);
        let expect_lo = (2.0_f64).powi(-80);
        let err = (sq.sub(Dd::ONE).sub(Dd::from_f64((2.0_f64).powi(-39)))).to_f64() - expect_lo;
        assert!(err.abs() < 1e-40);
    }

    #[test]
    fn dd_div_roundtrip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(std::f64::consts::E);
        let q = a.div(b);
        let back = q.mul(b);
        assert!((back.sub(a)).abs() < 1e-30);
    }
}
