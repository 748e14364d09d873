//! Arithmetic coefficients and frequency sequences for the built-in families.
//!
//! Coefficients are generated and stored exactly (checked i128) and converted
//! to floating point only at evaluation boundaries. Frequency values carry an
//! exact rational form so that cutoff ties λ_m = μ_n x can be decided without
//! roundoff.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Which coefficient family a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RamanujanTau,
    SigmaL(u32),
    UnitZeta,
}

/// Exact coefficients f(1..=N) of one family.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub family: Family,
    values: Vec<i128>,
}

fn checked_mul(a: i128, b: i128, context: &'static str) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::IntegerOverflow { context })
}

fn checked_add(a: i128, b: i128, context: &'static str) -> Result<i128> {
    a.checked_add(b).ok_or(Error::IntegerOverflow { context })
}

/// Coefficients of ∏_{k≥1}(1 - q^k) up to degree `n`, by the pentagonal
/// number theorem: only exponents j(3j±1)/2 appear, with sign (-1)^j.
fn euler_product(n: usize) -> Vec<i128> {
    let mut coeffs = vec![0i128; n + 1];
    coeffs[0] = 1;
    let mut j = 1i64;
    loop {
        let p1 = j * (3 * j - 1) / 2;
        let p2 = j * (3 * j + 1) / 2;
        if p1 as usize > n {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        coeffs[p1 as usize] += sign;
        if p2 as usize <= n {
            coeffs[p2 as usize] += sign;
        }
        j += 1;
    }
    coeffs
}

/// Truncated product of two integer polynomials, degree cap `n`.
fn poly_mul_trunc(a: &[i128], b: &[i128], n: usize) -> Result<Vec<i128>> {
    use rayon::prelude::*;
    let out: Result<Vec<i128>> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc = 0i128;
            for i in lo..=hi {
                if a[i] != 0 && b[k - i] != 0 {
                    acc = checked_add(acc, checked_mul(a[i], b[k - i], "tau q-expansion")?, "tau q-expansion")?;
                }
            }
            Ok(acc)
        })
        .collect();
    out
}

/// τ(1..=N) from q ∏(1-q^n)^24: the Euler product is raised to the 24th
/// power by three squarings and one final product (8·3 = 24).
pub fn ramanujan_tau_table(n: usize) -> Result<CoefficientTable> {
    if n == 0 {
        return Err(Error::InvalidParams("table capacity must be >= 1".into()));
    }
    let deg = n - 1; // the leading q of Δ shifts indices by one
    let e1 = euler_product(deg);
    let e2 = poly_mul_trunc(&e1, &e1, deg)?;
    let e4 = poly_mul_trunc(&e2, &e2, deg)?;
    let e8 = poly_mul_trunc(&e4, &e4, deg)?;
    let e16 = poly_mul_trunc(&e8, &e8, deg)?;
    let e24 = poly_mul_trunc(&e16, &e8, deg)?;
    let values = (0..n).map(|i| e24[i]).collect();
    Ok(CoefficientTable {
        family: Family::RamanujanTau,
        values,
    })
}

/// σ_l(n) = Σ_{d|n} d^l by divisor enumeration, exact.
pub fn sigma_l(n: u64, l: u32) -> Result<i128> {
    if n == 0 {
        return Err(Error::InvalidParams("sigma_l needs n >= 1".into()));
    }
    let mut acc = 0i128;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc = checked_add(acc, pow_i128(d as i128, l)?, "sigma_l")?;
            let e = n / d;
            if e != d {
                acc = checked_add(acc, pow_i128(e as i128, l)?, "sigma_l")?;
            }
        }
        d += 1;
    }
    Ok(acc)
}

fn pow_i128(base: i128, exp: u32) -> Result<i128> {
    let mut acc = 1i128;
    for _ in 0..exp {
        acc = checked_mul(acc, base, "integer power")?;
    }
    Ok(acc)
}

/// σ_l(1..=N) by a divisor sieve, exact.
pub fn sigma_l_table(n: usize, l: u32) -> Result<CoefficientTable> {
    if n == 0 {
        return Err(Error::InvalidParams("table capacity must be >= 1".into()));
    }
    let mut values = vec![0i128; n];
    for d in 1..=n {
        let dl = pow_i128(d as i128, l)?;
        let mut m = d;
        while m <= n {
            values[m - 1] = checked_add(values[m - 1], dl, "sigma_l sieve")?;
            m += d;
        }
    }
    Ok(CoefficientTable {
        family: Family::SigmaL(l),
        values,
    })
}

/// f(n) = 1 for all n.
pub fn unit_table(n: usize) -> CoefficientTable {
    CoefficientTable {
        family: Family::UnitZeta,
        values: vec![1i128; n],
    }
}

impl CoefficientTable {
    pub fn capacity(&self) -> usize {
        self.values.len()
    }

    /// Exact coefficient; indices past the capacity are an error, never a
    /// silent extension.
    pub fn get(&self, n: usize) -> Result<i128> {
        if n == 0 || n > self.values.len() {
            return Err(Error::Capacity {
                requested: n,
                capacity: self.values.len(),
            });
        }
        Ok(self.values[n - 1])
    }

    pub fn get_f64(&self, n: usize) -> Result<f64> {
        Ok(self.get(n)? as f64)
    }
}

/// Frequency sequences λ_n: either n or n²/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyKind {
    Integers,
    HalfSquares,
}

impl FrequencyKind {
    pub fn value(self, n: u64) -> f64 {
        match self {
            FrequencyKind::Integers => n as f64,
            FrequencyKind::HalfSquares => (n as f64) * (n as f64) / 2.0,
        }
    }

    /// Exact rational λ_n = num/den.
    pub fn rational(self, n: u64) -> (i128, i128) {
        match self {
            FrequencyKind::Integers => (n as i128, 1),
            FrequencyKind::HalfSquares => ((n as i128) * (n as i128), 2),
        }
    }

    /// The factor κ with λ_d λ_e = κ λ_{de}; 1 for a completely
    /// multiplicative sequence, 1/2 for n²/2.
    pub fn pair_product_factor(self) -> f64 {
        match self {
            FrequencyKind::Integers => 1.0,
            FrequencyKind::HalfSquares => 0.5,
        }
    }

    /// Exact test λ_m = μ_n · x where x is an f64 (hence rational). Cross
    /// multiplication in i128; `self` is λ, `other` is μ.
    pub fn tie_equals(self, m: u64, other: FrequencyKind, n: u64, x: f64) -> bool {
        if !(x.is_finite() && x > 0.0) {
            return false;
        }
        let (lm_num, lm_den) = self.rational(m);
        let (mn_num, mn_den) = other.rational(n);
        // x = fx · 2^e with integer fx
        let bits = x.to_bits();
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i128;
        let (fx, e) = if exp_bits == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1i128 << 52), exp_bits - 1075)
        };
        // λ_m = μ_n x  <=>  lm_num · mn_den = mn_num · lm_den · fx · 2^e
        let lhs = match lm_num.checked_mul(mn_den) {
            Some(v) => v,
            None => return false,
        };
        let rhs0 = match mn_num.checked_mul(lm_den).and_then(|v| v.checked_mul(fx)) {
            Some(v) => v,
            None => return false,
        };
        // strip powers of two and compare
        let (mut a, mut b, mut shift) = (lhs, rhs0, e);
        while shift > 0 {
            match b.checked_mul(2) {
                Some(v) => b = v,
                None => return false,
            }
            shift -= 1;
        }
        while shift < 0 {
            if a % 2 == 0 {
                a /= 2;
                shift += 1;
            } else if b % 2 == 0 {
                b /= 2;
                shift += 1;
            } else {
                return false;
            }
        }
        a == b
    }
}

/// Weighted self-convolution f_a(n) = Σ_{d|n} λ_d^a f(d) f(n/d).
pub fn weighted_self_convolution(
    table: &CoefficientTable,
    freq: FrequencyKind,
    a: Complex64,
    n: u64,
) -> Result<Complex64> {
    if n as usize > table.capacity() {
        return Err(Error::Capacity {
            requested: n as usize,
            capacity: table.capacity(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            let e = n / d;
            let fd = table.get_f64(d as usize)?;
            let fe = table.get_f64(e as usize)?;
            acc += (a * freq.value(d).ln()).exp() * fd * fe;
            if e != d {
                acc += (a * freq.value(e).ln()).exp() * fd * fe;
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// Sieve of f_a(n) for n = 1..=N in floating point, for the series engines.
/// O(N log N) over divisor pairs.
pub fn weighted_convolution_sieve(
    coef: &dyn Fn(u64) -> f64,
    freq: FrequencyKind,
    a: Complex64,
    n: usize,
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for d in 1..=n as u64 {
        let la = (a * freq.value(d).ln()).exp() * coef(d);
        let mut m = d;
        while m <= n as u64 {
            let e = m / d;
            out[m as usize] += la * coef(e);
            m += d;
        }
    }
    out
}

/// Shared handle used by the series evaluators: exact table where available,
/// falling back to a sieve of f64 coefficients for the unbounded families.
#[derive(Clone)]
pub struct CoefficientSource {
    pub family: Family,
    table: Arc<CoefficientTable>,
}

impl CoefficientSource {
    pub fn new(table: CoefficientTable) -> Self {
        Self {
            family: table.family,
            table: Arc::new(table),
        }
    }

    pub fn capacity(&self) -> usize {
        self.table.capacity()
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    pub fn coef_f64(&self, n: u64) -> Result<f64> {
        self.table.get_f64(n as usize)
    }

    /// Crude growth bound |f(n)| <= C n^p used only for truncation control.
    /// τ: n^6 (Deligne-style bound rounded up), σ_l: n^{l+1}, unit: 1.
    pub fn growth_bound(&self) -> (f64, f64) {
        match self.family {
            Family::RamanujanTau => (1.0, 6.0),
            Family::SigmaL(l) => (1.0, (l + 1) as f64),
            Family::UnitZeta => (1.0, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Independent oracle: brutally expand q ∏_{n≤N}(1-q^n)^{24} by repeated
    /// naive polynomial multiplication.
    fn tau_brute(n: usize) -> Vec<i128> {
        let deg = n - 1;
        let mut poly = vec![0i128; deg + 1];
        poly[0] = 1;
        for k in 1..=deg.max(1) {
            for _ in 0..24 {
                // multiply by (1 - q^k), truncated
                let mut next = poly.clone();
                for i in 0..=deg {
                    if i >= k {
                        next[i] -= poly[i - k];
                    }
                }
                poly = next;
            }
        }
        (0..n).map(|i| poly[i]).collect()
    }

    #[test]
    fn tau_small_values() {
        let t = ramanujan_tau_table(12).unwrap();
        assert_eq!(t.get(1).unwrap(), 1);
        assert_eq!(t.get(2).unwrap(), -24);
        assert_eq!(t.get(3).unwrap(), 252);
        assert_eq!(t.get(4).unwrap(), -1472);
        assert_eq!(t.get(5).unwrap(), 4830);
        assert_eq!(t.get(6).unwrap(), -6048);
        // multiplicativity: τ(6) = τ(2)τ(3)
        assert_eq!(t.get(6).unwrap(), t.get(2).unwrap() * t.get(3).unwrap());
    }

    #[test]
    fn tau_matches_brute_force_oracle() {
        let n = 24;
        let t = ramanujan_tau_table(n).unwrap();
        let oracle = tau_brute(n);
        for i in 1..=n {
            assert_eq!(t.get(i).unwrap(), oracle[i - 1], "τ({i})");
        }
    }

    #[test]
    fn tau_multiplicative_over_table() {
        let n = 600;
        let t = ramanujan_tau_table(n).unwrap();
        for a in 2..=n {
            for b in 2..=n / a {
                if gcd(a as u64, b as u64) == 1 {
                    assert_eq!(
                        t.get(a * b).unwrap(),
                        t.get(a).unwrap() * t.get(b).unwrap(),
                        "τ({a}·{b})"
                    );
                }
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_l(1, 3).unwrap(), 1);
        assert_eq!(sigma_l(6, 1).unwrap(), 12);
        assert_eq!(sigma_l(4, 3).unwrap(), 73);
        // sieve agrees with divisor enumeration
        let t = sigma_l_table(200, 3).unwrap();
        for n in 1..=200u64 {
            assert_eq!(t.get(n as usize).unwrap(), sigma_l(n, 3).unwrap());
        }
    }

    #[test]
    fn sigma_overflow_detected() {
        assert!(matches!(
            sigma_l(2, 200),
            Err(Error::IntegerOverflow { .. })
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        let t = unit_table(10);
        assert!(t.get(10).is_ok());
        assert!(matches!(t.get(11), Err(Error::Capacity { .. })));
        assert!(matches!(t.get(0), Err(Error::Capacity { .. })));
    }

    #[test]
    fn convolution_examples() {
        // unit coefficients, a=0: divisor count
        let unit = unit_table(300);
        let v = weighted_self_convolution(&unit, FrequencyKind::HalfSquares, Complex64::new(0.0, 0.0), 6)
            .unwrap();
        assert_relative_eq!(v.re, 4.0, max_relative = 1e-14);

        let tau = ramanujan_tau_table(4).unwrap();
        let v = weighted_self_convolution(&tau, FrequencyKind::Integers, Complex64::new(0.0, 0.0), 1)
            .unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-14);

        // Σ_{d|4} d^{-2} σ3(d) σ3(4/d) = 73 + 81/4 + 73/16
        let s3 = sigma_l_table(8, 3).unwrap();
        let v = weighted_self_convolution(&s3, FrequencyKind::Integers, Complex64::new(-2.0, 0.0), 4)
            .unwrap();
        assert_relative_eq!(v.re, 73.0 + 81.0 / 4.0 + 73.0 / 16.0, max_relative = 1e-13);
    }

    #[test]
    fn convolution_divisor_count_brute_force() {
        let unit = unit_table(200);
        for n in 1..=200u64 {
            let v = weighted_self_convolution(
                &unit,
                FrequencyKind::HalfSquares,
                Complex64::new(0.0, 0.0),
                n,
            )
            .unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count() as f64;
            assert_relative_eq!(v.re, divisors, max_relative = 1e-13);
        }
    }

    #[test]
    fn convolution_rescaling_symmetry() {
        // f_a(n) = λ_n^a f_{-a}(n) for a completely multiplicative λ
        let s3 = sigma_l_table(200, 3).unwrap();
        let a = Complex64::new(1.3, 0.4);
        for n in 1..=200u64 {
            let fa = weighted_self_convolution(&s3, FrequencyKind::Integers, a, n).unwrap();
            let fma = weighted_self_convolution(&s3, FrequencyKind::Integers, -a, n).unwrap();
            let scale = (a * (n as f64).ln()).exp();
            assert!(
                (fa - scale * fma).norm() <= 1e-10 * (1.0 + fa.norm()),
                "n={n}"
            );
        }
    }

    #[test]
    fn sieve_matches_direct() {
        let s3 = sigma_l_table(150, 3).unwrap();
        let a = Complex64::new(-2.6, 0.0);
        let sieve = weighted_convolution_sieve(
            &|n| s3.get_f64(n as usize).unwrap(),
            FrequencyKind::Integers,
            a,
            150,
        );
        for n in 1..=150u64 {
            let direct = weighted_self_convolution(&s3, FrequencyKind::Integers, a, n).unwrap();
            assert!((sieve[n as usize] - direct).norm() <= 1e-11 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn frequency_values_and_ties() {
        assert_eq!(FrequencyKind::Integers.value(7), 7.0);
        assert_eq!(FrequencyKind::HalfSquares.value(3), 4.5);
        // strict increase
        for n in 1..50 {
            assert!(FrequencyKind::HalfSquares.value(n + 1) > FrequencyKind::HalfSquares.value(n));
        }
        // exact ties: λ_m = μ_n x
        let int = FrequencyKind::Integers;
        let hs = FrequencyKind::HalfSquares;
        assert!(int.tie_equals(7, int, 10, 0.7));
        assert!(!int.tie_equals(7, int, 10, 0.7000000001));
        assert!(hs.tie_equals(3, hs, 3, 1.0));
        assert!(hs.tie_equals(6, hs, 2, 9.0)); // 18 = 2·9
        assert!(!hs.tie_equals(6, hs, 2, 9.000000001));
        // irrational-looking x that is not exactly representable: no tie
        assert!(!int.tie_equals(1, int, 3, 1.0 / 3.0));
    }

    proptest! {
        #[test]
        fn sigma_multiplicative(a in 1u64..60, b in 1u64..60) {
            prop_assume!(gcd(a, b) == 1);
            let l = 3u32;
            let lhs = sigma_l(a * b, l).unwrap();
            let rhs = sigma_l(a, l).unwrap() * sigma_l(b, l).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frequency_index_law_integers(k in 1u64..40, l in 1u64..40) {
            // λ_k λ_l = λ_{kl} for the completely multiplicative kind
            let f = FrequencyKind::Integers;
            prop_assert!((f.value(k) * f.value(l) - f.value(k * l)).abs() < 1e-12);
            // and for n²/2 the product picks up exactly the pairing factor
            let h = FrequencyKind::HalfSquares;
            let lhs = h.value(k) * h.value(l);
            let rhs = h.pair_product_factor() * h.value(k * l);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs());
        }
    }
}
