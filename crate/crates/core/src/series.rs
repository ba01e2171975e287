//! Truncated power series: one normalized function type plus the raw
//! coefficient arithmetic (multiply, divide, exp) used to build class
//! witnesses.
//!
//! Truncation error grows quickly near the unit circle; by default
//! evaluation is refused beyond `|z| = 0.95` and the magnitude of the last
//! kept coefficient is exposed as a crude tail indicator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet2;

/// Default validity radius for truncated evaluation.
pub const DEFAULT_EVAL_RADIUS: f64 = 0.95;

/// `f(z) = z + a_2 z^2 + ... + a_N z^N` with the normalization `a_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesFunction {
    /// `a_1..a_N`; `a_1 = 1`.
    coeffs: Vec<Complex64>,
    eval_radius: f64,
}

impl SeriesFunction {
    /// Builds from `a_1..a_N`. Requires `a_1 = 1`, `N >= 2` and finite
    /// coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::invalid("coefficients", "need order N >= 2"));
        }
        if coeffs[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::invalid("coefficients", "a_1 must equal 1"));
        }
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::invalid("coefficients", "non-finite coefficient"));
        }
        Ok(SeriesFunction {
            coeffs,
            eval_radius: DEFAULT_EVAL_RADIUS,
        })
    }

    /// `f(z) = z`, padded to the minimum order.
    pub fn identity() -> Self {
        SeriesFunction::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap()
    }

    /// `f(z) = z h(z)` from a unit series `h = 1 + h_1 z + ...`.
    pub fn z_times(unit_series: &[Complex64]) -> Result<Self> {
        SeriesFunction::new(unit_series.to_vec())
    }

    pub fn with_eval_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::invalid("eval_radius", "must lie in (0, 1)"));
        }
        self.eval_radius = radius;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval_radius(&self) -> f64 {
        self.eval_radius
    }

    /// `|a_N|`: a crude indicator of how much tail the truncation dropped.
    pub fn tail_indicator(&self) -> f64 {
        self.coeffs.last().map(|a| a.norm()).unwrap_or(0.0)
    }

    /// Horner evaluation of `(f, f', f'')` in one sweep.
    pub fn eval(&self, z: Complex64) -> Result<Jet2> {
        if !z.is_finite() {
            return Err(Error::invalid("z", "non-finite point"));
        }
        let radius = z.norm();
        if radius > self.eval_radius {
            return Err(Error::OutsideValidityDisk {
                radius,
                limit: self.eval_radius,
            });
        }
        // Treat f as the degree-N polynomial with zero constant term and
        // carry P, P', P'' together: after Q = z P + c the updates are
        // Q'' = z P'' + 2 P' and Q' = z P' + P, applied high-to-low.
        let mut p = *self.coeffs.last().unwrap();
        let mut dp = Complex64::new(0.0, 0.0);
        let mut d2p = Complex64::new(0.0, 0.0);
        for k in (0..self.coeffs.len()).rev() {
            let c = if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1]
            };
            d2p = d2p * z + 2.0 * dp;
            dp = dp * z + p;
            p = p * z + c;
        }
        Ok(Jet2::new(p, dp, d2p))
    }
}

/// Truncated product of two coefficient slices (degree-0 based), keeping
/// `len` coefficients.
pub(crate) fn mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Truncated quotient `num / den` with `den[0] != 0`.
pub(crate) fn div(num: &[Complex64], den: &[Complex64], len: usize) -> Vec<Complex64> {
    debug_assert!(den[0].norm() > 0.0);
    let mut q = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..len {
        let mut acc = num.get(k).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0));
        for j in 1..=k {
            if j < den.len() {
                acc -= den[j] * q[k - j];
            }
        }
        q[k] = acc / den[0];
    }
    q
}

/// Truncated `exp(s)` for a series with `s[0] = 0`, via `E' = s' E`:
/// `k e_k = sum_{j=1..k} j s_j e_{k-j}`.
pub(crate) fn exp(s: &[Complex64], len: usize) -> Vec<Complex64> {
    debug_assert!(s.is_empty() || s[0].norm() == 0.0);
    let mut e = vec![Complex64::new(0.0, 0.0); len];
    e[0] = Complex64::new(1.0, 0.0);
    for k in 1..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            if j < s.len() {
                acc += (j as f64) * s[j] * e[k - j];
            }
        }
        e[k] = acc / (k as f64);
    }
    e
}

/// Plain value of a degree-0-based coefficient slice at `z`.
pub(crate) fn value_at(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent oracle: term-by-term sums of a_k z^k and its derivatives.
    fn term_by_term(coeffs: &[Complex64], z: Complex64) -> Jet2 {
        let mut f = c(0.0, 0.0);
        let mut df = c(0.0, 0.0);
        let mut d2f = c(0.0, 0.0);
        for (i, &a) in coeffs.iter().enumerate() {
            let k = (i + 1) as f64;
            f += a * z.powu(i as u32 + 1);
            df += a * k * z.powu(i as u32);
            if i >= 1 {
                d2f += a * k * (k - 1.0) * z.powu(i as u32 - 1);
            }
        }
        Jet2::new(f, df, d2f)
    }

    fn koebe_truncation(n: usize) -> SeriesFunction {
        // z/(1-z)^2 = sum k z^k.
        let coeffs: Vec<Complex64> = (1..=n).map(|k| c(k as f64, 0.0)).collect();
        SeriesFunction::new(coeffs).unwrap()
    }

    #[test]
    fn identity_series_eval() {
        let f = SeriesFunction::identity();
        let jet = f.eval(c(0.3, 0.1)).unwrap();
        assert_eq!(jet.f, c(0.3, 0.1));
        assert_eq!(jet.df, c(1.0, 0.0));
        assert_eq!(jet.d2f, c(0.0, 0.0));
    }

    #[test]
    fn koebe_truncation_at_origin() {
        let f = koebe_truncation(64);
        let jet = f.eval(c(0.0, 0.0)).unwrap();
        assert_eq!(jet.f, c(0.0, 0.0));
        assert_eq!(jet.df, c(1.0, 0.0));
        // f''(0) = 2 a_2 = 4.
        assert_eq!(jet.d2f, c(4.0, 0.0));
    }

    #[test]
    fn koebe_truncation_at_half() {
        // 0.5/(1-0.5)^2 = 2 with truncation tail below 1e-9 at N = 64.
        let f = koebe_truncation(64);
        let jet = f.eval(c(0.5, 0.0)).unwrap();
        assert!((jet.f - c(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn horner_matches_term_by_term() {
        let coeffs: Vec<Complex64> = std::iter::once(c(1.0, 0.0))
            .chain((2..=40).map(|k| {
                let k = k as f64;
                c((0.3 * k).sin() / k, (0.7 * k).cos() / (k * k))
            }))
            .collect();
        let f = SeriesFunction::new(coeffs.clone()).unwrap();
        for &z in &[c(0.4, 0.3), c(-0.6, 0.1), c(0.0, -0.9), c(0.9, 0.0)] {
            let h = f.eval(z).unwrap();
            let t = term_by_term(&coeffs, z);
            let scale = 1.0 + t.f.norm() + t.df.norm() + t.d2f.norm();
            assert!((h.f - t.f).norm() <= 1e-13 * scale);
            assert!((h.df - t.df).norm() <= 1e-13 * scale);
            assert!((h.d2f - t.d2f).norm() <= 1e-13 * scale);
        }
    }

    #[test]
    fn eval_outside_radius_refused() {
        let f = koebe_truncation(8);
        let err = f.eval(c(0.96, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OutsideValidityDisk { .. }));
        let narrowed = koebe_truncation(8).with_eval_radius(0.5).unwrap();
        assert!(narrowed.eval(c(0.6, 0.0)).is_err());
    }

    #[test]
    fn normalization_enforced() {
        assert!(SeriesFunction::new(vec![c(2.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(SeriesFunction::new(vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn tail_indicator_is_last_coefficient() {
        let f = koebe_truncation(16);
        assert_eq!(f.tail_indicator(), 16.0);
    }

    #[test]
    fn exp_of_geometric_log_is_koebe_factor() {
        // exp(sum 2 z^k / k) = (1-z)^{-2} = sum (k+1) z^k.
        let n = 24;
        let mut s = vec![c(0.0, 0.0); n];
        for k in 1..n {
            s[k] = c(2.0 / k as f64, 0.0);
        }
        let e = exp(&s, n);
        for (k, &ek) in e.iter().enumerate() {
            assert!((ek - c(k as f64 + 1.0, 0.0)).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn div_undoes_mul() {
        let a: Vec<Complex64> = (0..12).map(|k| c(1.0 / (1 + k) as f64, 0.1 * k as f64)).collect();
        let mut b: Vec<Complex64> = (0..12).map(|k| c(0.2 * k as f64, -0.05 * k as f64)).collect();
        b[0] = c(1.5, 0.0);
        let prod = mul(&a, &b, 12);
        let back = div(&prod, &b, 12);
        for k in 0..12 {
            assert!((back[k] - a[k]).norm() < 1e-12, "k = {k}");
        }
    }
}
