//! The five radius-defining functions and their least-root solver.
//!
//! Each family has a real function `Phi(r)` whose least positive root is the
//! family's radius of concavity. All five start positive at `r = 0` for
//! `A in (1, 2]`; the solver walks forward until the first sign change and
//! bisects.

use crate::error::{Error, Result};
use crate::functional::ConcavityParam;

/// Forward-scan step of the least-root solver.
pub const SCAN_STEP: f64 = 1e-3;

/// One of the five radius-defining functions.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum PhiSpec {
    /// `(A+1)/2 (1-r)/(1+r) - (1 + 2(n+1) r^n + r^2n)/(1 - r^2n)`.
    Phi1 { n: u32, a: ConcavityParam },
    /// `(A+3+2a-2b) r^2 - 2(A+1+a+b) r + A - 1` for `0 <= alpha <= beta`.
    Phi2 {
        alpha: f64,
        beta: f64,
        a: ConcavityParam,
    },
    /// `(A+1)(1-r)/(1+r) - 4 r beta/(1-r^2) - 2 ((1+r)/(1-r))^beta`.
    Phi3 { beta: f64, a: ConcavityParam },
    /// `(-8a^2+6a-2Aa+A-1) r^2 + (2Aa-2A-10a+6) r + A - 1`.
    Phi4 { alpha: f64, a: ConcavityParam },
    /// `A - 1 - (4A+8) r + (A+21) r^2 - 20 r^3 - (A+11) r^4` on
    /// `r < sqrt(2) - 1`.
    Phi6 { a: ConcavityParam },
}

impl PhiSpec {
    pub fn phi1(n: u32, a: ConcavityParam) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "must be a positive integer"));
        }
        Ok(PhiSpec::Phi1 { n, a })
    }

    pub fn phi2(alpha: f64, beta: f64, a: ConcavityParam) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && 0.0 <= alpha && alpha <= beta) {
            return Err(Error::invalid("alpha/beta", "need 0 <= alpha <= beta"));
        }
        Ok(PhiSpec::Phi2 { alpha, beta, a })
    }

    pub fn phi3(beta: f64, a: ConcavityParam) -> Result<Self> {
        if !(beta.is_finite() && 0.0 < beta && beta <= 1.0) {
            return Err(Error::invalid("beta", "need 0 < beta <= 1"));
        }
        Ok(PhiSpec::Phi3 { beta, a })
    }

    pub fn phi4(alpha: f64, a: ConcavityParam) -> Result<Self> {
        if !(alpha.is_finite() && (0.0..1.0).contains(&alpha)) {
            return Err(Error::invalid("alpha", "need 0 <= alpha < 1"));
        }
        Ok(PhiSpec::Phi4 { alpha, a })
    }

    pub fn phi6(a: ConcavityParam) -> Self {
        PhiSpec::Phi6 { a }
    }

    pub fn a(&self) -> ConcavityParam {
        match *self {
            PhiSpec::Phi1 { a, .. }
            | PhiSpec::Phi2 { a, .. }
            | PhiSpec::Phi3 { a, .. }
            | PhiSpec::Phi4 { a, .. }
            | PhiSpec::Phi6 { a } => a,
        }
    }

    /// Supremum of the variant's domain. The polynomial variants extend to
    /// the closed endpoint; the rational ones stop short of it.
    pub fn domain_sup(&self) -> f64 {
        match self {
            PhiSpec::Phi6 { .. } => std::f64::consts::SQRT_2 - 1.0,
            _ => 1.0,
        }
    }

    fn closed_at_sup(&self) -> bool {
        matches!(self, PhiSpec::Phi2 { .. } | PhiSpec::Phi4 { .. })
    }

    /// Evaluates the radius function at `r`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        let sup = self.domain_sup();
        let inside = if self.closed_at_sup() {
            (0.0..=sup).contains(&r)
        } else {
            (0.0..sup).contains(&r)
        };
        if !r.is_finite() || !inside {
            return Err(Error::OutOfDomain {
                r,
                lo: 0.0,
                hi: sup,
            });
        }
        let a = self.a().value();
        Ok(match *self {
            PhiSpec::Phi1 { n, .. } => {
                let rn = r.powi(n as i32);
                let r2n = rn * rn;
                (a + 1.0) / 2.0 * (1.0 - r) / (1.0 + r)
                    - (1.0 + 2.0 * f64::from(n + 1) * rn + r2n) / (1.0 - r2n)
            }
            PhiSpec::Phi2 { alpha, beta, .. } => {
                (a + 3.0 + 2.0 * alpha - 2.0 * beta) * r * r
                    - 2.0 * (a + 1.0 + alpha + beta) * r
                    + a
                    - 1.0
            }
            PhiSpec::Phi3 { beta, .. } => {
                (a + 1.0) * (1.0 - r) / (1.0 + r) - 4.0 * r * beta / (1.0 - r * r)
                    - 2.0 * ((1.0 + r) / (1.0 - r)).powf(beta)
            }
            PhiSpec::Phi4 { alpha, .. } => {
                (-8.0 * alpha * alpha + 6.0 * alpha - 2.0 * a * alpha + a - 1.0) * r * r
                    + (2.0 * a * alpha - 2.0 * a - 10.0 * alpha + 6.0) * r
                    + a
                    - 1.0
            }
            PhiSpec::Phi6 { .. } => {
                a - 1.0 - (4.0 * a + 8.0) * r + (a + 21.0) * r * r
                    - 20.0 * r * r * r
                    - (a + 11.0) * r * r * r * r
            }
        })
    }
}

/// Outcome of a least-root or empirical-radius search.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RadiusResult {
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `|Phi(value)|` (or `|circle minimum|` for empirical searches).
    pub residual: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// Least root of `Phi` in its domain: forward scan to the first sign change,
/// then bisection to bracket width `tol`.
///
/// When no sign change exists (checked again at step `SCAN_STEP / 100`), the
/// result carries `value = domain ceiling` and `converged = false`.
pub fn least_root(spec: &PhiSpec, tol: f64) -> Result<RadiusResult> {
    if !(tol.is_finite() && tol >= 1e-14) {
        return Err(Error::invalid("tol", "must be >= 1e-14"));
    }
    let ceiling = if spec.closed_at_sup() {
        spec.domain_sup()
    } else {
        spec.domain_sup() - 1e-12
    };
    let bracket = match scan_for_sign_change(spec, SCAN_STEP, ceiling)? {
        Some(b) => Some(b),
        None => scan_for_sign_change(spec, SCAN_STEP / 100.0, ceiling)?,
    };
    let Some((mut lo, mut hi)) = bracket else {
        let residual = spec.eval(ceiling)?.abs();
        return Ok(RadiusResult {
            value: spec.domain_sup(),
            bracket_lo: ceiling,
            bracket_hi: spec.domain_sup(),
            residual,
            iterations: 0,
            converged: false,
        });
    };
    let mut iterations = 0u32;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if spec.eval(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    Ok(RadiusResult {
        value,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: spec.eval(value)?.abs(),
        iterations,
        converged: hi - lo <= tol,
    })
}

fn scan_for_sign_change(spec: &PhiSpec, step: f64, ceiling: f64) -> Result<Option<(f64, f64)>> {
    if spec.eval(0.0)? <= 0.0 {
        return Ok(Some((0.0, 0.0)));
    }
    let mut prev_r = 0.0;
    let mut k = 1u64;
    loop {
        let r = ((k as f64) * step).min(ceiling);
        if spec.eval(r)? <= 0.0 {
            return Ok(Some((prev_r, r)));
        }
        if r >= ceiling {
            return Ok(None);
        }
        prev_r = r;
        k += 1;
    }
}

/// Exact least root in the domain where `Phi` reduces to a quadratic after
/// clearing denominators: always for `Phi2`/`Phi4`, and for `Phi1` with
/// `n = 1` and `Phi3` with `beta = 1` (both reduce to
/// `r^2 - 2 (A+5)/(A-1) r + 1 = 0`).
pub fn closed_form_root(spec: &PhiSpec) -> Option<f64> {
    let a = spec.a().value();
    match *spec {
        PhiSpec::Phi1 { n: 1, .. } => Some(reciprocal_pair_root((a + 5.0) / (a - 1.0))),
        PhiSpec::Phi3 { beta, .. } if beta == 1.0 => {
            Some(reciprocal_pair_root((a + 5.0) / (a - 1.0)))
        }
        PhiSpec::Phi2 { alpha, beta, .. } => least_quadratic_root_in_unit(
            a + 3.0 + 2.0 * alpha - 2.0 * beta,
            -2.0 * (a + 1.0 + alpha + beta),
            a - 1.0,
        ),
        PhiSpec::Phi4 { alpha, .. } => least_quadratic_root_in_unit(
            -8.0 * alpha * alpha + 6.0 * alpha - 2.0 * a * alpha + a - 1.0,
            2.0 * a * alpha - 2.0 * a - 10.0 * alpha + 6.0,
            a - 1.0,
        ),
        _ => None,
    }
}

/// Smaller root of `r^2 - 2 c r + 1 = 0` (the roots multiply to 1), computed
/// in the cancellation-free form `1 / (c + sqrt(c^2 - 1))`.
fn reciprocal_pair_root(c: f64) -> f64 {
    1.0 / (c + (c * c - 1.0).sqrt())
}

/// Least root of `a2 r^2 + a1 r + a0` inside `(0, 1)`, if any.
fn least_quadratic_root_in_unit(a2: f64, a1: f64, a0: f64) -> Option<f64> {
    let mut candidates: Vec<f64> = Vec::with_capacity(2);
    if a2 == 0.0 {
        if a1 != 0.0 {
            candidates.push(-a0 / a1);
        }
    } else {
        let disc = a1 * a1 - 4.0 * a2 * a0;
        if disc < 0.0 {
            return None;
        }
        let q = -0.5 * (a1 + a1.signum() * disc.sqrt());
        if q != 0.0 {
            candidates.push(q / a2);
            candidates.push(a0 / q);
        } else {
            candidates.push(0.0);
        }
    }
    candidates
        .into_iter()
        .filter(|r| r.is_finite() && *r > 0.0 && *r < 1.0)
        .fold(None, |best, r| match best {
            Some(b) if b <= r => Some(b),
            _ => Some(r),
        })
}

/// Radius of convexity of order `beta` in the gap-`n` starlike family:
/// `[( (1+n) - sqrt(n^2 + 2n + beta^2) ) / (1 + beta)]^{1/n}`.
///
/// `beta = 1/2` gives the radius of uniform convexity.
pub fn radius_of_convexity(n: u32, beta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", "must be a positive integer"));
    }
    if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
        return Err(Error::invalid("beta", "need 0 <= beta < 1"));
    }
    let nf = f64::from(n);
    let inner = ((1.0 + nf) - (nf * nf + 2.0 * nf + beta * beta).sqrt()) / (1.0 + beta);
    Ok(inner.powf(1.0 / nf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(v: f64) -> ConcavityParam {
        ConcavityParam::new(v).unwrap()
    }

    const A_GRID: [f64; 5] = [1.1, 1.25, 1.5, 1.75, 2.0];

    fn admissible_grid() -> Vec<PhiSpec> {
        let mut specs = Vec::new();
        for &av in &A_GRID {
            let av = a(av);
            for n in [1, 2, 3] {
                specs.push(PhiSpec::phi1(n, av).unwrap());
            }
            for (al, be) in [(0.0, 0.5), (0.0, 2.0), (0.5, 1.5), (1.0, 1.0), (0.0, 0.0)] {
                specs.push(PhiSpec::phi2(al, be, av).unwrap());
            }
            for be in [0.25, 0.5, 0.75, 1.0] {
                specs.push(PhiSpec::phi3(be, av).unwrap());
            }
            for al in [0.6, 0.75, 0.9] {
                specs.push(PhiSpec::phi4(al, av).unwrap());
            }
            specs.push(PhiSpec::phi6(av));
        }
        specs
    }

    #[test]
    fn phi_values_at_named_points() {
        // Phi3(0) = A - 1, Phi1(0) = (A-1)/2, Phi6(0) = A - 1.
        for &av in &A_GRID {
            let phi3 = PhiSpec::phi3(0.5, a(av)).unwrap();
            assert!((phi3.eval(0.0).unwrap() - (av - 1.0)).abs() <= 1e-12);
            let phi1 = PhiSpec::phi1(2, a(av)).unwrap();
            assert!((phi1.eval(0.0).unwrap() - (av - 1.0) / 2.0).abs() <= 1e-12);
            let phi6 = PhiSpec::phi6(a(av));
            assert!((phi6.eval(0.0).unwrap() - (av - 1.0)).abs() <= 1e-12);
        }
        // Phi6(0) at A = 2 equals 1.
        assert!((PhiSpec::phi6(a(2.0)).eval(0.0).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn phi_endpoint_identities() {
        // Phi2(1) = -4 beta and Phi4(1) = -8 alpha^2 - 4 alpha + 4.
        for &av in &A_GRID {
            for (al, be) in [(0.0, 2.0), (0.5, 0.75), (1.0, 3.0)] {
                let phi2 = PhiSpec::phi2(al, be, a(av)).unwrap();
                assert!((phi2.eval(1.0).unwrap() - (-4.0 * be)).abs() <= 1e-12);
            }
            for al in [0.0, 0.3, 0.75, 0.9] {
                let phi4 = PhiSpec::phi4(al, a(av)).unwrap();
                let expected = -8.0 * al * al - 4.0 * al + 4.0;
                assert!((phi4.eval(1.0).unwrap() - expected).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn least_root_quadratic_oracles() {
        // Phi1(1, 2): clearing denominators gives r^2 - 14 r + 1 = 0.
        let exact = 7.0 - 48.0f64.sqrt();
        let root = least_root(&PhiSpec::phi1(1, a(2.0)).unwrap(), 1e-12).unwrap();
        assert!(root.converged);
        assert!((root.value - exact).abs() <= 1e-10, "{} vs {exact}", root.value);

        // Phi2(0, 2, 2): r^2 - 10 r + 1 = 0.
        let exact = 5.0 - 24.0f64.sqrt();
        let root = least_root(&PhiSpec::phi2(0.0, 2.0, a(2.0)).unwrap(), 1e-12).unwrap();
        assert!((root.value - exact).abs() <= 1e-10);

        // Phi4(0.75, 2): -2 r^2 - 2.5 r + 1 = 0.
        let exact = (-2.5 + (2.5f64 * 2.5 + 8.0).sqrt()) / 4.0;
        let root = least_root(&PhiSpec::phi4(0.75, a(2.0)).unwrap(), 1e-12).unwrap();
        assert!((root.value - exact).abs() <= 1e-10);
    }

    #[test]
    fn phi6_bracket_and_signs() {
        let phi6 = PhiSpec::phi6(a(2.0));
        let at_006 = phi6.eval(0.06).unwrap();
        let at_007 = phi6.eval(0.07).unwrap();
        assert!(at_006 > 0.0 && (at_006 - 0.1183).abs() < 5e-4, "{at_006}");
        assert!(at_007 < 0.0 && (at_007 + 0.0145).abs() < 5e-4, "{at_007}");
        let root = least_root(&phi6, 1e-12).unwrap();
        assert!(root.converged);
        assert!(root.value > 0.06 && root.value < 0.07, "{}", root.value);
    }

    #[test]
    fn phi1_n2_matches_quartic_oracle() {
        // Clearing denominators gives r^4 - 6 r^3 - 6 r^2 - 6 r + 1 = 0.
        let quartic = |r: f64| r.powi(4) - 6.0 * r.powi(3) - 6.0 * r * r - 6.0 * r + 1.0;
        assert!(quartic(0.14) > 0.0 && quartic(0.15) < 0.0);
        let root = least_root(&PhiSpec::phi1(2, a(2.0)).unwrap(), 1e-12).unwrap();
        assert!(root.value > 0.14 && root.value < 0.15);
        assert!(quartic(root.value).abs() <= 1e-9);
    }

    #[test]
    fn least_root_residual_and_bracket() {
        for spec in admissible_grid() {
            let res = least_root(&spec, 1e-11).unwrap();
            if !res.converged {
                // Only the Phi4 alpha <= 1/2 family may lack a root; none in
                // this grid.
                panic!("unexpected non-convergence for {spec:?}");
            }
            assert!(res.bracket_lo <= res.value && res.value <= res.bracket_hi);
            assert!(res.residual <= 1e-9, "{spec:?}: residual {}", res.residual);
            let lo = spec.eval(res.bracket_lo).unwrap();
            let hi = spec.eval(res.bracket_hi).unwrap();
            assert!(lo >= 0.0 && hi <= 0.0, "{spec:?}: no sign change");
        }
    }

    #[test]
    fn closed_form_agrees_with_solver() {
        for spec in admissible_grid() {
            if let Some(cf) = closed_form_root(&spec) {
                let res = least_root(&spec, 1e-12).unwrap();
                assert!(
                    (res.value - cf).abs() <= 1e-11,
                    "{spec:?}: {} vs {cf}",
                    res.value
                );
            }
        }
    }

    #[test]
    fn strongly_starlike_order_one_is_starlike() {
        for &av in &A_GRID {
            let r3 = least_root(&PhiSpec::phi3(1.0, a(av)).unwrap(), 1e-12).unwrap();
            let r1 = least_root(&PhiSpec::phi1(1, a(av)).unwrap(), 1e-12).unwrap();
            assert!((r3.value - r1.value).abs() <= 1e-10, "A = {av}");
        }
    }

    #[test]
    fn scan_positive_below_bracket() {
        for spec in [
            PhiSpec::phi1(3, a(1.5)).unwrap(),
            PhiSpec::phi2(0.25, 1.0, a(1.25)).unwrap(),
            PhiSpec::phi6(a(1.75)),
        ] {
            let res = least_root(&spec, 1e-10).unwrap();
            let mut r = SCAN_STEP;
            while r < res.bracket_lo {
                assert!(spec.eval(r).unwrap() > 0.0, "{spec:?} at r = {r}");
                r += SCAN_STEP;
            }
        }
    }

    #[test]
    fn phi4_without_interior_root_reports_ceiling() {
        let res = least_root(&PhiSpec::phi4(0.25, a(2.0)).unwrap(), 1e-10).unwrap();
        assert!(!res.converged);
        assert_eq!(res.value, 1.0);
    }

    #[test]
    fn phi2_degenerate_beta_zero_has_interior_root() {
        // Phi2 with alpha = beta = 0 factors as (r - 1)((A+3) r - (A-1));
        // the interior root (A-1)/(A+3) is a genuine sign change.
        for &av in &A_GRID {
            let res = least_root(&PhiSpec::phi2(0.0, 0.0, a(av)).unwrap(), 1e-12).unwrap();
            assert!(res.converged);
            let exact = (av - 1.0) / (av + 3.0);
            assert!((res.value - exact).abs() <= 1e-10, "A = {av}");
        }
    }

    #[test]
    fn domain_errors() {
        let phi1 = PhiSpec::phi1(1, a(2.0)).unwrap();
        assert!(matches!(phi1.eval(1.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(phi1.eval(-0.1), Err(Error::OutOfDomain { .. })));
        let phi6 = PhiSpec::phi6(a(2.0));
        assert!(phi6.eval(0.42).is_err());
        // Polynomial variants extend to the closed endpoint.
        assert!(PhiSpec::phi2(0.0, 1.0, a(2.0)).unwrap().eval(1.0).is_ok());
        assert!(least_root(&phi1, 1e-15).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(PhiSpec::phi1(0, a(2.0)).is_err());
        assert!(PhiSpec::phi2(1.0, 0.5, a(2.0)).is_err());
        assert!(PhiSpec::phi3(0.0, a(2.0)).is_err());
        assert!(PhiSpec::phi3(1.1, a(2.0)).is_err());
        assert!(PhiSpec::phi4(1.0, a(2.0)).is_err());
    }

    #[test]
    fn convexity_radius_values() {
        // n = 1, beta = 0: 2 - sqrt(3).
        let r = radius_of_convexity(1, 0.0).unwrap();
        assert!((r - (2.0 - 3.0f64.sqrt())).abs() <= 1e-12);
        // n = 1, beta = 1/2: (2 - sqrt(3.25))/1.5 (the uniform-convexity radius).
        let r = radius_of_convexity(1, 0.5).unwrap();
        assert!((r - (2.0 - 3.25f64.sqrt()) / 1.5).abs() <= 1e-12);
        // n = 2, beta = 0: sqrt(3 - 2 sqrt(2)) = sqrt(2) - 1.
        let r = radius_of_convexity(2, 0.0).unwrap();
        assert!((r - (std::f64::consts::SQRT_2 - 1.0)).abs() <= 1e-12);
        assert!(radius_of_convexity(0, 0.0).is_err());
        assert!(radius_of_convexity(1, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn endpoint_identities_random(
            av in 1.0001..2.0f64,
            al in 0.0..1.0f64,
            spread in 0.0..2.0f64,
        ) {
            let be = al + spread;
            let phi2 = PhiSpec::phi2(al, be, a(av)).unwrap();
            prop_assert!((phi2.eval(1.0).unwrap() - (-4.0 * be)).abs() <= 1e-12);
            let al4 = al * 0.999;
            let phi4 = PhiSpec::phi4(al4, a(av)).unwrap();
            let expected = -8.0 * al4 * al4 - 4.0 * al4 + 4.0;
            prop_assert!((phi4.eval(1.0).unwrap() - expected).abs() <= 1e-12);
        }
    }
}
