//! The concavity functionals.
//!
//! `T` characterizes conformal maps of the disk whose complement is convex
//! and unbounded (normalization `f(1) = inf`, parameter `A`):
//!
//! ```text
//! T(z) = 2/(A-1) * [ (A+1)/2 * (1+z)/(1-z) - 1 - z f''(z)/f'(z) ]
//! ```
//!
//! `P` plays the same role for maps with a simple pole at `p` whose omitted
//! set is bounded convex:
//!
//! ```text
//! P(z) = -[ 1 + z f''(z)/f'(z) + (z+p)/(z-p) - (1+pz)/(1-pz) ]
//! ```
//!
//! Positivity of the real part on `|z| < r` is the property the radius
//! solvers and circle scans quantify.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::FunctionSpec;

/// The parameter `A` of the functional `T`, restricted to `(1, 2]`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ConcavityParam(f64);

impl ConcavityParam {
    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && 1.0 < a && a <= 2.0) {
            return Err(Error::invalid("A", "must lie in (1, 2]"));
        }
        Ok(ConcavityParam(a))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A pole location `p` in `(0, 1)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PoleParam(f64);

impl PoleParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && 0.0 < p && p < 1.0) {
            return Err(Error::invalid("p", "must lie in (0, 1)"));
        }
        Ok(PoleParam(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Extrapolated boundary value of `P` at its pole, with an error estimate.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PoleLimit {
    pub value: Complex64,
    pub error_estimate: f64,
}

fn check_disk_point(z: Complex64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::invalid("z", "non-finite point"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::invalid("z", "must lie in the open unit disk"));
    }
    Ok(())
}

/// Scalar quotient with the same near-zero guard as jet division.
fn guarded_div(num: Complex64, den: Complex64) -> Result<Complex64> {
    let tol = 1e-14 * (1.0 + num.norm());
    let modulus = den.norm();
    if modulus <= tol {
        return Err(Error::NearPole { modulus });
    }
    Ok(num / den)
}

/// `z f''(z)/f'(z)` for the given function.
pub fn log_derivative_term(f: &FunctionSpec, z: Complex64) -> Result<Complex64> {
    let jet = f.eval(z)?;
    guarded_div(z * jet.d2f, jet.df)
}

/// Evaluates `T(z)`; `Re T > 0` is the concavity condition.
pub fn eval_tf(f: &FunctionSpec, a: ConcavityParam, z: Complex64) -> Result<Complex64> {
    check_disk_point(z)?;
    let one = Complex64::new(1.0, 0.0);
    let t = log_derivative_term(f, z)?;
    let mobius = (one + z) / (one - z);
    let a = a.value();
    Ok(2.0 / (a - 1.0) * ((a + 1.0) / 2.0 * mobius - one - t))
}

/// Evaluates `P(z)` away from the pole; use [`limit_pf_at_pole`] at `z = p`.
pub fn eval_pf(f: &FunctionSpec, p: PoleParam, z: Complex64) -> Result<Complex64> {
    check_disk_point(z)?;
    let one = Complex64::new(1.0, 0.0);
    let pc = Complex64::new(p.value(), 0.0);
    let t = log_derivative_term(f, z)?;
    let pole_term = guarded_div(z + pc, z - pc)?;
    let mobius = guarded_div(one + pc * z, one - pc * z)?;
    Ok(-(one + t + pole_term - mobius))
}

/// Richardson-extrapolated limit of `P` along `z = p (1 - 10^-k)`, `k = 3..8`.
///
/// For a function with a simple pole at `p` the error of `P(z_k)` is linear
/// in `z_k - p`, so two extrapolation levels (ratios 10 and 100) settle the
/// limit; a limit that keeps moving by more than `1e-6` between the last two
/// extrapolants is reported as [`Error::NoConvergence`] -- which is exactly
/// what happens when `f` has no pole at `p` and `P(z_k)` diverges.
pub fn limit_pf_at_pole(f: &FunctionSpec, p: PoleParam) -> Result<PoleLimit> {
    let pv = p.value();
    let mut values = Vec::with_capacity(6);
    for k in 3..=8 {
        let z = Complex64::new(pv * (1.0 - 10f64.powi(-k)), 0.0);
        values.push(eval_pf(f, p, z)?);
    }
    let level1: Vec<Complex64> = values
        .windows(2)
        .map(|w| (10.0 * w[1] - w[0]) / 9.0)
        .collect();
    let level2: Vec<Complex64> = level1
        .windows(2)
        .map(|w| (100.0 * w[1] - w[0]) / 99.0)
        .collect();
    let last = level2[level2.len() - 1];
    let prev = level2[level2.len() - 2];
    let spread = (last - prev).norm();
    if !last.is_finite() || spread > 1e-6 {
        return Err(Error::NoConvergence { spread });
    }
    Ok(PoleLimit {
        value: last,
        error_estimate: spread,
    })
}

/// `k_p(z) = -p z / ((z - p)(1 - p z))`, evaluated as a plain rational.
pub fn eval_kp(p: PoleParam, z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::invalid("z", "non-finite point"));
    }
    let one = Complex64::new(1.0, 0.0);
    let pc = Complex64::new(p.value(), 0.0);
    guarded_div(-pc * z, (z - pc) * (one - pc * z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogFunction;
    use crate::series::SeriesFunction;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn a(v: f64) -> ConcavityParam {
        ConcavityParam::new(v).unwrap()
    }

    fn catalog_class_a() -> Vec<FunctionSpec> {
        vec![
            CatalogFunction::GeneralizedKoebe { n: 1 }.into(),
            CatalogFunction::GeneralizedKoebe { n: 2 }.into(),
            CatalogFunction::RotatedKoebe.into(),
            CatalogFunction::PowerDistortion {
                alpha: 0.0,
                beta: 2.0,
            }
            .into(),
            CatalogFunction::Schild {
                alpha: 0.75,
                b: -1.0,
            }
            .into(),
            CatalogFunction::CloseToStarExtremal.into(),
            SeriesFunction::identity().into(),
        ]
    }

    #[test]
    fn tf_is_one_at_origin() {
        for f in catalog_class_a() {
            for av in [1.1, 1.25, 1.5, 1.75, 2.0] {
                let t = eval_tf(&f, a(av), c(0.0, 0.0)).unwrap();
                assert!((t - c(1.0, 0.0)).norm() <= 1e-14, "{} A={av}: {t}", f.id());
            }
        }
    }

    #[test]
    fn tf_of_rotated_koebe_on_negative_axis() {
        // Independent hand evaluation of
        // 2 [ 1.5 (1-r)/(1+r) - (1 + 4r + r^2)/(1 - r^2) ] at r = 0.05,
        // which T of z/(1+z)^2 attains at z = -r.
        let r: f64 = 0.05;
        let expected = 2.0 * (1.5 * (1.0 - r) / (1.0 + r) - (1.0 + 4.0 * r + r * r) / (1.0 - r * r));
        let f: FunctionSpec = CatalogFunction::RotatedKoebe.into();
        let t = eval_tf(&f, a(2.0), c(-r, 0.0)).unwrap();
        assert!((t - c(expected, 0.0)).norm() <= 1e-13, "{t} vs {expected}");
    }

    #[test]
    fn tf_of_koebe_on_positive_axis_is_mobius() {
        // For A = 2 the unrotated Koebe satisfies T(z) = (1-z)/(1+z) exactly;
        // its functional never loses positivity on the real axis.
        let f: FunctionSpec = CatalogFunction::GeneralizedKoebe { n: 1 }.into();
        let z = c(0.05, 0.0);
        let t = eval_tf(&f, a(2.0), z).unwrap();
        let expected = (c(1.0, 0.0) - z) / (c(1.0, 0.0) + z);
        assert!((t - expected).norm() <= 1e-13);
    }

    #[test]
    fn tf_zero_at_sharp_radius_of_rotated_koebe() {
        let r = 7.0 - 4.0 * 3.0f64.sqrt();
        let f: FunctionSpec = CatalogFunction::RotatedKoebe.into();
        let t = eval_tf(&f, a(2.0), c(-r, 0.0)).unwrap();
        assert!(t.norm() <= 1e-9, "{t}");
    }

    #[test]
    fn tf_near_vanishing_derivative_is_near_pole() {
        // f' of the close-to-star extremal vanishes at z = 1 - sqrt(2).
        let f: FunctionSpec = CatalogFunction::CloseToStarExtremal.into();
        let z = c(1.0 - std::f64::consts::SQRT_2, 0.0);
        assert!(matches!(
            eval_tf(&f, a(2.0), z),
            Err(Error::NearPole { .. })
        ));
    }

    #[test]
    fn pf_is_one_at_origin() {
        for p in [0.2, 0.5, 0.8] {
            let f: FunctionSpec = CatalogFunction::MeromorphicKp { p }.into();
            let v = eval_pf(&f, PoleParam::new(p).unwrap(), c(0.0, 0.0)).unwrap();
            assert!((v - c(1.0, 0.0)).norm() <= 1e-14, "p={p}: {v}");
        }
    }

    #[test]
    fn pf_finite_and_positive_inside() {
        let f: FunctionSpec = CatalogFunction::MeromorphicKp { p: 0.5 }.into();
        let v = eval_pf(&f, PoleParam::new(0.5).unwrap(), c(0.25, 0.0)).unwrap();
        assert!(v.is_finite());
        assert!(v.re > 0.0);
    }

    #[test]
    fn pf_limit_matches_pole_normalization() {
        for p in [0.2, 0.5, 0.8] {
            let f: FunctionSpec = CatalogFunction::MeromorphicKp { p }.into();
            let lim = limit_pf_at_pole(&f, PoleParam::new(p).unwrap()).unwrap();
            let target = (1.0 + p * p) / (1.0 - p * p);
            assert!(
                (lim.value - c(target, 0.0)).norm() <= 1e-6,
                "p={p}: {} vs {target}",
                lim.value
            );
        }
    }

    #[test]
    fn pf_limit_without_pole_diverges() {
        let f: FunctionSpec = SeriesFunction::identity().into();
        let err = limit_pf_at_pole(&f, PoleParam::new(0.5).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }

    #[test]
    fn kp_examples() {
        let p = PoleParam::new(0.5).unwrap();
        assert_eq!(eval_kp(p, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let v = eval_kp(p, c(-0.5, 0.0)).unwrap();
        assert!((v - c(-0.2, 0.0)).norm() <= 1e-15, "{v}");
    }

    #[test]
    fn kp_growth_minimum_on_negative_axis() {
        // |k_p(-r)| <= |k_p(r e^{i theta})| over the circle.
        let p = PoleParam::new(0.5).unwrap();
        let r = 0.3;
        let floor = eval_kp(p, c(-r, 0.0)).unwrap().norm();
        for k in 0..512 {
            let theta = std::f64::consts::TAU * k as f64 / 512.0;
            let v = eval_kp(p, Complex64::from_polar(r, theta)).unwrap();
            assert!(v.norm() >= floor - 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn param_ranges_enforced() {
        assert!(ConcavityParam::new(1.0).is_err());
        assert!(ConcavityParam::new(2.0 + 1e-12).is_err());
        assert!(ConcavityParam::new(2.0).is_ok());
        assert!(PoleParam::new(0.0).is_err());
        assert!(PoleParam::new(1.0).is_err());
    }

    proptest! {
        /// Rearranged defining identity:
        /// (A-1) T/2 + 1 + z f''/f' - (A+1)/2 (1+z)/(1-z) = 0.
        #[test]
        fn tf_affine_rearrangement(
            av in 1.0001..2.0f64,
            re in -0.6..0.6f64,
            im in -0.6..0.6f64,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() < 0.85);
            let f: FunctionSpec = CatalogFunction::RotatedKoebe.into();
            let t = eval_tf(&f, a(av), z).unwrap();
            let ld = log_derivative_term(&f, z).unwrap();
            let one = c(1.0, 0.0);
            let resid = (av - 1.0) * t / 2.0 + one + ld
                - (av + 1.0) / 2.0 * (one + z) / (one - z);
            prop_assert!(resid.norm() <= 1e-12 * (1.0 + t.norm()));
        }
    }
}
