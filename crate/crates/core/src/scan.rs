//! Circle minima of `Re T` and the empirical concavity radius of a concrete
//! function.
//!
//! Sharpness checks scan the whole circle rather than probing `z = +-r`: the
//! two terms of `T` reach their circle extremes at different angles for some
//! catalog entries, so the scan stays orientation-agnostic and reports the
//! argmin angle it found.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::functional::{eval_tf, ConcavityParam};
use crate::phi::RadiusResult;

/// Default angular sample count.
pub const DEFAULT_SAMPLES: usize = 2048;

/// Default bisection tolerance on the radius.
pub const DEFAULT_RADIUS_TOL: f64 = 1e-9;

/// Radius below which `Re T > 0` is taken as the continuity anchor
/// (`T(0) = 1` for normalized functions).
pub const ORIGIN_PROBE_RADIUS: f64 = 1e-3;

/// Minimum of `Re T` over one circle `|z| = r`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CircleScan {
    pub r: f64,
    pub samples: usize,
    pub min_value: f64,
    /// Angle in `[0, 2 pi)` attaining `min_value`.
    pub argmin_angle: f64,
    /// False when more than 1% of the sampled angles failed to evaluate.
    pub refined: bool,
}

/// Controls for [`empirical_concavity_radius_with`].
#[derive(Copy, Clone, Debug)]
pub struct ScanOptions {
    pub samples: usize,
    pub tol: f64,
    /// Largest radius probed; defaults to the function's own ceiling.
    pub ceiling: Option<f64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_RADIUS_TOL,
            ceiling: None,
        }
    }
}

/// Dense uniform sampling of `Re T` on `|z| = r` followed by golden-section
/// refinement around the best three samples.
///
/// Angles where the evaluation hits a pole or cut are excluded; the scan is
/// flagged unrefined when exclusions exceed 1% of the samples.
pub fn min_re_tf_on_circle(
    f: &FunctionSpec,
    a: ConcavityParam,
    r: f64,
    samples: usize,
) -> Result<CircleScan> {
    if !(r.is_finite() && 0.0 < r && r < 1.0) {
        return Err(Error::invalid("r", "must lie in (0, 1)"));
    }
    if samples < 256 {
        return Err(Error::invalid("samples", "need at least 256"));
    }
    let tau = std::f64::consts::TAU;
    let eval_at = |theta: f64| -> Result<Option<f64>> {
        match eval_tf(f, a, Complex64::from_polar(r, theta)) {
            Ok(t) => Ok(Some(t.re)),
            Err(Error::NearPole { .. }) | Err(Error::BranchCut { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };

    let mut values: Vec<Option<f64>> = Vec::with_capacity(samples);
    let mut excluded = 0usize;
    for k in 0..samples {
        let v = eval_at(tau * k as f64 / samples as f64)?;
        if v.is_none() {
            excluded += 1;
        }
        values.push(v);
    }
    if excluded == samples {
        return Err(Error::invalid("r", "every sample on the circle failed"));
    }

    // Indices of the three smallest sampled values.
    let mut ranked: Vec<usize> = (0..samples).filter(|&k| values[k].is_some()).collect();
    ranked.sort_by(|&i, &j| values[i].unwrap().total_cmp(&values[j].unwrap()));
    ranked.truncate(3);

    let mut min_value = values[ranked[0]].unwrap();
    let mut argmin = tau * ranked[0] as f64 / samples as f64;

    let step = tau / samples as f64;
    for &i in &ranked {
        let center = tau * i as f64 / samples as f64;
        let g = |theta: f64| -> f64 {
            eval_at(theta)
                .ok()
                .flatten()
                .unwrap_or(f64::INFINITY)
        };
        let (theta, value) = golden_min(&g, center - 3.0 * step, center + 3.0 * step);
        if value < min_value {
            min_value = value;
            argmin = theta;
        }
    }

    Ok(CircleScan {
        r,
        samples,
        min_value,
        argmin_angle: argmin.rem_euclid(tau),
        refined: excluded * 100 <= samples,
    })
}

/// Golden-section minimization on `[a, b]`; failed evaluations count as
/// `+inf` so the search slides off them.
fn golden_min(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..90 {
        if b - a < 1e-13 {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, g(mid))
}

/// Empirical concavity radius with default options (2048 samples, radius
/// tolerance `1e-9`, the function's own scan ceiling).
pub fn empirical_concavity_radius(
    f: &FunctionSpec,
    a: ConcavityParam,
    tol: f64,
) -> Result<RadiusResult> {
    empirical_concavity_radius_with(
        f,
        a,
        ScanOptions {
            tol,
            ..ScanOptions::default()
        },
    )
}

/// Bisection on `r` of the sign of the circle minimum of `Re T`.
///
/// Requires a positive minimum at `r = 1e-3`. When the minimum stays
/// positive all the way to the ceiling, the ceiling is returned with
/// `converged = false`. By bisection bookkeeping every probed radius below
/// the final bracket had a positive circle minimum and every probed radius
/// above it a negative one.
pub fn empirical_concavity_radius_with(
    f: &FunctionSpec,
    a: ConcavityParam,
    opts: ScanOptions,
) -> Result<RadiusResult> {
    if !(opts.tol.is_finite() && opts.tol >= 1e-14) {
        return Err(Error::invalid("tol", "must be >= 1e-14"));
    }
    let ceiling = opts.ceiling.unwrap_or_else(|| f.scan_ceiling());
    if !(ceiling > ORIGIN_PROBE_RADIUS && ceiling < 1.0) {
        return Err(Error::invalid("ceiling", "must lie in (1e-3, 1)"));
    }

    let origin = min_re_tf_on_circle(f, a, ORIGIN_PROBE_RADIUS, opts.samples)?;
    if origin.min_value <= 0.0 {
        return Err(Error::NotPositiveAtOrigin {
            min: origin.min_value,
            r: ORIGIN_PROBE_RADIUS,
        });
    }

    let top = min_re_tf_on_circle(f, a, ceiling, opts.samples)?;
    if top.min_value >= 0.0 {
        return Ok(RadiusResult {
            value: ceiling,
            bracket_lo: ORIGIN_PROBE_RADIUS,
            bracket_hi: ceiling,
            residual: top.min_value.abs(),
            iterations: 0,
            converged: false,
        });
    }

    let mut lo = ORIGIN_PROBE_RADIUS;
    let mut hi = ceiling;
    let mut iterations = 0u32;
    while hi - lo > opts.tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if min_re_tf_on_circle(f, a, mid, opts.samples)?.min_value > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let value = 0.5 * (lo + hi);
    let residual = min_re_tf_on_circle(f, a, value, opts.samples)?
        .min_value
        .abs();
    Ok(RadiusResult {
        value,
        bracket_lo: lo,
        bracket_hi: hi,
        residual,
        iterations,
        converged: hi - lo <= opts.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogFunction;
    use crate::series::SeriesFunction;

    fn a(v: f64) -> ConcavityParam {
        ConcavityParam::new(v).unwrap()
    }

    #[test]
    fn identity_minimum_on_negative_axis() {
        // For f = z the only angle dependence is Re (1+z)/(1-z), minimal at
        // z = -r: min = 2 [1.5 (1-r)/(1+r) - 1] = -1 at r = 1/2.
        let f: FunctionSpec = SeriesFunction::identity().into();
        let scan = min_re_tf_on_circle(&f, a(2.0), 0.5, 512).unwrap();
        assert!((scan.min_value + 1.0).abs() <= 1e-10, "{}", scan.min_value);
        assert!(
            (scan.argmin_angle - std::f64::consts::PI).abs() <= 1e-5,
            "{}",
            scan.argmin_angle
        );
        assert!(scan.refined);
    }

    #[test]
    fn rotated_koebe_sign_straddles_sharp_radius() {
        let f: FunctionSpec = CatalogFunction::RotatedKoebe.into();
        assert!(min_re_tf_on_circle(&f, a(2.0), 0.05, 512).unwrap().min_value > 0.0);
        assert!(min_re_tf_on_circle(&f, a(2.0), 0.10, 512).unwrap().min_value < 0.0);
    }

    #[test]
    fn min_never_above_any_sample() {
        let f: FunctionSpec = CatalogFunction::GeneralizedKoebe { n: 2 }.into();
        let scan = min_re_tf_on_circle(&f, a(1.5), 0.3, 512).unwrap();
        for k in 0..512 {
            let theta = std::f64::consts::TAU * k as f64 / 512.0;
            let t = eval_tf(&f, a(1.5), Complex64::from_polar(0.3, theta)).unwrap();
            assert!(scan.min_value <= t.re + 1e-15);
        }
        // The refined argmin attains the reported minimum.
        let at_argmin = eval_tf(
            &f,
            a(1.5),
            Complex64::from_polar(0.3, scan.argmin_angle),
        )
        .unwrap();
        assert!((at_argmin.re - scan.min_value).abs() <= 1e-10);
    }

    #[test]
    fn doubling_samples_cannot_raise_minimum() {
        let suite: Vec<FunctionSpec> = vec![
            CatalogFunction::RotatedKoebe.into(),
            CatalogFunction::GeneralizedKoebe { n: 2 }.into(),
            CatalogFunction::CloseToStarExtremal.into(),
            CatalogFunction::Schild {
                alpha: 0.75,
                b: -1.0,
            }
            .into(),
        ];
        for f in &suite {
            for r in [0.05, 0.2, 0.35] {
                let coarse = min_re_tf_on_circle(f, a(2.0), r, 512).unwrap();
                let fine = min_re_tf_on_circle(f, a(2.0), r, 1024).unwrap();
                assert!(
                    fine.min_value <= coarse.min_value + 1e-8,
                    "{} at r = {r}: {} vs {}",
                    f.id(),
                    fine.min_value,
                    coarse.min_value
                );
            }
        }
    }

    #[test]
    fn empirical_radius_of_identity() {
        // Solve 1.5 (1-r)/(1+r) = 1: r = 0.2.
        let f: FunctionSpec = SeriesFunction::identity().into();
        let res = empirical_concavity_radius_with(
            &f,
            a(2.0),
            ScanOptions {
                samples: 512,
                tol: 1e-9,
                ceiling: None,
            },
        )
        .unwrap();
        assert!(res.converged);
        assert!((res.value - 0.2).abs() <= 1e-6, "{}", res.value);
    }

    #[test]
    fn empirical_radius_of_rotated_koebe() {
        let f: FunctionSpec = CatalogFunction::RotatedKoebe.into();
        let res = empirical_concavity_radius_with(
            &f,
            a(2.0),
            ScanOptions {
                samples: 512,
                tol: 1e-9,
                ceiling: None,
            },
        )
        .unwrap();
        let exact = 7.0 - 48.0f64.sqrt();
        assert!(res.converged);
        assert!((res.value - exact).abs() <= 1e-6, "{} vs {exact}", res.value);
        // Bracket endpoints keep their probed signs.
        assert!(
            min_re_tf_on_circle(&f, a(2.0), res.bracket_lo, 512)
                .unwrap()
                .min_value
                >= 0.0
        );
        assert!(
            min_re_tf_on_circle(&f, a(2.0), res.bracket_hi, 512)
                .unwrap()
                .min_value
                <= 0.0
        );
    }

    #[test]
    fn koebe_itself_never_loses_positivity() {
        // T of z/(1-z)^2 at A = 2 is (1-z)/(1+z): positive on every circle,
        // so the search runs into the ceiling unconverged.
        let f: FunctionSpec = CatalogFunction::GeneralizedKoebe { n: 1 }.into();
        let res = empirical_concavity_radius_with(
            &f,
            a(2.0),
            ScanOptions {
                samples: 512,
                tol: 1e-9,
                ceiling: None,
            },
        )
        .unwrap();
        assert!(!res.converged);
        assert_eq!(res.value, 0.999);
    }

    #[test]
    fn close_to_star_extremal_radius_inside_validity_range() {
        let f: FunctionSpec = CatalogFunction::CloseToStarExtremal.into();
        let res = empirical_concavity_radius_with(
            &f,
            a(2.0),
            ScanOptions {
                samples: 512,
                tol: 1e-9,
                ceiling: None,
            },
        )
        .unwrap();
        assert!(res.converged, "value {}", res.value);
        assert!(res.value > 0.0 && res.value < std::f64::consts::SQRT_2 - 1.0);
    }

    #[test]
    fn unnormalized_function_is_rejected() {
        let f: FunctionSpec = CatalogFunction::Monomial { lambda: 1.0, n: 1 }.into();
        let err = empirical_concavity_radius(&f, a(2.0), 1e-6).unwrap_err();
        assert!(matches!(err, Error::NotPositiveAtOrigin { .. }));
    }

    #[test]
    fn scan_input_validation() {
        let f: FunctionSpec = SeriesFunction::identity().into();
        assert!(min_re_tf_on_circle(&f, a(2.0), 0.5, 128).is_err());
        assert!(min_re_tf_on_circle(&f, a(2.0), 1.0, 512).is_err());
        assert!(min_re_tf_on_circle(&f, a(2.0), 0.0, 512).is_err());
    }
}
