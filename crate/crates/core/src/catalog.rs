//! Catalog of closed-form extremal functions for the supported families.
//!
//! Every variant can be evaluated two independent ways: by composing jet
//! arithmetic over its defining formula ([`CatalogFunction::eval`]) and by
//! hand-derived closed forms for the derivatives
//! ([`CatalogFunction::eval_closed_form`]). The two routes cross-check each
//! other; finite differences arbitrate in the tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::series::SeriesFunction;

/// Closed-form extremal functions, by family.
#[derive(Clone, Debug, PartialEq)]
pub enum CatalogFunction {
    /// `z / (1 - z^n)^{2/n}`.
    GeneralizedKoebe { n: u32 },
    /// `z / (1 + z)^2`: the orientation of the `n = 1` extremal whose
    /// concavity functional bottoms out on the negative real axis.
    RotatedKoebe,
    /// `z / (1 - z)^{beta - alpha}` with `0 <= alpha <= beta`.
    PowerDistortion { alpha: f64, beta: f64 },
    /// `lambda / (n (n + 1)) * z^{n+1}` with `0 < lambda < n (n + 1)`.
    /// Not normalized: `f'(0) = 0`.
    Monomial { lambda: f64, n: u32 },
    /// `z / (1 - 2 b z + z^2)^{1 - alpha}` with `0 <= alpha < 1`,
    /// `-1 <= b < 1`.
    Schild { alpha: f64, b: f64 },
    /// `z (z + 1) / (1 - z)`.
    CloseToStarExtremal,
    /// `k_p(z) = -p z / ((z - p)(1 - p z))`: meromorphic with a simple pole
    /// at `z = p`, `0 < p < 1`.
    MeromorphicKp { p: f64 },
}

impl CatalogFunction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CatalogFunction::GeneralizedKoebe { n } => {
                if n == 0 {
                    return Err(Error::invalid("n", "must be a positive integer"));
                }
            }
            CatalogFunction::RotatedKoebe | CatalogFunction::CloseToStarExtremal => {}
            CatalogFunction::PowerDistortion { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite() && 0.0 <= alpha && alpha <= beta) {
                    return Err(Error::invalid("alpha/beta", "need 0 <= alpha <= beta"));
                }
            }
            CatalogFunction::Monomial { lambda, n } => {
                if n == 0 {
                    return Err(Error::invalid("n", "must be a positive integer"));
                }
                let cap = f64::from(n) * f64::from(n + 1);
                if !(lambda.is_finite() && lambda > 0.0 && lambda < cap) {
                    return Err(Error::invalid("lambda", format!("need 0 < lambda < {cap}")));
                }
            }
            CatalogFunction::Schild { alpha, b } => {
                if !(alpha.is_finite() && (0.0..1.0).contains(&alpha)) {
                    return Err(Error::invalid("alpha", "need 0 <= alpha < 1"));
                }
                if !(b.is_finite() && (-1.0..1.0).contains(&b)) {
                    return Err(Error::invalid("b", "need -1 <= b < 1"));
                }
            }
            CatalogFunction::MeromorphicKp { p } => {
                if !(p.is_finite() && 0.0 < p && p < 1.0) {
                    return Err(Error::invalid("p", "need 0 < p < 1"));
                }
            }
        }
        Ok(())
    }

    /// Stable identifier used in reports and CSV output.
    pub fn id(&self) -> String {
        match *self {
            CatalogFunction::GeneralizedKoebe { n } => format!("generalized_koebe(n={n})"),
            CatalogFunction::RotatedKoebe => "rotated_koebe".to_string(),
            CatalogFunction::PowerDistortion { alpha, beta } => {
                format!("power_distortion(alpha={alpha},beta={beta})")
            }
            CatalogFunction::Monomial { lambda, n } => format!("monomial(lambda={lambda},n={n})"),
            CatalogFunction::Schild { alpha, b } => format!("schild(alpha={alpha},b={b})"),
            CatalogFunction::CloseToStarExtremal => "close_to_star_extremal".to_string(),
            CatalogFunction::MeromorphicKp { p } => format!("kp(p={p})"),
        }
    }

    /// Whether the variant satisfies the `f(0) = 0, f'(0) = 1` normalization.
    pub fn is_normalized(&self) -> bool {
        !matches!(self, CatalogFunction::Monomial { .. })
    }

    /// Jet-arithmetic evaluation: compose the defining formula over jets.
    pub fn eval(&self, z: Complex64) -> Result<Jet2> {
        check_point(z)?;
        let zj = Jet2::variable(z);
        let one = Jet2::constant(Complex64::new(1.0, 0.0));
        match *self {
            CatalogFunction::GeneralizedKoebe { n } => {
                let u = one - Jet2::monomial(z, n);
                Ok(zj * u.powf(-2.0 / f64::from(n))?)
            }
            CatalogFunction::RotatedKoebe => {
                let u = one + zj;
                Ok(zj * u.powf(-2.0)?)
            }
            CatalogFunction::PowerDistortion { alpha, beta } => {
                let u = one - zj;
                Ok(zj * u.powf(alpha - beta)?)
            }
            CatalogFunction::Monomial { lambda, n } => {
                let scale = lambda / (f64::from(n) * f64::from(n + 1));
                Ok(Jet2::monomial(z, n + 1) * scale)
            }
            CatalogFunction::Schild { alpha, b } => {
                let u = Jet2::new(
                    Complex64::new(1.0, 0.0) - 2.0 * b * z + z * z,
                    2.0 * z - Complex64::new(2.0 * b, 0.0),
                    Complex64::new(2.0, 0.0),
                );
                Ok(zj * u.powf(alpha - 1.0)?)
            }
            CatalogFunction::CloseToStarExtremal => {
                let num = zj * (zj + one);
                num.try_div(one - zj)
            }
            CatalogFunction::MeromorphicKp { p } => {
                let pc = Complex64::new(p, 0.0);
                let num = zj * (-pc);
                let den = (zj - Jet2::constant(pc)) * (one - zj * pc);
                num.try_div(den)
            }
        }
    }

    /// Hand-derived closed forms for `(f, f', f'')`, used as the second route.
    pub fn eval_closed_form(&self, z: Complex64) -> Result<Jet2> {
        check_point(z)?;
        let one = Complex64::new(1.0, 0.0);
        match *self {
            CatalogFunction::GeneralizedKoebe { n } => {
                // f' = (1 + z^n)(1 - z^n)^{-2/n - 1},
                // f'' = (2n + 2 + 2 z^n) z^{n-1} (1 - z^n)^{-2/n - 2}.
                let nf = f64::from(n);
                let zn = z.powu(n);
                let u = Jet2::constant(one - zn);
                let e = -2.0 / nf;
                let f = z * u.powf(e)?.f;
                let df = (one + zn) * u.powf(e - 1.0)?.f;
                let d2f = (2.0 * nf + 2.0 + 2.0 * zn) * z.powu(n - 1) * u.powf(e - 2.0)?.f;
                Ok(Jet2::new(f, df, d2f))
            }
            CatalogFunction::RotatedKoebe => {
                let d = one + z;
                near_pole_guard(d)?;
                Ok(Jet2::new(
                    z / (d * d),
                    (one - z) / (d * d * d),
                    2.0 * (z - 2.0 * one) / (d * d * d * d),
                ))
            }
            CatalogFunction::PowerDistortion { alpha, beta } => {
                // With g = beta - alpha:
                // f' = (1 + (g - 1) z)(1 - z)^{-g - 1},
                // f'' = g (2 + (g - 1) z)(1 - z)^{-g - 2}.
                let g = beta - alpha;
                let u = Jet2::constant(one - z);
                let f = z * u.powf(-g)?.f;
                let df = (one + (g - 1.0) * z) * u.powf(-g - 1.0)?.f;
                let d2f = g * (2.0 * one + (g - 1.0) * z) * u.powf(-g - 2.0)?.f;
                Ok(Jet2::new(f, df, d2f))
            }
            CatalogFunction::Monomial { lambda, n } => {
                let nf = f64::from(n);
                let c = lambda / (nf * (nf + 1.0));
                Ok(Jet2::new(
                    c * z.powu(n + 1),
                    c * (nf + 1.0) * z.powu(n),
                    lambda * z.powu(n - 1),
                ))
            }
            CatalogFunction::Schild { alpha, b } => {
                // With g = 1 - alpha, u = 1 - 2bz + z^2:
                // f = z u^{-g}, f' = u^{-g} - g z u' u^{-g-1},
                // f'' = -2 g u' u^{-g-1} + g(g+1) z u'^2 u^{-g-2} - 2 g z u^{-g-1}.
                let g = 1.0 - alpha;
                let u = one - 2.0 * b * z + z * z;
                let du = 2.0 * z - 2.0 * b * one;
                let uj = Jet2::constant(u);
                let um_g = uj.powf(-g)?.f;
                let um_g1 = uj.powf(-g - 1.0)?.f;
                let um_g2 = uj.powf(-g - 2.0)?.f;
                let f = z * um_g;
                let df = um_g - g * z * du * um_g1;
                let d2f =
                    -2.0 * g * du * um_g1 + g * (g + 1.0) * z * du * du * um_g2 - 2.0 * g * z * um_g1;
                Ok(Jet2::new(f, df, d2f))
            }
            CatalogFunction::CloseToStarExtremal => {
                let d = one - z;
                near_pole_guard(d)?;
                Ok(Jet2::new(
                    z * (z + one) / d,
                    (one + 2.0 * z - z * z) / (d * d),
                    4.0 * one / (d * d * d),
                ))
            }
            CatalogFunction::MeromorphicKp { p } => {
                // Partial fractions: k_p = -p^2/((1-p^2)(z-p)) - p/((1-p^2)(1-pz)).
                let q = 1.0 - p * p;
                let zp = z - Complex64::new(p, 0.0);
                let pz = one - p * z;
                near_pole_guard(zp)?;
                near_pole_guard(pz)?;
                let f = -p * p / q / zp - p / q * (one / pz);
                let df = p * p / q / (zp * zp) - p * p / q / (pz * pz);
                let d2f = -2.0 * p * p / q / (zp * zp * zp) - 2.0 * p * p * p / q / (pz * pz * pz);
                Ok(Jet2::new(f, df, d2f))
            }
        }
    }

    /// Truncated expansion `a_1..a_order`, for the variants that are
    /// normalized power series at the origin (everything except
    /// [`CatalogFunction::Monomial`], whose `a_1` vanishes).
    pub fn series(&self, order: usize) -> Result<SeriesFunction> {
        self.validate()?;
        if order < 2 {
            return Err(Error::invalid("order", "need at least 2 coefficients"));
        }
        let zero = Complex64::new(0.0, 0.0);
        let coeffs: Vec<Complex64> = match *self {
            CatalogFunction::GeneralizedKoebe { n } => {
                // z (1 - z^n)^{-2/n}: a_{1+kn} = rising(2/n, k)/k!.
                let mut a = vec![zero; order];
                let c = 2.0 / f64::from(n);
                let mut term = 1.0;
                let mut k = 0usize;
                loop {
                    let idx = k * n as usize;
                    if idx >= order {
                        break;
                    }
                    a[idx] = Complex64::new(term, 0.0);
                    term *= (c + k as f64) / (k as f64 + 1.0);
                    k += 1;
                }
                a
            }
            CatalogFunction::RotatedKoebe => (1..=order)
                .map(|k| Complex64::new(if k % 2 == 1 { k as f64 } else { -(k as f64) }, 0.0))
                .collect(),
            CatalogFunction::PowerDistortion { alpha, beta } => {
                let g = beta - alpha;
                let mut a = Vec::with_capacity(order);
                let mut term = 1.0;
                for k in 0..order {
                    a.push(Complex64::new(term, 0.0));
                    term *= (g + k as f64) / (k as f64 + 1.0);
                }
                a
            }
            CatalogFunction::Monomial { .. } => {
                return Err(Error::invalid("variant", "monomial is not normalized"));
            }
            CatalogFunction::Schild { alpha, b } => {
                // (1 - 2bz + z^2)^{-g} coefficients via the Gegenbauer
                // recurrence (k+1) c_{k+1} = 2b(k+g) c_k - (k - 1 + 2g) c_{k-1}.
                let g = 1.0 - alpha;
                let mut c = vec![0.0f64; order];
                c[0] = 1.0;
                if order > 1 {
                    c[1] = 2.0 * b * g;
                }
                for k in 1..order - 1 {
                    let kf = k as f64;
                    c[k + 1] =
                        (2.0 * b * (kf + g) * c[k] - (kf - 1.0 + 2.0 * g) * c[k - 1]) / (kf + 1.0);
                }
                c.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
            }
            CatalogFunction::CloseToStarExtremal => (1..=order)
                .map(|k| Complex64::new(if k == 1 { 1.0 } else { 2.0 }, 0.0))
                .collect(),
            CatalogFunction::MeromorphicKp { p } => {
                // a_{1+t} = sum_{j=0..t} p^{t-2j}; converges only for |z| < p.
                (0..order)
                    .map(|t| {
                        let mut acc = 0.0;
                        for j in 0..=t {
                            acc += p.powi(t as i32 - 2 * j as i32);
                        }
                        Complex64::new(acc, 0.0)
                    })
                    .collect()
            }
        };
        let series = SeriesFunction::new(coeffs)?;
        match *self {
            // The k_p expansion only converges inside |z| < p.
            CatalogFunction::MeromorphicKp { p } => series.with_eval_radius(0.9 * p),
            _ => Ok(series),
        }
    }
}

fn check_point(z: Complex64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::invalid("z", "non-finite point"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::invalid("z", "must lie in the open unit disk"));
    }
    Ok(())
}

fn near_pole_guard(den: Complex64) -> Result<()> {
    let modulus = den.norm();
    if modulus <= 1e-13 {
        return Err(Error::NearPole { modulus });
    }
    Ok(())
}
