//! Random members of the function classes, built from Schwarz functions by
//! subordination, and the inequality suites they are tested against.
//!
//! A Schwarz function here is a finite Blaschke-type product
//! `w(z) = e^{i theta} z^m prod (z - a_i)/(1 - conj(a_i) z)` with all
//! `|a_i| < 1`; it fixes the origin and maps the disk into itself, which is
//! everything subordination needs. Witnesses for the Caratheodory-type
//! classes are Moebius images `p = (1 + A w)/(1 + B w)`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::jet::Jet2;
use crate::series::{self, SeriesFunction};

/// Largest Blaschke zero modulus drawn by the random generator; staying off
/// the boundary keeps the property tests free of degenerate cancellations.
pub const RANDOM_ZERO_RADIUS: f64 = 0.9;

/// Largest number of Blaschke zeros drawn by the random generator.
pub const RANDOM_MAX_ZEROS: usize = 4;

/// `w(z) = e^{i theta} z^m prod (z - a_i)/(1 - conj(a_i) z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzFunction {
    zero_order: u32,
    blaschke_zeros: Vec<Complex64>,
    rotation: f64,
}

impl SchwarzFunction {
    pub fn new(zero_order: u32, blaschke_zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        if zero_order == 0 {
            return Err(Error::invalid("zero_order", "must be at least 1"));
        }
        if blaschke_zeros.iter().any(|a| !a.is_finite() || a.norm() >= 1.0) {
            return Err(Error::invalid("blaschke_zeros", "need |a| < 1"));
        }
        if !rotation.is_finite() {
            return Err(Error::invalid("rotation", "must be finite"));
        }
        Ok(SchwarzFunction {
            zero_order,
            blaschke_zeros,
            rotation,
        })
    }

    /// `w(z) = z`.
    pub fn identity() -> Self {
        SchwarzFunction::power(1)
    }

    /// `w(z) = z^n`: the equality case of the subordination bounds.
    pub fn power(n: u32) -> Self {
        SchwarzFunction::new(n, Vec::new(), 0.0).unwrap()
    }

    pub fn zero_order(&self) -> u32 {
        self.zero_order
    }

    /// Draws a Schwarz function vanishing to order `zero_order`, with up to
    /// [`RANDOM_MAX_ZEROS`] zeros uniform in `|a| <= 0.9` and a uniform
    /// rotation.
    pub fn random<R: Rng>(rng: &mut R, zero_order: u32) -> Self {
        let count = rng.gen_range(0..=RANDOM_MAX_ZEROS);
        let zeros = (0..count)
            .map(|_| {
                let r = RANDOM_ZERO_RADIUS * rng.gen::<f64>().sqrt();
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(r, theta)
            })
            .collect();
        let rotation = rng.gen::<f64>() * std::f64::consts::TAU;
        SchwarzFunction::new(zero_order, zeros, rotation).unwrap()
    }

    /// Jet of `w` at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Jet2> {
        if !z.is_finite() || z.norm() >= 1.0 {
            return Err(Error::invalid("z", "must lie in the open unit disk"));
        }
        let one = Jet2::constant(Complex64::new(1.0, 0.0));
        let zj = Jet2::variable(z);
        let mut w = Jet2::monomial(z, self.zero_order)
            * Complex64::from_polar(1.0, self.rotation);
        for &a in &self.blaschke_zeros {
            let num = zj - Jet2::constant(a);
            let den = one - zj * a.conj();
            w = w * num.try_div(den)?;
        }
        Ok(w)
    }

    /// First `len` series coefficients of `w` (degree-0 based; the leading
    /// `zero_order` entries vanish).
    pub fn series(&self, len: usize) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        let mut coeffs = vec![Complex64::from_polar(1.0, self.rotation)];
        for &a in &self.blaschke_zeros {
            coeffs = series::mul(&coeffs, &[-a, Complex64::new(1.0, 0.0)], len);
            // 1/(1 - conj(a) z) = sum conj(a)^k z^k.
            let mut geo = Vec::with_capacity(len);
            let mut term = Complex64::new(1.0, 0.0);
            for _ in 0..len {
                geo.push(term);
                term *= a.conj();
            }
            coeffs = series::mul(&coeffs, &geo, len);
        }
        let mut shifted = vec![zero; len];
        for (k, &c) in coeffs.iter().enumerate() {
            let idx = k + self.zero_order as usize;
            if idx < len {
                shifted[idx] = c;
            }
        }
        shifted
    }
}

/// A member of `P_n[A, B]`: `p = (1 + A w)/(1 + B w)` with `w` vanishing to
/// order at least `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessP {
    pub a_param: f64,
    pub b_param: f64,
    pub schwarz: SchwarzFunction,
}

impl WitnessP {
    /// Requires `-1 <= B < A <= 1`.
    pub fn new(a_param: f64, b_param: f64, schwarz: SchwarzFunction) -> Result<Self> {
        if !(a_param.is_finite()
            && b_param.is_finite()
            && -1.0 <= b_param
            && b_param < a_param
            && a_param <= 1.0)
        {
            return Err(Error::invalid("A/B", "need -1 <= B < A <= 1"));
        }
        Ok(WitnessP {
            a_param,
            b_param,
            schwarz,
        })
    }

    pub fn random<R: Rng>(rng: &mut R, n: u32, a_param: f64, b_param: f64) -> Result<Self> {
        WitnessP::new(a_param, b_param, SchwarzFunction::random(rng, n))
    }

    /// Series of `p - 1 = (A - B) w / (1 + B w)`.
    pub fn p_minus_one_series(&self, len: usize) -> Vec<Complex64> {
        let w = self.schwarz.series(len);
        let scale = Complex64::new(self.a_param - self.b_param, 0.0);
        let num: Vec<Complex64> = w.iter().map(|&c| scale * c).collect();
        let mut den: Vec<Complex64> = w
            .iter()
            .map(|&c| Complex64::new(self.b_param, 0.0) * c)
            .collect();
        den[0] += Complex64::new(1.0, 0.0);
        series::div(&num, &den, len)
    }
}

/// Jet of `p = (1 + A w)/(1 + B w)` at `z`; requires the witness to vanish
/// to order at least `n` so that `p = 1 + c_n z^n + ...`.
pub fn make_p(witness: &WitnessP, n: u32, z: Complex64) -> Result<Jet2> {
    if witness.schwarz.zero_order() < n {
        return Err(Error::invalid(
            "zero_order",
            format!("need vanishing order >= {n}"),
        ));
    }
    let w = witness.schwarz.eval(z)?;
    let one = Jet2::constant(Complex64::new(1.0, 0.0));
    let num = one + w * Complex64::new(witness.a_param, 0.0);
    let den = one + w * Complex64::new(witness.b_param, 0.0);
    num.try_div(den)
}

/// Worst excess of `|p(z) - (1 - A B r^2n)/(1 - B^2 r^2n)|` over its bound
/// `(A - B) r^n / (1 - B^2 r^2n)` on sampled `|z| = r`. Non-positive (up to
/// rounding) for genuine class members.
pub fn lemma_a_violation(
    witness: &WitnessP,
    n: u32,
    r: f64,
    samples: usize,
) -> Result<f64> {
    check_circle(r, samples)?;
    let (a, b) = (witness.a_param, witness.b_param);
    let r2n = r.powi(2 * n as i32);
    let center = Complex64::new((1.0 - a * b * r2n) / (1.0 - b * b * r2n), 0.0);
    let bound = (a - b) * r.powi(n as i32) / (1.0 - b * b * r2n);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let p = make_p(witness, n, Complex64::from_polar(r, theta))?;
        worst = worst.max((p.f - center).norm() - bound);
    }
    Ok(worst)
}

/// Worst excess of `|z p'(z)/p(z)|` over `2 n r^n / (1 - r^2n)` on sampled
/// `|z| = r`, for witnesses of the positive-real-part class (`A = 1`,
/// `B = -1`).
pub fn lemma_b_violation(
    witness: &WitnessP,
    n: u32,
    r: f64,
    samples: usize,
) -> Result<f64> {
    check_circle(r, samples)?;
    if witness.a_param != 1.0 || witness.b_param != -1.0 {
        return Err(Error::invalid("A/B", "the bound holds for A = 1, B = -1"));
    }
    let rn = r.powi(n as i32);
    let bound = 2.0 * f64::from(n) * rn / (1.0 - rn * rn);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let z = Complex64::from_polar(r, theta);
        let p = make_p(witness, n, z)?;
        let ratio = guarded_norm_div(z * p.df, p.f)?;
        worst = worst.max(ratio - bound);
    }
    Ok(worst)
}

/// `|w'(z)| (1 - |z|^2) - (1 - |w(z)|^2)`: non-positive for disk self-maps.
pub fn schwarz_pick_violation(w: &SchwarzFunction, z: Complex64) -> Result<f64> {
    let jet = w.eval(z)?;
    Ok(jet.df.norm() * (1.0 - z.norm_sqr()) - (1.0 - jet.f.norm_sqr()))
}

/// Builds `f = z exp(sum c_k z^k / k)` from the series of `p - 1`, inverting
/// `z f'/f = p`.
///
/// The construction is verified by re-expanding `z f'/f` from the truncated
/// result and comparing with `p` on `|z| = 1/2`; a discrepancy above `1e-6`
/// is reported as [`Error::TruncationOverflow`].
pub fn starlike_from_p(p_minus_one: &[Complex64], order: usize) -> Result<SeriesFunction> {
    if !(2..=128).contains(&order) {
        return Err(Error::invalid("order", "need 2 <= N <= 128"));
    }
    if p_minus_one.is_empty() || p_minus_one[0].norm() != 0.0 {
        return Err(Error::invalid("p_series", "constant term must vanish"));
    }
    // log(f/z) = sum c_k z^k / k.
    let mut log_term = vec![Complex64::new(0.0, 0.0); order];
    for k in 1..order {
        if k < p_minus_one.len() {
            log_term[k] = p_minus_one[k] / (k as f64);
        }
    }
    let unit = series::exp(&log_term, order);
    let f = SeriesFunction::z_times(&unit)?;

    // Round-trip check as function values on |z| = 1/2.
    let mut loss: f64 = 0.0;
    for k in 0..16 {
        let theta = std::f64::consts::TAU * k as f64 / 16.0;
        let z = Complex64::from_polar(0.5, theta);
        let jet = f.eval(z)?;
        let ratio = z * jet.df / jet.f;
        let p_val = Complex64::new(1.0, 0.0) + series::value_at(p_minus_one, z);
        loss = loss.max((ratio - p_val).norm());
    }
    if loss > 1e-6 {
        return Err(Error::TruncationOverflow { loss });
    }
    Ok(f)
}

/// Worst shortfall of `|z f'(z)/f(z)|` below `(1 - 2r - r^2)/(1 - r^2)` on
/// sampled `|z| = r`, for close-to-star witnesses `f = z h`, `Re h > 0`.
/// Requires `r < sqrt(2) - 1`, where the bound is positive.
pub fn close_to_star_distortion_violation(
    f: &FunctionSpec,
    r: f64,
    samples: usize,
) -> Result<f64> {
    if !(r.is_finite() && 0.0 < r && r < std::f64::consts::SQRT_2 - 1.0) {
        return Err(Error::invalid("r", "need 0 < r < sqrt(2) - 1"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples", "need at least 1"));
    }
    let bound = (1.0 - 2.0 * r - r * r) / (1.0 - r * r);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let z = Complex64::from_polar(r, theta);
        let jet = f.eval(z)?;
        let ratio = guarded_norm_div(z * jet.df, jet.f)?;
        worst = worst.max(bound - ratio);
    }
    Ok(worst)
}

/// Random member of the gap-`n` starlike family as a truncated series:
/// integrate a random `P_n` witness through [`starlike_from_p`].
pub fn random_starlike_member<R: Rng>(
    rng: &mut R,
    n: u32,
    order: usize,
) -> Result<SeriesFunction> {
    let witness = WitnessP::random(rng, n, 1.0, -1.0)?;
    starlike_from_p(&witness.p_minus_one_series(order), order)
}

/// Random close-to-star witness `f = z h` with `Re h > 0`, `h(0) = 1`.
pub fn random_close_to_star_member<R: Rng>(rng: &mut R, order: usize) -> Result<SeriesFunction> {
    let witness = WitnessP::random(rng, 1, 1.0, -1.0)?;
    let mut h = witness.p_minus_one_series(order);
    h[0] += Complex64::new(1.0, 0.0);
    SeriesFunction::z_times(&h)
}

fn check_circle(r: f64, samples: usize) -> Result<()> {
    if !(r.is_finite() && 0.0 < r && r < 1.0) {
        return Err(Error::invalid("r", "must lie in (0, 1)"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples", "need at least 1"));
    }
    Ok(())
}

fn guarded_norm_div(num: Complex64, den: Complex64) -> Result<f64> {
    let tol = 1e-14 * (1.0 + num.norm());
    let modulus = den.norm();
    if modulus <= tol {
        return Err(Error::NearPole { modulus });
    }
    Ok((num / den).norm())
}
