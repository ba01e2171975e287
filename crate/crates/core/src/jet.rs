//! Second-order complex jets.
//!
//! A [`Jet2`] carries `(f, f', f'')` of an analytic function at a point and
//! propagates them through arithmetic via the order-2 Leibniz and chain
//! rules. Evaluating a formula on `Jet2::variable(z)` therefore yields the
//! value together with both derivatives in one pass, with no symbolic step.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative scale of the division guard: a quotient is refused when
/// `|den| <= DIVIDE_TOL_SCALE * (1 + |num|)`.
pub const DIVIDE_TOL_SCALE: f64 = 1e-14;

/// Distance to the principal branch cut below which a real power is refused
/// rather than silently picking a side.
pub const BRANCH_CUT_TOL: f64 = 1e-12;

/// Value, first and second derivative of an analytic function at one point.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Jet2 {
    pub f: Complex64,
    pub df: Complex64,
    pub d2f: Complex64,
}

impl Jet2 {
    pub fn new(f: Complex64, df: Complex64, d2f: Complex64) -> Self {
        Jet2 { f, df, d2f }
    }

    /// Constant jet: both derivatives vanish.
    pub fn constant(c: Complex64) -> Self {
        Jet2::new(c, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// The independent variable seeded at `z`: `(z, 1, 0)`.
    pub fn variable(z: Complex64) -> Self {
        Jet2::new(z, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `z^n` with its exact derivatives, for integer `n >= 0`.
    pub fn monomial(z: Complex64, n: u32) -> Self {
        match n {
            0 => Jet2::constant(Complex64::new(1.0, 0.0)),
            1 => Jet2::variable(z),
            _ => {
                let nf = f64::from(n);
                Jet2::new(
                    z.powu(n),
                    nf * z.powu(n - 1),
                    nf * (nf - 1.0) * z.powu(n - 2),
                )
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite() && self.df.is_finite() && self.d2f.is_finite()
    }

    /// Quotient jet. Fails with [`Error::NearPole`] when the denominator value
    /// is within `DIVIDE_TOL_SCALE * (1 + |num|)` of zero.
    pub fn try_div(self, den: Jet2) -> Result<Jet2> {
        let tol = DIVIDE_TOL_SCALE * (1.0 + self.f.norm());
        let modulus = den.f.norm();
        if modulus <= tol {
            return Err(Error::NearPole { modulus });
        }
        // From a = q b: q' = (a' - q b')/b and q'' = (a'' - 2 q' b' - q b'')/b.
        let q = self.f / den.f;
        let dq = (self.df - q * den.df) / den.f;
        let d2q = (self.d2f - 2.0 * dq * den.df - q * den.d2f) / den.f;
        Ok(Jet2::new(q, dq, d2q))
    }

    /// Real power with the principal branch of the logarithm.
    ///
    /// Fails with [`Error::BranchCut`] when the base value lies within
    /// `BRANCH_CUT_TOL` of the cut `(-inf, 0]` (which also covers a base of
    /// zero, where negative powers blow up).
    pub fn powf(self, exponent: f64) -> Result<Jet2> {
        let distance = distance_to_cut(self.f);
        if distance <= BRANCH_CUT_TOL {
            return Err(Error::BranchCut { distance });
        }
        let w = self.f.powf(exponent);
        let wm1 = self.f.powf(exponent - 1.0);
        let wm2 = self.f.powf(exponent - 2.0);
        let dw = exponent * wm1 * self.df;
        let d2w = exponent * (exponent - 1.0) * wm2 * self.df * self.df + exponent * wm1 * self.d2f;
        Ok(Jet2::new(w, dw, d2w))
    }
}

/// Distance from `z` to the ray `(-inf, 0]`.
fn distance_to_cut(z: Complex64) -> f64 {
    if z.re <= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

impl std::ops::Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f + rhs.f, self.df + rhs.df, self.d2f + rhs.d2f)
    }
}

impl std::ops::Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f - rhs.f, self.df - rhs.df, self.d2f - rhs.d2f)
    }
}

impl std::ops::Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.f, -self.df, -self.d2f)
    }
}

impl std::ops::Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        // Leibniz to order 2: (ab)'' = a''b + 2a'b' + ab''.
        Jet2::new(
            self.f * rhs.f,
            self.df * rhs.f + self.f * rhs.df,
            self.d2f * rhs.f + 2.0 * self.df * rhs.df + self.f * rhs.d2f,
        )
    }
}

impl std::ops::Mul<Complex64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Complex64) -> Jet2 {
        Jet2::new(self.f * rhs, self.df * rhs, self.d2f * rhs)
    }
}

impl std::ops::Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        Jet2::new(self.f * rhs, self.df * rhs, self.d2f * rhs)
    }
}
