//! A function under study: either a catalog entry or a truncated series.

use num_complex::Complex64;

use crate::catalog::CatalogFunction;
use crate::error::Result;
use crate::jet::Jet2;
use crate::series::SeriesFunction;

/// Ceiling used for radius scans of functions analytic on the whole disk.
pub const GENERAL_SCAN_CEILING: f64 = 0.999;

/// Ceiling for the close-to-star extremal, whose `f'` vanishes at
/// `|z| = sqrt(2) - 1`.
pub fn close_to_star_ceiling() -> f64 {
    std::f64::consts::SQRT_2 - 1.0 - 1e-9
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Catalog(CatalogFunction),
    Series(SeriesFunction),
}

impl FunctionSpec {
    pub fn eval(&self, z: Complex64) -> Result<Jet2> {
        match self {
            FunctionSpec::Catalog(c) => c.eval(z),
            FunctionSpec::Series(s) => s.eval(z),
        }
    }

    pub fn id(&self) -> String {
        match self {
            FunctionSpec::Catalog(c) => c.id(),
            FunctionSpec::Series(s) => format!("series(order={})", s.order()),
        }
    }

    /// Largest circle radius a scan may probe for this function.
    pub fn scan_ceiling(&self) -> f64 {
        match self {
            FunctionSpec::Catalog(CatalogFunction::CloseToStarExtremal) => close_to_star_ceiling(),
            FunctionSpec::Catalog(_) => GENERAL_SCAN_CEILING,
            // Back off enough that circle points rounded up by from_polar
            // still evaluate.
            FunctionSpec::Series(s) => (s.eval_radius() - 1e-9).min(GENERAL_SCAN_CEILING),
        }
    }

    /// Whether `f(0) = 0` and `f'(0) = 1` hold numerically.
    pub fn normalized_at_origin(&self) -> bool {
        match self.eval(Complex64::new(0.0, 0.0)) {
            Ok(jet) => {
                jet.f.norm() <= 1e-12 && (jet.df - Complex64::new(1.0, 0.0)).norm() <= 1e-12
            }
            Err(_) => false,
        }
    }
}

impl From<CatalogFunction> for FunctionSpec {
    fn from(c: CatalogFunction) -> Self {
        FunctionSpec::Catalog(c)
    }
}

impl From<SeriesFunction> for FunctionSpec {
    fn from(s: SeriesFunction) -> Self {
        FunctionSpec::Series(s)
    }
}
