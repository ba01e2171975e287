//! Record types and emitters for the command-line surface.
//!
//! Single results go out as one-line JSON records; sweeps and grids go out
//! as CSV. All numbers are printed with 17 significant digits so that
//! parsing them back reproduces the exact doubles.

use crate::catalog::CatalogFunction;
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::functional::ConcavityParam;
use crate::phi::{closed_form_root, least_root, PhiSpec, RadiusResult};
use crate::reference::quoted_expression_mismatch;
use crate::scan::{empirical_concavity_radius_with, min_re_tf_on_circle, ScanOptions};

pub const FLAG_MATCH: &str = "MATCH";
pub const FLAG_EXTREMAL_LOOSE: &str = "EXTREMAL_LOOSE";
pub const FLAG_EXTREMAL_BELOW_SOLVER: &str = "EXTREMAL_BELOW_SOLVER";
pub const FLAG_NORMALIZATION_VIOLATION: &str = "NORMALIZATION_VIOLATION";
pub const FLAG_PAPER_EXPR_MISMATCH: &str = "PAPER_EXPR_MISMATCH";

/// Radii within this distance count as matching.
pub const MATCH_TOLERANCE: f64 = 1e-5;

/// Quoted-display disagreements above this are flagged.
pub const EXPR_MISMATCH_TOLERANCE: f64 = 1e-8;

/// The function families addressable from the command line.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ClassId {
    S0n,
    Kab,
    StronglyStarlike,
    StarlikeOrder,
    CloseToStar,
}

impl ClassId {
    pub fn parse(s: &str) -> Option<ClassId> {
        match s {
            "s0n" => Some(ClassId::S0n),
            "kab" => Some(ClassId::Kab),
            "strongly_starlike" => Some(ClassId::StronglyStarlike),
            "starlike_order" => Some(ClassId::StarlikeOrder),
            "close_to_star" => Some(ClassId::CloseToStar),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassId::S0n => "s0n",
            ClassId::Kab => "kab",
            ClassId::StronglyStarlike => "strongly_starlike",
            ClassId::StarlikeOrder => "starlike_order",
            ClassId::CloseToStar => "close_to_star",
        }
    }

    /// Names of the class parameters, in CSV column order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ClassId::S0n => &["n"],
            ClassId::Kab => &["alpha", "beta"],
            ClassId::StronglyStarlike => &["beta"],
            ClassId::StarlikeOrder => &["alpha"],
            ClassId::CloseToStar => &[],
        }
    }
}

/// A named class parameter, kept in declaration order for echoes.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum ParamValue {
    Int(u32),
    Real(f64),
}

/// One radius query as received from the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusQuery {
    pub class: ClassId,
    pub params: Vec<(&'static str, ParamValue)>,
    pub a: f64,
    pub tol: f64,
}

impl RadiusQuery {
    /// Builds the radius function for the query, validating every parameter.
    pub fn phi_spec(&self) -> Result<PhiSpec> {
        let a = ConcavityParam::new(self.a)?;
        let get = |name: &str| -> Result<f64> {
            self.params
                .iter()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| match v {
                    ParamValue::Int(i) => f64::from(*i),
                    ParamValue::Real(x) => *x,
                })
                .ok_or_else(|| Error::invalid("params", format!("missing parameter {name}")))
        };
        match self.class {
            ClassId::S0n => {
                let n = get("n")?;
                if n < 1.0 || n.fract() != 0.0 || n > f64::from(u32::MAX) {
                    return Err(Error::invalid("n", "must be a positive integer"));
                }
                PhiSpec::phi1(n as u32, a)
            }
            ClassId::Kab => PhiSpec::phi2(get("alpha")?, get("beta")?, a),
            ClassId::StronglyStarlike => PhiSpec::phi3(get("beta")?, a),
            ClassId::StarlikeOrder => PhiSpec::phi4(get("alpha")?, a),
            ClassId::CloseToStar => Ok(PhiSpec::phi6(a)),
        }
    }
}

/// One verification/radius record, emitted as a single JSON line.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRecord {
    pub query: RadiusQuery,
    pub solver_radius: f64,
    pub converged: bool,
    pub residual: f64,
    pub iterations: u32,
    pub closed_form: Option<f64>,
    pub empirical_radius: Option<f64>,
    pub extremal_id: String,
    pub argmin_angle: Option<f64>,
    pub flags: Vec<String>,
}

impl ReportRecord {
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(512);
        out.push_str("{\"query\":{\"class\":");
        push_json_string(&mut out, self.query.class.name());
        out.push_str(",\"params\":{");
        for (i, (name, value)) in self.query.params.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            push_json_string(&mut out, name);
            out.push(':');
            match value {
                ParamValue::Int(n) => out.push_str(&n.to_string()),
                ParamValue::Real(x) => out.push_str(&fmt_g17(*x)),
            }
        }
        out.push_str("},\"A\":");
        out.push_str(&fmt_g17(self.query.a));
        out.push_str(",\"tol\":");
        out.push_str(&fmt_g17(self.query.tol));
        out.push_str("},\"solver_radius\":");
        out.push_str(&fmt_g17(self.solver_radius));
        out.push_str(",\"converged\":");
        out.push_str(if self.converged { "true" } else { "false" });
        out.push_str(",\"residual\":");
        out.push_str(&fmt_g17(self.residual));
        out.push_str(",\"iterations\":");
        out.push_str(&self.iterations.to_string());
        out.push_str(",\"closed_form\":");
        push_opt_float(&mut out, self.closed_form);
        out.push_str(",\"empirical_radius\":");
        push_opt_float(&mut out, self.empirical_radius);
        out.push_str(",\"extremal_id\":");
        push_json_string(&mut out, &self.extremal_id);
        out.push_str(",\"argmin_angle\":");
        push_opt_float(&mut out, self.argmin_angle);
        out.push_str(",\"flags\":[");
        for (i, flag) in self.flags.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            push_json_string(&mut out, flag);
        }
        out.push_str("]}");
        out
    }
}

/// Summary of one witness-suite run, emitted as a single JSON line.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSummary {
    pub class: ClassId,
    pub n: u32,
    pub count: u32,
    pub seed: u64,
    pub violations: u32,
    pub max_violation: f64,
    pub min_margin: f64,
    pub solver_radius: f64,
    /// Per-suite maxima, in a fixed order.
    pub suite_maxima: Vec<(&'static str, f64)>,
}

impl WitnessSummary {
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(384);
        out.push_str("{\"class\":");
        push_json_string(&mut out, self.class.name());
        out.push_str(",\"n\":");
        out.push_str(&self.n.to_string());
        out.push_str(",\"count\":");
        out.push_str(&self.count.to_string());
        out.push_str(",\"seed\":");
        out.push_str(&self.seed.to_string());
        out.push_str(",\"violations\":");
        out.push_str(&self.violations.to_string());
        out.push_str(",\"max_violation\":");
        out.push_str(&fmt_g17(self.max_violation));
        out.push_str(",\"min_margin\":");
        out.push_str(&fmt_g17(self.min_margin));
        out.push_str(",\"solver_radius\":");
        out.push_str(&fmt_g17(self.solver_radius));
        out.push_str(",\"suites\":{");
        for (i, (name, value)) in self.suite_maxima.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            push_json_string(&mut out, name);
            out.push(':');
            out.push_str(&fmt_g17(*value));
        }
        out.push_str("}}");
        out
    }
}

/// 17 significant digits: enough to reparse the exact double.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_opt_float(out: &mut String, v: Option<f64>) {
    match v {
        Some(x) => out.push_str(&fmt_g17(x)),
        None => out.push_str("null"),
    }
}

fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Extremal-related knobs for verification runs.
#[derive(Copy, Clone, Debug)]
pub struct VerifyOptions {
    /// Circle-scan sample count.
    pub samples: usize,
    /// Bisection tolerance for the empirical radius.
    pub radius_tol: f64,
    /// Moment parameter of the strongly-starlike extremal.
    pub lambda: f64,
    /// Vanishing order of the strongly-starlike extremal.
    pub monomial_n: u32,
    /// Second parameter of the starlike-order extremal.
    pub b: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: crate::scan::DEFAULT_SAMPLES,
            radius_tol: crate::scan::DEFAULT_RADIUS_TOL,
            lambda: 1.0,
            monomial_n: 1,
            b: -1.0,
        }
    }
}

/// The catalog extremals a verification run probes for a class. The gap-one
/// family reports both orientations of its extremal; the rotated one attains
/// the bound on the negative real axis.
pub fn verify_extremals(query: &RadiusQuery, opts: &VerifyOptions) -> Result<Vec<CatalogFunction>> {
    let real = |name: &str| -> f64 {
        query
            .params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| match v {
                ParamValue::Int(i) => f64::from(*i),
                ParamValue::Real(x) => *x,
            })
            .unwrap_or(0.0)
    };
    let list = match query.class {
        ClassId::S0n => {
            let n = real("n") as u32;
            if n == 1 {
                vec![
                    CatalogFunction::RotatedKoebe,
                    CatalogFunction::GeneralizedKoebe { n: 1 },
                ]
            } else {
                vec![CatalogFunction::GeneralizedKoebe { n }]
            }
        }
        ClassId::Kab => vec![CatalogFunction::PowerDistortion {
            alpha: real("alpha"),
            beta: real("beta"),
        }],
        ClassId::StronglyStarlike => vec![CatalogFunction::Monomial {
            lambda: opts.lambda,
            n: opts.monomial_n,
        }],
        ClassId::StarlikeOrder => vec![CatalogFunction::Schild {
            alpha: real("alpha"),
            b: opts.b,
        }],
        ClassId::CloseToStar => vec![CatalogFunction::CloseToStarExtremal],
    };
    for c in &list {
        c.validate()?;
    }
    Ok(list)
}

/// Runs the solver and, for each extremal of the class, the empirical
/// circle-scan radius; produces one record per extremal with comparison
/// flags.
pub fn run_verify(query: &RadiusQuery, opts: &VerifyOptions) -> Result<Vec<ReportRecord>> {
    let phi = query.phi_spec()?;
    let solver = least_root(&phi, query.tol)?;
    let cf = closed_form_root(&phi);
    let a = ConcavityParam::new(query.a)?;

    let mut records = Vec::new();
    for extremal in verify_extremals(query, opts)? {
        let mut flags: Vec<String> = Vec::new();
        let f: FunctionSpec = extremal.clone().into();

        if !f.normalized_at_origin() {
            flags.push(FLAG_NORMALIZATION_VIOLATION.to_string());
        }
        if let Some(mismatch) = quoted_expression_mismatch(&extremal, a) {
            if mismatch? > EXPR_MISMATCH_TOLERANCE {
                flags.push(FLAG_PAPER_EXPR_MISMATCH.to_string());
            }
        }

        let scan_opts = ScanOptions {
            samples: opts.samples,
            tol: opts.radius_tol,
            ceiling: None,
        };
        let (empirical, argmin) = match empirical_concavity_radius_with(&f, a, scan_opts) {
            Ok(res) => {
                let angle = min_re_tf_on_circle(&f, a, res.value, opts.samples)?.argmin_angle;
                (Some(res.value), Some(angle))
            }
            Err(Error::NotPositiveAtOrigin { .. }) => (None, None),
            Err(e) => return Err(e),
        };

        if let Some(emp) = empirical {
            let delta = emp - solver.value;
            if delta.abs() <= MATCH_TOLERANCE {
                flags.push(FLAG_MATCH.to_string());
            } else if delta > 0.0 {
                flags.push(FLAG_EXTREMAL_LOOSE.to_string());
            } else {
                flags.push(FLAG_EXTREMAL_BELOW_SOLVER.to_string());
            }
        }

        records.push(ReportRecord {
            query: query.clone(),
            solver_radius: solver.value,
            converged: solver.converged,
            residual: solver.residual,
            iterations: solver.iterations,
            closed_form: cf,
            empirical_radius: empirical,
            extremal_id: extremal.id(),
            argmin_angle: argmin,
            flags,
        });
    }
    Ok(records)
}

/// Runs just the solver side, for the `radius` subcommand.
pub fn run_radius(query: &RadiusQuery) -> Result<(ReportRecord, RadiusResult)> {
    let phi = query.phi_spec()?;
    let solver = least_root(&phi, query.tol)?;
    let cf = closed_form_root(&phi);
    let extremal_id = verify_extremals(query, &VerifyOptions::default())?
        .first()
        .map(|c| c.id())
        .unwrap_or_default();
    let record = ReportRecord {
        query: query.clone(),
        solver_radius: solver.value,
        converged: solver.converged,
        residual: solver.residual,
        iterations: solver.iterations,
        closed_form: cf,
        empirical_radius: None,
        extremal_id,
        argmin_angle: None,
        flags: Vec::new(),
    };
    Ok((record, solver))
}
