use convkit_core::graph::{DofReport, GraphShiftSystem, PolynomialFilter, FIT_TOL};
use convkit_core::{Complex64, Error};
use serde_json::json;

use super::Ctx;
use crate::args::GraphVerb;
use crate::error::CliResult;
use crate::format::{cmatrix_json, complex_json, matrix_from, system_from, GraphFile, VectorFile};
use crate::report::{sig6, RunReport};

const COMMUTATOR_TOL: f64 = 1e-9;
/// Relative size below which trailing certificate coefficients are dropped.
const TRIM_TOL: f64 = 1e-9;

fn load_system(ctx: &mut Ctx<'_>, shift: Option<&str>) -> CliResult<GraphShiftSystem> {
    let file: GraphFile = ctx.inputs.take("graph")?;
    system_from(&file, shift)
}

fn load_vector(ctx: &mut Ctx<'_>, what: &str) -> CliResult<Vec<Complex64>> {
    Ok(ctx.inputs.take::<VectorFile>(what)?.complex())
}

fn coeff_text(p: &PolynomialFilter) -> String {
    let parts: Vec<String> = p
        .coeffs()
        .iter()
        .map(|c| {
            if c.im == 0.0 {
                sig6(c.re)
            } else {
                format!("{}{:+}i", sig6(c.re), sig6(c.im))
            }
        })
        .collect();
    parts.join(", ")
}

pub(super) fn run(
    verb: &GraphVerb,
    shift: Option<&str>,
    ctx: &mut Ctx<'_>,
) -> CliResult<RunReport> {
    match verb {
        GraphVerb::Gft => {
            let sys = load_system(ctx, shift)?;
            let x = load_vector(ctx, "signal")?;
            let mut report = RunReport::new("graph gft");
            report.outputs = json!({
                "values": complex_json(&sys.gft(&x)?),
                "eigenvalues": complex_json(sys.eigenvalues()),
            });
            Ok(report)
        }
        GraphVerb::Igft => {
            let sys = load_system(ctx, shift)?;
            let xh = load_vector(ctx, "spectrum")?;
            let mut report = RunReport::new("graph igft");
            report.outputs = json!({ "values": complex_json(&sys.igft(&xh)?) });
            Ok(report)
        }
        GraphVerb::Conv => {
            let sys = load_system(ctx, shift)?;
            let x = load_vector(ctx, "first signal")?;
            let y = load_vector(ctx, "second signal")?;
            let mut report = RunReport::new("graph conv");
            report.outputs = json!({ "values": complex_json(&sys.spectral_convolve(&x, &y)?) });
            Ok(report)
        }
        GraphVerb::FitPoly => {
            let sys = load_system(ctx, shift)?;
            let x = load_vector(ctx, "signal")?;
            let tol = ctx.tol(FIT_TOL);
            let mut report = RunReport::new("graph fit-poly");
            match sys.fit_polynomial(&x) {
                Ok(p) => {
                    let residual = p
                        .eval_matrix(sys.shift())?
                        .max_abs_diff(&sys.filter_matrix(&x)?);
                    report.note(format!("coefficients: {}", coeff_text(&p)));
                    report.note(format!("residual: {}", sig6(residual)));
                    report.check_le("fit_residual", residual, tol);
                    report.outputs = json!({
                        "coefficients": complex_json(p.coeffs()),
                        "residual": residual,
                    });
                }
                Err(Error::IllConditioned { residual, .. }) => {
                    report.note(format!("residual: {}", sig6(residual)));
                    report.check_le("fit_residual", residual, tol);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(report)
        }
        GraphVerb::ShiftInvariant => {
            let sys = load_system(ctx, shift)?;
            let rows: Vec<Vec<crate::format::Scalar>> = ctx.inputs.take("matrix")?;
            let m = matrix_from(&rows, "matrix")?;
            let tol = ctx.tol(COMMUTATOR_TOL);
            let r = sys.is_shift_invariant(&m, tol)?;
            let certificate = r.certificate.map(|p| p.trimmed(TRIM_TOL));
            let mut report = RunReport::new("graph shift-invariant");
            if let Some(p) = &certificate {
                report.note(format!("certificate: {}", coeff_text(p)));
            } else if r.invariant {
                report.note("no certificate: the shift has a repeated eigenvalue");
            }
            report.check_le("commutator", r.commutator, tol);
            report.outputs = json!({
                "commutator": r.commutator,
                "invariant": r.invariant,
                "certificate": certificate.map(|p| complex_json(p.coeffs())),
            });
            Ok(report)
        }
        GraphVerb::Gcn { coeffs } => {
            let sys = load_system(ctx, shift)?;
            let x: Vec<Vec<crate::format::Scalar>> = ctx.inputs.take("feature matrix")?;
            let w: Vec<Vec<crate::format::Scalar>> = ctx.inputs.take("weight matrix")?;
            let p = PolynomialFilter::from_real(coeffs);
            let out = sys.gcn_layer(
                &matrix_from(&x, "feature matrix")?,
                &p,
                &matrix_from(&w, "weight matrix")?,
            )?;
            let mut report = RunReport::new("graph gcn");
            report.outputs = cmatrix_json(&out);
            Ok(report)
        }
        GraphVerb::Dof { degree } => {
            let dof = if ctx.inputs.remaining() > 0 {
                load_system(ctx, shift)?.dof_report(*degree)
            } else {
                DofReport::new(*degree)
            };
            let mut report = RunReport::new("graph dof");
            report.note(format!(
                "polynomial: {}, stencil3x3: {}",
                dof.polynomial_params, dof.stencil3x3_params
            ));
            if let Some(k) = dof.max_local_kernel_params {
                report.note(format!("free local kernel at the busiest node: {k}"));
            }
            report.outputs = json!({
                "degree": dof.degree,
                "polynomial_params": dof.polynomial_params,
                "stencil3x3_params": dof.stencil3x3_params,
                "max_local_kernel_params": dof.max_local_kernel_params,
            });
            Ok(report)
        }
    }
}
