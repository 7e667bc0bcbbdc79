use convkit_core::multi_shift::{MultiShiftSystem, GRAM_FLAG_TOL};
use serde_json::json;

use super::Ctx;
use crate::args::MultiVerb;
use crate::error::CliResult;
use crate::format::{multi_from, real_matrix_from, rmatrix_json, MultiFile, Scalar, VectorFile};
use crate::report::{sig6, RunReport};

fn load(ctx: &mut Ctx<'_>) -> CliResult<MultiShiftSystem> {
    let file: MultiFile = ctx.inputs.take("multi-shift system")?;
    multi_from(&file)
}

fn load_signal(ctx: &mut Ctx<'_>, what: &str) -> CliResult<convkit_core::RMatrix> {
    let rows: Vec<Vec<Scalar>> = ctx.inputs.take(what)?;
    real_matrix_from(&rows, what)
}

pub(super) fn run(verb: MultiVerb, ctx: &mut Ctx<'_>) -> CliResult<RunReport> {
    let ms = load(ctx)?;
    match verb {
        MultiVerb::Conv => {
            let a = load_signal(ctx, "first multi-signal")?;
            let b = load_signal(ctx, "second multi-signal")?;
            let mut report = RunReport::new("multi conv");
            report.outputs = rmatrix_json(&ms.multi_convolve(&a, &b)?);
            Ok(report)
        }
        MultiVerb::Characters => {
            let m = load_signal(ctx, "multi-signal")?;
            let values = ms.characters(&m)?;
            let per_system: Vec<&[f64]> = values.chunks(ms.n()).collect();
            let mut report = RunReport::new("multi characters");
            report.outputs = json!({ "characters": per_system });
            Ok(report)
        }
        MultiVerb::Composite => {
            let x = ctx.inputs.take::<VectorFile>("signal")?.real("signal")?;
            let r = ms.composite_transform(&x)?;
            let mut report = RunReport::new("multi composite");
            report.note(format!("gram deviation: {}", sig6(r.gram_deviation)));
            if r.non_orthogonal {
                report.note(format!(
                    "not an orthogonal change of basis (deviation above {})",
                    sig6(GRAM_FLAG_TOL)
                ));
            }
            report.outputs = json!({
                "values": r.coefficients,
                "gram_deviation": r.gram_deviation,
                "non_orthogonal": r.non_orthogonal,
            });
            Ok(report)
        }
    }
}
