use convkit_core::cnn::{cnn_equivalence_check, group_convolve_2d};
use serde_json::json;

use super::Ctx;
use crate::args::CnnVerb;
use crate::error::CliResult;
use crate::format::{image_from, image_json, kernel_from, ImageFile, KernelOrImage};
use crate::report::{sig6, RunReport};

pub(super) fn run(verb: CnnVerb, ctx: &mut Ctx<'_>) -> CliResult<RunReport> {
    match verb {
        CnnVerb::Conv => {
            let f = image_from(ctx.inputs.take::<ImageFile>("image")?)?;
            let g = match ctx.inputs.take::<KernelOrImage>("kernel")? {
                KernelOrImage::Kernel(k) => kernel_from(k)?.to_lattice_function(),
                KernelOrImage::Image(img) => image_from(img)?,
            };
            let mut report = RunReport::new("cnn conv");
            // stored on the bounding box of its support
            report.outputs = image_json(&group_convolve_2d(&f, &g).trimmed());
            Ok(report)
        }
        CnnVerb::Equiv => {
            let f = image_from(ctx.inputs.take::<ImageFile>("image")?)?;
            let k = kernel_from(ctx.inputs.take::<[f64; 9]>("kernel")?)?;
            let r = cnn_equivalence_check(&f, &k)?;
            let mut report = RunReport::new("cnn equiv");
            report.note(format!("max discrepancy: {}", sig6(r.discrepancy)));
            report.check_le("discrepancy", r.discrepancy, ctx.tol(0.0));
            report.outputs = json!({
                "group": image_json(&r.group),
                "sliding": image_json(&r.sliding),
                "discrepancy": r.discrepancy,
            });
            Ok(report)
        }
    }
}
