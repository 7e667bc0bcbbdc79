use convkit_core::group::FiniteAbelianGroup;
use convkit_core::recovery::{
    matched_distance, multiplicativity_defect, recover_kernel, verify_idempotents,
    ConvolutionOracle, HadamardOracle, PerturbedOracle, IDEMPOTENT_TOL,
};
use convkit_core::CMatrix;
use serde_json::json;

use super::Ctx;
use crate::args::RecoverVerb;
use crate::error::CliResult;
use crate::format::{
    cmatrix_json, complex_json, group_from, multi_from, system_from, GraphFile, GroupSpec,
    MultiFile,
};
use crate::report::{sig6, RunReport};

const DISTANCE_TOL: f64 = 1e-6;
const MULTIPLICATIVITY_PAIRS: usize = 20;

/// Characters of the group as unit-norm columns.
fn character_kernel(g: &FiniteAbelianGroup) -> CMatrix {
    let elements: Vec<_> = g.elements().collect();
    let chars = g.characters();
    let scale = 1.0 / (g.size() as f64).sqrt();
    CMatrix::from_fn(g.size(), g.size(), |i, k| {
        chars[k].eval(&elements[i]) * scale
    })
}

pub(super) fn run(
    verb: RecoverVerb,
    corrupt: Option<f64>,
    ctx: &mut Ctx<'_>,
) -> CliResult<RunReport> {
    match verb {
        RecoverVerb::Hadamard { n } => {
            let oracle = HadamardOracle { n };
            finish(
                "recover hadamard",
                &oracle,
                Some(CMatrix::identity(n)),
                corrupt,
                ctx,
            )
        }
        RecoverVerb::Group => {
            let spec: GroupSpec = ctx.inputs.take("group")?;
            let g = group_from(&spec)?;
            let reference = character_kernel(&g);
            finish("recover group", &g, Some(reference), corrupt, ctx)
        }
        RecoverVerb::Graph => {
            let file: GraphFile = ctx.inputs.take("graph")?;
            let sys = system_from(&file, None)?;
            let reference = sys.basis().clone();
            finish("recover graph", &sys, Some(reference), corrupt, ctx)
        }
        RecoverVerb::Multishift => {
            let file: MultiFile = ctx.inputs.take("multi-shift system")?;
            let ms = multi_from(&file)?;
            let reference = ms.block_kernel();
            finish("recover multishift", &ms, Some(reference), corrupt, ctx)
        }
    }
}

fn finish(
    command: &str,
    clean: &dyn ConvolutionOracle,
    reference: Option<CMatrix>,
    corrupt: Option<f64>,
    ctx: &Ctx<'_>,
) -> CliResult<RunReport> {
    let perturbed = corrupt.map(|eps| PerturbedOracle { inner: clean, eps });
    let oracle: &dyn ConvolutionOracle = match &perturbed {
        Some(p) => p,
        None => clean,
    };
    let mut report = RunReport::new(command);
    if let Some(eps) = corrupt {
        report.note(format!("oracle corrupted by {} * (x . y)", sig6(eps)));
    }
    let tol = ctx.tol(IDEMPOTENT_TOL);
    let kernel = match recover_kernel(oracle, ctx.common.seed) {
        Ok(k) => k,
        Err(e) => {
            report.note(format!("recovery failed: {e}"));
            report.check("recovery", false, f64::NAN, tol);
            return Ok(report);
        }
    };
    let idem = verify_idempotents(oracle, &kernel);
    report.note(format!(
        "idempotent deviation: {}",
        sig6(idem.max_deviation)
    ));
    report.check_le("idempotents", idem.max_deviation, tol);
    let defect = multiplicativity_defect(
        oracle,
        &kernel,
        MULTIPLICATIVITY_PAIRS,
        ctx.common.seed ^ 0x5eed,
    );
    report.check_le("multiplicativity", defect, tol);
    let distance = reference.map(|r| matched_distance(kernel.columns(), &r));
    if let Some(d) = distance {
        report.note(format!("matched distance to generator: {}", sig6(d)));
        report.check_le("matched_distance", d, ctx.tol(DISTANCE_TOL));
    }
    report.outputs = json!({
        "columns": cmatrix_json(kernel.columns()),
        "scales": complex_json(kernel.scales()),
        "draws": kernel.draws(),
        "idempotent_deviation": idem.max_deviation,
        "matched_distance": distance,
    });
    Ok(report)
}
