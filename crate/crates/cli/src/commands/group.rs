use convkit_core::group::{self, GroupSignal};
use serde_json::json;

use super::Ctx;
use crate::args::GroupVerb;
use crate::error::CliResult;
use crate::format::{signal_from, signal_json, SignalFile};
use crate::report::RunReport;

const ROUND_TRIP_TOL: f64 = 1e-9;
const PLANCHEREL_TOL: f64 = 1e-9;

fn load(ctx: &mut Ctx<'_>, what: &str) -> CliResult<GroupSignal> {
    signal_from(ctx.inputs.take::<SignalFile>(what)?)
}

fn max_diff(a: &GroupSignal, b: &GroupSignal) -> f64 {
    convkit_core::numeric::max_abs_diff(a.values(), b.values())
}

pub(super) fn run(verb: GroupVerb, ctx: &mut Ctx<'_>) -> CliResult<RunReport> {
    match verb {
        GroupVerb::Dft => {
            let f = load(ctx, "signal")?;
            let fh = group::fourier(&f);
            let mut report = RunReport::new("group dft");
            report.check_le(
                "round_trip",
                max_diff(&group::inverse_fourier(&fh), &f),
                ctx.tol(ROUND_TRIP_TOL),
            );
            report.outputs = signal_json(&fh);
            Ok(report)
        }
        GroupVerb::Idft => {
            let fh = load(ctx, "spectrum")?;
            let f = group::inverse_fourier(&fh);
            let mut report = RunReport::new("group idft");
            report.check_le(
                "round_trip",
                max_diff(&group::fourier(&f), &fh),
                ctx.tol(ROUND_TRIP_TOL),
            );
            report.outputs = signal_json(&f);
            Ok(report)
        }
        GroupVerb::Conv => {
            let f = load(ctx, "first signal")?;
            let h = load(ctx, "second signal")?;
            let mut report = RunReport::new("group conv");
            report.outputs = signal_json(&group::convolve(&f, &h)?);
            Ok(report)
        }
        GroupVerb::Plancherel => {
            let f = load(ctx, "signal")?;
            let p = group::plancherel(&f);
            let mut report = RunReport::new("group plancherel");
            report.note(format!(
                "sum |f|^2 = {}, (1/|A|) sum |f^|^2 = {}",
                crate::report::sig6(p.signal_energy),
                crate::report::sig6(p.spectral_energy)
            ));
            report.check_le("plancherel_gap", p.relative_gap, ctx.tol(PLANCHEREL_TOL));
            report.outputs = json!({
                "signal_energy": p.signal_energy,
                "spectral_energy": p.spectral_energy,
                "relative_gap": p.relative_gap,
            });
            Ok(report)
        }
    }
}
