use convkit_core::lattice::MeetSemilattice;
use convkit_core::Error;
use serde_json::json;

use super::Ctx;
use crate::args::LatticeVerb;
use crate::error::{CliError, CliResult};
use crate::format::{imatrix_json, lattice_from, LatticeFile, VectorFile};
use crate::report::RunReport;

fn load(ctx: &mut Ctx<'_>) -> CliResult<MeetSemilattice> {
    let file: LatticeFile = ctx.inputs.take("lattice")?;
    Ok(lattice_from(&file)?)
}

/// Structural defects worth naming to the user, as opposed to malformed input.
fn describe(e: &Error) -> Option<String> {
    Some(match *e {
        Error::NoMeet(a, b) => format!("elements {a} and {b} have no meet"),
        Error::NotAntisymmetric(a, b) => format!("elements {a} and {b} are each below the other"),
        Error::NotReflexive(a) => format!("element {a} is not below itself"),
        Error::NotTransitive(a, b, c) => format!("{a} <= {b} <= {c} but not {a} <= {c}"),
        _ => return None,
    })
}

pub(super) fn run(verb: LatticeVerb, ctx: &mut Ctx<'_>) -> CliResult<RunReport> {
    match verb {
        LatticeVerb::Validate => {
            let file: LatticeFile = ctx.inputs.take("lattice")?;
            let mut report = RunReport::new("lattice validate");
            match lattice_from(&file) {
                Ok(lat) => {
                    report.note(format!("meet-semilattice with {} elements", lat.len()));
                    report.check("meet_semilattice", true, 0.0, 0.0);
                    report.outputs = json!({
                        "n": lat.len(),
                        "bottom": lat.bottom(),
                        "top": lat.top(),
                        "linear_extension": lat.linear_extension(),
                    });
                }
                Err(e) => match describe(&e) {
                    Some(msg) => {
                        report.note(msg);
                        report.check("meet_semilattice", false, 1.0, 0.0);
                    }
                    None => return Err(CliError::Core(e)),
                },
            }
            Ok(report)
        }
        LatticeVerb::Shifts => {
            let lat = load(ctx)?;
            let shifts = (0..lat.len())
                .map(|a| lat.shift_operator(a).map(|t| imatrix_json(&t)))
                .collect::<Result<Vec<_>, _>>()?;
            let c = lat.check_commutation();
            let mut report = RunReport::new("lattice shifts");
            report.note(format!(
                "{}/{} products T_a T_b = T_(a^b) hold",
                c.pairs_checked - c.violations.len(),
                c.pairs_checked
            ));
            report.check(
                "commutation_violations",
                c.passed(),
                c.violations.len() as f64,
                0.0,
            );
            report.outputs = json!({ "shifts": shifts, "violations": c.violations });
            Ok(report)
        }
        LatticeVerb::Diagonalize => {
            let lat = load(ctx)?;
            let d = lat.diagonalize_shifts();
            let identities = d.conjugation_identities(&lat);
            let holding = identities.iter().filter(|&&ok| ok).count();
            let mut report = RunReport::new("lattice diagonalize");
            report.note(format!(
                "{holding}/{} conjugation identities hold",
                identities.len()
            ));
            report.check(
                "conjugation_failures",
                holding == identities.len(),
                (identities.len() - holding) as f64,
                0.0,
            );
            let inverse = d.is_inverse_pair();
            report.check(
                "zeta_moebius_inverse",
                inverse,
                if inverse { 0.0 } else { 1.0 },
                0.0,
            );
            report.outputs = json!({
                "zeta": imatrix_json(&d.zeta),
                "moebius": imatrix_json(&d.moebius),
                "responses": d.responses,
            });
            Ok(report)
        }
        LatticeVerb::Conv => {
            let lat = load(ctx)?;
            let h = ctx.inputs.take::<VectorFile>("filter")?.real("filter")?;
            let s = ctx.inputs.take::<VectorFile>("signal")?.real("signal")?;
            let mut report = RunReport::new("lattice conv");
            report.outputs = json!({ "values": lat.convolve(&h, &s)? });
            Ok(report)
        }
    }
}
