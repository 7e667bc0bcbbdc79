mod cnn;
mod graph;
mod group;
mod lattice;
mod multi;
mod recover;

use crate::args::{Cli, Common, Domain};
use crate::error::CliResult;
use crate::format::Inputs;
use crate::report::{InputDigest, RunReport};

/// Per-invocation state shared by every command.
pub(crate) struct Ctx<'a> {
    pub inputs: Inputs,
    pub common: &'a Common,
}

impl Ctx<'_> {
    pub fn tol(&self, default: f64) -> f64 {
        self.common.tol.unwrap_or(default)
    }
}

pub fn dispatch(cli: &Cli) -> CliResult<RunReport> {
    let mut ctx = Ctx {
        inputs: Inputs::new(cli.common.inputs.clone()),
        common: &cli.common,
    };
    let mut report = match &cli.domain {
        Domain::Group { verb } => group::run(*verb, &mut ctx)?,
        Domain::Graph { shift, verb } => graph::run(verb, shift.as_deref(), &mut ctx)?,
        Domain::Recover { corrupt, verb } => recover::run(*verb, *corrupt, &mut ctx)?,
        Domain::Lattice { verb } => lattice::run(*verb, &mut ctx)?,
        Domain::Cnn { verb } => cnn::run(*verb, &mut ctx)?,
        Domain::Multi { verb } => multi::run(*verb, &mut ctx)?,
    };
    report.inputs = ctx
        .inputs
        .finish()?
        .into_iter()
        .map(|(path, sha256)| InputDigest { path, sha256 })
        .collect();
    Ok(report)
}
