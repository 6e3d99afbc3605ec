use clap::ValueEnum;
use romik_core::dseq::{d_consensus_upto, DOptions, Pipeline};
use romik_core::rmatrix::{r_block, rinv_block, TriBlock};
use romik_core::seqcore::{taylor_polys, u_upto, v_upto};
use romik_core::Error;

use crate::output::Table;
use crate::{exit, CliError, Format, Opts, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComputeTarget {
    U,
    V,
    D,
    /// `r(n,k) = R(2n,2k)`
    R,
    /// `r^{-1}(n,k) = R^{-1}(2n,2k)`
    Rinv,
    /// Coefficients of the Taylor polynomials `p_n`
    Poly,
}

const DEFAULT_COMPUTE_N: usize = 10;

fn parse_pipeline(s: &str) -> Result<Pipeline, CliError> {
    match s.trim() {
        "recursive" => Ok(Pipeline::Recursive),
        "inverse" => Ok(Pipeline::Inverse),
        "poly" => Ok(Pipeline::Poly),
        other => Err(CliError(format!("unknown pipeline {other:?}"))),
    }
}

fn sequence(name: &'static str, values: impl IntoIterator<Item = String>) -> Table {
    Table {
        name,
        index_names: &["n"],
        value_name: "value",
        rows: values.into_iter().enumerate().map(|(n, v)| (vec![n], v)).collect(),
    }
}

/// Even-even part of a checkerboard block, listed row by row.
fn even_part(name: &'static str, block: &TriBlock, n_max: usize) -> Table {
    let rows = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| (vec![n, k], block.get(2 * n, 2 * k).to_string()))
        .collect();
    Table { name, index_names: &["n", "k"], value_name: "value", rows }
}

pub fn run(target: ComputeTarget, opts: &Opts) -> Result<Outcome, CliError> {
    let n = opts.max_n.unwrap_or(DEFAULT_COMPUTE_N);
    let guards = opts.guards();
    if n > guards.exact {
        return Err(Error::Guard { requested: n, limit: guards.exact }.into());
    }
    let table = match target {
        ComputeTarget::U => sequence("u", u_upto(n).iter().map(ToString::to_string)),
        ComputeTarget::V => sequence("v", v_upto(n)?.iter().map(ToString::to_string)),
        ComputeTarget::D => {
            let mut d_opts = DOptions { max_n: guards.exact, ..DOptions::default() };
            if let Some(names) = &opts.pipelines {
                d_opts.pipelines = names.iter().map(|s| parse_pipeline(s)).collect::<Result<_, _>>()?;
            }
            sequence("d", d_consensus_upto(n, &d_opts)?.iter().map(|c| c.value.to_string()))
        }
        ComputeTarget::R => even_part("r", &r_block(2 * n + 1), n),
        ComputeTarget::Rinv => even_part("rinv", &rinv_block(2 * n + 1), n),
        ComputeTarget::Poly => {
            let rows = taylor_polys(n)
                .iter()
                .enumerate()
                .flat_map(|(m, p)| {
                    p.coeffs().iter().enumerate().map(move |(i, c)| (vec![m, i], c.to_string())).collect::<Vec<_>>()
                })
                .collect();
            Table { name: "p", index_names: &["n", "i"], value_name: "coeff", rows }
        }
    };
    Ok(Outcome { code: exit::VERIFIED, body: table.render(opts.format.unwrap_or(Format::Csv)) })
}
