//! Dispatch of a validated [`RunConfig`] to the library, producing one JSON document.

use fermispin::bell::{chsh_value_full_with, Route};
use fermispin::entanglement::negativity_measure_with;
use fermispin::reduction::{pair_correlation_numeric, TwoSpinWeights, TwoSpinWeightsRecord};
use fermispin::rho::singlet_dimension;
use fermispin::serde_rational::AsRecord;
use fermispin::spin::SpinBasisState;
use fermispin::{
    chsh_value_reduced, pair_correlation, partial_trace, sylvester_witness, von_neumann_entropy,
    Builder, ExactDensityMatrix, ExactMatrix, Limits, ParentSize, Rational,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cache::{self, CacheOutcome, MatrixCache};
use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report;

/// Largest N for which `correlate` also evaluates the correlation from an explicit build.
pub const NUMERIC_CORRELATION_MAX_N: u64 = 10;

pub fn rational(x: &Rational) -> Value {
    serde_json::to_value(AsRecord(x)).expect("rational records serialize")
}

fn to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn label(index: usize, n: usize) -> String {
    SpinBasisState::new(index as u64, n)
        .map(|s| s.to_string())
        .unwrap_or_default()
}

fn nonzero_entries(m: &ExactMatrix, n: usize) -> Vec<Value> {
    let dim = m.dim();
    let mut out = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            if m.numer_at(r, c) != 0 {
                out.push(json!({
                    "row": r,
                    "col": c,
                    "row_label": label(r, n),
                    "col_label": label(c, n),
                    "value": rational(&m.entry(r, c)),
                }));
            }
        }
    }
    out
}

/// Hex SHA-256 of the cache encoding; identifies a matrix byte-for-byte.
pub fn content_digest(builder: Builder, rho: &ExactDensityMatrix) -> String {
    hex::encode(Sha256::digest(cache::encode(builder, rho)))
}

fn outcome_name(o: CacheOutcome) -> Value {
    serde_json::to_value(o).expect("outcome serializes")
}

fn usize_n(n: u64) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| CliError::usage_msg(format!("--n {n} is too large")))
}

/// Runs one command and returns its result document.
pub fn run(config: &RunConfig) -> Result<Value, CliError> {
    let cache = MatrixCache::new(config.cache_dir.clone());
    let limits = &config.limits;
    let result = match &config.command {
        Command::Build {
            n,
            builder,
            entries,
        } => build(&cache, limits, *n, *builder, *entries)?,
        Command::Reduce { n, mask } => {
            let (rho, outcome) = cache.get_or_build(Builder::Pairing, *n, limits)?;
            let reduced = partial_trace(&rho, mask)?;
            let k = mask.keep().len();
            let pair = if k == 2 {
                let w = TwoSpinWeights::from_pair_state(&reduced, ParentSize::Finite(*n as u64));
                w.map(|w| {
                    json!({
                        "weights": serde_json::to_value(TwoSpinWeightsRecord::from(&w)).expect("weights serialize"),
                        "correlation": rational(&w.same_axis_correlator()),
                    })
                })
            } else {
                None
            };
            json!({
                "n": n,
                "keep": mask.keep(),
                "traced": mask.traced(),
                "dim": reduced.dim(),
                "denom": reduced.denom(),
                "trace": rational(&reduced.trace()),
                "pair": pair,
                "entries": nonzero_entries(&reduced, k),
                "cache": outcome_name(outcome),
            })
        }
        Command::Correlate { n } => {
            let analytic = pair_correlation(ParentSize::Finite(*n))?;
            let numeric = if *n <= NUMERIC_CORRELATION_MAX_N && (*n as usize) <= limits.max_n {
                Some(pair_correlation_numeric(*n as usize, 0, 1, limits)?)
            } else {
                None
            };
            json!({
                "n": n,
                "correlation": rational(&analytic),
                "correlation_float": to_f64(&analytic),
                "numeric": numeric.as_ref().map(rational),
                "agree": numeric.map(|x| x == analytic),
            })
        }
        Command::Negativity { n, split } => {
            limits.check_eigensolve(*n, "witness")?;
            let (rho, outcome) = cache.get_or_build(Builder::Pairing, *n, limits)?;
            let r = negativity_measure_with(&rho, split, limits)?;
            json!({
                "n": n,
                "split": r.split,
                "eigenvalues": r.eigenvalues,
                "min_eigenvalue": r.min_eigenvalue,
                "negativity": r.negativity,
                "entangled": r.is_entangled(fermispin::entanglement::NEGATIVE_EIGENVALUE_TOLERANCE),
                "cache": outcome_name(outcome),
            })
        }
        Command::Witness { n, split } => {
            let (rho, outcome) = cache.get_or_build(Builder::Pairing, *n, limits)?;
            let w = sylvester_witness(&rho, split)?;
            json!({
                "n": n,
                "split": split.to_string(),
                "found": w.is_some(),
                "witness": w.map(|w| serde_json::to_value(w).expect("witness serializes")),
                "cache": outcome_name(outcome),
            })
        }
        Command::Chsh { n, route } => {
            let r = match route {
                Route::Full => chsh_value_full_with(usize_n(*n)?, 0, limits)?,
                _ => chsh_value_reduced(*n)?,
            };
            serde_json::to_value(r).expect("CHSH report serializes")
        }
        Command::Entropy { n, builder } => {
            limits.check_eigensolve(*n, "singlet_dimension")?;
            let (rho, outcome) = cache.get_or_build(*builder, *n, limits)?;
            let s = von_neumann_entropy(&rho)?;
            let d0 = singlet_dimension(*n);
            json!({
                "n": n,
                "builder": builder.name(),
                "entropy": s,
                "singlet_dimension": d0,
                "ln_singlet_dimension": (d0 as f64).ln(),
                "cache": outcome_name(outcome),
            })
        }
        Command::Report => report::run(&cache, limits)?,
    };
    Ok(json!({
        "command": config.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "result": result,
    }))
}

fn build(
    cache: &MatrixCache,
    limits: &Limits,
    n: usize,
    builder: Builder,
    entries: bool,
) -> Result<Value, CliError> {
    let (rho, outcome) = cache.get_or_build(builder, n, limits)?;
    Ok(json!({
        "n": n,
        "builder": builder.name(),
        "dim": rho.dim(),
        "denom": rho.denom(),
        "nonzero": rho.nonzero_count(),
        "trace": rational(&rho.trace()),
        "symmetric": rho.is_symmetric(),
        "sz_zero_support": rho.supported_in_sz_zero(),
        "sha256": content_digest(builder, &rho),
        "cache": outcome_name(outcome),
        "entries": if entries { nonzero_entries(&rho, n) } else { Vec::new() },
    }))
}
