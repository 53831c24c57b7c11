//! Constructive proofs and examples as executable algorithms.

pub mod cantor;
pub mod diagonal;
pub mod menger_alster;
pub mod pointopen;
pub mod refine;
pub mod rules;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, SpaceModel};

pub use cantor::{bits_strategy, cantor_witness, Cylinder, UncoveredRegion};
pub use diagonal::{alster_diagonal_selection, DiagonalSelection};
pub use menger_alster::{
    derived_compacts, extract_alster_subcover_from_menger, falsify_menger_extraction, Extraction,
    ProvenanceEntry,
};
pub use pointopen::{extract_gdelta_subcover_from_pointopen, falsify_pointopen_extraction};
pub use refine::{
    refine_menger_strategy, refined_horizon, refined_model, refined_pool, Decomposition,
    RefinedStrategy,
};
pub use rules::{
    countable_enumeration_strategy, fortissimo_strategy, scattered_rank_strategy,
    CountableEnumeration, Fortissimo, FortissimoModel, ScatteredRank,
};

/// Catalog spaces addressable by name: `chain(n)`, `discrete(n)`,
/// `indiscrete(n)`, `fortissimo(N,c)`, `random(seed,n,m)` and
/// `refined(seed,n,m)`.
pub fn catalog_model(name: &str) -> Result<Arc<SpaceModel>> {
    let (head, args) = parse_call(name)?;
    let arg = |i: usize| -> Result<usize> {
        args.get(i)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("{head} needs argument {}", i + 1)))
    };
    let model = match head.as_str() {
        "chain" => SpaceModel::new(FiniteSpace::chain(arg(0)?), name),
        "discrete" => SpaceModel::new(FiniteSpace::discrete(arg(0)?), name),
        "indiscrete" => SpaceModel::new(FiniteSpace::indiscrete(arg(0)?), name),
        "fortissimo" => return Ok(FortissimoModel::new(arg(0)?, arg(1)?)?.model),
        "random" => crate::space::random_model(arg(0)? as u64, arg(1)?, arg(2)?),
        "refined" => refined_model(&crate::space::random_model(arg(0)? as u64, arg(1)?, arg(2)?))?,
        _ => return Err(Error::Invariant(format!("unknown catalog entry {name:?}"))),
    };
    Ok(Arc::new(model))
}

pub const CATALOG: &[&str] = &[
    "chain(n)",
    "discrete(n)",
    "indiscrete(n)",
    "fortissimo(N,c)",
    "random(seed,n,m)",
    "refined(seed,n,m)",
    "cantor(d)",
];

fn parse_call(s: &str) -> Result<(String, Vec<usize>)> {
    let s = s.trim();
    let bad = || Error::Invariant(format!("malformed catalog name {s:?}"));
    let open = s.find('(').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let args = inner
        .split(',')
        .filter(|a| !a.trim().is_empty())
        .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok((s[..open].to_string(), args))
}

/// `cantor(d)` arguments, if `name` has that form.
pub fn catalog_cantor_depth(name: &str) -> Option<usize> {
    let (head, args) = parse_call(name).ok()?;
    (head == "cantor").then(|| args.first().copied()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_resolve() {
        assert_eq!(catalog_model("chain(3)").unwrap().point_count(), 3);
        assert_eq!(catalog_model("fortissimo(5, 2)").unwrap().point_count(), 6);
        assert!(catalog_model("moon(1)").is_err());
        assert_eq!(catalog_cantor_depth("cantor(4)"), Some(4));
    }
}
