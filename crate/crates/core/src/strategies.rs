//! Named rule strategies and strategy-file loading.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::engine::{
    GameKind, GameSpec, History, Move, OneMove, RuleDescriptor, Side, Strategy, StrategyBody,
    StrategyDescriptor, StrategyFile, TableStrategy, TwoMove,
};
use crate::error::{Error, Result};

fn least_uncovered(spec: &GameSpec, h: &History) -> Result<usize> {
    (spec.full() - h.covered()).min().ok_or_else(|| Error::StrategyUndefined {
        side: Side::One,
        inning: h.inning_index(),
        reason: "the space is already covered".into(),
    })
}

fn rule(name: &str, params: Value) -> StrategyDescriptor {
    StrategyDescriptor::Rule(RuleDescriptor {
        name: name.into(),
        params,
    })
}

/// One in the point/compact games: the least uncovered point, or the least
/// pool compact containing it.
#[derive(Clone, Copy, Debug, Default)]
pub struct LeastUncoveredPoint;

impl Strategy for LeastUncoveredPoint {
    fn side(&self) -> Side {
        Side::One
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("least_uncovered_point", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let x = least_uncovered(spec, h)?;
        let m = match spec.kind {
            GameKind::PointOpen => OneMove::Point(x),
            GameKind::CompactOpen | GameKind::CompactGdelta => spec
                .one_pool
                .iter()
                .find(|m| matches!(m, OneMove::Compact(k) if k.contains(x)))
                .cloned()
                .ok_or_else(|| Error::StrategyUndefined {
                    side: Side::One,
                    inning: h.inning_index(),
                    reason: format!("no pool compact contains {x}"),
                })?,
            k => return Err(Error::Unsupported(format!("least_uncovered_point does not play {k}"))),
        };
        Ok(Move::One(m))
    }
}

/// Two in the point/compact games: the minimal open including One's point
/// or compact.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinimalOpen;

impl Strategy for MinimalOpen {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("minimal_open", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let need = h
            .pending()
            .and_then(OneMove::demand)
            .ok_or_else(|| Error::Unsupported("minimal_open answers points and compacts".into()))?;
        Ok(Move::Two(TwoMove::Pick(spec.model.space.open_hull(need))))
    }
}

/// Two in the cover games: the least element containing the least
/// uncovered point (as a one-element sublist in the Menger game).
#[derive(Clone, Copy, Debug, Default)]
pub struct LeastElement;

impl Strategy for LeastElement {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("least_element", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let x = (spec.full() - h.covered()).min().unwrap_or(0);
        let undefined = |reason: String| Error::StrategyUndefined {
            side: Side::Two,
            inning: h.inning_index(),
            reason,
        };
        let pick = match h.pending() {
            Some(OneMove::Cover(c)) => c.least_containing(x),
            Some(OneMove::Gdelta(g)) => g.targets().into_iter().find(|t| t.contains(x)),
            _ => return Err(undefined("least_element answers covers".into())),
        }
        .ok_or_else(|| undefined(format!("no element contains {x}")))?;
        Ok(Move::Two(if spec.kind == GameKind::Menger {
            TwoMove::Sublist(vec![pick])
        } else {
            TwoMove::Pick(pick)
        }))
    }
}

/// Two in the Menger game: take the whole cover.
#[derive(Clone, Copy, Debug, Default)]
pub struct WholeCover;

impl Strategy for WholeCover {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("whole_cover", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, _spec: &GameSpec, h: &History) -> Result<Move> {
        match h.pending() {
            Some(OneMove::Cover(c)) => Ok(Move::Two(TwoMove::Sublist(c.elements().to_vec()))),
            _ => Err(Error::Unsupported("whole_cover answers Menger covers".into())),
        }
    }
}

/// Two in the cover games: always the least element of One's cover.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConstantFirst;

impl Strategy for ConstantFirst {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("constant_first", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let first = match h.pending() {
            Some(OneMove::Cover(c)) => c.elements()[0],
            Some(OneMove::Gdelta(g)) => g.targets()[0],
            _ => return Err(Error::Unsupported("constant_first answers covers".into())),
        };
        Ok(Move::Two(if spec.kind == GameKind::Menger {
            TwoMove::Sublist(vec![first])
        } else {
            TwoMove::Pick(first)
        }))
    }
}

/// One: always the pool entry at `index`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConstantMove {
    pub index: usize,
}

impl Strategy for ConstantMove {
    fn side(&self) -> Side {
        Side::One
    }
    fn descriptor(&self) -> StrategyDescriptor {
        rule("constant_move", json!({ "index": self.index }))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        spec.one_pool
            .get(self.index)
            .cloned()
            .map(Move::One)
            .ok_or_else(|| Error::StrategyUndefined {
                side: Side::One,
                inning: h.inning_index(),
                reason: format!("pool has no entry {}", self.index),
            })
    }
}

pub const RULE_NAMES: &[&str] = &[
    "least_uncovered_point",
    "minimal_open",
    "least_element",
    "whole_cover",
    "constant_first",
    "constant_move",
    "countable_enumeration",
    "scattered_rank",
    "fortissimo",
];

/// Builds a named rule strategy.
pub fn rule_strategy(name: &str, params: &Value) -> Result<Arc<dyn Strategy>> {
    Ok(match name {
        "least_uncovered_point" => Arc::new(LeastUncoveredPoint),
        "minimal_open" => Arc::new(MinimalOpen),
        "least_element" => Arc::new(LeastElement),
        "whole_cover" => Arc::new(WholeCover),
        "constant_first" => Arc::new(ConstantFirst),
        "constant_move" => Arc::new(ConstantMove {
            index: params.get("index").and_then(Value::as_u64).unwrap_or(0) as usize,
        }),
        "countable_enumeration" => Arc::new(crate::constructions::CountableEnumeration),
        "scattered_rank" => Arc::new(crate::constructions::ScatteredRank),
        "fortissimo" => Arc::new(crate::constructions::Fortissimo {
            special: params
                .get("special")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Invariant("fortissimo needs the special point".into()))?
                as usize,
        }),
        _ => return Err(Error::Unsupported(format!("unknown rule strategy {name:?}"))),
    })
}

/// Loads any strategy file: tables directly, rules through the registry.
pub fn from_file(file: &StrategyFile) -> Result<Arc<dyn Strategy>> {
    match &file.body {
        StrategyBody::Table {
            positional,
            entries,
        } => Ok(Arc::new(TableStrategy::from_entries(
            file.side,
            *positional,
            entries.clone(),
        )?)),
        StrategyBody::Rule { name, params } => {
            let s = rule_strategy(name, params)?;
            if s.side() != file.side {
                return Err(Error::Invariant(format!(
                    "rule {name} plays for {}, file says {}",
                    s.side(),
                    file.side
                )));
            }
            Ok(s)
        }
    }
}

pub fn load(json: &str) -> Result<Arc<dyn Strategy>> {
    let file: StrategyFile = serde_json::from_str(json)?;
    from_file(&file)
}

