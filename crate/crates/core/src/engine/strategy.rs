use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GameSpec, History, OneMove, Side, TwoMove};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    One(OneMove),
    Two(TwoMove),
}

impl Move {
    pub fn into_one(self) -> Option<OneMove> {
        match self {
            Move::One(m) => Some(m),
            Move::Two(_) => None,
        }
    }

    pub fn into_two(self) -> Option<TwoMove> {
        match self {
            Move::Two(r) => Some(r),
            Move::One(_) => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::One(m) => write!(f, "One: {m}"),
            Move::Two(r) => write!(f, "Two: {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleDescriptor {
    pub name: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StrategyDescriptor {
    Table,
    Rule(RuleDescriptor),
}

/// A strategy for one side. `decide` is called with a history in which it
/// is this side's turn: for One nothing is pending, for Two One's move is.
pub trait Strategy: Send + Sync {
    fn side(&self) -> Side;

    fn descriptor(&self) -> StrategyDescriptor;

    /// True when the move depends only on the covered set, the number of
    /// innings left and the pending move.
    fn positional(&self) -> bool {
        false
    }

    fn decide(&self, spec: &GameSpec, history: &History) -> Result<Move>;

    /// Serializable form, when the strategy has one.
    fn to_file(&self) -> Option<StrategyFile> {
        match self.descriptor() {
            StrategyDescriptor::Rule(r) => Some(StrategyFile {
                side: self.side(),
                body: StrategyBody::Rule {
                    name: r.name,
                    params: r.params,
                },
                witness_map: None,
            }),
            StrategyDescriptor::Table => None,
        }
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn side(&self) -> Side {
        (**self).side()
    }
    fn descriptor(&self) -> StrategyDescriptor {
        (**self).descriptor()
    }
    fn positional(&self) -> bool {
        (**self).positional()
    }
    fn decide(&self, spec: &GameSpec, history: &History) -> Result<Move> {
        (**self).decide(spec, history)
    }
    fn to_file(&self) -> Option<StrategyFile> {
        (**self).to_file()
    }
}

impl<S: Strategy + ?Sized> Strategy for std::sync::Arc<S> {
    fn side(&self) -> Side {
        (**self).side()
    }
    fn descriptor(&self) -> StrategyDescriptor {
        (**self).descriptor()
    }
    fn positional(&self) -> bool {
        (**self).positional()
    }
    fn decide(&self, spec: &GameSpec, history: &History) -> Result<Move> {
        (**self).decide(spec, history)
    }
    fn to_file(&self) -> Option<StrategyFile> {
        (**self).to_file()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum TableKey {
    Position {
        covered: PointSet,
        remaining: usize,
        #[serde(default)]
        pending: Option<OneMove>,
    },
    History {
        moves: Vec<(OneMove, TwoMove)>,
        #[serde(default)]
        pending: Option<OneMove>,
    },
}

impl TableKey {
    pub fn position(spec: &GameSpec, history: &History) -> TableKey {
        TableKey::Position {
            covered: history.covered(),
            remaining: spec.horizon.saturating_sub(history.inning_index()),
            pending: history.pending().cloned(),
        }
    }

    pub fn history(history: &History) -> TableKey {
        TableKey::History {
            moves: history
                .innings()
                .iter()
                .map(|i| (i.one.clone(), i.two.clone()))
                .collect(),
            pending: history.pending().cloned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub key: TableKey,
    #[serde(rename = "move")]
    pub mv: Move,
}

/// A strategy given by an explicit lookup table, keyed by position or by
/// full history.
#[derive(Clone, Debug)]
pub struct TableStrategy {
    side: Side,
    positional: bool,
    table: HashMap<TableKey, Move>,
}

impl TableStrategy {
    pub fn new(side: Side, positional: bool) -> Self {
        TableStrategy {
            side,
            positional,
            table: HashMap::new(),
        }
    }

    pub fn insert(&mut self, key: TableKey, mv: Move) {
        self.table.insert(key, mv);
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn key_for(&self, spec: &GameSpec, history: &History) -> TableKey {
        if self.positional {
            TableKey::position(spec, history)
        } else {
            TableKey::history(history)
        }
    }

    pub fn lookup(&self, key: &TableKey) -> Option<&Move> {
        self.table.get(key)
    }

    /// Entries sorted by their JSON form so output is reproducible.
    pub fn entries(&self) -> Vec<TableEntry> {
        let mut v: Vec<(String, TableEntry)> = self
            .table
            .iter()
            .map(|(k, m)| {
                let e = TableEntry {
                    key: k.clone(),
                    mv: m.clone(),
                };
                (serde_json::to_string(&e.key).unwrap_or_default(), e)
            })
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, e)| e).collect()
    }

    pub fn from_entries(side: Side, positional: bool, entries: Vec<TableEntry>) -> Result<Self> {
        let mut t = TableStrategy::new(side, positional);
        for e in entries {
            let wrong_kind = matches!(
                (&e.key, positional),
                (TableKey::Position { .. }, false) | (TableKey::History { .. }, true)
            );
            if wrong_kind {
                return Err(Error::Invariant("table key does not match the table kind".into()));
            }
            let wrong_side = matches!(
                (&e.mv, side),
                (Move::One(_), Side::Two) | (Move::Two(_), Side::One)
            );
            if wrong_side {
                return Err(Error::Invariant(format!("table for {side} holds a move for the other side")));
            }
            t.insert(e.key, e.mv);
        }
        Ok(t)
    }
}

impl Strategy for TableStrategy {
    fn side(&self) -> Side {
        self.side
    }

    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }

    fn positional(&self) -> bool {
        self.positional
    }

    fn decide(&self, spec: &GameSpec, history: &History) -> Result<Move> {
        let key = self.key_for(spec, history);
        self.table
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::StrategyUndefined {
                side: self.side,
                inning: history.inning_index(),
                reason: "no table entry for this position".into(),
            })
    }

    fn to_file(&self) -> Option<StrategyFile> {
        Some(StrategyFile {
            side: self.side,
            body: StrategyBody::Table {
                positional: self.positional,
                entries: self.entries(),
            },
            witness_map: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrategyBody {
    Table {
        positional: bool,
        entries: Vec<TableEntry>,
    },
    Rule {
        name: String,
        #[serde(default)]
        params: serde_json::Value,
    },
}

/// On-disk strategy: a table, or a named rule with parameters. Translated
/// strategies also carry the witness map of the translation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyFile {
    pub side: Side,
    #[serde(flatten)]
    pub body: StrategyBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_map: Option<serde_json::Value>,
}

/// Tabulates `strategy` over every position reachable when the opponent
/// ranges over all legal moves. Positional strategies give a position
/// table, others a history table.
pub fn tabulate(spec: &GameSpec, strategy: &dyn Strategy, budget: u64) -> Result<TableStrategy> {
    let side = strategy.side();
    let mut table = TableStrategy::new(side, strategy.positional());
    let mut h = History::new();
    let mut nodes = 0u64;
    tabulate_rec(spec, strategy, &mut h, &mut table, &mut nodes, budget)?;
    Ok(table)
}

fn tabulate_rec(
    spec: &GameSpec,
    s: &dyn Strategy,
    h: &mut History,
    table: &mut TableStrategy,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    if spec.is_decided(h) {
        return Ok(());
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    match s.side() {
        Side::One => {
            let key = table.key_for(spec, h);
            if table.positional && table.lookup(&key).is_some() {
                return Ok(());
            }
            let m = super::strategy_move_one(spec, s, h)?;
            table.insert(key, Move::One(m.clone()));
            h.push_one(m.clone());
            for r in spec.two_moves(&m) {
                h.push_two(r);
                tabulate_rec(spec, s, h, table, nodes, budget)?;
                h.pop_two();
            }
            h.pop_one();
        }
        Side::Two => {
            for m in spec.one_pool.clone() {
                h.push_one(m);
                let key = table.key_for(spec, h);
                let seen = table.positional && table.lookup(&key).is_some();
                if !seen {
                    let r = super::strategy_move_two(spec, s, h)?;
                    table.insert(key, Move::Two(r.clone()));
                    h.push_two(r);
                    tabulate_rec(spec, s, h, table, nodes, budget)?;
                    h.pop_two();
                }
                h.pop_one();
            }
        }
    }
    Ok(())
}
