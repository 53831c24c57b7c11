use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{strategy_move_one, strategy_move_two, GameSpec, History, Side, Strategy, Transcript};
use crate::error::{Error, Result};
use crate::par::{map_ordered, ExecMode};
use crate::pointset::PointSet;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Certificate {
    Certified,
    CounterPlay { transcript: Transcript },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }

    pub fn counterplay(&self) -> Option<&Transcript> {
        match self {
            Certificate::CounterPlay { transcript } => Some(transcript),
            Certificate::Certified => None,
        }
    }
}

pub fn certify(spec: &GameSpec, strategy: &dyn Strategy) -> Result<Certificate> {
    certify_with_budget(spec, strategy, DEFAULT_BUDGET, ExecMode::default())
}

/// Plays `strategy` against every adversary line. Adversary moves are
/// tried in canonical order, so the first loss found is the
/// lexicographically least one. Root adversary branches may run in
/// parallel; each has its own node count and the counts of all branches up
/// to the first losing one must fit the budget.
pub fn certify_with_budget(
    spec: &GameSpec,
    strategy: &dyn Strategy,
    budget: u64,
    mode: ExecMode,
) -> Result<Certificate> {
    let side = strategy.side();
    let root = History::new();
    if spec.is_decided(&root) {
        return Ok(leaf(spec, side, &root));
    }
    // Branch on the first adversary choice: One's opening move when
    // certifying Two, Two's first answer when certifying One.
    let starts: Vec<History> = match side {
        Side::Two => spec.one_pool.iter().map(|m| root.with_one(m.clone())).collect(),
        Side::One => {
            let m = strategy_move_one(spec, strategy, &root)?;
            let h = root.with_one(m.clone());
            spec.two_moves(&m)
                .into_iter()
                .map(|r| {
                    let mut h2 = h.clone();
                    h2.push_two(r);
                    h2
                })
                .collect()
        }
    };
    let results = map_ordered(mode, &starts, |h| {
        let mut walker = Walker {
            spec,
            strategy,
            side,
            memo: HashSet::new(),
            nodes: 0,
            budget,
        };
        let mut h = h.clone();
        let r = walker.walk(&mut h);
        (r, walker.nodes)
    });
    let mut total = 0u64;
    for (r, nodes) in results {
        total = total.saturating_add(nodes);
        if total > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        match r? {
            Some(t) => return Ok(Certificate::CounterPlay { transcript: t }),
            None => continue,
        }
    }
    Ok(Certificate::Certified)
}

fn leaf(spec: &GameSpec, side: Side, h: &History) -> Certificate {
    if spec.winner_for(h.covered()) == side {
        Certificate::Certified
    } else {
        Certificate::CounterPlay {
            transcript: h.to_transcript(),
        }
    }
}

struct Walker<'a> {
    spec: &'a GameSpec,
    strategy: &'a dyn Strategy,
    side: Side,
    /// Positions (covered, innings played) already shown winning; used only
    /// for positional strategies.
    memo: HashSet<(PointSet, usize)>,
    nodes: u64,
    budget: u64,
}

impl Walker<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// Returns a losing transcript below `h`, if any.
    fn walk(&mut self, h: &mut History) -> Result<Option<Transcript>> {
        self.tick()?;
        if h.pending().is_some() {
            return self.walk_two(h);
        }
        if self.spec.is_decided(h) {
            return Ok(match leaf(self.spec, self.side, h) {
                Certificate::Certified => None,
                Certificate::CounterPlay { transcript } => Some(transcript),
            });
        }
        let key = (h.covered(), h.inning_index());
        let positional = self.strategy.positional();
        if positional && self.memo.contains(&key) {
            return Ok(None);
        }
        let found = match self.side {
            Side::One => {
                let m = strategy_move_one(self.spec, self.strategy, h)?;
                h.push_one(m);
                let r = self.walk_two(h)?;
                h.pop_one();
                r
            }
            Side::Two => {
                let mut found = None;
                for m in &self.spec.one_pool {
                    h.push_one(m.clone());
                    let r = self.walk_two(h)?;
                    h.pop_one();
                    if r.is_some() {
                        found = r;
                        break;
                    }
                }
                found
            }
        };
        if positional && found.is_none() {
            self.memo.insert(key);
        }
        Ok(found)
    }

    fn walk_two(&mut self, h: &mut History) -> Result<Option<Transcript>> {
        match self.side {
            Side::Two => {
                let r = strategy_move_two(self.spec, self.strategy, h)?;
                h.push_two(r);
                let out = self.walk(h);
                h.pop_two();
                out
            }
            Side::One => {
                let pending = h.pending().cloned().expect("pending move");
                for r in self.spec.two_moves(&pending) {
                    h.push_two(r);
                    let out = self.walk(h)?;
                    h.pop_two();
                    if out.is_some() {
                        return Ok(out);
                    }
                }
                Ok(None)
            }
        }
    }
}
