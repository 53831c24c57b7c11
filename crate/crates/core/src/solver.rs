//! Exact solving by memoized backward induction.
//!
//! The state at One's turn is `(covered, innings remaining)`: One's pool
//! does not depend on the position and the winner depends only on the
//! covered set, so this key is sound. Winning strategies are tabulated over
//! the states reachable against every adversary line, always storing the
//! canonically least winning move.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::engine::{GameSpec, Move, OneMove, Side, TableKey, TableStrategy, TwoMove, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: u64,
    pub memo: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
            memo: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub winner: Side,
    pub strategy: TableStrategy,
    pub stats: SolveStats,
}

pub fn solve(spec: &GameSpec) -> Result<SolveResult> {
    solve_with(spec, SolveOptions::default())
}

pub fn solve_with(spec: &GameSpec, opts: SolveOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let mut s = Search::new(spec, opts);
    let winner = s.winner()?;
    let strategy = s.extract(winner)?;
    let mut stats = s.stats;
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(SolveResult {
        winner,
        strategy,
        stats,
    })
}

/// Winner only, without building a strategy table.
pub fn winner_with(spec: &GameSpec, opts: SolveOptions) -> Result<(Side, SolveStats)> {
    let start = Instant::now();
    let mut s = Search::new(spec, opts);
    let w = s.winner()?;
    let mut stats = s.stats;
    stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((w, stats))
}

pub fn winner(spec: &GameSpec) -> Result<Side> {
    Ok(winner_with(spec, SolveOptions::default())?.0)
}

/// Whether `side` has a winning strategy, evaluated with that side's own
/// quantifier pattern rather than by negating the other side's value.
pub fn side_wins(spec: &GameSpec, side: Side, opts: SolveOptions) -> Result<bool> {
    let mut s = Search::new(spec, opts);
    s.wins_for(side, PointSet::EMPTY, spec.horizon)
}

/// A horizon past which the verdict no longer changes: the covering side
/// gains at least one point per inning, so `point_count` innings suffice.
pub fn sufficient_horizon(spec: &GameSpec) -> usize {
    spec.model.point_count()
}

struct Search<'a> {
    spec: &'a GameSpec,
    opts: SolveOptions,
    full: PointSet,
    /// Two's answers per pool entry, as (move, contribution), canonical order.
    answers: Vec<Vec<(TwoMove, PointSet)>>,
    /// Distinct contributions per pool entry, for evaluation.
    contributions: Vec<Vec<PointSet>>,
    memo: [HashMap<(PointSet, usize), bool>; 2],
    stats: SolveStats,
}

fn side_index(s: Side) -> usize {
    match s {
        Side::One => 0,
        Side::Two => 1,
    }
}

impl<'a> Search<'a> {
    fn new(spec: &'a GameSpec, opts: SolveOptions) -> Self {
        let answers: Vec<Vec<(TwoMove, PointSet)>> = spec
            .one_pool
            .iter()
            .map(|m| {
                spec.two_moves(m)
                    .into_iter()
                    .map(|r| {
                        let c = r.contribution();
                        (r, c)
                    })
                    .collect()
            })
            .collect();
        let contributions = answers
            .iter()
            .map(|v| {
                let mut cs: Vec<PointSet> = v.iter().map(|(_, c)| *c).collect();
                cs.sort();
                cs.dedup();
                cs
            })
            .collect();
        Search {
            spec,
            opts,
            full: spec.full(),
            answers,
            contributions,
            memo: [HashMap::new(), HashMap::new()],
            stats: SolveStats::default(),
        }
    }

    fn winner(&mut self) -> Result<Side> {
        let coverer = self.spec.kind.coverer();
        Ok(if self.wins_for(coverer, PointSet::EMPTY, self.spec.horizon)? {
            coverer
        } else {
            coverer.other()
        })
    }

    /// Does `side` win from the One-to-move state `(covered, remaining)`?
    fn wins_for(&mut self, side: Side, covered: PointSet, remaining: usize) -> Result<bool> {
        let coverer = self.spec.kind.coverer();
        if covered == self.full {
            return Ok(side == coverer);
        }
        if remaining == 0 {
            return Ok(side != coverer);
        }
        if self.opts.memo {
            if let Some(&v) = self.memo[side_index(side)].get(&(covered, remaining)) {
                self.stats.memo_hits += 1;
                return Ok(v);
            }
        }
        self.stats.states_expanded += 1;
        if self.stats.states_expanded > self.opts.budget {
            return Err(Error::BudgetExceeded(self.opts.budget));
        }
        let v = match side {
            // One wins iff some move leaves every answer winning for One.
            Side::One => {
                let mut any = false;
                for i in 0..self.spec.one_pool.len() {
                    if self.all_answers_win(side, i, covered, remaining)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            // Two wins iff every One move has a winning answer.
            Side::Two => {
                let mut all = true;
                for i in 0..self.spec.one_pool.len() {
                    if !self.some_answer_wins(side, i, covered, remaining)? {
                        all = false;
                        break;
                    }
                }
                all
            }
        };
        if self.opts.memo {
            self.memo[side_index(side)].insert((covered, remaining), v);
        }
        Ok(v)
    }

    fn all_answers_win(&mut self, side: Side, i: usize, covered: PointSet, remaining: usize) -> Result<bool> {
        for k in 0..self.contributions[i].len() {
            let c = self.contributions[i][k];
            if !self.wins_for(side, covered | c, remaining - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn some_answer_wins(&mut self, side: Side, i: usize, covered: PointSet, remaining: usize) -> Result<bool> {
        for k in 0..self.contributions[i].len() {
            let c = self.contributions[i][k];
            if self.wins_for(side, covered | c, remaining - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Least winning move tables for `winner` over all reachable states.
    fn extract(&mut self, winner: Side) -> Result<TableStrategy> {
        let mut table = TableStrategy::new(winner, true);
        let mut seen: HashSet<(PointSet, usize)> = HashSet::new();
        let mut stack = vec![(PointSet::EMPTY, self.spec.horizon)];
        while let Some((covered, remaining)) = stack.pop() {
            if covered == self.full || remaining == 0 || !seen.insert((covered, remaining)) {
                continue;
            }
            let key_pending = |m: Option<OneMove>| TableKey::Position {
                covered,
                remaining,
                pending: m,
            };
            match winner {
                Side::One => {
                    let mut chosen = None;
                    for i in 0..self.spec.one_pool.len() {
                        if self.all_answers_win(winner, i, covered, remaining)? {
                            chosen = Some(i);
                            break;
                        }
                    }
                    let i = chosen.ok_or_else(|| lost_state(winner, covered, remaining))?;
                    table.insert(key_pending(None), Move::One(self.spec.one_pool[i].clone()));
                    for &c in &self.contributions[i] {
                        stack.push((covered | c, remaining - 1));
                    }
                }
                Side::Two => {
                    for i in 0..self.spec.one_pool.len() {
                        let mut chosen = None;
                        for k in 0..self.answers[i].len() {
                            let c = self.answers[i][k].1;
                            if self.wins_for(winner, covered | c, remaining - 1)? {
                                chosen = Some(k);
                                break;
                            }
                        }
                        let k = chosen.ok_or_else(|| lost_state(winner, covered, remaining))?;
                        let (r, c) = self.answers[i][k].clone();
                        table.insert(key_pending(Some(self.spec.one_pool[i].clone())), Move::Two(r));
                        stack.push((covered | c, remaining - 1));
                    }
                }
            }
        }
        Ok(table)
    }
}

fn lost_state(side: Side, covered: PointSet, remaining: usize) -> Error {
    Error::Invariant(format!(
        "solver reached a state lost for {side}: covered {covered}, {remaining} innings left"
    ))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::covers::CoverFamily;
    use crate::engine::{certify, GameKind};
    use crate::space::{FiniteSpace, SpaceModel};

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    fn discrete(n: usize) -> Arc<SpaceModel> {
        Arc::new(SpaceModel::new(FiniteSpace::discrete(n), "d"))
    }

    fn singleton_cover_spec(h: usize) -> GameSpec {
        let c = CoverFamily::new(vec![ps(&[0]), ps(&[1])]).unwrap();
        GameSpec::new(GameKind::Rothberger, discrete(2), vec![OneMove::cover(c)], h).unwrap()
    }

    #[test]
    fn rothberger_two_point_examples() {
        assert_eq!(solve(&singleton_cover_spec(1)).unwrap().winner, Side::One);
        assert_eq!(solve(&singleton_cover_spec(2)).unwrap().winner, Side::Two);
    }

    #[test]
    fn point_open_two_point_examples() {
        let s1 = GameSpec::with_derived_pool(GameKind::PointOpen, discrete(2), 1).unwrap();
        assert_eq!(solve(&s1).unwrap().winner, Side::Two);
        let s2 = s1.with_horizon(2).unwrap();
        assert_eq!(solve(&s2).unwrap().winner, Side::One);
    }

    #[test]
    fn solved_strategies_certify() {
        for h in 1..=3 {
            let spec = GameSpec::with_derived_pool(GameKind::Rothberger, discrete(3), h).unwrap();
            let r = solve(&spec).unwrap();
            assert!(certify(&spec, &r.strategy).unwrap().is_certified(), "h={h}");
        }
    }

    #[test]
    fn memo_toggle_and_determinacy() {
        let spec = GameSpec::with_derived_pool(GameKind::Rothberger, discrete(3), 2).unwrap();
        let on = winner_with(&spec, SolveOptions::default()).unwrap().0;
        let off = winner_with(&spec, SolveOptions { memo: false, ..Default::default() }).unwrap().0;
        assert_eq!(on, off);
        let one = side_wins(&spec, Side::One, SolveOptions::default()).unwrap();
        let two = side_wins(&spec, Side::Two, SolveOptions::default()).unwrap();
        assert_ne!(one, two);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = GameSpec::with_derived_pool(GameKind::Rothberger, discrete(4), 3).unwrap();
        let r = solve_with(&spec, SolveOptions { budget: 1, memo: true });
        assert!(matches!(r, Err(Error::BudgetExceeded(1))));
    }

    #[test]
    fn sufficient_horizon_is_point_count() {
        let spec = GameSpec::with_derived_pool(GameKind::PointOpen, discrete(1), 1).unwrap();
        assert_eq!(sufficient_horizon(&spec), 1);
    }
}
