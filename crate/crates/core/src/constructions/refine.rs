//! Two's Menger strategy on a refinement that declares small sets closed.
//!
//! The refined topology is generated by the base opens and the sets
//! `U ∖ C` with `C` in the small ideal. Even innings translate One's cover
//! `𝒲` to the base cover `{U(W)}` and follow the base strategy `ρ`; the
//! points of `C(W)` this leaves behind are queued and served in odd
//! innings, `q` points per inning, round-robin over the queues.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::covers::{irredundant_covers, reduce_to_irredundant, CoverFamily};
use crate::engine::{
    strategy_move_two, GameKind, GameSpec, History, Move, OneMove, Side, Strategy,
    StrategyDescriptor, TwoMove,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::{FiniteSpace, SpaceModel};

/// The base opens together with every `U ∖ C`, `C` small.
pub fn refined_model(base: &SpaceModel) -> Result<SpaceModel> {
    let mut gens: Vec<PointSet> = base.space.opens();
    for u in base.space.opens() {
        for &c in &base.small_ideal {
            gens.push(u - c);
        }
    }
    let space = FiniteSpace::from_subbasis(base.point_count(), &gens)?;
    let mut model = SpaceModel::new(space, format!("refined({})", base.label));
    model.small_ideal = base.small_ideal.clone();
    model.validate()?;
    Ok(model)
}

/// `W ↦ (U(W), C(W))` for the refined basic opens.
#[derive(Clone, Debug, Default)]
pub struct Decomposition {
    map: HashMap<PointSet, (PointSet, PointSet)>,
}

impl Decomposition {
    /// For every nonempty `W = U ∖ C`, records the least base open `U`
    /// with `U ⊇ W` and `U ∖ W` small.
    pub fn derive(base: &SpaceModel) -> Self {
        let ideal: BTreeSet<PointSet> = base.small_ideal.iter().copied().collect();
        let opens = base.space.opens();
        let mut map = HashMap::new();
        for &u in &opens {
            for &c in &base.small_ideal {
                let w = u - c;
                if w.is_empty() || map.contains_key(&w) {
                    continue;
                }
                let least = opens
                    .iter()
                    .copied()
                    .find(|&u2| w.is_subset(u2) && ideal.contains(&(u2 - w)))
                    .expect("u itself qualifies");
                map.insert(w, (least, least - w));
            }
        }
        Decomposition { map }
    }

    pub fn get(&self, w: PointSet) -> Option<(PointSet, PointSet)> {
        self.map.get(&w).copied()
    }

    pub fn is_basic(&self, w: PointSet) -> bool {
        self.map.contains_key(&w)
    }

    /// Largest `|C(W)|`.
    pub fn max_c(&self) -> usize {
        self.map.values().map(|(_, c)| c.len()).max().unwrap_or(0)
    }

    fn lookup(&self, w: PointSet) -> Result<(PointSet, PointSet)> {
        self.get(w)
            .ok_or_else(|| Error::Invariant(format!("basic open {w} has no decomposition")))
    }
}

/// Irredundant covers of the refined space by basic opens, first `limit`.
pub fn refined_pool(refined: &SpaceModel, dec: &Decomposition, limit: usize) -> Result<Vec<CoverFamily>> {
    Ok(irredundant_covers(&refined.space)?
        .into_iter()
        .filter(|c| c.elements().iter().all(|&w| dec.is_basic(w)))
        .take(limit)
        .collect())
}

/// `2h(1 + ⌈max_c / q⌉)`.
pub fn refined_horizon(base_horizon: usize, max_c: usize, quota: usize) -> usize {
    2 * base_horizon * (1 + max_c.div_ceil(quota.max(1)))
}

pub struct RefinedStrategy {
    base: GameSpec,
    rho: Arc<dyn Strategy>,
    dec: Decomposition,
    quota: usize,
}

pub fn refine_menger_strategy(
    base: &GameSpec,
    rho: Arc<dyn Strategy>,
    decomposition: Decomposition,
    quota: usize,
) -> Result<RefinedStrategy> {
    if quota == 0 {
        return Err(Error::Invariant("queue quota must be at least 1".into()));
    }
    if base.kind != GameKind::Menger || rho.side() != Side::Two {
        return Err(Error::Invariant("expected Two's strategy in a base Menger game".into()));
    }
    Ok(RefinedStrategy {
        base: base.clone(),
        rho,
        dec: decomposition,
        quota,
    })
}

/// Replayed bookkeeping after some innings of the refined game.
#[derive(Default)]
struct State {
    base: History,
    queues: Vec<VecDeque<usize>>,
    cursor: usize,
}

impl RefinedStrategy {
    /// `{U(W)}` reduced to an irredundant base cover.
    fn base_cover(&self, fam: &CoverFamily) -> Result<CoverFamily> {
        let us = fam
            .elements()
            .iter()
            .map(|&w| self.dec.lookup(w).map(|(u, _)| u))
            .collect::<Result<Vec<_>>>()?;
        Ok(reduce_to_irredundant(self.base.full(), &CoverFamily::dedup(us)))
    }

    fn base_live(&self, st: &State) -> bool {
        !self.base.is_decided(&st.base)
    }

    /// The move at `inning` given the state before it; updates the state.
    fn step(&self, st: &mut State, inning: usize, fam: &CoverFamily, covered: PointSet) -> Result<Vec<PointSet>> {
        let full = self.base.full();
        if inning % 2 == 0 && self.base_live(st) {
            let bc = OneMove::cover(self.base_cover(fam)?);
            st.base.push_one(bc);
            let r = strategy_move_two(&self.base, self.rho.as_ref(), &st.base)?;
            let chosen_u: BTreeSet<PointSet> = match &r {
                TwoMove::Sublist(v) => v.iter().copied().collect(),
                TwoMove::Pick(p) => [*p].into_iter().collect(),
            };
            st.base.push_two(r);
            let mut picks = Vec::new();
            let mut queued = PointSet::EMPTY;
            for &w in fam.elements() {
                let (u, c) = self.dec.lookup(w)?;
                if chosen_u.contains(&u) {
                    picks.push(w);
                    queued |= c;
                }
            }
            st.queues.push(queued.iter().collect());
            return Ok(picks);
        }
        if inning % 2 == 1 {
            // drop points covered meanwhile, then serve one queue round-robin
            for q in st.queues.iter_mut() {
                q.retain(|&x| !covered.contains(x));
            }
            let n = st.queues.len();
            for off in 0..n {
                let j = (st.cursor + off) % n;
                if st.queues[j].is_empty() {
                    continue;
                }
                let mut picks = BTreeSet::new();
                for _ in 0..self.quota {
                    let Some(x) = st.queues[j].pop_front() else { break };
                    picks.insert(least_containing(fam, x)?);
                }
                st.cursor = (j + 1) % n;
                return Ok(picks.into_iter().collect());
            }
        }
        let x = (full - covered).min().unwrap_or(0);
        Ok(vec![least_containing(fam, x)?])
    }

    fn replay(&self, h: &History) -> Result<(State, PointSet)> {
        let mut st = State::default();
        let mut covered = PointSet::EMPTY;
        for (n, inning) in h.innings().iter().enumerate() {
            let OneMove::Cover(c) = &inning.one else {
                return Err(Error::IllegalTranscript("expected covers".into()));
            };
            self.step(&mut st, n, c, covered)?;
            covered = inning.covered;
        }
        Ok((st, covered))
    }

    /// ρ's base history reconstructed from a refined history.
    pub fn base_history(&self, h: &History) -> Result<History> {
        Ok(self.replay(h)?.0.base)
    }
}

fn least_containing(fam: &CoverFamily, x: usize) -> Result<PointSet> {
    fam.least_containing(x)
        .ok_or_else(|| Error::Invariant(format!("no element of One's cover contains {x}")))
}

impl Strategy for RefinedStrategy {
    fn side(&self) -> Side {
        Side::Two
    }

    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }

    fn decide(&self, _spec: &GameSpec, h: &History) -> Result<Move> {
        let Some(OneMove::Cover(c)) = h.pending() else {
            return Err(Error::IllegalTranscript("expected a pending cover".into()));
        };
        let mut past = h.clone();
        past.pop_one();
        let (mut st, covered) = self.replay(&past)?;
        let picks = self.step(&mut st, past.inning_index(), c, covered)?;
        let mut picks = picks;
        picks.sort();
        picks.dedup();
        Ok(Move::Two(TwoMove::Sublist(picks)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    #[test]
    fn decomposition_recovers_base_opens() {
        let base = SpaceModel::new(FiniteSpace::chain(3), "c3")
            .with_small_ideal(vec![PointSet::EMPTY, ps(&[1])])
            .unwrap();
        let dec = Decomposition::derive(&base);
        assert_eq!(dec.get(ps(&[0, 2])), Some((ps(&[0, 1, 2]), ps(&[1]))));
        assert_eq!(dec.get(ps(&[0, 1])), Some((ps(&[0, 1]), PointSet::EMPTY)));
        let refined = refined_model(&base).unwrap();
        assert!(refined.space.is_open(ps(&[0, 2])));
    }

    #[test]
    fn horizon_formula() {
        assert_eq!(refined_horizon(2, 1, 1), 8);
        assert_eq!(refined_horizon(1, 3, 2), 6);
    }
}
