//! The Menger game and `G1(Ostar, O)` side by side.
//!
//! One's cover `C` in the Menger game corresponds to its finite-union
//! closure; Two's finite sublist `F` corresponds to the single element
//! `⋃F`. Going back, an element of the closure is replaced by the least
//! sublist with that union (fewest members, then canonical mask order).

use std::collections::HashMap;
use std::sync::Arc;

use crate::covers::{finite_union_closure, CoverFamily};
use crate::engine::{
    strategy_move_one, strategy_move_two, GameKind, GameSpec, History, Move, OneMove, Side,
    Strategy, StrategyDescriptor, Transcript, TwoMove,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Least sublist of `cover` whose union is exactly `target`.
pub fn minimal_sublist(cover: &CoverFamily, target: PointSet) -> Option<Vec<PointSet>> {
    let cands: Vec<PointSet> = cover
        .elements()
        .iter()
        .copied()
        .filter(|e| e.is_subset(target))
        .collect();
    if cands.iter().fold(PointSet::EMPTY, |a, &b| a | b) != target || target.is_empty() {
        return None;
    }
    assert!(cands.len() < 32, "cover too large for sublist search");
    let mut best: Option<u32> = None;
    for mask in 1u32..(1u32 << cands.len()) {
        let u = (0..cands.len())
            .filter(|i| mask & (1 << i) != 0)
            .fold(PointSet::EMPTY, |a, i| a | cands[i]);
        if u != target {
            continue;
        }
        best = match best {
            Some(b) if (b.count_ones(), b) <= (mask.count_ones(), mask) => Some(b),
            _ => Some(mask),
        };
    }
    best.map(|m| {
        (0..cands.len())
            .filter(|i| m & (1 << i) != 0)
            .map(|i| cands[i])
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MengerDirection {
    MengerToOstar,
    OstarToMenger,
}

/// A Menger spec together with its `G1(Ostar, O)` mirror.
#[derive(Clone, Debug)]
pub struct MengerBridge {
    menger: GameSpec,
    ostar: GameSpec,
    back: HashMap<OneMove, OneMove>,
}

impl MengerBridge {
    pub fn new(menger: &GameSpec) -> Result<Self> {
        if menger.kind != GameKind::Menger {
            return Err(Error::Invariant(format!("expected a Menger spec, got {}", menger.kind)));
        }
        let mut back = HashMap::new();
        let mut pool = Vec::new();
        // pool is sorted, so the first cover with a given closure is the least
        for m in &menger.one_pool {
            let OneMove::Cover(c) = m else { unreachable!() };
            let closed = OneMove::cover(finite_union_closure(c));
            back.entry(closed.clone()).or_insert_with(|| m.clone());
            pool.push(closed);
        }
        let ostar = GameSpec::new(
            GameKind::G1 {
                a: crate::covers::CoverClass::Ostar,
                b: crate::covers::CoverClass::O,
            },
            menger.model.clone(),
            pool,
            menger.horizon,
        )?;
        Ok(MengerBridge {
            menger: menger.clone(),
            ostar,
            back,
        })
    }

    pub fn menger(&self) -> &GameSpec {
        &self.menger
    }

    pub fn ostar(&self) -> &GameSpec {
        &self.ostar
    }

    fn cover_of(&self, closed: &OneMove) -> Result<OneMove> {
        self.back
            .get(closed)
            .cloned()
            .ok_or_else(|| Error::Invariant(format!("{closed} is not the closure of a pool cover")))
    }

    fn to_ostar_history(&self, h: &History) -> Result<History> {
        let mut out = History::new();
        for inning in h.innings() {
            out.push_one(super::closure_move(&inning.one).expect("cover move"));
            out.push_two(TwoMove::Pick(inning.two.contribution()));
        }
        if let Some(p) = h.pending() {
            out.push_one(super::closure_move(p).expect("cover move"));
        }
        Ok(out)
    }

    /// Maps an ostar history back; Two's picks become least sublists unless
    /// `replay` supplies the Menger strategy that produced them.
    fn to_menger_history(&self, h: &History, replay: Option<&dyn Strategy>) -> Result<History> {
        let mut out = History::new();
        for (n, inning) in h.innings().iter().enumerate() {
            let c = self.cover_of(&inning.one)?;
            out.push_one(c.clone());
            let pick = inning.two.contribution();
            let replayed = match replay {
                Some(rho) => Some(strategy_move_two(&self.menger, rho, &out)?),
                None => None,
            };
            let r = match replayed {
                Some(r) if r.contribution() == pick => r,
                _ => {
                    let OneMove::Cover(cf) = &c else { unreachable!() };
                    TwoMove::Sublist(minimal_sublist(cf, pick).ok_or_else(|| {
                        Error::Invariant(format!("inning {n}: {pick} is not a union of cover elements"))
                    })?)
                }
            };
            out.push_two(r);
        }
        if let Some(p) = h.pending() {
            out.push_one(self.cover_of(p)?);
        }
        Ok(out)
    }

    pub fn to_ostar_transcript(&self, t: &Transcript) -> Result<Transcript> {
        Ok(self.to_ostar_history(&History::from_transcript(t))?.to_transcript())
    }

    pub fn to_menger_transcript(&self, t: &Transcript) -> Result<Transcript> {
        Ok(self
            .to_menger_history(&History::from_transcript(t), None)?
            .to_transcript())
    }

    /// Carries a strategy of either side across the bridge.
    pub fn translate(
        &self,
        strategy: Arc<dyn Strategy>,
        direction: MengerDirection,
    ) -> Result<Box<dyn Strategy>> {
        Ok(Box::new(Bridged {
            bridge: self.clone(),
            inner: strategy,
            direction,
        }))
    }
}

struct Bridged {
    bridge: MengerBridge,
    inner: Arc<dyn Strategy>,
    direction: MengerDirection,
}

impl Strategy for Bridged {
    fn side(&self) -> Side {
        self.inner.side()
    }

    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }

    fn positional(&self) -> bool {
        self.inner.positional()
    }

    fn decide(&self, _spec: &GameSpec, history: &History) -> Result<Move> {
        let b = &self.bridge;
        let inner = self.inner.as_ref();
        match (self.direction, inner.side()) {
            // inner plays Menger; we play G1(Ostar, O)
            (MengerDirection::MengerToOstar, Side::One) => {
                let h = b.to_menger_history(history, None)?;
                let m = strategy_move_one(&b.menger, inner, &h)?;
                Ok(Move::One(super::closure_move(&m).expect("cover move")))
            }
            (MengerDirection::MengerToOstar, Side::Two) => {
                let h = b.to_menger_history(history, Some(inner))?;
                let r = strategy_move_two(&b.menger, inner, &h)?;
                Ok(Move::Two(TwoMove::Pick(r.contribution())))
            }
            // inner plays G1(Ostar, O); we play Menger
            (MengerDirection::OstarToMenger, Side::One) => {
                let h = b.to_ostar_history(history)?;
                let m = strategy_move_one(&b.ostar, inner, &h)?;
                Ok(Move::One(b.cover_of(&m)?))
            }
            (MengerDirection::OstarToMenger, Side::Two) => {
                let h = b.to_ostar_history(history)?;
                let r = strategy_move_two(&b.ostar, inner, &h)?;
                let Some(OneMove::Cover(c)) = history.pending() else {
                    return Err(Error::IllegalTranscript("expected a pending cover".into()));
                };
                let pick = r.contribution();
                let sub = minimal_sublist(c, pick).ok_or_else(|| {
                    Error::Invariant(format!("{pick} is not a union of cover elements"))
                })?;
                Ok(Move::Two(TwoMove::Sublist(sub)))
            }
        }
    }
}
