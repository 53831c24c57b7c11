//! Strategy translations between dual games.
//!
//! Three pairs are dualities: a winning strategy for One in the left game
//! becomes one for Two in the right game and vice versa. The Menger pair is
//! an equivalence and is handled in [`menger`].

pub mod menger;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::covers::{
    check_open_cover, finite_union_closure, is_alster, is_k_cover, reduce_to_irredundant,
    reduce_to_minimal_k_cover, CoverClass, CoverFamily, GdeltaCover,
};
use crate::engine::{
    strategy_move_one, strategy_move_two, tabulate, GameKind, GameSpec, History, Move, OneMove,
    Side, Strategy, StrategyDescriptor, StrategyFile, TableKey, TwoMove,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

pub use menger::{minimal_sublist, MengerBridge, MengerDirection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualityPair {
    PointOpenRothberger,
    CompactOpenK,
    CompactGdeltaAlster,
    MengerOstar,
}

impl DualityPair {
    pub const ALL: [DualityPair; 4] = [
        DualityPair::PointOpenRothberger,
        DualityPair::CompactOpenK,
        DualityPair::CompactGdeltaAlster,
        DualityPair::MengerOstar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualityPair::PointOpenRothberger => "point-open/rothberger",
            DualityPair::CompactOpenK => "compact-open/k-open",
            DualityPair::CompactGdeltaAlster => "compact-gdelta/alster",
            DualityPair::MengerOstar => "menger/ostar",
        }
    }

    /// (left, right): the point/compact game first, Menger first.
    pub fn kinds(self) -> (GameKind, GameKind) {
        match self {
            DualityPair::PointOpenRothberger => (GameKind::PointOpen, GameKind::Rothberger),
            DualityPair::CompactOpenK => (
                GameKind::CompactOpen,
                GameKind::G1 {
                    a: CoverClass::K,
                    b: CoverClass::O,
                },
            ),
            DualityPair::CompactGdeltaAlster => (
                GameKind::CompactGdelta,
                GameKind::G1 {
                    a: CoverClass::Alster,
                    b: CoverClass::Odelta,
                },
            ),
            DualityPair::MengerOstar => (
                GameKind::Menger,
                GameKind::G1 {
                    a: CoverClass::Ostar,
                    b: CoverClass::O,
                },
            ),
        }
    }

    pub fn partner(self, kind: GameKind) -> Result<GameKind> {
        let (l, r) = self.kinds();
        if kind == l {
            Ok(r)
        } else if kind == r {
            Ok(l)
        } else {
            Err(Error::Invariant(format!("{kind} is not part of the pair {self}")))
        }
    }

    /// True for the dualities, false for the Menger equivalence.
    pub fn flips_winner(self) -> bool {
        self != DualityPair::MengerOstar
    }

    pub fn of_kind(kind: GameKind) -> Option<DualityPair> {
        DualityPair::ALL
            .into_iter()
            .find(|p| p.kinds().0 == kind || p.kinds().1 == kind)
    }
}

impl fmt::Display for DualityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualityPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let p = match t.as_str() {
            "point-open/rothberger" | "po-r" | "pointopen" | "rothberger" => {
                DualityPair::PointOpenRothberger
            }
            "compact-open/k-open" | "co-k" | "compactopen" => DualityPair::CompactOpenK,
            "compact-gdelta/alster" | "cg-alster" | "compactgdelta" => DualityPair::CompactGdeltaAlster,
            "menger/ostar" | "menger" => DualityPair::MengerOstar,
            _ => return Err(Error::Invariant(format!("unknown duality pair {s:?}"))),
        };
        Ok(p)
    }
}

/// The partner game on the same model and horizon, with One's derived
/// pool. For the Menger pair going right, the pool is the union closures
/// of the given Menger pool.
pub fn dual_spec(spec: &GameSpec, pair: DualityPair) -> Result<GameSpec> {
    let kind = pair.partner(spec.kind)?;
    if pair == DualityPair::MengerOstar && spec.kind == GameKind::Menger {
        return Ok(MengerBridge::new(spec)?.ostar().clone());
    }
    GameSpec::with_derived_pool(kind, spec.model.clone(), spec.horizon)
}

fn check_source(spec: &GameSpec, side: Side, strategy: &dyn Strategy) -> Result<DualityPair> {
    if !matches!(
        spec.kind,
        GameKind::PointOpen | GameKind::CompactOpen | GameKind::CompactGdelta
    ) {
        return Err(Error::Invariant(format!(
            "translations start from point-open, compact-open or compact-Gδ games, not {}",
            spec.kind
        )));
    }
    if strategy.side() != side {
        return Err(Error::Invariant(format!("expected a strategy for {side}")));
    }
    Ok(DualityPair::of_kind(spec.kind).expect("source kind has a pair"))
}

/// One's strategy in the point/compact game, read as Two's strategy in the
/// dual cover game: answer with the least element of One's cover that
/// contains the point or compact the source strategy would play.
pub struct EasyTranslation {
    source: GameSpec,
    sigma: Arc<dyn Strategy>,
}

pub fn translate_easy(source: &GameSpec, sigma: Arc<dyn Strategy>) -> Result<EasyTranslation> {
    check_source(source, Side::One, sigma.as_ref())?;
    Ok(EasyTranslation {
        source: source.clone(),
        sigma,
    })
}

impl EasyTranslation {
    /// Source-game history matching a dual history: One's moves are
    /// replayed from the source strategy, Two's picks carry over.
    pub fn source_history(&self, dual: &History) -> Result<History> {
        let mut src = History::new();
        for inning in dual.innings() {
            let m = strategy_move_one(&self.source, self.sigma.as_ref(), &src)?;
            src.push_one(m);
            src.push_two(TwoMove::Pick(inning.two.contribution()));
        }
        Ok(src)
    }
}

impl Strategy for EasyTranslation {
    fn side(&self) -> Side {
        Side::Two
    }

    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }

    fn positional(&self) -> bool {
        self.sigma.positional()
    }

    fn decide(&self, _spec: &GameSpec, history: &History) -> Result<Move> {
        let src = self.source_history(history)?;
        let m = strategy_move_one(&self.source, self.sigma.as_ref(), &src)?;
        let need = m.demand().expect("point or compact move");
        let pick = match history.pending() {
            Some(OneMove::Cover(c)) => c.least_including(need),
            Some(OneMove::Gdelta(g)) => g.targets().into_iter().find(|t| need.is_subset(*t)),
            _ => return Err(Error::IllegalTranscript("expected a pending cover".into())),
        };
        pick.map(|p| Move::Two(TwoMove::Pick(p))).ok_or_else(|| {
            Error::Translation(format!("no element of One's cover includes {need}"))
        })
    }
}

/// Two's strategy in the point/compact game, read as One's strategy in the
/// dual cover game: play every answer the source strategy could give, then
/// drop redundant members.
pub struct HardTranslation {
    source: GameSpec,
    tau: Arc<dyn Strategy>,
}

pub fn translate_hard(source: &GameSpec, tau: Arc<dyn Strategy>) -> Result<HardTranslation> {
    check_source(source, Side::Two, tau.as_ref())?;
    Ok(HardTranslation {
        source: source.clone(),
        tau,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub element: PointSet,
    pub source_move: OneMove,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub key: TableKey,
    pub witnesses: Vec<Witness>,
}

impl HardTranslation {
    fn answer(&self, src: &History, m: &OneMove) -> Result<PointSet> {
        let h = src.with_one(m.clone());
        Ok(strategy_move_two(&self.source, self.tau.as_ref(), &h)?.contribution())
    }

    /// Least source move whose answer is `element`.
    fn witness(&self, src: &History, element: PointSet) -> Result<Option<OneMove>> {
        for m in &self.source.one_pool {
            if self.answer(src, m)? == element {
                return Ok(Some(m.clone()));
            }
        }
        Ok(None)
    }

    /// Source-game history matching a dual history, advancing each inning
    /// by the witness of Two's pick.
    pub fn source_history(&self, dual: &History) -> Result<History> {
        let mut src = History::new();
        for (n, inning) in dual.innings().iter().enumerate() {
            let pick = inning.two.contribution();
            let m = self.witness(&src, pick)?.ok_or_else(|| {
                Error::Translation(format!("inning {n}: pick {pick} was not offered by the source strategy"))
            })?;
            src.push_one(m);
            src.push_two(TwoMove::Pick(pick));
        }
        Ok(src)
    }

    /// The witness map of the move made at `dual`.
    pub fn witnesses(&self, dual_spec: &GameSpec, dual: &History) -> Result<Vec<Witness>> {
        let src = self.source_history(dual)?;
        let mv = self.decide(dual_spec, dual)?;
        let elements = match mv {
            Move::One(OneMove::Cover(c)) => c.elements().to_vec(),
            Move::One(OneMove::Gdelta(g)) => g.targets(),
            _ => unreachable!("hard translation plays covers"),
        };
        elements
            .into_iter()
            .map(|e| {
                let m = self.witness(&src, e)?.expect("every element has a witness");
                Ok(Witness {
                    element: e,
                    source_move: m,
                })
            })
            .collect()
    }

    /// Tabulated strategy plus its witness map.
    pub fn to_file_with_witnesses(&self, dual_spec: &GameSpec, budget: u64) -> Result<StrategyFile> {
        let table = tabulate(dual_spec, self, budget)?;
        let mut file = table.to_file().expect("tables serialize");
        let mut entries = Vec::new();
        for e in table.entries() {
            let h = history_for_key(dual_spec, &e.key, self)?;
            entries.push(WitnessEntry {
                key: e.key.clone(),
                witnesses: self.witnesses(dual_spec, &h)?,
            });
        }
        file.witness_map = Some(serde_json::to_value(entries)?);
        Ok(file)
    }
}

/// A concrete history realising a table key. History keys are direct;
/// position keys are realised by searching the reachable tree.
fn history_for_key(spec: &GameSpec, key: &TableKey, one: &dyn Strategy) -> Result<History> {
    match key {
        TableKey::History { moves, pending } => {
            let mut h = History::new();
            for (m, r) in moves {
                h.push_one(m.clone());
                h.push_two(r.clone());
            }
            if let Some(p) = pending {
                h.push_one(p.clone());
            }
            Ok(h)
        }
        TableKey::Position {
            covered,
            remaining,
            pending,
        } => {
            let target_inning = spec.horizon - remaining;
            let mut h = History::new();
            if find_position(spec, one, &mut h, *covered, target_inning)? {
                if let Some(p) = pending {
                    h.push_one(p.clone());
                }
                Ok(h)
            } else {
                Err(Error::Invariant("position key is not reachable".into()))
            }
        }
    }
}

fn find_position(
    spec: &GameSpec,
    one: &dyn Strategy,
    h: &mut History,
    covered: PointSet,
    inning: usize,
) -> Result<bool> {
    if h.inning_index() == inning {
        return Ok(h.covered() == covered);
    }
    if spec.is_decided(h) {
        return Ok(false);
    }
    let m = strategy_move_one(spec, one, h)?;
    h.push_one(m.clone());
    for r in spec.two_moves(&m) {
        h.push_two(r);
        if find_position(spec, one, h, covered, inning)? {
            return Ok(true);
        }
        h.pop_two();
    }
    h.pop_one();
    Ok(false)
}

impl Strategy for HardTranslation {
    fn side(&self) -> Side {
        Side::One
    }

    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }

    fn positional(&self) -> bool {
        self.tau.positional()
    }

    fn decide(&self, spec: &GameSpec, history: &History) -> Result<Move> {
        let src = self.source_history(history)?;
        let mut answers = Vec::with_capacity(self.source.one_pool.len());
        for m in &self.source.one_pool {
            answers.push(self.answer(&src, m)?);
        }
        let fam = CoverFamily::dedup(answers);
        let model = &spec.model;
        let mv = match spec.kind {
            GameKind::Rothberger => {
                check_open_cover(model, &fam).map_err(Error::Translation)?;
                OneMove::cover(reduce_to_irredundant(model.full(), &fam))
            }
            GameKind::G1 { a: CoverClass::K, .. } => {
                if !is_k_cover(model, &fam) {
                    return Err(Error::Translation(format!("{fam} is not a k-cover")));
                }
                OneMove::cover(reduce_to_minimal_k_cover(model, &fam))
            }
            GameKind::G1 {
                a: CoverClass::Alster,
                ..
            } => {
                let reduced = reduce_to_minimal_k_cover(model, &fam);
                let g = GdeltaCover::from_opens(reduced.elements())?;
                if !is_alster(model, &g) {
                    return Err(Error::Translation(format!("{fam} is not an Alster cover")));
                }
                OneMove::gdelta(g)
            }
            k => return Err(Error::Invariant(format!("hard translation does not target {k}"))),
        };
        Ok(Move::One(mv))
    }
}

/// Closure families used when a cover game is mirrored by its
/// finite-union closure.
pub fn closure_move(m: &OneMove) -> Option<OneMove> {
    match m {
        OneMove::Cover(c) => Some(OneMove::cover(finite_union_closure(c))),
        _ => None,
    }
}

#[cfg(test)]
mod tests;
