//! Bounded-horizon game machinery shared by all games.
//!
//! Every game here has the same skeleton: in each inning One makes a move
//! from a fixed pool, Two answers, and the union of Two's answers is the
//! covered set. In the selection games (Rothberger, Menger, `G1(A, B)`)
//! Two wins by covering the space; in the point-open family One wins when
//! Two's answers cover it. The ω-length play of the topological games is
//! replaced by a horizon: coverage must happen within `horizon` innings.
//! That reading is conservative for the covering player.

mod certify;
mod spec_file;
mod strategy;

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::covers::{
    classify, classify_gdelta, finite_union_closure, irredundant_covers, minimal_alster_covers,
    minimal_k_covers, CoverClass, CoverFamily, GdeltaCover,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::SpaceModel;

pub use certify::{certify, certify_with_budget, Certificate, DEFAULT_BUDGET};
pub use spec_file::{GameFile, G1Params};
pub use strategy::{
    tabulate, Move, RuleDescriptor, Strategy, StrategyBody, StrategyDescriptor, StrategyFile, TableEntry, TableKey,
    TableStrategy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::One => "One",
            Side::Two => "Two",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameKind {
    Rothberger,
    Menger,
    PointOpen,
    CompactOpen,
    CompactGdelta,
    G1 { a: CoverClass, b: CoverClass },
}

impl GameKind {
    /// The player who wins by covering the space.
    pub fn coverer(self) -> Side {
        match self {
            GameKind::PointOpen | GameKind::CompactOpen | GameKind::CompactGdelta => Side::One,
            _ => Side::Two,
        }
    }

    pub fn validate(self) -> Result<()> {
        if let GameKind::G1 { a, b } = self {
            if !matches!(
                a,
                CoverClass::O | CoverClass::Ostar | CoverClass::K | CoverClass::Alster
            ) {
                return Err(Error::Invariant(format!("G1 first class must be O, Ostar, K or Alster, got {a}")));
            }
            if !matches!(b, CoverClass::O | CoverClass::Odelta) {
                return Err(Error::Invariant(format!("G1 second class must be O or Odelta, got {b}")));
            }
        }
        Ok(())
    }

    /// One plays Gδ-presented covers.
    pub fn uses_gdelta_covers(self) -> bool {
        matches!(self, GameKind::G1 { a: CoverClass::Alster, .. })
    }

    pub fn name(self) -> String {
        match self {
            GameKind::Rothberger => "Rothberger".into(),
            GameKind::Menger => "Menger".into(),
            GameKind::PointOpen => "PointOpen".into(),
            GameKind::CompactOpen => "CompactOpen".into(),
            GameKind::CompactGdelta => "CompactGdelta".into(),
            GameKind::G1 { a, b } => format!("G1({a},{b})"),
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OneMove {
    Cover(Arc<CoverFamily>),
    Gdelta(Arc<GdeltaCover>),
    Point(usize),
    Compact(PointSet),
}

impl OneMove {
    pub fn cover(fam: CoverFamily) -> Self {
        OneMove::Cover(Arc::new(fam))
    }

    pub fn gdelta(fam: GdeltaCover) -> Self {
        OneMove::Gdelta(Arc::new(fam))
    }

    /// The set Two's answer must include (points and compacts only).
    pub fn demand(&self) -> Option<PointSet> {
        match self {
            OneMove::Point(x) => Some(PointSet::singleton(*x)),
            OneMove::Compact(k) => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for OneMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneMove::Cover(c) => write!(f, "cover {c}"),
            OneMove::Gdelta(g) => {
                f.write_str("gdelta {")?;
                for (i, t) in g.targets().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("}")
            }
            OneMove::Point(x) => write!(f, "point {x}"),
            OneMove::Compact(k) => write!(f, "compact {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoMove {
    /// A single set: a cover element, a Gδ target, or an open answer.
    Pick(PointSet),
    /// A finite subfamily of One's cover (Menger game).
    Sublist(Vec<PointSet>),
}

impl TwoMove {
    pub fn contribution(&self) -> PointSet {
        match self {
            TwoMove::Pick(s) => *s,
            TwoMove::Sublist(v) => v.iter().fold(PointSet::EMPTY, |a, &b| a | b),
        }
    }
}

impl fmt::Display for TwoMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoMove::Pick(s) => write!(f, "{s}"),
            TwoMove::Sublist(v) => {
                f.write_str("[")?;
                for (i, s) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inning {
    pub one: OneMove,
    pub two: TwoMove,
    /// Covered set after this inning.
    pub covered: PointSet,
}

/// A position: completed innings plus One's move awaiting an answer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct History {
    innings: Vec<Inning>,
    pending: Option<OneMove>,
}

impl History {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn innings(&self) -> &[Inning] {
        &self.innings
    }

    pub fn inning_index(&self) -> usize {
        self.innings.len()
    }

    pub fn pending(&self) -> Option<&OneMove> {
        self.pending.as_ref()
    }

    pub fn covered(&self) -> PointSet {
        self.innings.last().map_or(PointSet::EMPTY, |i| i.covered)
    }

    pub fn push_one(&mut self, m: OneMove) {
        debug_assert!(self.pending.is_none());
        self.pending = Some(m);
    }

    pub fn push_two(&mut self, r: TwoMove) {
        let one = self.pending.take().expect("no pending One move");
        let covered = self.covered() | r.contribution();
        self.innings.push(Inning { one, two: r, covered });
    }

    /// Undoes `push_two`, leaving One's move pending again.
    pub fn pop_two(&mut self) {
        let inning = self.innings.pop().expect("no inning to pop");
        self.pending = Some(inning.one);
    }

    pub fn pop_one(&mut self) {
        self.pending = None;
    }

    pub fn with_one(&self, m: OneMove) -> History {
        let mut h = self.clone();
        h.push_one(m);
        h
    }

    pub fn to_transcript(&self) -> Transcript {
        Transcript {
            innings: self.innings.clone(),
        }
    }

    pub fn from_transcript(t: &Transcript) -> History {
        History {
            innings: t.innings.clone(),
            pending: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub innings: Vec<Inning>,
}

impl Transcript {
    pub fn covered(&self) -> PointSet {
        self.innings.last().map_or(PointSet::EMPTY, |i| i.covered)
    }

    pub fn len(&self) -> usize {
        self.innings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.innings.is_empty()
    }

    /// Covered set after each inning.
    pub fn covered_snapshots(&self) -> Vec<PointSet> {
        self.innings.iter().map(|i| i.covered).collect()
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, i) in self.innings.iter().enumerate() {
            writeln!(f, "inning {n}: One {} / Two {} -> covered {}", i.one, i.two, i.covered)?;
        }
        Ok(())
    }
}

/// A finite two-player game: kind, arena, One's move pool and horizon.
#[derive(Clone, Debug)]
pub struct GameSpec {
    pub kind: GameKind,
    pub model: Arc<SpaceModel>,
    pub one_pool: Vec<OneMove>,
    pub horizon: usize,
    pool_index: Arc<HashSet<OneMove>>,
    opens: Arc<OnceLock<Vec<PointSet>>>,
}

impl GameSpec {
    /// Validates pool legality and the horizon. The pool is sorted
    /// canonically and deduplicated.
    pub fn new(
        kind: GameKind,
        model: Arc<SpaceModel>,
        mut one_pool: Vec<OneMove>,
        horizon: usize,
    ) -> Result<Self> {
        kind.validate()?;
        if horizon == 0 {
            return Err(Error::Invariant("horizon must be at least 1".into()));
        }
        one_pool.sort();
        one_pool.dedup();
        if one_pool.is_empty() {
            return Err(Error::Invariant("One's move pool is empty".into()));
        }
        for m in &one_pool {
            check_pool_entry(kind, &model, m)?;
        }
        let pool_index = Arc::new(one_pool.iter().cloned().collect());
        Ok(GameSpec {
            kind,
            model,
            one_pool,
            horizon,
            pool_index,
            opens: Arc::new(OnceLock::new()),
        })
    }

    /// Spec with One's full derived pool: irredundant covers for the
    /// Rothberger, Menger and `G1(O, _)` games, their union closures for
    /// `G1(Ostar, _)`, minimal k-covers or Alster covers for the other `G1`
    /// games, all points for point-open, and the compact pool otherwise.
    pub fn with_derived_pool(kind: GameKind, model: Arc<SpaceModel>, horizon: usize) -> Result<Self> {
        let pool = derived_pool(kind, &model)?;
        Self::new(kind, model, pool, horizon)
    }

    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::Invariant("horizon must be at least 1".into()));
        }
        let mut s = self.clone();
        s.horizon = horizon;
        Ok(s)
    }

    pub fn full(&self) -> PointSet {
        self.model.full()
    }

    pub fn opens(&self) -> &[PointSet] {
        self.opens.get_or_init(|| self.model.space.opens())
    }

    pub fn pool_contains(&self, m: &OneMove) -> bool {
        self.pool_index.contains(m)
    }

    /// Winner of a finished or decided play with the given covered set.
    pub fn winner_for(&self, covered: PointSet) -> Side {
        if covered == self.full() {
            self.kind.coverer()
        } else {
            self.kind.coverer().other()
        }
    }

    pub fn is_decided(&self, history: &History) -> bool {
        history.covered() == self.full() || history.inning_index() >= self.horizon
    }

    /// Two's legal answers to `pending`, in canonical order.
    pub fn two_moves(&self, pending: &OneMove) -> Vec<TwoMove> {
        match pending {
            OneMove::Cover(c) => {
                if self.kind == GameKind::Menger {
                    nonempty_sublists(c.elements())
                } else {
                    c.elements().iter().map(|&e| TwoMove::Pick(e)).collect()
                }
            }
            OneMove::Gdelta(g) => g.targets().into_iter().map(TwoMove::Pick).collect(),
            OneMove::Point(_) | OneMove::Compact(_) => {
                let need = pending.demand().unwrap_or_default();
                self.opens()
                    .iter()
                    .filter(|o| need.is_subset(**o))
                    .map(|&o| TwoMove::Pick(o))
                    .collect()
            }
        }
    }

    pub fn check_two_move(&self, pending: &OneMove, r: &TwoMove) -> std::result::Result<(), String> {
        match (pending, r) {
            (OneMove::Cover(c), TwoMove::Sublist(v)) if self.kind == GameKind::Menger => {
                if v.is_empty() {
                    return Err("empty sublist".into());
                }
                if v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err("sublist not canonical (sorted, distinct)".into());
                }
                match v.iter().find(|e| !c.contains(**e)) {
                    Some(e) => Err(format!("{e} is not an element of One's cover")),
                    None => Ok(()),
                }
            }
            (OneMove::Cover(c), TwoMove::Pick(e)) if self.kind != GameKind::Menger => {
                if c.contains(*e) {
                    Ok(())
                } else {
                    Err(format!("{e} is not an element of One's cover"))
                }
            }
            (OneMove::Gdelta(g), TwoMove::Pick(t)) => {
                if g.find(*t).is_some() {
                    Ok(())
                } else {
                    Err(format!("{t} is not a target of One's Gδ cover"))
                }
            }
            (OneMove::Point(_) | OneMove::Compact(_), TwoMove::Pick(o)) => {
                let need = pending.demand().unwrap_or_default();
                if !self.model.space.is_open(*o) {
                    Err(format!("{o} is not open"))
                } else if !need.is_subset(*o) {
                    Err(format!("{o} does not include {need}"))
                } else {
                    Ok(())
                }
            }
            _ => Err(format!("answer {r} has the wrong shape for {pending}")),
        }
    }

    pub fn check_one_move(&self, m: &OneMove) -> std::result::Result<(), String> {
        if self.pool_contains(m) {
            Ok(())
        } else {
            Err(format!("{m} is not in One's pool"))
        }
    }
}

fn check_pool_entry(kind: GameKind, model: &SpaceModel, m: &OneMove) -> Result<()> {
    let bad = |why: String| Err(Error::Invariant(format!("illegal pool entry for {kind}: {why}")));
    match (kind, m) {
        (GameKind::Rothberger | GameKind::Menger, OneMove::Cover(c)) => {
            if !classify(model, c).contains(&CoverClass::O) {
                return bad(format!("{c} is not an open cover"));
            }
        }
        (GameKind::G1 { a: CoverClass::Alster, .. }, OneMove::Gdelta(g)) => {
            if !classify_gdelta(model, g).contains(&CoverClass::Alster) {
                return bad("Gδ cover is not Alster".into());
            }
        }
        (GameKind::G1 { a, .. }, OneMove::Cover(c)) if a != CoverClass::Alster => {
            if !classify(model, c).contains(&a) {
                return bad(format!("{c} is not in class {a}"));
            }
        }
        (GameKind::PointOpen, OneMove::Point(x)) => {
            if *x >= model.point_count() {
                return bad(format!("point {x} out of range"));
            }
        }
        (GameKind::CompactOpen | GameKind::CompactGdelta, OneMove::Compact(k)) => {
            if !model.compact_pool.contains(k) {
                return bad(format!("{k} is not in the compact pool"));
            }
        }
        _ => return bad(format!("{m} has the wrong shape")),
    }
    Ok(())
}

/// One's full pool for `kind` on `model`.
pub fn derived_pool(kind: GameKind, model: &SpaceModel) -> Result<Vec<OneMove>> {
    kind.validate()?;
    Ok(match kind {
        GameKind::Rothberger
        | GameKind::Menger
        | GameKind::G1 {
            a: CoverClass::O, ..
        } => irredundant_covers(&model.space)?
            .into_iter()
            .map(OneMove::cover)
            .collect(),
        GameKind::G1 {
            a: CoverClass::Ostar,
            ..
        } => {
            let mut v: Vec<OneMove> = irredundant_covers(&model.space)?
                .iter()
                .map(|c| OneMove::cover(finite_union_closure(c)))
                .collect();
            v.sort();
            v.dedup();
            v
        }
        GameKind::G1 {
            a: CoverClass::K, ..
        } => minimal_k_covers(model)?.into_iter().map(OneMove::cover).collect(),
        GameKind::G1 {
            a: CoverClass::Alster,
            ..
        } => minimal_alster_covers(model)?
            .into_iter()
            .map(OneMove::gdelta)
            .collect(),
        GameKind::G1 { a, .. } => {
            return Err(Error::Invariant(format!("no derived pool for class {a}")))
        }
        GameKind::PointOpen => (0..model.point_count()).map(OneMove::Point).collect(),
        GameKind::CompactOpen | GameKind::CompactGdelta => {
            model.compact_pool.iter().map(|&k| OneMove::Compact(k)).collect()
        }
    })
}

fn nonempty_sublists(elements: &[PointSet]) -> Vec<TwoMove> {
    assert!(elements.len() < 20, "Menger cover too large to enumerate sublists");
    (1u32..(1u32 << elements.len()))
        .map(|mask| {
            TwoMove::Sublist(
                (0..elements.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| elements[i])
                    .collect(),
            )
        })
        .collect()
}

/// Legal moves for `side` at `history`.
pub fn legal_moves(spec: &GameSpec, history: &History, side: Side) -> Result<Vec<Move>> {
    validate_history(spec, history)?;
    match (side, history.pending()) {
        (Side::One, None) => Ok(spec.one_pool.iter().cloned().map(Move::One).collect()),
        (Side::Two, Some(p)) => Ok(spec.two_moves(p).into_iter().map(Move::Two).collect()),
        (Side::One, Some(_)) => Err(Error::IllegalTranscript("One to move but a One move is pending".into())),
        (Side::Two, None) => Err(Error::IllegalTranscript("Two to move but nothing is pending".into())),
    }
}

/// Checks every recorded move and covered snapshot.
pub fn validate_history(spec: &GameSpec, history: &History) -> Result<()> {
    let mut covered = PointSet::EMPTY;
    for (n, inning) in history.innings().iter().enumerate() {
        if covered == spec.full() {
            return Err(Error::IllegalTranscript(format!("inning {n} played after the space was covered")));
        }
        if n >= spec.horizon {
            return Err(Error::IllegalTranscript(format!("inning {n} beyond horizon {}", spec.horizon)));
        }
        spec.check_one_move(&inning.one)
            .map_err(|e| Error::IllegalTranscript(format!("inning {n}: {e}")))?;
        spec.check_two_move(&inning.one, &inning.two)
            .map_err(|e| Error::IllegalTranscript(format!("inning {n}: {e}")))?;
        covered |= inning.two.contribution();
        if inning.covered != covered {
            return Err(Error::IllegalTranscript(format!("inning {n}: covered snapshot mismatch")));
        }
    }
    if let Some(p) = history.pending() {
        spec.check_one_move(p)
            .map_err(|e| Error::IllegalTranscript(format!("pending: {e}")))?;
    }
    Ok(())
}

fn ask_one(spec: &GameSpec, s: &dyn Strategy, h: &History) -> Result<OneMove> {
    let inning = h.inning_index();
    match s.decide(spec, h)? {
        Move::One(m) => {
            spec.check_one_move(&m).map_err(|reason| Error::IllegalMove {
                side: Side::One,
                inning,
                reason,
            })?;
            Ok(m)
        }
        Move::Two(_) => Err(Error::IllegalMove {
            side: Side::One,
            inning,
            reason: "strategy returned a Two move".into(),
        }),
    }
}

fn ask_two(spec: &GameSpec, s: &dyn Strategy, h: &History) -> Result<TwoMove> {
    let inning = h.inning_index();
    let pending = h.pending().expect("pending One move");
    match s.decide(spec, h)? {
        Move::Two(r) => {
            spec.check_two_move(pending, &r).map_err(|reason| Error::IllegalMove {
                side: Side::Two,
                inning,
                reason,
            })?;
            Ok(r)
        }
        Move::One(_) => Err(Error::IllegalMove {
            side: Side::Two,
            inning,
            reason: "strategy returned a One move".into(),
        }),
    }
}

/// Runs the game to its horizon, stopping as soon as the space is covered.
pub fn play(spec: &GameSpec, one: &dyn Strategy, two: &dyn Strategy) -> Result<Transcript> {
    if one.side() != Side::One || two.side() != Side::Two {
        return Err(Error::Invariant("play needs a One strategy and a Two strategy".into()));
    }
    let mut h = History::new();
    while !spec.is_decided(&h) {
        let m = ask_one(spec, one, &h)?;
        h.push_one(m);
        let r = ask_two(spec, two, &h)?;
        h.push_two(r);
    }
    Ok(h.to_transcript())
}

/// Winner of a complete (or early-decided) transcript.
pub fn judge(spec: &GameSpec, transcript: &Transcript) -> Result<Side> {
    let h = History::from_transcript(transcript);
    validate_history(spec, &h)?;
    if !spec.is_decided(&h) {
        return Err(Error::Incomplete(format!(
            "{} of {} innings played and the space is not covered",
            transcript.len(),
            spec.horizon
        )));
    }
    Ok(spec.winner_for(transcript.covered()))
}

pub(crate) fn strategy_move_one(spec: &GameSpec, s: &dyn Strategy, h: &History) -> Result<OneMove> {
    ask_one(spec, s, h)
}

pub(crate) fn strategy_move_two(spec: &GameSpec, s: &dyn Strategy, h: &History) -> Result<TwoMove> {
    ask_two(spec, s, h)
}

#[cfg(test)]
mod tests;
