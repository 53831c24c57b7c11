//! Two's rule strategies for the Rothberger game from the examples.

use std::sync::Arc;

use serde_json::json;

use crate::covers::CoverFamily;
use crate::engine::{
    GameKind, GameSpec, History, Move, OneMove, RuleDescriptor, Side, Strategy,
    StrategyDescriptor, TwoMove,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::{FiniteSpace, SpaceModel};

fn pick_containing(h: &History, x: usize) -> Result<Move> {
    let undefined = |reason: String| Error::StrategyUndefined {
        side: Side::Two,
        inning: h.inning_index(),
        reason,
    };
    match h.pending() {
        Some(OneMove::Cover(c)) => c
            .least_containing(x)
            .map(|e| Move::Two(TwoMove::Pick(e)))
            .ok_or_else(|| undefined(format!("no element contains {x}"))),
        _ => Err(undefined("expected a pending cover".into())),
    }
}

fn descriptor(name: &str, params: serde_json::Value) -> StrategyDescriptor {
    StrategyDescriptor::Rule(RuleDescriptor {
        name: name.into(),
        params,
    })
}

/// Inning `n` takes the least element containing the least uncovered point,
/// enumerating the space one point at a time.
#[derive(Clone, Copy, Debug, Default)]
pub struct CountableEnumeration;

impl Strategy for CountableEnumeration {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        descriptor("countable_enumeration", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let x = (spec.full() - h.covered()).min().unwrap_or(0);
        pick_containing(h, x)
    }
}

pub fn countable_enumeration_strategy(_model: &SpaceModel) -> CountableEnumeration {
    CountableEnumeration
}

/// Takes the least element containing an uncovered point of highest
/// Cantor–Bendixson level (least such point on ties).
#[derive(Clone, Copy, Debug, Default)]
pub struct ScatteredRank;

impl ScatteredRank {
    pub fn target_point(space: &FiniteSpace, covered: PointSet) -> Result<Option<usize>> {
        let levels = space
            .cb_levels()
            .ok_or_else(|| Error::Invariant("space not scattered".into()))?;
        let uncovered = space.full() - covered;
        Ok(uncovered
            .iter()
            .max_by(|&a, &b| levels[a].cmp(&levels[b]).then(b.cmp(&a))))
    }
}

impl Strategy for ScatteredRank {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        descriptor("scattered_rank", json!({}))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let x = ScatteredRank::target_point(&spec.model.space, h.covered())?.unwrap_or(0);
        pick_containing(h, x)
    }
}

pub fn scattered_rank_strategy(model: &SpaceModel) -> Result<ScatteredRank> {
    if !model.space.is_scattered() {
        return Err(Error::Invariant("space not scattered".into()));
    }
    Ok(ScatteredRank)
}

/// Finite shadow of the one-point Lindelöfication: isolated points
/// `0..n`, a special point `p = n`, and neighbourhoods of `p` whose
/// complements lie inside the fixed `c`-set `B = {0..c}`, `c ≤ N`. The sets
/// "containing `p` with at most `c` points missing" are not closed under
/// intersection, so the missing points are confined to one budget set.
#[derive(Clone, Debug)]
pub struct FortissimoModel {
    pub n: usize,
    pub c: usize,
    pub model: Arc<SpaceModel>,
}

impl FortissimoModel {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        if c > n {
            return Err(Error::Invariant(format!("budget c = {c} exceeds N = {n}")));
        }
        if n + 1 > crate::pointset::MAX_POINTS {
            return Err(Error::Unsupported(format!("N = {n} exceeds the point limit")));
        }
        let p = n;
        let full = PointSet::full(n + 1);
        let mut nbhd: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        nbhd.push(full - PointSet::full(c));
        let space = FiniteSpace::from_neighbourhoods(nbhd)?;
        debug_assert!(space.neighbourhood(p).contains(p));
        let model = SpaceModel::new(space, format!("fortissimo(N={n},c={c})"));
        Ok(FortissimoModel {
            n,
            c,
            model: Arc::new(model),
        })
    }

    pub fn special_point(&self) -> usize {
        self.n
    }

    pub fn budget_set(&self) -> PointSet {
        PointSet::full(self.c)
    }

    /// Irredundant covers by basic opens: one neighbourhood `X ∖ S` of `p`
    /// plus the singletons of `S`, or two neighbourhoods with disjoint
    /// nonempty holes.
    pub fn basic_covers(&self) -> Vec<CoverFamily> {
        let full = self.model.full();
        let b = self.budget_set();
        let mut out = Vec::new();
        for s in b.subsets() {
            let mut els = vec![full - s];
            els.extend(s.iter().map(PointSet::singleton));
            out.push(CoverFamily::new(els).expect("distinct members"));
        }
        for s1 in b.subsets().filter(|s| !s.is_empty()) {
            for s2 in (b - s1).subsets().filter(|s| !s.is_empty()) {
                if s1 < s2 {
                    out.push(CoverFamily::new(vec![full - s1, full - s2]).expect("distinct"));
                }
            }
        }
        out.sort();
        out
    }

    pub fn spec(&self, horizon: usize) -> Result<GameSpec> {
        GameSpec::new(
            GameKind::Rothberger,
            self.model.clone(),
            self.basic_covers().into_iter().map(OneMove::cover).collect(),
            horizon,
        )
    }
}

/// Inning 0 takes the least element containing `p`; later innings take
/// the least element containing the least uncovered point.
#[derive(Clone, Copy, Debug)]
pub struct Fortissimo {
    pub special: usize,
}

impl Strategy for Fortissimo {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        descriptor("fortissimo", json!({ "special": self.special }))
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let uncovered = spec.full() - h.covered();
        let x = if uncovered.contains(self.special) {
            self.special
        } else {
            uncovered.min().unwrap_or(0)
        };
        pick_containing(h, x)
    }
}

pub fn fortissimo_strategy(fm: &FortissimoModel) -> Fortissimo {
    Fortissimo {
        special: fm.special_point(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::certify;

    #[test]
    fn fortissimo_grid_small() {
        let fm = FortissimoModel::new(5, 2).unwrap();
        let s = fortissimo_strategy(&fm);
        assert!(certify(&fm.spec(3).unwrap(), &s).unwrap().is_certified());
        assert!(!certify(&fm.spec(1).unwrap(), &s).unwrap().is_certified());
        let fm0 = FortissimoModel::new(5, 0).unwrap();
        assert!(certify(&fm0.spec(1).unwrap(), &fortissimo_strategy(&fm0)).unwrap().is_certified());
    }

    #[test]
    fn fortissimo_covers_are_irredundant() {
        let fm = FortissimoModel::new(6, 3).unwrap();
        for c in fm.basic_covers() {
            let r = crate::covers::reduce_to_irredundant(fm.model.full(), &c);
            assert_eq!(r, c);
        }
    }

    #[test]
    fn scattered_rank_rejects_indiscrete() {
        let m = SpaceModel::new(FiniteSpace::indiscrete(2), "i2");
        assert!(scattered_rank_strategy(&m).unwrap_err().to_string().contains("not scattered"));
    }

    #[test]
    fn enumeration_wins_at_point_count() {
        let m = Arc::new(SpaceModel::new(FiniteSpace::chain(3), "c3"));
        let spec = GameSpec::with_derived_pool(GameKind::Rothberger, m, 3).unwrap();
        assert!(certify(&spec, &CountableEnumeration).unwrap().is_certified());
        assert!(certify(&spec, &ScatteredRank).unwrap().is_certified());
    }
}
