use super::*;
use crate::space::FiniteSpace;

fn ps(v: &[usize]) -> PointSet {
    PointSet::from_points(v.iter().copied())
}

fn model(space: FiniteSpace) -> Arc<SpaceModel> {
    Arc::new(SpaceModel::new(space, "t"))
}

struct Const(OneMove);

impl Strategy for Const {
    fn side(&self) -> Side {
        Side::One
    }
    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, _: &GameSpec, _: &History) -> Result<Move> {
        Ok(Move::One(self.0.clone()))
    }
}

/// Two picks the least element containing the least uncovered point;
/// for point/compact moves, the least open including the demand.
struct LeastUncovered;

impl Strategy for LeastUncovered {
    fn side(&self) -> Side {
        Side::Two
    }
    fn descriptor(&self) -> StrategyDescriptor {
        StrategyDescriptor::Table
    }
    fn positional(&self) -> bool {
        true
    }
    fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
        let x = (spec.full() - h.covered()).min().unwrap();
        let pick = match h.pending().unwrap() {
            OneMove::Cover(c) => c.least_containing(x).unwrap(),
            other => {
                let need = other.demand().unwrap();
                *spec.opens().iter().find(|o| need.is_subset(**o)).unwrap()
            }
        };
        Ok(Move::Two(TwoMove::Pick(pick)))
    }
}

fn singleton_cover() -> OneMove {
    OneMove::cover(CoverFamily::new(vec![ps(&[0]), ps(&[1])]).unwrap())
}

#[test]
fn rothberger_two_moves_are_cover_elements() {
    let spec = GameSpec::new(
        GameKind::Rothberger,
        model(FiniteSpace::discrete(2)),
        vec![singleton_cover()],
        2,
    )
    .unwrap();
    let h = History::new().with_one(singleton_cover());
    let moves = legal_moves(&spec, &h, Side::Two).unwrap();
    assert_eq!(
        moves,
        vec![Move::Two(TwoMove::Pick(ps(&[0]))), Move::Two(TwoMove::Pick(ps(&[1])))]
    );
}

#[test]
fn compact_open_answers_on_chain() {
    let spec = GameSpec::with_derived_pool(GameKind::CompactOpen, model(FiniteSpace::chain(3)), 2)
        .unwrap();
    let h = History::new().with_one(OneMove::Compact(ps(&[0])));
    let moves: Vec<_> = legal_moves(&spec, &h, Side::Two)
        .unwrap()
        .into_iter()
        .map(|m| m.into_two().unwrap().contribution())
        .collect();
    assert_eq!(moves, vec![ps(&[0]), ps(&[0, 1]), ps(&[0, 1, 2])]);
}

#[test]
fn menger_sublists() {
    let spec = GameSpec::new(
        GameKind::Menger,
        model(FiniteSpace::discrete(2)),
        vec![singleton_cover()],
        1,
    )
    .unwrap();
    assert_eq!(spec.two_moves(&singleton_cover()).len(), 3);
}

#[test]
fn illegal_history_is_reported() {
    let spec = GameSpec::new(
        GameKind::Rothberger,
        model(FiniteSpace::discrete(2)),
        vec![singleton_cover()],
        2,
    )
    .unwrap();
    let mut h = History::new().with_one(singleton_cover());
    h.push_two(TwoMove::Pick(ps(&[0, 1])));
    let err = legal_moves(&spec, &h, Side::One).unwrap_err();
    assert!(err.to_string().contains("illegal transcript"));
}

#[test]
fn play_and_judge_rothberger() {
    let m = model(FiniteSpace::discrete(2));
    let spec = GameSpec::new(GameKind::Rothberger, m, vec![singleton_cover()], 2).unwrap();
    let t = play(&spec, &Const(singleton_cover()), &LeastUncovered).unwrap();
    assert_eq!(t.covered(), ps(&[0, 1]));
    assert_eq!(t.len(), 2);
    assert_eq!(judge(&spec, &t).unwrap(), Side::Two);

    let spec1 = spec.with_horizon(1).unwrap();
    let t1 = play(&spec1, &Const(singleton_cover()), &LeastUncovered).unwrap();
    assert_eq!(t1.covered().len(), 1);
    assert_eq!(judge(&spec1, &t1).unwrap(), Side::One);
    assert!(matches!(judge(&spec, &t1), Err(Error::Incomplete(_))));
}

#[test]
fn point_open_play_covers_discrete() {
    struct LeastPoint;
    impl Strategy for LeastPoint {
        fn side(&self) -> Side {
            Side::One
        }
        fn descriptor(&self) -> StrategyDescriptor {
            StrategyDescriptor::Table
        }
        fn decide(&self, spec: &GameSpec, h: &History) -> Result<Move> {
            Ok(Move::One(OneMove::Point((spec.full() - h.covered()).min().unwrap())))
        }
    }
    let spec = GameSpec::with_derived_pool(GameKind::PointOpen, model(FiniteSpace::discrete(3)), 3)
        .unwrap();
    let t = play(&spec, &LeastPoint, &LeastUncovered).unwrap();
    assert_eq!(t.covered(), ps(&[0, 1, 2]));
    assert_eq!(judge(&spec, &t).unwrap(), Side::One);
}

#[test]
fn illegal_strategy_move_names_side() {
    let spec = GameSpec::new(
        GameKind::Rothberger,
        model(FiniteSpace::discrete(2)),
        vec![singleton_cover()],
        2,
    )
    .unwrap();
    let whole = OneMove::cover(CoverFamily::new(vec![ps(&[0, 1])]).unwrap());
    let err = play(&spec, &Const(whole), &LeastUncovered).unwrap_err();
    assert!(matches!(err, Error::IllegalMove { side: Side::One, inning: 0, .. }));
}

#[test]
fn certify_examples() {
    let m = model(FiniteSpace::discrete(2));
    let spec = GameSpec::with_derived_pool(GameKind::Rothberger, m.clone(), 2).unwrap();
    assert!(certify(&spec, &LeastUncovered).unwrap().is_certified());
    let spec1 = spec.with_horizon(1).unwrap();
    let c = certify(&spec1, &LeastUncovered).unwrap();
    let t = c.counterplay().unwrap();
    assert_eq!(t.innings[0].one, singleton_cover());

    let whole = OneMove::cover(CoverFamily::new(vec![ps(&[0, 1])]).unwrap());
    let spec_w = GameSpec::new(GameKind::Rothberger, m, vec![whole], 1).unwrap();
    assert!(certify(&spec_w, &LeastUncovered).unwrap().is_certified());
}

#[test]
fn certify_budget_is_a_hard_error() {
    let spec = GameSpec::with_derived_pool(GameKind::Rothberger, model(FiniteSpace::discrete(3)), 3)
        .unwrap();
    let r = certify_with_budget(&spec, &LeastUncovered, 2, crate::par::ExecMode::Sequential);
    assert!(matches!(r, Err(Error::BudgetExceeded(2))));
}

#[test]
fn game_kind_parses() {
    use std::str::FromStr;
    assert_eq!(
        GameKind::from_str("G1(K,O)").unwrap(),
        GameKind::G1 { a: CoverClass::K, b: CoverClass::O }
    );
    assert!(GameKind::from_str("G1(O,K)").is_err());
    assert!(GameKind::from_str("Banach").is_err());
}

#[test]
fn tabulated_strategy_replays_identically() {
    let spec = GameSpec::with_derived_pool(GameKind::Rothberger, model(FiniteSpace::discrete(3)), 3)
        .unwrap();
    let table = strategy::tabulate(&spec, &LeastUncovered, 1_000_000).unwrap();
    assert!(certify(&spec, &table).unwrap().is_certified());
    let file = table.to_file().unwrap();
    let json = serde_json::to_string(&file).unwrap();
    let back: StrategyFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back, file);
}

#[test]
fn game_file_round_trip() {
    let spec = GameSpec::with_derived_pool(
        GameKind::G1 { a: CoverClass::K, b: CoverClass::O },
        model(FiniteSpace::chain(3)),
        2,
    )
    .unwrap();
    let file = GameFile::from_spec(&spec);
    let json = serde_json::to_string(&file).unwrap();
    let back: GameFile = serde_json::from_str(&json).unwrap();
    let spec2 = back.into_spec(None).unwrap();
    assert_eq!(spec2.kind, spec.kind);
    assert_eq!(spec2.one_pool, spec.one_pool);
    assert_eq!(spec2.horizon, 2);
}
