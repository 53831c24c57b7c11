use super::*;
use crate::engine::{certify, play};
use crate::solver::solve;
use crate::space::{FiniteSpace, SpaceModel};
use crate::strategies::{LeastUncoveredPoint, MinimalOpen, WholeCover};

fn ps(v: &[usize]) -> PointSet {
    PointSet::from_points(v.iter().copied())
}

fn model(space: FiniteSpace) -> Arc<SpaceModel> {
    Arc::new(SpaceModel::new(space, "t"))
}

#[test]
fn dual_spec_examples() {
    let r = GameSpec::with_derived_pool(GameKind::Rothberger, model(FiniteSpace::discrete(2)), 2).unwrap();
    let po = dual_spec(&r, DualityPair::PointOpenRothberger).unwrap();
    assert_eq!(po.kind, GameKind::PointOpen);
    assert_eq!(po.one_pool, vec![OneMove::Point(0), OneMove::Point(1)]);
    assert_eq!(po.horizon, 2);
    let back = dual_spec(&po, DualityPair::PointOpenRothberger).unwrap();
    assert_eq!(back.kind, r.kind);

    let co = GameSpec::with_derived_pool(GameKind::CompactOpen, model(FiniteSpace::chain(3)), 2).unwrap();
    let k = dual_spec(&co, DualityPair::CompactOpenK).unwrap();
    assert_eq!(k.kind, GameKind::G1 { a: CoverClass::K, b: CoverClass::O });
    let expected: Vec<OneMove> = crate::covers::minimal_k_covers(&co.model)
        .unwrap()
        .into_iter()
        .map(OneMove::cover)
        .collect();
    assert_eq!(k.one_pool, expected);
    assert!(dual_spec(&co, DualityPair::PointOpenRothberger).is_err());
}

#[test]
fn easy_translation_certifies() {
    let po = GameSpec::with_derived_pool(GameKind::PointOpen, model(FiniteSpace::discrete(2)), 2).unwrap();
    let sigma: Arc<dyn Strategy> = Arc::new(LeastUncoveredPoint);
    assert!(certify(&po, sigma.as_ref()).unwrap().is_certified());
    let dual = dual_spec(&po, DualityPair::PointOpenRothberger).unwrap();
    let tau = translate_easy(&po, sigma.clone()).unwrap();
    assert!(certify(&dual, &tau).unwrap().is_certified());

    let po1 = po.with_horizon(1).unwrap();
    let tau1 = translate_easy(&po1, sigma).unwrap();
    let dual1 = dual_spec(&po1, DualityPair::PointOpenRothberger).unwrap();
    assert!(!certify(&dual1, &tau1).unwrap().is_certified());
}

#[test]
fn hard_translation_plays_singletons() {
    let po = GameSpec::with_derived_pool(GameKind::PointOpen, model(FiniteSpace::discrete(2)), 1).unwrap();
    let tau: Arc<dyn Strategy> = Arc::new(MinimalOpen);
    assert!(certify(&po, tau.as_ref()).unwrap().is_certified());
    let dual = dual_spec(&po, DualityPair::PointOpenRothberger).unwrap();
    let sigma = translate_hard(&po, tau).unwrap();
    let mv = sigma.decide(&dual, &History::new()).unwrap();
    assert_eq!(
        mv,
        Move::One(OneMove::cover(CoverFamily::new(vec![ps(&[0]), ps(&[1])]).unwrap()))
    );
    assert!(certify(&dual, &sigma).unwrap().is_certified());
}

#[test]
fn hard_translation_on_compact_open_chain() {
    let co = GameSpec::with_derived_pool(GameKind::CompactOpen, model(FiniteSpace::chain(3)), 1).unwrap();
    let tau: Arc<dyn Strategy> = Arc::new(MinimalOpen);
    let dual = dual_spec(&co, DualityPair::CompactOpenK).unwrap();
    let sigma = translate_hard(&co, tau.clone()).unwrap();
    let src = certify(&co, tau.as_ref()).unwrap().is_certified();
    let out = certify(&dual, &sigma).unwrap().is_certified();
    assert!(!src || out);
}

#[test]
fn witness_map_replays_source_history() {
    let po = GameSpec::with_derived_pool(GameKind::PointOpen, model(FiniteSpace::discrete(3)), 2).unwrap();
    let r = solve(&po).unwrap();
    assert_eq!(r.winner, Side::Two);
    let tau: Arc<dyn Strategy> = Arc::new(r.strategy);
    let dual = dual_spec(&po, DualityPair::PointOpenRothberger).unwrap();
    let sigma = translate_hard(&po, tau).unwrap();
    let t = play(&dual, &sigma, &crate::strategies::LeastElement).unwrap();
    let h = History::from_transcript(&t);
    let src = sigma.source_history(&h).unwrap();
    crate::engine::validate_history(&po, &src).unwrap();
    assert_eq!(src.covered(), h.covered());
    let file = sigma.to_file_with_witnesses(&dual, 1_000_000).unwrap();
    assert!(file.witness_map.is_some());
}

#[test]
fn menger_bridge_examples() {
    let m = model(FiniteSpace::discrete(2));
    let c = CoverFamily::new(vec![ps(&[0]), ps(&[1])]).unwrap();
    let menger = GameSpec::new(GameKind::Menger, m, vec![OneMove::cover(c.clone())], 1).unwrap();
    let bridge = MengerBridge::new(&menger).unwrap();
    let ostar = bridge.ostar().clone();
    let rho = bridge
        .translate(Arc::new(WholeCover), MengerDirection::MengerToOstar)
        .unwrap();
    let h = History::new().with_one(ostar.one_pool[0].clone());
    assert_eq!(rho.decide(&ostar, &h).unwrap(), Move::Two(TwoMove::Pick(ps(&[0, 1]))));
    assert!(certify(&ostar, &rho).unwrap().is_certified());

    let t = play(&menger, &crate::strategies::ConstantMove { index: 0 }, &WholeCover).unwrap();
    let there = bridge.to_ostar_transcript(&t).unwrap();
    let back = bridge.to_menger_transcript(&there).unwrap();
    assert_eq!(back.covered_snapshots(), t.covered_snapshots());
    assert_eq!(minimal_sublist(&c, ps(&[0, 1])), Some(vec![ps(&[0]), ps(&[1])]));
}

#[test]
fn pair_names_parse() {
    for p in DualityPair::ALL {
        assert_eq!(p.name().parse::<DualityPair>().unwrap(), p);
    }
    assert!(!DualityPair::MengerOstar.flips_winner());
}
