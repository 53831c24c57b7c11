use std::sync::Arc;

use proptest::prelude::*;

use topogame::corpus::{random_open_cover, rng, small_model};
use topogame::covers::{classify, finite_union_closure, s1_holds_over_pool, CoverClass, CoverFamily};
use topogame::duality::{MengerBridge, MengerDirection};
use topogame::engine::{certify, judge, play, GameKind, GameSpec, Side, Strategy};
use topogame::solver::{side_wins, solve, solve_with, winner, SolveOptions};
use topogame::space::{FiniteSpace, SpaceModel};
use topogame::strategies::{ConstantMove, LeastElement};
use topogame::PointSet;

fn set(bits: u64, n: usize) -> PointSet {
    PointSet::from_points((0..n).filter(|i| bits >> i & 1 == 1))
}

/// `x ∈ cl A` iff every open containing `x` meets `A`.
fn closure_oracle(space: &FiniteSpace, a: PointSet) -> PointSet {
    (0..space.point_count())
        .filter(|&x| space.opens().iter().all(|&u| !u.contains(x) || !u.is_disjoint(a)))
        .collect()
}

fn model(seed: u64) -> Arc<SpaceModel> {
    Arc::new(small_model(seed, 5, 16))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn subbasis_spaces_are_topologies(n in 1usize..7, gens in prop::collection::vec(any::<u64>(), 0..6)) {
        let sub: Vec<PointSet> = gens.iter().map(|&g| set(g, n)).collect();
        let s = FiniteSpace::from_subbasis(n, &sub).unwrap();
        let opens = s.opens();
        prop_assert!(opens.contains(&PointSet::EMPTY));
        prop_assert!(opens.contains(&s.full()));
        for &a in &opens {
            for &b in &opens {
                prop_assert!(s.is_open(a | b) && s.is_open(a & b));
            }
        }
        for g in sub {
            prop_assert!(s.is_open(g));
        }
    }

    #[test]
    fn closure_is_kuratowski(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let m = model(seed);
        let s = &m.space;
        let n = s.point_count();
        let (a, b) = (set(a, n), set(b, n));
        prop_assert_eq!(s.closure(a), closure_oracle(s, a));
        prop_assert_eq!(s.closure(PointSet::EMPTY), PointSet::EMPTY);
        prop_assert!(a.is_subset(s.closure(a)));
        prop_assert_eq!(s.closure(s.closure(a)), s.closure(a));
        prop_assert_eq!(s.closure(a | b), s.closure(a) | s.closure(b));
        for u in s.opens() {
            prop_assert_eq!(s.interior(u), u);
        }
    }

    #[test]
    fn derivative_shrinks_monotonically(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let m = model(seed);
        let s = &m.space;
        let n = s.point_count();
        let a = set(a, n);
        let ab = a | set(b, n);
        prop_assert!(s.cb_derivative(a).is_subset(a));
        prop_assert!(s.cb_derivative(a).is_subset(s.cb_derivative(ab)));
        if let Some(rank) = s.scattered_rank() {
            prop_assert!(rank <= n);
        }
    }

    #[test]
    fn boolean_algebras_are_regular(n in 1usize..6, labels in prop::collection::vec(0usize..6, 6)) {
        // clopen partitions give exactly the opens closed under complement
        let nbhd: Vec<PointSet> = (0..n)
            .map(|x| (0..n).filter(|&y| labels[y] == labels[x]).collect())
            .collect();
        let s = FiniteSpace::from_neighbourhoods(nbhd).unwrap();
        prop_assert!(s.opens().iter().all(|&u| s.is_open(s.full() - u)));
        prop_assert!(s.is_regular());
    }

    #[test]
    fn class_inclusions(seed in any::<u64>(), extra in any::<u64>()) {
        let m = model(seed);
        let mut r = rng(seed);
        let fam = random_open_cover(&m, &mut r);
        let closure = finite_union_closure(&fam);
        prop_assert!(classify(&m, &closure).contains(&CoverClass::K));
        let singletons = SpaceModel::new(m.space.clone(), "s");
        prop_assert!(classify(&singletons, &fam).contains(&CoverClass::K));
        let c = classify(&m, &fam);
        prop_assert!(!c.contains(&CoverClass::K) || c.contains(&CoverClass::O));
        prop_assert!(!c.contains(&CoverClass::Alster) || c.contains(&CoverClass::Odelta));
        // adding an open keeps O, K, Alster and R
        let opens = m.space.opens();
        let more = opens[(extra as usize) % opens.len()];
        let mut els = fam.elements().to_vec();
        els.push(more);
        let bigger = classify(&m, &CoverFamily::dedup(els));
        for k in [CoverClass::O, CoverClass::K, CoverClass::Alster, CoverClass::R] {
            prop_assert!(!c.contains(&k) || bigger.contains(&k), "{k} lost");
        }
    }

    #[test]
    fn longer_sequences_select_more(seed in any::<u64>()) {
        let m = Arc::new(small_model(seed, 4, 8));
        let mut r = rng(seed);
        let pool: Vec<CoverFamily> = (0..3).map(|_| random_open_cover(&m, &mut r)).collect();
        for k in 1..3 {
            let short = s1_holds_over_pool(&m, &pool, k, CoverClass::O).unwrap().holds;
            let long = s1_holds_over_pool(&m, &pool, k + 1, CoverClass::O).unwrap().holds;
            prop_assert!(!short || long);
        }
    }

    #[test]
    fn solver_laws(seed in any::<u64>(), kind_ix in 0usize..5, h in 1usize..4) {
        let kinds = [
            GameKind::Rothberger,
            GameKind::PointOpen,
            GameKind::CompactOpen,
            GameKind::CompactGdelta,
            GameKind::G1 { a: CoverClass::K, b: CoverClass::O },
        ];
        let m = Arc::new(small_model(seed, 4, 10));
        let spec = GameSpec::with_derived_pool(kinds[kind_ix], m, h).unwrap();
        let solved = solve(&spec).unwrap();
        let w = solved.winner;
        // each side's own quantifiers give complementary answers
        let one = side_wins(&spec, Side::One, SolveOptions::default()).unwrap();
        let two = side_wins(&spec, Side::Two, SolveOptions::default()).unwrap();
        prop_assert!(one != two);
        prop_assert_eq!(one, w == Side::One);
        let plain = solve_with(&spec, SolveOptions { memo: false, ..SolveOptions::default() }).unwrap();
        prop_assert_eq!(plain.winner, w);
        prop_assert!(certify(&spec, &solved.strategy).unwrap().is_certified());
        // the covering player keeps winning with more innings
        let coverer = spec.kind.coverer();
        if w == coverer {
            prop_assert_eq!(winner(&spec.with_horizon(h + 1).unwrap()).unwrap(), coverer);
        }
    }

    #[test]
    fn solver_strategies_win_in_play(seed in any::<u64>(), h in 1usize..4, j in 0usize..8) {
        let m = Arc::new(small_model(seed, 4, 10));
        let spec = GameSpec::with_derived_pool(GameKind::Rothberger, m, h).unwrap();
        let solved = solve(&spec).unwrap();
        let t = match solved.winner {
            Side::Two => {
                let one = ConstantMove { index: j % spec.one_pool.len() };
                play(&spec, &one, &solved.strategy).unwrap()
            }
            Side::One => play(&spec, &solved.strategy, &LeastElement).unwrap(),
        };
        prop_assert_eq!(judge(&spec, &t).unwrap(), solved.winner);
        // a covering win stands when the horizon grows
        if solved.winner == Side::Two {
            prop_assert_eq!(judge(&spec.with_horizon(h + 2).unwrap(), &t).unwrap(), Side::Two);
        }
    }

    #[test]
    fn horizon_stabilizes_at_point_count(seed in any::<u64>()) {
        let m = Arc::new(small_model(seed, 4, 10));
        let n = m.point_count();
        for h in [n, n + 1] {
            let r = GameSpec::with_derived_pool(GameKind::Rothberger, m.clone(), h).unwrap();
            prop_assert_eq!(winner(&r).unwrap(), Side::Two);
            let po = GameSpec::with_derived_pool(GameKind::PointOpen, m.clone(), h).unwrap();
            prop_assert_eq!(winner(&po).unwrap(), Side::One);
        }
    }

    #[test]
    fn menger_transcripts_round_trip(seed in any::<u64>(), h in 1usize..4, j in 0usize..6) {
        let m = Arc::new(small_model(seed, 4, 10));
        let derived = GameSpec::with_derived_pool(GameKind::Menger, m.clone(), h).unwrap();
        let pool: Vec<_> = derived.one_pool.iter().take(6).cloned().collect();
        let spec = GameSpec::new(GameKind::Menger, m, pool, h).unwrap();
        let bridge = MengerBridge::new(&spec).unwrap();
        let one = ConstantMove { index: j % spec.one_pool.len() };
        let t = play(&spec, &one, &LeastElement).unwrap();
        let there = bridge.to_ostar_transcript(&t).unwrap();
        topogame::engine::validate_history(bridge.ostar(), &topogame::engine::History::from_transcript(&there)).unwrap();
        let back = bridge.to_menger_transcript(&there).unwrap();
        prop_assert_eq!(back.covered_snapshots(), t.covered_snapshots());
        let rho: Arc<dyn Strategy> = Arc::new(LeastElement);
        let across = bridge.translate(rho, MengerDirection::MengerToOstar).unwrap();
        prop_assert_eq!(across.side(), Side::Two);
    }
}
