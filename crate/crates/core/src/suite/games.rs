use std::sync::Arc;

use crate::corpus::small_model;
use crate::covers::CoverClass;
use crate::duality::{dual_spec, translate_easy, translate_hard, DualityPair, MengerBridge, MengerDirection};
use crate::engine::{certify, play, GameKind, GameSpec, Side, Strategy};
use crate::error::Result;
use crate::solver::{side_wins, solve, SolveOptions};
use crate::strategies::ConstantMove;

use super::{battery, Check, CriterionReport, SuiteConfig};

const DUALITY_PAIRS: [DualityPair; 3] = [
    DualityPair::PointOpenRothberger,
    DualityPair::CompactOpenK,
    DualityPair::CompactGdeltaAlster,
];

/// Instance `i`: a model with at most 5 points and 16 opens, one of the
/// three duality pairs, horizon 1..=4.
fn duality_source(seed: u64, i: usize) -> Result<GameSpec> {
    let model = small_model(seed.wrapping_add(i as u64), 5, 16);
    let pair = DUALITY_PAIRS[i % 3];
    let horizon = 1 + (i / 3) % 4;
    GameSpec::with_derived_pool(pair.kinds().0, Arc::new(model), horizon)
}

fn describe(spec: &GameSpec) -> String {
    format!("{} on {} h={}", spec.kind, spec.model.label, spec.horizon)
}

/// Exactly one side wins, each side evaluated with its own quantifiers.
fn determined(spec: &GameSpec, c: &mut Check) -> Result<Side> {
    let one = side_wins(spec, Side::One, SolveOptions::default())?;
    let two = side_wins(spec, Side::Two, SolveOptions::default())?;
    c.expect(one != two, || {
        format!("{}: One wins = {one}, Two wins = {two}", describe(spec))
    });
    Ok(if one { Side::One } else { Side::Two })
}

pub(super) fn duality(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<usize> = (0..cfg.count(210, 200)).collect();
    battery(1, 200, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let src = duality_source(cfg.seed, i)?;
        let pair = DualityPair::of_kind(src.kind).expect("source has a pair");
        let dual = dual_spec(&src, pair)?;
        let ws = determined(&src, &mut c)?;
        let wd = determined(&dual, &mut c)?;
        c.expect(wd == ws.other(), || {
            format!("{} won by {ws}, but {} won by {wd}", describe(&src), describe(&dual))
        });
        Ok(c)
    })
}

pub(super) fn translation(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<usize> = (0..cfg.count(210, 200)).collect();
    battery(2, 200, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let src = duality_source(cfg.seed, i)?;
        let pair = DualityPair::of_kind(src.kind).expect("source has a pair");
        let dual = dual_spec(&src, pair)?;
        let solved = solve(&src)?;
        let strategy: Arc<dyn Strategy> = Arc::new(solved.strategy);
        if !certify(&src, strategy.as_ref())?.is_certified() {
            c.fail(format!("solver strategy for {} not certified", describe(&src)));
            return Ok(c);
        }
        let cert = match solved.winner {
            Side::One => certify(&dual, &translate_easy(&src, strategy)?)?,
            Side::Two => certify(&dual, &translate_hard(&src, strategy)?)?,
        };
        c.expect(cert.is_certified(), || {
            format!(
                "translation of {}'s strategy fails in {}: {:?}",
                solved.winner,
                describe(&dual),
                cert.counterplay()
            )
        });
        Ok(c)
    })
}

pub(super) fn menger_equivalence(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<usize> = (0..cfg.count(60, 50)).collect();
    battery(3, 50, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let model = Arc::new(small_model(cfg.seed.wrapping_add(7_000 + i as u64), 4, 10));
        let derived = GameSpec::with_derived_pool(GameKind::Menger, model.clone(), 1)?;
        let pool: Vec<_> = derived.one_pool.iter().take(6).cloned().collect();
        let menger = GameSpec::new(GameKind::Menger, model, pool, 1 + i % 3)?;
        let bridge = MengerBridge::new(&menger)?;
        let ostar = bridge.ostar().clone();
        let wm = determined(&menger, &mut c)?;
        let wo = determined(&ostar, &mut c)?;
        c.expect(wm == wo, || format!("Menger won by {wm}, O* game won by {wo}"));
        // logged only: whether Menger and compact-open dualize is open
        let co = GameSpec::with_derived_pool(GameKind::CompactOpen, menger.model.clone(), menger.horizon)?;
        let wc = solve(&co)?.winner;
        if (wm == Side::Two) != (wc == Side::One) {
            c.notes.push(format!("Menger won by {wm}, compact-open won by {wc} at h={}", menger.horizon));
        }

        let rho: Arc<dyn Strategy> = Arc::new(solve(&menger)?.strategy);
        let there: Arc<dyn Strategy> = Arc::from(bridge.translate(rho.clone(), MengerDirection::MengerToOstar)?);
        let cert = certify(&ostar, there.as_ref())?;
        c.expect(cert.is_certified() == (wm == rho.side()), || {
            format!("translated {} strategy: {:?}", rho.side(), cert.counterplay())
        });
        let back = bridge.translate(there.clone(), MengerDirection::OstarToMenger)?;
        for j in 0..menger.one_pool.len() {
            let one: Arc<dyn Strategy> = Arc::new(ConstantMove { index: j });
            let t = play(&menger, one.as_ref(), rho.as_ref())?;
            let t_back = play(&menger, one.as_ref(), back.as_ref())?;
            c.expect(t.covered_snapshots() == t_back.covered_snapshots(), || {
                format!("round trip changes covered sets against cover {j}")
            });
            let one_there = bridge.translate(one, MengerDirection::MengerToOstar)?;
            let t_there = play(&ostar, one_there.as_ref(), there.as_ref())?;
            c.expect(t.covered_snapshots() == t_there.covered_snapshots(), || {
                format!("O* play differs from Menger play against cover {j}")
            });
        }

        let sigma: Arc<dyn Strategy> = Arc::new(solve(&ostar)?.strategy);
        let to_menger = bridge.translate(sigma, MengerDirection::OstarToMenger)?;
        c.expect(certify(&menger, to_menger.as_ref())?.is_certified(), || {
            "O* solver strategy does not survive translation".into()
        });
        Ok(c)
    })
}

fn consistency_kinds() -> [GameKind; 7] {
    [
        GameKind::Rothberger,
        GameKind::Menger,
        GameKind::PointOpen,
        GameKind::CompactOpen,
        GameKind::CompactGdelta,
        GameKind::G1 {
            a: CoverClass::K,
            b: CoverClass::O,
        },
        GameKind::G1 {
            a: CoverClass::Alster,
            b: CoverClass::Odelta,
        },
    ]
}

pub(super) fn self_consistency(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<usize> = (0..cfg.count(70, 70)).collect();
    battery(11, 70, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let kinds = consistency_kinds();
        let kind = kinds[i % kinds.len()];
        let model = Arc::new(small_model(cfg.seed.wrapping_add(11_000 + i as u64), 4, 10));
        let n = model.point_count();
        let mut spec = GameSpec::with_derived_pool(kind, model.clone(), n)?;
        if kind == GameKind::Menger && spec.one_pool.len() > 6 {
            spec = GameSpec::new(kind, model, spec.one_pool[..6].to_vec(), n)?;
        }
        let solved = solve(&spec)?;
        c.expect(certify(&spec, &solved.strategy)?.is_certified(), || {
            format!("solver strategy for {} not certified", describe(&spec))
        });
        let later = solve(&spec.with_horizon(n + 1)?)?.winner;
        c.expect(later == solved.winner, || {
            format!("{}: winner {} at h=n but {later} at h=n+1", describe(&spec), solved.winner)
        });
        Ok(c)
    })
}
