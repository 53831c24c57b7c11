use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{
    alster_diagonal_selection, bits_strategy, cantor_witness, derived_compacts,
    extract_alster_subcover_from_menger, extract_gdelta_subcover_from_pointopen,
    falsify_menger_extraction, falsify_pointopen_extraction, fortissimo_strategy,
    refine_menger_strategy, refined_horizon, refined_model, refined_pool, Decomposition,
    FortissimoModel, ScatteredRank, UncoveredRegion,
};
use crate::corpus::{
    blocks, partition_model, random_gdelta_cover, rng, scattered_models, small_model,
};
use crate::covers::{
    is_alster, minimal_alster_covers, s1_select, CoverClass, CoverFamily, GdeltaCover,
    GdeltaPresentedSet,
};
use crate::engine::{
    certify, judge, strategy_move_two, validate_history, GameKind, GameSpec, History, OneMove,
    Side, Strategy, Transcript,
};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::solver::solve;
use crate::space::{FiniteSpace, SpaceModel};
use crate::strategies::ConstantFirst;

use super::{battery, Check, CriterionReport, SuiteConfig};

/// Alster covers for a model: random Gδ covers that pass the check, or a
/// minimal Alster cover when none does quickly.
fn alster_cover(model: &SpaceModel, r: &mut rand_chacha::ChaCha8Rng) -> Result<GdeltaCover> {
    for _ in 0..20 {
        let w = random_gdelta_cover(model, r);
        if is_alster(model, &w) {
            return Ok(w);
        }
    }
    let all = minimal_alster_covers(model)?;
    Ok(all.choose(r).expect("the whole space is an Alster cover").clone())
}

/// Instances `(seed, rounds relative to point count)`. Rounds at least the
/// point count compare with the oracle both ways; shorter runs check that a
/// diagonal success is a selection.
pub(super) fn diagonal(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<u64> = (0..cfg.count(160, 134) as u64).collect();
    battery(4, 100, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let seed = cfg.seed.wrapping_add(4_000 + i);
        let mut r = rng(seed);
        let mut model = small_model(seed, 4, 10);
        if r.gen_bool(0.5) {
            let mut pool = model.compact_pool.clone();
            pool.push(model.space.open_hull(PointSet::singleton(0)));
            model = model.with_compact_pool(pool)?;
        }
        let n = model.point_count();
        let k = r.gen_range(1..=3);
        let covers: Vec<GdeltaCover> = (0..k)
            .map(|_| alster_cover(&model, &mut r))
            .collect::<Result<_>>()?;
        let full_window = i % 4 != 3;
        let rounds = if full_window {
            n + r.gen_range(0..=1)
        } else {
            r.gen_range(1..n)
        };
        let seq: Vec<GdeltaCover> = (0..rounds).map(|j| covers[j % k].clone()).collect();
        let oracle = s1_select(&model, &seq, CoverClass::Odelta)?.is_found();
        match alster_diagonal_selection(&model, &covers, rounds) {
            Ok(sel) => {
                let union = sel.picks.iter().fold(PointSet::EMPTY, |a, &b| a | b);
                c.expect(union == model.full(), || format!("picks {:?} miss points", sel.picks));
                for (j, (&p, &ix)) in sel.picks.iter().zip(&sel.indices).enumerate() {
                    c.expect(covers[j % k].targets().get(ix) == Some(&p), || {
                        format!("A_{j} = {p} is not member {ix} of cover {}", j % k)
                    });
                }
                c.expect(oracle, || format!("diagonal succeeds in {rounds} rounds, oracle finds no selection"));
            }
            Err(Error::Construction(msg)) if msg.contains("uncovered") => {
                if full_window {
                    c.expect(!oracle, || {
                        format!("oracle selects in {rounds} rounds, diagonal leaves points uncovered")
                    });
                } else if oracle {
                    c.notes.push(format!("{rounds} < {n} rounds: oracle selects, diagonal does not"));
                }
            }
            Err(e) => return Err(e),
        }
        c.skipped = !full_window;
        Ok(c)
    })
}

/// Two's moves in `t` are the ones `sigma` makes.
fn follows(spec: &GameSpec, sigma: &dyn Strategy, t: &Transcript) -> Result<bool> {
    let mut h = History::new();
    for inning in &t.innings {
        h.push_one(inning.one.clone());
        if strategy_move_two(spec, sigma, &h)? != inning.two {
            return Ok(false);
        }
        h.push_two(inning.two.clone());
    }
    Ok(true)
}

/// An Alster cover holding every derived compact inside a member.
fn cover_over_compacts(
    model: &SpaceModel,
    compacts: &[PointSet],
    r: &mut rand_chacha::ChaCha8Rng,
) -> Result<GdeltaCover> {
    let opens: Vec<PointSet> = model.space.opens();
    let mut els: Vec<GdeltaPresentedSet> = Vec::new();
    for &k in compacts {
        let hull = model.space.open_hull(k);
        let bigger: Vec<PointSet> = opens.iter().copied().filter(|o| hull.is_subset(*o)).collect();
        let extra = *bigger.choose(r).expect("the space itself contains the hull");
        let g = GdeltaPresentedSet::new(vec![hull, extra])?;
        if !els.iter().any(|e| e.target() == g.target()) {
            els.push(g);
        }
    }
    for g in random_gdelta_cover(model, r).elements() {
        if !els.iter().any(|e| e.target() == g.target()) {
            els.push(g.clone());
        }
    }
    GdeltaCover::new(els)
}

fn menger_winning(cfg: SuiteConfig, i: u64) -> Result<Check> {
    let mut c = Check::default();
    let seed = cfg.seed.wrapping_add(5_000 + i);
    let mut r = rng(seed);
    let n = r.gen_range(2..=4);
    let base = Arc::new(partition_model(seed, n, 1));
    let d = r.gen_range(1..=3);
    let probe = GameSpec::with_derived_pool(GameKind::Menger, base.clone(), d)?;
    let solved = solve(&probe)?;
    if solved.winner != Side::Two {
        c.fail(format!("Two does not win the Menger game at h={d}"));
        return Ok(c);
    }
    let sigma: Arc<dyn Strategy> = Arc::new(solved.strategy);
    let ks = derived_compacts(&probe, sigma.clone())?;
    let model = (*base).clone().with_compact_pool(
        base.compact_pool.iter().copied().chain(ks.iter().copied()).collect(),
    )?;
    let w = cover_over_compacts(&model, &ks, &mut r)?;
    c.expect(is_alster(&model, &w), || "generated W is not Alster".into());
    let spec = GameSpec::new(GameKind::Menger, Arc::new(model), probe.one_pool.clone(), d)?;
    let ext = extract_alster_subcover_from_menger(&spec, sigma.clone(), &w)?;
    c.expect(ext.union() == spec.full(), || {
        format!("extraction {:?} misses points", ext.subcover)
    });
    let targets = w.targets();
    c.expect(ext.subcover.iter().all(|t| targets.contains(t)), || {
        "extraction leaves W".into()
    });
    c.expect(ext.provenance.iter().all(|p| p.history.len() < d), || {
        "provenance history at or past the horizon".into()
    });
    c.expect(falsify_menger_extraction(&spec, sigma, &w)?.is_none(), || {
        "falsifier returns a play for a covering extraction".into()
    });
    Ok(c)
}

/// Two takes the first block of the partition cover every inning.
fn menger_losing(cfg: SuiteConfig, i: u64) -> Result<Check> {
    let mut c = Check::default();
    let seed = cfg.seed.wrapping_add(5_500 + i);
    let mut r = rng(seed);
    let n = r.gen_range(2..=5);
    let base = partition_model(seed, n, 2);
    let bs = blocks(&base.space);
    let d = r.gen_range(1..=3);
    let pool = vec![OneMove::cover(CoverFamily::new(bs.clone())?)];
    let probe = GameSpec::new(GameKind::Menger, Arc::new(base.clone()), pool.clone(), d)?;
    let sigma: Arc<dyn Strategy> = Arc::new(ConstantFirst);
    c.expect(!certify(&probe, sigma.as_ref())?.is_certified(), || {
        "first-element strategy unexpectedly wins".into()
    });
    let ks = derived_compacts(&probe, sigma.clone())?;
    let model = base.clone().with_compact_pool(
        base.compact_pool.iter().copied().chain(ks.iter().copied()).collect(),
    )?;
    let spec = GameSpec::new(GameKind::Menger, Arc::new(model), pool, d)?;
    let w = GdeltaCover::from_opens(&bs)?;
    match falsify_menger_extraction(&spec, sigma.clone(), &w)? {
        None => c.fail("no counterplay for a losing strategy"),
        Some(t) => {
            validate_history(&spec, &History::from_transcript(&t))?;
            c.expect(judge(&spec, &t)? == Side::One, || "counterplay won by Two".into());
            c.expect(follows(&spec, sigma.as_ref(), &t)?, || {
                "counterplay departs from the strategy".into()
            });
        }
    }
    Ok(c)
}

pub(super) fn menger_extraction(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<(bool, u64)> = (0..cfg.count(60, 50) as u64)
        .map(|i| (true, i))
        .chain((0..cfg.count(24, 20) as u64).map(|i| (false, i)))
        .collect();
    battery(
        5,
        70,
        cfg.mode,
        &items,
        |&(w, i)| format!("{}#{i}", if w { "winning" } else { "losing" }),
        |&(winning, i)| {
            if winning {
                menger_winning(cfg, i)
            } else {
                menger_losing(cfg, i)
            }
        },
    )
}

pub(super) fn pointopen_extraction(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<u64> = (0..cfg.count(60, 50) as u64).collect();
    battery(6, 50, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let seed = cfg.seed.wrapping_add(6_000 + i);
        let mut r = rng(seed);
        let model = Arc::new(small_model(seed, 4, 12));
        let n = model.point_count();
        let mut least = n;
        for h in 1..=n {
            let spec = GameSpec::with_derived_pool(GameKind::PointOpen, model.clone(), h)?;
            if solve(&spec)?.winner == Side::One {
                least = h;
                break;
            }
        }
        let h = r.gen_range(least..=n);
        let spec = GameSpec::with_derived_pool(GameKind::PointOpen, model.clone(), h)?;
        let solved = solve(&spec)?;
        if solved.winner != Side::One {
            c.fail(format!("One does not win at h={h} although it wins at h={least}"));
            return Ok(c);
        }
        let sigma: Arc<dyn Strategy> = Arc::new(solved.strategy);
        let w = random_gdelta_cover(&model, &mut r);
        let ext = extract_gdelta_subcover_from_pointopen(&spec, sigma.clone(), &w)?;
        c.expect(ext.union() == spec.full(), || {
            format!("tree members {:?} miss points", ext.subcover)
        });
        let targets = w.targets();
        c.expect(ext.subcover.iter().all(|t| targets.contains(t)), || {
            "tree leaves W".into()
        });
        c.expect(ext.provenance.iter().all(|p| p.history.len() < h), || {
            format!("tree deeper than the horizon {h}")
        });
        c.expect(falsify_pointopen_extraction(&spec, sigma, &w)?.is_none(), || {
            "falsifier returns a play for a covering tree".into()
        });
        Ok(c)
    })
}

pub(super) fn cantor(cfg: SuiteConfig) -> CriterionReport {
    let depth = 10;
    let items: Vec<u64> = (0..1u64 << depth).collect();
    battery(7, 1 << depth, cfg.mode, &items, |s| format!("line {s:010b}"), |&seq| {
        let mut c = Check::default();
        match cantor_witness(depth, bits_strategy(seq)) {
            UncoveredRegion::Empty => c.fail("Two covers the Cantor space"),
            UncoveredRegion::Cylinder(cyl) => {
                let x: Vec<u8> = (0..depth).map(|n| 1 - ((seq >> n) & 1) as u8).collect();
                c.expect(cyl.contains(&x), || format!("{cyl} misses the antidiagonal"));
                c.expect(cyl.len() == depth, || format!("{cyl} is not a depth-{depth} cylinder"));
            }
        }
        Ok(c)
    })
}

pub(super) fn fortissimo(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<(usize, usize)> = [5, 10, 30]
        .into_iter()
        .flat_map(|n| [0, 2, 5].into_iter().map(move |c| (n, c)))
        .collect();
    battery(8, 9, cfg.mode, &items, |(n, c)| format!("N={n},c={c}"), |&(n, budget)| {
        let mut c = Check::default();
        let fm = FortissimoModel::new(n, budget)?;
        let s = fortissimo_strategy(&fm);
        let cert = certify(&fm.spec(budget + 1)?, &s)?;
        c.expect(cert.is_certified(), || {
            format!("not certified at h={}: {:?}", budget + 1, cert.counterplay())
        });
        if budget == 0 {
            c.notes.push("no game of horizon 0; short-horizon check skipped".into());
        } else if n > budget + 1 {
            let spec = fm.spec(budget)?;
            match certify(&spec, &s)? {
                crate::engine::Certificate::Certified => c.fail(format!("certified at h={budget}")),
                crate::engine::Certificate::CounterPlay { transcript } => {
                    validate_history(&spec, &History::from_transcript(&transcript))?;
                    c.expect(judge(&spec, &transcript)? == Side::One, || {
                        "counterplay is not a loss for Two".into()
                    });
                }
            }
        }
        Ok(c)
    })
}

/// Every complete play against `two`, One ranging over the pool.
fn all_plays(spec: &GameSpec, two: &dyn Strategy, limit: usize) -> Result<Vec<History>> {
    let mut out = Vec::new();
    let mut stack = vec![History::new()];
    while let Some(h) = stack.pop() {
        if spec.is_decided(&h) {
            out.push(h);
            if out.len() > limit {
                return Err(Error::BudgetExceeded(limit as u64));
            }
            continue;
        }
        for m in &spec.one_pool {
            let mut next = h.with_one(m.clone());
            let r = strategy_move_two(spec, two, &next)?;
            next.push_two(r);
            stack.push(next);
        }
    }
    Ok(out)
}

fn ideal_of(top: PointSet) -> Vec<PointSet> {
    top.subsets().collect()
}

fn refine_instance(cfg: SuiteConfig, i: u64) -> Result<Check> {
    let mut c = Check::default();
    let seed = cfg.seed.wrapping_add(9_000 + i);
    let mut r = rng(seed);
    // redraw until the ideal adds opens and some `C(W)` is nonempty
    let (base, dec) = (0u64..)
        .find_map(|j| {
            let raw = small_model(seed.wrapping_mul(31).wrapping_add(j), 4, 10);
            let n = raw.point_count();
            if n < 3 {
                return None;
            }
            let mut pts: Vec<usize> = (0..n).collect();
            pts.shuffle(&mut r);
            let top = PointSet::from_points(pts.into_iter().take(r.gen_range(1..=2)));
            let base = raw.with_small_ideal(ideal_of(top)).ok()?;
            let dec = Decomposition::derive(&base);
            (dec.max_c() > 0).then(|| (Arc::new(base), dec))
        })
        .expect("the search is unbounded");
    let h = if i % 3 == 2 { 2 } else { 1 };
    let quota = r.gen_range(1..=2);
    let base_spec = GameSpec::with_derived_pool(GameKind::Menger, base.clone(), h)?;
    let base_spec = if base_spec.one_pool.len() > 6 {
        GameSpec::new(GameKind::Menger, base.clone(), base_spec.one_pool[..6].to_vec(), h)?
    } else {
        base_spec
    };
    let rho: Arc<dyn Strategy> = Arc::new(solve(&base_spec)?.strategy);
    let refined = Arc::new(refined_model(&base)?);
    let pool = refined_pool(&refined, &dec, if h == 2 { 3 } else { 4 })?;
    if pool.is_empty() {
        c.skipped = true;
        return Ok(c);
    }
    let horizon = refined_horizon(h, dec.max_c(), quota);
    let spec = GameSpec::new(
        GameKind::Menger,
        refined,
        pool.into_iter().map(OneMove::cover).collect(),
        horizon,
    )?;
    let tau = refine_menger_strategy(&base_spec, rho, dec, quota)?;
    let cert = certify(&spec, &tau)?;
    c.expect(cert.is_certified(), || {
        format!("refined strategy loses at h={horizon}: {:?}", cert.counterplay())
    });
    Ok(c)
}

/// With the ideal `{∅}` the refinement is the base space and the even
/// innings replay the base strategy.
fn refine_degenerate(cfg: SuiteConfig, i: u64) -> Result<Check> {
    let mut c = Check::default();
    let seed = cfg.seed.wrapping_add(9_500 + i);
    let raw = small_model(seed, 4, 10);
    let base = Arc::new(raw.with_small_ideal(vec![PointSet::EMPTY])?);
    let refined = Arc::new(refined_model(&base)?);
    c.expect(refined.space.opens() == base.space.opens(), || {
        "refinement by the trivial ideal changes the topology".into()
    });
    let h = 1 + (i as usize) % 2;
    let full = GameSpec::with_derived_pool(GameKind::Menger, base.clone(), h)?;
    let pool: Vec<OneMove> = full.one_pool.iter().take(4).cloned().collect();
    let base_spec = GameSpec::new(GameKind::Menger, base.clone(), pool.clone(), h)?;
    let rho: Arc<dyn Strategy> = Arc::new(solve(&base_spec)?.strategy);
    let dec = Decomposition::derive(&base);
    let horizon = refined_horizon(h, dec.max_c(), 1);
    let spec = GameSpec::new(GameKind::Menger, refined, pool, horizon)?;
    let tau = refine_menger_strategy(&base_spec, rho, dec, 1)?;
    for play in all_plays(&spec, &tau, 100_000)? {
        let base_hist = tau.base_history(&play)?;
        let mut even = PointSet::EMPTY;
        let mut got = Vec::new();
        for (k, inning) in play.innings().iter().enumerate() {
            if k % 2 == 0 && got.len() < base_hist.innings().len() {
                even |= inning.two.contribution();
                got.push(even);
            }
        }
        let want: Vec<PointSet> = base_hist.innings().iter().map(|x| x.covered).collect();
        c.expect(got == want, || format!("even innings cover {got:?}, base strategy {want:?}"));
    }
    Ok(c)
}

pub(super) fn refinement(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<(bool, u64)> = (0..cfg.count(36, 30) as u64)
        .map(|i| (false, i))
        .chain((0..cfg.count(10, 10) as u64).map(|i| (true, i)))
        .collect();
    battery(
        9,
        40,
        cfg.mode,
        &items,
        |&(d, i)| format!("{}#{i}", if d { "trivial-ideal" } else { "refined" }),
        |&(degenerate, i)| {
            if degenerate {
                refine_degenerate(cfg, i)
            } else {
                refine_instance(cfg, i)
            }
        },
    )
}

/// Scatteredness by peeling isolated points until nothing is left.
fn peel_scattered(space: &FiniteSpace) -> bool {
    let mut rest = space.full();
    while !rest.is_empty() {
        let isolated: PointSet = rest
            .iter()
            .filter(|&x| space.neighbourhood(x) & rest == PointSet::singleton(x))
            .collect();
        if isolated.is_empty() {
            return false;
        }
        rest = rest - isolated;
    }
    true
}

pub(super) fn scattered(cfg: SuiteConfig) -> CriterionReport {
    let mut models = scattered_models(cfg.count(40, 40), cfg.seed.wrapping_add(10_000));
    models.extend((0..cfg.count(40, 40) as u64).map(|i| small_model(cfg.seed.wrapping_add(10_500 + i), 5, 16)));
    battery(10, 80, cfg.mode, &models, |m| m.label.clone(), |m| {
        let mut c = Check::default();
        let brute = peel_scattered(&m.space);
        c.expect(brute == m.space.is_scattered(), || {
            format!("is_scattered = {}, peeling says {brute}", m.space.is_scattered())
        });
        if brute {
            let spec = GameSpec::with_derived_pool(
                GameKind::Rothberger,
                Arc::new(m.clone()),
                m.point_count(),
            )?;
            let cert = certify(&spec, &ScatteredRank)?;
            c.expect(cert.is_certified(), || format!("rank strategy loses: {:?}", cert.counterplay()));
        }
        Ok(c)
    })
}
