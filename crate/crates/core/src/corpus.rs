//! Seeded instance generators.
//!
//! Every generator is a pure function of its seed, so corpus runs are
//! reproducible in both execution modes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covers::{CoverFamily, GdeltaCover, GdeltaPresentedSet};
use crate::pointset::PointSet;
use crate::space::{random_model, FiniteSpace, SpaceModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random model with `2..=max_points` points and at most `max_opens`
/// opens. Minimal neighbourhoods come from a random preorder whose density
/// is drawn per attempt; compacts and the small ideal are drawn as in
/// [`random_model`].
pub fn small_model(seed: u64, max_points: usize, max_opens: usize) -> SpaceModel {
    let mut r = rng(seed ^ 0x5eed_0001);
    loop {
        let n = r.gen_range(2..=max_points);
        let density = [0.0, 0.15, 0.3, 0.5][r.gen_range(0..4)];
        let mut nbhd: Vec<PointSet> = (0..n)
            .map(|x| {
                let mut s = PointSet::singleton(x);
                for y in 0..n {
                    if y != x && r.gen_bool(density) {
                        s.insert(y);
                    }
                }
                s
            })
            .collect();
        // transitive closure
        loop {
            let next: Vec<PointSet> = nbhd
                .iter()
                .map(|s| s.iter().fold(*s, |acc, y| acc | nbhd[y]))
                .collect();
            if next == nbhd {
                break;
            }
            nbhd = next;
        }
        let space = FiniteSpace::from_neighbourhoods(nbhd).expect("preorders are topologies");
        if space.open_count() > max_opens {
            continue;
        }
        let extra = random_model(r.gen(), n, 1);
        let mut model = SpaceModel::new(space, format!("preorder(seed={seed},n={n})"));
        model.compact_pool = extra.compact_pool;
        model.small_ideal = extra.small_ideal;
        return model;
    }
}

/// Partition topology on `n` points: the regular finite spaces.
pub fn partition_model(seed: u64, n: usize, min_blocks: usize) -> SpaceModel {
    let mut r = rng(seed ^ 0x9a27_0002);
    loop {
        let labels: Vec<usize> = (0..n).map(|_| r.gen_range(0..n)).collect();
        let mut blocks: Vec<PointSet> = Vec::new();
        for l in 0..n {
            let b: PointSet = (0..n).filter(|&x| labels[x] == l).collect();
            if !b.is_empty() {
                blocks.push(b);
            }
        }
        if blocks.len() < min_blocks {
            continue;
        }
        let nbhd = (0..n)
            .map(|x| *blocks.iter().find(|b| b.contains(x)).unwrap())
            .collect();
        let space = FiniteSpace::from_neighbourhoods(nbhd).expect("partitions are topologies");
        return SpaceModel::new(space, format!("partition(seed={seed},n={n})"));
    }
}

/// The blocks of a partition topology, in canonical order.
pub fn blocks(space: &FiniteSpace) -> Vec<PointSet> {
    let mut b: Vec<PointSet> = space.neighbourhoods().to_vec();
    b.sort();
    b.dedup();
    b
}

/// Random open family covering the space: nonempty opens are drawn until
/// their union is everything.
pub fn random_open_cover(model: &SpaceModel, r: &mut ChaCha8Rng) -> CoverFamily {
    let opens: Vec<PointSet> = model
        .space
        .opens()
        .into_iter()
        .filter(|o| !o.is_empty())
        .collect();
    let mut els = Vec::new();
    let mut u = PointSet::EMPTY;
    while u != model.full() {
        let o = *opens.choose(r).expect("a nonempty space has a nonempty open");
        els.push(o);
        u |= o;
    }
    CoverFamily::dedup(els)
}

/// Random Gδ cover whose members are presented by one to three opens.
pub fn random_gdelta_cover(model: &SpaceModel, r: &mut ChaCha8Rng) -> GdeltaCover {
    let opens: Vec<PointSet> = model
        .space
        .opens()
        .into_iter()
        .filter(|o| !o.is_empty())
        .collect();
    let mut els: Vec<GdeltaPresentedSet> = Vec::new();
    let mut u = PointSet::EMPTY;
    let mut guard = 0;
    while u != model.full() {
        guard += 1;
        let k = r.gen_range(1..=3);
        let mut factors: Vec<PointSet> = (0..k).map(|_| *opens.choose(r).unwrap()).collect();
        if guard > 50 {
            // fall back to a factor containing an uncovered point
            let x = (model.full() - u).min().unwrap();
            factors = vec![model.space.neighbourhood(x)];
        }
        let g = GdeltaPresentedSet::new(factors).expect("factors nonempty");
        if g.target().is_empty() || els.iter().any(|e| e.target() == g.target()) {
            continue;
        }
        u |= g.target();
        els.push(g);
    }
    GdeltaCover::new(els).expect("targets are distinct")
}

/// Scattered spaces: chains, discrete spaces and scattered random models.
pub fn scattered_models(count: usize, seed: u64) -> Vec<SpaceModel> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(SpaceModel::new(FiniteSpace::chain(n), format!("chain({n})")));
    }
    for n in 1..=4 {
        out.push(SpaceModel::new(FiniteSpace::discrete(n), format!("discrete({n})")));
    }
    let mut s = seed;
    while out.len() < count {
        let m = small_model(s, 5, 16);
        s += 1;
        if m.space.is_scattered() {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(small_model(7, 5, 16), small_model(7, 5, 16));
        let m = small_model(7, 5, 16);
        assert!(m.space.open_count() <= 16);
        let p = partition_model(3, 4, 2);
        assert!(p.space.is_regular());
        assert!(blocks(&p.space).len() >= 2);
    }

    #[test]
    fn random_covers_cover() {
        let m = small_model(11, 4, 16);
        let mut r = rng(1);
        assert_eq!(random_open_cover(&m, &mut r).union(), m.full());
        assert_eq!(random_gdelta_cover(&m, &mut r).union(), m.full());
    }
}
