use rand::Rng;

use crate::corpus::{random_open_cover, rng, small_model};
use crate::covers::{classify, finite_union_closure, is_k_cover, CoverClass};
use crate::pointset::PointSet;

use super::{battery, Check, CriterionReport, SuiteConfig};

/// On random families: the union closure of an open cover is a k-cover for
/// any compact pool, and an R-cover is a k-cover whenever the Rothberger
/// pool contains the compact pool.
pub(super) fn classifier_laws(cfg: SuiteConfig) -> CriterionReport {
    let items: Vec<u64> = (0..cfg.count(240, 200) as u64).collect();
    battery(12, 200, cfg.mode, &items, |i| format!("#{i}"), |&i| {
        let mut c = Check::default();
        let seed = cfg.seed.wrapping_add(12_000 + i);
        let mut r = rng(seed);
        let base = small_model(seed, 5, 16);
        let full = base.full();
        let n = base.point_count();
        let draw = |r: &mut rand_chacha::ChaCha8Rng| {
            PointSet::from_points((0..n).filter(|_| r.gen_bool(0.5))) & full
        };
        let mut compacts: Vec<PointSet> = base.compact_pool.clone();
        for _ in 0..r.gen_range(0..4) {
            compacts.push(draw(&mut r));
        }
        let mut rothberger = compacts.clone();
        for _ in 0..r.gen_range(0..3) {
            rothberger.push(draw(&mut r));
        }
        let model = base
            .with_compact_pool(compacts)?
            .with_rothberger_pool(rothberger)?;
        let fam = random_open_cover(&model, &mut r);
        let closure = finite_union_closure(&fam);
        c.expect(is_k_cover(&model, &closure), || {
            format!("union closure of {:?} is not a k-cover", fam.elements())
        });
        let classes = classify(&model, &fam);
        c.expect(!classes.contains(&CoverClass::R) || classes.contains(&CoverClass::K), || {
            format!("{:?} is an R-cover but not a k-cover", fam.elements())
        });
        let closed = classify(&model, &closure);
        c.expect(closed.contains(&CoverClass::Ostar), || {
            format!("union closure of {:?} not classified O*", fam.elements())
        });
        Ok(c)
    })
}
