//! A countable (here: finite) Alster subcover from Two's Menger strategy.
//!
//! For a history `s` of One's covers, `K_s` is the intersection of the
//! closures of Two's answers to `s⌢U` over the pool. `W_s` is the least
//! member of `W` containing `K_s` and `C_s` a greedy minimal set of pool
//! covers whose answer closures already intersect inside `W_s`. The
//! subcover is `{W_s}` over histories drawn from the closure of `C_∅` under
//! the recursion `A_{n+1} = A_n ∪ ⋃ C_s`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::covers::{GdeltaCover, GdeltaPresentedSet};
use crate::engine::{strategy_move_two, GameKind, GameSpec, History, Side, Strategy, Transcript};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceEntry {
    /// The history that produced this member, as sequence indices.
    pub history: Vec<usize>,
    pub member: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub subcover: Vec<PointSet>,
    pub provenance: Vec<ProvenanceEntry>,
}

impl Extraction {
    pub fn union(&self) -> PointSet {
        self.subcover.iter().fold(PointSet::EMPTY, |a, &b| a | b)
    }

    /// The extracted members with their presentations from `w`.
    pub fn as_gdelta(&self, w: &GdeltaCover) -> Result<GdeltaCover> {
        let els: Vec<GdeltaPresentedSet> = self
            .subcover
            .iter()
            .filter_map(|t| w.find(*t).cloned())
            .collect();
        GdeltaCover::new(els)
    }
}

struct Extractor<'a> {
    spec: &'a GameSpec,
    sigma: &'a dyn Strategy,
    w: Vec<PointSet>,
}

/// Per-history data: `None` when `s` is no longer live (covered or at the
/// horizon).
struct Node {
    w_s: PointSet,
    c_s: Vec<usize>,
}

impl Extractor<'_> {
    /// Replays Two's answers along `s` (pool indices), stopping once the
    /// game is decided.
    fn history(&self, s: &[usize]) -> Result<History> {
        let mut h = History::new();
        for &i in s {
            if self.spec.is_decided(&h) {
                break;
            }
            h.push_one(self.spec.one_pool[i].clone());
            let r = strategy_move_two(self.spec, self.sigma, &h)?;
            h.push_two(r);
        }
        Ok(h)
    }

    fn live(&self, h: &History) -> bool {
        !self.spec.is_decided(h)
    }

    /// Closure of the union of Two's answer to `s⌢U` for each pool cover.
    fn answer_closures(&self, h: &History) -> Result<Vec<PointSet>> {
        let space = &self.spec.model.space;
        self.spec
            .one_pool
            .iter()
            .map(|m| {
                let r = strategy_move_two(self.spec, self.sigma, &h.with_one(m.clone()))?;
                Ok(space.closure(r.contribution()))
            })
            .collect()
    }

    fn node(&self, s: &[usize]) -> Result<Option<Node>> {
        let h = self.history(s)?;
        if !self.live(&h) {
            return Ok(None);
        }
        let closures = self.answer_closures(&h)?;
        let k_s = closures.iter().fold(self.spec.full(), |a, &b| a & b);
        let w_s = *self.w.iter().find(|t| k_s.is_subset(**t)).ok_or_else(|| {
            Error::Construction(format!("W is not Alster w.r.t. derived compacts: no member contains K_s = {k_s}"))
        })?;
        // greedy: add covers in pool order while they shrink the intersection
        let mut c_s = Vec::new();
        let mut acc = self.spec.full();
        for (i, &cl) in closures.iter().enumerate() {
            if acc.is_subset(w_s) {
                break;
            }
            if !acc.is_subset(cl) {
                acc &= cl;
                c_s.push(i);
            }
        }
        // then drop members that are not needed
        let mut j = 0;
        while j < c_s.len() {
            let rest = c_s
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != j)
                .fold(self.spec.full(), |a, (_, &i)| a & closures[i]);
            if rest.is_subset(w_s) {
                c_s.remove(j);
            } else {
                j += 1;
            }
        }
        Ok(Some(Node { w_s, c_s }))
    }
}

fn check_inputs(spec: &GameSpec, sigma: &dyn Strategy, w: &GdeltaCover) -> Result<()> {
    if spec.kind != GameKind::Menger {
        return Err(Error::Invariant(format!("expected a Menger spec, got {}", spec.kind)));
    }
    if sigma.side() != Side::Two {
        return Err(Error::Invariant("expected a strategy for Two".into()));
    }
    if !spec.model.space.is_regular() {
        return Err(Error::Invariant("space is not regular".into()));
    }
    if w.is_empty() {
        return Err(Error::EmptyCover);
    }
    Ok(())
}

/// `K_s` for every live history `s` of length below the horizon. An
/// Alster cover must hold each nonempty one inside a member.
pub fn derived_compacts(spec: &GameSpec, sigma: Arc<dyn Strategy>) -> Result<Vec<PointSet>> {
    if spec.kind != GameKind::Menger || sigma.side() != Side::Two {
        return Err(Error::Invariant("expected Two's strategy in a Menger spec".into()));
    }
    let ex = Extractor {
        spec,
        sigma: sigma.as_ref(),
        w: Vec::new(),
    };
    let alphabet: Vec<usize> = (0..spec.one_pool.len()).collect();
    let mut out = BTreeSet::new();
    for len in 0..spec.horizon {
        for s in sequences(&alphabet, len) {
            let h = ex.history(&s)?;
            if ex.live(&h) {
                let k = ex.answer_closures(&h)?.into_iter().fold(spec.full(), |a, b| a & b);
                if !k.is_empty() {
                    out.insert(k);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Runs the recursion to the spec's horizon and returns `{W_s}`.
/// `spec` is the Menger game on the pool `P` with horizon `d`.
pub fn extract_alster_subcover_from_menger(
    spec: &GameSpec,
    sigma: Arc<dyn Strategy>,
    w: &GdeltaCover,
) -> Result<Extraction> {
    check_inputs(spec, sigma.as_ref(), w)?;
    let ex = Extractor {
        spec,
        sigma: sigma.as_ref(),
        w: w.targets(),
    };
    let d = spec.horizon;
    let mut members = BTreeSet::new();
    let mut provenance = Vec::new();
    let mut record = |s: &[usize], node: &Node| {
        if members.insert(node.w_s) {
            provenance.push(ProvenanceEntry {
                history: s.to_vec(),
                member: node.w_s,
            });
        }
    };
    // A_0 = C_∅; A_{n+1} = A_n ∪ ⋃ {C_s : s ∈ A_n^{n+1}}, for n + 1 < d
    let root = ex.node(&[])?.expect("the empty history is live");
    record(&[], &root);
    let mut a: BTreeSet<usize> = root.c_s.iter().copied().collect();
    for len in 1..d {
        let alphabet: Vec<usize> = a.iter().copied().collect();
        let mut grown = a.clone();
        for s in sequences(&alphabet, len) {
            if let Some(node) = ex.node(&s)? {
                grown.extend(node.c_s.iter().copied());
            }
        }
        a = grown;
    }
    // W_0 = {W_s : s ∈ A^{<d}}
    let alphabet: Vec<usize> = a.iter().copied().collect();
    for len in 1..d {
        for s in sequences(&alphabet, len) {
            if let Some(node) = ex.node(&s)? {
                record(&s, &node);
            }
        }
    }
    Ok(Extraction {
        subcover: members.into_iter().collect(),
        provenance,
    })
}

/// If the extraction misses a point `p`, walks the diagonal: at each live
/// history pick the least `U ∈ C_s` whose answer closure avoids `p`. The
/// result is a legal play along which Two follows `sigma` and never covers
/// `p`. Returns `None` when the extraction covers the space.
pub fn falsify_menger_extraction(
    spec: &GameSpec,
    sigma: Arc<dyn Strategy>,
    w: &GdeltaCover,
) -> Result<Option<Transcript>> {
    let ext = extract_alster_subcover_from_menger(spec, sigma.clone(), w)?;
    let Some(p) = (spec.full() - ext.union()).min() else {
        return Ok(None);
    };
    let ex = Extractor {
        spec,
        sigma: sigma.as_ref(),
        w: w.targets(),
    };
    let mut s: Vec<usize> = Vec::new();
    loop {
        let h = ex.history(&s)?;
        let Some(node) = ex.node(&s)? else {
            return Ok(Some(h.to_transcript()));
        };
        let closures = ex.answer_closures(&h)?;
        let next = node
            .c_s
            .iter()
            .copied()
            .find(|&i| !closures[i].contains(p))
            .ok_or_else(|| Error::Invariant(format!("point {p} lies in W_s for history {s:?}")))?;
        s.push(next);
    }
}

/// All sequences of length `len` over `alphabet`, lexicographic.
pub(crate) fn sequences(alphabet: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for s in &out {
            for &a in alphabet {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Two's strategy that always answers with the first element of One's
/// cover; it wins nothing on spaces with more than one block.
pub fn first_element_menger() -> Arc<dyn Strategy> {
    Arc::new(crate::strategies::ConstantFirst)
}

