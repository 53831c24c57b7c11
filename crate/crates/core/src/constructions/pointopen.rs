//! A subcover of a Gδ cover from One's winning point-open strategy.
//!
//! Each member `W` comes with opens `U(W, 0), U(W, 1), ..` whose
//! intersection is `W`. Nodes of the tree are sequences `s` of factor
//! indices; `W_∅` contains One's opening point and `W_{s⌢k}` contains One's
//! point after Two has answered `U(W_{s↾i}, s(i))` for `i < |s|` and then
//! `U(W_s, k)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::covers::GdeltaCover;
use crate::engine::{strategy_move_one, GameKind, GameSpec, History, OneMove, Side, Strategy, Transcript, TwoMove};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

use super::menger_alster::{Extraction, ProvenanceEntry};

struct Tree<'a> {
    spec: &'a GameSpec,
    sigma: &'a dyn Strategy,
    w: &'a GdeltaCover,
}

impl Tree<'_> {
    fn point(&self, h: &History) -> Result<usize> {
        match strategy_move_one(self.spec, self.sigma, h)? {
            OneMove::Point(x) => Ok(x),
            m => Err(Error::Invariant(format!("expected a point, got {m}"))),
        }
    }

    /// Least member containing `x`, as an index into `w`.
    fn member_for(&self, x: usize) -> Result<usize> {
        self.w
            .elements()
            .iter()
            .position(|e| e.target().contains(x))
            .ok_or_else(|| Error::Invariant(format!("W does not cover point {x}")))
    }

    fn factor(&self, member: usize, k: usize) -> PointSet {
        self.w.elements()[member].factors()[k]
    }

    fn factor_count(&self, member: usize) -> usize {
        self.w.elements()[member].factors().len()
    }

    /// Plays One's points against the opens `t`, returning the history
    /// with nothing pending.
    fn history(&self, t: &[PointSet]) -> Result<History> {
        let mut h = History::new();
        for &u in t {
            let x = self.point(&h)?;
            h.push_one(OneMove::Point(x));
            h.push_two(TwoMove::Pick(u));
        }
        Ok(h)
    }
}

struct Node {
    s: Vec<usize>,
    /// The opens fed so far, `U(W_{s↾i}, s(i))`.
    t: Vec<PointSet>,
    member: usize,
}

fn check_inputs(spec: &GameSpec, sigma: &dyn Strategy, w: &GdeltaCover) -> Result<()> {
    if spec.kind != GameKind::PointOpen {
        return Err(Error::Invariant(format!("expected a point-open spec, got {}", spec.kind)));
    }
    if sigma.side() != Side::One {
        return Err(Error::Invariant("expected a strategy for One".into()));
    }
    if let Some(e) = w.elements().iter().find(|e| e.factors().is_empty()) {
        return Err(Error::Invariant(format!("member {} has no factor presentation", e.target())));
    }
    if w.union() != spec.full() {
        return Err(Error::Invariant("W does not cover the space".into()));
    }
    if !w.elements().iter().all(|e| e.factors_open(&spec.model.space)) {
        return Err(Error::Invariant("W has a non-open factor".into()));
    }
    Ok(())
}

fn build(tree: &Tree<'_>) -> Result<Vec<Node>> {
    let root = Node {
        s: Vec::new(),
        t: Vec::new(),
        member: tree.member_for(tree.point(&History::new())?)?,
    };
    let mut nodes = vec![];
    let mut frontier = vec![root];
    while let Some(node) = frontier.pop() {
        for k in (0..tree.factor_count(node.member)).rev() {
            let mut t = node.t.clone();
            t.push(tree.factor(node.member, k));
            let h = tree.history(&t)?;
            if tree.spec.is_decided(&h) {
                continue;
            }
            let mut s = node.s.clone();
            s.push(k);
            let member = tree.member_for(tree.point(&h)?)?;
            frontier.push(Node { s, t, member });
        }
        nodes.push(node);
    }
    nodes.sort_by(|a, b| (a.s.len(), &a.s).cmp(&(b.s.len(), &b.s)));
    Ok(nodes)
}

/// Builds the tree to the spec's horizon and returns `{W_s}`.
pub fn extract_gdelta_subcover_from_pointopen(
    spec: &GameSpec,
    sigma: Arc<dyn Strategy>,
    w: &GdeltaCover,
) -> Result<Extraction> {
    check_inputs(spec, sigma.as_ref(), w)?;
    let tree = Tree {
        spec,
        sigma: sigma.as_ref(),
        w,
    };
    let mut seen = BTreeSet::new();
    let mut provenance = Vec::new();
    for node in build(&tree)? {
        let target = w.elements()[node.member].target();
        if seen.insert(target) {
            provenance.push(ProvenanceEntry {
                history: node.s.clone(),
                member: target,
            });
        }
    }
    Ok(Extraction {
        subcover: seen.into_iter().collect(),
        provenance,
    })
}

/// If the tree misses a point `p`, feeds One the factors `U(W_s, k_n)`
/// avoiding `p`, giving a play in which One follows `sigma` and `p` stays
/// uncovered. `None` when the tree covers the space.
pub fn falsify_pointopen_extraction(
    spec: &GameSpec,
    sigma: Arc<dyn Strategy>,
    w: &GdeltaCover,
) -> Result<Option<Transcript>> {
    let ext = extract_gdelta_subcover_from_pointopen(spec, sigma.clone(), w)?;
    let Some(p) = (spec.full() - ext.union()).min() else {
        return Ok(None);
    };
    let tree = Tree {
        spec,
        sigma: sigma.as_ref(),
        w,
    };
    let mut t = Vec::new();
    loop {
        let h = tree.history(&t)?;
        if spec.is_decided(&h) {
            return Ok(Some(h.to_transcript()));
        }
        let member = tree.member_for(tree.point(&h)?)?;
        let k = (0..tree.factor_count(member))
            .find(|&k| !tree.factor(member, k).contains(p))
            .ok_or_else(|| Error::Invariant(format!("point {p} lies in an extracted member")))?;
        t.push(tree.factor(member, k));
    }
}
