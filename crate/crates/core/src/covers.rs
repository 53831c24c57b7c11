//! Cover families, Gδ-presented covers, the six cover classes, and
//! brute-force single-selection checks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::{FiniteSpace, SpaceModel};

/// A family of point-sets with distinct members, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoverFamily {
    elements: Vec<PointSet>,
}

impl CoverFamily {
    /// Rejects duplicate members; sorts the rest canonically.
    pub fn new(mut elements: Vec<PointSet>) -> Result<Self> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!("duplicate cover element {}", w[0])));
        }
        Ok(CoverFamily { elements })
    }

    /// Sorts and drops duplicates instead of rejecting them.
    pub fn dedup(mut elements: Vec<PointSet>) -> Self {
        elements.sort();
        elements.dedup();
        CoverFamily { elements }
    }

    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn union(&self) -> PointSet {
        self.elements.iter().fold(PointSet::EMPTY, |a, &b| a | b)
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.elements.binary_search(&s).is_ok()
    }

    /// Least member containing `point`.
    pub fn least_containing(&self, point: usize) -> Option<PointSet> {
        self.elements.iter().copied().find(|e| e.contains(point))
    }

    /// Least member including `set`.
    pub fn least_including(&self, set: PointSet) -> Option<PointSet> {
        self.elements.iter().copied().find(|e| set.is_subset(*e))
    }
}

impl<'de> Deserialize<'de> for CoverFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            elements: Vec<PointSet>,
        }
        let raw = Raw::deserialize(d)?;
        CoverFamily::new(raw.elements).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CoverFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A set presented as the intersection of finitely many opens.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GdeltaPresentedSet {
    target: PointSet,
    factors: Vec<PointSet>,
}

impl GdeltaPresentedSet {
    pub fn new(factors: Vec<PointSet>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invariant("Gδ presentation needs at least one factor".into()));
        }
        let target = factors.iter().skip(1).fold(factors[0], |a, &b| a & b);
        Ok(GdeltaPresentedSet { target, factors })
    }

    /// Checks that `target` equals the intersection of `factors`.
    pub fn with_target(target: PointSet, factors: Vec<PointSet>) -> Result<Self> {
        let set = Self::new(factors)?;
        if set.target != target {
            return Err(Error::Invariant(format!(
                "Gδ target {target} differs from intersection of factors {}",
                set.target
            )));
        }
        Ok(set)
    }

    /// An open presented by itself.
    pub fn open(target: PointSet) -> Self {
        GdeltaPresentedSet {
            target,
            factors: vec![target],
        }
    }

    pub fn target(&self) -> PointSet {
        self.target
    }

    pub fn factors(&self) -> &[PointSet] {
        &self.factors
    }

    pub fn factors_open(&self, space: &FiniteSpace) -> bool {
        self.factors.iter().all(|&f| space.is_open(f))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GdeltaCover {
    elements: Vec<GdeltaPresentedSet>,
}

impl GdeltaCover {
    /// Sorted canonically; duplicate targets are rejected.
    pub fn new(mut elements: Vec<GdeltaPresentedSet>) -> Result<Self> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0].target == w[1].target) {
            return Err(Error::Invariant(format!("duplicate Gδ target {}", w[0].target)));
        }
        Ok(GdeltaCover { elements })
    }

    pub fn from_opens(opens: &[PointSet]) -> Result<Self> {
        Self::new(opens.iter().map(|&o| GdeltaPresentedSet::open(o)).collect())
    }

    pub fn elements(&self) -> &[GdeltaPresentedSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn targets(&self) -> Vec<PointSet> {
        self.elements.iter().map(|e| e.target).collect()
    }

    pub fn union(&self) -> PointSet {
        self.elements.iter().fold(PointSet::EMPTY, |a, e| a | e.target)
    }

    pub fn find(&self, target: PointSet) -> Option<&GdeltaPresentedSet> {
        self.elements.iter().find(|e| e.target == target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverClass {
    O,
    Ostar,
    K,
    Alster,
    R,
    Odelta,
}

impl CoverClass {
    pub const ALL: [CoverClass; 6] = [
        CoverClass::O,
        CoverClass::Ostar,
        CoverClass::K,
        CoverClass::Alster,
        CoverClass::R,
        CoverClass::Odelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoverClass::O => "O",
            CoverClass::Ostar => "Ostar",
            CoverClass::K => "K",
            CoverClass::Alster => "Alster",
            CoverClass::R => "R",
            CoverClass::Odelta => "Odelta",
        }
    }
}

impl fmt::Display for CoverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoverClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoverClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invariant(format!("unknown cover class {s:?}")))
    }
}

impl Serialize for CoverClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CoverClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Class names sorted as strings, the serialized form of a classification.
pub fn class_names(classes: &BTreeSet<CoverClass>) -> Vec<&'static str> {
    let mut names: Vec<_> = classes.iter().map(|c| c.name()).collect();
    names.sort_unstable();
    names
}

/// `Ok(())` when `fam` is an open cover, otherwise a diagnostic.
pub fn check_open_cover(model: &SpaceModel, fam: &CoverFamily) -> std::result::Result<(), String> {
    if let Some(e) = fam.elements().iter().find(|&&e| !model.space.is_open(e)) {
        return Err(format!("element not open: {e}"));
    }
    let missing = model.full() - fam.union();
    if !missing.is_empty() {
        return Err(format!("union misses {missing}"));
    }
    Ok(())
}

pub fn is_open_cover(model: &SpaceModel, fam: &CoverFamily) -> bool {
    check_open_cover(model, fam).is_ok()
}

fn union_closed(elements: &[PointSet]) -> bool {
    let set: BTreeSet<PointSet> = elements.iter().copied().collect();
    elements
        .iter()
        .all(|&a| elements.iter().all(|&b| set.contains(&(a | b))))
}

fn every_inside(pool: &[PointSet], elements: &[PointSet]) -> bool {
    pool.iter()
        .all(|&k| elements.iter().any(|&e| k.is_subset(e)))
}

/// Smallest superfamily closed under pairwise union.
pub fn finite_union_closure(fam: &CoverFamily) -> CoverFamily {
    let mut acc: BTreeSet<PointSet> = fam.elements().iter().copied().collect();
    loop {
        let snapshot: Vec<PointSet> = acc.iter().copied().collect();
        let before = acc.len();
        for &a in &snapshot {
            for &b in &snapshot {
                acc.insert(a | b);
            }
        }
        if acc.len() == before {
            break;
        }
    }
    CoverFamily {
        elements: acc.into_iter().collect(),
    }
}

/// Classes satisfied by an open family: a subset of `{O, Ostar, K, R}`.
pub fn classify(model: &SpaceModel, fam: &CoverFamily) -> BTreeSet<CoverClass> {
    let mut out = BTreeSet::new();
    if !is_open_cover(model, fam) {
        return out;
    }
    let els = fam.elements();
    out.insert(CoverClass::O);
    if union_closed(els) {
        out.insert(CoverClass::Ostar);
    }
    if every_inside(&model.compact_pool, els) {
        out.insert(CoverClass::K);
    }
    if every_inside(&model.rothberger_pool, els) {
        out.insert(CoverClass::R);
    }
    out
}

/// Classes satisfied by a Gδ-presented family: a subset of `{Odelta, Alster}`.
pub fn classify_gdelta(model: &SpaceModel, fam: &GdeltaCover) -> BTreeSet<CoverClass> {
    let mut out = BTreeSet::new();
    if !fam.elements().iter().all(|e| e.factors_open(&model.space)) {
        return out;
    }
    if fam.union() != model.full() {
        return out;
    }
    out.insert(CoverClass::Odelta);
    if every_inside(&model.compact_pool, &fam.targets()) {
        out.insert(CoverClass::Alster);
    }
    out
}

pub fn is_alster(model: &SpaceModel, fam: &GdeltaCover) -> bool {
    classify_gdelta(model, fam).contains(&CoverClass::Alster)
}

pub fn is_k_cover(model: &SpaceModel, fam: &CoverFamily) -> bool {
    classify(model, fam).contains(&CoverClass::K)
}

/// Whether a selected collection of targets lies in `class`.
pub fn collected_in_class(model: &SpaceModel, targets: &[PointSet], class: CoverClass) -> bool {
    let fam = CoverFamily::dedup(targets.to_vec());
    match class {
        CoverClass::O | CoverClass::Ostar | CoverClass::K | CoverClass::R => {
            classify(model, &fam).contains(&class)
        }
        CoverClass::Odelta => fam.union() == model.full(),
        CoverClass::Alster => {
            fam.union() == model.full() && every_inside(&model.compact_pool, fam.elements())
        }
    }
}

/// Anything a selection can be drawn from: a list of member targets.
pub trait Selectable {
    fn member_targets(&self) -> Vec<PointSet>;
}

impl Selectable for CoverFamily {
    fn member_targets(&self) -> Vec<PointSet> {
        self.elements.clone()
    }
}

impl Selectable for GdeltaCover {
    fn member_targets(&self) -> Vec<PointSet> {
        self.targets()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Selection {
    /// One member index per family, and the chosen targets.
    Found { indices: Vec<usize>, picks: Vec<PointSet> },
    /// Exhaustive search found nothing.
    NoSelection { exhaustive: bool },
}

impl Selection {
    pub fn is_found(&self) -> bool {
        matches!(self, Selection::Found { .. })
    }
}

/// First selection in lexicographic index order whose picks lie in `target`.
pub fn s1_select<T: Selectable>(
    model: &SpaceModel,
    seq: &[T],
    target: CoverClass,
) -> Result<Selection> {
    if seq.is_empty() {
        return Err(Error::Invariant("selection sequence must be nonempty".into()));
    }
    let members: Vec<Vec<PointSet>> = seq.iter().map(|f| f.member_targets()).collect();
    if members.iter().any(|m| m.is_empty()) {
        return Err(Error::EmptyCover);
    }
    let mut indices = vec![0usize; members.len()];
    loop {
        let picks: Vec<PointSet> = indices
            .iter()
            .zip(&members)
            .map(|(&i, m)| m[i])
            .collect();
        if collected_in_class(model, &picks, target) {
            return Ok(Selection::Found { indices, picks });
        }
        // odometer, last coordinate fastest
        let mut pos = members.len();
        loop {
            if pos == 0 {
                return Ok(Selection::NoSelection { exhaustive: true });
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < members[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S1Verdict {
    pub holds: bool,
    /// Pool indices of the lexicographically least failing sequence.
    pub counterexample: Option<Vec<usize>>,
}

/// Whether every length-`k` sequence drawn from `pool` admits a selection.
pub fn s1_holds_over_pool<T: Selectable + Clone>(
    model: &SpaceModel,
    pool: &[T],
    k: usize,
    target: CoverClass,
) -> Result<S1Verdict> {
    if k == 0 {
        return Err(Error::Invariant("sequence length must be at least 1".into()));
    }
    if pool.is_empty() {
        return Ok(S1Verdict {
            holds: true,
            counterexample: None,
        });
    }
    let mut idx = vec![0usize; k];
    loop {
        let seq: Vec<T> = idx.iter().map(|&i| pool[i].clone()).collect();
        if !s1_select(model, &seq, target)?.is_found() {
            return Ok(S1Verdict {
                holds: false,
                counterexample: Some(idx),
            });
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(S1Verdict {
                    holds: true,
                    counterexample: None,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pool.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn nonempty_opens(space: &FiniteSpace) -> Result<Vec<PointSet>> {
    let opens: Vec<PointSet> = space.opens().into_iter().filter(|o| !o.is_empty()).collect();
    if opens.len() > 24 {
        return Err(Error::Unsupported(format!(
            "cover enumeration over {} opens is too large",
            opens.len()
        )));
    }
    Ok(opens)
}

fn enumerate_families<F>(opens: &[PointSet], mut keep: F) -> Vec<Vec<PointSet>>
where
    F: FnMut(&[PointSet]) -> bool,
{
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(opens.len());
    for mask in 1u32..(1u32 << opens.len()) {
        buf.clear();
        buf.extend(
            (0..opens.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| opens[i]),
        );
        if keep(&buf) {
            out.push(buf.clone());
        }
    }
    out.sort();
    out
}

fn union_of(els: &[PointSet]) -> PointSet {
    els.iter().fold(PointSet::EMPTY, |a, &b| a | b)
}

fn is_irredundant_cover(full: PointSet, els: &[PointSet]) -> bool {
    if union_of(els) != full {
        return false;
    }
    (0..els.len()).all(|i| {
        let rest = els
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(PointSet::EMPTY, |a, (_, &b)| a | b);
        rest != full
    })
}

fn k_property(model: &SpaceModel, els: &[PointSet]) -> bool {
    union_of(els) == model.full() && every_inside(&model.compact_pool, els)
}

fn is_minimal_k_cover(model: &SpaceModel, els: &[PointSet]) -> bool {
    if !k_property(model, els) {
        return false;
    }
    let mut rest = Vec::with_capacity(els.len());
    (0..els.len()).all(|i| {
        rest.clear();
        rest.extend(els.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e));
        !k_property(model, &rest)
    })
}

/// All open covers without a removable element, canonically ordered.
pub fn irredundant_covers(space: &FiniteSpace) -> Result<Vec<CoverFamily>> {
    let full = space.full();
    let opens = nonempty_opens(space)?;
    Ok(enumerate_families(&opens, |els| is_irredundant_cover(full, els))
        .into_iter()
        .map(|elements| CoverFamily { elements })
        .collect())
}

/// All k-covers no proper subfamily of which is a k-cover.
pub fn minimal_k_covers(model: &SpaceModel) -> Result<Vec<CoverFamily>> {
    let opens = nonempty_opens(&model.space)?;
    Ok(enumerate_families(&opens, |els| is_minimal_k_cover(model, els))
        .into_iter()
        .map(|elements| CoverFamily { elements })
        .collect())
}

/// Minimal Alster covers; every target is presented by itself.
pub fn minimal_alster_covers(model: &SpaceModel) -> Result<Vec<GdeltaCover>> {
    minimal_k_covers(model)?
        .into_iter()
        .map(|c| GdeltaCover::from_opens(c.elements()))
        .collect()
}

/// Greedily drops members (canonical order) while the rest still covers.
pub fn reduce_to_irredundant(full: PointSet, fam: &CoverFamily) -> CoverFamily {
    let mut els = fam.elements().to_vec();
    let mut i = 0;
    while i < els.len() {
        let rest = union_of(&[&els[..i], &els[i + 1..]].concat());
        if rest == full {
            els.remove(i);
        } else {
            i += 1;
        }
    }
    CoverFamily { elements: els }
}

/// Greedily drops members while the rest is still a k-cover.
pub fn reduce_to_minimal_k_cover(model: &SpaceModel, fam: &CoverFamily) -> CoverFamily {
    let mut els = fam.elements().to_vec();
    let mut i = 0;
    while i < els.len() {
        let rest = [&els[..i], &els[i + 1..]].concat();
        if k_property(model, &rest) {
            els.remove(i);
        } else {
            i += 1;
        }
    }
    CoverFamily { elements: els }
}

/// JSON document for a cover. Gδ covers add a factor list per element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverFile {
    pub elements: Vec<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<Vec<PointSet>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCover {
    Open(CoverFamily),
    Gdelta(GdeltaCover),
}

impl CoverFile {
    pub fn into_cover(self) -> Result<AnyCover> {
        match self.factors {
            None => Ok(AnyCover::Open(CoverFamily::new(self.elements)?)),
            Some(factors) => {
                if factors.len() != self.elements.len() {
                    return Err(Error::Invariant(
                        "factors must list one presentation per element".into(),
                    ));
                }
                let els = self
                    .elements
                    .into_iter()
                    .zip(factors)
                    .map(|(t, f)| GdeltaPresentedSet::with_target(t, f))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyCover::Gdelta(GdeltaCover::new(els)?))
            }
        }
    }

    pub fn from_open(fam: &CoverFamily) -> Self {
        CoverFile {
            elements: fam.elements().to_vec(),
            factors: None,
        }
    }

    pub fn from_gdelta(fam: &GdeltaCover) -> Self {
        CoverFile {
            elements: fam.targets(),
            factors: Some(fam.elements().iter().map(|e| e.factors().to_vec()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    fn fam(v: &[&[usize]]) -> CoverFamily {
        CoverFamily::new(v.iter().map(|s| ps(s)).collect()).unwrap()
    }

    fn d2() -> SpaceModel {
        SpaceModel::new(FiniteSpace::discrete(2), "D2")
    }

    fn names(set: &BTreeSet<CoverClass>) -> Vec<&'static str> {
        class_names(set)
    }

    #[test]
    fn open_cover_examples() {
        let d2 = d2();
        assert!(is_open_cover(&d2, &fam(&[&[0], &[1]])));
        assert!(!is_open_cover(&d2, &fam(&[&[0]])));
        let c3 = SpaceModel::new(FiniteSpace::chain(3), "C3");
        assert!(!is_open_cover(&c3, &fam(&[&[0], &[0, 1]])));
        let err = check_open_cover(&c3, &fam(&[&[1], &[0, 1, 2]])).unwrap_err();
        assert!(err.contains("not open"));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(CoverFamily::new(vec![ps(&[0]), ps(&[0])]).is_err());
    }

    #[test]
    fn union_closure_examples() {
        assert_eq!(finite_union_closure(&fam(&[&[0], &[1]])), fam(&[&[0], &[1], &[0, 1]]));
        assert_eq!(finite_union_closure(&fam(&[&[0, 1]])), fam(&[&[0, 1]]));
        let c = finite_union_closure(&fam(&[&[0], &[1], &[2]]));
        assert_eq!(c.len(), 7);
        assert_eq!(finite_union_closure(&c), c);
    }

    #[test]
    fn classify_examples() {
        let d2 = d2();
        let f = fam(&[&[0], &[1]]);
        assert_eq!(names(&classify(&d2, &f)), vec!["K", "O", "R"]);
        let all = d2
            .clone()
            .with_compact_pool(ps(&[0, 1]).subsets().collect())
            .unwrap();
        assert_eq!(names(&classify(&all, &f)), vec!["O", "R"]);
        let whole = fam(&[&[0, 1]]);
        assert_eq!(names(&classify(&all, &whole)), vec!["K", "O", "Ostar", "R"]);
        assert_eq!(names(&classify(&d2, &whole)), vec!["K", "O", "Ostar", "R"]);
    }

    #[test]
    fn classify_gdelta_cover() {
        let d2 = d2();
        let g = GdeltaCover::new(vec![
            GdeltaPresentedSet::new(vec![ps(&[0]), ps(&[0, 1])]).unwrap(),
            GdeltaPresentedSet::open(ps(&[1])),
        ])
        .unwrap();
        assert_eq!(names(&classify_gdelta(&d2, &g)), vec!["Alster", "Odelta"]);
        let half = GdeltaCover::from_opens(&[ps(&[0])]).unwrap();
        assert!(classify_gdelta(&d2, &half).is_empty());
        assert!(GdeltaPresentedSet::with_target(ps(&[1]), vec![ps(&[0])]).is_err());
    }

    #[test]
    fn s1_examples() {
        let d2 = d2();
        let c = fam(&[&[0], &[1]]);
        let sel = s1_select(&d2, &[c.clone(), c.clone()], CoverClass::O).unwrap();
        assert_eq!(
            sel,
            Selection::Found {
                indices: vec![0, 1],
                picks: vec![ps(&[0]), ps(&[1])]
            }
        );
        let none = s1_select(&d2, &[c.clone()], CoverClass::O).unwrap();
        assert_eq!(none, Selection::NoSelection { exhaustive: true });
        let empty = CoverFamily::new(vec![]).unwrap();
        assert!(matches!(s1_select(&d2, &[empty], CoverClass::O), Err(Error::EmptyCover)));
    }

    #[test]
    fn s1_pool_examples() {
        let d2 = d2();
        let c = fam(&[&[0], &[1]]);
        let v = s1_holds_over_pool(&d2, &[c.clone()], 2, CoverClass::O).unwrap();
        assert!(v.holds);
        let v = s1_holds_over_pool(&d2, &[c.clone()], 1, CoverClass::O).unwrap();
        assert_eq!(v.counterexample, Some(vec![0]));
        let w = fam(&[&[0, 1]]);
        for k in 1..4 {
            assert!(s1_holds_over_pool(&d2, &[w.clone()], k, CoverClass::O).unwrap().holds);
        }
    }

    #[test]
    fn enumerations_on_small_spaces() {
        let d2 = FiniteSpace::discrete(2);
        let covers = irredundant_covers(&d2).unwrap();
        assert_eq!(covers, vec![fam(&[&[0], &[1]]), fam(&[&[0, 1]])]);
        let c3 = SpaceModel::new(FiniteSpace::chain(3), "C3");
        assert_eq!(irredundant_covers(&c3.space).unwrap(), vec![fam(&[&[0, 1, 2]])]);
        let model = SpaceModel::new(FiniteSpace::discrete(2), "D2")
            .with_compact_pool(vec![ps(&[0]), ps(&[1]), ps(&[0, 1])])
            .unwrap();
        assert_eq!(minimal_k_covers(&model).unwrap(), vec![fam(&[&[0, 1]])]);
        let d3 = FiniteSpace::discrete(3);
        // irredundant covers of the discrete 3-point space = set partitions... and more
        for c in irredundant_covers(&d3).unwrap() {
            assert_eq!(reduce_to_irredundant(d3.full(), &c), c);
        }
    }

    #[test]
    fn reductions() {
        let full = ps(&[0, 1]);
        let red = reduce_to_irredundant(full, &fam(&[&[0], &[0, 1]]));
        assert_eq!(red, fam(&[&[0, 1]]));
        let model = d2();
        let red = reduce_to_minimal_k_cover(&model, &fam(&[&[0], &[1], &[0, 1]]));
        assert_eq!(red, fam(&[&[0, 1]]));
    }

    #[test]
    fn cover_file_parsing() {
        let f: CoverFile = serde_json::from_str(r#"{"elements":[[1],[0]]}"#).unwrap();
        assert_eq!(f.into_cover().unwrap(), AnyCover::Open(fam(&[&[0], &[1]])));
        let g: CoverFile =
            serde_json::from_str(r#"{"elements":[[0],[1]],"factors":[[[0],[0,1]],[[1]]]}"#)
                .unwrap();
        assert!(matches!(g.into_cover().unwrap(), AnyCover::Gdelta(_)));
        let bad: CoverFile =
            serde_json::from_str(r#"{"elements":[[0]],"factors":[[[0,1]]]}"#).unwrap();
        assert!(bad.into_cover().is_err());
    }
}
