//! Finite topological spaces and the models games are played on.
//!
//! A finite topology is stored through its minimal open neighbourhoods:
//! `N(x)` is the intersection of all opens containing `x`, and a set is
//! open iff it contains `N(x)` for each of its points. The explicit opens
//! family is derived on demand, so spaces with very many opens (the
//! isolated part of a one-point Lindelöfication, say) stay cheap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    point_count: usize,
    nbhd: Vec<PointSet>,
}

fn check_range(set: PointSet, point_count: usize) -> Result<()> {
    if set.within(point_count) {
        Ok(())
    } else {
        let point = (set - PointSet::full(point_count)).min().unwrap_or(point_count);
        Err(Error::Range { point, point_count })
    }
}

fn check_count(point_count: usize) -> Result<()> {
    if point_count > MAX_POINTS {
        return Err(Error::Invariant(format!(
            "point_count {point_count} exceeds the supported maximum of {MAX_POINTS}"
        )));
    }
    Ok(())
}

impl FiniteSpace {
    /// Smallest topology containing `subbasis`.
    pub fn from_subbasis(point_count: usize, subbasis: &[PointSet]) -> Result<Self> {
        check_count(point_count)?;
        for &s in subbasis {
            check_range(s, point_count)?;
        }
        let full = PointSet::full(point_count);
        let nbhd = (0..point_count)
            .map(|x| {
                subbasis
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        Ok(FiniteSpace { point_count, nbhd })
    }

    /// Validates an explicit opens family and builds the space from it.
    pub fn from_opens(point_count: usize, opens: &[PointSet]) -> Result<Self> {
        check_count(point_count)?;
        for &o in opens {
            check_range(o, point_count)?;
        }
        let full = PointSet::full(point_count);
        let set: std::collections::BTreeSet<PointSet> = opens.iter().copied().collect();
        if !set.contains(&PointSet::EMPTY) {
            return Err(Error::Invariant("opens must contain the empty set".into()));
        }
        if !set.contains(&full) {
            return Err(Error::Invariant("opens must contain the full point set".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&(a | b)) {
                    return Err(Error::Invariant(format!(
                        "opens not closed under union: {a} ∪ {b} missing"
                    )));
                }
                if !set.contains(&(a & b)) {
                    return Err(Error::Invariant(format!(
                        "opens not closed under intersection: {a} ∩ {b} missing"
                    )));
                }
            }
        }
        Self::from_subbasis(point_count, opens)
    }

    /// Builds a space from minimal neighbourhoods, checking `x ∈ N(x)` and
    /// `y ∈ N(x) ⇒ N(y) ⊆ N(x)`.
    pub fn from_neighbourhoods(nbhd: Vec<PointSet>) -> Result<Self> {
        let point_count = nbhd.len();
        check_count(point_count)?;
        for (x, &n) in nbhd.iter().enumerate() {
            check_range(n, point_count)?;
            if !n.contains(x) {
                return Err(Error::Invariant(format!("point {x} not in its own neighbourhood")));
            }
            for y in n.iter() {
                if !nbhd[y].is_subset(n) {
                    return Err(Error::Invariant(format!(
                        "neighbourhood of {y} not inside neighbourhood of {x}"
                    )));
                }
            }
        }
        Ok(FiniteSpace { point_count, nbhd })
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_neighbourhoods((0..n).map(PointSet::singleton).collect())
            .expect("discrete space is valid")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_neighbourhoods(vec![PointSet::full(n); n]).expect("indiscrete space is valid")
    }

    /// The chain `{0} ⊂ {0,1} ⊂ .. ⊂ {0..n-1}`; `chain(3)` is the usual C3.
    pub fn chain(n: usize) -> Self {
        Self::from_neighbourhoods((0..n).map(|x| PointSet::full(x + 1)).collect())
            .expect("chain space is valid")
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.point_count)
    }

    pub fn neighbourhood(&self, x: usize) -> PointSet {
        self.nbhd[x]
    }

    pub fn neighbourhoods(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        s.within(self.point_count) && s.iter().all(|x| self.nbhd[x].is_subset(s))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        s.within(self.point_count) && self.is_open(s.complement(self.point_count))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc | self.nbhd[x])
    }

    /// All opens, sorted canonically. Exponential in the worst case.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut acc = std::collections::BTreeSet::new();
        acc.insert(PointSet::EMPTY);
        let mut distinct: Vec<PointSet> = self.nbhd.clone();
        distinct.sort();
        distinct.dedup();
        for n in distinct {
            let snapshot: Vec<PointSet> = acc.iter().copied().collect();
            for s in snapshot {
                acc.insert(s | n);
            }
        }
        acc.into_iter().collect()
    }

    /// Number of opens, computed by enumeration.
    pub fn open_count(&self) -> usize {
        self.opens().len()
    }

    pub fn closure(&self, a: PointSet) -> PointSet {
        (0..self.point_count)
            .filter(|&x| !self.nbhd[x].is_disjoint(a))
            .collect()
    }

    pub fn interior(&self, a: PointSet) -> PointSet {
        let n = self.point_count;
        self.closure(a.complement(n)).complement(n)
    }

    /// Points of `a` that are not isolated in the subspace `a`.
    pub fn cb_derivative(&self, a: PointSet) -> PointSet {
        a.iter()
            .filter(|&x| self.nbhd[x] & a != PointSet::singleton(x))
            .collect()
    }

    /// Cantor–Bendixson rank if the space is scattered.
    pub fn scattered_rank(&self) -> Option<usize> {
        let mut current = self.full();
        let mut rank = 0;
        while !current.is_empty() {
            let next = self.cb_derivative(current);
            if next == current {
                return None;
            }
            current = next;
            rank += 1;
        }
        Some(rank)
    }

    pub fn is_scattered(&self) -> bool {
        self.scattered_rank().is_some()
    }

    /// Per-point Cantor–Bendixson level: the 1-based iteration at which the
    /// point is removed. `None` when the space is not scattered.
    pub fn cb_levels(&self) -> Option<Vec<usize>> {
        let mut levels = vec![0; self.point_count];
        let mut current = self.full();
        let mut level = 0;
        while !current.is_empty() {
            let next = self.cb_derivative(current);
            if next == current {
                return None;
            }
            level += 1;
            for x in (current - next).iter() {
                levels[x] = level;
            }
            current = next;
        }
        Some(levels)
    }

    /// Regularity by enumeration of closed sets: every closed `F` and point
    /// `x ∉ F` must be separated by disjoint opens. The smallest candidates
    /// are `N(x)` and the open hull of `F`, so those are the ones checked.
    pub fn is_regular(&self) -> bool {
        let n = self.point_count;
        self.opens().into_iter().all(|u| {
            let closed = u.complement(n);
            let hull = self.open_hull(closed);
            u.iter().all(|x| self.nbhd[x].is_disjoint(hull))
        })
    }

    pub fn is_t1(&self) -> bool {
        (0..self.point_count).all(|x| self.nbhd[x] == PointSet::singleton(x))
    }
}

/// A finite space together with the declared structure that stands in
/// for compactness, countability and Rothberger subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceModel {
    pub space: FiniteSpace,
    pub compact_pool: Vec<PointSet>,
    pub small_ideal: Vec<PointSet>,
    /// Sets treated as the Rothberger subspaces for R-cover classification.
    pub rothberger_pool: Vec<PointSet>,
    pub label: String,
}

fn singletons(n: usize) -> Vec<PointSet> {
    (0..n).map(PointSet::singleton).collect()
}

fn canonical(mut v: Vec<PointSet>) -> Vec<PointSet> {
    v.sort();
    v.dedup();
    v
}

impl SpaceModel {
    /// Default declarations: singleton compacts, trivial ideal `{∅}`,
    /// singleton Rothberger pool.
    pub fn new(space: FiniteSpace, label: impl Into<String>) -> Self {
        let n = space.point_count();
        SpaceModel {
            space,
            compact_pool: singletons(n),
            small_ideal: vec![PointSet::EMPTY],
            rothberger_pool: singletons(n),
            label: label.into(),
        }
    }

    pub fn with_compact_pool(mut self, pool: Vec<PointSet>) -> Result<Self> {
        self.compact_pool = canonical(pool);
        self.validate()?;
        Ok(self)
    }

    pub fn with_small_ideal(mut self, ideal: Vec<PointSet>) -> Result<Self> {
        self.small_ideal = canonical(ideal);
        self.validate()?;
        Ok(self)
    }

    pub fn with_rothberger_pool(mut self, pool: Vec<PointSet>) -> Result<Self> {
        self.rothberger_pool = canonical(pool);
        self.validate()?;
        Ok(self)
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    pub fn full(&self) -> PointSet {
        self.space.full()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.point_count();
        for (name, fam) in [
            ("compact_pool", &self.compact_pool),
            ("small_ideal", &self.small_ideal),
            ("rothberger_pool", &self.rothberger_pool),
        ] {
            for &s in fam.iter() {
                if !s.within(n) {
                    return Err(Error::Invariant(format!(
                        "{name} member {s} is not a subset of the point set"
                    )));
                }
            }
        }
        for x in 0..n {
            if !self.compact_pool.contains(&PointSet::singleton(x)) {
                return Err(Error::Invariant(format!(
                    "compact_pool must contain every singleton; {{{x}}} missing"
                )));
            }
        }
        let ideal: std::collections::BTreeSet<PointSet> = self.small_ideal.iter().copied().collect();
        if !ideal.contains(&PointSet::EMPTY) {
            return Err(Error::Invariant("small_ideal must contain the empty set".into()));
        }
        for &a in &ideal {
            for sub in a.subsets() {
                if !ideal.contains(&sub) {
                    return Err(Error::Invariant(format!(
                        "small_ideal not downward closed: {sub} ⊆ {a} missing"
                    )));
                }
            }
            for &b in &ideal {
                if !ideal.contains(&(a | b)) {
                    return Err(Error::Invariant(format!(
                        "small_ideal not closed under union: {a} ∪ {b} missing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest member of the small ideal (the ideal is principal on a
    /// finite set, being closed under finite unions).
    pub fn small_ideal_top(&self) -> PointSet {
        self.small_ideal.iter().fold(PointSet::EMPTY, |acc, &s| acc | s)
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            point_count: self.point_count(),
            opens: self.space.opens(),
            compact_pool: Some(self.compact_pool.clone()),
            small_ideal: Some(self.small_ideal.clone()),
            rothberger_pool: Some(self.rothberger_pool.clone()),
            label: Some(self.label.clone()),
        }
    }
}

/// JSON document for a space model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub point_count: usize,
    pub opens: Vec<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact_pool: Option<Vec<PointSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub small_ideal: Option<Vec<PointSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rothberger_pool: Option<Vec<PointSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SpaceFile {
    pub fn into_model(self) -> Result<SpaceModel> {
        let space = FiniteSpace::from_opens(self.point_count, &self.opens)?;
        let n = space.point_count();
        let mut model = SpaceModel::new(space, self.label.unwrap_or_default());
        if let Some(pool) = self.compact_pool {
            model.compact_pool = canonical(pool);
        }
        if let Some(ideal) = self.small_ideal {
            model.small_ideal = canonical(ideal);
        }
        if let Some(pool) = self.rothberger_pool {
            model.rothberger_pool = canonical(pool);
        }
        debug_assert_eq!(n, model.point_count());
        model.validate()?;
        Ok(model)
    }
}

pub fn load_model(json: &str) -> Result<SpaceModel> {
    let file: SpaceFile = serde_json::from_str(json)?;
    file.into_model()
}

/// Deterministic random model: `subbasis_size` random subsets generate the
/// topology; compacts are the singletons plus two random subsets; the small
/// ideal is the power set of one random subset.
pub fn random_model(seed: u64, point_count: usize, subbasis_size: usize) -> SpaceModel {
    assert!(
        (1..=MAX_POINTS).contains(&point_count),
        "point_count must be in 1..=64"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = PointSet::full(point_count);
    let draw = |rng: &mut ChaCha8Rng| PointSet::from_bits(rng.gen::<u64>()) & full;
    let subbasis: Vec<PointSet> = (0..subbasis_size).map(|_| draw(&mut rng)).collect();
    let space = FiniteSpace::from_subbasis(point_count, &subbasis).expect("in range");
    let mut compacts = singletons(point_count);
    compacts.push(draw(&mut rng));
    compacts.push(draw(&mut rng));
    let ideal_top = draw(&mut rng);
    SpaceModel {
        space,
        compact_pool: canonical(compacts),
        small_ideal: ideal_top.subsets().collect(),
        rothberger_pool: singletons(point_count),
        label: format!("random(seed={seed},n={point_count},m={subbasis_size})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    fn c3() -> FiniteSpace {
        FiniteSpace::from_subbasis(3, &[ps(&[0]), ps(&[0, 1])]).unwrap()
    }

    #[test]
    fn subbasis_examples() {
        let d2 = FiniteSpace::from_subbasis(2, &[ps(&[0]), ps(&[1])]).unwrap();
        assert_eq!(d2.opens(), vec![ps(&[]), ps(&[0]), ps(&[1]), ps(&[0, 1])]);
        assert_eq!(c3().opens(), vec![ps(&[]), ps(&[0]), ps(&[0, 1]), ps(&[0, 1, 2])]);
        let ind = FiniteSpace::from_subbasis(2, &[]).unwrap();
        assert_eq!(ind.opens(), vec![ps(&[]), ps(&[0, 1])]);
        assert_eq!(c3(), FiniteSpace::chain(3));
    }

    #[test]
    fn subbasis_out_of_range() {
        let err = FiniteSpace::from_subbasis(2, &[ps(&[2])]).unwrap_err();
        assert!(matches!(err, Error::Range { point: 2, point_count: 2 }));
    }

    #[test]
    fn closure_examples() {
        let c3 = c3();
        assert_eq!(c3.closure(ps(&[0])), ps(&[0, 1, 2]));
        assert_eq!(c3.closure(ps(&[1])), ps(&[1, 2]));
        assert_eq!(c3.closure(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(c3.interior(ps(&[0, 2])), ps(&[0]));
    }

    #[test]
    fn regular_examples() {
        assert!(FiniteSpace::discrete(2).is_regular());
        assert!(!c3().is_regular());
        assert!(FiniteSpace::indiscrete(2).is_regular());
    }

    #[test]
    fn derivative_and_scattered_examples() {
        let c3 = c3();
        assert_eq!(c3.cb_derivative(ps(&[0, 1, 2])), ps(&[1, 2]));
        let ind = FiniteSpace::indiscrete(2);
        assert_eq!(ind.cb_derivative(ps(&[0, 1])), ps(&[0, 1]));
        assert_eq!(c3.cb_derivative(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(c3.scattered_rank(), Some(3));
        assert_eq!(c3.cb_levels(), Some(vec![1, 2, 3]));
        assert_eq!(ind.scattered_rank(), None);
        assert_eq!(FiniteSpace::discrete(1).scattered_rank(), Some(1));
    }

    #[test]
    fn from_opens_names_failing_invariant() {
        let err = FiniteSpace::from_opens(2, &[ps(&[]), ps(&[0]), ps(&[1])]).unwrap_err();
        assert!(err.to_string().contains("full point set"), "{err}");
        let err = FiniteSpace::from_opens(3, &[ps(&[]), ps(&[0]), ps(&[1]), ps(&[0, 1, 2])])
            .unwrap_err();
        assert!(err.to_string().contains("union"), "{err}");
        let err =
            FiniteSpace::from_opens(3, &[ps(&[]), ps(&[0, 1]), ps(&[1, 2]), ps(&[0, 1, 2])])
                .unwrap_err();
        assert!(err.to_string().contains("intersection"), "{err}");
    }

    #[test]
    fn random_model_is_deterministic_and_valid() {
        let a = random_model(7, 3, 2);
        let b = random_model(7, 3, 2);
        assert_eq!(a, b);
        a.validate().unwrap();
        let c = random_model(8, 3, 2);
        c.validate().unwrap();
    }

    #[test]
    fn model_file_round_trip_and_rejection() {
        let model = SpaceModel::new(c3(), "C3");
        let json = serde_json::to_string(&model.to_file()).unwrap();
        assert_eq!(load_model(&json).unwrap(), model);
        let bad = r#"{"point_count":2,"opens":[[],[0,1]],"compact_pool":[[0]]}"#;
        let err = load_model(bad).unwrap_err();
        assert!(err.to_string().contains("singleton"), "{err}");
        let bad = r#"{"point_count":2,"opens":[[],[0,1]],"small_ideal":[[0]]}"#;
        assert!(load_model(bad).unwrap_err().to_string().contains("empty set"));
    }
}
