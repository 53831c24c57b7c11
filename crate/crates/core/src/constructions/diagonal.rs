//! Diagonal selection from a sequence of Alster covers.
//!
//! Every choice function `f` through the covers gives the Gδ set
//! `V_f = ⋂ f(n)`; these form an Alster cover, a covering subfamily
//! `V_{f_0}, V_{f_1}, ..` is extracted, and `A_n = f_n(n)` is selected from
//! the n-th cover.

use serde::Serialize;

use crate::covers::{is_alster, GdeltaCover};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::SpaceModel;

/// Largest product of cover sizes the extraction will scan.
pub const PRODUCT_LIMIT: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalSelection {
    /// `A_n`, the target selected from `covers[n mod k]`.
    pub picks: Vec<PointSet>,
    /// Index of `A_n` inside `covers[n mod k]`.
    pub indices: Vec<usize>,
    /// The choice function `f_n`, one element index per coordinate.
    pub choices: Vec<Vec<usize>>,
}

/// Selects `A_0 .. A_{rounds-1}` with `A_n ∈ covers[n mod k]` covering the
/// space. The list is repeated cyclically to stand in for an ω-sequence and
/// choice functions range over the first `max(rounds, k)` coordinates.
pub fn alster_diagonal_selection(
    model: &SpaceModel,
    covers: &[GdeltaCover],
    rounds: usize,
) -> Result<DiagonalSelection> {
    if covers.is_empty() {
        return Err(Error::Invariant("need at least one cover".into()));
    }
    if rounds == 0 {
        return Err(Error::Invariant("rounds must be at least 1".into()));
    }
    for (i, c) in covers.iter().enumerate() {
        if !is_alster(model, c) {
            return Err(Error::NotAlster(format!("cover {i}")));
        }
    }
    let k = covers.len();
    let len = rounds.max(k);
    let targets: Vec<Vec<PointSet>> = (0..len).map(|n| covers[n % k].targets()).collect();
    let product: u128 = targets.iter().map(|t| t.len() as u128).product();
    if product > PRODUCT_LIMIT {
        return Err(Error::Unsupported(format!(
            "{product} choice functions exceed the scan limit"
        )));
    }
    let full = model.full();
    let mut covered = PointSet::EMPTY;
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let f = match (full - covered).min() {
            Some(x) => least_choice(&targets, |v| v.contains(x)).ok_or_else(|| {
                Error::Construction(format!("no V_f contains point {x}"))
            })?,
            // already covered: the least choice function fills the round
            None => vec![0; len],
        };
        covered |= v_of(&targets, &f);
        choices.push(f);
    }
    if covered != full {
        return Err(Error::Construction(format!(
            "{rounds} rounds of V_f leave {} uncovered",
            full - covered
        )));
    }
    let indices: Vec<usize> = choices.iter().enumerate().map(|(n, f)| f[n]).collect();
    let picks = indices
        .iter()
        .enumerate()
        .map(|(n, &i)| targets[n][i])
        .collect();
    Ok(DiagonalSelection {
        picks,
        indices,
        choices,
    })
}

fn v_of(targets: &[Vec<PointSet>], f: &[usize]) -> PointSet {
    f.iter()
        .zip(targets)
        .fold(PointSet::full(64), |acc, (&i, t)| acc & t[i])
}

/// Least choice function in lexicographic order whose `V_f` satisfies `ok`.
fn least_choice(targets: &[Vec<PointSet>], ok: impl Fn(PointSet) -> bool) -> Option<Vec<usize>> {
    let mut f = vec![0usize; targets.len()];
    loop {
        if ok(v_of(targets, &f)) {
            return Some(f);
        }
        let mut pos = targets.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            f[pos] += 1;
            if f[pos] < targets[pos].len() {
                break;
            }
            f[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FiniteSpace;

    fn ps(v: &[usize]) -> PointSet {
        PointSet::from_points(v.iter().copied())
    }

    #[test]
    fn two_point_example() {
        let model = SpaceModel::new(FiniteSpace::discrete(2), "d2");
        let u0 = GdeltaCover::from_opens(&[ps(&[0]), ps(&[1])]).unwrap();
        let u1 = GdeltaCover::from_opens(&[ps(&[0]), ps(&[0, 1])]).unwrap();
        let sel = alster_diagonal_selection(&model, &[u0, u1], 2).unwrap();
        assert_eq!(sel.picks, vec![ps(&[0]), ps(&[0, 1])]);
        assert_eq!(sel.choices, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn whole_space_cover() {
        let model = SpaceModel::new(FiniteSpace::discrete(2), "d2");
        let u = GdeltaCover::from_opens(&[ps(&[0, 1])]).unwrap();
        let sel = alster_diagonal_selection(&model, &[u], 1).unwrap();
        assert_eq!(sel.picks, vec![ps(&[0, 1])]);
    }

    #[test]
    fn non_alster_input_is_rejected() {
        let model = SpaceModel::new(FiniteSpace::discrete(2), "d2")
            .with_compact_pool(vec![ps(&[0]), ps(&[1]), ps(&[0, 1])])
            .unwrap();
        let u = GdeltaCover::from_opens(&[ps(&[0]), ps(&[1])]).unwrap();
        assert!(matches!(
            alster_diagonal_selection(&model, &[u], 2),
            Err(Error::NotAlster(_))
        ));
    }

    #[test]
    fn too_few_rounds_is_diagnosed() {
        let model = SpaceModel::new(FiniteSpace::discrete(2), "d2");
        let u = GdeltaCover::from_opens(&[ps(&[0]), ps(&[1])]).unwrap();
        let err = alster_diagonal_selection(&model, &[u], 1).unwrap_err();
        assert!(err.to_string().contains("uncovered"));
    }
}
