//! One's play against the Cantor space in the Rothberger game.
//!
//! In inning `n` One offers the two half-cylinders fixing coordinate `n`.
//! Whatever Two picks, the points with the opposite value at every chosen
//! coordinate stay uncovered, and they form a single cylinder.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    constraints: BTreeMap<usize, u8>,
}

impl Cylinder {
    pub fn whole() -> Self {
        Cylinder::default()
    }

    pub fn constraints(&self) -> &BTreeMap<usize, u8> {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Intersects with `{x : x(coord) = bit}`; `None` if that is empty.
    pub fn restrict(&self, coord: usize, bit: u8) -> Option<Cylinder> {
        match self.constraints.get(&coord) {
            Some(&b) if b != bit => None,
            _ => {
                let mut c = self.clone();
                c.constraints.insert(coord, bit);
                Some(c)
            }
        }
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        self.constraints
            .iter()
            .all(|(&i, &b)| x.get(i).copied() == Some(b))
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, b)) in self.constraints.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}↦{b}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UncoveredRegion {
    Cylinder(Cylinder),
    Empty,
}

impl UncoveredRegion {
    pub fn is_empty(&self) -> bool {
        matches!(self, UncoveredRegion::Empty)
    }
}

/// Plays `depth` innings; `two(n, region)` is Two's half (0 or 1) at
/// inning `n`. Returns the region nobody has covered.
pub fn cantor_witness<F>(depth: usize, mut two: F) -> UncoveredRegion
where
    F: FnMut(usize, &Cylinder) -> u8,
{
    assert!(depth >= 1, "depth must be at least 1");
    let mut region = Cylinder::whole();
    for n in 0..depth {
        let pick = two(n, &region) & 1;
        match region.restrict(n, 1 - pick) {
            Some(r) => region = r,
            None => return UncoveredRegion::Empty,
        }
    }
    UncoveredRegion::Cylinder(region)
}

/// Two's choices read from the bits of `seq`, coordinate `n` from bit `n`.
pub fn bits_strategy(seq: u64) -> impl FnMut(usize, &Cylinder) -> u8 {
    move |n, _| ((seq >> n) & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_leave_the_ones_cylinder() {
        let r = cantor_witness(3, |_, _| 0);
        let UncoveredRegion::Cylinder(c) = r else { panic!() };
        assert_eq!(c.constraints().iter().map(|(&i, &b)| (i, b)).collect::<Vec<_>>(), vec![(0, 1), (1, 1), (2, 1)]);
        assert_eq!(c.to_string(), "{0↦1, 1↦1, 2↦1}");
    }

    #[test]
    fn every_line_to_depth_ten_leaves_a_cylinder() {
        for seq in 0u64..1024 {
            match cantor_witness(10, bits_strategy(seq)) {
                UncoveredRegion::Cylinder(c) => {
                    assert_eq!(c.len(), 10);
                    let witness: Vec<u8> = (0..10).map(|n| 1 - ((seq >> n) & 1) as u8).collect();
                    assert!(c.contains(&witness));
                }
                UncoveredRegion::Empty => panic!("covered at {seq}"),
            }
        }
    }
}
