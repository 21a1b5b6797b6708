//! Sequences over a ring in multiplicity-vector form.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// A sequence over a ring with order disregarded: `mult[i]` counts the
/// copies of the element with enumeration index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultisetSeq {
    ring: RingSpec,
    mult: Vec<u32>,
}

impl MultisetSeq {
    pub fn new(ring: &RingSpec, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != ring.cardinality() {
            return Err(Error::ArityMismatch {
                expected: ring.cardinality(),
                found: mult.len(),
            });
        }
        Ok(MultisetSeq {
            ring: ring.clone(),
            mult,
        })
    }

    pub fn empty(ring: &RingSpec) -> Self {
        MultisetSeq {
            ring: ring.clone(),
            mult: vec![0; ring.cardinality()],
        }
    }

    /// Collects an explicit sequence.
    pub fn from_elements(ring: &RingSpec, seq: &[RingElem]) -> Result<Self> {
        let mut out = Self::empty(ring);
        for g in seq {
            out.mult[ring.index_of(g)?] += 1;
        }
        Ok(out)
    }

    /// Builds from `(element index, count)` pairs; repeated indices add up.
    pub fn from_counts(ring: &RingSpec, counts: &[(usize, u32)]) -> Result<Self> {
        let mut out = Self::empty(ring);
        for &(i, c) in counts {
            let slot = out.mult.get_mut(i).ok_or(Error::IndexOutOfRange {
                index: i,
                cardinality: ring.cardinality(),
            })?;
            *slot += c;
        }
        Ok(out)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn count(&self, index: usize) -> u32 {
        self.mult.get(index).copied().unwrap_or(0)
    }

    pub fn length(&self) -> u64 {
        self.mult.iter().map(|&c| c as u64).sum()
    }

    /// Nonzero multiplicities keyed by element index.
    pub fn multiplicities(&self) -> BTreeMap<usize, u32> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect()
    }

    /// The explicit sequence, elements in enumeration order.
    pub fn to_sequence(&self) -> Vec<RingElem> {
        let mut seq = Vec::with_capacity(self.length() as usize);
        for (i, &c) in self.mult.iter().enumerate() {
            if c > 0 {
                let g = self.ring.element_at(i).expect("index in range");
                seq.extend(std::iter::repeat_n(g, c as usize));
            }
        }
        seq
    }

    /// `c·M`: every element multiplied by `c`.
    pub fn scaled(&self, c: &RingElem) -> Result<Self> {
        let mut out = Self::empty(&self.ring);
        for (i, &n) in self.mult.iter().enumerate() {
            if n > 0 {
                let g = self.ring.element_at(i)?;
                let j = self.ring.index_of(&self.ring.mul(c, &g)?)?;
                out.mult[j] += n;
            }
        }
        Ok(out)
    }

    /// Lexicographically smallest multiplicity vector over the orbit under
    /// scaling by units.
    pub fn canonical(&self) -> Self {
        self.ring
            .units()
            .iter()
            .map(|u| self.scaled(u).expect("unit of the same ring"))
            .min_by(|a, b| a.mult.cmp(&b.mult))
            .expect("the identity is always a unit")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().mult == self.mult
    }

    /// `self ⊆ other` as multisets.
    pub fn is_submultiset_of(&self, other: &MultisetSeq) -> bool {
        self.ring == other.ring && self.mult.iter().zip(&other.mult).all(|(a, b)| a <= b)
    }

    /// Adds `count` copies of the element at `index`.
    pub fn with_added(&self, index: usize, count: u32) -> Result<Self> {
        let mut out = self.clone();
        let slot = out.mult.get_mut(index).ok_or(Error::IndexOutOfRange {
            index,
            cardinality: self.ring.cardinality(),
        })?;
        *slot += count;
        Ok(out)
    }
}

impl fmt::Display for MultisetSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, &c) in self.mult.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let g = self.ring.element_at(i).expect("index in range");
            write!(f, "{g}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_and_display() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let m = MultisetSeq::new(&z3, vec![1, 2, 2]).unwrap();
        assert_eq!(m.length(), 5);
        assert_eq!(m.to_string(), "{0:1, 1:2, 2:2}");
        assert_eq!(m.to_sequence().len(), 5);
        assert!(MultisetSeq::new(&z3, vec![1, 2]).is_err());
    }

    #[test]
    fn canonical_form_picks_smallest_vector() {
        let z8 = RingSpec::cyclic(8).unwrap();
        let m = MultisetSeq::from_counts(&z8, &[(0, 14), (1, 15)]).unwrap();
        let c = m.canonical();
        assert_eq!(c.mult(), &[14, 0, 0, 0, 0, 0, 0, 15]);
        assert!(c.is_canonical());
        assert!(!m.is_canonical());
    }

    #[test]
    fn pair_ring_display() {
        let r = RingSpec::new(&[2, 2]).unwrap();
        let m = MultisetSeq::from_counts(&r, &[(3, 2), (1, 1)]).unwrap();
        assert_eq!(m.to_string(), "{(0,1):1, (1,1):2}");
    }
}
