//! Finite commutative rings `Z_{n1} ⊕ … ⊕ Z_{nr}` with coordinate-wise
//! addition and multiplication.
//!
//! Elements are enumerated lexicographically over their residue tuples, the
//! last coordinate varying fastest. Index 0 is therefore always the zero
//! element. Search code works on these indices through [`RingTables`];
//! the residue-level [`RingElem`] API is what certificates and the CLI see.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm};

/// Largest cardinality for which [`RingTables`] materializes full
/// addition and multiplication tables.
pub const MAX_TABLE_CARDINALITY: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct RingSpec {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    cardinality: usize,
    exponent: u64,
}

#[derive(Serialize, Deserialize)]
struct RingRepr {
    moduli: Vec<u64>,
}

impl TryFrom<RingRepr> for RingSpec {
    type Error = Error;

    fn try_from(r: RingRepr) -> Result<Self> {
        RingSpec::new(&r.moduli)
    }
}

impl From<RingSpec> for RingRepr {
    fn from(r: RingSpec) -> Self {
        RingRepr { moduli: r.moduli }
    }
}

/// An element as a tuple of reduced residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem {
    residues: Vec<u64>,
}

impl RingElem {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl std::fmt::Display for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let [r] = self.residues.as_slice() {
            return write!(f, "{r}");
        }
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl RingSpec {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyRing);
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidModulus(bad));
        }
        let overflow = || Error::CardinalityOverflow(moduli.to_vec());
        let mut cardinality: usize = 1;
        for &n in moduli {
            let n = usize::try_from(n).map_err(|_| overflow())?;
            cardinality = cardinality.checked_mul(n).ok_or_else(overflow)?;
        }
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len() - 1).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| lcm(acc, n));
        Ok(RingSpec {
            moduli: moduli.to_vec(),
            strides,
            cardinality,
            exponent,
        })
    }

    /// `Z_k`.
    pub fn cyclic(k: u64) -> Result<Self> {
        Self::new(&[k])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// lcm of the moduli; the additive exponent.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            residues: vec![0; self.rank()],
        }
    }

    pub fn one(&self) -> RingElem {
        RingElem {
            residues: vec![1; self.rank()],
        }
    }

    /// Builds an element from already-reduced residues.
    pub fn element(&self, residues: &[u64]) -> Result<RingElem> {
        self.check_arity(residues.len())?;
        for (&r, &n) in residues.iter().zip(&self.moduli) {
            if r >= n {
                return Err(Error::UnreducedResidue {
                    residue: r,
                    modulus: n,
                });
            }
        }
        Ok(RingElem {
            residues: residues.to_vec(),
        })
    }

    /// Builds an element by reducing arbitrary integers coordinate-wise.
    pub fn element_reduced(&self, values: &[i64]) -> Result<RingElem> {
        self.check_arity(values.len())?;
        let residues = values
            .iter()
            .zip(&self.moduli)
            .map(|(&v, &n)| v.rem_euclid(n as i64) as u64)
            .collect();
        Ok(RingElem { residues })
    }

    pub fn index_of(&self, e: &RingElem) -> Result<usize> {
        self.check(e)?;
        Ok(e.residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r as usize * s)
            .sum())
    }

    pub fn element_at(&self, index: usize) -> Result<RingElem> {
        if index >= self.cardinality {
            return Err(Error::IndexOutOfRange {
                index,
                cardinality: self.cardinality,
            });
        }
        let residues = self
            .strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &n)| ((index / s) as u64) % n)
            .collect();
        Ok(RingElem { residues })
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.cardinality).map(move |i| self.element_at(i).expect("index in range"))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.zip_with(a, b, |x, y, n| (x + y) % n))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.zip_with(a, b, mul_mod))
    }

    pub fn neg(&self, a: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Ok(RingElem { residues })
    }

    /// `a^e`, with `a^0` the all-ones identity.
    pub fn pow(&self, a: &RingElem, e: u64) -> Result<RingElem> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| pow_mod(x, e, n))
            .collect();
        Ok(RingElem { residues })
    }

    /// The integer multiple `c·a`.
    pub fn scale(&self, a: &RingElem, c: u64) -> Result<RingElem> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| mul_mod(x, c % n, n))
            .collect();
        Ok(RingElem { residues })
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.residues.iter().all(|&r| r == 0)
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        a.residues
            .iter()
            .zip(&self.moduli)
            .all(|(&r, &n)| gcd(r, n) == 1)
    }

    /// Elements whose every coordinate is coprime to its modulus, in
    /// enumeration order.
    pub fn units(&self) -> Vec<RingElem> {
        self.elements().filter(|e| self.is_unit(e)).collect()
    }

    fn zip_with(&self, a: &RingElem, b: &RingElem, f: impl Fn(u64, u64, u64) -> u64) -> RingElem {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| f(x, y, n))
            .collect();
        RingElem { residues }
    }

    fn check_arity(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    fn check(&self, a: &RingElem) -> Result<()> {
        self.check_arity(a.residues.len())?;
        for (&r, &n) in a.residues.iter().zip(&self.moduli) {
            if r >= n {
                return Err(Error::UnreducedResidue {
                    residue: r,
                    modulus: n,
                });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "⊕")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

/// Element index used by the table-driven arithmetic.
pub type Idx = u16;

/// Precomputed index arithmetic for small rings.
#[derive(Debug, Clone)]
pub struct RingTables {
    spec: RingSpec,
    card: usize,
    add: Vec<Idx>,
    mul: Vec<Idx>,
    /// `int_scale[c * card + g]` = `c·g` for `0 ≤ c < exponent`.
    int_scale: Vec<Idx>,
    one: Idx,
    units: Vec<Idx>,
}

impl RingTables {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        let card = spec.cardinality();
        if card > MAX_TABLE_CARDINALITY {
            return Err(Error::RingTooLarge {
                cardinality: card,
                limit: MAX_TABLE_CARDINALITY,
            });
        }
        let elems: Vec<RingElem> = spec.elements().collect();
        let idx = |e: RingElem| spec.index_of(&e).expect("element of ring") as Idx;
        let mut add = Vec::with_capacity(card * card);
        let mut mul = Vec::with_capacity(card * card);
        for a in &elems {
            for b in &elems {
                add.push(idx(spec.add(a, b)?));
                mul.push(idx(spec.mul(a, b)?));
            }
        }
        let exp = spec.exponent() as usize;
        let mut int_scale = Vec::with_capacity(exp * card);
        for c in 0..exp {
            for g in &elems {
                int_scale.push(idx(spec.scale(g, c as u64)?));
            }
        }
        let units = spec.units().into_iter().map(idx).collect();
        Ok(RingTables {
            one: idx(spec.one()),
            spec: spec.clone(),
            card,
            add,
            mul,
            int_scale,
            units,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn cardinality(&self) -> usize {
        self.card
    }

    #[inline]
    pub fn zero(&self) -> Idx {
        0
    }

    #[inline]
    pub fn one(&self) -> Idx {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Idx, b: Idx) -> Idx {
        self.add[a as usize * self.card + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Idx, b: Idx) -> Idx {
        self.mul[a as usize * self.card + b as usize]
    }

    /// Integer multiple `c·g`; `c` is reduced modulo the exponent.
    #[inline]
    pub fn scale(&self, g: Idx, c: u64) -> Idx {
        let c = (c % self.spec.exponent()) as usize;
        self.int_scale[c * self.card + g as usize]
    }

    pub fn pow(&self, g: Idx, e: u64) -> Idx {
        (0..e).fold(self.one, |acc, _| self.mul(acc, g))
    }

    pub fn units(&self) -> &[Idx] {
        &self.units
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &RingSpec, v: &[u64]) -> RingElem {
        r.element(v).unwrap()
    }

    #[test]
    fn cyclic_order() {
        let r = RingSpec::new(&[3]).unwrap();
        let elems: Vec<_> = r.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(elems, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn direct_sum_order_is_lexicographic() {
        let r = RingSpec::new(&[2, 2]).unwrap();
        let elems: Vec<_> = r.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(elems, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn cardinality_and_exponent() {
        let r = RingSpec::new(&[3, 9]).unwrap();
        assert_eq!(r.cardinality(), 27);
        assert_eq!(r.exponent(), 9);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(RingSpec::new(&[]), Err(Error::EmptyRing));
        assert_eq!(RingSpec::new(&[4, 1]), Err(Error::InvalidModulus(1)));
        assert_eq!(RingSpec::new(&[0]), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = RingSpec::cyclic(3).unwrap();
        assert_eq!(z3.mul(&el(&z3, &[2]), &el(&z3, &[2])).unwrap(), el(&z3, &[1]));

        let r = RingSpec::new(&[2, 4]).unwrap();
        assert_eq!(
            r.mul(&el(&r, &[1, 2]), &el(&r, &[1, 3])).unwrap(),
            el(&r, &[1, 2])
        );

        let z5 = RingSpec::cyclic(5).unwrap();
        assert_eq!(z5.pow(&el(&z5, &[2]), 0).unwrap(), z5.one());
        assert_eq!(z5.pow(&el(&z5, &[2]), 3).unwrap(), el(&z5, &[3]));
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let r = RingSpec::new(&[2, 4]).unwrap();
        let z3 = RingSpec::cyclic(3).unwrap();
        let a = el(&z3, &[1]);
        assert!(matches!(
            r.add(&a, &r.one()),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            r.element(&[1, 4]),
            Err(Error::UnreducedResidue { residue: 4, modulus: 4 })
        ));
    }

    #[test]
    fn units_examples() {
        let res = |m: &[u64]| -> Vec<Vec<u64>> {
            let r = RingSpec::new(m).unwrap();
            r.units().iter().map(|e| e.residues().to_vec()).collect()
        };
        assert_eq!(res(&[3]), vec![vec![1], vec![2]]);
        assert_eq!(res(&[4]), vec![vec![1], vec![3]]);
        assert_eq!(res(&[2, 2]), vec![vec![1, 1]]);
    }

    #[test]
    fn unit_count_is_euler_phi() {
        for k in 2..=100u64 {
            let r = RingSpec::cyclic(k).unwrap();
            let phi = (1..=k).filter(|&a| gcd(a, k) == 1).count();
            assert_eq!(r.units().len(), phi, "k = {k}");
        }
    }

    #[test]
    fn index_round_trip() {
        for moduli in [&[7][..], &[2, 3], &[3, 9], &[2, 2, 4]] {
            let r = RingSpec::new(moduli).unwrap();
            for i in 0..r.cardinality() {
                assert_eq!(r.index_of(&r.element_at(i).unwrap()).unwrap(), i);
            }
            assert!(r.element_at(r.cardinality()).is_err());
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for moduli in [&[2][..], &[3], &[4], &[6], &[2, 2], &[2, 4], &[3, 3], &[2, 2, 2], &[16]] {
            let r = RingSpec::new(moduli).unwrap();
            let elems: Vec<_> = r.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(r.add(a, b).unwrap(), r.add(b, a).unwrap());
                    assert_eq!(r.mul(a, b).unwrap(), r.mul(b, a).unwrap());
                    for c in &elems {
                        let ab_c = r.mul(&r.mul(a, b).unwrap(), c).unwrap();
                        let a_bc = r.mul(a, &r.mul(b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs = r.mul(a, &r.add(b, c).unwrap()).unwrap();
                        let rhs = r.add(&r.mul(a, b).unwrap(), &r.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        let s1 = r.add(&r.add(a, b).unwrap(), c).unwrap();
                        let s2 = r.add(a, &r.add(b, c).unwrap()).unwrap();
                        assert_eq!(s1, s2);
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_residue_arithmetic() {
        let r = RingSpec::new(&[2, 6]).unwrap();
        let t = RingTables::new(&r).unwrap();
        for i in 0..r.cardinality() {
            let a = r.element_at(i).unwrap();
            for j in 0..r.cardinality() {
                let b = r.element_at(j).unwrap();
                let sum = r.index_of(&r.add(&a, &b).unwrap()).unwrap();
                let prod = r.index_of(&r.mul(&a, &b).unwrap()).unwrap();
                assert_eq!(t.add(i as Idx, j as Idx) as usize, sum);
                assert_eq!(t.mul(i as Idx, j as Idx) as usize, prod);
            }
            for c in 0..20 {
                let s = r.index_of(&r.scale(&a, c).unwrap()).unwrap();
                assert_eq!(t.scale(i as Idx, c) as usize, s);
            }
        }
        assert_eq!(t.one() as usize, r.index_of(&r.one()).unwrap());
        assert_eq!(t.zero(), 0);
    }

    #[test]
    fn serde_shape() {
        let r = RingSpec::new(&[2, 4]).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"moduli":[2,4]}"#);
        let back: RingSpec = serde_json::from_str(r#"{"moduli":[2,4]}"#).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RingSpec>(r#"{"moduli":[1]}"#).is_err());
        let e = r.element(&[1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), "[1,3]");
    }
}
