//! Boolean zero counting for systems of congruences.
//!
//! For integer polynomials `P_1..P_r` in `n` variables, a prime `p` and
//! exponents `v_j`, if `Σ (p^{v_j} − 1)·deg P_j < n` then the number of
//! `x ∈ {0,1}^n` with `P_j(x) ≡ 0 (mod p^{v_j})` for all `j` is never exactly
//! one. [`brink_boolean_check`] counts those points by enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

pub const MAX_BRINK_VARS: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: i64,
    /// Variable indices; repeats raise the degree but not the value on `{0,1}`.
    pub vars: Vec<u32>,
}

/// `poly ≡ 0 (mod p^v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub poly: Vec<Monomial>,
    pub v: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrinkInstance {
    pub n: u32,
    pub p: u64,
    pub system: Vec<Congruence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrinkReport {
    /// Solutions found; capped at 2 when the check stopped early.
    pub solutions: u64,
    /// Whether every point of the cube was visited.
    pub complete: bool,
    pub degree_condition: bool,
}

impl BrinkReport {
    pub fn is_not_one(&self) -> bool {
        self.solutions != 1
    }
}

fn degree(poly: &[Monomial]) -> u64 {
    let mut merged: Vec<(Vec<u32>, i64)> = Vec::new();
    for mono in poly {
        let mut vars = mono.vars.clone();
        vars.sort_unstable();
        match merged.iter_mut().find(|(v, _)| *v == vars) {
            Some((_, c)) => *c += mono.coeff,
            None => merged.push((vars, mono.coeff)),
        }
    }
    merged
        .iter()
        .filter(|(_, c)| *c != 0)
        .map(|(v, _)| v.len() as u64)
        .max()
        .unwrap_or(0)
}

impl BrinkInstance {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.n > MAX_BRINK_VARS {
            return Err(Error::CapExceeded {
                what: "boolean variables",
                cap: MAX_BRINK_VARS as u64,
            });
        }
        for c in &self.system {
            if c.v == 0 || self.p.checked_pow(c.v).is_none_or(|q| q > i64::MAX as u64) {
                return Err(Error::InvalidArgument(format!("unsupported modulus exponent {}", c.v)));
            }
            for mono in &c.poly {
                if let Some(&x) = mono.vars.iter().find(|&&x| x >= self.n) {
                    return Err(Error::IndexOutOfRange {
                        index: x as usize,
                        cardinality: self.n as usize,
                    });
                }
            }
        }
        Ok(())
    }

    /// `Σ (p^{v_j} − 1)·deg P_j`, saturating.
    pub fn degree_sum(&self) -> u64 {
        self.system
            .iter()
            .map(|c| {
                let q = self.p.saturating_pow(c.v);
                (q - 1).saturating_mul(degree(&c.poly))
            })
            .fold(0u64, u64::saturating_add)
    }

    pub fn degree_condition(&self) -> bool {
        self.degree_sum() < self.n as u64
    }
}

struct Compiled {
    modulus: i128,
    terms: Vec<(u32, i128)>,
}

/// Counts boolean solutions; with `stop_at_two` the count stops at 2.
pub fn brink_boolean_check(inst: &BrinkInstance, stop_at_two: bool) -> Result<BrinkReport> {
    inst.validate()?;
    let compiled: Vec<Compiled> = inst
        .system
        .iter()
        .map(|c| Compiled {
            modulus: inst.p.pow(c.v) as i128,
            terms: c
                .poly
                .iter()
                .map(|m| (m.vars.iter().fold(0u32, |acc, &x| acc | (1 << x)), m.coeff as i128))
                .collect(),
        })
        .collect();
    let mut solutions = 0u64;
    let mut complete = true;
    for x in 0u64..(1u64 << inst.n) {
        let x = x as u32;
        let ok = compiled.iter().all(|c| {
            let s: i128 = c
                .terms
                .iter()
                .filter(|(mask, _)| x & mask == *mask)
                .map(|(_, coeff)| coeff)
                .sum();
            s.rem_euclid(c.modulus) == 0
        });
        if ok {
            solutions += 1;
            if stop_at_two && solutions == 2 {
                complete = x as u64 + 1 == 1u64 << inst.n;
                break;
            }
        }
    }
    Ok(BrinkReport {
        solutions,
        complete,
        degree_condition: inst.degree_condition(),
    })
}

/// The system whose nontrivial boolean solutions are length-`p^{v_len}`
/// sub-sequences of `seq` with `e_2 ≡ 0 (mod p^{v_e2})`:
/// `Σ_{i<j} a_i a_j x_i x_j ≡ 0` and `Σ x_i ≡ 0 (mod p^{v_len})`.
pub fn degree_two_egz_instance(p: u64, seq: &[i64], v_e2: u32, v_len: u32) -> BrinkInstance {
    let n = seq.len() as u32;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(Monomial {
                coeff: seq[i as usize] * seq[j as usize],
                vars: vec![i, j],
            });
        }
    }
    let linear = (0..n).map(|i| Monomial { coeff: 1, vars: vec![i] }).collect();
    BrinkInstance {
        n,
        p,
        system: vec![
            Congruence { poly: pairs, v: v_e2 },
            Congruence { poly: linear, v: v_len },
        ],
    }
}
