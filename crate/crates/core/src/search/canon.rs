use crate::ring::{Idx, RingTables};

/// Canonical forms of multiplicity vectors under scaling by ring units.
#[derive(Debug, Clone)]
pub(crate) struct Canonicalizer {
    card: usize,
    /// `perms[u][g]` = index of `u·g`, one row per non-identity unit.
    perms: Vec<Vec<Idx>>,
}

impl Canonicalizer {
    pub(crate) fn new(tables: &RingTables, use_orbits: bool) -> Self {
        let card = tables.cardinality();
        let perms = if use_orbits {
            tables
                .units()
                .iter()
                .filter(|&&u| u != tables.one())
                .map(|&u| (0..card).map(|g| tables.mul(u, g as Idx)).collect())
                .collect()
        } else {
            Vec::new()
        };
        Canonicalizer { card, perms }
    }

    /// Writes the lexicographically smallest image of `v` into `out`.
    pub(crate) fn canonicalize_into(&self, v: &[u8], out: &mut Vec<u8>, scratch: &mut Vec<u8>) {
        out.clear();
        out.extend_from_slice(v);
        scratch.resize(self.card, 0);
        for perm in &self.perms {
            for (g, &c) in v.iter().enumerate() {
                scratch[perm[g] as usize] = c;
            }
            if scratch.as_slice() < out.as_slice() {
                out.copy_from_slice(scratch);
            }
        }
    }

    pub(crate) fn canonical(&self, v: &[u8]) -> Box<[u8]> {
        let mut out = Vec::with_capacity(self.card);
        let mut scratch = Vec::with_capacity(self.card);
        self.canonicalize_into(v, &mut out, &mut scratch);
        out.into_boxed_slice()
    }
}
