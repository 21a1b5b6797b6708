//! Deciding whether a multiset has a sub-multiset on which `e_m` vanishes.
//!
//! A sub-multiset chooses `j_g ≤ mult(g)` copies of each element; its
//! `e_0..e_m` are the coefficients of `Π_g (1 + g·x)^{j_g}` truncated at
//! degree `m`. Element types are folded in one at a time. Partial choices
//! that reach the same `(length, e_1..e_m)` state behave identically from
//! then on, so states are deduplicated; when the state space is too large
//! to index, a plain odometer over the choice vectors is used instead.
//!
//! For the EGZ target the zero element only pads the length (its factor is
//! `1`), so zeros are not enumerated: any state of length at least
//! `t − mult(0)` and at most `t` can be completed with zeros.

use rustc_hash::FxHashSet;

use crate::ring::{Idx, RingTables};

/// Dedup through a stamp array up to this many keys.
const STAMP_LIMIT: u64 = 1 << 21;

/// What a "zero" sub-multiset has to look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Length exactly `t`.
    Egz { t: usize },
    /// Length at least `m`.
    Davenport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// Deduplicated state search when the key space allows it.
    #[default]
    Auto,
    /// Always the odometer; no deduplication.
    Odometer,
}

#[derive(Debug, Clone, Copy)]
enum Dedup {
    Stamps,
    Hashed,
    None,
}

#[derive(Debug, Clone)]
pub(crate) struct Evaluator {
    tables: RingTables,
    m: usize,
    max_count: usize,
    /// `factors[((g * (max_count + 1)) + j) * (m + 1) + i]` = `C(j, i)·g^i`.
    factors: Vec<Idx>,
    mode: EvalMode,
}

/// Per-worker buffers.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    coeffs: Vec<Idx>,
    lens: Vec<u16>,
    parent: Vec<(u32, u16, u8)>,
    stamps: Vec<u32>,
    generation: u32,
    hashed: FxHashSet<u64>,
    buf: Vec<Idx>,
    types: Vec<(Idx, usize)>,
    rem: Vec<usize>,
    depth: Vec<Vec<Idx>>,
    chosen: Vec<u8>,
}

impl Scratch {
    pub(crate) fn new() -> Self {
        Self::default()
    }
}

struct Frame {
    need_min: usize,
    len_cap: usize,
    davenport: bool,
}

impl Evaluator {
    /// `max_count` bounds every multiplicity the evaluator will see.
    pub(crate) fn new(tables: &RingTables, m: usize, max_count: usize, mode: EvalMode) -> Self {
        assert!(m >= 1, "degree must be positive");
        let card = tables.cardinality();
        let exp = tables.spec().exponent();
        // Pascal's triangle modulo the exponent; row j holds C(j, 0..=m).
        let mut pascal = vec![0u64; (max_count + 1) * (m + 1)];
        for j in 0..=max_count {
            pascal[j * (m + 1)] = 1 % exp;
            for i in 1..=m.min(j) {
                let above = if i < j { pascal[(j - 1) * (m + 1) + i] } else { 0 };
                pascal[j * (m + 1) + i] = (pascal[(j - 1) * (m + 1) + i - 1] + above) % exp;
            }
        }
        let mut factors = vec![0 as Idx; card * (max_count + 1) * (m + 1)];
        for g in 0..card {
            let powers: Vec<Idx> = (0..=m).map(|i| tables.pow(g as Idx, i as u64)).collect();
            for j in 0..=max_count {
                for i in 0..=m {
                    let c = pascal[j * (m + 1) + i];
                    factors[(g * (max_count + 1) + j) * (m + 1) + i] = tables.scale(powers[i], c);
                }
            }
        }
        Evaluator {
            tables: tables.clone(),
            m,
            max_count,
            factors,
            mode,
        }
    }

    pub(crate) fn degree(&self) -> usize {
        self.m
    }

    #[inline]
    fn factor(&self, g: Idx, j: usize) -> &[Idx] {
        let start = (g as usize * (self.max_count + 1) + j) * (self.m + 1);
        &self.factors[start..start + self.m + 1]
    }

    fn dedup_for(&self, target: Target) -> (Dedup, u64) {
        if self.mode == EvalMode::Odometer {
            return (Dedup::None, 0);
        }
        let len_states = match target {
            Target::Egz { t } => t as u64 + 1,
            Target::Davenport => self.m as u64 + 1,
        };
        let space = (self.tables.cardinality() as u64)
            .checked_pow(self.m as u32)
            .and_then(|p| p.checked_mul(len_states));
        match space {
            Some(s) if s <= STAMP_LIMIT => (Dedup::Stamps, s),
            Some(s) => (Dedup::Hashed, s),
            None => (Dedup::None, 0),
        }
    }

    /// Returns the multiplicity vector of a sub-multiset hitting the target
    /// with `e_m = 0`, or `None` if `mult` is a counterexample.
    pub(crate) fn find_zero(&self, mult: &[u8], target: Target, s: &mut Scratch) -> Option<Vec<u32>> {
        let m = self.m;
        let total: usize = mult.iter().map(|&c| c as usize).sum();
        let frame = match target {
            Target::Egz { t } => {
                if total < t {
                    return None;
                }
                Frame {
                    need_min: t.saturating_sub(mult[0] as usize),
                    len_cap: t,
                    davenport: false,
                }
            }
            Target::Davenport => {
                if total < m {
                    return None;
                }
                if mult[0] > 0 {
                    return Some(davenport_zero_witness(mult, m));
                }
                Frame {
                    need_min: m,
                    len_cap: usize::MAX,
                    davenport: true,
                }
            }
        };
        assert!(
            mult.iter().all(|&c| c as usize <= self.max_count),
            "multiplicity exceeds evaluator bound"
        );

        s.types.clear();
        for (g, &c) in mult.iter().enumerate().skip(1) {
            if c > 0 {
                s.types.push((g as Idx, (c as usize).min(frame.len_cap)));
            }
        }
        s.rem.clear();
        s.rem.resize(s.types.len() + 1, 0);
        for pos in (0..s.types.len()).rev() {
            s.rem[pos] = s.rem[pos + 1] + s.types[pos].1;
        }
        if frame.need_min > s.rem[0] {
            // Cannot even reach the minimum length without more zeros.
            return None;
        }

        let chosen = match self.dedup_for(target) {
            (Dedup::None, _) => self.odometer(&frame, s),
            (dedup, space) => self.deduplicated(&frame, dedup, space, s),
        }?;
        let mut sub = vec![0u32; mult.len()];
        let mut len = 0usize;
        for (pos, &j) in chosen.iter().enumerate() {
            if j > 0 {
                sub[s.types[pos].0 as usize] = j as u32;
                len += j as usize;
            }
        }
        if let Target::Egz { t } = target {
            sub[0] = (t - len) as u32;
        }
        Some(sub)
    }

    #[inline]
    fn multiply_into(&self, state: &[Idx], f: &[Idx], out: &mut Vec<Idx>) {
        // state holds e_1..e_m (e_0 = 1); f holds f_0..f_m with f_0 = 1.
        let t = &self.tables;
        out.clear();
        for k in 1..=self.m {
            let mut acc = t.add(state[k - 1], f[k]);
            for i in 1..k {
                acc = t.add(acc, t.mul(state[i - 1], f[k - i]));
            }
            out.push(acc);
        }
    }

    fn key(&self, frame: &Frame, len: usize, coeffs: &[Idx]) -> u64 {
        let card = self.tables.cardinality() as u64;
        let len_key = if frame.davenport { len.min(self.m) } else { len } as u64;
        coeffs.iter().fold(len_key, |k, &e| k * card + e as u64)
    }

    #[inline]
    fn is_hit(&self, frame: &Frame, len: usize, coeffs: &[Idx]) -> bool {
        len >= frame.need_min && len <= frame.len_cap && coeffs[self.m - 1] == 0
    }

    /// Breadth-first over element types with deduplicated states. Returns
    /// the per-type choice vector of a hit.
    fn deduplicated(&self, frame: &Frame, dedup: Dedup, space: u64, s: &mut Scratch) -> Option<Vec<u8>> {
        let m = self.m;
        s.coeffs.clear();
        s.lens.clear();
        s.parent.clear();
        let mut insert: Box<dyn FnMut(u64) -> bool + '_> = match dedup {
            Dedup::Stamps => {
                if s.stamps.len() < space as usize {
                    s.stamps.resize(space as usize, 0);
                }
                s.generation = s.generation.wrapping_add(1);
                if s.generation == 0 {
                    s.stamps.iter_mut().for_each(|x| *x = 0);
                    s.generation = 1;
                }
                let gen = s.generation;
                let stamps = &mut s.stamps;
                Box::new(move |k| {
                    let slot = &mut stamps[k as usize];
                    if *slot == gen {
                        false
                    } else {
                        *slot = gen;
                        true
                    }
                })
            }
            Dedup::Hashed => {
                s.hashed.clear();
                let set = &mut s.hashed;
                Box::new(move |k| set.insert(k))
            }
            Dedup::None => unreachable!(),
        };

        let root = vec![0 as Idx; m];
        if self.is_hit(frame, 0, &root) {
            return Some(vec![0; s.types.len()]);
        }
        insert(self.key(frame, 0, &root));
        s.coeffs.extend_from_slice(&root);
        s.lens.push(0);
        s.parent.push((u32::MAX, 0, 0));

        let mut state = vec![0 as Idx; m];
        for pos in 0..s.types.len() {
            let (g, c) = s.types[pos];
            let rem_after = s.rem[pos + 1];
            let existing = s.lens.len();
            for si in 0..existing {
                let len = s.lens[si] as usize;
                let jmax = c.min(frame.len_cap.saturating_sub(len));
                if len + jmax + rem_after < frame.need_min {
                    continue;
                }
                state.copy_from_slice(&s.coeffs[si * m..(si + 1) * m]);
                for j in 1..=jmax {
                    let nl = len + j;
                    if nl + rem_after < frame.need_min {
                        continue;
                    }
                    self.multiply_into(&state, self.factor(g, j), &mut s.buf);
                    if !insert(self.key(frame, nl, &s.buf)) {
                        continue;
                    }
                    s.coeffs.extend_from_slice(&s.buf);
                    s.lens.push(nl as u16);
                    s.parent.push((si as u32, pos as u16, j as u8));
                    if self.is_hit(frame, nl, &s.buf) {
                        let mut chosen = vec![0u8; s.types.len()];
                        let mut cur = s.lens.len() - 1;
                        while s.parent[cur].0 != u32::MAX {
                            let (p, tpos, j) = s.parent[cur];
                            chosen[tpos as usize] = j;
                            cur = p as usize;
                        }
                        return Some(chosen);
                    }
                }
            }
        }
        None
    }

    /// Depth-first odometer over choice vectors with the prefix product
    /// cached per depth.
    fn odometer(&self, frame: &Frame, s: &mut Scratch) -> Option<Vec<u8>> {
        let n = s.types.len();
        s.depth.resize_with(n + 1, Vec::new);
        s.depth[0].clear();
        s.depth[0].resize(self.m, 0);
        s.chosen.clear();
        s.chosen.resize(n, 0);
        if self.is_hit(frame, 0, &s.depth[0]) {
            return Some(s.chosen.clone());
        }
        if self.dfs(frame, 0, 0, s) {
            Some(s.chosen.clone())
        } else {
            None
        }
    }

    fn dfs(&self, frame: &Frame, pos: usize, len: usize, s: &mut Scratch) -> bool {
        if pos == s.types.len() || len + s.rem[pos] < frame.need_min {
            return false;
        }
        s.chosen[pos] = 0;
        let mut same = std::mem::take(&mut s.depth[pos + 1]);
        same.clone_from(&s.depth[pos]);
        s.depth[pos + 1] = same;
        if self.dfs(frame, pos + 1, len, s) {
            return true;
        }
        let (g, c) = s.types[pos];
        let jmax = c.min(frame.len_cap.saturating_sub(len));
        for j in 1..=jmax {
            let nl = len + j;
            let mut next = std::mem::take(&mut s.depth[pos + 1]);
            self.multiply_into(&s.depth[pos], self.factor(g, j), &mut next);
            let hit = self.is_hit(frame, nl, &next);
            s.depth[pos + 1] = next;
            s.chosen[pos] = j as u8;
            if hit {
                for later in &mut s.chosen[pos + 1..] {
                    *later = 0;
                }
                return true;
            }
            if self.dfs(frame, pos + 1, nl, s) {
                return true;
            }
        }
        s.chosen[pos] = 0;
        false
    }
}

/// One zero plus the next `m − 1` elements in index order.
fn davenport_zero_witness(mult: &[u8], m: usize) -> Vec<u32> {
    let mut sub = vec![0u32; mult.len()];
    sub[0] = 1;
    let mut need = m - 1;
    for (g, &c) in mult.iter().enumerate() {
        if need == 0 {
            break;
        }
        let avail = c as usize - usize::from(g == 0);
        let take = avail.min(need);
        sub[g] += take as u32;
        need -= take;
    }
    sub
}
