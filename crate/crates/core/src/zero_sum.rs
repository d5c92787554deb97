//! Zero-sum sequences over `Z_d x Z_d` and the factorization of
//! translation-invariant monomials.
//!
//! In the spectral basis `z_{a,b}` a translation `(p, q)` scales each
//! coordinate by `w^{p a + q b}`, so the monomial `prod z_{a,b}^{alpha_{a,b}}`
//! is invariant exactly when the multiset holding `alpha_{a,b}` copies of
//! `(a, b)` sums to zero. Every sequence of length at least `D(Z_d^2) = 2d - 1`
//! has a nonempty zero-sum subsequence, so invariant monomials factor into
//! invariant monomials of degree at most `2d - 1`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A multiset of elements of `Z_d x Z_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSequence {
    d: usize,
    /// Multiplicity of `(a, b)` at index `a * d + b`.
    alpha: Vec<usize>,
}

impl GroupSequence {
    pub fn empty(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("d", "modulus must be positive"));
        }
        Ok(GroupSequence {
            d,
            alpha: vec![0; d * d],
        })
    }

    /// Elements are reduced mod `d`.
    pub fn from_elements(d: usize, elements: &[(i64, i64)]) -> Result<Self> {
        let mut s = Self::empty(d)?;
        for &(a, b) in elements {
            s.push((a.rem_euclid(d as i64) as usize, b.rem_euclid(d as i64) as usize), 1);
        }
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.alpha[a * self.d + b]
    }

    pub fn push(&mut self, (a, b): (usize, usize), count: usize) {
        self.alpha[(a % self.d) * self.d + b % self.d] += count;
    }

    pub fn degree(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// Elements with repetition, sorted.
    pub fn elements(&self) -> Vec<(usize, usize)> {
        let d = self.d;
        self.alpha
            .iter()
            .enumerate()
            .flat_map(|(idx, &c)| std::iter::repeat_n((idx / d, idx % d), c))
            .collect()
    }

    /// Componentwise sum mod `d`.
    pub fn sum(&self) -> (usize, usize) {
        let d = self.d;
        let (mut sa, mut sb) = (0, 0);
        for (idx, &c) in self.alpha.iter().enumerate() {
            sa = (sa + (idx / d) * c) % d;
            sb = (sb + (idx % d) * c) % d;
        }
        (sa, sb)
    }

    pub fn is_sub_multiset_of(&self, other: &GroupSequence) -> bool {
        self.d == other.d && self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
    }

    /// Multiset difference; `None` unless `other` is contained in `self`.
    pub fn minus(&self, other: &GroupSequence) -> Option<GroupSequence> {
        if !other.is_sub_multiset_of(self) {
            return None;
        }
        Some(GroupSequence {
            d: self.d,
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn plus(&self, other: &GroupSequence) -> GroupSequence {
        GroupSequence {
            d: self.d,
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
        }
    }

    /// The first `len` elements in sorted order.
    pub fn prefix(&self, len: usize) -> GroupSequence {
        let mut out = GroupSequence {
            d: self.d,
            alpha: vec![0; self.alpha.len()],
        };
        for e in self.elements().into_iter().take(len) {
            out.push(e, 1);
        }
        out
    }

    /// Exponent `t` such that translation `(p, q)` multiplies the monomial
    /// `prod z_{a,b}^{alpha_{a,b}}` by `w^t`.
    pub fn monomial_phase(&self, p: usize, q: usize) -> usize {
        let d = self.d;
        self.alpha
            .iter()
            .enumerate()
            .map(|(idx, &c)| ((p * (idx / d) + q * (idx % d)) % d) * c)
            .sum::<usize>()
            % d
    }
}

impl Serialize for GroupSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.elements().into_iter().map(|(a, b)| [a, b]).collect();
        pairs.serialize(s)
    }
}

/// Reads a JSON list of `[a, b]` pairs.
pub fn sequence_from_json(d: usize, text: &str) -> Result<GroupSequence> {
    let pairs: Vec<[i64; 2]> = serde_json::from_str(text)?;
    let elems: Vec<(i64, i64)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
    GroupSequence::from_elements(d, &elems)
}

pub fn is_zero_sum(s: &GroupSequence) -> bool {
    s.sum() == (0, 0)
}

/// Maximum `degree * d^2` accepted by the subset-sum search.
pub const DEFAULT_SEARCH_BUDGET: u128 = 50_000_000;

/// A nonempty zero-sum sub-multiset of `s`, or `None` when `s` is zero-sum free.
///
/// Subset-sum over the `d^2` group elements with parent pointers; when the
/// degree is at least `2d - 1` only the first `2d - 1` elements are searched,
/// so the witness has degree at most `2d - 1`.
pub fn find_zero_sum_subsequence(s: &GroupSequence, budget: u128) -> Result<Option<GroupSequence>> {
    let d = s.d;
    let cells = d * d;
    let limit = 2 * d - 1;
    let items: Vec<(usize, usize)> = if s.degree() >= limit {
        s.prefix(limit).elements()
    } else {
        s.elements()
    };
    let work = (items.len() as u128) * cells as u128;
    if work > budget {
        return Err(Error::budget("zero-sum subsequence search", work, budget));
    }
    const UNSEEN: usize = usize::MAX;
    // parent[g] = (item index, previous cell) for the first subset reaching g
    let mut parent: Vec<(usize, usize)> = vec![(UNSEEN, UNSEEN); cells];
    let mut reached: Vec<usize> = Vec::new();
    for (idx, &(a, b)) in items.iter().enumerate() {
        // the empty subset plus everything reached before this item
        let starts: Vec<Option<usize>> = std::iter::once(None)
            .chain(reached.iter().copied().map(Some))
            .collect();
        for start in starts {
            let (sa, sb) = start.map_or((0, 0), |c| (c / d, c % d));
            let target = ((sa + a) % d) * d + (sb + b) % d;
            if target == 0 {
                let mut out = GroupSequence {
                    d,
                    alpha: vec![0; cells],
                };
                out.push(items[idx], 1);
                let mut cur = start;
                while let Some(c) = cur {
                    let (item, prev) = parent[c];
                    out.push(items[item], 1);
                    cur = (prev != UNSEEN).then_some(prev);
                }
                return Ok(Some(out));
            }
            if parent[target].0 == UNSEEN {
                parent[target] = (idx, start.unwrap_or(UNSEEN));
                reached.push(target);
            }
        }
    }
    Ok(None)
}

/// Brute-force oracle: does any nonempty sub-multiset sum to zero?
pub fn has_zero_sum_subsequence_exhaustive(s: &GroupSequence) -> bool {
    let d = s.d;
    let support: Vec<(usize, usize, usize)> = s
        .alpha
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(idx, &c)| (idx / d, idx % d, c))
        .collect();
    let mut counts = vec![0usize; support.len()];
    loop {
        // advance multiplicity odometer
        let mut pos = 0;
        loop {
            if pos == support.len() {
                return false;
            }
            counts[pos] += 1;
            if counts[pos] <= support[pos].2 {
                break;
            }
            counts[pos] = 0;
            pos += 1;
        }
        let (sa, sb) = support
            .iter()
            .zip(&counts)
            .fold((0, 0), |(x, y), (&(a, b, _), &c)| ((x + a * c) % d, (y + b * c) % d));
        if (sa, sb) == (0, 0) {
            return true;
        }
    }
}

/// `(d - 1) (1, 0) + (d - 1) (0, 1)`, zero-sum free of length `2d - 2`.
pub fn classical_witness(d: usize) -> Result<GroupSequence> {
    let mut s = GroupSequence::empty(d)?;
    if d > 1 {
        s.push((1, 0), d - 1);
        s.push((0, 1), d - 1);
    }
    Ok(s)
}

/// Result of the exhaustive Davenport constant search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DavenportCertificate {
    pub d: usize,
    /// Least `L` forcing a nonempty zero-sum subsequence; `None` if not certified.
    pub davenport_constant: Option<usize>,
    /// Longest zero-sum-free length found (`D - 1` when complete).
    pub max_zero_sum_free_length: usize,
    pub witness: GroupSequence,
    /// Every sequence of length `<= checked_up_to_length` was examined.
    pub checked_up_to_length: usize,
    pub nodes_visited: u64,
    pub complete: bool,
}

/// Largest `d` accepted by the bitmask search (`d^2 <= 64`).
pub const MAX_EXHAUSTIVE_D: usize = 8;

/// Exhaustive search for the longest zero-sum-free sequence over `Z_d^2`.
///
/// Iterative deepening over the length; each level enumerates multisets of
/// nonzero elements in nondecreasing order, tracking the set of nonempty
/// subset sums as a bitmask and pruning as soon as zero is reachable. The
/// first element splits the search into independent parallel branches.
/// `node_budget` bounds the total search nodes; on exhaustion the
/// certificate reports the lengths fully checked so far.
pub fn davenport_constant(d: usize, node_budget: u64) -> Result<DavenportCertificate> {
    if d == 0 || d > MAX_EXHAUSTIVE_D {
        return Err(Error::invalid("d", format!("exhaustive search supports 1..={MAX_EXHAUSTIVE_D}")));
    }
    let cells = d * d;
    let nodes = AtomicU64::new(0);
    let mut best = GroupSequence::empty(d)?;
    let mut checked = 0;
    let mut len = 1;
    loop {
        let found: Option<Vec<usize>> = (1..cells)
            .into_par_iter()
            .map(|first| {
                let mut path = vec![first];
                let sums = 1u64 << first;
                search(d, len, &mut path, sums, &nodes, node_budget).map(|ok| ok.then_some(path))
            })
            .collect::<std::result::Result<Vec<_>, Exhausted>>()
            .map_or(None, |v| v.into_iter().flatten().min());
        let exhausted = nodes.load(Ordering::Relaxed) > node_budget;
        if exhausted {
            return Ok(DavenportCertificate {
                d,
                davenport_constant: None,
                max_zero_sum_free_length: best.degree(),
                witness: best,
                checked_up_to_length: checked,
                nodes_visited: nodes.load(Ordering::Relaxed),
                complete: false,
            });
        }
        match found {
            Some(path) => {
                let mut w = GroupSequence::empty(d)?;
                for c in path {
                    w.push((c / d, c % d), 1);
                }
                best = w;
                checked = len;
                len += 1;
            }
            None => {
                return Ok(DavenportCertificate {
                    d,
                    davenport_constant: Some(len),
                    max_zero_sum_free_length: best.degree(),
                    witness: best,
                    checked_up_to_length: len,
                    nodes_visited: nodes.load(Ordering::Relaxed),
                    complete: true,
                });
            }
        }
    }
}

struct Exhausted;

/// Extends `path` (nondecreasing cells) to length `target` without creating
/// a zero-sum subsequence. `sums` has bit `g` set when some nonempty
/// sub-multiset sums to cell `g`.
fn search(
    d: usize,
    target: usize,
    path: &mut Vec<usize>,
    sums: u64,
    nodes: &AtomicU64,
    budget: u64,
) -> std::result::Result<bool, Exhausted> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(Exhausted);
    }
    if path.len() == target {
        return Ok(true);
    }
    let last = *path.last().unwrap();
    for g in last..d * d {
        let shifted = shift_sums(sums, g, d) | (1u64 << g);
        let next = sums | shifted;
        if next & 1 != 0 {
            continue;
        }
        path.push(g);
        if search(d, target, path, next, nodes, budget)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// `{s + g : s in sums}` as a bitmask over cells `a * d + b`.
fn shift_sums(mut sums: u64, g: usize, d: usize) -> u64 {
    let (ga, gb) = (g / d, g % d);
    let mut out = 0u64;
    while sums != 0 {
        let s = sums.trailing_zeros() as usize;
        sums &= sums - 1;
        let t = ((s / d + ga) % d) * d + (s % d + gb) % d;
        out |= 1u64 << t;
    }
    out
}

/// Factors a zero-sum sequence into zero-sum factors of degree `<= 2d - 1`.
pub fn decompose_invariant_monomial(s: &GroupSequence) -> Result<Vec<GroupSequence>> {
    if !is_zero_sum(s) {
        return Err(Error::invalid("monomial", "exponent table is not zero-sum"));
    }
    let bound = 2 * s.d - 1;
    let mut rest = s.clone();
    let mut factors = Vec::new();
    while rest.degree() > bound {
        let window = rest.prefix(bound);
        let factor = find_zero_sum_subsequence(&window, DEFAULT_SEARCH_BUDGET)?.ok_or_else(|| {
            Error::Arithmetic(format!("window of length {bound} without zero-sum subsequence"))
        })?;
        let next = rest
            .minus(&factor)
            .ok_or_else(|| Error::Arithmetic("factor is not contained in the remainder".into()))?;
        if !is_zero_sum(&factor) || !is_zero_sum(&next) {
            return Err(Error::Arithmetic("complement of a zero-sum factor is not zero-sum".into()));
        }
        factors.push(factor);
        rest = next;
    }
    if rest.degree() > 0 || factors.is_empty() {
        factors.push(rest);
    }
    Ok(factors)
}

/// Certificate that `2d - 1` is the largest degree needed for
/// translation-invariant monomials.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDegreeCertificate {
    pub d: usize,
    pub max_degree: usize,
    /// Present when the exhaustive search ran.
    pub davenport: Option<DavenportCertificate>,
    /// A minimal zero-sum sequence of length `2d - 1`.
    pub indecomposable: GroupSequence,
    pub indecomposable_verified: bool,
}

/// `2d - 1`, certified by the Davenport search (when `d <= exhaustive_max_d`)
/// and by an explicit indecomposable invariant monomial of that degree.
pub fn max_generator_degree_translation(
    d: usize,
    exhaustive_max_d: usize,
    node_budget: u64,
) -> Result<GeneratorDegreeCertificate> {
    let witness = classical_witness(d)?;
    let (a, b) = witness.sum();
    let mut full = witness.clone();
    full.push(((d - a) % d, (d - b) % d), 1);
    // a proper zero-sum part of `full`, or its complement, avoids the added element
    let free = find_zero_sum_subsequence(&witness, DEFAULT_SEARCH_BUDGET)?.is_none();
    let verified = free && is_zero_sum(&full) && full.degree() == 2 * d - 1;
    let davenport = if d <= exhaustive_max_d {
        Some(davenport_constant(d, node_budget)?)
    } else {
        None
    };
    Ok(GeneratorDegreeCertificate {
        d,
        max_degree: 2 * d - 1,
        davenport,
        indecomposable: full,
        indecomposable_verified: verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(d: usize, e: &[(i64, i64)]) -> GroupSequence {
        GroupSequence::from_elements(d, e).unwrap()
    }

    #[test]
    fn zero_sum_examples() {
        assert!(is_zero_sum(&GroupSequence::empty(3).unwrap()));
        assert!(is_zero_sum(&seq(2, &[(1, 0), (1, 0)])));
        assert!(is_zero_sum(&seq(3, &[(1, 0), (1, 0), (1, 0), (0, 1), (0, 2)])));
        assert!(!is_zero_sum(&seq(3, &[(1, 0)])));
    }

    #[test]
    fn subsequence_examples() {
        let s = seq(2, &[(1, 0), (0, 1), (1, 1)]);
        assert_eq!(find_zero_sum_subsequence(&s, DEFAULT_SEARCH_BUDGET).unwrap(), Some(s.clone()));
        assert_eq!(find_zero_sum_subsequence(&seq(3, &[(1, 2)]), DEFAULT_SEARCH_BUDGET).unwrap(), None);
        let s = seq(2, &[(1, 0), (1, 0), (0, 1)]);
        assert_eq!(
            find_zero_sum_subsequence(&s, DEFAULT_SEARCH_BUDGET).unwrap(),
            Some(seq(2, &[(1, 0), (1, 0)]))
        );
        assert!(find_zero_sum_subsequence(&s, 1).unwrap_err().is_budget());
    }

    #[test]
    fn zero_element_is_its_own_witness() {
        let s = seq(3, &[(1, 1), (0, 0)]);
        assert_eq!(find_zero_sum_subsequence(&s, DEFAULT_SEARCH_BUDGET).unwrap(), Some(seq(3, &[(0, 0)])));
    }

    #[test]
    fn davenport_small() {
        let c = davenport_constant(2, 1_000_000).unwrap();
        assert_eq!(c.davenport_constant, Some(3));
        assert_eq!(c.witness.degree(), 2);
        assert!(!has_zero_sum_subsequence_exhaustive(&c.witness));
        let c = davenport_constant(3, 10_000_000).unwrap();
        assert_eq!(c.davenport_constant, Some(5));
        assert_eq!(c.max_zero_sum_free_length, 4);
        assert!(!has_zero_sum_subsequence_exhaustive(&c.witness));
        let c = davenport_constant(1, 100).unwrap();
        assert_eq!(c.davenport_constant, Some(1));
    }

    #[test]
    fn davenport_budget_gives_partial_certificate() {
        let c = davenport_constant(3, 20).unwrap();
        assert!(!c.complete);
        assert_eq!(c.davenport_constant, None);
        assert!(c.checked_up_to_length < 4);
    }

    #[test]
    fn classical_witness_is_zero_sum_free() {
        for d in 1..=6 {
            let w = classical_witness(d).unwrap();
            assert_eq!(w.degree(), 2 * d - 2);
            assert!(!has_zero_sum_subsequence_exhaustive(&w));
            assert_eq!(find_zero_sum_subsequence(&w, DEFAULT_SEARCH_BUDGET).unwrap(), None);
        }
    }

    #[test]
    fn decomposition_examples() {
        let s = seq(2, &[(1, 0), (0, 1), (1, 1)]);
        assert_eq!(decompose_invariant_monomial(&s).unwrap(), vec![s.clone()]);
        let s = seq(2, &[(1, 0), (1, 0), (0, 1), (0, 1), (1, 1), (1, 1)]);
        let f = decompose_invariant_monomial(&s).unwrap();
        assert!(f.iter().all(|x| is_zero_sum(x) && x.degree() <= 3));
        assert_eq!(f.iter().fold(GroupSequence::empty(2).unwrap(), |a, b| a.plus(b)), s);
        let s = seq(3, &[(1, 0), (1, 0), (1, 0), (0, 1), (0, 1), (0, 1)]);
        let mut f = decompose_invariant_monomial(&s).unwrap();
        f.sort_by_key(|x| x.elements());
        assert_eq!(f, vec![seq(3, &[(0, 1); 3]), seq(3, &[(1, 0); 3])]);
        assert!(decompose_invariant_monomial(&seq(3, &[(1, 0)])).is_err());
    }

    #[test]
    fn generator_degree_certificates() {
        for (d, expect) in [(1, 1), (2, 3), (3, 5)] {
            let c = max_generator_degree_translation(d, 4, 10_000_000).unwrap();
            assert_eq!(c.max_degree, expect);
            assert!(c.indecomposable_verified);
            assert_eq!(c.davenport.unwrap().davenport_constant, Some(expect));
        }
    }

    #[test]
    fn json_pairs() {
        let s = sequence_from_json(3, "[[1,0],[4,2],[-1,0]]").unwrap();
        assert_eq!(s, seq(3, &[(1, 0), (1, 2), (2, 0)]));
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[1,0],[1,2],[2,0]]");
    }

    proptest! {
        #[test]
        fn dp_agrees_with_exhaustive(d in 2usize..5, elems in prop::collection::vec((0i64..5, 0i64..5), 0..10)) {
            let s = seq(d, &elems);
            let dp = find_zero_sum_subsequence(&s, DEFAULT_SEARCH_BUDGET).unwrap();
            prop_assert_eq!(dp.is_some(), has_zero_sum_subsequence_exhaustive(&s));
            if let Some(w) = dp {
                prop_assert!(w.degree() > 0 && is_zero_sum(&w) && w.is_sub_multiset_of(&s));
                prop_assert!(w.degree() <= 2 * d - 1);
            }
        }

        #[test]
        fn phase_zero_iff_zero_sum(d in 1usize..4, elems in prop::collection::vec((0i64..3, 0i64..3), 0..5)) {
            let s = seq(d, &elems);
            let invariant = s.monomial_phase(1, 0) == 0 && s.monomial_phase(0, 1) == 0;
            prop_assert_eq!(invariant, is_zero_sum(&s));
        }
    }
}
