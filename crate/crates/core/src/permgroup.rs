//! Permutations, permutation groups given by generators, and the exact
//! orbit-counting oracles behind every dimension formula in the crate.
//!
//! The dimension of the space of `G`-invariant linear functionals on
//! `R^{n^k}` equals the number of orbits of `G` acting diagonally on index
//! tuples. Two independent routes compute it: union-find over the generator
//! action on all `n^k` tuples ([`orbit_count_on_tuples`]) and Burnside's
//! lemma over the full element list ([`burnside_count`]).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::{tuple_count, Budget};
use crate::error::{Error, Result};

/// A bijection of `{0..n}`; `image[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::invalid("permutation", format!("{image:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Parses a 1-based image array.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::invalid("permutation", "1-based image contains 0"));
        }
        Self::from_image(image.iter().map(|&x| x - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.image.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    /// Cycle lengths, including fixed points as 1-cycles, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// Node counts per type; type `j` owns the contiguous block `K_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypedNodeSet {
    sizes: Vec<usize>,
}

impl TypedNodeSet {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::invalid("sizes", "at least one node type is required"));
        }
        if sizes.contains(&0) {
            return Err(Error::invalid("sizes", "every type needs at least one node"));
        }
        Ok(TypedNodeSet { sizes })
    }

    /// Groups arbitrary per-node type labels (`0..m`) into contiguous blocks.
    ///
    /// Returns the typed set and the relabeling `P` with `P(old) = new`;
    /// nodes keep their relative order within a type.
    pub fn from_labels(labels: &[usize]) -> Result<(Self, Permutation)> {
        let m = labels.iter().max().map_or(0, |&x| x + 1);
        let mut sizes = vec![0; m];
        for &l in labels {
            sizes[l] += 1;
        }
        let typed = TypedNodeSet::new(sizes)?;
        let mut next: Vec<usize> = typed.offsets();
        let image = labels
            .iter()
            .map(|&l| {
                let slot = next[l];
                next[l] += 1;
                slot
            })
            .collect();
        Ok((typed, Permutation { image }))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    /// First node of each block.
    pub fn offsets(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// Nodes of type `j`.
    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.sizes[..j].iter().sum();
        start..start + self.sizes[j]
    }

    /// Type of every node.
    pub fn node_types(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(j, &s)| std::iter::repeat_n(j, s))
            .collect()
    }
}

/// A subgroup of `S_n` given by generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupSpec {
    n: usize,
    generators: Vec<Permutation>,
}

impl PermGroupSpec {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::shape("generator length", n, g.len()));
        }
        Ok(PermGroupSpec { n, generators })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroupSpec {
            n,
            generators: Vec::new(),
        }
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let generators = (0..n.saturating_sub(1))
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect();
        PermGroupSpec { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn closure(&self, cap: usize) -> Result<PermGroup> {
        Ok(PermGroup {
            n: self.n,
            elements: group_closure(self, cap)?,
        })
    }
}

/// A finite permutation group held as its complete element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Wraps an element list the caller knows to be a group.
    pub fn from_elements_unchecked(n: usize, elements: Vec<Permutation>) -> Self {
        PermGroup { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// A small generating set, chosen greedily from the elements.
    pub fn to_spec(&self) -> PermGroupSpec {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut reached: HashSet<Permutation> = HashSet::new();
        reached.insert(Permutation::identity(self.n));
        for g in &self.elements {
            if reached.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let spec = PermGroupSpec {
                n: self.n,
                generators: gens.clone(),
            };
            // closure of a subgroup never exceeds the group itself
            reached = group_closure(&spec, usize::MAX)
                .expect("uncapped closure")
                .into_iter()
                .collect();
            if reached.len() == self.elements.len() {
                break;
            }
        }
        PermGroupSpec {
            n: self.n,
            generators: gens,
        }
    }
}

/// Adjacent transpositions inside each type block: generates `S_{n_1} x ... x S_{n_m}`.
pub fn young_generators(t: &TypedNodeSet) -> PermGroupSpec {
    let n = t.n();
    let generators = (0..t.m())
        .flat_map(|j| {
            let r = t.block(j);
            (r.start..r.end.saturating_sub(1)).map(move |i| Permutation::transposition(n, i, i + 1))
        })
        .collect();
    PermGroupSpec { n, generators }
}

/// The rotation `i -> i + 1 mod n`.
pub fn cyclic_generators(n: usize) -> Result<PermGroupSpec> {
    if n == 0 {
        return Err(Error::invalid("n", "cyclic group needs n >= 1"));
    }
    let image = (0..n).map(|i| (i + 1) % n).collect();
    Ok(PermGroupSpec {
        n,
        generators: vec![Permutation { image }],
    })
}

/// Row and column shifts of a `d x d` grid, point `(i, j)` stored at `i * d + j`.
pub fn translation_generators(d: usize) -> Result<PermGroupSpec> {
    if d == 0 {
        return Err(Error::invalid("d", "translation group needs d >= 1"));
    }
    let n = d * d;
    let rows = (0..n).map(|p| ((p / d + 1) % d) * d + p % d).collect();
    let cols = (0..n).map(|p| (p / d) * d + (p % d + 1) % d).collect();
    Ok(PermGroupSpec {
        n,
        generators: vec![Permutation { image: rows }, Permutation { image: cols }],
    })
}

/// Every element of the group generated by `g`, identity first, in
/// breadth-first order. Fails instead of truncating when the group exceeds `cap`.
pub fn group_closure(g: &PermGroupSpec, cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(g.n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for gen in &g.generators {
            let y = gen.compose(&x);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return Err(Error::budget_hint(
                        "group closure",
                        elements.len() as u128 + 1,
                        cap as u128,
                        "group order exceeds cap",
                    ));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Flat index of a tuple, first axis most significant.
#[inline]
pub fn tuple_index(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

/// Inverse of [`tuple_index`].
pub fn tuple_from_index(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Image of the flat tuple index under the diagonal action of `p`.
#[inline]
pub(crate) fn act_on_index(p: &Permutation, mut index: usize, n: usize, k: usize) -> usize {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..k {
        out += p.apply(index % n) * scale;
        index /= n;
        scale *= n;
    }
    out
}

fn check_tuple_budget(n: usize, k: usize, budget: &Budget, what: &str) -> Result<usize> {
    let count = tuple_count(n, k);
    if count > budget.tuples || count > u32::MAX as u128 {
        return Err(Error::budget_hint(
            what,
            count,
            budget.tuples,
            "n^k too large for tuple enumeration; use burnside_count",
        ));
    }
    Ok(count as usize)
}

/// Number of orbits of `g` acting diagonally on `{0..n}^k`.
pub fn orbit_count_on_tuples(g: &PermGroupSpec, k: usize, budget: &Budget) -> Result<u64> {
    let n = g.n;
    let count = check_tuple_budget(n, k, budget, "orbit_count_on_tuples n^k")?;
    let mut uf = UnionFind::new(count);
    let mut orbits = count as u64;
    for gen in &g.generators {
        for idx in 0..count {
            let img = act_on_index(gen, idx, n, k);
            if uf.union(idx as u32, img as u32) {
                orbits -= 1;
            }
        }
    }
    Ok(orbits)
}

/// Burnside's lemma on tuples: `(1/|G|) sum_g fix(g)^k`.
pub fn burnside_count(g: &PermGroupSpec, k: usize, cap: usize) -> Result<BigUint> {
    let elements = group_closure(g, cap)?;
    burnside_count_elements(&elements, k)
}

pub(crate) fn burnside_count_elements(elements: &[Permutation], k: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for e in elements {
        total += BigUint::from(e.fixed_points()).pow(k as u32);
    }
    let order = BigUint::from(elements.len());
    let (q, r) = total.div_rem(&order);
    if !r.is_zero() {
        return Err(Error::Arithmetic(format!(
            "Burnside sum {total} not divisible by group order {order}"
        )));
    }
    Ok(q)
}

/// Convenience wrapper returning `u64` when the count fits.
pub fn burnside_count_u64(g: &PermGroupSpec, k: usize, cap: usize) -> Result<u64> {
    burnside_count(g, k, cap)?
        .to_u64()
        .ok_or_else(|| Error::budget("burnside count", u128::MAX, u64::MAX as u128))
}

/// Orbits of the group on points, each sorted, ordered by minimum point.
pub fn vertex_orbits(g: &PermGroupSpec) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.n);
    for gen in &g.generators {
        for i in 0..g.n {
            uf.union(i as u32, gen.apply(i) as u32);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; g.n];
    for i in 0..g.n {
        let r = uf.find(i as u32) as usize;
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    orbits
}

pub fn max_orbit_size(g: &PermGroupSpec) -> usize {
    vertex_orbits(g).iter().map(Vec::len).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::gen_bell;

    fn sizes(v: &[usize]) -> TypedNodeSet {
        TypedNodeSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn young_generator_shapes() {
        assert!(young_generators(&sizes(&[1, 1, 1])).generators().is_empty());
        let g = young_generators(&sizes(&[2, 1]));
        assert_eq!(g.generators(), &[Permutation::transposition(3, 0, 1)]);
        let g = young_generators(&sizes(&[2, 2]));
        assert_eq!(g.generators().len(), 2);
        assert_eq!(group_closure(&g, 100).unwrap().len(), 4);
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group_closure(&PermGroupSpec::trivial(4), 10).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(group_closure(&young_generators(&sizes(&[3])), 100).unwrap().len(), 6);
        assert_eq!(group_closure(&cyclic_generators(3).unwrap(), 100).unwrap().len(), 3);
        assert_eq!(group_closure(&translation_generators(2).unwrap(), 100).unwrap().len(), 4);
        assert_eq!(group_closure(&translation_generators(3).unwrap(), 100).unwrap().len(), 9);
        assert_eq!(group_closure(&PermGroupSpec::symmetric(5), 1000).unwrap().len(), 120);
    }

    #[test]
    fn closure_cap_is_an_error() {
        let err = group_closure(&PermGroupSpec::symmetric(5), 119).unwrap_err();
        assert!(err.is_budget());
        assert!(group_closure(&PermGroupSpec::symmetric(5), 120).is_ok());
    }

    #[test]
    fn closure_is_closed() {
        let g = young_generators(&sizes(&[3, 2]));
        let els = group_closure(&g, 1000).unwrap();
        let set: HashSet<_> = els.iter().cloned().collect();
        for a in &els {
            assert!(set.contains(&a.inverse()));
            for b in &els {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn orbit_counts_on_tuples() {
        let b = Budget::default();
        assert_eq!(orbit_count_on_tuples(&PermGroupSpec::symmetric(3), 2, &b).unwrap(), 2);
        // a single type-2 node cannot carry two distinct type-2 axes
        assert_eq!(orbit_count_on_tuples(&young_generators(&sizes(&[2, 1])), 2, &b).unwrap(), 5);
        assert_eq!(orbit_count_on_tuples(&young_generators(&sizes(&[2, 2])), 2, &b).unwrap(), 6);
        assert_eq!(orbit_count_on_tuples(&cyclic_generators(3).unwrap(), 2, &b).unwrap(), 3);
        let tiny = Budget { tuples: 10, group: 10 };
        assert!(orbit_count_on_tuples(&PermGroupSpec::symmetric(3), 3, &tiny).unwrap_err().is_budget());
    }

    #[test]
    fn burnside_values() {
        for n in 1..6 {
            for k in 1..4 {
                let c = burnside_count_u64(&cyclic_generators(n).unwrap(), k, 100).unwrap();
                assert_eq!(c, (n as u64).pow(k as u32 - 1));
            }
        }
        for d in 1..4 {
            for k in 1..4 {
                let c = burnside_count_u64(&translation_generators(d).unwrap(), k, 100).unwrap();
                assert_eq!(c, (d as u64).pow(2 * k as u32 - 2));
            }
        }
        assert_eq!(burnside_count_u64(&PermGroupSpec::symmetric(4), 3, 100).unwrap(), 5);
    }

    #[test]
    fn typed_orbits_match_gen_bell_when_blocks_large() {
        let b = Budget::default();
        let t = sizes(&[3, 3]);
        for k in 0..=3 {
            let c = orbit_count_on_tuples(&young_generators(&t), k, &b).unwrap();
            assert_eq!(BigUint::from(c), gen_bell(2, k));
        }
    }

    #[test]
    fn orbits_on_points() {
        let g = PermGroupSpec::trivial(5);
        assert_eq!(vertex_orbits(&g).len(), 5);
        assert_eq!(max_orbit_size(&g), 1);
        let g = young_generators(&sizes(&[3, 2]));
        assert_eq!(vertex_orbits(&g), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(max_orbit_size(&g), 3);
    }

    #[test]
    fn relabel_from_types() {
        let (t, p) = TypedNodeSet::from_labels(&[1, 0, 1, 0, 0]).unwrap();
        assert_eq!(t.sizes(), &[3, 2]);
        assert_eq!(p.image(), &[3, 0, 4, 1, 2]);
    }

    #[test]
    fn permutation_json_is_one_based() {
        let p = Permutation::from_image(vec![1, 2, 0]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,3,1]");
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn cycle_types() {
        let p = Permutation::from_image(vec![1, 0, 3, 4, 2, 5]).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.fixed_points(), 1);
    }

    #[test]
    fn to_spec_regenerates_group() {
        let g = young_generators(&sizes(&[3, 2])).closure(1000).unwrap();
        let spec = g.to_spec();
        assert!(spec.generators().len() <= 3);
        assert_eq!(group_closure(&spec, 1000).unwrap().len(), 12);
    }
}
