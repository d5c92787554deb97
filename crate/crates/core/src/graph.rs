//! Small simple graphs: graph6 I/O, canonical forms, isomorphism-class
//! enumeration and automorphism groups.
//!
//! Canonical form is the minimal upper-triangle adjacency bitstring (graph6
//! bit order) over all vertex orderings compatible with the stable color
//! refinement of the vertices. The refinement is isomorphism invariant, so
//! minimizing over the orderings it allows yields a canonical labeling.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

/// Largest vertex count accepted by the short graph6 form.
pub const GRAPH6_MAX_N: usize = 62;
/// Largest vertex count for canonical forms (bitstring fits in a `u64`).
pub const CANONICAL_MAX_N: usize = 11;

/// A simple undirected graph on at most 64 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "graphs are limited to 64 vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::invalid("n", "graphs are limited to 64 vertices"));
        }
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::invalid("edge", format!("({a}, {b}) invalid for n = {n}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            if n > 2 || i + 1 < n {
                g.add_edge(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// `K_{1,leaves}` with the center last.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for i in 0..leaves {
            g.add_edge(i, leaves);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    g.add_edge(p.apply(i), p.apply(j));
                }
            }
        }
        g
    }
}

/// Encodes `g` in graph6 (short form, `n <= 62`).
pub fn write_graph6(g: &Graph) -> Result<String> {
    if g.n > GRAPH6_MAX_N {
        return Err(Error::invalid("n", format!("graph6 short form supports n <= {GRAPH6_MAX_N}")));
    }
    let mut out = vec![(g.n + 63) as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..g.n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 string (surrounding whitespace ignored).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::Graph6 {
            offset: 0,
            msg: "empty input".into(),
        });
    };
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6 {
            offset: 0,
            msg: format!("byte {first} outside 63..=126"),
        });
    }
    if first == 126 {
        return Err(Error::Graph6 {
            offset: 0,
            msg: format!("long form (n > {GRAPH6_MAX_N}) not supported"),
        });
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if bytes.len() != 1 + expected {
        return Err(Error::Graph6 {
            offset: bytes.len().min(1 + expected),
            msg: format!("expected {} bytes for n = {n}, found {}", 1 + expected, bytes.len()),
        });
    }
    for (k, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6 {
                offset: k,
                msg: format!("byte {b} outside 63..=126"),
            });
        }
    }
    let bit = |idx: usize| -> bool {
        let byte = bytes[1 + idx / 6] - 63;
        (byte >> (5 - idx % 6)) & 1 == 1
    };
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(idx) {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    for pad in bits..expected * 6 {
        if bit(pad) {
            return Err(Error::Graph6 {
                offset: 1 + pad / 6,
                msg: "nonzero padding bits".into(),
            });
        }
    }
    Ok(g)
}

/// Stable color refinement; colors are ranks of isomorphism-invariant signatures.
pub fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut colors: Vec<usize> = vec![0; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(v, u)).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        colors = next;
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

/// Upper-triangle bits in graph6 order, first bit most significant.
fn adjacency_key(g: &Graph, order: &[usize]) -> u64 {
    // order[pos] = original vertex placed at position pos
    let mut key = 0u64;
    for j in 1..g.n {
        for i in 0..j {
            key = (key << 1) | g.has_edge(order[i], order[j]) as u64;
        }
    }
    key
}

/// Canonical relabeling of `g` and the permutation `P` with `canon = g.relabel(P)`.
pub fn canonical_form(g: &Graph) -> Result<(Graph, Permutation)> {
    let n = g.n;
    if n > CANONICAL_MAX_N {
        return Err(Error::invalid("n", format!("canonical forms support n <= {CANONICAL_MAX_N}")));
    }
    let colors = refine_colors(g);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);

    fn rec(
        g: &Graph,
        cells: &[Vec<usize>],
        cell: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if cell == cells.len() {
            let key = adjacency_key(g, order);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                *best = Some((key, order.clone()));
            }
            return;
        }
        let members = &cells[cell];
        let placed = members.iter().filter(|&&v| used[v]).count();
        if placed == members.len() {
            rec(g, cells, cell + 1, used, order, best);
            return;
        }
        for &v in members {
            if !used[v] {
                used[v] = true;
                order.push(v);
                rec(g, cells, cell, used, order, best);
                order.pop();
                used[v] = false;
            }
        }
    }

    let mut used = vec![false; n];
    rec(g, &cells, 0, &mut used, &mut order, &mut best);
    let (_, order) = best.unwrap_or((0, Vec::new()));
    let mut image = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        image[v] = pos;
    }
    let p = Permutation::from_image(image)?;
    Ok((g.relabel(&p), p))
}

/// graph6 string of the canonical form.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    write_graph6(&canonical_form(g)?.0)
}

/// One representative per isomorphism class on `n` vertices, sorted by
/// canonical graph6 string. Built by adding a vertex to every class on
/// `n - 1` vertices in all possible ways.
pub fn enumerate_graphs(n: usize, max_n: usize) -> Result<Vec<Graph>> {
    if n > max_n {
        return Err(Error::budget("graph enumeration n", n as u128, max_n as u128));
    }
    if n > CANONICAL_MAX_N {
        return Err(Error::budget("graph enumeration n", n as u128, CANONICAL_MAX_N as u128));
    }
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    let empty = Graph::empty(0);
    classes.insert(write_graph6(&empty)?, empty);
    for size in 1..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for g in classes.values() {
            for mask in 0u64..(1u64 << (size - 1)) {
                let mut h = Graph::empty(size);
                h.adj[..size - 1].copy_from_slice(&g.adj);
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, size - 1);
                    }
                }
                let (canon, _) = canonical_form(&h)?;
                next.entry(write_graph6(&canon)?).or_insert(canon);
            }
        }
        classes = next;
    }
    Ok(classes.into_values().collect())
}

/// Every adjacency-preserving permutation, by backtracking over
/// color-compatible images.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let n = g.n;
    let colors = refine_colors(g);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();

    fn rec(
        g: &Graph,
        colors: &[usize],
        v: usize,
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        if v == g.n {
            out.push(Permutation::from_image(image.to_vec()).expect("bijection"));
            return;
        }
        for w in 0..g.n {
            if used[w] || colors[w] != colors[v] {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            rec(g, colors, v + 1, image, used, out);
            used[w] = false;
        }
        image[v] = usize::MAX;
    }

    rec(g, &colors, 0, &mut image, &mut used, &mut out);
    out.sort();
    // identity is the lexicographically smallest image array
    PermGroup::from_elements_unchecked(n, out)
}
