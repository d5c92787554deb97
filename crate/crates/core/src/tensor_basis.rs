//! The orthogonal indicator basis of `S_{n_1} x ... x S_{n_m}`-invariant
//! linear functionals on k-tensors.
//!
//! Each [`ColoredPartition`] of the axes names one basis element. A tuple
//! `(i_1, ..., i_k)` lies in its support when every axis of type `j` carries
//! a node of type `j`, and two axes of type `j` carry the same node exactly
//! when they share a block of `gamma_j`. Supports of distinct descriptors are
//! disjoint, they cover all of `{0..n}^k`, and the nonempty ones are exactly
//! the orbits of the typed group on tuples.
//!
//! A map `R^{n^k} -> R^{n^d}` is a `(k + d)`-tensor: the first `k` axes index
//! the input and the last `d` the output ([`equivariant_basis`], [`apply_map`]).

use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::budget::{tuple_count, Budget};
use crate::combinat::{enumerate_colored_partitions, Caps, ColoredPartition, SetPartition};
use crate::error::{Error, Result};
use crate::permgroup::{tuple_index, Permutation, PermGroupSpec, TypedNodeSet};

/// A 0/1 tensor stored by its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIndicatorTensor {
    n: usize,
    k: usize,
    support: Vec<Vec<usize>>,
}

impl SparseIndicatorTensor {
    /// Sorts and deduplicates the support; rejects out-of-range tuples.
    pub fn new(n: usize, k: usize, mut support: Vec<Vec<usize>>) -> Result<Self> {
        for t in &support {
            if t.len() != k {
                return Err(Error::shape("support tuple length", k, t.len()));
            }
            if let Some(&i) = t.iter().find(|&&i| i >= n) {
                return Err(Error::invalid("support", format!("node {i} outside 0..{n}")));
            }
        }
        support.sort_unstable();
        support.dedup();
        Ok(SparseIndicatorTensor { n, k, support })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn support(&self) -> &[Vec<usize>] {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.support.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    /// Streaming form of a functional: folds `f` over the support.
    pub fn fold_support<T>(&self, init: T, mut f: impl FnMut(T, &[usize]) -> T) -> T {
        self.support.iter().fold(init, |acc, t| f(acc, t))
    }
}

/// One basis element with the colored partition that indexes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub descriptor: ColoredPartition,
    pub tensor: SparseIndicatorTensor,
}

impl BasisElement {
    pub fn is_empty(&self) -> bool {
        self.tensor.is_empty()
    }
}

/// Row-major dense k-tensor over `n` nodes, first axis most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    n: usize,
    k: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(n: usize, k: usize, budget: &Budget) -> Result<Self> {
        let len = check_dense(n, k, budget)?;
        Ok(DenseTensor {
            n,
            k,
            data: vec![0.0; len],
        })
    }

    pub fn from_vec(n: usize, k: usize, data: Vec<f64>, budget: &Budget) -> Result<Self> {
        let len = check_dense(n, k, budget)?;
        if data.len() != len {
            return Err(Error::shape("dense tensor data", len, data.len()));
        }
        Ok(DenseTensor { n, k, data })
    }

    pub fn from_fn(
        n: usize,
        k: usize,
        budget: &Budget,
        mut f: impl FnMut(usize) -> f64,
    ) -> Result<Self> {
        let len = check_dense(n, k, budget)?;
        Ok(DenseTensor {
            n,
            k,
            data: (0..len).map(&mut f).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, tuple: &[usize]) -> f64 {
        self.data[tuple_index(tuple, self.n)]
    }

    pub fn get_mut(&mut self, tuple: &[usize]) -> &mut f64 {
        &mut self.data[tuple_index(tuple, self.n)]
    }

    /// The action `(P x)_{P(i_1), ..., P(i_k)} = x_{i_1, ..., i_k}`.
    pub fn permuted(&self, p: &Permutation) -> DenseTensor {
        let mut out = vec![0.0; self.data.len()];
        for (idx, &v) in self.data.iter().enumerate() {
            out[crate::permgroup::act_on_index(p, idx, self.n, self.k)] = v;
        }
        DenseTensor {
            n: self.n,
            k: self.k,
            data: out,
        }
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_dense(n: usize, k: usize, budget: &Budget) -> Result<usize> {
    let len = tuple_count(n, k);
    if len > budget.tuples {
        return Err(Error::budget("dense tensor entries n^k", len, budget.tuples));
    }
    Ok(len as usize)
}

fn check_descriptor(desc: &ColoredPartition, t: &TypedNodeSet) -> Result<()> {
    if desc.m() != t.m() {
        return Err(Error::shape("descriptor type count", t.m(), desc.m()));
    }
    Ok(())
}

/// Support of the basis element for `desc`: injective assignments of
/// type-`j` nodes to the blocks of `gamma_j`, for all `j` at once.
pub fn build_basis_element(
    desc: &ColoredPartition,
    t: &TypedNodeSet,
    budget: &Budget,
) -> Result<BasisElement> {
    check_descriptor(desc, t)?;
    let n = t.n();
    let k = desc.k();
    let total = tuple_count(n, k);
    if total > budget.tuples {
        return Err(Error::budget("basis tensor n^k", total, budget.tuples));
    }
    let blocks = desc.typed_blocks();
    let ranges: Vec<_> = (0..t.m()).map(|j| t.block(j)).collect();
    let mut used = vec![false; n];
    let mut tuple = vec![0usize; k];
    let mut support = Vec::new();

    fn assign(
        pos: usize,
        blocks: &[(usize, Vec<usize>)],
        ranges: &[std::ops::Range<usize>],
        used: &mut [bool],
        tuple: &mut [usize],
        support: &mut Vec<Vec<usize>>,
    ) {
        if pos == blocks.len() {
            support.push(tuple.to_vec());
            return;
        }
        let (ty, axes) = &blocks[pos];
        for node in ranges[*ty].clone() {
            if used[node] {
                continue;
            }
            used[node] = true;
            for &a in axes {
                tuple[a] = node;
            }
            assign(pos + 1, blocks, ranges, used, tuple, support);
            used[node] = false;
        }
    }

    assign(0, &blocks, &ranges, &mut used, &mut tuple, &mut support);
    Ok(BasisElement {
        descriptor: desc.clone(),
        tensor: SparseIndicatorTensor::new(n, k, support)?,
    })
}

/// One element per colored partition of `{0..k}` with `m` types, in
/// canonical descriptor order. Empty supports are kept.
pub fn build_full_basis(k: usize, t: &TypedNodeSet, budget: &Budget) -> Result<Vec<BasisElement>> {
    let total = tuple_count(t.n(), k);
    if total > budget.tuples {
        return Err(Error::budget("basis tensor n^k", total, budget.tuples));
    }
    let caps = Caps {
        max_k: k.max(Caps::default().max_k),
        max_m: t.m().max(Caps::default().max_m),
    };
    enumerate_colored_partitions(k, t.m(), &caps)?
        .iter()
        .map(|d| build_basis_element(d, t, budget))
        .collect()
}

/// Basis of equivariant maps `R^{n^k} -> R^{n^d}` as `(k + d)`-tensors.
pub fn equivariant_basis(
    k: usize,
    d: usize,
    t: &TypedNodeSet,
    budget: &Budget,
) -> Result<Vec<BasisElement>> {
    build_full_basis(k + d, t, budget)
}

/// Number of elements with nonempty support.
pub fn nonempty_count(basis: &[BasisElement]) -> usize {
    basis.iter().filter(|b| !b.is_empty()).count()
}

fn check_shape(b: &SparseIndicatorTensor, x: &DenseTensor) -> Result<()> {
    if b.n != x.n || b.k != x.k {
        return Err(Error::shape(
            "functional input",
            format!("n={} k={}", b.n, b.k),
            format!("n={} k={}", x.n, x.k),
        ));
    }
    Ok(())
}

/// `sum of x over the support`.
pub fn apply_functional(b: &BasisElement, x: &DenseTensor) -> Result<f64> {
    check_shape(&b.tensor, x)?;
    Ok(b.tensor.fold_support(0.0, |acc, t| acc + x.get(t)))
}

/// Applies a `(k + d)`-tensor basis element as a map from `k`-tensors to `d`-tensors.
pub fn apply_map(b: &BasisElement, x: &DenseTensor, budget: &Budget) -> Result<DenseTensor> {
    let total = b.tensor.k;
    if x.n != b.tensor.n || x.k > total {
        return Err(Error::shape(
            "map input",
            format!("n={} k<={}", b.tensor.n, total),
            format!("n={} k={}", x.n, x.k),
        ));
    }
    let k = x.k;
    let mut y = DenseTensor::zeros(x.n, total - k, budget)?;
    for t in b.tensor.support() {
        let v = x.get(&t[..k]);
        *y.get_mut(&t[k..]) += v;
    }
    Ok(y)
}

/// True iff every generator maps the support onto itself.
pub fn verify_invariance(b: &SparseIndicatorTensor, g: &PermGroupSpec) -> bool {
    if g.n() != b.n {
        return false;
    }
    let set: HashSet<&[usize]> = b.support.iter().map(Vec::as_slice).collect();
    g.generators().iter().all(|p| {
        b.support.iter().all(|t| {
            let img: Vec<usize> = t.iter().map(|&i| p.apply(i)).collect();
            set.contains(img.as_slice())
        })
    })
}

/// Pairwise disjointness of supports (orthogonality of indicator tensors).
pub fn verify_orthogonality(basis: &[BasisElement]) -> bool {
    let mut seen: HashSet<&[usize]> = HashSet::new();
    basis
        .iter()
        .flat_map(|b| b.tensor.support.iter())
        .all(|t| seen.insert(t.as_slice()))
}

/// Disjoint supports whose union is all of `{0..n}^k`.
pub fn verify_partition(basis: &[BasisElement], n: usize, k: usize) -> bool {
    let covered: usize = basis.iter().map(|b| b.tensor.support.len()).sum();
    tuple_count(n, k) == covered as u128 && verify_orthogonality(basis)
}

/// Orthogonal projection of `x` onto the span of the basis: the mean of `x`
/// over each nonempty support (`None` for empty elements).
pub fn decompose(x: &DenseTensor, basis: &[BasisElement]) -> Result<Vec<Option<f64>>> {
    basis
        .iter()
        .map(|b| {
            check_shape(&b.tensor, x)?;
            if b.is_empty() {
                return Ok(None);
            }
            let s = b.tensor.fold_support(0.0, |acc, t| acc + x.get(t));
            Ok(Some(s / b.tensor.support.len() as f64))
        })
        .collect()
}

/// `sum_b c_b * B_b`; `None` coefficients contribute nothing.
pub fn reconstruct(
    coeffs: &[Option<f64>],
    basis: &[BasisElement],
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<DenseTensor> {
    if coeffs.len() != basis.len() {
        return Err(Error::shape("coefficient list", basis.len(), coeffs.len()));
    }
    let mut out = DenseTensor::zeros(n, k, budget)?;
    for (c, b) in coeffs.iter().zip(basis) {
        if let Some(c) = c {
            for t in b.tensor.support() {
                *out.get_mut(t) += c;
            }
        }
    }
    Ok(out)
}

const BASIS_FORMAT: &str = "tensorsym-basis";

/// First line of a basis file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisHeader {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub k: usize,
    pub type_sizes: Vec<usize>,
    pub count: usize,
    /// For equivariant maps: how many leading axes are inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_axes: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BasisRecord {
    index: usize,
    /// 1-based type of each axis.
    axis_types: Vec<usize>,
    /// Restricted growth string of `gamma_j` over `T_j`, per type.
    rgs: Vec<Vec<usize>>,
    empty: bool,
    /// 1-based node tuples.
    support: Vec<Vec<usize>>,
}

/// A basis read back from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFile {
    pub header: BasisHeader,
    pub elements: Vec<BasisElement>,
}

/// Writes one JSON header line, then one JSON record per element.
pub fn serialize_basis<W: Write>(
    mut w: W,
    t: &TypedNodeSet,
    k: usize,
    input_axes: Option<usize>,
    basis: &[BasisElement],
) -> Result<()> {
    let header = BasisHeader {
        format: BASIS_FORMAT.to_string(),
        version: 1,
        n: t.n(),
        k,
        type_sizes: t.sizes().to_vec(),
        count: basis.len(),
        input_axes,
    };
    serde_json::to_writer(&mut w, &header)?;
    writeln!(w)?;
    for (index, b) in basis.iter().enumerate() {
        let rec = BasisRecord {
            index: index + 1,
            axis_types: b.descriptor.axis_type().iter().map(|&j| j + 1).collect(),
            rgs: b.descriptor.gammas().iter().map(|g| g.rgs().to_vec()).collect(),
            empty: b.is_empty(),
            support: b
                .tensor
                .support()
                .iter()
                .map(|t| t.iter().map(|&i| i + 1).collect())
                .collect(),
        };
        serde_json::to_writer(&mut w, &rec)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Parses a basis file; every failure names the offending line (1-based).
pub fn load_basis<R: BufRead>(r: R) -> Result<BasisFile> {
    let mut lines = r.lines().enumerate();
    let (_, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let first = first?;
    let header: BasisHeader = serde_json::from_str(&first).map_err(|e| Error::Parse {
        line: 1,
        msg: format!("header: {e}"),
    })?;
    if header.format != BASIS_FORMAT {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unknown format {:?}", header.format),
        });
    }
    let t = TypedNodeSet::new(header.type_sizes.clone()).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    if t.n() != header.n {
        return Err(Error::Parse {
            line: 1,
            msg: format!("n = {} but type sizes sum to {}", header.n, t.n()),
        });
    }
    let mut elements = Vec::with_capacity(header.count);
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let rec: BasisRecord = serde_json::from_str(&line).map_err(|e| perr(e.to_string()))?;
        if rec.axis_types.len() != header.k || rec.axis_types.contains(&0) {
            return Err(perr(format!("axis_types must be {} values in 1..=m", header.k)));
        }
        let axis_type: Vec<usize> = rec.axis_types.iter().map(|&j| j - 1).collect();
        let gammas = rec
            .rgs
            .into_iter()
            .map(SetPartition::from_rgs)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| perr(e.to_string()))?;
        let descriptor =
            ColoredPartition::new(axis_type, gammas).map_err(|e| perr(e.to_string()))?;
        if descriptor.m() != t.m() {
            return Err(perr(format!("{} gammas for {} types", descriptor.m(), t.m())));
        }
        let mut support = Vec::with_capacity(rec.support.len());
        for tup in rec.support {
            if tup.contains(&0) {
                return Err(perr("support tuples are 1-based".into()));
            }
            support.push(tup.into_iter().map(|i| i - 1).collect());
        }
        let tensor =
            SparseIndicatorTensor::new(header.n, header.k, support).map_err(|e| perr(e.to_string()))?;
        if tensor.is_empty() != rec.empty {
            return Err(perr("empty flag disagrees with support".into()));
        }
        elements.push(BasisElement { descriptor, tensor });
    }
    if elements.len() != header.count {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header count {} but {} records", header.count, elements.len()),
        });
    }
    Ok(BasisFile { header, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{group_closure, orbit_count_on_tuples, young_generators};

    fn typed(v: &[usize]) -> TypedNodeSet {
        TypedNodeSet::new(v.to_vec()).unwrap()
    }

    fn desc(axis_type: &[usize], rgs: &[&[usize]]) -> ColoredPartition {
        ColoredPartition::new(
            axis_type.to_vec(),
            rgs.iter().map(|r| SetPartition::from_rgs(r.to_vec()).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_of_first_type() {
        let t = typed(&[2, 1]);
        let b = build_basis_element(&desc(&[0, 0], &[&[0, 0], &[]]), &t, &Budget::default()).unwrap();
        assert_eq!(b.tensor.support(), &[vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn cross_type_block() {
        let t = typed(&[2, 1]);
        let b = build_basis_element(&desc(&[0, 1], &[&[0], &[0]]), &t, &Budget::default()).unwrap();
        assert_eq!(b.tensor.support(), &[vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn pigeonhole_gives_empty_support() {
        let t = typed(&[1, 1]);
        let b = build_basis_element(&desc(&[0, 0], &[&[0, 1], &[]]), &t, &Budget::default()).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn fig3_basis_partitions_tuples() {
        let t = typed(&[2, 1]);
        let basis = build_full_basis(2, &t, &Budget::default()).unwrap();
        assert_eq!(basis.len(), 6);
        assert_eq!(nonempty_count(&basis), 5);
        assert!(verify_partition(&basis, 3, 2));
        let t = typed(&[2, 2]);
        let basis = build_full_basis(2, &t, &Budget::default()).unwrap();
        assert_eq!(nonempty_count(&basis), 6);
        assert!(verify_partition(&basis, 4, 2));
    }

    #[test]
    fn symmetric_matrix_basis() {
        let t = typed(&[3]);
        let basis = build_full_basis(2, &t, &Budget::default()).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].tensor.support().len(), 3);
        assert_eq!(basis[1].tensor.support().len(), 6);
    }

    #[test]
    fn small_blocks_lose_elements() {
        let t = typed(&[1, 1]);
        let basis = build_full_basis(3, &t, &Budget::default()).unwrap();
        assert_eq!(basis.len(), 22);
        let orbits = orbit_count_on_tuples(&young_generators(&t), 3, &Budget::default()).unwrap();
        assert_eq!(nonempty_count(&basis) as u64, orbits);
        for b in &basis {
            let at_most_one = (0..2).all(|j| b.descriptor.gammas()[j].num_blocks() <= 1);
            assert_eq!(!b.is_empty(), at_most_one);
        }
    }

    #[test]
    fn functional_values() {
        let budget = Budget::default();
        let t = typed(&[2, 1]);
        let basis = build_full_basis(2, &t, &budget).unwrap();
        let ones = DenseTensor::from_fn(3, 2, &budget, |_| 1.0).unwrap();
        for b in &basis {
            assert_eq!(apply_functional(b, &ones).unwrap(), b.tensor.support().len() as f64);
        }
        let eye = DenseTensor::from_fn(3, 2, &budget, |i| if i / 3 == i % 3 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(apply_functional(&basis[0], &eye).unwrap(), 2.0);
        let wrong = DenseTensor::zeros(3, 3, &budget).unwrap();
        assert!(apply_functional(&basis[0], &wrong).is_err());
        let empty = build_basis_element(&desc(&[0, 0], &[&[0, 1], &[]]), &typed(&[1, 1]), &budget).unwrap();
        let x = DenseTensor::from_fn(2, 2, &budget, |i| i as f64 + 1.0).unwrap();
        assert_eq!(apply_functional(&empty, &x).unwrap(), 0.0);
    }

    #[test]
    fn invariance_checks() {
        let t = typed(&[2, 2]);
        let g = young_generators(&t);
        for b in build_full_basis(3, &t, &Budget::default()).unwrap() {
            assert!(verify_invariance(&b.tensor, &g));
        }
        let s3 = PermGroupSpec::symmetric(3);
        let diag = SparseIndicatorTensor::new(3, 2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert!(verify_invariance(&diag, &s3));
        let single = SparseIndicatorTensor::new(3, 2, vec![vec![0, 1]]).unwrap();
        assert!(!verify_invariance(&single, &s3));
    }

    #[test]
    fn reconstruction_fixes_invariants() {
        let budget = Budget::default();
        let t = typed(&[2, 2]);
        let basis = build_full_basis(2, &t, &budget).unwrap();
        let coeffs: Vec<Option<f64>> = basis.iter().enumerate().map(|(i, _)| Some(i as f64 * 0.5 - 1.0)).collect();
        let x = reconstruct(&coeffs, &basis, 4, 2, &budget).unwrap();
        let again = reconstruct(&decompose(&x, &basis).unwrap(), &basis, 4, 2, &budget).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn projection_equals_group_average() {
        let budget = Budget::default();
        let t = typed(&[2, 1]);
        let basis = build_full_basis(2, &t, &budget).unwrap();
        let x = DenseTensor::from_fn(3, 2, &budget, |i| ((i * 7 + 3) % 11) as f64 / 3.0).unwrap();
        let projected = reconstruct(&decompose(&x, &basis).unwrap(), &basis, 3, 2, &budget).unwrap();
        let els = group_closure(&young_generators(&t), 10).unwrap();
        assert_eq!(els.len(), 2);
        let mut avg = DenseTensor::zeros(3, 2, &budget).unwrap();
        for g in &els {
            let gx = x.permuted(g);
            for (a, v) in avg.data.iter_mut().zip(gx.data()) {
                *a += v / els.len() as f64;
            }
        }
        assert!(projected.max_abs_diff(&avg) < 1e-12);
    }

    #[test]
    fn equivariant_counts() {
        let budget = Budget::default();
        assert_eq!(equivariant_basis(1, 1, &typed(&[2, 2]), &budget).unwrap().len(), 6);
        assert_eq!(equivariant_basis(2, 1, &typed(&[3, 3]), &budget).unwrap().len(), 22);
        let m1 = equivariant_basis(1, 1, &typed(&[3]), &budget).unwrap();
        assert_eq!(m1.len(), 2);
    }

    #[test]
    fn apply_map_on_identity_pattern() {
        let budget = Budget::default();
        let t = typed(&[3]);
        let basis = equivariant_basis(1, 1, &t, &budget).unwrap();
        let x = DenseTensor::from_vec(3, 1, vec![1.0, 2.0, 4.0], &budget).unwrap();
        assert_eq!(apply_map(&basis[0], &x, &budget).unwrap().data(), &[1.0, 2.0, 4.0]);
        assert_eq!(apply_map(&basis[1], &x, &budget).unwrap().data(), &[6.0, 5.0, 3.0]);
    }

    #[test]
    fn basis_file_round_trip() {
        let budget = Budget::default();
        let t = typed(&[1, 1]);
        let basis = build_full_basis(2, &t, &budget).unwrap();
        let mut buf = Vec::new();
        serialize_basis(&mut buf, &t, 2, None, &basis).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), basis.len() + 1);
        assert!(text.contains("\"empty\":true,\"support\":[]"));
        let back = load_basis(buf.as_slice()).unwrap();
        assert_eq!(back.elements, basis);
        assert_eq!(back.header.count, 6);
    }

    #[test]
    fn basis_file_errors_carry_line_numbers() {
        let budget = Budget::default();
        let t = typed(&[2, 1]);
        let basis = build_full_basis(1, &t, &budget).unwrap();
        let mut buf = Vec::new();
        serialize_basis(&mut buf, &t, 1, None, &basis).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let broken = text.replacen("[[3]]", "[[9]]", 1);
        match load_basis(broken.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let garbage = text.replacen("{\"index\":1", "{\"index\":oops", 1);
        match load_basis(garbage.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
