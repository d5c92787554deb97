//! Counting and enumeration of set partitions and type-colored set partitions.
//!
//! A colored partition of the axes `{0..k}` is a set partition whose blocks
//! each carry one of `m` node types. Its count is the generalized Bell number
//! `sum_j S(k, j) m^j`, which is the dimension of the space of linear
//! functionals on k-tensors invariant under `S_{n_1} x ... x S_{n_m}` once
//! every `n_j >= k`.
//!
//! Partitions are kept in restricted-growth-string (RGS) form, and all
//! enumerations run in RGS lexicographic order so that basis indices are
//! stable across runs.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration limits for partition listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_k: usize,
    pub max_m: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_k: 8, max_m: 8 }
    }
}

impl Caps {
    fn check(&self, k: usize, m: usize) -> Result<()> {
        if k > self.max_k {
            return Err(Error::budget("partition enumeration k", k as u128, self.max_k as u128));
        }
        if m > self.max_m {
            return Err(Error::budget("partition enumeration m", m as u128, self.max_m as u128));
        }
        Ok(())
    }
}

/// Stirling number of the second kind `S(k, j)`.
pub fn stirling2(k: usize, j: usize) -> BigUint {
    if j > k {
        return BigUint::zero();
    }
    stirling2_row(k).swap_remove(j)
}

/// Row `S(k, 0..=k)` of the Stirling triangle.
pub fn stirling2_row(k: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for level in 1..=k {
        let mut next = vec![BigUint::zero(); level + 1];
        for j in 1..=level {
            let mut v = row[j - 1].clone();
            if j < row.len() {
                v += &row[j] * BigUint::from(j);
            }
            next[j] = v;
        }
        row = next;
    }
    row
}

/// Bell number `B(k)`.
pub fn bell(k: usize) -> BigUint {
    stirling2_row(k).into_iter().sum()
}

/// Generalized Bell number: coefficient of `x^k / k!` in `exp(m (e^x - 1))`.
pub fn gen_bell(m: u64, k: usize) -> BigUint {
    let m = BigUint::from(m);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for s in stirling2_row(k) {
        total += s * &power;
        power *= &m;
    }
    total
}

/// Coefficients of `gen_bell(m, k)` as a polynomial in `m`, lowest degree first.
pub fn gen_bell_polynomial(k: usize) -> Vec<BigUint> {
    stirling2_row(k)
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// Exponential generating function power: given `a_0..a_K`, returns the
/// first `K + 1` coefficients `b_k` of `(sum a_k x^k / k!)^m` in the same
/// normalization, by repeated binomial convolution.
pub fn egf_power_coeffs(a: &[BigInt], m: usize) -> Result<Vec<BigInt>> {
    if a.is_empty() {
        return Err(Error::invalid("a", "sequence must have at least one term"));
    }
    if m == 0 {
        return Err(Error::invalid("m", "power must be positive"));
    }
    let binoms: Vec<Vec<BigInt>> = (0..a.len()).map(binomial_row).collect();
    let mut acc = a.to_vec();
    for _ in 1..m {
        acc = (0..a.len())
            .map(|k| {
                (0..=k)
                    .map(|i| &binoms[k][i] * &acc[i] * &a[k - i])
                    .sum::<BigInt>()
            })
            .collect();
    }
    Ok(acc)
}

/// A set partition of `{0..k}` in restricted-growth-string form.
///
/// `rgs[i]` is the block label of element `i`; labels appear in increasing
/// order of first occurrence, so blocks are sorted by minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut next = 0;
        for (i, &label) in rgs.iter().enumerate() {
            if label > next {
                return Err(Error::invalid(
                    "rgs",
                    format!("label {label} at position {i} skips past {next}"),
                ));
            }
            if label == next {
                next += 1;
            }
        }
        Ok(SetPartition { rgs })
    }

    /// Builds the canonical form from explicit blocks over `{0..k}`.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("blocks", "empty block"));
            }
            for &x in block {
                if x >= k {
                    return Err(Error::invalid("blocks", format!("element {x} outside 0..{k}")));
                }
                if owner[x] != usize::MAX {
                    return Err(Error::invalid("blocks", format!("element {x} repeated")));
                }
                owner[x] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::invalid("blocks", format!("element {missing} not covered")));
        }
        let mut relabel = vec![usize::MAX; blocks.len()];
        let mut next = 0;
        let rgs = owner
            .into_iter()
            .map(|o| {
                if relabel[o] == usize::MAX {
                    relabel[o] = next;
                    next += 1;
                }
                relabel[o]
            })
            .collect();
        Ok(SetPartition { rgs })
    }

    pub fn k(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m + 1)
    }

    /// Blocks sorted by minimum element, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }
}

/// All set partitions of `{0..k}` in RGS lexicographic order.
pub fn enumerate_set_partitions(k: usize, caps: &Caps) -> Result<Vec<SetPartition>> {
    caps.check(k, 1)?;
    Ok(set_partitions_unchecked(k))
}

fn set_partitions_unchecked(k: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(k);
    fn rec(k: usize, rgs: &mut Vec<usize>, blocks: usize, out: &mut Vec<SetPartition>) {
        if rgs.len() == k {
            out.push(SetPartition { rgs: rgs.clone() });
            return;
        }
        for label in 0..=blocks {
            rgs.push(label);
            rec(k, rgs, blocks.max(label + 1), out);
            rgs.pop();
        }
    }
    rec(k, &mut rgs, 0, &mut out);
    out
}

/// A set partition of the axes `{0..k}` whose blocks each carry a node type.
///
/// Axes of type `j` form `T_j`; `gammas[j]` partitions `T_j`, expressed over
/// the positions of `T_j` in ascending axis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPartition {
    axis_type: Vec<usize>,
    gammas: Vec<SetPartition>,
}

impl ColoredPartition {
    pub fn new(axis_type: Vec<usize>, gammas: Vec<SetPartition>) -> Result<Self> {
        let m = gammas.len();
        if let Some(&t) = axis_type.iter().find(|&&t| t >= m) {
            return Err(Error::invalid("axis_type", format!("type {t} >= m = {m}")));
        }
        for (j, g) in gammas.iter().enumerate() {
            let size = axis_type.iter().filter(|&&t| t == j).count();
            if g.k() != size {
                return Err(Error::invalid(
                    "gammas",
                    format!("gamma_{j} covers {} axes but |T_{j}| = {size}", g.k()),
                ));
            }
        }
        Ok(ColoredPartition { axis_type, gammas })
    }

    fn from_partition_coloring(p: &SetPartition, colors: &[usize], m: usize) -> Self {
        let axis_type: Vec<usize> = p.rgs().iter().map(|&b| colors[b]).collect();
        let gammas = (0..m)
            .map(|j| {
                let labels: Vec<usize> = p
                    .rgs()
                    .iter()
                    .zip(&axis_type)
                    .filter(|&(_, &t)| t == j)
                    .map(|(&b, _)| b)
                    .collect();
                let mut relabel = std::collections::HashMap::new();
                let rgs = labels
                    .into_iter()
                    .map(|b| {
                        let next = relabel.len();
                        *relabel.entry(b).or_insert(next)
                    })
                    .collect();
                SetPartition { rgs }
            })
            .collect();
        ColoredPartition { axis_type, gammas }
    }

    pub fn k(&self) -> usize {
        self.axis_type.len()
    }

    pub fn m(&self) -> usize {
        self.gammas.len()
    }

    pub fn axis_type(&self) -> &[usize] {
        &self.axis_type
    }

    pub fn gammas(&self) -> &[SetPartition] {
        &self.gammas
    }

    /// Sorted axes of type `j`.
    pub fn axes_of_type(&self, j: usize) -> Vec<usize> {
        (0..self.k()).filter(|&s| self.axis_type[s] == j).collect()
    }

    /// Blocks of `gamma_j` as global axis indices.
    pub fn blocks_of_type(&self, j: usize) -> Vec<Vec<usize>> {
        let axes = self.axes_of_type(j);
        self.gammas[j]
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|pos| axes[pos]).collect())
            .collect()
    }

    /// All blocks with their type, ordered by minimum axis.
    pub fn typed_blocks(&self) -> Vec<(usize, Vec<usize>)> {
        let mut all: Vec<(usize, Vec<usize>)> = (0..self.m())
            .flat_map(|j| self.blocks_of_type(j).into_iter().map(move |b| (j, b)))
            .collect();
        all.sort_by_key(|(_, b)| b[0]);
        all
    }
}

/// All colored partitions of `{0..k}` with `m` types.
///
/// Order: underlying set partition in RGS order, then block colorings in
/// lexicographic order (blocks by minimum element).
pub fn enumerate_colored_partitions(
    k: usize,
    m: usize,
    caps: &Caps,
) -> Result<Vec<ColoredPartition>> {
    if m == 0 {
        return Err(Error::invalid("m", "at least one node type is required"));
    }
    caps.check(k, m)?;
    let mut out = Vec::new();
    for p in set_partitions_unchecked(k) {
        let blocks = p.num_blocks();
        let mut colors = vec![0usize; blocks];
        loop {
            out.push(ColoredPartition::from_partition_coloring(&p, &colors, m));
            if !advance_odometer(&mut colors, m) {
                break;
            }
        }
    }
    Ok(out)
}

/// Increments a base-`m` counter, last digit fastest; false on wraparound.
fn advance_odometer(digits: &mut [usize], m: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < m {
            return true;
        }
        *d = 0;
    }
    false
}
