//! Exact rank and solve routines: fraction-free elimination over the
//! integers, rational Gauss-Jordan, and modular elimination for fast paths.
//!
//! A rank computed modulo a prime never exceeds the rank over the
//! rationals, so a full modular rank certifies full rational rank exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Primes above `2^30` used by the modular paths.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<T> = Vec<(u32, T)>;

/// Dense rank over the rationals via Bareiss fraction-free elimination.
pub fn rank_exact(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// One solution of `a x = b` over the rationals (free variables set to 0),
/// or `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for v in m[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let delta = &f * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `0..p`.
pub fn to_mod(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Dense rank modulo `p`, rows processed one at a time into an echelon basis.
pub fn rank_mod_dense(rows: &[Vec<i64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        let mut v: Vec<u64> = row.iter().map(|&x| to_mod(x, p)).collect();
        for (col, b) in &basis {
            let f = v[*col];
            if f != 0 {
                for c in *col..ncols {
                    v[c] = (v[c] + p - mul_mod(f, b[c], p)) % p;
                }
            }
        }
        if let Some(col) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[col], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((col, v));
            if basis.len() == ncols {
                break;
            }
        }
    }
    basis.len()
}

/// Incremental sparse row echelon form modulo a prime.
///
/// Each stored row has a leading 1 at its pivot column.
#[derive(Debug, Clone)]
pub struct SparseModEliminator {
    p: u64,
    pivots: BTreeMap<u32, SparseRow<u64>>,
}

impl SparseModEliminator {
    pub fn new(p: u64) -> Self {
        SparseModEliminator {
            p,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    /// Inserts an integer row; returns true when it raised the rank.
    pub fn insert(&mut self, row: &[(u32, i64)]) -> bool {
        let p = self.p;
        let mut v: SparseRow<u64> = row
            .iter()
            .filter_map(|&(c, x)| {
                let m = to_mod(x, p);
                (m != 0).then_some((c, m))
            })
            .collect();
        loop {
            let Some(&(lead, coeff)) = v.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    v = axpy_mod(&v, coeff, piv, p);
                }
                None => {
                    let inv = inv_mod(coeff, p);
                    for e in v.iter_mut() {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

/// `v - f * piv` over `Z_p`, sparse merge.
fn axpy_mod(v: &[(u32, u64)], f: u64, piv: &[(u32, u64)], p: u64) -> SparseRow<u64> {
    let mut out = Vec::with_capacity(v.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < piv.len() {
        let ci = v.get(i).map_or(u32::MAX, |e| e.0);
        let cj = piv.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(v[i]);
            i += 1;
        } else {
            let sub = mul_mod(f, piv[j].1, p);
            let val = if ci == cj {
                let x = (v[i].1 + p - sub) % p;
                i += 1;
                x
            } else {
                (p - sub) % p
            };
            if val != 0 {
                out.push((cj, val));
            }
            j += 1;
        }
    }
    out
}

/// Incremental sparse row echelon form over the integers (rational rank),
/// using fraction-free updates and content normalization.
#[derive(Debug, Clone, Default)]
pub struct SparseExactEliminator {
    pivots: BTreeMap<u32, SparseRow<BigInt>>,
}

impl SparseExactEliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    pub fn insert(&mut self, row: &[(u32, i64)]) -> bool {
        let mut v: SparseRow<BigInt> = row
            .iter()
            .filter(|e| e.1 != 0)
            .map(|&(c, x)| (c, BigInt::from(x)))
            .collect();
        loop {
            let Some((lead, coeff)) = v.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    // v <- piv_lead * v - coeff * piv, then strip content
                    let pl = &piv[0].1;
                    v = combine_exact(pl, &v, &coeff, piv);
                    normalize_content(&mut v);
                }
                None => {
                    normalize_content(&mut v);
                    if v[0].1.is_negative() {
                        for e in v.iter_mut() {
                            e.1 = -&e.1;
                        }
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

fn combine_exact(a: &BigInt, v: &[(u32, BigInt)], b: &BigInt, piv: &[(u32, BigInt)]) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(v.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < piv.len() {
        let ci = v.get(i).map_or(u32::MAX, |e| e.0);
        let cj = piv.get(j).map_or(u32::MAX, |e| e.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, a * &v[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &piv[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &v[i - 1].1 - b * &piv[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn normalize_content(v: &mut [(u32, BigInt)]) {
    let mut g = BigInt::zero();
    for e in v.iter() {
        g = g.gcd(&e.1);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for e in v.iter_mut() {
            e.1 /= &g;
        }
    }
}
