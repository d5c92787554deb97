//! Learnable order-1 layers for graphs with typed nodes.
//!
//! With `1_{K_i}` the indicator of the type-`i` nodes and `I_{K_i}` the
//! identity restricted to them:
//!
//! - invariant pool: `L(x) = sum_i w_i 1_{K_i}^T x`
//! - equivariant map: `L(x) = sum_{i,j} w_{ij} (1_{K_i}^T x) 1_{K_j} + sum_i v_i I_{K_i} x`
//!   plus an optional per-type bias `sum_j c_j 1_{K_j}`.
//!
//! An [`InvariantNetwork`] composes `M . h . L_D . s . ... . s . L_1` with an
//! entrywise activation `s` between equivariant layers, a per-channel pool
//! `h` and a dense head `M`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{Permutation, TypedNodeSet};

/// `(P x)_{P(i)} = x_i`.
pub fn permute_vec(p: &Permutation, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (i, &v) in x.iter().enumerate() {
        out[p.apply(i)] = v;
    }
    out
}

fn check_len(context: &str, t: &TypedNodeSet, x: &[f64]) -> Result<()> {
    if x.len() != t.n() {
        return Err(Error::shape(context, t.n(), x.len()));
    }
    Ok(())
}

/// Per-type sums, added in sorted order so that permuting nodes within a
/// type gives bit-identical results.
fn type_sums(t: &TypedNodeSet, x: &[f64]) -> Vec<f64> {
    (0..t.m())
        .map(|j| {
            let mut block = x[t.block(j)].to_vec();
            block.sort_unstable_by(f64::total_cmp);
            block.iter().sum()
        })
        .collect()
}

fn uniform(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// Weighted per-type sum pooling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantPool {
    pub t: TypedNodeSet,
    pub w: Vec<f64>,
}

impl InvariantPool {
    pub fn new(t: TypedNodeSet, w: Vec<f64>) -> Result<Self> {
        if w.len() != t.m() {
            return Err(Error::shape("pool weights", t.m(), w.len()));
        }
        Ok(InvariantPool { t, w })
    }

    pub fn random(t: TypedNodeSet, rng: &mut impl Rng) -> Self {
        let w = (0..t.m()).map(|_| uniform(rng)).collect();
        InvariantPool { t, w }
    }

    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        check_len("invariant pool input", &self.t, x)?;
        Ok(type_sums(&self.t, x).iter().zip(&self.w).map(|(s, w)| s * w).sum())
    }
}

/// The `m^2 + m` parameter equivariant map on node vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantMap {
    pub t: TypedNodeSet,
    /// `w[i][j]` couples the type-`i` sum into type-`j` outputs.
    pub w: Vec<Vec<f64>>,
    /// Per-type diagonal weights.
    pub v: Vec<f64>,
    pub bias: Option<Vec<f64>>,
}

impl EquivariantMap {
    pub fn new(t: TypedNodeSet, w: Vec<Vec<f64>>, v: Vec<f64>, bias: Option<Vec<f64>>) -> Result<Self> {
        let m = t.m();
        if w.len() != m || w.iter().any(|r| r.len() != m) {
            return Err(Error::shape("equivariant W", format!("{m}x{m}"), format!("{} rows", w.len())));
        }
        if v.len() != m {
            return Err(Error::shape("equivariant v", m, v.len()));
        }
        if let Some(c) = &bias {
            if c.len() != m {
                return Err(Error::shape("equivariant bias", m, c.len()));
            }
        }
        Ok(EquivariantMap { t, w, v, bias })
    }

    pub fn random(t: TypedNodeSet, with_bias: bool, rng: &mut impl Rng) -> Self {
        let m = t.m();
        let w = (0..m).map(|_| (0..m).map(|_| uniform(rng)).collect()).collect();
        let v = (0..m).map(|_| uniform(rng)).collect();
        let bias = with_bias.then(|| (0..m).map(|_| uniform(rng)).collect());
        EquivariantMap { t, w, v, bias }
    }

    pub fn zeros(t: TypedNodeSet) -> Self {
        let m = t.m();
        EquivariantMap {
            t,
            w: vec![vec![0.0; m]; m],
            v: vec![0.0; m],
            bias: None,
        }
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len("equivariant map input", &self.t, x)?;
        let sums = type_sums(&self.t, x);
        let types = self.t.node_types();
        Ok(x.iter()
            .zip(&types)
            .map(|(&xr, &tr)| {
                let pooled: f64 = sums.iter().zip(&self.w).map(|(s, row)| s * row[tr]).sum();
                let b = self.bias.as_ref().map_or(0.0, |c| c[tr]);
                pooled + self.v[tr] * xr + b
            })
            .collect())
    }

    /// `J[r][c] = d y_r / d x_c = w[type(c)][type(r)] + v[type(r)] [r == c]`.
    pub fn jacobian(&self) -> Vec<Vec<f64>> {
        let types = self.t.node_types();
        let n = types.len();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let diag = if r == c { self.v[types[r]] } else { 0.0 };
                        self.w[types[c]][types[r]] + diag
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of learnable parameters without bias: `m^2 + m`.
    pub fn parameter_count(&self) -> usize {
        let m = self.t.m();
        m * m + m
    }
}

/// Central-difference Jacobian of `f` at `x`.
pub fn finite_diff_jacobian(
    f: impl Fn(&[f64]) -> Result<Vec<f64>>,
    x: &[f64],
    step: f64,
) -> Result<Vec<Vec<f64>>> {
    let out_len = f(x)?.len();
    let mut jac = vec![vec![0.0; x.len()]; out_len];
    let mut probe = x.to_vec();
    for c in 0..x.len() {
        probe[c] = x[c] + step;
        let plus = f(&probe)?;
        probe[c] = x[c] - step;
        let minus = f(&probe)?;
        probe[c] = x[c];
        for r in 0..out_len {
            jac[r][c] = (plus[r] - minus[r]) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// Max entrywise deviation between the analytic and central-difference Jacobians.
pub fn finite_diff_check(e: &EquivariantMap, x: &[f64], step: f64) -> Result<f64> {
    let numeric = finite_diff_jacobian(|y| e.forward(y), x, step)?;
    Ok(e.jacobian()
        .iter()
        .flatten()
        .zip(numeric.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Entrywise nonlinearity placed between equivariant layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Sigmoid,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
        }
    }
}

/// A multi-channel equivariant layer: one [`EquivariantMap`] per
/// (input channel, output channel) pair, summed over inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelLayer {
    pub in_channels: usize,
    pub out_channels: usize,
    /// Row-major by input channel: `maps[c_in * out_channels + c_out]`.
    pub maps: Vec<EquivariantMap>,
}

impl ChannelLayer {
    pub fn random(
        t: &TypedNodeSet,
        in_channels: usize,
        out_channels: usize,
        with_bias: bool,
        rng: &mut impl Rng,
    ) -> Self {
        let maps = (0..in_channels * out_channels)
            .map(|_| EquivariantMap::random(t.clone(), with_bias, rng))
            .collect();
        ChannelLayer {
            in_channels,
            out_channels,
            maps,
        }
    }

    /// `x[c]` is the node vector of channel `c`.
    pub fn forward(&self, x: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        if x.len() != self.in_channels {
            return Err(Error::shape("channel count", self.in_channels, x.len()));
        }
        let n = x.first().map_or(0, Vec::len);
        let mut out = vec![vec![0.0; n]; self.out_channels];
        for (ci, xc) in x.iter().enumerate() {
            for (co, acc) in out.iter_mut().enumerate() {
                let y = self.maps[ci * self.out_channels + co].forward(xc)?;
                for (a, b) in acc.iter_mut().zip(y) {
                    *a += b;
                }
            }
        }
        Ok(out)
    }
}

/// Fully connected layer `y = W x + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    /// `weights[out][in]`.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl DenseLayer {
    pub fn random(inputs: usize, outputs: usize, rng: &mut impl Rng) -> Self {
        DenseLayer {
            weights: (0..outputs).map(|_| (0..inputs).map(|_| uniform(rng)).collect()).collect(),
            bias: (0..outputs).map(|_| uniform(rng)).collect(),
        }
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        if let Some(row) = self.weights.iter().find(|r| r.len() != x.len()) {
            return Err(Error::shape("dense layer input", row.len(), x.len()));
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(row, b)| row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + b)
            .collect())
    }
}

/// `F = M . h . L_D . s . ... . s . L_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantNetwork {
    pub t: TypedNodeSet,
    pub layers: Vec<ChannelLayer>,
    pub activation: Activation,
    /// One pool per channel of the last equivariant layer (or of the input).
    pub pools: Vec<InvariantPool>,
    /// Dense head; empty means identity.
    pub head: Vec<DenseLayer>,
}

impl InvariantNetwork {
    /// Random network with channel widths `widths[0] -> ... -> widths[D]`
    /// and a head of the given output widths.
    pub fn random(
        t: &TypedNodeSet,
        widths: &[usize],
        head_widths: &[usize],
        activation: Activation,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if widths.is_empty() {
            return Err(Error::invalid("widths", "need at least the input channel count"));
        }
        let layers = widths
            .windows(2)
            .map(|w| ChannelLayer::random(t, w[0], w[1], false, rng))
            .collect();
        let last = *widths.last().unwrap();
        let pools = (0..last).map(|_| InvariantPool::random(t.clone(), rng)).collect();
        let mut head = Vec::new();
        let mut prev = last;
        for &h in head_widths {
            head.push(DenseLayer::random(prev, h, rng));
            prev = h;
        }
        Ok(InvariantNetwork {
            t: t.clone(),
            layers,
            activation,
            pools,
            head,
        })
    }

    /// Forward pass on channel-major features `x[c][node]`.
    pub fn forward(&self, x: &[Vec<f64>]) -> Result<Vec<f64>> {
        let mut h = x.to_vec();
        for (li, layer) in self.layers.iter().enumerate() {
            if li > 0 {
                for ch in h.iter_mut() {
                    for v in ch.iter_mut() {
                        *v = self.activation.apply(*v);
                    }
                }
            }
            h = layer.forward(&h).map_err(|e| at_stage(&format!("equivariant layer {li}"), e))?;
        }
        if h.len() != self.pools.len() {
            return Err(Error::shape("pool channels", self.pools.len(), h.len()));
        }
        let mut out = h
            .iter()
            .zip(&self.pools)
            .map(|(ch, p)| p.forward(ch))
            .collect::<Result<Vec<f64>>>()
            .map_err(|e| at_stage("pool", e))?;
        for (hi, dense) in self.head.iter().enumerate() {
            if hi > 0 {
                for v in out.iter_mut() {
                    *v = self.activation.apply(*v);
                }
            }
            out = dense.forward(&out).map_err(|e| at_stage(&format!("head layer {hi}"), e))?;
        }
        Ok(out)
    }
}

fn at_stage(stage: &str, e: Error) -> Error {
    match e {
        Error::Shape {
            context,
            expected,
            found,
        } => Error::Shape {
            context: format!("{stage}: {context}"),
            expected,
            found,
        },
        other => other,
    }
}

/// On-disk layer weights: `W` flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerWeights {
    pub type_sizes: Vec<usize>,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    pub v: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
}

impl From<&EquivariantMap> for LayerWeights {
    fn from(e: &EquivariantMap) -> Self {
        LayerWeights {
            type_sizes: e.t.sizes().to_vec(),
            w: e.w.iter().flatten().copied().collect(),
            v: e.v.clone(),
            c: e.bias.clone(),
        }
    }
}

impl TryFrom<LayerWeights> for EquivariantMap {
    type Error = Error;

    fn try_from(lw: LayerWeights) -> Result<Self> {
        let t = TypedNodeSet::new(lw.type_sizes)?;
        let m = t.m();
        if lw.w.len() != m * m {
            return Err(Error::shape("W entries", m * m, lw.w.len()));
        }
        let w = lw.w.chunks(m).map(<[f64]>::to_vec).collect();
        EquivariantMap::new(t, w, lw.v, lw.c)
    }
}
