//! Cyclic and translation invariance: dimensions, orbit bases, and the 2-D
//! discrete Fourier transform that turns grid translations into diagonal
//! multiplication by roots of unity.
//!
//! With `w = exp(2 pi i / d)` and 0-based pixel indices,
//! `z_{a,b} = sum_{i,j} x_{i,j} w^{a i + b j}`. Translating the image by
//! `(p, q)` multiplies `z_{a,b}` by `w^{p a + q b}`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{tuple_count, Budget};
use crate::error::{Error, Result};
use crate::tensor_basis::SparseIndicatorTensor;

/// Dimension of `C_n`-invariant functionals on `R^{n^k}`: `n^(k-1)`.
pub fn cyclic_invariant_dim(n: usize, k: usize) -> Result<u128> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("n, k", "cyclic dimension needs n >= 1 and k >= 1"));
    }
    Ok(tuple_count(n, k - 1))
}

/// Dimension of `C_d x C_d`-invariant functionals on k-tensors over `d x d`
/// images: `d^(2k-2)`.
pub fn translation_invariant_dim(d: usize, k: usize) -> Result<u128> {
    if d == 0 || k == 0 {
        return Err(Error::invalid("d, k", "translation dimension needs d >= 1 and k >= 1"));
    }
    Ok(tuple_count(d, 2 * k - 2))
}

/// Orbit indicators of the diagonal rotation action on `{0..n}^k`.
///
/// The action is free, so every orbit has exactly `n` tuples; one orbit per
/// representative with first coordinate 0, in lexicographic order.
pub fn cyclic_basis(n: usize, k: usize, budget: &Budget) -> Result<Vec<SparseIndicatorTensor>> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("n, k", "cyclic basis needs n >= 1 and k >= 1"));
    }
    let total = tuple_count(n, k);
    if total > budget.tuples {
        return Err(Error::budget("cyclic basis n^k", total, budget.tuples));
    }
    let reps = tuple_count(n, k - 1) as usize;
    (0..reps)
        .map(|r| {
            let tail = crate::permgroup::tuple_from_index(r, n, k - 1);
            let support = (0..n)
                .map(|shift| {
                    std::iter::once(shift)
                        .chain(tail.iter().map(|&i| (i + shift) % n))
                        .collect()
                })
                .collect();
            SparseIndicatorTensor::new(n, k, support)
        })
        .collect()
}

/// A real `d x d` image, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridImage {
    d: usize,
    pixels: Vec<f64>,
}

impl GridImage {
    pub fn new(d: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != d * d {
            return Err(Error::shape("image pixels", d * d, pixels.len()));
        }
        Ok(GridImage { d, pixels })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::shape("image row (square images only)", d, r.len()));
        }
        GridImage::new(d, rows.concat())
    }

    /// `d` lines of `d` comma-separated reals.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            rows.push(row);
        }
        GridImage::from_rows(&rows)
    }

    pub fn random(d: usize, rng: &mut impl Rng) -> Self {
        GridImage {
            d,
            pixels: (0..d * d).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pixels[i * self.d + j]
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.pixels.chunks(self.d.max(1)).map(<[f64]>::to_vec).collect()
    }

    /// `translate(x, p, q)_{i,j} = x_{i-p, j-q}` (indices mod `d`).
    pub fn translate(&self, p: usize, q: usize) -> GridImage {
        let d = self.d;
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                out[((i + p) % d) * d + (j + q) % d] = self.pixels[i * d + j];
            }
        }
        GridImage { d, pixels: out }
    }
}

/// Spectral coefficients `z_{a,b}`, `(a, b)` in `{0..d}^2`, row-major in `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralImage {
    d: usize,
    coeffs: Vec<Complex64>,
}

impl SpectralImage {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Indices are taken mod `d`.
    pub fn get(&self, a: i64, b: i64) -> Complex64 {
        let d = self.d as i64;
        self.coeffs[(a.rem_euclid(d) * d + b.rem_euclid(d)) as usize]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(Complex64::norm_sqr).sum()
    }

    /// Nested `[re, im]` pairs, one row per `a`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = self
            .coeffs
            .chunks(self.d.max(1))
            .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        serde_json::json!({ "d": self.d, "coeffs": rows })
    }
}

/// `w^t` for `t` in `0..d`, `w = exp(2 pi i / d)`.
pub fn root_powers(d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|t| match (4 * t) % (4 * d.max(1)) {
            // exact values at quarter turns
            0 => Complex64::new(1.0, 0.0),
            x if x == d => Complex64::new(0.0, 1.0),
            x if x == 2 * d => Complex64::new(-1.0, 0.0),
            x if x == 3 * d => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / d as f64),
        })
        .collect()
}

pub fn dft2(x: &GridImage) -> SpectralImage {
    let d = x.d;
    let w = root_powers(d);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); d * d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                for j in 0..d {
                    acc += w[(a * i + b * j) % d] * x.pixels[i * d + j];
                }
            }
            coeffs[a * d + b] = acc;
        }
    }
    SpectralImage { d, coeffs }
}

/// Inverse transform; imaginary parts vanish (up to rounding) for spectra of real images.
pub fn idft2_complex(z: &SpectralImage) -> Vec<Complex64> {
    let d = z.d;
    let w = root_powers(d);
    let scale = 1.0 / (d * d) as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..d {
                for b in 0..d {
                    acc += z.coeffs[a * d + b] * w[(d * d - (a * i + b * j) % d) % d];
                }
            }
            out[i * d + j] = acc * scale;
        }
    }
    out
}

/// Inverse transform keeping real parts.
pub fn idft2(z: &SpectralImage) -> GridImage {
    GridImage {
        d: z.d,
        pixels: idft2_complex(z).into_iter().map(|c| c.re).collect(),
    }
}

/// Largest `|dft2(translate(x, p, q))_{a,b} - w^{p a + q b} dft2(x)_{a,b}|`
/// over `trials` random images and all `d^2` translations.
pub fn verify_diagonalization(d: usize, trials: usize, rng: &mut impl Rng) -> f64 {
    let w = root_powers(d);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let x = GridImage::random(d, rng);
        let z = dft2(&x);
        for p in 0..d {
            for q in 0..d {
                let zt = dft2(&x.translate(p, q));
                for a in 0..d {
                    for b in 0..d {
                        let expect = w[(p * a + q * b) % d] * z.coeffs[a * d + b];
                        worst = worst.max((zt.coeffs[a * d + b] - expect).norm());
                    }
                }
            }
        }
    }
    worst
}

/// Max round-trip error `|idft2(dft2(x)) - x|` over entries.
pub fn round_trip_error(x: &GridImage) -> f64 {
    idft2_complex(&dft2(x))
        .iter()
        .zip(&x.pixels)
        .map(|(c, &v)| (c - v).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{cyclic_generators, orbit_count_on_tuples, translation_generators, burnside_count_u64};
    use crate::tensor_basis::verify_invariance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dims() {
        assert_eq!(cyclic_invariant_dim(3, 2).unwrap(), 3);
        assert_eq!(cyclic_invariant_dim(7, 1).unwrap(), 1);
        assert_eq!(cyclic_invariant_dim(4, 3).unwrap(), 16);
        assert_eq!(translation_invariant_dim(2, 2).unwrap(), 4);
        assert_eq!(translation_invariant_dim(5, 1).unwrap(), 1);
        assert_eq!(translation_invariant_dim(3, 2).unwrap(), 9);
        assert!(cyclic_invariant_dim(0, 2).is_err());
    }

    #[test]
    fn dims_match_oracles() {
        let b = Budget::default();
        assert_eq!(orbit_count_on_tuples(&cyclic_generators(4).unwrap(), 3, &b).unwrap(), 16);
        assert_eq!(burnside_count_u64(&translation_generators(3).unwrap(), 2, 100).unwrap(), 9);
    }

    #[test]
    fn difference_diagonals() {
        let basis = cyclic_basis(3, 2, &Budget::default()).unwrap();
        assert_eq!(basis.len(), 3);
        for (c, b) in basis.iter().enumerate() {
            let expect: Vec<Vec<usize>> = {
                let mut v: Vec<Vec<usize>> = (0..3).map(|i| vec![i, (i + c) % 3]).collect();
                v.sort();
                v
            };
            assert_eq!(b.support(), expect.as_slice());
        }
        let b1 = cyclic_basis(2, 1, &Budget::default()).unwrap();
        assert_eq!(b1.len(), 1);
        assert_eq!(b1[0].support(), &[vec![0], vec![1]]);
        let b3 = cyclic_basis(2, 3, &Budget::default()).unwrap();
        assert_eq!(b3.len(), 4);
        assert!(b3.iter().all(|b| b.support().len() == 2));
    }

    #[test]
    fn cyclic_basis_is_invariant() {
        let g = cyclic_generators(5).unwrap();
        for b in cyclic_basis(5, 3, &Budget::default()).unwrap() {
            assert!(verify_invariance(&b, &g));
        }
    }

    #[test]
    fn constant_and_delta_spectra() {
        let c = 2.5;
        let z = dft2(&GridImage::new(3, vec![c; 9]).unwrap());
        assert!((z.get(0, 0) - Complex64::new(c * 9.0, 0.0)).norm() < 1e-12);
        for a in 0..3 {
            for b in 0..3 {
                if (a, b) != (0, 0) {
                    assert!(z.get(a, b).norm() < 1e-12);
                }
            }
        }
        let mut px = vec![0.0; 16];
        px[0] = 1.0;
        let z = dft2(&GridImage::new(4, px).unwrap());
        assert!(z.coeffs().iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn round_trip_parseval_and_conjugate_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = GridImage::random(4, &mut rng);
        assert!(round_trip_error(&x) <= 1e-12);
        let z = dft2(&x);
        let energy: f64 = x.pixels().iter().map(|v| v * v).sum();
        assert!((z.norm_sqr() - 16.0 * energy).abs() < 1e-9);
        for a in 0..4 {
            for b in 0..4 {
                assert!((z.get(-a, -b) - z.get(a, b).conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn diagonalization_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        assert_eq!(verify_diagonalization(1, 3, &mut rng), 0.0);
        assert!(verify_diagonalization(2, 5, &mut rng) <= 1e-14);
        assert!(verify_diagonalization(5, 50, &mut rng) <= 1e-9);
    }

    #[test]
    fn csv_parsing() {
        let img = GridImage::from_csv("1,2\n3,4\n").unwrap();
        assert_eq!(img.get(1, 0), 3.0);
        assert!(GridImage::from_csv("1,2\n3\n").is_err());
        match GridImage::from_csv("1,2\n3,x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
