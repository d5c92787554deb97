//! Reduced-scale property suites, one per command-line subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::combinat::{enumerate_colored_partitions, gen_bell, Caps};
use crate::cyclic::{cyclic_basis, cyclic_invariant_dim, round_trip_error, verify_diagonalization, GridImage};
use crate::error::Result;
use crate::graph::Graph;
use crate::invariant_ring::{
    check_conjectures, invariant_dim_by_degree, molien_hilbert_coeffs, CapPolicy, GeneratorOptions, Verdict,
    DEFAULT_MONOMIAL_BUDGET,
};
use crate::layers::{finite_diff_check, permute_vec, EquivariantMap};
use crate::permgroup::{cyclic_generators, orbit_count_on_tuples, young_generators, TypedNodeSet};
use crate::tensor_basis::{build_full_basis, nonempty_count, verify_invariance, verify_partition};
use crate::zero_sum::{
    classical_witness, davenport_constant, decompose_invariant_monomial, find_zero_sum_subsequence, is_zero_sum,
    GroupSequence, DEFAULT_SEARCH_BUDGET,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    fn new(suite: &str, seed: u64) -> Self {
        SelftestReport {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Suite names accepted by [`run`].
pub const SUITES: &[&str] = &[
    "dims",
    "basis",
    "layer-apply",
    "cyclic-dims",
    "dft",
    "davenport",
    "decompose",
    "conjectures",
];

pub fn run(suite: &str, seed: u64) -> Result<SelftestReport> {
    let mut r = SelftestReport::new(suite, seed);
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        "dims" => {
            for m in 1..=2usize {
                for k in 1..=3 {
                    let formula = gen_bell(m as u64, k);
                    let listed = enumerate_colored_partitions(k, m, &Caps::default())?.len();
                    let t = TypedNodeSet::new(vec![k; m])?;
                    let orbits = orbit_count_on_tuples(&young_generators(&t), k, &budget)?;
                    let ok = formula == listed.into() && formula == orbits.into();
                    r.check(format!("m={m} k={k}"), ok, format!("formula {formula}, listed {listed}, orbits {orbits}"));
                }
            }
        }
        "basis" => {
            for sizes in [vec![2, 1], vec![2, 2], vec![3]] {
                let t = TypedNodeSet::new(sizes.clone())?;
                let g = young_generators(&t);
                let basis = build_full_basis(2, &t, &budget)?;
                let ok = verify_partition(&basis, t.n(), 2)
                    && basis.iter().all(|b| verify_invariance(&b.tensor, &g))
                    && nonempty_count(&basis) as u64 == orbit_count_on_tuples(&g, 2, &budget)?;
                r.check(format!("k=2 sizes={sizes:?}"), ok, format!("{} elements", basis.len()));
            }
        }
        "layer-apply" => {
            let t = TypedNodeSet::new(vec![3, 2, 4])?;
            let gens = young_generators(&t);
            let mut worst: f64 = 0.0;
            let mut jac: f64 = 0.0;
            for _ in 0..10 {
                let e = EquivariantMap::random(t.clone(), true, &mut rng);
                let x: Vec<f64> = (0..t.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                for p in gens.generators() {
                    let lhs = e.forward(&permute_vec(p, &x))?;
                    let rhs = permute_vec(p, &e.forward(&x)?);
                    worst = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
                }
                jac = jac.max(finite_diff_check(&e, &x, 1e-5)?);
            }
            r.check("equivariance", worst <= 1e-12, format!("max deviation {worst:e}"));
            r.check("jacobian", jac <= 1e-6, format!("max deviation {jac:e}"));
        }
        "cyclic-dims" => {
            for n in 2..=4 {
                for k in 1..=3 {
                    let formula = cyclic_invariant_dim(n, k)?;
                    let orbits = orbit_count_on_tuples(&cyclic_generators(n)?, k, &budget)?;
                    let basis = cyclic_basis(n, k, &budget)?;
                    let sizes_ok = basis.iter().all(|b| b.support().len() == n);
                    r.check(
                        format!("n={n} k={k}"),
                        formula == orbits as u128 && basis.len() as u128 == formula && sizes_ok,
                        format!("formula {formula}, orbits {orbits}"),
                    );
                }
            }
        }
        "dft" => {
            for d in 1..=4 {
                let dev = verify_diagonalization(d, 5, &mut rng);
                let rt = round_trip_error(&GridImage::random(d, &mut rng));
                r.check(format!("d={d}"), dev <= 1e-9 && rt <= 1e-12, format!("diag {dev:e}, round trip {rt:e}"));
            }
        }
        "davenport" => {
            let cert = davenport_constant(2, 1_000_000)?;
            r.check(
                "d=2",
                cert.davenport_constant == Some(3) && cert.witness.degree() == 2,
                format!("{:?}", cert.davenport_constant),
            );
            for d in 2..=4 {
                let w = classical_witness(d)?;
                let free = find_zero_sum_subsequence(&w, DEFAULT_SEARCH_BUDGET)?.is_none();
                r.check(format!("witness d={d}"), free && w.degree() == 2 * d - 2, "");
            }
        }
        "decompose" => {
            for d in 2..=3 {
                let mut ok = true;
                for _ in 0..20 {
                    let s = random_zero_sum(d, 4 * d, &mut rng)?;
                    let factors = decompose_invariant_monomial(&s)?;
                    let mut total = GroupSequence::empty(d)?;
                    for f in &factors {
                        ok &= is_zero_sum(f) && f.degree() <= 2 * d - 1;
                        total = total.plus(f);
                    }
                    ok &= total == s;
                }
                r.check(format!("d={d}"), ok, "20 random monomials");
            }
        }
        "conjectures" => {
            for (name, g) in [("K3", Graph::complete(3)), ("star", Graph::star(3)), ("P4", Graph::path(4))] {
                let report = check_conjectures(&g, CapPolicy::Full, &GeneratorOptions::default())?;
                let aut = crate::graph::automorphism_group(&g);
                let molien = molien_hilbert_coeffs(&aut, 6)?;
                let mut dims_ok = true;
                for (deg, &m) in molien.iter().enumerate() {
                    dims_ok &= invariant_dim_by_degree(&aut, deg, DEFAULT_MONOMIAL_BUDGET)? == m;
                }
                let ok = dims_ok && report.conjecture_a == Verdict::Holds && report.conjecture_b == Verdict::Holds;
                r.check(name, ok, format!("beta_proxy {}", report.beta_proxy));
            }
        }
        other => {
            return Err(crate::error::Error::invalid(
                "selftest",
                format!("unknown suite {other:?}, expected one of {SUITES:?}"),
            ))
        }
    }
    Ok(r)
}

/// Random zero-sum sequence of the given degree over `Z_d^2`.
pub fn random_zero_sum(d: usize, degree: usize, rng: &mut impl Rng) -> Result<GroupSequence> {
    let mut s = GroupSequence::empty(d)?;
    for _ in 0..degree.saturating_sub(1) {
        s.push((rng.gen_range(0..d), rng.gen_range(0..d)), 1);
    }
    let (a, b) = s.sum();
    s.push(((d - a) % d, (d - b) % d), 1);
    Ok(s)
}
