//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tensorsym::combinat::gen_bell;
use tensorsym::cyclic::{
    cyclic_basis, cyclic_invariant_dim, round_trip_error, translation_invariant_dim, verify_diagonalization, GridImage,
};
use tensorsym::invariant_ring::{sweep, CapPolicy, GeneratorOptions, Verdict};
use tensorsym::layers::{finite_diff_check, permute_vec, Activation, EquivariantMap, InvariantNetwork};
use tensorsym::permgroup::{
    burnside_count, cyclic_generators, orbit_count_on_tuples, translation_generators, young_generators, TypedNodeSet,
};
use tensorsym::selftest::random_zero_sum;
use tensorsym::tensor_basis::{
    apply_functional, build_full_basis, equivariant_basis, nonempty_count, DenseTensor,
};
use tensorsym::zero_sum::{
    classical_witness, davenport_constant, decompose_invariant_monomial, has_zero_sum_subsequence_exhaustive,
    is_zero_sum, GroupSequence,
};
use tensorsym::Budget;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

type Criterion = fn() -> Result<Outcome, tensorsym::Error>;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn dimension_tables() -> Result<Outcome, tensorsym::Error> {
    let start = Instant::now();
    let mut ok = (1..=3).map(|k| gen_bell(1, k)).collect::<Vec<_>>() == vec![big(1), big(2), big(5)];
    let polys: [fn(u64) -> u64; 4] = [
        |m| m,
        |m| m * m + m,
        |m| m.pow(3) + 3 * m * m + m,
        |m| m.pow(4) + 6 * m.pow(3) + 7 * m * m + m,
    ];
    for (i, p) in polys.iter().enumerate() {
        for m in 1..=4 {
            ok &= gen_bell(m, i + 1) == big(p(m));
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    Ok(outcome(ok, format!("m=1 row and k<=4 polynomials at m=1..4 in {elapsed:?}")))
}

fn oracle_equivalence() -> Result<Outcome, tensorsym::Error> {
    let start = Instant::now();
    let budget = Budget::default();
    let mut cases = 0;
    let mut ok = true;
    for m in 1..=3usize {
        for k in 1..=3usize {
            for mask in 0..(1u32 << m) {
                let sizes: Vec<usize> = (0..m).map(|j| k + (mask >> j & 1) as usize).collect();
                let t = TypedNodeSet::new(sizes)?;
                let g = young_generators(&t);
                let basis = nonempty_count(&build_full_basis(k, &t, &budget)?) as u64;
                let orbits = orbit_count_on_tuples(&g, k, &budget)?;
                let burnside = burnside_count(&g, k, budget.group)?;
                let formula = gen_bell(m as u64, k);
                ok &= big(basis) == formula && big(orbits) == formula && burnside == formula;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    Ok(outcome(ok, format!("{cases} type partitions in {elapsed:?}")))
}

fn figure_counts() -> Result<Outcome, tensorsym::Error> {
    let budget = Budget::default();
    let t = TypedNodeSet::new(vec![3, 3])?;
    let maps2 = nonempty_count(&equivariant_basis(1, 1, &t, &budget)?);
    let maps3 = nonempty_count(&equivariant_basis(2, 1, &t, &budget)?);

    // the six k=2 functionals, written out per type block
    let t = TypedNodeSet::new(vec![3, 2])?;
    let (k1, k2) = (t.block(0), t.block(1));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = DenseTensor::from_fn(t.n(), 2, &budget, |_| rng.gen_range(-1.0..1.0))?;
    let diag = |r: std::ops::Range<usize>| r.map(|i| x.get(&[i, i])).sum::<f64>();
    let off = |r: std::ops::Range<usize>| {
        r.clone()
            .flat_map(|i| r.clone().filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| x.get(&[i, j]))
            .sum::<f64>()
    };
    let cross = |a: std::ops::Range<usize>, b: std::ops::Range<usize>| {
        a.flat_map(|i| b.clone().map(move |j| (i, j)))
            .map(|(i, j)| x.get(&[i, j]))
            .sum::<f64>()
    };
    let mut closed = [
        diag(k1.clone()),
        diag(k2.clone()),
        off(k1.clone()),
        off(k2.clone()),
        cross(k1.clone(), k2.clone()),
        cross(k2, k1),
    ];
    let basis = build_full_basis(2, &t, &budget)?;
    let mut computed: Vec<f64> = basis.iter().map(|b| apply_functional(b, &x)).collect::<Result<_, _>>()?;
    closed.sort_by(f64::total_cmp);
    computed.sort_by(f64::total_cmp);
    let dev = closed
        .iter()
        .zip(&computed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let ok = maps2 == 6 && maps3 == 22 && computed.len() == 6 && dev <= 1e-12;
    Ok(outcome(ok, format!("{maps2} maps for k+d=2, {maps3} for k+d=3, functional deviation {dev:e}")))
}

fn layer_properties() -> Result<Outcome, tensorsym::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = TypedNodeSet::new(vec![20, 15, 10, 5])?;
    let gens = young_generators(&t);
    let mut eq_dev: f64 = 0.0;
    let mut inv_dev: f64 = 0.0;
    let mut jac_dev: f64 = 0.0;
    for trial in 0..100 {
        let e = EquivariantMap::random(t.clone(), true, &mut rng);
        let net = InvariantNetwork::random(&t, &[2, 3, 2], &[4, 1], Activation::Relu, &mut rng)?;
        let x: Vec<f64> = (0..t.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let xs: Vec<Vec<f64>> = (0..2)
            .map(|_| (0..t.n()).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let y = e.forward(&x)?;
        let f = net.forward(&xs)?;
        for p in gens.generators() {
            let lhs = e.forward(&permute_vec(p, &x))?;
            let rhs = permute_vec(p, &y);
            eq_dev = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(eq_dev, f64::max);
            let pxs: Vec<Vec<f64>> = xs.iter().map(|c| permute_vec(p, c)).collect();
            let fp = net.forward(&pxs)?;
            inv_dev = fp.iter().zip(&f).map(|(a, b)| (a - b).abs()).fold(inv_dev, f64::max);
        }
        if trial < 10 {
            jac_dev = jac_dev.max(finite_diff_check(&e, &x, 1e-5)?);
        }
    }
    let ok = eq_dev <= 1e-12 && inv_dev <= 1e-12 && jac_dev <= 1e-6;
    Ok(outcome(
        ok,
        format!("n=50 m=4: equivariance {eq_dev:e}, invariance {inv_dev:e}, jacobian {jac_dev:e}"),
    ))
}

fn cyclic_dimensions() -> Result<Outcome, tensorsym::Error> {
    let budget = Budget::default();
    let mut ok = true;
    for n in 1..=6usize {
        for k in 1..=4u32 {
            let g = cyclic_generators(n)?;
            let expect = (n as u128).pow(k - 1);
            ok &= cyclic_invariant_dim(n, k as usize)? == expect;
            ok &= orbit_count_on_tuples(&g, k as usize, &budget)? as u128 == expect;
            ok &= burnside_count(&g, k as usize, budget.group)? == BigUint::from(expect);
            let basis = cyclic_basis(n, k as usize, &budget)?;
            let mut seen = vec![false; n.pow(k)];
            for b in &basis {
                ok &= b.support().len() == n;
                for tuple in b.support() {
                    let idx = tuple.iter().fold(0, |acc, &i| acc * n + i);
                    ok &= !std::mem::replace(&mut seen[idx], true);
                }
            }
            ok &= seen.iter().all(|&s| s);
        }
    }
    for d in 1..=3usize {
        for k in 1..=3u32 {
            let g = translation_generators(d)?;
            let expect = (d as u128).pow(2 * k - 2);
            ok &= translation_invariant_dim(d, k as usize)? == expect;
            ok &= orbit_count_on_tuples(&g, k as usize, &budget)? as u128 == expect;
            ok &= burnside_count(&g, k as usize, budget.group)? == BigUint::from(expect);
        }
    }
    Ok(outcome(ok, "C_n for n<=6 k<=4, C_d x C_d for d<=3 k<=3"))
}

fn dft_diagonalization() -> Result<Outcome, tensorsym::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut diag: f64 = 0.0;
    let mut rt: f64 = 0.0;
    for d in 1..=8 {
        diag = diag.max(verify_diagonalization(d, 50, &mut rng));
        for _ in 0..50 {
            rt = rt.max(round_trip_error(&GridImage::random(d, &mut rng)));
        }
    }
    Ok(outcome(diag <= 1e-9 && rt <= 1e-12, format!("d<=8: diagonalization {diag:e}, round trip {rt:e}")))
}

fn davenport() -> Result<Outcome, tensorsym::Error> {
    let start = Instant::now();
    let c2 = davenport_constant(2, u64::MAX / 2)?;
    let c3 = davenport_constant(3, u64::MAX / 2)?;
    let elapsed = start.elapsed();
    let mut ok = c2.complete && c3.complete;
    ok &= c2.davenport_constant == Some(3) && c2.witness.degree() == 2;
    ok &= c3.davenport_constant == Some(5) && c3.witness.degree() == 4;
    ok &= !has_zero_sum_subsequence_exhaustive(&c2.witness) && !has_zero_sum_subsequence_exhaustive(&c3.witness);
    for d in 2..=6 {
        let w = classical_witness(d)?;
        ok &= w.degree() == 2 * d - 2 && !has_zero_sum_subsequence_exhaustive(&w);
    }
    ok &= elapsed < Duration::from_secs(300);
    Ok(outcome(ok, format!("D(2)=3, D(3)=5 certified in {elapsed:?}; witnesses zero-sum free for d<=6")))
}

fn decomposition() -> Result<Outcome, tensorsym::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut passed = 0;
    let mut total = 0;
    for d in 2..=4usize {
        for _ in 0..200 {
            let degree = rng.gen_range(1..=6 * d);
            let s = random_zero_sum(d, degree, &mut rng)?;
            let factors = decompose_invariant_monomial(&s)?;
            let mut sum = GroupSequence::empty(d)?;
            let mut ok = true;
            for f in &factors {
                ok &= is_zero_sum(f) && f.degree() <= 2 * d - 1;
                sum = sum.plus(f);
            }
            ok &= sum == s;
            passed += usize::from(ok);
            total += 1;
        }
    }
    Ok(outcome(passed == total, format!("{passed}/{total} monomials factored")))
}

fn conjecture_sweep() -> Result<Outcome, tensorsym::Error> {
    let opts = GeneratorOptions::default();
    let start = Instant::now();
    let small = sweep(5, CapPolicy::Full, &opts, 0)?;
    let t_small = start.elapsed();
    let full_ok = small.reports.len() == 52
        && small.reports.iter().all(|r| {
            r.conjecture_a == Verdict::Holds
                && r.conjecture_b == Verdict::Holds
                && r.verified_up_to_degree >= r.n * (r.n - 1) / 2
        });
    let start = Instant::now();
    let six = sweep(6, CapPolicy::TwoN, &opts, 0)?;
    let t_six = start.elapsed();
    let six_reports: Vec<_> = six.reports.iter().filter(|r| r.n == 6).collect();
    let six_ok = six_reports.len() == 156 && six.counterexamples().count() == 0;
    let ok = full_ok && six_ok && t_small < Duration::from_secs(600) && t_six < Duration::from_secs(3600);
    Ok(outcome(
        ok,
        format!(
            "n<=5: {} reports fully certified in {t_small:?}; n=6: {} reports, {} violations within cap 2n in {t_six:?}",
            small.reports.len(),
            six_reports.len(),
            six.counterexamples().count()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("dimension tables", dimension_tables),
        ("oracle equivalence", oracle_equivalence),
        ("figure counts", figure_counts),
        ("layer properties", layer_properties),
        ("cyclic and translation dimensions", cyclic_dimensions),
        ("DFT diagonalization", dft_diagonalization),
        ("Davenport constant", davenport),
        ("zero-sum decomposition", decomposition),
        ("conjecture sweep", conjecture_sweep),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("{mark} criterion {}: {name}: {}", i + 1, o.detail);
        failures += usize::from(!o.passed);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
