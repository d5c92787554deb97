//! Davenport constant of Z_d x Z_d by exhaustive search, and factoring
//! invariant monomials into zero-sum pieces of degree at most 2d - 1.
//!
//! cargo run --release --example zero_sum_bounds -- 4

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensorsym::selftest::random_zero_sum;
use tensorsym::zero_sum::{davenport_constant, decompose_invariant_monomial, max_generator_degree_translation};

fn main() -> tensorsym::Result<()> {
    let max_d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for d in 1..=max_d {
        let cert = davenport_constant(d, 5_000_000_000)?;
        println!(
            "d={d}: D={:?} longest zero-sum-free {} witness {} ({} nodes)",
            cert.davenport_constant,
            cert.max_zero_sum_free_length,
            serde_json::to_string(&cert.witness)?,
            cert.nodes_visited
        );
    }

    let cert = max_generator_degree_translation(3, 0, 0)?;
    println!(
        "d=3: generator degree bound {} with indecomposable monomial {}",
        cert.max_degree,
        serde_json::to_string(&cert.indecomposable)?
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = random_zero_sum(3, 14, &mut rng)?;
    println!("monomial of degree {}: {}", s.degree(), serde_json::to_string(&s)?);
    for f in decompose_invariant_monomial(&s)? {
        println!("  factor of degree {}: {}", f.degree(), serde_json::to_string(&f)?);
    }
    Ok(())
}
