//! graph6 decoding, canonical forms, automorphism groups and the graded
//! invariant ring of a small graph.
//!
//! cargo run --example graph_symmetry -- CF

use tensorsym::graph::{automorphism_group, canonical_graph6, enumerate_graphs, parse_graph6};
use tensorsym::invariant_ring::{generator_degrees, invariant_dim_by_degree, molien_hilbert_coeffs, GeneratorOptions};

fn main() -> tensorsym::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "CF".to_string());
    let g = parse_graph6(&text)?;
    let aut = automorphism_group(&g);
    println!("{text}: n={} edges={} canonical {}", g.n(), g.edge_count(), canonical_graph6(&g)?);
    println!("|Aut| = {}", aut.order());
    for p in aut.elements() {
        println!("  {:?}", p.to_one_based());
    }

    let molien = molien_hilbert_coeffs(&aut, 6)?;
    for (d, m) in molien.iter().enumerate() {
        println!("degree {d}: {m} invariants (orbit count {})", invariant_dim_by_degree(&aut, d, 1_000_000)?);
    }
    let gens = generator_degrees(&aut, 6, &GeneratorOptions::default())?;
    println!("new generators by degree: {:?}, beta proxy {}", gens.counts(), gens.beta_proxy());

    let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n, 7).map(|v| v.len())).collect::<Result<_, _>>()?;
    println!("isomorphism classes for n = 1..6: {counts:?}");
    Ok(())
}
