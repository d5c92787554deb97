//! Dimensions of typed-invariant layer spaces: generalized Bell numbers
//! against orbit counting and Burnside's lemma.
//!
//! cargo run --example dimension_tables

use tensorsym::combinat::{gen_bell, gen_bell_polynomial};
use tensorsym::permgroup::{burnside_count, orbit_count_on_tuples, young_generators, TypedNodeSet};
use tensorsym::Budget;

fn main() -> tensorsym::Result<()> {
    println!("k  polynomial in m (coefficients of m^1..m^k)   m=1   m=2   m=3   m=4");
    for k in 1..=5 {
        let coeffs: Vec<String> = gen_bell_polynomial(k)[1..].iter().map(|c| c.to_string()).collect();
        let values: Vec<String> = (1..=4).map(|m| format!("{:>5}", gen_bell(m, k))).collect();
        println!("{k}  {:<44} {}", coeffs.join(" "), values.join(" "));
    }

    println!();
    println!("cross-check on explicit type sizes");
    let budget = Budget::default();
    for sizes in [vec![3, 3], vec![4, 3, 3], vec![2, 1]] {
        let t = TypedNodeSet::new(sizes.clone())?;
        let g = young_generators(&t);
        for k in 1..=3 {
            let orbits = orbit_count_on_tuples(&g, k, &budget)?;
            let burnside = burnside_count(&g, k, budget.group)?;
            println!(
                "sizes {sizes:?} k={k}: formula {} orbits {orbits} burnside {burnside}",
                gen_bell(t.m() as u64, k)
            );
        }
    }
    // sizes [2, 1] with k = 2 shows the formula needs every type to have at least k nodes
    Ok(())
}
