//! Translation invariance on d x d images: invariant dimensions, the DFT
//! that diagonalizes translations, and invariant spectral monomials.
//!
//! cargo run --example translation_spectrum

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensorsym::cyclic::{dft2, round_trip_error, translation_invariant_dim, verify_diagonalization, GridImage};
use tensorsym::permgroup::{orbit_count_on_tuples, translation_generators};
use tensorsym::zero_sum::{is_zero_sum, GroupSequence};
use tensorsym::Budget;

fn main() -> tensorsym::Result<()> {
    let budget = Budget::default();
    for d in 2..=3 {
        for k in 1..=3 {
            let orbits = orbit_count_on_tuples(&translation_generators(d)?, k, &budget)?;
            println!("d={d} k={k}: d^(2k-2) = {} orbits = {orbits}", translation_invariant_dim(d, k)?);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in [3, 4, 8] {
        println!("d={d}: diagonalization deviation {:e}", verify_diagonalization(d, 5, &mut rng));
    }

    let x = GridImage::from_rows(&[vec![1.0, 2.0, 0.0], vec![0.0, 1.0, 3.0], vec![4.0, 0.0, 1.0]])?;
    println!("round trip error {:e}", round_trip_error(&x));
    let shifted = x.translate(1, 2);
    // z_{1,0} z_{2,0} has exponents summing to zero mod 3, so it is invariant
    let zero_sum = GroupSequence::from_elements(3, &[(1, 0), (2, 0)])?;
    let other = GroupSequence::from_elements(3, &[(1, 0), (1, 1)])?;
    for s in [zero_sum, other] {
        let eval = |img: &GridImage| {
            let z = dft2(img);
            s.elements()
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &(a, b)| acc * z.get(a as i64, b as i64))
        };
        println!(
            "monomial {:?} zero-sum={}: before {:.4} after {:.4}",
            s.elements(),
            is_zero_sum(&s),
            eval(&x),
            eval(&shifted)
        );
    }
    Ok(())
}
