//! The orthogonal indicator basis for two node types: the six invariant
//! functionals on matrices, the 6 and 22 equivariant maps, and the basis
//! file format.
//!
//! cargo run --example typed_basis

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorsym::permgroup::TypedNodeSet;
use tensorsym::tensor_basis::{
    apply_functional, build_full_basis, equivariant_basis, nonempty_count, serialize_basis, verify_partition,
    DenseTensor,
};
use tensorsym::Budget;

fn main() -> tensorsym::Result<()> {
    let budget = Budget::default();
    let t = TypedNodeSet::new(vec![3, 2])?;

    let basis = build_full_basis(2, &t, &budget)?;
    println!("invariant functionals on 2-tensors, sizes {:?}: {}", t.sizes(), basis.len());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = DenseTensor::from_fn(t.n(), 2, &budget, |_| rng.gen_range(0.0..1.0))?;
    for b in &basis {
        let types: Vec<usize> = b.descriptor.axis_type().iter().map(|j| j + 1).collect();
        println!(
            "  axis types {types:?} blocks {:?}: {} tuples, L(x) = {:.4}",
            b.descriptor.typed_blocks(),
            b.tensor.support().len(),
            apply_functional(b, &x)?
        );
    }
    println!("supports partition [n]^2: {}", verify_partition(&basis, t.n(), 2));

    let maps = equivariant_basis(1, 1, &t, &budget)?;
    let maps2 = equivariant_basis(2, 1, &TypedNodeSet::new(vec![3, 3])?, &budget)?;
    println!("equivariant maps R^n -> R^n: {}", nonempty_count(&maps));
    println!("equivariant maps R^(n^2) -> R^n: {}", nonempty_count(&maps2));

    println!();
    println!("basis file for k=2, sizes [2, 1] (one element has empty support):");
    let small = TypedNodeSet::new(vec![2, 1])?;
    let basis = build_full_basis(2, &small, &budget)?;
    serialize_basis(std::io::stdout().lock(), &small, 2, None, &basis)?;
    Ok(())
}
