//! Learnable order-1 layers: an equivariant map, its Jacobian, and an
//! invariant network checked against typed permutations.
//!
//! cargo run --example equivariant_layers

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorsym::layers::{finite_diff_check, permute_vec, Activation, EquivariantMap, InvariantNetwork, LayerWeights};
use tensorsym::permgroup::{young_generators, TypedNodeSet};

fn main() -> tensorsym::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let t = TypedNodeSet::new(vec![4, 3, 2])?;
    let layer = EquivariantMap::random(t.clone(), true, &mut rng);
    println!("parameters (without bias): {}", layer.parameter_count());
    println!("weights: {}", serde_json::to_string(&LayerWeights::from(&layer))?);

    let x: Vec<f64> = (0..t.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let y = layer.forward(&x)?;
    let mut worst: f64 = 0.0;
    for p in young_generators(&t).generators() {
        let lhs = layer.forward(&permute_vec(p, &x))?;
        let rhs = permute_vec(p, &y);
        worst = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    println!("max |L(Px) - P L(x)| over typed generators: {worst:e}");
    println!("Jacobian vs central differences: {:e}", finite_diff_check(&layer, &x, 1e-5)?);

    let net = InvariantNetwork::random(&t, &[1, 4, 4], &[8, 1], Activation::Relu, &mut rng)?;
    let input = vec![x.clone()];
    let f = net.forward(&input)?;
    let mut swap: Vec<usize> = (0..t.n()).collect();
    swap.swap(0, 3);
    swap.swap(4, 6);
    let p = tensorsym::permgroup::Permutation::from_image(swap)?;
    let g = net.forward(&[permute_vec(&p, &x)])?;
    println!("network output {:.6} , after permutation {:.6}", f[0], g[0]);
    Ok(())
}
