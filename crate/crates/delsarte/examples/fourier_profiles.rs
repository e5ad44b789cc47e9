// Symmetric-profile Fourier analysis: transforms, Parseval, convolution,
// and the brute-force cross-check against the full 2^n Walsh transform.

use delsarte::dense::DenseCubeFunction;
use delsarte::fourier::{sphere_aware_convolve, Cube};
use delsarte::profile::{Side, SymmetricProfile};
use delsarte::scalar::{rat_to_str, ratio};
use delsarte::Result;

fn main() -> Result<()> {
    let n = 10;
    let cube = Cube::new(n);

    let ball = SymmetricProfile::ball(n, 3)?;
    let hat = cube.fourier(&ball)?;
    println!("1_B(10,3) transform:");
    for s in 0..=n {
        println!("  s = {s:>2}: {}", rat_to_str(hat.get(s)));
    }
    assert_eq!(cube.inverse(&hat)?, ball);
    println!("inverse transform returns the ball exactly");

    let lhs = cube.inner(&ball, &ball)?;
    let rhs = cube.fourier_inner(&hat, &hat)?;
    assert_eq!(lhs, rhs);
    println!("Parseval: ⟨f,f⟩ = {}", rat_to_str(&lhs));

    // δ = 2^n·1_0 is the convolution identity
    let delta = SymmetricProfile::delta(n);
    let f = SymmetricProfile::new(
        n,
        Side::Point,
        (0..=n).map(|i| ratio(1, 1 + i as i64)).collect(),
    )?;
    assert_eq!(cube.convolve(&delta, &f)?, f);
    println!("δ ∗ f = f");

    // sparse sphere path and the generic transform path agree
    let sphere2 = SymmetricProfile::sphere(n, 2)?.scaled(&ratio(1 << n, 1));
    let a = sphere_aware_convolve(&cube, &sphere2, &f)?;
    let b = cube.convolve(&sphere2, &f)?;
    assert_eq!(a, b);
    println!("sphere convolution shortcut matches the transform route");

    // profile engine vs the dense 2^n-point engine, every weight class
    let dense = DenseCubeFunction::from_profile(&f)?;
    let dense_hat = dense.fourier().symmetrize(Side::Fourier)?;
    assert_eq!(dense_hat, cube.fourier(&f)?);
    println!("dense Walsh engine agrees on all {} weight classes", n + 1);
    Ok(())
}
