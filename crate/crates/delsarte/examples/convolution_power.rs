// Convolution-power witnesses: g = (2^n 1_{S(1)})^{∗m} has ĝ_s = (n-2s)^m,
// which needs odd m to stay below ρ across the whole tail. The even powers
// fail loudly — worth seeing once.

use delsarte::constructions::example2;
use delsarte::fourier::Cube;
use delsarte::scalar::jpl1_rate;

fn main() {
    let n = 64;
    let cube = Cube::new(n);

    println!("n = {n}, m = 3:");
    println!("{:>5} {:>6} {:>10} {:>10} {:>8}", "d", "split", "rate", "jpl1", "gap");
    for d in [10usize, 12, 14, 16] {
        let c = example2(&cube, d, 3).unwrap();
        let jpl = jpl1_rate(d as f64 / n as f64).unwrap().value();
        println!(
            "{d:>5} {:>6} {:>10.6} {:>10.6} {:>+8.4}",
            c.split_radius,
            c.report.rate,
            jpl,
            c.report.rate - jpl
        );
    }

    // m = 2: (n-2s)^2 is ≥ 0 everywhere, so the tail condition at s = n is
    // hopeless; the constructor refuses rather than silently weakening ρ
    match example2(&cube, 10, 2) {
        Err(e) => println!("\nm = 2 is rejected as expected:\n  {e}"),
        Ok(_) => unreachable!("even powers cannot pass the tail condition"),
    }

    // m = 1 with a split-sphere f needs a split radius of n - 2d + 1, which
    // only fits under n/2 once δ > 1/4: small distances fail, large ones pass
    match example2(&cube, 10, 1) {
        Err(e) => println!("\nm = 1 at d = 10 is rejected:\n  {e}"),
        Ok(_) => unreachable!("split radius 45 cannot fit in n/2 = 32"),
    }
    let c = example2(&cube, 24, 1).unwrap();
    println!(
        "\nm = 1 at d = 24 verifies with split radius {} (rate {:.4}, jpl1 {:.4})",
        c.split_radius,
        c.report.rate,
        jpl1_rate(24.0 / 64.0).unwrap().value()
    );
}
