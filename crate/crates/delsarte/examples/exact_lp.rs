// The exact LP optimum: rational simplex over the Delsarte constraints,
// with the optimal Λ emitted as a checkable certificate.

use delsarte::fourier::Cube;
use delsarte::lp::{lp_bound, lp_optimum};
use delsarte::oracle::{exact_max_code, size_as_rat};
use delsarte::scalar::rat_to_str;

fn main() {
    println!("{:>3} {:>3} {:>12} {:>10} {:>8}", "n", "d", "LP optimum", "A(n,d)", "pivots");
    for n in 4..=7usize {
        let cube = Cube::new(n);
        for d in 1..=n {
            let sol = lp_optimum(&cube, d).unwrap();
            let exact = size_as_rat(&exact_max_code(n, d).unwrap());
            assert!(sol.optimum >= exact, "LP must dominate the true maximum");
            println!(
                "{n:>3} {d:>3} {:>12} {:>10} {:>8}",
                rat_to_str(&sol.optimum),
                rat_to_str(&exact),
                sol.pivots
            );
        }
    }

    // the optimum comes with a feasible dual certificate; show one in full
    let cube = Cube::new(7);
    let (sol, cert, report) = lp_bound(&cube, 3).unwrap();
    println!("\noptimal certificate at (n, d) = (7, 3):");
    for i in 0..=7 {
        println!(
            "  Λ({i}) = {:>8}   Λ̂({i}) = {}",
            rat_to_str(sol.lambda.get(i)),
            rat_to_str(cert.lambda_hat.get(i))
        );
    }
    println!(
        "bound {} — and indeed the Hamming code has 16 words",
        rat_to_str(&report.bound)
    );

    // fractional optima appear as soon as no perfect code exists: at
    // (8, 3) the LP gives 128/5 = 25.6 while the true maximum is 20
    let cube = Cube::new(8);
    let sol = lp_optimum(&cube, 3).unwrap();
    println!(
        "\nLP(8, 3) = {} — the integrality gap against A(8,3) = 20 is real",
        rat_to_str(&sol.optimum)
    );
}
