// The inequality chain that forces strong witnesses to have large support,
// traced on concrete profiles: Fourier mass → window split → Krawtchouk
// ratio estimates → the final display with a measured (not estimated) tail.

use delsarte::chain::{
    chain_eval, lambda_distribution, p_polynomial, property3_check, ratio_bounds,
    tail_mass,
};
use delsarte::constructions::example1;
use delsarte::fourier::Cube;
use delsarte::profile::SymmetricProfile;
use delsarte::scalar::{rat_to_str, ratio, Rat};
use num::ToPrimitive;

fn f64_of(r: &Rat) -> f64 {
    r.to_f64().unwrap()
}

fn main() {
    let n = 60;
    let d = 12;
    let beta = ratio(1, 3); // window [βn, (1-β)n] = [20, 40], δ = 0.2 < β
    let cube = Cube::new(n);
    let c = example1(&cube, d).unwrap();
    let (f, g) = (&c.witness.f, &c.witness.g);

    let lam = lambda_distribution(&cube, f).unwrap();
    let peak = (0..=n).max_by(|&a, &b| lam.weights[a].cmp(&lam.weights[b])).unwrap();
    let tail = tail_mass(&lam, &beta).unwrap();
    println!(
        "ball witness: λ-mass peaks at weight {peak}, tail outside [20, 40] = {:.4}",
        f64_of(&tail)
    );

    let p = p_polynomial(g, 1).unwrap();
    let p3 = property3_check(&lam, &p, d).unwrap();
    println!(
        "property 3: Σ λ_i P(i) = {:.4} ≥ P(d) = {:.1}, margin ≥ τ - ρ > 0",
        f64_of(&p3.lhs),
        f64_of(&p3.rhs)
    );

    let report = chain_eval(&cube, f, g, d, &beta, 1).unwrap();
    println!(
        "three ranges: low {:.4} + mid {:.4} + high {:.4} re-sum exactly",
        f64_of(&report.range_low),
        f64_of(&report.range_mid),
        f64_of(&report.range_high)
    );
    println!(
        "final display holds with room ({:.1} ≤ {:.1}): implied support r ≥ {}",
        f64_of(&report.final_lhs),
        f64_of(&report.final_rhs),
        report.implied_r.unwrap()
    );
    println!(
        "→ nearly all λ-mass escapes the window, so the chain asks nothing of\n\
         \u{20}  this witness — consistent with its rate sitting far above jpl1\n"
    );

    // The display only constrains anything once (1-2β)/(2β-2δ) < 1, i.e.
    // β > 1/4 + δ/2. Push β there and feed in a profile engineered to
    // concentrate: f̂ = 1 on the middle sphere, so the λ-distribution is a
    // point mass at n/2 and the measured tail is exactly zero. The final
    // display then fails for every support radius r — and property 3 rules
    // the shape out independently. A witness beating the JPL rate would
    // need the small tail *and* property 3; the chain says: not with small r.
    let beta2 = ratio(3, 8);
    let hat_spike = SymmetricProfile::new(
        n,
        delsarte::Side::Fourier,
        SymmetricProfile::sphere(n, n / 2).unwrap().values().to_vec(),
    )
    .unwrap();
    let mid = cube.inverse(&hat_spike).unwrap();
    let lam2 = lambda_distribution(&cube, &mid).unwrap();
    let tail2 = tail_mass(&lam2, &beta2).unwrap();
    let p32 = property3_check(&lam2, &p, d).unwrap();
    let report2 = chain_eval(&cube, &mid, g, d, &beta2, 1).unwrap();
    println!(
        "concentrated profile at β = 3/8: tail = {}, property 3 {} (lhs = {:.1}),\n\
         final display for r = 1 {}; implied_r = {:?} — no radius reconciles it",
        rat_to_str(&tail2),
        if p32.holds { "holds" } else { "fails" },
        f64_of(&p32.lhs),
        if report2.final_holds { "holds" } else { "fails" },
        report2.implied_r
    );

    // the ratio estimates behind the middle window, re-verified pointwise
    println!("\nKrawtchouk ratio estimates at β = 1/3 (needs x_1(m) - 1 > βn):");
    println!("{:>3} {:>12} {:>12} {:>6} {:>9}", "m", "(2β-2δ)^m", "x_1(m)", "pre", "verified");
    for m in 0..=6usize {
        let rb = ratio_bounds(n, m, d, &beta).unwrap();
        println!(
            "{m:>3} {:>12.6} {:>12} {:>6} {:>9}",
            f64_of(&rb.lb),
            rb.first_root.map_or("-".into(), |x| format!("{x:.4}")),
            rb.precondition_ok,
            rb.verified
        );
    }
}
