// Grid search for a small-support witness that beats the first JPL bound.
// Spoiler: over degree-2 Krawtchouk combinations it never happens — the
// best verified rate hugs the jpl1 curve from above. The sweep is exact:
// every candidate that claims τ > ρ is re-verified before it may rank.

use delsarte::chain::{barrier_search, sweep_csv, GridSpec};
use delsarte::constructions::smallest_ball_radius;
use delsarte::fourier::Cube;
use delsarte::scalar::{rat, rat_to_str};

fn main() {
    let n = 60;
    let d = 12;
    let cube = Cube::new(n);

    // f family: balls just large enough to amplify past n - 2d, and a bit
    let base = smallest_ball_radius(n, &rat((n - 2 * d + 1) as i64)).unwrap();
    let radii = vec![base, base + 2];
    println!("f family: ball eigenprofiles with radii {radii:?}\n");

    let spec = GridSpec::normalized(n, 2, &rat(4), 6, radii);
    let out = barrier_search(&cube, d, 2, &spec).unwrap();

    let csv = sweep_csv(&out);
    let verified = out.rows.iter().filter(|r| r.verified).count();
    println!("{}", csv.lines().next().unwrap());
    for line in csv.lines().skip(1).take(8) {
        println!("{line}");
    }
    println!("... ({} rows, {verified} verified)\n", out.rows.len());

    let i = out.best_row.expect("the pure-a1 column always verifies");
    let best = &out.rows[i];
    let shown: Vec<String> = best.coeffs.iter().map(|c| rat_to_str(c)).collect();
    println!(
        "best: coeffs [{}], f radius {}, bound {}",
        shown.join(", "),
        best.f_radius,
        rat_to_str(&out.best.bound)
    );
    println!(
        "rate {:.6} vs jpl1 {:.6} — margin {:+.6}; no barrier breach",
        out.best.rate,
        out.best.rate - out.margin,
        out.margin
    );
}
