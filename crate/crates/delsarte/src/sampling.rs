//! Seeded random witnesses and profiles for stress tests.
//!
//! All randomness flows through caller-provided seeds into ChaCha streams,
//! so every "random" suite replays byte-for-byte on any platform.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num::{One, Signed, Zero};

use crate::certificate::{verify_witness, PairWitness};
use crate::constructions::{example1, smallest_ball_radius, BallSpectrum};
use crate::error::{Error, Result};
use crate::fourier::{sphere_aware_convolve, Cube};
use crate::krawtchouk::kraw_eval_int;
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{binomial, rat, ratio, Int, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Profile with small random rational entries, signs included — raw material
/// for transform identities, not a witness.
pub fn random_profile(rng: &mut impl Rng, n: usize, side: Side) -> SymmetricProfile {
    const DENOMS: [i64; 6] = [1, 2, 3, 4, 8, 16];
    let values = (0..=n)
        .map(|_| {
            let num = rng.gen_range(-12i64..=12);
            let den = DENOMS[rng.gen_range(0..DENOMS.len())];
            ratio(num, den)
        })
        .collect();
    SymmetricProfile::new(n, side, values).expect("value count matches n + 1")
}

/// Random valid pair witness for `(n, d)` with `d < n/2`.
///
/// `f` is a jittered ball eigenprofile; `g` mixes the identity, the
/// first sphere, and a small second-sphere component. `τ` and `ρ` are the
/// exact optimum values for the sampled pair, so the witness is as tight as
/// its own data allows. The second-sphere coefficient is capped at
/// `3/8 · c_1 / C(n,2)`, which keeps the tail of `ĝ` under the spectral
/// margin; failed draws are retried, and the last resort is the
/// deterministic ball construction for the same `(n, d)`.
pub fn random_witness(cube: &Cube, d: usize, rng: &mut impl Rng) -> Result<PairWitness> {
    let n = cube.n();
    if d == 0 || 2 * d >= n {
        return Err(Error::Domain(format!(
            "witness sampling needs 1 ≤ d < n/2, got n = {n}, d = {d}"
        )));
    }
    let target = rat(n as i64 - 2 * d as i64 + 1);
    let base = smallest_ball_radius(n, &target)?;
    let two_n = Rat::from_integer(Int::one() << n);

    for _ in 0..4 {
        let radius = (base + rng.gen_range(0..=1)).min(n);
        let spectrum = BallSpectrum::compute(n, radius)?;
        let mut f = spectrum.eigen_profile;
        for i in 0..=radius {
            // multiplicative jitter below 2^-8 per entry; keeps positivity
            // and loses at most ~1% of the amplification ratio
            let j = ratio(rng.gen_range(-255i64..=255), 65536);
            let v = f.get(i) * (Rat::one() + j);
            f.set(i, v);
        }
        let c0 = ratio(rng.gen_range(0..=8), 4);
        let c1 = ratio(rng.gen_range(1..=12), 8);
        let pairs = binomial(n, 2);
        let c2 = &c1 * ratio(rng.gen_range(0..=3), 8) / Rat::from_integer(pairs);
        let coeffs = [c0, c1, c2];

        let mut g = SymmetricProfile::zeros(n, Side::Point);
        for (m, c) in coeffs.iter().enumerate() {
            g.set(m, c * &two_n);
        }
        let mut rho = Rat::zero();
        for s in d..=n {
            let mut v = Rat::zero();
            for (m, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    v += c * Rat::from_integer(kraw_eval_int(n, m, s)?);
                }
            }
            if s == d || v > rho {
                rho = v;
            }
        }
        let conv = sphere_aware_convolve(cube, &g, &f)?;
        let mut tau: Option<Rat> = None;
        for i in 0..=n {
            if f.get(i).is_positive() {
                let r = conv.get(i) / f.get(i);
                if tau.as_ref().map_or(true, |t| r < *t) {
                    tau = Some(r);
                }
            }
        }
        let tau = tau.expect("eigenprofile support is nonempty");
        if tau <= rho {
            continue;
        }
        let w = PairWitness { f, g, tau, rho, d };
        if verify_witness(cube, &w)?.is_empty() {
            return Ok(w);
        }
    }
    Ok(example1(cube, d)?.witness)
}

/// `count` independent valid witnesses with 4 ≤ n ≤ 14, replayable from the
/// seed alone.
pub fn witness_batch(count: usize, seed: u64) -> Result<Vec<PairWitness>> {
    let mut r = rng(seed);
    let mut cubes: HashMap<usize, Cube> = HashMap::new();
    (0..count)
        .map(|_| {
            let n = r.gen_range(4usize..=14);
            let d = r.gen_range(1..=(n - 1) / 2);
            let cube = cubes.entry(n).or_insert_with(|| Cube::new(n));
            random_witness(cube, d, &mut r)
        })
        .collect()
}
