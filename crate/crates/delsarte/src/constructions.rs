//! Concrete witness families.
//!
//! The ball construction takes `g = 2^n 1_{S(1)}` and for `f` the top
//! eigenprofile of the adjacency operator truncated to a Hamming ball
//! `B(n, D)`, with `D` chosen as the smallest radius whose top eigenvalue
//! clears `n - 2d + 1`. The convolution-power construction raises the same
//! `g` to an `m`-fold convolution power, so `ĝ_s = (n - 2s)^m`, and pairs it
//! with a two-sphere `f`. Finally, any feasible certificate can be replayed
//! verbatim as a witness with `f` the convolution identity.
//!
//! Eigenvalue comparisons against rational thresholds are decided exactly
//! through integer characteristic-minor recurrences; floats only ever
//! narrow down where to look.

use num::{One, Signed, Zero};

use crate::certificate::{
    method, support_bound, verify_witness, witness_bound, BoundReport, Certificate, PairWitness,
};
use crate::error::{Error, Result};
use crate::fourier::Cube;
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{ball_size, dyadic_significant, rat_to_str, Int, Rat};

/// Number of eigenvalues of the symmetrized ball operator strictly below
/// `x`, by Sturm counting on the LDL pivots. The operator on `B(n, D)` is
/// tridiagonal with zero diagonal and couplings `e_j² = (j+1)(n-j)`.
fn eigen_count_below(n: usize, radius: usize, x: f64) -> usize {
    let mut pivot = -x;
    let mut count = usize::from(pivot < 0.0);
    for k in 1..=radius {
        if pivot == 0.0 {
            pivot = -1e-300;
        }
        let e2 = (k as f64) * ((n - k + 1) as f64);
        pivot = -x - e2 / pivot;
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// Float estimate of the top eigenvalue of the ball operator on `B(n, D)`.
fn float_lambda_max(n: usize, radius: usize) -> f64 {
    if radius == 0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, n as f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if eigen_count_below(n, radius, mid) == radius + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact decision `λ_max(B(n, radius)) ≥ tau`, via the integer-cleared
/// characteristic minors `E_0 = 1`, `E_1 = p`,
/// `E_k = p E_{k-1} - q² (k-1)(n-k+2) E_{k-2}` for `tau = p/q`: the
/// threshold is reached iff some `E_k ≤ 0` with `1 ≤ k ≤ radius + 1`.
pub fn lambda_max_at_least(n: usize, radius: usize, tau: &Rat) -> bool {
    if radius > n {
        // B(n, r) = B(n, n) for r > n; clamp so minors stay meaningful
        return lambda_max_at_least(n, n, tau);
    }
    if !tau.is_positive() {
        return true; // the operator is nonnegative, so λ_max ≥ 0
    }
    let p = tau.numer().clone();
    let q2 = tau.denom() * tau.denom();
    let mut prev = Int::one();
    let mut cur = p.clone();
    if !cur.is_positive() {
        return true;
    }
    for k in 2..=radius + 1 {
        let e2 = Int::from((k - 1) * (n + 2 - k));
        let next = &p * &cur - &q2 * e2 * &prev;
        if !next.is_positive() {
            return true;
        }
        prev = cur;
        cur = next;
    }
    false
}

/// Smallest radius `D` with `λ_max(B(n, D)) ≥ tau`. Monotone by
/// interlacing, so binary search over `D` with exact decisions.
pub fn smallest_ball_radius(n: usize, tau: &Rat) -> Result<usize> {
    if !lambda_max_at_least(n, n, tau) {
        return Err(Error::ConstructionFailed(format!(
            "no ball in dimension {n} reaches eigenvalue {}",
            rat_to_str(tau)
        )));
    }
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if lambda_max_at_least(n, mid, tau) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

/// Top eigenprofile by the forward recurrence
/// `f_{i+1} = (λ f_i - i f_{i-1}) / (n - i)`, normalized to `f_0 = 1`.
fn float_eigen_profile(n: usize, radius: usize, lambda: f64) -> Vec<f64> {
    let mut f = vec![0.0; radius + 1];
    f[0] = 1.0;
    if radius >= 1 {
        f[1] = lambda / n as f64;
    }
    for i in 1..radius {
        f[i + 1] = (lambda * f[i] - i as f64 * f[i - 1]) / (n - i) as f64;
    }
    f
}

#[derive(Clone, Debug)]
pub struct BallSpectrum {
    pub n: usize,
    pub radius: usize,
    /// Float estimate of the top eigenvalue.
    pub lambda_max: f64,
    /// Exact rational enclosure `lo ≤ λ_max ≤ hi` of width at most `1e-9 n`.
    pub enclosure: (Rat, Rat),
    /// Rationalized top eigenprofile on `B(n, radius)` (point side).
    pub eigen_profile: SymmetricProfile,
}

impl BallSpectrum {
    pub fn compute(n: usize, radius: usize) -> Result<Self> {
        if n == 0 || radius > n {
            return Err(Error::Domain(format!(
                "ball spectrum needs 1 ≤ n and radius ≤ n, got n = {n}, radius = {radius}"
            )));
        }
        let lambda_max = float_lambda_max(n, radius);
        // certified enclosure: pad the float value, then verify and shrink
        let pad = Rat::new(Int::one(), Int::one() << 20);
        let mut lo = dyadic_significant(lambda_max, 53)? - &pad;
        if lo.is_negative() {
            lo = Rat::zero();
        }
        let mut hi = dyadic_significant(lambda_max, 53)? + &pad;
        while !lambda_max_at_least(n, radius, &lo) {
            lo -= &pad; // float estimate was high; widen downwards
        }
        while lambda_max_at_least(n, radius, &hi) {
            hi += &pad;
        }
        let eps = Rat::new(Int::one(), Int::from(1_000_000_000u64)) * Rat::from_integer(Int::from(n));
        while &hi - &lo > eps {
            let mid = (&lo + &hi) / Rat::from_integer(Int::from(2));
            if lambda_max_at_least(n, radius, &mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let floats = float_eigen_profile(n, radius, lambda_max);
        let eigen_profile = rationalized_profile(n, &floats, 48)?;
        Ok(BallSpectrum {
            n,
            radius,
            lambda_max,
            enclosure: (lo, hi),
            eigen_profile,
        })
    }
}

/// Embed ball-profile floats into a full-length rational profile with
/// `sig_bits` significant bits per entry. Relative rounding matters here: a
/// fixed absolute grid would flatten the decaying tail of an eigenprofile
/// and wreck the ratio `(g∗f)_i / f_i` precisely where it is tightest.
fn rationalized_profile(n: usize, floats: &[f64], sig_bits: u32) -> Result<SymmetricProfile> {
    let mut p = SymmetricProfile::zeros(n, Side::Point);
    for (i, &v) in floats.iter().enumerate() {
        p.set(i, dyadic_significant(v, sig_bits)?);
    }
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct BallConstruction {
    pub witness: PairWitness,
    pub report: BoundReport,
    pub radius: usize,
    pub lambda_estimate: f64,
}

/// Ball-eigenprofile witness for `(n, d)`: `g = 2^n 1_{S(1)}`, `ρ = n - 2d`,
/// `f` the eigenprofile of the smallest ball whose eigenvalue beats
/// `n - 2d + 1`, and `τ` the exact minimum of `(g∗f)_i / f_i` over the
/// support. The reported bound is the support variant, roughly
/// `2d · |B(n, D)|`.
pub fn example1(cube: &Cube, d: usize) -> Result<BallConstruction> {
    let n = cube.n();
    if d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    let target = Rat::from_integer(Int::from(n as i64 - 2 * d as i64 + 1));
    let radius = smallest_ball_radius(n, &target)?;
    let lambda_estimate = float_lambda_max(n, radius);
    let floats = float_eigen_profile(n, radius, lambda_estimate);
    let rho = Rat::from_integer(Int::from(n as i64 - 2 * d as i64));
    let g = SymmetricProfile::sphere(n, 1)?.scaled(&Rat::from_integer(Int::one() << n));

    for sig_bits in [48u32, 80, 112] {
        let f = rationalized_profile(n, &floats, sig_bits)?;
        if (0..=radius).any(|i| !f.get(i).is_positive()) {
            continue; // rounding collapsed the tail; retry finer
        }
        // exact minimum amplification ratio over the support, using the
        // sparse neighbor sums (g∗f)_i = i f_{i-1} + (n-i) f_{i+1}
        let mut tau: Option<Rat> = None;
        for i in 0..=radius {
            let mut conv = Rat::zero();
            if i > 0 {
                conv += f.get(i - 1) * Rat::from_integer(Int::from(i));
            }
            if i + 1 <= radius {
                conv += f.get(i + 1) * Rat::from_integer(Int::from(n - i));
            }
            let ratio = conv / f.get(i);
            tau = Some(match tau {
                None => ratio,
                Some(t) => t.min(ratio),
            });
        }
        let tau = tau.expect("nonempty support");
        if tau <= rho {
            continue; // not enough precision to preserve the spectral margin
        }
        let witness = PairWitness {
            f,
            g: g.clone(),
            tau,
            rho: rho.clone(),
            d,
        };
        let mut report = support_bound(cube, &witness, &ball_size(n, radius))?;
        report.method = method::BALL.to_string();
        return Ok(BallConstruction {
            witness,
            report,
            radius,
            lambda_estimate,
        });
    }
    Err(Error::ConstructionFailed(format!(
        "could not rationalize the B({n}, {radius}) eigenprofile for d = {d} \
         without losing the spectral margin"
    )))
}

#[derive(Clone, Debug)]
pub struct ConvPowerConstruction {
    pub witness: PairWitness,
    pub report: BoundReport,
    pub m: u32,
    pub split_radius: usize,
}

/// Convolution-power witness for `(n, d)`: `g` is the `m`-fold convolution
/// power of `2^n 1_{S(1)}` (so `ĝ_s = (n-2s)^m`), `ρ = (n-2d)^m`,
/// `τ = ρ + 1`, and `f = 1_{S(d')} + 1_{S(d'-1)}` for the smallest split
/// radius `d' ≤ n/2` that verifies. The reported bound is the corollary
/// form.
pub fn example2(cube: &Cube, d: usize, m: u32) -> Result<ConvPowerConstruction> {
    let n = cube.n();
    if d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    if m == 0 {
        return Err(Error::Domain("the convolution power needs m ≥ 1".into()));
    }
    let g0 = SymmetricProfile::sphere(n, 1)?.scaled(&Rat::from_integer(Int::one() << n));
    let g = cube.conv_power(&g0, m)?;
    let rho = pow_int_rat(n as i64 - 2 * d as i64, m);
    let tau = &rho + Rat::one();

    let mut last_failure = String::from("empty scan range");
    for split in 1..=n / 2 {
        let mut f = SymmetricProfile::sphere(n, split)?;
        f.set(split - 1, Rat::one());
        let w = PairWitness {
            f,
            g: g.clone(),
            tau: tau.clone(),
            rho: rho.clone(),
            d,
        };
        let fails = verify_witness(cube, &w)?;
        if fails.is_empty() {
            let mut report = witness_bound(cube, &w)?;
            report.method = method::CONV_POWER.to_string();
            return Ok(ConvPowerConstruction {
                witness: w,
                report,
                m,
                split_radius: split,
            });
        }
        last_failure = fails.join("; ");
    }
    Err(Error::ConstructionFailed(format!(
        "no valid split radius in 1..={} for n = {n}, d = {d}, m = {m}; last failure: {last_failure}",
        n / 2
    )))
}

fn pow_int_rat(base: i64, m: u32) -> Rat {
    let mut acc = Int::one();
    let b = Int::from(base);
    for _ in 0..m {
        acc *= &b;
    }
    Rat::from_integer(acc)
}

/// Replay a feasible certificate as a pair witness: `f` the convolution
/// identity, `g = Λ`, `τ = Λ(0)/2^n`, `ρ = 0`. The corollary bound then
/// reproduces the certificate's ratio bound exactly.
pub fn example3(cube: &Cube, cert: &Certificate) -> Result<(PairWitness, BoundReport)> {
    if !cert.verdict.is_feasible() {
        return Err(Error::InvalidWitness(
            "only feasible certificates can be replayed as witnesses".into(),
        ));
    }
    if cert.n != cube.n() {
        return Err(Error::Mismatch(format!(
            "certificate for n = {} on a cube of dimension {}",
            cert.n,
            cube.n()
        )));
    }
    let f = SymmetricProfile::delta(cube.n());
    let tau = cert.lambda.get(0) * Rat::new(Int::one(), Int::one() << cube.n());
    let w = PairWitness {
        f,
        g: cert.lambda.clone(),
        tau,
        rho: Rat::zero(),
        d: cert.d,
    };
    let mut report = witness_bound(cube, &w)?;
    report.method = method::IDENTITY.to_string();
    Ok((w, report))
}
