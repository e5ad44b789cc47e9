//! The spectral-dominance inequality chain behind the small-support barrier,
//! made exact at finite n.
//!
//! Given a valid pair witness `(f, g, τ, ρ)` whose `g` lives in the Hamming
//! ball of radius r, three facts hold: the Fourier mass of `f` is a
//! probability vector `λ`; `ĝ` restricted to weights is a nonnegative
//! Krawtchouk combination `P` of degree ≤ r; and `P(d) ≤ Σ λ_i P(i)`. The
//! asymptotic argument then squeezes these against Krawtchouk root locations
//! to force r to grow linearly. Everything here evaluates that chain with
//! exact rationals — tail masses are computed, not bounded by an imported
//! concentration theorem — plus a grid explorer that hunts for small-support
//! counterexamples and (reassuringly) fails to find them.

use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{method, verify_witness, witness_bound, BoundReport, PairWitness};
use crate::constructions::BallSpectrum;
use crate::error::{Error, Result};
use crate::fourier::{sphere_aware_convolve, Cube};
use crate::krawtchouk::{kraw_eval_int, kraw_roots};
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{binomial, jpl1_rate, rat, rat_to_str, Int, Rat};

/// Fourier mass of a profile: `λ_i = C(n,i) f̂_i² / ⟨f,f⟩`. Sums to one
/// exactly by Parseval.
#[derive(Clone, Debug)]
pub struct LambdaDistribution {
    pub n: usize,
    pub weights: Vec<Rat>,
}

pub fn lambda_distribution(cube: &Cube, f: &SymmetricProfile) -> Result<LambdaDistribution> {
    let n = cube.n();
    if f.is_zero() {
        return Err(Error::Domain("cannot normalize the zero profile".into()));
    }
    let fhat = cube.fourier(f)?;
    let ff = cube.inner(f, f)?;
    let weights: Vec<Rat> = (0..=n)
        .map(|i| {
            let h = fhat.get(i);
            Rat::from_integer(binomial(n, i as isize)) * h * h / &ff
        })
        .collect();
    let total: Rat = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::Mismatch(format!(
            "Fourier mass summed to {} instead of 1",
            rat_to_str(&total)
        )));
    }
    Ok(LambdaDistribution { n, weights })
}

/// Exact probability mass outside `[βn, (1-β)n]`. Integer weights compare
/// against the rational endpoints strictly, so e.g. weight 0 is already
/// outside the window for any β > 0.
pub fn tail_mass(lam: &LambdaDistribution, beta: &Rat) -> Result<Rat> {
    check_beta(beta)?;
    let n = rat(lam.n as i64);
    let lo = beta * &n;
    let hi = (Rat::one() - beta) * &n;
    let mut out = Rat::zero();
    for (i, w) in lam.weights.iter().enumerate() {
        let pos = rat(i as i64);
        if pos < lo || pos > hi {
            out += w;
        }
    }
    Ok(out)
}

fn check_beta(beta: &Rat) -> Result<()> {
    if !beta.is_positive() || *beta >= Rat::new(Int::one(), Int::from(2)) {
        return Err(Error::Domain(format!(
            "β = {} outside (0, 1/2)",
            rat_to_str(beta)
        )));
    }
    Ok(())
}

/// `ĝ` of a profile supported on weights ≤ r, as the degree-r polynomial
/// `P = Σ_{m ≤ r} a_m K_m` with `a_m = g_m / 2^n ≥ 0`. The values are built
/// from explicit Krawtchouk sums, so no transform table is needed.
#[derive(Clone, Debug)]
pub struct PPolynomial {
    pub n: usize,
    pub r: usize,
    pub coeffs: Vec<Rat>,
    pub values: Vec<Rat>,
}

impl PPolynomial {
    pub fn value(&self, s: usize) -> &Rat {
        &self.values[s]
    }
}

pub fn p_polynomial(g: &SymmetricProfile, r: usize) -> Result<PPolynomial> {
    let n = g.n();
    if g.side() != Side::Point {
        return Err(Error::Mismatch("P comes from a point-side profile".into()));
    }
    if r > n {
        return Err(Error::Domain(format!("support radius {r} exceeds n = {n}")));
    }
    for i in 0..=n {
        let v = g.get(i);
        if v.is_negative() {
            return Err(Error::Domain(format!("g has negative value at weight {i}")));
        }
        if i > r && !v.is_zero() {
            return Err(Error::Domain(format!(
                "g has support at weight {i}, beyond the stated radius {r}"
            )));
        }
    }
    let scale = Rat::new(Int::one(), Int::one() << n);
    let coeffs: Vec<Rat> = (0..=r).map(|m| g.get(m) * &scale).collect();
    let values: Vec<Rat> = (0..=n)
        .map(|s| {
            let mut acc = Rat::zero();
            for (m, a) in coeffs.iter().enumerate() {
                if !a.is_zero() {
                    acc += a * Rat::from_integer(kraw_eval_int(n, m, s)?);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok(PPolynomial { n, r, coeffs, values })
}

#[derive(Clone, Debug)]
pub struct Property3 {
    /// `Σ λ_i P(i)`
    pub lhs: Rat,
    /// `P(d)`
    pub rhs: Rat,
    pub holds: bool,
    pub margin: Rat,
}

pub fn property3_check(lam: &LambdaDistribution, p: &PPolynomial, d: usize) -> Result<Property3> {
    if lam.n != p.n {
        return Err(Error::Mismatch(format!(
            "distribution for n = {} against polynomial for n = {}",
            lam.n, p.n
        )));
    }
    if d > p.n {
        return Err(Error::Domain(format!("d = {d} exceeds n = {}", p.n)));
    }
    let lhs: Rat = lam
        .weights
        .iter()
        .zip(p.values.iter())
        .map(|(l, v)| l * v)
        .sum();
    let rhs = p.value(d).clone();
    let margin = &lhs - &rhs;
    Ok(Property3 { holds: !margin.is_negative(), lhs, rhs, margin })
}

/// The Krawtchouk ratio estimates of the second step, with every claimed
/// inequality re-verified by exact evaluation on the integer grid.
#[derive(Clone, Debug)]
pub struct RatioBounds {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub beta: Rat,
    /// `(2β - 2δ)^m ≤ K_m(d)/K_m(0)`
    pub lb: Rat,
    /// `|K_m(i)|/K_m(d) ≤ (1-2β)/(2β-2δ)` on the middle window
    pub ub: Rat,
    pub first_root: Option<f64>,
    /// `d < βn < x_1(m) - 1`; the estimates are only claimed under this
    pub precondition_ok: bool,
    /// both displayed inequalities held exactly on the integer grid
    pub verified: bool,
}

pub fn ratio_bounds(n: usize, m: usize, d: usize, beta: &Rat) -> Result<RatioBounds> {
    check_beta(beta)?;
    if d > n || m > n || n == 0 {
        return Err(Error::Domain(format!(
            "need d, m ≤ n and n ≥ 1, got n = {n}, m = {m}, d = {d}"
        )));
    }
    let nr = rat(n as i64);
    let delta = Rat::new(Int::from(d), Int::from(n));
    let bn = beta * &nr;
    let two = rat(2);
    let base = &two * beta - &two * &delta; // 2β - 2δ
    let lb = rat_pow(&base, m);
    let ub = (Rat::one() - &two * beta) / &base;

    let first_root = if m == 0 { None } else { Some(kraw_roots(n, m)?.roots[0]) };
    let precondition_ok = rat(d as i64) < bn
        && base.is_positive()
        && first_root.map_or(true, |x1| bn_float(beta, n) < x1 - 1.0);

    // exact spot checks of both displays, reported rather than assumed
    let kd = Rat::from_integer(kraw_eval_int(n, m, d)?);
    let k0 = Rat::from_integer(binomial(n, m as isize));
    let mut verified = kd.is_positive() && &kd / &k0 >= lb;
    if verified {
        let hi = (Rat::one() - beta) * &nr;
        for i in 0..=n {
            let pos = rat(i as i64);
            if pos >= bn && pos <= hi {
                let ki = Rat::from_integer(kraw_eval_int(n, m, i)?);
                if ki.abs() > &ub * &kd {
                    verified = false;
                    break;
                }
            }
        }
    }
    Ok(RatioBounds {
        n,
        m,
        d,
        beta: beta.clone(),
        lb,
        ub,
        first_root,
        precondition_ok,
        verified,
    })
}

fn bn_float(beta: &Rat, n: usize) -> f64 {
    use num::ToPrimitive;
    beta.to_f64().unwrap_or(f64::NAN) * n as f64
}

fn rat_pow(base: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Everything the chain produces for one witness, with both sides of each
/// inequality recorded so a reader can re-derive the verdicts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: usize,
    pub d: usize,
    #[serde(with = "crate::scalar::rat_serde")]
    pub beta: Rat,
    pub r: usize,
    #[serde(with = "crate::scalar::rat_serde")]
    pub tail_mass: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub property3_lhs: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub property3_rhs: Rat,
    pub property3_holds: bool,
    /// `Σ λ_i P(i)` split over `i < βn`, the middle window, and `i > (1-β)n`;
    /// the three parts re-sum to `property3_lhs` exactly.
    #[serde(with = "crate::scalar::rat_serde")]
    pub range_low: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub range_mid: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub range_high: Rat,
    /// `P(d)` against `(tail · (2β-2δ)^{-r} + (1-2β)/(2β-2δ)) · P(d)`, the
    /// final display with the measured tail in place of `2^{-ε₁n}`
    #[serde(with = "crate::scalar::rat_serde")]
    pub final_lhs: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub final_rhs: Rat,
    pub final_holds: bool,
    /// Smallest support radius the final display tolerates for this witness;
    /// `None` when no radius up to n reconciles it.
    pub implied_r: Option<usize>,
}

pub fn chain_eval(
    cube: &Cube,
    f: &SymmetricProfile,
    g: &SymmetricProfile,
    d: usize,
    beta: &Rat,
    r: usize,
) -> Result<ChainReport> {
    let n = cube.n();
    check_beta(beta)?;
    if d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    let nr = rat(n as i64);
    let bn = beta * &nr;
    if rat(d as i64) >= bn {
        return Err(Error::Domain(format!(
            "need d < βn, got d = {d} with βn = {}",
            rat_to_str(&bn)
        )));
    }
    let lam = lambda_distribution(cube, f)?;
    let p = p_polynomial(g, r)?;
    let tail = tail_mass(&lam, beta)?;
    let p3 = property3_check(&lam, &p, d)?;

    let hi_cut = (Rat::one() - beta) * &nr;
    let mut range_low = Rat::zero();
    let mut range_mid = Rat::zero();
    let mut range_high = Rat::zero();
    for i in 0..=n {
        let term = &lam.weights[i] * p.value(i);
        let pos = rat(i as i64);
        if pos < bn {
            range_low += term;
        } else if pos > hi_cut {
            range_high += term;
        } else {
            range_mid += term;
        }
    }
    if &range_low + &range_mid + &range_high != p3.lhs {
        return Err(Error::Mismatch(
            "three-range decomposition does not re-sum to Σ λ_i P(i)".into(),
        ));
    }

    let two = rat(2);
    let delta = Rat::new(Int::from(d), Int::from(n));
    let base = &two * beta - &two * &delta;
    let ub = (Rat::one() - &two * beta) / &base;
    let inv = Rat::one() / &base;
    let factor = &tail * rat_pow(&inv, r) + &ub;
    let final_lhs = p.value(d).clone();
    let final_rhs = &factor * &final_lhs;
    let final_holds = final_lhs <= final_rhs;

    let implied_r = (0..=n).find(|&k| &tail * rat_pow(&inv, k) + &ub >= Rat::one());

    Ok(ChainReport {
        n,
        d,
        beta: beta.clone(),
        r,
        tail_mass: tail,
        property3_lhs: p3.lhs,
        property3_rhs: p3.rhs,
        property3_holds: p3.holds,
        range_low,
        range_mid,
        range_high,
        final_lhs,
        final_rhs,
        final_holds,
        implied_r,
    })
}

/// Default window parameter: δ < β < α with α read off the witness quality,
/// i.e. `H(1/2 - √(α(1-α))) = (1/n) log2(2^n f̂(0)²/⟨f,f⟩)`, and β the
/// midpoint of (δ, α). Falls back to the midpoint of (δ, 1/2) when the
/// witness is too weak to pin α above δ.
pub fn default_beta(cube: &Cube, f: &SymmetricProfile, d: usize) -> Result<Rat> {
    let n = cube.n();
    let fhat0 = cube.fourier_at(f, 0)?;
    let ff = cube.inner(f, f)?;
    let quality = Rat::from_integer(Int::one() << n) * &fhat0 * &fhat0 / &ff;
    let rate = crate::scalar::log2_rat(&quality) / n as f64;
    let delta = d as f64 / n as f64;
    let mut beta = (delta + 0.5) / 2.0;
    if rate > 0.0 && jpl1_rate(delta)?.value() > rate {
        // bisect for α: jpl1_rate is strictly decreasing on (δ, 1/2)
        let (mut lo, mut hi) = (delta, 0.5);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if jpl1_rate(mid)?.value() > rate {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        beta = (delta + 0.5 * (lo + hi)) / 2.0;
    }
    let out = crate::scalar::dyadic(beta, 24)?;
    let lo_ok = out > Rat::new(Int::from(d), Int::from(n));
    let hi_ok = out < Rat::new(Int::one(), Int::from(2));
    if lo_ok && hi_ok {
        Ok(out)
    } else {
        let delta_rat = Rat::new(Int::from(d), Int::from(n));
        Ok((delta_rat + Rat::new(Int::one(), Int::from(2))) / rat(2))
    }
}

/// Grid description for `barrier_search`: inclusive rational ranges with a
/// step count per Krawtchouk coefficient `a_0..a_r` of `ĝ`, and the ball
/// radii for the `f` family.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub ranges: Vec<(Rat, Rat, usize)>,
    pub radii: Vec<usize>,
}

impl GridSpec {
    /// Fix `a_0 = 1` and sweep `a_m` up to `hi / K_m(0)` for m ≥ 1, so every
    /// swept combination `Σ a_m K_m` weighs its normalized Krawtchouks on a
    /// comparable scale.
    pub fn normalized(n: usize, r: usize, hi: &Rat, steps: usize, radii: Vec<usize>) -> Self {
        let mut ranges = vec![(Rat::one(), Rat::one(), 1)];
        for m in 1..=r {
            let cap = hi / Rat::from_integer(binomial(n, m as isize));
            ranges.push((Rat::zero(), cap, steps));
        }
        GridSpec { ranges, radii }
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub coeffs: Vec<Rat>,
    pub f_radius: usize,
    pub rho: Rat,
    pub tau: Rat,
    pub bound: Option<Rat>,
    pub rate: Option<f64>,
    pub margin: Option<f64>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub best: BoundReport,
    /// Index of the winning row; `None` when the sweep fell back to the
    /// trivial whole-cube bound.
    pub best_row: Option<usize>,
    /// best rate minus `jpl1_rate(d/n)`
    pub margin: f64,
}

fn grid_values(lo: &Rat, hi: &Rat, steps: usize) -> Vec<Rat> {
    if steps <= 1 || lo == hi {
        return vec![lo.clone()];
    }
    let span = hi - lo;
    (0..steps)
        .map(|t| lo + &span * Rat::new(Int::from(t), Int::from(steps - 1)))
        .collect()
}

pub fn barrier_search(cube: &Cube, d: usize, r: usize, spec: &GridSpec) -> Result<SweepOutcome> {
    let n = cube.n();
    if d == 0 || d > n || r > n {
        return Err(Error::Domain(format!(
            "need 1 ≤ d ≤ n and r ≤ n, got d = {d}, r = {r}, n = {n}"
        )));
    }
    if spec.ranges.len() != r + 1 {
        return Err(Error::Mismatch(format!(
            "{} coefficient ranges for degree r = {r}",
            spec.ranges.len()
        )));
    }
    if spec.ranges.iter().any(|(_, _, s)| *s == 0) || spec.radii.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let axes: Vec<Vec<Rat>> = spec
        .ranges
        .iter()
        .map(|(lo, hi, steps)| grid_values(lo, hi, *steps))
        .collect();

    // precompute the f family once; the grid only changes g
    struct FData {
        radius: usize,
        f: SymmetricProfile,
    }
    let family: Vec<FData> = spec
        .radii
        .iter()
        .map(|&radius| {
            let spectrum = BallSpectrum::compute(n, radius)?;
            Ok(FData { radius, f: spectrum.eigen_profile })
        })
        .collect::<Result<_>>()?;

    // lexicographic odometer over coefficient tuples
    let mut combos: Vec<Vec<Rat>> = Vec::new();
    let mut idx = vec![0usize; axes.len()];
    loop {
        combos.push(idx.iter().zip(axes.iter()).map(|(&i, ax)| ax[i].clone()).collect());
        let mut k = axes.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }

    let delta = d as f64 / n as f64;
    let base_rate = jpl1_rate(delta)?.value();
    let two_n = Rat::from_integer(Int::one() << n);

    let rows: Vec<SweepRow> = combos
        .par_iter()
        .map(|coeffs| -> Result<Vec<SweepRow>> {
            let mut g = SymmetricProfile::zeros(n, Side::Point);
            for (m, a) in coeffs.iter().enumerate() {
                g.set(m, a * &two_n);
            }
            // ρ = max_{s ≥ d} ĝ_s, from the explicit Krawtchouk sums
            let mut rho = Rat::zero();
            for s in d..=n {
                let mut v = Rat::zero();
                for (m, a) in coeffs.iter().enumerate() {
                    if !a.is_zero() {
                        v += a * Rat::from_integer(kraw_eval_int(n, m, s)?);
                    }
                }
                if s == d || v > rho {
                    rho = v;
                }
            }
            family
                .iter()
                .map(|fd| {
                    let conv = sphere_aware_convolve(cube, &g, &fd.f)?;
                    let mut tau: Option<Rat> = None;
                    for i in 0..=n {
                        if fd.f.get(i).is_positive() {
                            let ratio = conv.get(i) / fd.f.get(i);
                            if tau.as_ref().map_or(true, |t| ratio < *t) {
                                tau = Some(ratio);
                            }
                        }
                    }
                    let tau = tau.expect("eigenprofile has nonempty support");
                    let mut row = SweepRow {
                        n,
                        d,
                        r,
                        coeffs: coeffs.clone(),
                        f_radius: fd.radius,
                        rho: rho.clone(),
                        tau: tau.clone(),
                        bound: None,
                        rate: None,
                        margin: None,
                        verified: false,
                    };
                    if tau > rho {
                        let w = PairWitness {
                            f: fd.f.clone(),
                            g: g.clone(),
                            tau,
                            rho: rho.clone(),
                            d,
                        };
                        if verify_witness(cube, &w)?.is_empty() {
                            row.verified = true;
                            let report = witness_bound(cube, &w)?;
                            row.rate = Some(report.rate);
                            row.margin = Some(report.rate - base_rate);
                            row.bound = Some(report.bound);
                        }
                    }
                    Ok(row)
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<SweepRow>>>>()?
        .into_iter()
        .flatten()
        .collect();

    // deterministic reduction: smallest verified rate, earliest row on ties
    let mut best_row = None;
    for (i, row) in rows.iter().enumerate() {
        if !row.verified {
            continue;
        }
        let better = match best_row {
            None => true,
            Some(b) => {
                let cur: &SweepRow = &rows[b];
                row.bound.as_ref().unwrap() < cur.bound.as_ref().unwrap()
            }
        };
        if better {
            best_row = Some(i);
        }
    }
    let best = match best_row {
        Some(i) => BoundReport::new(
            n,
            d,
            rows[i].bound.clone().unwrap(),
            method::COROLLARY,
        )?,
        None => BoundReport::new(n, d, two_n, method::TRIVIAL)?,
    };
    let margin = best.rate - base_rate;
    Ok(SweepOutcome { rows, best, best_row, margin })
}

pub fn sweep_csv(out: &SweepOutcome) -> String {
    let r = out.rows.first().map_or(0, |row| row.r);
    let mut header = String::from("n,d,r");
    for m in 0..=r {
        header.push_str(&format!(",a{m}"));
    }
    header.push_str(",f_radius,rho,tau,bound,rate,margin,verified\n");
    let mut csv = header;
    for row in &out.rows {
        let mut line = format!("{},{},{}", row.n, row.d, row.r);
        for a in &row.coeffs {
            line.push_str(&format!(",{}", rat_to_str(a)));
        }
        line.push_str(&format!(
            ",{},{},{}",
            row.f_radius,
            rat_to_str(&row.rho),
            rat_to_str(&row.tau)
        ));
        match (&row.bound, row.rate, row.margin) {
            (Some(b), Some(rate), Some(margin)) => {
                line.push_str(&format!(",{},{rate:.6},{margin:.6}", rat_to_str(b)));
            }
            _ => line.push_str(",,,"),
        }
        line.push_str(if row.verified { ",true\n" } else { ",false\n" });
        csv.push_str(&line);
    }
    csv
}
