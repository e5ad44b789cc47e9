//! Dual feasibility certificates and pair witnesses.
//!
//! A certificate for parameters `(n, d)` is a symmetric `Λ ≥ 0`, not
//! identically zero, whose transform is `≤ 0` at every weight `s ≥ d`; any
//! code with minimum distance `d` then has size at most `2^n Λ̂(0) / Λ(0)`.
//! A pair witness `(f, g, τ, ρ)` is the structured way to build one:
//! `f ≥ 0` with `g ∗ f ≥ τ f` everywhere, `ĝ_s ≤ ρ` for `s ≥ d`, and
//! `τ > ρ`. Then `Λ = g ∗ f ∗ f − ρ (f ∗ f)` is feasible, and its transform
//! factors as `Λ̂_s = (ĝ_s − ρ) f̂_s²`. Note `g` itself may take either sign.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::Cube;
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{log2_rat, rat_to_str, Int, Rat};

/// Labels for how a bound was obtained; carried in reports and CLI output.
pub mod method {
    pub const DIRECT: &str = "direct";
    pub const WITNESS: &str = "witness";
    pub const COROLLARY: &str = "corollary";
    pub const SUPPORT: &str = "support";
    pub const BALL: &str = "ball";
    pub const CONV_POWER: &str = "conv-power";
    pub const IDENTITY: &str = "identity";
    pub const LP: &str = "lp";
    pub const TRIVIAL: &str = "trivial";
}

const MAX_REPORTED: usize = 32;

/// Collects condition failures, keeping only the first few verbatim.
struct Complaints {
    list: Vec<String>,
    dropped: usize,
}

impl Complaints {
    fn new() -> Self {
        Complaints {
            list: Vec::new(),
            dropped: 0,
        }
    }

    fn push(&mut self, msg: String) {
        if self.list.len() < MAX_REPORTED {
            self.list.push(msg);
        } else {
            self.dropped += 1;
        }
    }

    fn into_list(mut self) -> Vec<String> {
        if self.dropped > 0 {
            self.list.push(format!("... and {} more", self.dropped));
        }
        self.list
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible(Vec<String>),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub d: usize,
    pub lambda: SymmetricProfile,
    pub lambda_hat: SymmetricProfile,
    pub verdict: Verdict,
}

impl Certificate {
    /// Check every feasibility condition of `lambda` and record the result.
    /// Shape problems are hard errors; condition failures land in the verdict.
    pub fn check(cube: &Cube, d: usize, lambda: SymmetricProfile) -> Result<Self> {
        let n = cube.n();
        if lambda.n() != n {
            return Err(Error::Mismatch(format!(
                "Λ for n = {} checked on a cube of dimension {n}",
                lambda.n()
            )));
        }
        if lambda.side() != Side::Point {
            return Err(Error::Mismatch("Λ must be a point-side profile".into()));
        }
        if d == 0 || d > n {
            return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
        }
        let lambda_hat = cube.fourier(&lambda)?;
        let mut bad = Complaints::new();
        if lambda.is_zero() {
            bad.push("Λ is identically zero".into());
        } else {
            for i in 0..=n {
                if lambda.get(i).is_negative() {
                    bad.push(format!(
                        "Λ({i}) = {} is negative",
                        rat_to_str(lambda.get(i))
                    ));
                }
            }
            if lambda.get(0).is_zero() {
                bad.push("Λ(0) = 0, so the ratio bound is undefined".into());
            }
        }
        for s in d..=n {
            if lambda_hat.get(s).is_positive() {
                bad.push(format!(
                    "Λ̂({s}) = {} is positive although {s} ≥ d = {d}",
                    rat_to_str(lambda_hat.get(s))
                ));
            }
        }
        let list = bad.into_list();
        let verdict = if list.is_empty() {
            Verdict::Feasible
        } else {
            Verdict::Infeasible(list)
        };
        Ok(Certificate {
            n,
            d,
            lambda,
            lambda_hat,
            verdict,
        })
    }

    /// The ratio bound `2^n Λ̂(0) / Λ(0)`; only available when feasible.
    pub fn bound(&self) -> Result<BoundReport> {
        match &self.verdict {
            Verdict::Feasible => {}
            Verdict::Infeasible(list) => {
                return Err(Error::Domain(format!(
                    "no bound from an infeasible certificate: {}",
                    list.join("; ")
                )))
            }
        }
        let b = Rat::from_integer(Int::one() << self.n) * self.lambda_hat.get(0)
            / self.lambda.get(0);
        BoundReport::new(self.n, self.d, b, method::DIRECT)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    #[serde(with = "crate::scalar::rat_serde")]
    pub bound: Rat,
    /// `log2(bound) / n`, reported as-is (it may exceed 1 for weak bounds).
    pub rate: f64,
    pub method: String,
}

impl BoundReport {
    pub fn new(n: usize, d: usize, bound: Rat, method: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("bounds need n ≥ 1".into()));
        }
        if !bound.is_positive() {
            return Err(Error::Domain(format!(
                "nonpositive bound {}",
                rat_to_str(&bound)
            )));
        }
        let rate = log2_rat(&bound) / n as f64;
        Ok(BoundReport {
            n,
            d,
            bound,
            rate,
            method: method.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub f: SymmetricProfile,
    pub g: SymmetricProfile,
    #[serde(with = "crate::scalar::rat_serde")]
    pub tau: Rat,
    #[serde(with = "crate::scalar::rat_serde")]
    pub rho: Rat,
    pub d: usize,
}

impl PairWitness {
    pub fn n(&self) -> usize {
        self.f.n()
    }
}

/// Check all witness conditions. Returns the list of failures (empty means
/// the witness is valid); malformed shapes are hard errors instead.
pub fn verify_witness(cube: &Cube, w: &PairWitness) -> Result<Vec<String>> {
    let n = cube.n();
    if w.f.n() != n || w.g.n() != n {
        return Err(Error::InvalidWitness(format!(
            "witness profiles for n = {}/{} on a cube of dimension {n}",
            w.f.n(),
            w.g.n()
        )));
    }
    if w.f.side() != Side::Point || w.g.side() != Side::Point {
        return Err(Error::InvalidWitness(
            "witness profiles must be point-side".into(),
        ));
    }
    if w.d == 0 || w.d > n {
        return Err(Error::InvalidWitness(format!(
            "need 1 ≤ d ≤ n, got d = {}, n = {n}",
            w.d
        )));
    }

    let mut bad = Complaints::new();
    if w.f.is_zero() {
        bad.push("f is identically zero".into());
    }
    for i in 0..=n {
        if w.f.get(i).is_negative() {
            bad.push(format!("f({i}) = {} is negative", rat_to_str(w.f.get(i))));
        }
    }
    let conv = crate::fourier::sphere_aware_convolve(cube, &w.g, &w.f)?;
    for i in 0..=n {
        let need = w.f.get(i) * &w.tau;
        if *conv.get(i) < need {
            bad.push(format!(
                "amplification fails at weight {i}: (g∗f)({i}) = {} < τ·f({i}) = {}",
                rat_to_str(conv.get(i)),
                rat_to_str(&need)
            ));
        }
    }
    let ghat = cube.fourier(&w.g)?;
    for s in w.d..=n {
        if ghat.get(s) > &w.rho {
            bad.push(format!(
                "transform tail fails at weight {s}: ĝ({s}) = {} exceeds ρ = {}",
                rat_to_str(ghat.get(s)),
                rat_to_str(&w.rho)
            ));
        }
    }
    if w.tau <= w.rho {
        bad.push(format!(
            "need τ > ρ, got τ = {}, ρ = {}",
            rat_to_str(&w.tau),
            rat_to_str(&w.rho)
        ));
    }
    Ok(bad.into_list())
}

/// Build the certificate `Λ = g ∗ f ∗ f − ρ (f ∗ f)` from a valid witness.
///
/// `Λ` is assembled from actual convolutions while `Λ̂` is recomputed from
/// the factored form `(ĝ_s − ρ) f̂_s²`; the two must agree exactly, which
/// cross-checks the transform engine on every call.
pub fn certificate_from_witness(
    cube: &Cube,
    w: &PairWitness,
) -> Result<(Certificate, BoundReport)> {
    let fails = verify_witness(cube, w)?;
    if !fails.is_empty() {
        return Err(Error::InvalidWitness(fails.join("; ")));
    }
    let ff = cube.convolve(&w.f, &w.f)?;
    let gff = cube.convolve(&w.g, &ff)?;
    let lambda = gff.try_sub(&ff.scaled(&w.rho))?;
    let cert = Certificate::check(cube, w.d, lambda)?;

    let fhat = cube.fourier(&w.f)?;
    let ghat = cube.fourier(&w.g)?;
    for s in 0..=cube.n() {
        let expect = (ghat.get(s) - &w.rho) * fhat.get(s) * fhat.get(s);
        if &expect != cert.lambda_hat.get(s) {
            return Err(Error::Mismatch(format!(
                "Λ̂({s}) factored form {} disagrees with transform {}",
                rat_to_str(&expect),
                rat_to_str(cert.lambda_hat.get(s))
            )));
        }
    }
    if !cert.verdict.is_feasible() {
        // cannot happen for a verified witness; do not paper over it if it does
        return Err(Error::Mismatch(format!(
            "witness passed verification but Λ failed: {:?}",
            cert.verdict
        )));
    }
    let mut report = cert.bound()?;
    report.method = method::WITNESS.to_string();
    Ok((cert, report))
}

/// Closed-form corollary bound
/// `(ĝ(0) − ρ)/(τ − ρ) · 2^n f̂(0)² / ⟨f, f⟩` for a valid witness.
pub fn witness_bound(cube: &Cube, w: &PairWitness) -> Result<BoundReport> {
    let fails = verify_witness(cube, w)?;
    if !fails.is_empty() {
        return Err(Error::InvalidWitness(fails.join("; ")));
    }
    let fhat0 = cube.fourier_at(&w.f, 0)?;
    let ghat0 = cube.fourier_at(&w.g, 0)?;
    let norm = cube.inner(&w.f, &w.f)?;
    let b = (ghat0 - &w.rho) / (&w.tau - &w.rho)
        * Rat::from_integer(Int::one() << cube.n())
        * &fhat0
        * &fhat0
        / norm;
    BoundReport::new(cube.n(), w.d, b, method::COROLLARY)
}

/// Support variant `(ĝ(0) − ρ)/(τ − ρ) · |supp f|`, valid for any
/// `support_size` at least the true support size of `f`. For 0/1-valued `f`
/// with the exact size this coincides with the corollary bound.
pub fn support_bound(cube: &Cube, w: &PairWitness, support_size: &Int) -> Result<BoundReport> {
    let fails = verify_witness(cube, w)?;
    if !fails.is_empty() {
        return Err(Error::InvalidWitness(fails.join("; ")));
    }
    let true_size = w.f.cube_support_size();
    if support_size < &true_size {
        return Err(Error::Domain(format!(
            "claimed support size {support_size} is below the actual size {true_size}"
        )));
    }
    let ghat0 = cube.fourier_at(&w.g, 0)?;
    let b = (ghat0 - &w.rho) / (&w.tau - &w.rho) * Rat::from_integer(support_size.clone());
    BoundReport::new(cube.n(), w.d, b, method::SUPPORT)
}

/// Transport record bundling a certificate with its bound for file output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub n: usize,
    pub d: usize,
    pub lambda: SymmetricProfile,
    pub lambda_hat: SymmetricProfile,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
}

impl CertificateRecord {
    pub fn new(cert: Certificate, report: Option<&BoundReport>) -> Self {
        CertificateRecord {
            n: cert.n,
            d: cert.d,
            lambda: cert.lambda,
            lambda_hat: cert.lambda_hat,
            verdict: cert.verdict,
            bound: report.map(|r| rat_to_str(&r.bound)),
            rate: report.map(|r| r.rate),
            method: report.map(|r| r.method.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, ratio};

    fn frozen_witness() -> PairWitness {
        // n = 4, d = 2: f supported on B(4,1), g = 2^4 · 1_{S(4,1)}
        let f = SymmetricProfile::new(
            4,
            Side::Point,
            vec![rat(1), ratio(1, 2), rat(0), rat(0), rat(0)],
        )
        .unwrap();
        let g = SymmetricProfile::sphere(4, 1).unwrap().scaled(&rat(16));
        PairWitness {
            f,
            g,
            tau: rat(2),
            rho: rat(0),
            d: 2,
        }
    }

    #[test]
    fn frozen_witness_is_valid() {
        let cube = Cube::new(4);
        assert_eq!(verify_witness(&cube, &frozen_witness()).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn frozen_certificate_values() {
        let cube = Cube::new(4);
        let (cert, report) = certificate_from_witness(&cube, &frozen_witness()).unwrap();
        let lam: Vec<Rat> = vec![ratio(1, 4), ratio(7, 32), ratio(1, 8), ratio(3, 32), rat(0)];
        assert_eq!(cert.lambda.values(), &lam[..]);
        let hat: Vec<Rat> = vec![ratio(9, 64), ratio(1, 32), rat(0), rat(0), ratio(-1, 64)];
        assert_eq!(cert.lambda_hat.values(), &hat[..]);
        assert!(cert.verdict.is_feasible());
        assert_eq!(report.bound, rat(9));
        assert_eq!(report.method, method::WITNESS);
        assert!((report.rate - 9f64.log2() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn frozen_corollary_and_support_bounds() {
        let cube = Cube::new(4);
        let w = frozen_witness();
        let cor = witness_bound(&cube, &w).unwrap();
        assert_eq!(cor.bound, rat(9));
        assert_eq!(cor.method, method::COROLLARY);
        let sup = support_bound(&cube, &w, &int(5)).unwrap();
        assert_eq!(sup.bound, rat(10));
        assert_eq!(sup.method, method::SUPPORT);
        // claimed size below the true support is rejected
        assert!(support_bound(&cube, &w, &int(4)).is_err());
        // inflated size is allowed and weakens the bound accordingly
        assert_eq!(support_bound(&cube, &w, &int(7)).unwrap().bound, rat(14));
    }

    #[test]
    fn indicator_f_makes_corollary_equal_support() {
        let cube = Cube::new(4);
        let f = SymmetricProfile::ball(4, 1).unwrap();
        let g = SymmetricProfile::sphere(4, 1).unwrap().scaled(&rat(16));
        let w = PairWitness {
            f,
            g,
            tau: rat(1),
            rho: rat(0),
            d: 2,
        };
        assert!(verify_witness(&cube, &w).unwrap().is_empty());
        let cor = witness_bound(&cube, &w).unwrap();
        let sup = support_bound(&cube, &w, &int(5)).unwrap();
        assert_eq!(cor.bound, sup.bound);
        assert_eq!(cor.bound, rat(20));
    }

    #[test]
    fn witness_failures_are_reported() {
        let cube = Cube::new(4);

        let mut w = frozen_witness();
        w.tau = rat(0);
        let fails = verify_witness(&cube, &w).unwrap();
        assert!(fails.iter().any(|m| m.contains("τ")), "{fails:?}");

        let mut w = frozen_witness();
        w.f.set(3, rat(-1));
        let fails = verify_witness(&cube, &w).unwrap();
        assert!(fails.iter().any(|m| m.contains("negative")), "{fails:?}");

        let mut w = frozen_witness();
        w.d = 1; // ĝ(1) = 2 > ρ = 0
        let fails = verify_witness(&cube, &w).unwrap();
        assert!(fails.iter().any(|m| m.contains("tail")), "{fails:?}");

        let mut w = frozen_witness();
        w.f = SymmetricProfile::zeros(4, Side::Point);
        let fails = verify_witness(&cube, &w).unwrap();
        assert!(fails.iter().any(|m| m.contains("identically zero")), "{fails:?}");

        let mut w = frozen_witness();
        w.tau = rat(3); // g∗f = 2f on the ball, so amplification breaks
        let fails = verify_witness(&cube, &w).unwrap();
        assert!(fails.iter().any(|m| m.contains("amplification")), "{fails:?}");
        assert!(certificate_from_witness(&cube, &w).is_err());
    }

    #[test]
    fn certificate_check_flags_conditions() {
        let cube = Cube::new(4);

        // nonnegative, right tail, but Λ(0) = 0
        let lam = SymmetricProfile::sphere(4, 1).unwrap();
        let cert = Certificate::check(&cube, 2, lam).unwrap();
        match &cert.verdict {
            Verdict::Infeasible(list) => {
                assert!(list.iter().any(|m| m.contains("Λ(0) = 0")), "{list:?}")
            }
            Verdict::Feasible => panic!("Λ(0) = 0 must not be feasible"),
        }
        assert!(cert.bound().is_err());

        // positive transform tail everywhere
        let lam = SymmetricProfile::sphere(4, 0).unwrap();
        let cert = Certificate::check(&cube, 2, lam).unwrap();
        match &cert.verdict {
            Verdict::Infeasible(list) => {
                assert!(list.iter().any(|m| m.contains("positive")), "{list:?}")
            }
            Verdict::Feasible => panic!("1_0 has a flat positive transform"),
        }

        // identically zero
        let cert = Certificate::check(&cube, 2, SymmetricProfile::zeros(4, Side::Point)).unwrap();
        match &cert.verdict {
            Verdict::Infeasible(list) => assert_eq!(list.len(), 1),
            Verdict::Feasible => panic!("zero Λ must not be feasible"),
        }
    }

    #[test]
    fn violation_lists_are_capped() {
        let cube = Cube::new(40);
        let lam = SymmetricProfile::new(40, Side::Point, vec![rat(-1); 41]).unwrap();
        let cert = Certificate::check(&cube, 2, lam).unwrap();
        match &cert.verdict {
            Verdict::Infeasible(list) => {
                assert_eq!(list.len(), MAX_REPORTED + 1);
                assert!(list.last().unwrap().contains("more"), "{list:?}");
            }
            Verdict::Feasible => panic!(),
        }
    }

    #[test]
    fn verdict_serde_shape() {
        assert_eq!(
            serde_json::to_string(&Verdict::Feasible).unwrap(),
            r#""feasible""#
        );
        assert_eq!(
            serde_json::to_string(&Verdict::Infeasible(vec!["x".into()])).unwrap(),
            r#"{"infeasible":["x"]}"#
        );
    }

    #[test]
    fn record_roundtrip() {
        let cube = Cube::new(4);
        let (cert, report) = certificate_from_witness(&cube, &frozen_witness()).unwrap();
        let rec = CertificateRecord::new(cert, Some(&report));
        let js = serde_json::to_string(&rec).unwrap();
        let back: CertificateRecord = serde_json::from_str(&js).unwrap();
        assert_eq!(back.bound.as_deref(), Some("9/1"));
        assert_eq!(back.method.as_deref(), Some(method::WITNESS));
        assert!(back.verdict.is_feasible());
    }

    #[test]
    fn shape_errors_are_hard() {
        let cube = Cube::new(4);
        let mut w = frozen_witness();
        w.d = 0;
        assert!(matches!(
            verify_witness(&cube, &w),
            Err(Error::InvalidWitness(_))
        ));
        let w5 = PairWitness {
            f: SymmetricProfile::ball(5, 1).unwrap(),
            g: SymmetricProfile::ball(5, 1).unwrap(),
            tau: rat(1),
            rho: rat(0),
            d: 2,
        };
        assert!(verify_witness(&cube, &w5).is_err());
        assert!(Certificate::check(&cube, 0, SymmetricProfile::ball(4, 1).unwrap()).is_err());
    }
}
