//! Exact linear-programming machinery for binary code bounds.
//!
//! The crate revolves around one object: a *pair witness* `(f, g, τ, ρ)` on
//! the Hamming cube with `f ≥ 0`, `g ∗ f ≥ τ f`, `ĝ_s ≤ ρ` for `s ≥ d`, and
//! `τ > ρ`. Every such witness compiles into a dual-feasible certificate
//! `Λ = g ∗ f ∗ f − ρ (f ∗ f)` and hence into an upper bound on the size of
//! any binary code with minimum distance `d`. All of the feasibility logic
//! runs in exact rational arithmetic; floating point appears only in root
//! isolation, eigenvalue estimates, and reported rates.
//!
//! Layers, bottom up:
//!
//! * [`scalar`] — big rationals, binomials, dyadic rounding, rate curves;
//! * [`krawtchouk`] — exact Krawtchouk tables and certified root isolation;
//! * [`profile`] / [`fourier`] / [`dense`] — symmetric profiles, their exact
//!   transforms, and a brute-force Walsh–Hadamard cross-check;
//! * [`certificate`] — witness verification, certificate assembly, bounds;
//! * [`constructions`] — ball-eigenprofile, convolution-power, and
//!   certificate-replay witness families;
//! * [`lp`] — the exact primal LP optimum by rational simplex;
//! * [`oracle`] — exhaustive maximum-code search for small `n`;
//! * [`chain`] — the spectral-dominance inequality chain and barrier sweeps;
//! * [`sampling`] — seeded random witness generation for stress tests.
//!
//! The `examples/` directory exercises each capability end to end; the
//! `delsarte` binary wraps the same calls for scripting.

pub mod certificate;
pub mod chain;
pub mod constructions;
pub mod dense;
pub mod error;
pub mod fourier;
pub mod krawtchouk;
pub mod lp;
pub mod oracle;
pub mod profile;
pub mod sampling;
pub mod scalar;

pub use certificate::{BoundReport, Certificate, PairWitness, Verdict};
pub use error::{Error, Result};
pub use fourier::Cube;
pub use profile::{Side, SymmetricProfile};
