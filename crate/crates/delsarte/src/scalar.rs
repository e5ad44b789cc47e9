//! Exact scalars plus the few real-valued rate curves.
//!
//! Everything combinatorial in this crate runs on `BigInt` / `BigRational`.
//! Floating point is confined to root isolation, eigenvalue estimates and
//! *reported* rates; the entropy-based curves here are evaluated at 192-bit
//! precision and rounded once at the end, so every returned `f64` is correct
//! to the last bit or two.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Binomial coefficient with the usual out-of-range convention:
/// zero for `k < 0` or `k > n`.
pub fn binomial(n: usize, k: isize) -> Int {
    if k < 0 || k as usize > n {
        return Int::zero();
    }
    num::integer::binomial(Int::from(n), Int::from(k))
}

/// Number of points in a Hamming ball of radius `r` in `{0,1}^n`.
pub fn ball_size(n: usize, r: usize) -> Int {
    (0..=r.min(n)).map(|k| binomial(n, k as isize)).sum()
}

/// Canonical `"p/q"` form, emitted even when the denominator is 1 so that
/// serialized profiles are bit-reproducible.
pub fn rat_to_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod rat_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_str(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a vector of rationals as `"p/q"` strings.
pub mod rat_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| rat_to_str(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| rat_from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Nearest dyadic rational with denominator `2^bits`. Used to turn float
/// eigenvector estimates into exact candidates; the error is at most
/// `2^-(bits+1)`.
pub fn dyadic(x: f64, bits: u32) -> Result<Rat> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("cannot rationalize {x}")));
    }
    let scaled = (x * (2f64).powi(bits as i32)).round();
    let numer = Int::from_f64(scaled)
        .ok_or_else(|| Error::Domain(format!("cannot rationalize {x} at {bits} bits")))?;
    Ok(Rat::new(numer, Int::one() << bits))
}

/// Nearest dyadic rational keeping roughly `sig_bits` *significant* bits,
/// i.e. relative error about `2^-sig_bits` regardless of magnitude. This is
/// the right rounding for profiles whose entries decay geometrically: a
/// fixed absolute grid would zero out the tail. Entirely integer
/// arithmetic, so the result is deterministic across platforms.
pub fn dyadic_significant(x: f64, sig_bits: u32) -> Result<Rat> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("cannot rationalize {x}")));
    }
    if x == 0.0 {
        return Ok(Rat::zero());
    }
    let exact = Rat::from_float(x).expect("finite float is rational");
    let magnitude = exact.numer().bits() as i64 - exact.denom().bits() as i64;
    let shift = sig_bits as i64 - magnitude;
    if shift <= 0 {
        let step = Int::one() << (-shift) as u64;
        let rounded = (exact / Rat::from_integer(step.clone())).round().to_integer();
        Ok(Rat::from_integer(rounded * step))
    } else {
        let denom = Int::one() << shift as u64;
        let rounded = (exact * Rat::from_integer(denom.clone()))
            .round()
            .to_integer();
        Ok(Rat::new(rounded, denom))
    }
}

/// `log2` of a positive integer, accurate to f64 precision regardless of
/// magnitude (the value itself may have millions of bits).
///
/// Panics if `x <= 0`.
pub fn log2_int(x: &Int) -> f64 {
    assert!(x.is_positive(), "log2_int needs a positive argument");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small integer fits f64").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit window fits f64");
    top.log2() + shift as f64
}

/// `log2` of a positive rational. Panics if `x <= 0`.
pub fn log2_rat(x: &Rat) -> f64 {
    assert!(x.is_positive(), "log2_rat needs a positive argument");
    log2_int(x.numer()) - log2_int(x.denom())
}

const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Rounds a finite `BigFloat` to `f64` via its raw mantissa words.
fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((words, _, sign, exp, _)) => {
            let mut acc = 0.0f64;
            let mut shift = exp as i64 - WORD_BIT_SIZE as i64;
            for w in words.iter().rev().take(2) {
                acc += (*w as u64) as f64 * (2f64).powi(shift as i32);
                shift -= WORD_BIT_SIZE as i64;
            }
            if sign == Sign::Neg {
                -acc
            } else {
                acc
            }
        }
        None => f64::NAN,
    }
}

fn entropy_bf(x: &BigFloat, cc: &mut Consts) -> BigFloat {
    let one = BigFloat::from_f64(1.0, PREC);
    let cx = one.sub(x, PREC, RM);
    let t1 = x.mul(&x.log2(PREC, RM, cc), PREC, RM);
    let t2 = cx.mul(&cx.log2(PREC, RM, cc), PREC, RM);
    t1.add(&t2, PREC, RM).neg()
}

/// Binary entropy `H(x) = -x log2 x - (1-x) log2 (1-x)` on `[0, 1]`,
/// with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("entropy argument {x} outside [0, 1]")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    CONSTS.with(|cc| {
        let mut cc = cc.borrow_mut();
        let xb = BigFloat::from_f64(x, PREC);
        Ok(bf_to_f64(&entropy_bf(&xb, &mut cc)))
    })
}

/// An asymptotic rate, i.e. `log2(size)/n` in the limit. Always in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rate(f64);

impl Rate {
    pub fn new(v: f64) -> Result<Self> {
        if !v.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&v) {
            return Err(Error::Domain(format!("rate {v} outside [0, 1]")));
        }
        Ok(Rate(v.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.0)
    }
}

/// First linear programming bound on the rate of a binary code with relative
/// distance `delta`: `H(1/2 - sqrt(delta (1 - delta)))` for `delta` in
/// `[0, 1/2]`.
pub fn jpl1_rate(delta: f64) -> Result<Rate> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Domain(format!("distance {delta} outside [0, 1/2]")));
    }
    CONSTS.with(|cc| {
        let mut cc = cc.borrow_mut();
        let d = BigFloat::from_f64(delta, PREC);
        let one = BigFloat::from_f64(1.0, PREC);
        let half = BigFloat::from_f64(0.5, PREC);
        let s = d.mul(&one.sub(&d, PREC, RM), PREC, RM).sqrt(PREC, RM);
        let arg = half.sub(&s, PREC, RM);
        if arg.is_negative() || arg.is_zero() {
            // delta = 1/2 lands at (or a hair below) zero, where H = 0
            return Rate::new(0.0);
        }
        Rate::new(bf_to_f64(&entropy_bf(&arg, &mut cc)))
    })
}

/// Sphere-packing (Hamming) bound on the rate: `1 - H(delta/2)` for `delta`
/// in `[0, 1]`.
pub fn packing_rate(delta: f64) -> Result<Rate> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Domain(format!("distance {delta} outside [0, 1]")));
    }
    let h = binary_entropy(delta / 2.0)?;
    Rate::new(1.0 - h)
}
