//! Krawtchouk polynomials for the binary Hamming scheme.
//!
//! `K_s(i) = sum_k (-1)^k C(i,k) C(n-i,s-k)` is the eigenvalue of the
//! distance-`s` relation at weight `i`. Exact integer tables drive the
//! profile Fourier transforms; a float three-term recurrence drives root
//! isolation, which proceeds degree by degree using interlacing brackets.

use num::Integer;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, int, Int};

/// Exact table of all `K_s(i)` for one `n`, `0 <= s, i <= n`.
///
/// Built by the degree recurrence
/// `(s+1) K_{s+1}(i) = (n-2i) K_s(i) - (n-s+1) K_{s-1}(i)`;
/// every division is checked to be exact.
pub struct KrawtchoukTable {
    n: usize,
    rows: Vec<Vec<Int>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n + 1);
        rows.push(vec![Int::one(); n + 1]);
        if n >= 1 {
            rows.push((0..=n).map(|i| int(n as i64 - 2 * i as i64)).collect());
        }
        for s in 1..n {
            let row: Vec<Int> = (0..=n)
                .map(|i| {
                    let num =
                        &rows[1][i] * &rows[s][i] - int((n - s + 1) as i64) * &rows[s - 1][i];
                    let (q, r) = num.div_rem(&int(s as i64 + 1));
                    assert!(r.is_zero(), "inexact division in Krawtchouk recurrence");
                    q
                })
                .collect();
            rows.push(row);
        }
        KrawtchoukTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K_s(i)`. Panics if `s` or `i` exceeds `n`.
    pub fn get(&self, s: usize, i: usize) -> &Int {
        &self.rows[s][i]
    }

    pub fn row(&self, s: usize) -> &[Int] {
        &self.rows[s]
    }

    /// `max_i |K_m(i)|` over integer points, as f64.
    pub fn max_abs(&self, m: usize) -> f64 {
        use num::ToPrimitive;
        self.rows[m]
            .iter()
            .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0f64, f64::max)
    }
}

/// `K_s(i)` by the explicit alternating sum. Independent of the table
/// recurrence; the two are cross-checked in tests.
pub fn kraw_eval_int(n: usize, s: usize, i: usize) -> Result<Int> {
    if s > n || i > n {
        return Err(Error::Domain(format!(
            "kraw_eval_int: s = {s}, i = {i} out of range for n = {n}"
        )));
    }
    let mut acc = Int::zero();
    for k in 0..=s.min(i) {
        let term = binomial(i, k as isize) * binomial(n - i, (s - k) as isize);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `K_m(x)` at a real point via the degree recurrence.
pub fn kraw_eval_real(n: usize, m: usize, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let lin = nf - 2.0 * x;
    let mut prev = 1.0f64;
    let mut cur = lin;
    for j in 1..m {
        let next = (lin * cur - (nf - j as f64 + 1.0) * prev) / (j as f64 + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Checks `C(n,j) K_i(j) = C(n,i) K_j(i)` exactly.
pub fn reciprocity_holds(n: usize, i: usize, j: usize) -> bool {
    match (kraw_eval_int(n, i, j), kraw_eval_int(n, j, i)) {
        (Ok(kij), Ok(kji)) => binomial(n, j as isize) * kij == binomial(n, i as isize) * kji,
        _ => false,
    }
}

/// Roots of one Krawtchouk polynomial, ascending, each located to the
/// stated absolute tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootList {
    pub degree: usize,
    pub roots: Vec<f64>,
    pub tolerance: f64,
}

/// Roots of `K_1, ..., K_m` for the given `n` (`1 <= m <= n`).
///
/// Degree `m` has exactly `m` simple roots in `(0, n)` which strictly
/// interlace those of degree `m - 1`; that gives sign-definite brackets for
/// bisection at every level, seeded from the single root `n/2` of `K_1`.
pub fn kraw_roots_upto(n: usize, m: usize) -> Result<Vec<RootList>> {
    if m == 0 || m > n {
        return Err(Error::Domain(format!(
            "root isolation needs 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let tol = 1e-10 * n as f64;
    let mut out: Vec<RootList> = Vec::with_capacity(m);
    let mut prev: Vec<f64> = Vec::new();
    for deg in 1..=m {
        let mut pts = Vec::with_capacity(deg + 1);
        pts.push(0.0);
        pts.extend_from_slice(&prev);
        pts.push(n as f64);
        let mut roots = Vec::with_capacity(deg);
        for w in pts.windows(2) {
            roots.push(bisect_root(n, deg, w[0], w[1], tol)?);
        }
        prev.clone_from(&roots);
        out.push(RootList {
            degree: deg,
            roots,
            tolerance: tol,
        });
    }
    Ok(out)
}

/// Roots of `K_m` alone.
pub fn kraw_roots(n: usize, m: usize) -> Result<RootList> {
    Ok(kraw_roots_upto(n, m)?.pop().expect("nonempty cascade"))
}

/// Closed-form lower bound `n/2 - sqrt(m (n - m + 2))` on the first root
/// of `K_m`.
pub fn first_root_lower_bound(n: usize, m: usize) -> f64 {
    n as f64 / 2.0 - ((m * (n - m + 2)) as f64).sqrt()
}

/// Float recurrence with a running bound on accumulated roundoff. The
/// returned guard over-estimates the absolute error, so any value clearing
/// it has a trustworthy sign.
fn kraw_eval_real_guarded(n: usize, m: usize, x: f64) -> (f64, f64) {
    if m == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    let lin = nf - 2.0 * x;
    let mut prev = 1.0f64;
    let mut cur = lin;
    let mut mag = lin.abs().max(1.0);
    for j in 1..m {
        let next = (lin * cur - (nf - j as f64 + 1.0) * prev) / (j as f64 + 1.0);
        prev = cur;
        cur = next;
        mag = mag.max(cur.abs());
    }
    (cur, 32.0 * f64::EPSILON * m as f64 * mag)
}

/// Exact sign of `K_m(x)` at a finite float point. Writing `x = p/q` with
/// `q` a power of two, the scaled values `V_j = j! q^j K_j(x)` obey the
/// all-integer recurrence `V_{j+1} = (nq - 2p) V_j - j (n-j+1) q² V_{j-1}`,
/// so no rational reduction is ever needed and the sign of `V_m` is the
/// sign of `K_m(x)`.
fn kraw_sign_exact(n: usize, m: usize, x: f64) -> i8 {
    if m == 0 {
        return 1;
    }
    let (mant, exp, sign) = num::Float::integer_decode(x);
    let mut p = Int::from(mant);
    if sign < 0 {
        p = -p;
    }
    let q = if exp >= 0 {
        p <<= exp as usize;
        Int::one()
    } else {
        Int::one() << ((-exp) as usize)
    };
    let lin = Int::from(n as u64) * &q - (&p << 1usize);
    let qq = &q * &q;
    let mut prev = Int::one();
    let mut cur = lin.clone();
    for j in 1..m {
        let next = &lin * &cur - Int::from((j * (n - j + 1)) as u64) * &qq * &prev;
        prev = cur;
        cur = next;
    }
    if cur.is_zero() {
        0
    } else if cur.is_positive() {
        1
    } else {
        -1
    }
}

/// True sign of `K_m(x)`: the float value when it clears its roundoff
/// guard, the exact integer recurrence otherwise. High degrees need this —
/// intermediates reach `C(n, n/2)` while the value near an edge root can
/// be orders of magnitude below the float noise floor, and one wrong sign
/// corrupts every interlacing bracket above it in the cascade.
fn sign_at(n: usize, m: usize, x: f64) -> i8 {
    let (v, guard) = kraw_eval_real_guarded(n, m, x);
    if v.abs() > guard {
        return if v > 0.0 { 1 } else { -1 };
    }
    kraw_sign_exact(n, m, x)
}

/// Bisection runs to float exhaustion, not to the stated tolerance: near
/// the cube's edge at high degree the true roots hug the integers at the
/// 1e-10 scale, so gaps between the roots of consecutive degrees are far
/// smaller than any fixed tolerance, and the cascade's brackets are only
/// valid if each level's roots carry full f64 precision.
fn bisect_root(n: usize, m: usize, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let nudge = tol * 0.25;
    let mut sa = sign_at(n, m, a);
    if sa == 0 {
        a += nudge;
        sa = sign_at(n, m, a);
    }
    let mut sb = sign_at(n, m, b);
    if sb == 0 {
        b -= nudge;
        sb = sign_at(n, m, b);
    }
    if sa == 0 || sb == 0 || sa == sb {
        return Err(Error::BadBracket { degree: m, lo: a, hi: b });
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let sm = sign_at(n, m, mid);
        if sm == 0 {
            // dyadic roots exist (n/2 for K_1, the center for odd m)
            return Ok(mid);
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
