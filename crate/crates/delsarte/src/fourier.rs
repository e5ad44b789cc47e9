//! Exact Fourier analysis of symmetric functions on the cube.
//!
//! For a profile `f` the transform is `f̂_s = 2^{-n} Σ_i f_i K_i(s)` and the
//! inversion is `f_i = Σ_s f̂_s K_s(i)`; by reciprocity both directions use
//! the Krawtchouk kernel with the same orientation, so they share one
//! integer dot-product core. Normalizations follow the convention where
//! `δ = 2^n · 1_{{0}}` is the convolution identity and
//! `⟨f, g⟩ = 2^{-n} Σ_i C(n,i) f_i g_i`.

use std::sync::OnceLock;

use num::{Integer, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::krawtchouk::{kraw_eval_int, KrawtchoukTable};
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{binomial, Int, Rat};

/// Inputs with at most this many nonzero entries go through explicit
/// Krawtchouk sums instead of the dense table.
const SPARSE_LIMIT: usize = 8;

/// Transform context for a fixed dimension. The Krawtchouk table is built
/// lazily, so holding a `Cube` for a large `n` costs nothing until a dense
/// transform is actually requested; the sparse helpers below never force it.
pub struct Cube {
    n: usize,
    table: OnceLock<KrawtchoukTable>,
}

impl Cube {
    pub fn new(n: usize) -> Self {
        Cube {
            n,
            table: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &KrawtchoukTable {
        self.table.get_or_init(|| KrawtchoukTable::new(self.n))
    }

    fn check(&self, p: &SymmetricProfile, side: Side) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Mismatch(format!(
                "profile for n = {} on a cube of dimension {}",
                p.n(),
                self.n
            )));
        }
        if p.side() != side {
            return Err(Error::Mismatch(format!(
                "expected a {side}-side profile, got {}",
                p.side()
            )));
        }
        Ok(())
    }

    /// Shared integer core: clear denominators, take Krawtchouk dot products
    /// against every output index, and reduce once per output. By
    /// reciprocity both transform directions apply `K_input(output)`, so one
    /// core serves both. Sparse inputs skip the table entirely.
    fn kernel_apply(&self, values: &[Rat]) -> Vec<Rat> {
        let denom = values
            .iter()
            .fold(Int::one(), |acc, v| acc.lcm(v.denom()));
        let numers: Vec<Int> = values
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        let support: Vec<usize> = numers
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, _)| i)
            .collect();

        let sums: Vec<Int> = if support.len() <= SPARSE_LIMIT {
            let dot = |out: usize| {
                let mut acc = Int::zero();
                for &inp in &support {
                    acc += &numers[inp] * kraw_eval_int(self.n, inp, out).expect("in range");
                }
                acc
            };
            if self.n >= 64 {
                (0..=self.n).into_par_iter().map(dot).collect()
            } else {
                (0..=self.n).map(dot).collect()
            }
        } else {
            let t = self.table();
            let dot = |out: usize| {
                let mut acc = Int::zero();
                for &inp in &support {
                    acc += &numers[inp] * t.get(inp, out);
                }
                acc
            };
            if self.n >= 64 {
                (0..=self.n).into_par_iter().map(dot).collect()
            } else {
                (0..=self.n).map(dot).collect()
            }
        };
        sums.into_iter()
            .map(|s| Rat::new(s, denom.clone()))
            .collect()
    }

    /// Single transform coefficient `f̂_s = 2^{-n} Σ_i f_i K_i(s)` via
    /// explicit sums; `O(n·(s+1))` and never builds the table, so it is the
    /// right tool for `f̂(0)` of a long profile.
    pub fn fourier_at(&self, f: &SymmetricProfile, s: usize) -> Result<Rat> {
        self.check(f, Side::Point)?;
        if s > self.n {
            return Err(Error::Domain(format!("weight {s} exceeds n = {}", self.n)));
        }
        let mut acc = Rat::zero();
        for i in 0..=self.n {
            if !f.get(i).is_zero() {
                acc += f.get(i) * Rat::from_integer(kraw_eval_int(self.n, i, s)?);
            }
        }
        Ok(acc * Rat::new(Int::one(), Int::one() << self.n))
    }

    pub fn fourier(&self, f: &SymmetricProfile) -> Result<SymmetricProfile> {
        self.check(f, Side::Point)?;
        let scale = Rat::new(Int::one(), Int::one() << self.n);
        let vals = self
            .kernel_apply(f.values())
            .into_iter()
            .map(|v| v * &scale)
            .collect();
        SymmetricProfile::new(self.n, Side::Fourier, vals)
    }

    pub fn inverse(&self, fhat: &SymmetricProfile) -> Result<SymmetricProfile> {
        self.check(fhat, Side::Fourier)?;
        let vals = self.kernel_apply(fhat.values());
        SymmetricProfile::new(self.n, Side::Point, vals)
    }

    /// `⟨f, g⟩ = 2^{-n} Σ_i C(n,i) f_i g_i` over point-side profiles.
    pub fn inner(&self, f: &SymmetricProfile, g: &SymmetricProfile) -> Result<Rat> {
        self.check(f, Side::Point)?;
        self.check(g, Side::Point)?;
        let mut acc = Rat::zero();
        for i in 0..=self.n {
            if !f.get(i).is_zero() && !g.get(i).is_zero() {
                acc += f.get(i) * g.get(i) * Rat::from_integer(binomial(self.n, i as isize));
            }
        }
        Ok(acc * Rat::new(Int::one(), Int::one() << self.n))
    }

    /// Spectral side of Parseval: `Σ_s C(n,s) f̂_s ĝ_s`.
    pub fn fourier_inner(
        &self,
        fhat: &SymmetricProfile,
        ghat: &SymmetricProfile,
    ) -> Result<Rat> {
        self.check(fhat, Side::Fourier)?;
        self.check(ghat, Side::Fourier)?;
        let mut acc = Rat::zero();
        for s in 0..=self.n {
            if !fhat.get(s).is_zero() && !ghat.get(s).is_zero() {
                acc += fhat.get(s) * ghat.get(s) * Rat::from_integer(binomial(self.n, s as isize));
            }
        }
        Ok(acc)
    }

    /// Entrywise product; both profiles must live on the same side.
    pub fn hadamard(
        &self,
        a: &SymmetricProfile,
        b: &SymmetricProfile,
    ) -> Result<SymmetricProfile> {
        self.check(a, a.side())?;
        self.check(b, a.side())?;
        let vals = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| x * y)
            .collect();
        SymmetricProfile::new(self.n, a.side(), vals)
    }

    /// Convolution through the transform: `(f ∗ g)^ = f̂ ĝ`.
    pub fn convolve(
        &self,
        f: &SymmetricProfile,
        g: &SymmetricProfile,
    ) -> Result<SymmetricProfile> {
        let fh = self.fourier(f)?;
        let gh = self.fourier(g)?;
        self.inverse(&self.hadamard(&fh, &gh)?)
    }

    /// `m`-fold convolution power via entrywise powers of the transform.
    pub fn conv_power(&self, f: &SymmetricProfile, m: u32) -> Result<SymmetricProfile> {
        if m == 0 {
            return Ok(SymmetricProfile::delta(self.n));
        }
        let fh = self.fourier(f)?;
        let vals = fh.values().iter().map(|v| pow_rat(v, m)).collect();
        let powered = SymmetricProfile::new(self.n, Side::Fourier, vals)?;
        self.inverse(&powered)
    }
}

fn pow_rat(v: &Rat, m: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..m {
        acc *= v;
    }
    acc
}

/// Convolution with the scaled sphere indicator `2^n · 1_{S(n,j)}`, computed
/// from intersection numbers instead of dense transforms:
/// `out_i = Σ_a C(i,a) C(n-i, j-a) f_{i+j-2a}`. Exact and `O(n·j)`, so it
/// stays usable at dimensions where an `(n+1)^2` table would not.
pub fn sphere_conv(n: usize, j: usize, f: &SymmetricProfile) -> Result<SymmetricProfile> {
    if f.n() != n {
        return Err(Error::Mismatch(format!(
            "profile for n = {} with sphere in dimension {n}",
            f.n()
        )));
    }
    if f.side() != Side::Point {
        return Err(Error::Mismatch("sphere_conv needs a point-side profile".into()));
    }
    if j > n {
        return Err(Error::Domain(format!("sphere weight {j} exceeds n = {n}")));
    }
    let mut out = SymmetricProfile::zeros(n, Side::Point);
    for i in 0..=n {
        let mut acc = Rat::zero();
        for a in 0..=j.min(i) {
            let k = i + j - 2 * a;
            if k > n {
                continue;
            }
            if f.get(k).is_zero() {
                continue;
            }
            let ways = binomial(i, a as isize) * binomial(n - i, (j - a) as isize);
            if !ways.is_zero() {
                acc += f.get(k) * Rat::from_integer(ways);
            }
        }
        out.set(i, acc);
    }
    Ok(out)
}

/// Convolution that exploits sparsity: when one factor is supported on few
/// spheres, decompose it as `g = Σ_j g_j 1_{S(j)}` and sum sphere
/// convolutions, which keeps huge dimensions tractable. Dense inputs fall
/// back to the transform route.
pub fn sphere_aware_convolve(
    cube: &Cube,
    g: &SymmetricProfile,
    f: &SymmetricProfile,
) -> Result<SymmetricProfile> {
    cube.check(g, Side::Point)?;
    cube.check(f, Side::Point)?;
    let sparse_of = |p: &SymmetricProfile| {
        let nz: Vec<usize> = (0..=cube.n()).filter(|&i| !p.get(i).is_zero()).collect();
        (nz.len() <= SPARSE_LIMIT).then_some(nz)
    };
    let (sparse, dense, support) = if let Some(nz) = sparse_of(g) {
        (g, f, nz)
    } else if let Some(nz) = sparse_of(f) {
        (f, g, nz)
    } else {
        return cube.convolve(g, f);
    };
    let n = cube.n();
    let scale = Rat::new(Int::one(), Int::one() << n);
    let mut acc = SymmetricProfile::zeros(n, Side::Point);
    for j in support {
        let part = sphere_conv(n, j, dense)?;
        acc = acc.try_add(&part.scaled(&(sparse.get(j) * &scale)))?;
    }
    Ok(acc)
}
