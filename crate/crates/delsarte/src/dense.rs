//! Dense functions on the full cube `{0,1}^n`, for small `n`.
//!
//! This is the ground-truth layer: transforms here are plain
//! Walsh–Hadamard butterflies over all `2^n` points, with no Krawtchouk
//! machinery involved. Symmetrizing the results and comparing against the
//! profile-level engine validates that engine from first principles.

use num::One;

use crate::error::{Error, Result};
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{Int, Rat};

const MAX_DENSE_N: usize = 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseCubeFunction {
    n: usize,
    values: Vec<Rat>,
}

impl DenseCubeFunction {
    pub fn new(n: usize, values: Vec<Rat>) -> Result<Self> {
        if n > MAX_DENSE_N {
            return Err(Error::TooLarge(format!(
                "dense cube functions stop at n = {MAX_DENSE_N}, got {n}"
            )));
        }
        if values.len() != 1 << n {
            return Err(Error::Mismatch(format!(
                "need {} values for n = {n}, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(DenseCubeFunction { n, values })
    }

    pub fn from_profile(p: &SymmetricProfile) -> Result<Self> {
        if p.side() != Side::Point {
            return Err(Error::Mismatch(
                "dense expansion needs a point-side profile".into(),
            ));
        }
        let n = p.n();
        if n > MAX_DENSE_N {
            return Err(Error::TooLarge(format!(
                "dense cube functions stop at n = {MAX_DENSE_N}, got {n}"
            )));
        }
        let values = (0..1usize << n)
            .map(|x| p.get(x.count_ones() as usize).clone())
            .collect();
        Ok(DenseCubeFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Unnormalized Walsh–Hadamard transform `Σ_x (-1)^{x·s} f(x)`.
    pub fn wht(&self) -> Self {
        let mut v = self.values.clone();
        for bit in 0..self.n {
            let step = 1usize << bit;
            let mut block = 0;
            while block < v.len() {
                for off in block..block + step {
                    let a = v[off].clone();
                    let b = v[off + step].clone();
                    v[off] = &a + &b;
                    v[off + step] = &a - &b;
                }
                block += step << 1;
            }
        }
        DenseCubeFunction {
            n: self.n,
            values: v,
        }
    }

    /// Normalized transform `f̂(s) = 2^{-n} Σ_x (-1)^{x·s} f(x)`.
    pub fn fourier(&self) -> Self {
        let scale = Rat::new(Int::one(), Int::one() << self.n);
        let mut out = self.wht();
        for v in out.values.iter_mut() {
            *v *= &scale;
        }
        out
    }

    /// Convolution `(f ∗ g)(x) = 2^{-n} Σ_y f(y) g(x + y)`, done through the
    /// transform so it stays `O(n · 2^n)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "dense functions on n = {} and n = {}",
                self.n, other.n
            )));
        }
        let fh = self.fourier();
        let gh = other.fourier();
        let prod: Vec<Rat> = fh
            .values
            .iter()
            .zip(&gh.values)
            .map(|(a, b)| a * b)
            .collect();
        // inversion of the normalized transform is the plain WHT
        Ok(DenseCubeFunction {
            n: self.n,
            values: prod,
        }
        .wht())
    }

    /// Collapse to a weight profile, requiring the function to actually be
    /// symmetric: all points of equal weight must carry equal values.
    pub fn symmetrize(&self, side: Side) -> Result<SymmetricProfile> {
        let mut slots: Vec<Option<Rat>> = vec![None; self.n + 1];
        for (x, v) in self.values.iter().enumerate() {
            let w = x.count_ones() as usize;
            match &slots[w] {
                None => slots[w] = Some(v.clone()),
                Some(seen) if seen == v => {}
                Some(seen) => {
                    return Err(Error::Mismatch(format!(
                        "not symmetric: weight {w} holds both {seen} and {v}"
                    )))
                }
            }
        }
        let values = slots.into_iter().map(|s| s.unwrap()).collect();
        SymmetricProfile::new(self.n, side, values)
    }
}
