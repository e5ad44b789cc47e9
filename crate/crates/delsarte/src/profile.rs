//! Weight profiles: length-`n+1` rational vectors standing for symmetric
//! functions on the cube.
//!
//! A profile is tagged with the side it lives on: `point` values are the
//! function's value at each Hamming weight, `fourier` values are its
//! transform coefficients by weight. The tag exists purely to catch
//! plumbing mistakes — transforms flip it, and mixed-side arithmetic is
//! rejected.

use num::{Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{rat_from_str, rat_to_str, Int, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Point,
    Fourier,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Point => write!(f, "point"),
            Side::Fourier => write!(f, "fourier"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricProfile {
    n: usize,
    side: Side,
    values: Vec<Rat>,
}

impl SymmetricProfile {
    pub fn new(n: usize, side: Side, values: Vec<Rat>) -> Result<Self> {
        if values.len() != n + 1 {
            return Err(Error::Mismatch(format!(
                "profile for n = {n} needs {} values, got {}",
                n + 1,
                values.len()
            )));
        }
        Ok(SymmetricProfile { n, side, values })
    }

    pub fn zeros(n: usize, side: Side) -> Self {
        SymmetricProfile {
            n,
            side,
            values: vec![Rat::zero(); n + 1],
        }
    }

    /// Indicator profile of the sphere `S(n, r)` (point side).
    pub fn sphere(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Domain(format!("sphere radius {r} exceeds n = {n}")));
        }
        let mut p = Self::zeros(n, Side::Point);
        p.values[r] = Rat::one();
        Ok(p)
    }

    /// Indicator profile of the ball `B(n, r)` (point side).
    pub fn ball(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Domain(format!("ball radius {r} exceeds n = {n}")));
        }
        let mut p = Self::zeros(n, Side::Point);
        for v in p.values.iter_mut().take(r + 1) {
            *v = Rat::one();
        }
        Ok(p)
    }

    /// The convolution identity `2^n * 1_{0}` (point side).
    pub fn delta(n: usize) -> Self {
        let mut p = Self::zeros(n, Side::Point);
        p.values[0] = Rat::from_integer(Int::one() << n);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.values[i]
    }

    pub fn set(&mut self, i: usize, v: Rat) {
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        SymmetricProfile {
            n: self.n,
            side: self.side,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(SymmetricProfile {
            n: self.n,
            side: self.side,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(SymmetricProfile {
            n: self.n,
            side: self.side,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "profiles for n = {} and n = {}",
                self.n, other.n
            )));
        }
        if self.side != other.side {
            return Err(Error::Mismatch(format!(
                "{} side vs {} side",
                self.side, other.side
            )));
        }
        Ok(())
    }

    /// Largest weight with a nonzero entry.
    pub fn support_radius(&self) -> Option<usize> {
        self.values.iter().rposition(|v| !v.is_zero())
    }

    /// Number of cube points where the (point-side) function is nonzero:
    /// the sum of `C(n, i)` over nonzero entries.
    pub fn cube_support_size(&self) -> Int {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| crate::scalar::binomial(self.n, i as isize))
            .sum()
    }
}

use num::One;

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    n: usize,
    side: Side,
    values: Vec<String>,
}

impl Serialize for SymmetricProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRepr {
            n: self.n,
            side: self.side,
            values: self.values.iter().map(rat_to_str).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(d)?;
        let values = repr
            .values
            .iter()
            .map(|s| rat_from_str(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SymmetricProfile::new(repr.n, repr.side, values).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, ratio};

    #[test]
    fn construction_validates_length() {
        assert!(SymmetricProfile::new(3, Side::Point, vec![rat(1); 4]).is_ok());
        assert!(SymmetricProfile::new(3, Side::Point, vec![rat(1); 3]).is_err());
    }

    #[test]
    fn sphere_and_ball() {
        let s = SymmetricProfile::sphere(5, 2).unwrap();
        assert_eq!(s.get(2), &rat(1));
        assert_eq!(s.get(1), &rat(0));
        assert_eq!(s.support_radius(), Some(2));
        assert_eq!(s.cube_support_size(), int(10));

        let b = SymmetricProfile::ball(5, 2).unwrap();
        assert_eq!(b.cube_support_size(), int(16));
        assert!(SymmetricProfile::sphere(5, 6).is_err());
    }

    #[test]
    fn delta_profile() {
        let d = SymmetricProfile::delta(4);
        assert_eq!(d.get(0), &rat(16));
        assert!(d.values()[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn arithmetic_and_mismatch() {
        let a = SymmetricProfile::sphere(4, 1).unwrap();
        let b = SymmetricProfile::sphere(4, 2).unwrap();
        let sum = a.try_add(&b).unwrap();
        assert_eq!(sum.get(1), &rat(1));
        assert_eq!(sum.get(2), &rat(1));
        assert!(sum.try_sub(&a).unwrap().try_sub(&b).unwrap().is_zero());

        let c = SymmetricProfile::sphere(5, 1).unwrap();
        assert!(a.try_add(&c).is_err());
        let mut hat = SymmetricProfile::zeros(4, Side::Fourier);
        hat.set(0, rat(1));
        assert!(a.try_add(&hat).is_err());
    }

    #[test]
    fn scaling_and_negativity() {
        let a = SymmetricProfile::sphere(4, 1).unwrap();
        let s = a.scaled(&ratio(-3, 2));
        assert_eq!(s.get(1), &ratio(-3, 2));
        assert!(!s.is_nonnegative());
        assert!(a.is_nonnegative());
    }

    #[test]
    fn serde_shape_is_frozen() {
        let mut p = SymmetricProfile::zeros(2, Side::Point);
        p.set(0, rat(1));
        p.set(2, ratio(3, 2));
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"n":2,"side":"point","values":["1/1","0/1","3/2"]}"#);
        let back: SymmetricProfile = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn serde_rejects_bad_input() {
        let bad_len = r#"{"n":3,"side":"point","values":["1/1"]}"#;
        assert!(serde_json::from_str::<SymmetricProfile>(bad_len).is_err());
        let bad_rat = r#"{"n":0,"side":"fourier","values":["1/0"]}"#;
        assert!(serde_json::from_str::<SymmetricProfile>(bad_rat).is_err());
        let bad_side = r#"{"n":0,"side":"middle","values":["1/1"]}"#;
        assert!(serde_json::from_str::<SymmetricProfile>(bad_side).is_err());
    }
}
