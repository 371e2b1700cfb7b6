use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A spin `l ∈ ½ℕ₀`, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const ZERO: Spin = Spin { twice: 0 };
    pub const HALF: Spin = Spin { twice: 1 };

    pub fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn twice_i64(self) -> i64 {
        self.twice as i64
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// `n_l = 2l + 1`.
    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }

    /// Doubled weights `2m` for `m = -l, ..., l`, in index order.
    pub fn weights(self) -> impl Iterator<Item = i64> + Clone {
        let t = self.twice as i64;
        (0..=t).map(move |k| 2 * k - t)
    }

    /// Doubled weight at position `idx`.
    pub fn weight(self, idx: usize) -> i64 {
        2 * idx as i64 - self.twice as i64
    }

    /// Position of the doubled weight `twice_m`.
    pub fn index(self, twice_m: i64) -> Option<usize> {
        let t = self.twice as i64;
        if twice_m.abs() > t || (twice_m + t) % 2 != 0 {
            return None;
        }
        Some(((twice_m + t) / 2) as usize)
    }

    /// All spins `0, 1/2, ..., self`.
    pub fn up_to(self) -> impl Iterator<Item = Spin> {
        (0..=self.twice).map(Spin::from_twice)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spin({})", self)
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"` or `"2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a spin: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            let d: u32 = d.trim().parse().map_err(|_| bad())?;
            return match d {
                1 => Ok(Spin::from_twice(2 * n)),
                2 => Ok(Spin::from_twice(n)),
                _ => Err(bad()),
            };
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let t = 2.0 * v;
        if v < 0.0 || t.fract() != 0.0 {
            return Err(bad());
        }
        Ok(Spin::from_twice(t as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_weights() {
        let s: Spin = "3/2".parse().unwrap();
        assert_eq!(s.twice(), 3);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.weights().collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
        assert_eq!(s.index(1), Some(2));
        assert_eq!(s.index(2), None);
        assert_eq!("1.5".parse::<Spin>().unwrap(), s);
        assert_eq!("2".parse::<Spin>().unwrap().twice(), 4);
        assert!("1/3".parse::<Spin>().is_err());
        assert_eq!(s.to_string(), "3/2");
    }
}
