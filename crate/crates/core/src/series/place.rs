use std::fmt;


use super::SeriesError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Center<K> {
    Finite(K),
    Infinity,
}

/// Where an expansion happens: `t = c + r^e`, or `t = r^{-e}` at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceTag<K> {
    center: Center<K>,
    ram: u32,
}

impl<K: Scalar> PlaceTag<K> {
    pub fn new(center: Center<K>, ram: u32) -> Result<Self, SeriesError> {
        if ram == 0 {
            return Err(SeriesError::InvalidRamification);
        }
        Ok(PlaceTag { center, ram })
    }

    /// `t = r^e`
    pub fn origin(ram: u32) -> Self {
        Self::new(Center::Finite(K::zero()), ram).expect("positive ramification")
    }

    pub fn finite(c: K, ram: u32) -> Self {
        Self::new(Center::Finite(c), ram).expect("positive ramification")
    }

    pub fn infinity(ram: u32) -> Self {
        Self::new(Center::Infinity, ram).expect("positive ramification")
    }

    pub fn center(&self) -> &Center<K> {
        &self.center
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.center, Center::Infinity)
    }

    /// Same centre, ramification multiplied by `k` (substitution `r -> r^k`).
    pub fn ramified(&self, k: u32) -> Self {
        assert!(k >= 1, "ramification factor must be positive");
        PlaceTag { center: self.center.clone(), ram: self.ram * k }
    }

    pub fn same_center(&self, other: &Self) -> bool {
        self.center == other.center
    }
}

impl<K: Scalar> fmt::Display for PlaceTag<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = if self.ram == 1 { "r".to_string() } else { format!("r^{}", self.ram) };
        match &self.center {
            Center::Infinity if self.ram == 1 => write!(f, "t = 1/r"),
            Center::Infinity => write!(f, "t = 1/{pow}"),
            Center::Finite(c) if c.is_zero() => write!(f, "t = {pow}"),
            Center::Finite(c) => write!(f, "t = ({c}) + {pow}"),
        }
    }
}
