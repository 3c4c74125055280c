//! Exact angle arithmetic on rational multiples of π.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An angle `q·π` with `q` rational. Comparisons and sums are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMultiple(Ratio<i64>);

impl PiMultiple {
    pub const ZERO: PiMultiple = PiMultiple(Ratio::new_raw(0, 1));
    pub const PI: PiMultiple = PiMultiple(Ratio::new_raw(1, 1));

    /// `numer/denom · π`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        PiMultiple(Ratio::new(numer, denom))
    }

    /// `π/n`.
    pub fn pi_over(n: i64) -> Self {
        Self::new(1, n)
    }

    pub fn from_ratio(q: Ratio<i64>) -> Self {
        PiMultiple(q)
    }

    /// The coefficient of π.
    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn radians(self) -> f64 {
        self.numer() as f64 / self.denom() as f64 * std::f64::consts::PI
    }

    /// The `"n/d"` encoding of the coefficient of π used by the JSON outputs.
    pub fn to_fraction_string(self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// If the angle is `π/n` for a positive integer `n`, returns `n`.
    pub fn submultiple_of_pi(self) -> Option<i64> {
        (self.numer() == 1 && self.denom() >= 1).then_some(self.denom())
    }

    pub fn sum<I: IntoIterator<Item = PiMultiple>>(iter: I) -> PiMultiple {
        iter.into_iter().fold(PiMultiple::ZERO, |a, b| a + b)
    }
}

impl Add for PiMultiple {
    type Output = PiMultiple;
    fn add(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple(self.0 + rhs.0)
    }
}

impl Sub for PiMultiple {
    type Output = PiMultiple;
    fn sub(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple(self.0 - rhs.0)
    }
}

impl Mul<i64> for PiMultiple {
    type Output = PiMultiple;
    fn mul(self, rhs: i64) -> PiMultiple {
        PiMultiple(self.0 * rhs)
    }
}

impl Mul<Ratio<i64>> for PiMultiple {
    type Output = PiMultiple;
    fn mul(self, rhs: Ratio<i64>) -> PiMultiple {
        PiMultiple(self.0 * rhs)
    }
}

/// Renders as the tables do: `π/2`, `2π/3`, `π`, `3π/2`.
impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numer(), self.denom());
        match (n, d) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (-1, 1) => write!(f, "-π"),
            (1, d) => write!(f, "π/{d}"),
            (-1, d) => write!(f, "-π/{d}"),
            (n, 1) => write!(f, "{n}π"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

/// Parses `"n/d"` or `"n"` as the coefficient of π.
impl FromStr for PiMultiple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse {s:?} as a rational multiple of π"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(PiMultiple::new(n, d))
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for PiMultiple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Corner angle between two boundary arcs of an orbit space.
///
/// Restricted to `π/2, π/3, π/4, π/6`, plus the value `π` that marks a
/// boundary circle with no vertex (the hemisphere).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PiMultiple", into = "PiMultiple")]
pub struct BoundaryAngle(PiMultiple);

/// Denominators `n` of the admissible corner angles `π/n`, largest angle first.
pub const ADMISSIBLE_DENOMINATORS: [i64; 4] = [2, 3, 4, 6];

impl BoundaryAngle {
    /// The vertex-free boundary marker.
    pub const NO_VERTEX: BoundaryAngle = BoundaryAngle(PiMultiple::PI);

    pub fn new(angle: PiMultiple) -> Result<Self> {
        let ok = angle == PiMultiple::PI
            || angle
                .submultiple_of_pi()
                .is_some_and(|n| ADMISSIBLE_DENOMINATORS.contains(&n));
        if ok {
            Ok(BoundaryAngle(angle))
        } else {
            Err(Error::Domain(format!(
                "{angle} is not an admissible boundary angle"
            )))
        }
    }

    /// `π/n`; errors unless `n ∈ {2, 3, 4, 6}`.
    pub fn pi_over(n: i64) -> Result<Self> {
        Self::new(PiMultiple::pi_over(n))
    }

    pub fn angle(self) -> PiMultiple {
        self.0
    }

    pub fn is_vertex_free_marker(self) -> bool {
        self == Self::NO_VERTEX
    }
}

impl TryFrom<PiMultiple> for BoundaryAngle {
    type Error = Error;
    fn try_from(a: PiMultiple) -> Result<Self> {
        BoundaryAngle::new(a)
    }
}

impl From<BoundaryAngle> for PiMultiple {
    fn from(a: BoundaryAngle) -> PiMultiple {
        a.0
    }
}

impl fmt::Display for BoundaryAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The four corner angles `π/2, π/3, π/4, π/6` a pair of boundary arcs can meet at.
pub fn admissible_boundary_angles() -> Vec<BoundaryAngle> {
    ADMISSIBLE_DENOMINATORS
        .iter()
        .map(|&n| BoundaryAngle(PiMultiple::pi_over(n)))
        .collect()
}

/// Interior cone point of total angle `2π/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct ConeAngle(u32);

impl ConeAngle {
    pub fn new(order: u32) -> Result<Self> {
        if order >= 2 {
            Ok(ConeAngle(order))
        } else {
            Err(Error::Domain(format!(
                "cone order must be at least 2, got {order}"
            )))
        }
    }

    pub fn order(self) -> u32 {
        self.0
    }

    /// The total angle `2π/p`.
    pub fn angle(self) -> PiMultiple {
        PiMultiple::new(2, self.0 as i64)
    }
}

impl TryFrom<u32> for ConeAngle {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        ConeAngle::new(p)
    }
}

impl From<ConeAngle> for u32 {
    fn from(c: ConeAngle) -> u32 {
        c.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_set() {
        let set = admissible_boundary_angles();
        assert_eq!(set.len(), 4);
        let angles: Vec<PiMultiple> = set.iter().map(|a| a.angle()).collect();
        for n in [2, 3, 4, 6] {
            assert!(angles.contains(&PiMultiple::pi_over(n)));
        }
        assert!(!angles.contains(&PiMultiple::pi_over(5)));
        assert!(BoundaryAngle::pi_over(5).is_err());
        assert!(BoundaryAngle::new(PiMultiple::PI)
            .unwrap()
            .is_vertex_free_marker());
    }

    #[test]
    fn display_matches_table_notation() {
        assert_eq!(PiMultiple::new(1, 2).to_string(), "π/2");
        assert_eq!(PiMultiple::new(2, 3).to_string(), "2π/3");
        assert_eq!(PiMultiple::new(2, 2).to_string(), "π");
        assert_eq!(ConeAngle::new(4).unwrap().angle().to_string(), "π/2");
        assert_eq!(PiMultiple::new(3, 2).to_string(), "3π/2");
    }

    #[test]
    fn parse_fraction() {
        assert_eq!("1/3".parse::<PiMultiple>().unwrap(), PiMultiple::pi_over(3));
        assert_eq!(
            " 2 / 4 ".parse::<PiMultiple>().unwrap(),
            PiMultiple::pi_over(2)
        );
        assert_eq!("1".parse::<PiMultiple>().unwrap(), PiMultiple::PI);
        assert!("1/0".parse::<PiMultiple>().is_err());
        assert!("x".parse::<PiMultiple>().is_err());
    }

    #[test]
    fn cone_order_lower_bound() {
        assert!(ConeAngle::new(1).is_err());
        assert_eq!(ConeAngle::new(2).unwrap().angle(), PiMultiple::PI);
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let json = serde_json::to_string(&BoundaryAngle::pi_over(3).unwrap()).unwrap();
        assert_eq!(json, "\"1/3\"");
        let back: BoundaryAngle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, BoundaryAngle::pi_over(3).unwrap());
        assert!(serde_json::from_str::<BoundaryAngle>("\"1/5\"").is_err());
    }
}
