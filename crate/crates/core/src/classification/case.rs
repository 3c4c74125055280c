use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::angle::{BoundaryAngle, ConeAngle, PiMultiple, ADMISSIBLE_DENOMINATORS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureClass {
    ConstantPositive,
    PositiveNonConstant,
    Flat,
}

impl CurvatureClass {
    pub fn is_positive(self) -> bool {
        !matches!(self, CurvatureClass::Flat)
    }
}

/// Free parameter of a case family.
///
/// `P`, `Q` stand for cone orders (integers ≥ 2); `Alpha`, `Beta` for corner
/// angles from the admissible set. A binding value `k` for an angle parameter
/// means the angle `π/k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    P,
    Q,
    Alpha,
    Beta,
}

/// Cone orders used when instantiating a cone-order family.
pub const CONE_ORDER_WINDOW: std::ops::RangeInclusive<u32> = 2..=6;

impl Param {
    pub fn symbol(self) -> &'static str {
        match self {
            Param::P => "p",
            Param::Q => "q",
            Param::Alpha => "α",
            Param::Beta => "β",
        }
    }

    /// ASCII name used in JSON.
    pub fn name(self) -> &'static str {
        match self {
            Param::P => "p",
            Param::Q => "q",
            Param::Alpha => "alpha",
            Param::Beta => "beta",
        }
    }

    /// Inverse of [`Param::name`]; also accepts the Greek symbols.
    pub fn from_name(s: &str) -> Option<Param> {
        match s {
            "p" => Some(Param::P),
            "q" => Some(Param::Q),
            "alpha" | "α" => Some(Param::Alpha),
            "beta" | "β" => Some(Param::Beta),
            _ => None,
        }
    }

    pub fn is_angle(self) -> bool {
        matches!(self, Param::Alpha | Param::Beta)
    }

    /// Concrete binding values used by [`OrbitSpaceCase::instances`].
    pub fn window(self) -> Vec<i64> {
        if self.is_angle() {
            ADMISSIBLE_DENOMINATORS.to_vec()
        } else {
            CONE_ORDER_WINDOW.map(i64::from).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleSlot {
    Fixed(BoundaryAngle),
    Free(Param),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeSlot {
    Fixed(ConeAngle),
    Free(Param),
}

/// One corner of a tile: a fixed angle, `π/p` for a free order, or a free
/// corner angle `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileAngle {
    Fixed(PiMultiple),
    PiOver(Param),
    Free(Param),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TilingTarget {
    Sphere,
    Plane,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TileShape {
    /// The whole sphere is the single tile.
    Sphere,
    Hemisphere,
    Polygon(Vec<TileAngle>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileCount {
    Finite(u64),
    /// `factor · p` for an order parameter, `factor · π/α` for an angle one.
    Linear {
        factor: u64,
        param: Param,
    },
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TilingDescriptor {
    pub target: TilingTarget,
    pub tile: TileShape,
    pub tile_count: TileCount,
}

impl TilingDescriptor {
    /// Corner angles of a concrete polygonal tile.
    pub fn tile_angles(&self) -> Option<Vec<PiMultiple>> {
        match &self.tile {
            TileShape::Polygon(corners) => corners
                .iter()
                .map(|c| match c {
                    TileAngle::Fixed(a) => Some(*a),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    pub fn finite_count(&self) -> Option<u64> {
        match self.tile_count {
            TileCount::Finite(c) => Some(c),
            _ => None,
        }
    }
}

/// One row of the classification, possibly a parametric family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitSpaceCase {
    pub case_id: u32,
    pub boundary: Vec<AngleSlot>,
    pub cones: Vec<ConeSlot>,
    pub curvature_class: CurvatureClass,
    pub tiling: Option<TilingDescriptor>,
}

impl OrbitSpaceCase {
    /// Distinct free parameters, in slot order.
    pub fn params(&self) -> Vec<Param> {
        let mut out = Vec::new();
        let mut push = |p: Param| {
            if !out.contains(&p) {
                out.push(p);
            }
        };
        for s in &self.boundary {
            if let AngleSlot::Free(p) = s {
                push(*p);
            }
        }
        for s in &self.cones {
            if let ConeSlot::Free(p) = s {
                push(*p);
            }
        }
        out
    }

    pub fn is_concrete(&self) -> bool {
        self.params().is_empty()
    }

    pub fn has_tiling(&self) -> bool {
        self.tiling.is_some()
    }

    /// Boundary corner angles, when no slot is free.
    pub fn boundary_angles(&self) -> Option<Vec<BoundaryAngle>> {
        self.boundary
            .iter()
            .map(|s| match s {
                AngleSlot::Fixed(a) => Some(*a),
                AngleSlot::Free(_) => None,
            })
            .collect()
    }

    pub fn cone_angles(&self) -> Option<Vec<ConeAngle>> {
        self.cones
            .iter()
            .map(|s| match s {
                ConeSlot::Fixed(c) => Some(*c),
                ConeSlot::Free(_) => None,
            })
            .collect()
    }

    /// Replaces every occurrence of `param` by the value `k` (order `k`, or angle `π/k`).
    pub fn substitute(&self, param: Param, k: i64) -> Result<OrbitSpaceCase> {
        let angle = BoundaryAngle::pi_over(k);
        let order = u32::try_from(k)
            .map_err(|_| Error::Domain(format!("bad order {k}")))
            .and_then(ConeAngle::new);
        let mut out = self.clone();
        for s in &mut out.boundary {
            if *s == AngleSlot::Free(param) {
                *s = AngleSlot::Fixed(angle.clone()?);
            }
        }
        for s in &mut out.cones {
            if *s == ConeSlot::Free(param) {
                *s = ConeSlot::Fixed(order.clone()?);
            }
        }
        if let Some(t) = &mut out.tiling {
            if let TileShape::Polygon(corners) = &mut t.tile {
                for c in corners.iter_mut() {
                    match *c {
                        TileAngle::PiOver(p) | TileAngle::Free(p) if p == param => {
                            *c = TileAngle::Fixed(PiMultiple::pi_over(k));
                        }
                        _ => {}
                    }
                }
            }
            if let TileCount::Linear { factor, param: p } = t.tile_count {
                if p == param {
                    t.tile_count = TileCount::Finite(factor * k as u64);
                }
            }
        }
        Ok(out)
    }

    /// Concrete members of the family over each parameter's window. Symmetric
    /// parameter pairs (`p, q` and `α, β`) are taken with `p ≤ q`, `α ≥ β`.
    /// A concrete case returns itself.
    pub fn instances(&self) -> Vec<OrbitSpaceCase> {
        let mut acc = vec![(self.clone(), Vec::<(Param, i64)>::new())];
        for param in self.params() {
            let mut next = Vec::new();
            for (case, bound) in &acc {
                for k in param.window() {
                    let ordered = bound.iter().all(|&(prev, v)| {
                        let paired = matches!(
                            (prev, param),
                            (Param::P, Param::Q) | (Param::Alpha, Param::Beta)
                        );
                        !paired || v <= k
                    });
                    if !ordered {
                        continue;
                    }
                    let mut b = bound.clone();
                    b.push((param, k));
                    next.push((
                        case.substitute(param, k).expect("window values are valid"),
                        b,
                    ));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(c, _)| c).collect()
    }

    /// Whether a concrete configuration (corner angles, cone orders) is a
    /// member of this record, with free slots matching any admissible value.
    pub fn matches(&self, boundary: &[BoundaryAngle], cone_orders: &[u32]) -> bool {
        fn multiset_match<T: PartialEq + Copy>(
            fixed: &[T],
            free: usize,
            target: &[T],
            ok: impl Fn(T) -> bool,
        ) -> bool {
            if fixed.len() + free != target.len() {
                return false;
            }
            let mut rest: Vec<T> = target.to_vec();
            for f in fixed {
                match rest.iter().position(|x| x == f) {
                    Some(i) => {
                        rest.swap_remove(i);
                    }
                    None => return false,
                }
            }
            rest.into_iter().all(ok)
        }
        let fixed_b: Vec<BoundaryAngle> = self
            .boundary
            .iter()
            .filter_map(|s| {
                if let AngleSlot::Fixed(a) = s {
                    Some(*a)
                } else {
                    None
                }
            })
            .collect();
        let free_b = self.boundary.len() - fixed_b.len();
        let fixed_c: Vec<u32> = self
            .cones
            .iter()
            .filter_map(|s| {
                if let ConeSlot::Fixed(c) = s {
                    Some(c.order())
                } else {
                    None
                }
            })
            .collect();
        let free_c = self.cones.len() - fixed_c.len();
        multiset_match(&fixed_b, free_b, boundary, |a| !a.is_vertex_free_marker())
            && multiset_match(&fixed_c, free_c, cone_orders, |p| p >= 2)
    }

    /// Structural invariants: boundary excludes cone points; arc and cone
    /// counts are capped by curvature class.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Domain(format!("case {}: {msg}", self.case_id)));
        if !self.boundary.is_empty() && !self.cones.is_empty() {
            return fail("a nonempty boundary admits no cone points".into());
        }
        let arc_cap = if self.curvature_class.is_positive() {
            3
        } else {
            4
        };
        if self.boundary.len() > arc_cap {
            return fail(format!(
                "{} boundary arcs exceed the cap {arc_cap}",
                self.boundary.len()
            ));
        }
        if self.curvature_class.is_positive() && self.cones.len() > 3 {
            return fail(format!("{} cone points exceed the cap 3", self.cones.len()));
        }
        if let Some(t) = &self.tiling {
            let finite_ok = match t.tile_count {
                TileCount::Finite(_) | TileCount::Linear { .. } => t.target == TilingTarget::Sphere,
                TileCount::Infinite => t.target == TilingTarget::Plane,
            };
            if !finite_ok {
                return fail("finite tile counts belong to sphere tilings only".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for AngleSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleSlot::Fixed(a) => a.fmt(f),
            AngleSlot::Free(p) => f.write_str(p.symbol()),
        }
    }
}

impl fmt::Display for ConeSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeSlot::Fixed(c) => c.angle().fmt(f),
            ConeSlot::Free(p) => write!(f, "2π/{}", p.symbol()),
        }
    }
}

impl fmt::Display for TileAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileAngle::Fixed(a) => a.fmt(f),
            TileAngle::PiOver(p) => write!(f, "π/{}", p.symbol()),
            TileAngle::Free(p) => f.write_str(p.symbol()),
        }
    }
}

impl fmt::Display for TileShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileShape::Sphere => f.write_str("S^2"),
            TileShape::Hemisphere => f.write_str("Hemisphere"),
            TileShape::Polygon(corners) => {
                let parts: Vec<String> = corners.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for TileCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileCount::Finite(n) => write!(f, "{n}"),
            TileCount::Linear { factor, param } if param.is_angle() => {
                write!(f, "{factor}π/{}", param.symbol())
            }
            TileCount::Linear { factor, param } => write!(f, "{factor}{}", param.symbol()),
            TileCount::Infinite => f.write_str("∞"),
        }
    }
}

// JSON encodings: fixed angles as "n/d" strings, free slots by parameter name.

impl Serialize for AngleSlot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AngleSlot::Fixed(a) => a.serialize(s),
            AngleSlot::Free(p) => s.serialize_str(p.name()),
        }
    }
}

impl Serialize for ConeSlot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ConeSlot::Fixed(c) => s.serialize_u32(c.order()),
            ConeSlot::Free(p) => s.serialize_str(p.name()),
        }
    }
}

impl Serialize for TileAngle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TileAngle::Fixed(a) => a.serialize(s),
            TileAngle::PiOver(p) => s.serialize_str(&format!("1/{}", p.name())),
            TileAngle::Free(p) => s.serialize_str(p.name()),
        }
    }
}

impl Serialize for TileShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TileShape::Sphere => s.serialize_str("sphere"),
            TileShape::Hemisphere => s.serialize_str("hemisphere"),
            TileShape::Polygon(corners) => corners.serialize(s),
        }
    }
}

impl Serialize for TileCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TileCount::Finite(n) => s.serialize_u64(*n),
            TileCount::Linear { factor, param } if param.is_angle() => {
                s.serialize_str(&format!("{factor}pi/{}", param.name()))
            }
            TileCount::Linear { factor, param } => {
                s.serialize_str(&format!("{factor}{}", param.name()))
            }
            TileCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl Serialize for TilingDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("target", &self.target)?;
        m.serialize_entry("tile", &self.tile)?;
        m.serialize_entry("tile_count", &self.tile_count)?;
        m.end()
    }
}

impl Serialize for OrbitSpaceCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("case_id", &self.case_id)?;
        m.serialize_entry("boundary_angles", &self.boundary)?;
        m.serialize_entry("cone_orders", &self.cones)?;
        m.serialize_entry("curvature_class", &self.curvature_class)?;
        m.serialize_entry("tiling", &self.tiling)?;
        if !self.is_concrete() {
            let params: Vec<&str> = self.params().iter().map(|p| p.name()).collect();
            m.serialize_entry("parameters", &params)?;
            m.serialize_entry("instances", &self.instances())?;
        }
        m.end()
    }
}
