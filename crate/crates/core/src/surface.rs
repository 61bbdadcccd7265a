//! Base surfaces P² and F_e, their divisor classes and intersection form.
//!
//! A class on F_e is stored as `alpha·C0 + beta·f` where `C0` is the
//! minimal section (`C0² = -e`) and `f` the fiber of the ruling
//! (`C0·f = 1`, `f² = 0`). A class on P² is its degree `d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceBase {
    ProjectivePlane,
    Hirzebruch { e: u32 },
}

impl SurfaceBase {
    pub fn hirzebruch(e: u32) -> Self {
        SurfaceBase::Hirzebruch { e }
    }

    /// Short identifier used in CSV and CLI output.
    pub fn tag(&self) -> &'static str {
        match self {
            SurfaceBase::ProjectivePlane => "p2",
            SurfaceBase::Hirzebruch { .. } => "fe",
        }
    }

    pub fn e(&self) -> Option<u32> {
        match *self {
            SurfaceBase::ProjectivePlane => None,
            SurfaceBase::Hirzebruch { e } => Some(e),
        }
    }
}

impl fmt::Display for SurfaceBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceBase::ProjectivePlane => write!(f, "P2"),
            SurfaceBase::Hirzebruch { e } => write!(f, "F_{e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DivisorClass {
    /// `O_{P²}(d)`.
    Plane { d: i64 },
    /// `alpha·C0 + beta·f` on F_e.
    Hirzebruch { e: u32, alpha: i64, beta: i64 },
}

impl DivisorClass {
    pub fn plane(d: i64) -> Self {
        DivisorClass::Plane { d }
    }

    pub fn hirzebruch(e: u32, alpha: i64, beta: i64) -> Self {
        DivisorClass::Hirzebruch { e, alpha, beta }
    }

    pub fn trivial(base: SurfaceBase) -> Self {
        match base {
            SurfaceBase::ProjectivePlane => Self::plane(0),
            SurfaceBase::Hirzebruch { e } => Self::hirzebruch(e, 0, 0),
        }
    }

    /// The minimal section `C0` of F_e.
    pub fn section(e: u32) -> Self {
        Self::hirzebruch(e, 1, 0)
    }

    /// The fiber class `f` of F_e.
    pub fn fiber(e: u32) -> Self {
        Self::hirzebruch(e, 0, 1)
    }

    pub fn base(&self) -> SurfaceBase {
        match *self {
            DivisorClass::Plane { .. } => SurfaceBase::ProjectivePlane,
            DivisorClass::Hirzebruch { e, .. } => SurfaceBase::Hirzebruch { e },
        }
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::trivial(self.base())
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.base() == other.base() {
            Ok(())
        } else {
            Err(Error::BaseMismatch { left: self.base(), right: other.base() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        let add = |x: i64, y: i64| x.checked_add(y).ok_or(Error::Overflow("divisor addition"));
        Ok(match (*self, *other) {
            (DivisorClass::Plane { d: d1 }, DivisorClass::Plane { d: d2 }) => Self::plane(add(d1, d2)?),
            (
                DivisorClass::Hirzebruch { e, alpha: a1, beta: b1 },
                DivisorClass::Hirzebruch { alpha: a2, beta: b2, .. },
            ) => Self::hirzebruch(e, add(a1, a2)?, add(b1, b2)?),
            _ => unreachable!("bases checked above"),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mul = |x: i64| x.checked_mul(k).ok_or(Error::Overflow("divisor scaling"));
        Ok(match *self {
            DivisorClass::Plane { d } => Self::plane(mul(d)?),
            DivisorClass::Hirzebruch { e, alpha, beta } => Self::hirzebruch(e, mul(alpha)?, mul(beta)?),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<i128> {
        intersect(self, other)
    }

    /// Degree on the fiber direction minus `e` times the section coefficient,
    /// i.e. `D·C0`; on P² this is just the degree.
    fn section_degree(&self) -> i128 {
        match *self {
            DivisorClass::Plane { d } => i128::from(d),
            DivisorClass::Hirzebruch { e, alpha, beta } => i128::from(beta) - i128::from(alpha) * i128::from(e),
        }
    }

    pub fn is_very_ample(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d >= 1,
            DivisorClass::Hirzebruch { alpha, .. } => alpha >= 1 && self.section_degree() >= 1,
        }
    }

    pub fn is_base_point_free(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d >= 0,
            DivisorClass::Hirzebruch { alpha, .. } => alpha >= 0 && self.section_degree() >= 0,
        }
    }

    /// Nonnegative on both generators of the effective cone (`C0` and `f`
    /// on F_e, the line on P²).
    pub fn is_nef(&self) -> bool {
        match *self {
            DivisorClass::Plane { d } => d >= 0,
            DivisorClass::Hirzebruch { alpha, .. } => alpha >= 0 && self.section_degree() >= 0,
        }
    }

    /// Whether the complete linear system contains a smooth member.
    ///
    /// A base-point-free system has one by Bertini. Otherwise on F_e the
    /// section `C0` is a fixed component; writing `D = C0 + M`, a smooth member
    /// exists exactly when `M` is base-point-free and disjoint from `C0`
    /// (`M·C0 = 0`). If `M` is not base-point-free, `2C0` is fixed and every
    /// member is non-reduced.
    pub fn has_smooth_member(&self) -> bool {
        if self.is_base_point_free() {
            return true;
        }
        match *self {
            DivisorClass::Plane { .. } => false,
            DivisorClass::Hirzebruch { e, alpha, beta } => {
                if alpha < 1 {
                    return false;
                }
                let moving = Self::hirzebruch(e, alpha - 1, beta);
                moving.is_base_point_free() && moving.section_degree() == 0
            }
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorClass::Plane { d } => write!(f, "O({d}) on P2"),
            DivisorClass::Hirzebruch { e, alpha, beta } => write!(f, "{alpha}C0{beta:+}f on F_{e}"),
        }
    }
}

pub fn canonical_class(base: SurfaceBase) -> DivisorClass {
    match base {
        SurfaceBase::ProjectivePlane => DivisorClass::plane(-3),
        SurfaceBase::Hirzebruch { e } => DivisorClass::hirzebruch(e, -2, -(i64::from(e) + 2)),
    }
}

/// Intersection number of two classes on the same base.
pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<i128> {
    d1.same_base(d2)?;
    let overflow = Error::Overflow("intersection");
    match (*d1, *d2) {
        (DivisorClass::Plane { d: x }, DivisorClass::Plane { d: y }) => Ok(i128::from(x) * i128::from(y)),
        (DivisorClass::Hirzebruch { e, alpha: a1, beta: b1 }, DivisorClass::Hirzebruch { alpha: a2, beta: b2, .. }) => {
            let (a1, b1, a2, b2, e) = (i128::from(a1), i128::from(b1), i128::from(a2), i128::from(b2), i128::from(e));
            let cross = (a1 * b2).checked_add(a2 * b1).ok_or(overflow.clone())?;
            let self_term = (a1 * a2).checked_mul(e).ok_or(overflow.clone())?;
            cross.checked_sub(self_term).ok_or(overflow)
        }
        _ => unreachable!("bases checked above"),
    }
}

/// Closed-form exception of the branch system `-2K + 2H` on F_e with
/// `H = aC0 + bf` very ample: smooth members exist but the system is not
/// base-point-free exactly when `e` is even, `e ≥ 6` and `b - ae = e/2 - 2`.
pub fn branch_bpf_exception(e: u32, a: i64, b: i64) -> bool {
    let e = i128::from(e);
    let excess = i128::from(b) - i128::from(a) * e;
    e % 2 == 0 && e >= 6 && excess == e / 2 - 2
}

/// A base surface embedded by a very ample class `H = O_Y(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Polarization {
    hyperplane: DivisorClass,
    ambient_dimension: i128,
}

impl Polarization {
    pub fn new(hyperplane: DivisorClass) -> Result<Self> {
        if !hyperplane.is_very_ample() {
            return Err(Error::NotVeryAmple { base: hyperplane.base(), class: hyperplane });
        }
        let ambient_dimension = cohomology::cohomology(&hyperplane)?.h0 - 1;
        if ambient_dimension < 2 {
            return Err(Error::AmbientDimension(ambient_dimension));
        }
        Ok(Polarization { hyperplane, ambient_dimension })
    }

    /// P² embedded by `O(d)`.
    pub fn plane(d: i64) -> Result<Self> {
        Self::new(DivisorClass::plane(d))
    }

    /// F_e embedded by `|aC0 + bf|`.
    pub fn hirzebruch(e: u32, a: i64, b: i64) -> Result<Self> {
        Self::new(DivisorClass::hirzebruch(e, a, b))
    }

    pub fn base(&self) -> SurfaceBase {
        self.hyperplane.base()
    }

    pub fn hyperplane(&self) -> DivisorClass {
        self.hyperplane
    }

    /// `N` with `Y ⊂ P^N`, i.e. `h⁰(H) - 1`.
    pub fn ambient_dimension(&self) -> i128 {
        self.ambient_dimension
    }

    pub fn canonical(&self) -> DivisorClass {
        canonical_class(self.base())
    }

    /// `-2K + 2H`, the class of the branch divisor of a canonical double cover.
    pub fn branch_class(&self) -> Result<DivisorClass> {
        self.canonical().scale(-2)?.try_add(&self.hyperplane.scale(2)?)
    }

    /// `K - H`, the trace-zero line bundle of a canonical double cover.
    pub fn trace_zero_class(&self) -> Result<DivisorClass> {
        self.canonical().try_sub(&self.hyperplane)
    }

    /// `(e, a, b)` for F_e, `None` on P².
    pub fn hirzebruch_params(&self) -> Option<(u32, i64, i64)> {
        match self.hyperplane {
            DivisorClass::Hirzebruch { e, alpha, beta } => Some((e, alpha, beta)),
            DivisorClass::Plane { .. } => None,
        }
    }

    /// Degree `d` on P², `None` on F_e.
    pub fn plane_degree(&self) -> Option<i64> {
        match self.hyperplane {
            DivisorClass::Plane { d } => Some(d),
            DivisorClass::Hirzebruch { .. } => None,
        }
    }

    /// The coefficient indexing the geography line `l(a)`: `a` on F_e, `d` on P².
    pub fn line_index(&self) -> i64 {
        match self.hyperplane {
            DivisorClass::Plane { d } => d,
            DivisorClass::Hirzebruch { alpha, .. } => alpha,
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hyperplane {
            DivisorClass::Plane { d } => write!(f, "P2 by O({d})"),
            DivisorClass::Hirzebruch { e, alpha, beta } => write!(f, "F_{e} by |{alpha}C0{beta:+}f|"),
        }
    }
}
