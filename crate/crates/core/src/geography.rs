//! Geography of the covers: the points `(x, y) = (χ(X), c1²(X))`, the lines
//! `l(a)`, Noether's line and Castelnuovo's line.
//!
//! For `H = aC0 + bf` on F_e the point lies on
//! `l(a): (a+1)·y = 4a·(x - a - 2)`, the line through `(a+2, 0)` with slope
//! `4a/(a+1)`; P² embedded by `O(d)` lands on `l(d)`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::audit::audit;
use crate::error::{Error, Result};
use crate::invariants::invariants;
use crate::surface::Polarization;

pub type Rational = Ratio<i128>;

/// Default cap on `e` in enumeration contexts.
pub const DEFAULT_E_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeographyPoint {
    pub x: i128,
    pub y: i128,
    pub provenance: Vec<Polarization>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineKind {
    L { a: u64 },
    Noether,
    Castelnuovo,
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineKind::L { a } => write!(f, "l{a}"),
            LineKind::Noether => write!(f, "noether"),
            LineKind::Castelnuovo => write!(f, "castelnuovo"),
        }
    }
}

/// `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeographyLine {
    pub kind: LineKind,
    #[serde(serialize_with = "crate::ratio_serde::serialize")]
    pub slope: Rational,
    #[serde(serialize_with = "crate::ratio_serde::serialize")]
    pub intercept: Rational,
}

impl GeographyLine {
    pub fn l(a: u64) -> Self {
        let a = i128::from(a);
        let slope = Ratio::new(4 * a, a + 1);
        GeographyLine { kind: LineKind::L { a: a as u64 }, slope, intercept: -slope * (a + 2) }
    }

    /// `y - 2x + 6 = 0`.
    pub fn noether() -> Self {
        GeographyLine { kind: LineKind::Noether, slope: 2.into(), intercept: (-6).into() }
    }

    /// `y = 3x - 10`.
    pub fn castelnuovo() -> Self {
        GeographyLine { kind: LineKind::Castelnuovo, slope: 3.into(), intercept: (-10).into() }
    }

    pub fn y_at(&self, x: Rational) -> Rational {
        self.slope * x + self.intercept
    }

    pub fn x_at(&self, y: Rational) -> Rational {
        (y - self.intercept) / self.slope
    }

    pub fn contains(&self, x: i128, y: i128) -> bool {
        self.y_at(x.into()) == Rational::from(y)
    }

    pub fn same_line(&self, other: &Self) -> bool {
        self.slope == other.slope && self.intercept == other.intercept
    }
}

/// Whether `(x, y)` satisfies `(a+1)·y = 4a·(x - a - 2)` in integers.
pub fn on_line_l(a: i128, x: i128, y: i128) -> bool {
    (a + 1) * y == 4 * a * (x - a - 2)
}

pub fn point_of(p: &Polarization) -> Result<GeographyPoint> {
    let inv = invariants(p)?;
    Ok(GeographyPoint { x: inv.chi, y: inv.c1_sq, provenance: vec![*p] })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub include_f1: bool,
    pub e_cap: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { include_f1: true, e_cap: DEFAULT_E_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub points: Vec<GeographyPoint>,
    pub warnings: Vec<String>,
}

/// Every polarization with line index `a` (F_e with first coefficient `a`,
/// and P² with `d = a`) whose cover satisfies the audit and has
/// `χ(X) ≤ x_max`, in scan order.
pub fn scan_polarizations(a: i64, x_max: i128, config: &ScanConfig) -> Result<(Vec<Polarization>, Vec<String>)> {
    if a < 1 {
        return Err(Error::InvalidParameter(format!("a = {a} must be at least 1")));
    }
    let mut found = Vec::new();
    let mut warnings = Vec::new();
    // χ ≥ e + 2 on F_e, so e ≤ 2·x_max is a safe bound
    let derived = u32::try_from((2 * x_max).max(0)).unwrap_or(u32::MAX);
    let e_max = derived.min(config.e_cap);
    for e in 0..=e_max {
        if e == 1 && !config.include_f1 {
            continue;
        }
        let ae = a.checked_mul(i64::from(e)).ok_or(Error::Overflow("geography scan"))?;
        let mut b = ae + 1;
        loop {
            let p = Polarization::hirzebruch(e, a, b)?;
            let pt = point_of(&p)?;
            if pt.x > x_max {
                break;
            }
            if audit(&p)?.verdict {
                found.push(p);
            }
            b += 1;
        }
    }
    if derived > config.e_cap {
        let first_cut = Polarization::hirzebruch(config.e_cap + 1, a, a * i64::from(config.e_cap + 1) + 1)?;
        if point_of(&first_cut)?.x <= x_max {
            warnings.push(format!("e-range truncated at e = {}; points from larger e are missing", config.e_cap));
        }
    }
    let plane = Polarization::plane(a)?;
    if point_of(&plane)?.x <= x_max && audit(&plane)?.verdict {
        found.push(plane);
    }
    Ok((found, warnings))
}

/// Geography points on the semiline of `l(a)` starting at `(2a + 3, 4a)`
/// with `x ≤ x_max`, deduplicated with merged provenance and ordered by
/// `(x, y)`.
///
/// The cover of P² by `O(1)` sits on `l(1)` at `(4, 2)`, before the start
/// of the semiline; it is left out with a warning.
pub fn enumerate_points_with(a: i64, x_max: i128, config: &ScanConfig) -> Result<Enumeration> {
    let (polarizations, mut warnings) = scan_polarizations(a, x_max, config)?;
    let start = 2 * i128::from(a) + 3;
    let mut kept = Vec::with_capacity(polarizations.len());
    for p in polarizations {
        let pt = point_of(&p)?;
        if pt.x >= start {
            kept.push(p);
        } else {
            warnings.push(format!("{p} gives ({}, {}) before the semiline start x = {start}; excluded", pt.x, pt.y));
        }
    }
    Ok(Enumeration { points: merge_points(kept)?, warnings })
}

pub fn enumerate_points(a: i64, x_max: i128, include_f1: bool) -> Result<Vec<GeographyPoint>> {
    let config = ScanConfig { include_f1, ..ScanConfig::default() };
    Ok(enumerate_points_with(a, x_max, &config)?.points)
}

pub(crate) fn merge_points(polarizations: impl IntoIterator<Item = Polarization>) -> Result<Vec<GeographyPoint>> {
    let mut merged: BTreeMap<(i128, i128), Vec<Polarization>> = BTreeMap::new();
    for p in polarizations {
        let pt = point_of(&p)?;
        merged.entry((pt.x, pt.y)).or_default().push(p);
    }
    Ok(merged
        .into_iter()
        .map(|((x, y), mut provenance)| {
            provenance.sort();
            provenance.dedup();
            GeographyPoint { x, y, provenance }
        })
        .collect())
}

/// Integer points of `l(a)` with `2a + 3 ≤ x ≤ x_max`, found by walking `x`.
pub fn semiline_integer_points(a: i64, x_max: i128) -> Vec<(i128, i128)> {
    let a = i128::from(a);
    (2 * a + 3..=x_max)
        .filter_map(|x| {
            let num = 4 * a * (x - a - 2);
            (num % (a + 1) == 0).then(|| (x, num / (a + 1)))
        })
        .collect()
}

/// Integer points of the semiline of `l(a)` that no scanned cover realizes.
pub fn semiline_gaps(a: i64, x_max: i128, config: &ScanConfig) -> Result<Vec<(i128, i128)>> {
    let realized: Vec<(i128, i128)> =
        enumerate_points_with(a, x_max, config)?.points.iter().map(|p| (p.x, p.y)).collect();
    Ok(semiline_integer_points(a, x_max).into_iter().filter(|pt| !realized.contains(pt)).collect())
}

/// Meeting point of `l(a)` and `l(a')`; `x = aa' + a + a' + 2`.
pub fn line_intersection(a: u64, a_prime: u64) -> Result<(i128, Rational)> {
    if a == a_prime {
        return Err(Error::IdenticalLines(a));
    }
    if a == 0 || a_prime == 0 {
        return Err(Error::InvalidParameter("line indices start at 1".to_string()));
    }
    let (l, m) = (GeographyLine::l(a), GeographyLine::l(a_prime));
    let x = (m.intercept - l.intercept) / (l.slope - m.slope);
    if !x.is_integer() {
        return Err(Error::Invariant(format!("l{a} and l{a_prime} meet at non-integer x = {x}")));
    }
    let y = l.y_at(x);
    if y != m.y_at(x) {
        return Err(Error::Invariant(format!("l{a} and l{a_prime} disagree at x = {x}")));
    }
    Ok((x.to_integer(), y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Figure {
    One,
    Two,
}

impl Figure {
    pub fn number(&self) -> u8 {
        match self {
            Figure::One => 1,
            Figure::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Figure::One),
            2 => Ok(Figure::Two),
            _ => Err(Error::InvalidParameter(format!("figure {n} does not exist"))),
        }
    }

    /// Number of solid lines `l(1)..l(k)`.
    pub fn line_count(&self) -> u64 {
        match self {
            Figure::One => 4,
            Figure::Two => 6,
        }
    }

    pub fn default_window(&self) -> Window {
        match self {
            Figure::One => Window { x0: 0, x1: 25, y0: 0, y1: 60 },
            Figure::Two => Window { x0: 0, x1: 120, y0: 0, y1: 420 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
}

impl Window {
    pub fn new(x0: i64, x1: i64, y0: i64, y1: i64) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidParameter(format!("empty window {x0},{x1},{y0},{y1}")));
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn contains(&self, x: i128, y: i128) -> bool {
        (i128::from(self.x0)..=i128::from(self.x1)).contains(&x)
            && (i128::from(self.y0)..=i128::from(self.y1)).contains(&y)
    }

    /// Portion of a line with positive slope inside the window.
    pub fn clip(&self, line: &GeographyLine) -> Option<((Rational, Rational), (Rational, Rational))> {
        let (x0, x1) = (Rational::from(i128::from(self.x0)), Rational::from(i128::from(self.x1)));
        let (y0, y1) = (Rational::from(i128::from(self.y0)), Rational::from(i128::from(self.y1)));
        let lo = x0.max(line.x_at(y0));
        let hi = x1.min(line.x_at(y1));
        (lo < hi).then(|| ((lo, line.y_at(lo)), (hi, line.y_at(hi))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub line: GeographyLine,
    pub dashed: bool,
    #[serde(serialize_with = "crate::ratio_serde::serialize_pair")]
    pub from: (Rational, Rational),
    #[serde(serialize_with = "crate::ratio_serde::serialize_pair")]
    pub to: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigureDataset {
    pub figure: Option<Figure>,
    pub window: Window,
    pub lines: Vec<Segment>,
    pub points: Vec<GeographyPoint>,
}

fn segments(lines: &[GeographyLine], window: &Window) -> Vec<Segment> {
    lines
        .iter()
        .filter_map(|line| {
            window.clip(line).map(|(from, to)| Segment {
                line: *line,
                dashed: line.kind == LineKind::Castelnuovo,
                from,
                to,
            })
        })
        .collect()
}

/// Lines `l(1)..l(k)` solid plus Castelnuovo's line dashed. Figure 1 also
/// marks the realized points on `l(1)` and the realized points of
/// `l(2)..l(4)` lying strictly above `l(1)`.
pub fn figure_dataset(figure: Figure, window: Option<Window>) -> Result<FigureDataset> {
    let window = window.unwrap_or_else(|| figure.default_window());
    let mut lines: Vec<GeographyLine> = (1..=figure.line_count()).map(GeographyLine::l).collect();
    lines.push(GeographyLine::castelnuovo());
    let points = match figure {
        Figure::One => figure_one_points(&window)?,
        Figure::Two => Vec::new(),
    };
    Ok(FigureDataset { figure: Some(figure), window, lines: segments(&lines, &window), points })
}

fn figure_one_points(window: &Window) -> Result<Vec<GeographyPoint>> {
    let noether = GeographyLine::noether();
    let mut polarizations = Vec::new();
    for a in 1..=4i64 {
        let run = enumerate_points_with(a, i128::from(window.x1), &ScanConfig::default())?;
        for pt in run.points {
            let above = Rational::from(pt.y) > noether.y_at(pt.x.into());
            if window.contains(pt.x, pt.y) && (a == 1 || above) {
                polarizations.extend(pt.provenance);
            }
        }
    }
    merge_points(polarizations)
}

/// Dataset for a single line `l(a)`: the line, Noether's and Castelnuovo's
/// lines, and the given points.
pub fn line_dataset(a: u64, points: Vec<GeographyPoint>, window: Window) -> FigureDataset {
    let mut lines = vec![GeographyLine::l(a)];
    if a != 1 {
        lines.push(GeographyLine::noether());
    }
    lines.push(GeographyLine::castelnuovo());
    FigureDataset { figure: None, window, lines: segments(&lines, &window), points }
}
