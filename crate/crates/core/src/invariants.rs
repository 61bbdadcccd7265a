//! Invariants of the canonical double cover `X → Y` of a polarized base and
//! the dimension of its moduli component.

use num_rational::Ratio;
use serde::Serialize;

use crate::audit::audit;
use crate::cohomology::cohomology;
use crate::error::{Error, Result};
use crate::surface::{Polarization, SurfaceBase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub p_g: i128,
    pub q: i128,
    pub chi: i128,
    pub c1_sq: i128,
    pub c2: i128,
    /// `c1²/c2`, reduced.
    #[serde(serialize_with = "crate::ratio_serde::serialize")]
    pub chern_ratio: Ratio<i128>,
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("cover invariants"))
}

/// Closed-form invariants of the cover.
///
/// On P² embedded by `O(d)`: `p_g = d²/2 + 3d/2 + 1`, `c1² = 2d²`.
/// On F_e embedded by `|aC0 + bf|`: `p_g = (a+1)(b+1-ae/2)`, `c1² = 2a(2b-ae)`.
/// In both cases `q = 0`, `χ = p_g + 1` and `c2` follows from Noether's formula.
pub fn invariants(p: &Polarization) -> Result<CoverInvariants> {
    let (p_g, c1_sq, ratio) = match p.hirzebruch_params() {
        None => {
            let d = i128::from(p.plane_degree().expect("plane polarization"));
            let d2 = checked(d.checked_mul(d))?;
            let twice_pg = checked(d2.checked_add(3 * d + 2))?;
            let c1 = checked(d2.checked_mul(2))?;
            let den = checked(d2.checked_mul(2).and_then(|x| x.checked_add(9 * d + 12)))?;
            (half(twice_pg)?, c1, Ratio::new(d2, den))
        }
        Some((e, a, b)) => {
            let (e, a, b) = (i128::from(e), i128::from(a), i128::from(b));
            let ae = checked(a.checked_mul(e))?;
            // (a+1)(2b + 2 - ae) / 2
            let twice_pg = checked((a + 1).checked_mul(2 * b + 2 - ae))?;
            let h_sq = checked(a.checked_mul(2 * b - ae))?;
            let c1 = checked(h_sq.checked_mul(2))?;
            let a2e = checked(a.checked_mul(ae))?;
            let num = checked((2 * a).checked_mul(b).and_then(|x| x.checked_sub(a2e)))?;
            let den = checked(
                (4 * a)
                    .checked_mul(b)
                    .and_then(|x| x.checked_sub(2 * a2e))
                    .and_then(|x| x.checked_add(6 * a - 3 * ae + 6 * b + 12)),
            )?;
            (half(twice_pg)?, c1, Ratio::new(num, den))
        }
    };
    let q = 0;
    let chi = 1 - q + p_g;
    let c2 = checked(chi.checked_mul(12).and_then(|x| x.checked_sub(c1_sq)))?;
    if c2 == 0 || Ratio::new(c1_sq, c2) != ratio {
        return Err(Error::Invariant(format!("Chern ratio {ratio} disagrees with c1²/c2 = {c1_sq}/{c2} for {p}")));
    }
    Ok(CoverInvariants { p_g, q, chi, c1_sq, c2, chern_ratio: ratio })
}

fn half(twice: i128) -> Result<i128> {
    if twice % 2 != 0 {
        return Err(Error::Invariant(format!("p_g = {twice}/2 is not an integer")));
    }
    Ok(twice / 2)
}

/// `h⁰(N_π) = h⁰(O_Y(B)) - 1` with `B` the branch class, from the cohomology engine.
pub fn normal_sheaf_h0(p: &Polarization) -> Result<i128> {
    Ok(cohomology(&p.branch_class()?)?.h0 - 1)
}

/// `2d² + 15d + 27` on P², `(2a+5)(2b-ae+5) - 1` on F_e. Valid when the
/// branch class has no higher cohomology.
pub fn normal_sheaf_h0_closed_form(p: &Polarization) -> Result<i128> {
    match p.hirzebruch_params() {
        None => {
            let d = i128::from(p.plane_degree().expect("plane polarization"));
            checked(d.checked_mul(2 * d).and_then(|x| x.checked_add(15 * d + 27)))
        }
        Some((e, a, b)) => {
            let (e, a, b) = (i128::from(e), i128::from(a), i128::from(b));
            let ae = checked(a.checked_mul(e))?;
            checked((2 * a + 5).checked_mul(2 * b - ae + 5)).map(|x| x - 1)
        }
    }
}

/// `h⁰(T_Y) - h¹(T_Y)`: 8 on P², 6 on every F_e.
pub fn tangent_chi_constant(base: SurfaceBase) -> i128 {
    match base {
        SurfaceBase::ProjectivePlane => 8,
        SurfaceBase::Hirzebruch { .. } => 6,
    }
}

/// Dimension of the moduli component containing the cover: `2d² + 15d + 19`
/// on P² and `(2a+5)(2b-ae+5) - 7` on F_e.
///
/// Refused unless the hypothesis audit passes.
pub fn moduli_dimension(p: &Polarization) -> Result<i128> {
    let report = audit(p)?;
    if !report.verdict {
        return Err(Error::AuditFailed { failing: report.failing().iter().map(|c| c.to_string()).collect() });
    }
    match p.hirzebruch_params() {
        None => {
            let d = i128::from(p.plane_degree().expect("plane polarization"));
            checked(d.checked_mul(2 * d).and_then(|x| x.checked_add(15 * d + 19)))
        }
        Some((e, a, b)) => {
            let (e, a, b) = (i128::from(e), i128::from(a), i128::from(b));
            let ae = checked(a.checked_mul(e))?;
            checked((2 * a + 5).checked_mul(2 * b - ae + 5)).map(|x| x - 7)
        }
    }
}
