//! Coincidences between the invariants of the double covers and those of
//! canonically embedded surfaces `S` whose `(p_g, c1²) = (x', y)` lie on
//!
//! ```text
//! y = 6·(m-3)/(m-2)·x' - (m-3)(m+3),   m ≥ 4.
//! ```
//!
//! Only the X side is computed here. Hypotheses restricting which `S`
//! exist are external and enter through a [`FeasibilityPredicate`].

use std::collections::BTreeMap;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::audit::audit;
use crate::error::{Error, Result};
use crate::geography::{scan_polarizations, Rational, ScanConfig};
use crate::invariants::{invariants, moduli_dimension};
use crate::surface::Polarization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollisionLine {
    pub m: i128,
}

impl CollisionLine {
    pub fn new(m: i64) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidParameter(format!("m = {m} must be at least 4")));
        }
        Ok(CollisionLine { m: i128::from(m) })
    }

    pub fn slope(&self) -> Rational {
        Rational::new(6 * (self.m - 3), self.m - 2)
    }

    pub fn intercept(&self) -> i128 {
        -(self.m - 3) * (self.m + 3)
    }

    /// `(m-2)·y = 6(m-3)·x' - (m-2)(m-3)(m+3)`.
    pub fn contains(&self, x_prime: i128, y: i128) -> bool {
        let m = self.m;
        (m - 2) * y == 6 * (m - 3) * x_prime - (m - 2) * (m - 3) * (m + 3)
    }
}

/// Constraint on the S side of a candidate pair.
pub trait FeasibilityPredicate {
    fn accepts(&self, x_prime: i128, y: i128) -> bool;

    /// Whether acceptance certifies that a surface `S` exists.
    fn verifies_s_side(&self) -> bool;

    fn name(&self) -> String;
}

/// Accepts everything and certifies nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct AcceptAll;

impl FeasibilityPredicate for AcceptAll {
    fn accepts(&self, _: i128, _: i128) -> bool {
        true
    }

    fn verifies_s_side(&self) -> bool {
        false
    }

    fn name(&self) -> String {
        "accept-all".to_string()
    }
}

/// User-supplied S-side constraints: coordinate ranges plus explicit allow
/// and deny lists. When `allow` is present only listed pairs pass.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfiguredPredicate {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub x_prime_min: Option<i128>,
    #[serde(default)]
    pub x_prime_max: Option<i128>,
    #[serde(default)]
    pub y_min: Option<i128>,
    #[serde(default)]
    pub y_max: Option<i128>,
    #[serde(default)]
    pub allow: Option<Vec<(i128, i128)>>,
    #[serde(default)]
    pub deny: Vec<(i128, i128)>,
    /// Set when the constraints encode the full S-side hypotheses.
    #[serde(default)]
    pub verifies_s_side: bool,
}

impl FeasibilityPredicate for ConfiguredPredicate {
    fn accepts(&self, x_prime: i128, y: i128) -> bool {
        let in_range =
            |v: i128, lo: Option<i128>, hi: Option<i128>| lo.is_none_or(|lo| v >= lo) && hi.is_none_or(|hi| v <= hi);
        in_range(x_prime, self.x_prime_min, self.x_prime_max)
            && in_range(y, self.y_min, self.y_max)
            && self.allow.as_ref().is_none_or(|allow| allow.contains(&(x_prime, y)))
            && !self.deny.contains(&(x_prime, y))
    }

    fn verifies_s_side(&self) -> bool {
        self.verifies_s_side
    }

    fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "configured".to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiCandidate {
    pub x_prime: i128,
    pub y: i128,
    pub provenance: Vec<Polarization>,
    pub s_side_verified: bool,
}

/// Pairs `(p_g(X), c1²(X))` with `p_g ≤ search_bound` realized by covers
/// passing the audit, lying on the line for `m` and accepted by `feas`.
pub fn xi_candidates(m: i64, search_bound: i128, feas: &dyn FeasibilityPredicate) -> Result<Vec<XiCandidate>> {
    let line = CollisionLine::new(m)?;
    if search_bound < 1 {
        return Err(Error::InvalidParameter(format!("search bound {search_bound} must be positive")));
    }
    // χ = p_g + 1 and the smallest χ on l(a) is 2a + 3
    let x_max = search_bound + 1;
    let mut pairs: BTreeMap<(i128, i128), Vec<Polarization>> = BTreeMap::new();
    let mut a = 1i64;
    while 2 * i128::from(a) + 3 <= x_max {
        let (found, _) = scan_polarizations(a, x_max, &ScanConfig::default())?;
        for p in found {
            let inv = invariants(&p)?;
            if line.contains(inv.p_g, inv.c1_sq) && feas.accepts(inv.p_g, inv.c1_sq) {
                pairs.entry((inv.p_g, inv.c1_sq)).or_default().push(p);
            }
        }
        a += 1;
    }
    Ok(pairs
        .into_iter()
        .map(|((x_prime, y), mut provenance)| {
            provenance.sort();
            XiCandidate { x_prime, y, provenance, s_side_verified: feas.verifies_s_side() }
        })
        .collect())
}

/// Integer roots `d ≥ 1` of `A·d² + B·d + C = 0`.
pub fn positive_integer_roots(a: i128, b: i128, c: i128) -> Vec<i128> {
    let mut roots = Vec::new();
    if a == 0 {
        if b != 0 && c % b == 0 {
            roots.push(-c / b);
        }
    } else {
        let disc = b * b - 4 * a * c;
        if disc >= 0 {
            let s = disc.sqrt();
            if s * s == disc {
                for num in [-b + s, -b - s] {
                    if num % (2 * a) == 0 {
                        roots.push(num / (2 * a));
                    }
                }
            }
        }
    }
    roots.retain(|d| *d >= 1);
    roots.sort();
    roots.dedup();
    roots
}

/// Degrees `d ≥ 1` such that the double cover of P² embedded by `O(d)` lies
/// on the line for `m`. Substituting `p_g = (d+1)(d+2)/2`, `c1² = 2d²`
/// gives `(5-m)·d² - 9(m-3)·d + (m-3)²(m+4) = 0`.
pub fn p2_solutions(m: i64) -> Result<Vec<i64>> {
    let m = CollisionLine::new(m)?.m;
    let roots = positive_integer_roots(5 - m, -9 * (m - 3), (m - 3) * (m - 3) * (m + 4));
    roots.into_iter().map(|d| i64::try_from(d).map_err(|_| Error::Overflow("p2 solutions"))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleCheck {
    pub id: String,
    pub description: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExamplesReport {
    pub checks: Vec<ExampleCheck>,
    pub all_pass: bool,
}

fn check(id: &str, description: &str, pass: bool, detail: String) -> ExampleCheck {
    ExampleCheck { id: id.to_string(), description: description.to_string(), pass, detail }
}

fn invariant_check(id: &str, p: &Polarization, expected: (i128, i128, i128)) -> Result<Vec<ExampleCheck>> {
    let inv = invariants(p)?;
    let got = (inv.p_g, inv.q, inv.c1_sq);
    let report = audit(p)?;
    Ok(vec![
        check(
            &format!("{id}-invariants"),
            &format!("{p} has (p_g, q, c1^2) = {expected:?}"),
            got == expected,
            format!("computed {got:?}"),
        ),
        check(
            &format!("{id}-audit"),
            &format!("{p} satisfies every audited hypothesis"),
            report.verdict,
            format!("failing: {:?}", report.failing()),
        ),
    ])
}

/// Checks the two moduli examples with invariants `(39, 0, 110)` and
/// `(45, 0, 128)`.
pub fn verify_moduli_examples() -> Result<ExamplesReport> {
    let f1 = Polarization::hirzebruch(1, 5, 8)?;
    let p2 = Polarization::plane(8)?;
    let f0 = Polarization::hirzebruch(0, 4, 8)?;
    let mut checks = Vec::new();
    checks.extend(invariant_check("f1-5-8", &f1, (39, 0, 110))?);
    checks.extend(invariant_check("p2-8", &p2, (45, 0, 128))?);
    checks.extend(invariant_check("f0-4-8", &f0, (45, 0, 128))?);

    let mu_p2 = moduli_dimension(&p2)?;
    let mu_f0 = moduli_dimension(&f0)?;
    checks.push(check(
        "mu-p2-8",
        "moduli component of the P2 cover has dimension 267",
        mu_p2 == 267,
        format!("mu = {mu_p2}"),
    ));
    checks.push(check(
        "mu-f0-4-8",
        "moduli component of the F0 cover has dimension 266",
        mu_f0 == 266,
        format!("mu = {mu_f0}"),
    ));
    checks.push(check(
        "mu-distinct",
        "the two components have different dimensions",
        mu_p2 != mu_f0,
        format!("{mu_p2} != {mu_f0}"),
    ));

    let line = CollisionLine::new(4)?;
    for (x, y) in [(39, 110), (45, 128)] {
        checks.push(check(
            &format!("line-m4-{x}-{y}"),
            &format!("({x}, {y}) lies on the m = 4 line y = 3x' - 7"),
            line.contains(x, y),
            format!("3*{x} - 7 = {}", 3 * x - 7),
        ));
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(ExamplesReport { checks, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_membership() {
        let l4 = CollisionLine::new(4).unwrap();
        assert!(l4.contains(45, 128) && l4.contains(39, 110) && l4.contains(3, 2));
        assert_eq!(l4.slope(), Rational::from(3));
        assert_eq!(l4.intercept(), -7);
        assert!(CollisionLine::new(5).unwrap().contains(6, 8));
        assert!(CollisionLine::new(3).is_err());
    }

    #[test]
    fn candidates_for_m4() {
        let c = xi_candidates(4, 100, &AcceptAll).unwrap();
        let pairs: Vec<_> = c.iter().map(|c| (c.x_prime, c.y)).collect();
        for want in [(39, 110), (45, 128), (3, 2)] {
            assert!(pairs.contains(&want), "{want:?} missing from {pairs:?}");
        }
        assert!(c.iter().all(|c| !c.s_side_verified));
        let p45 = c.iter().find(|c| (c.x_prime, c.y) == (45, 128)).unwrap();
        assert!(p45.provenance.contains(&Polarization::plane(8).unwrap()));
        assert!(p45.provenance.contains(&Polarization::hirzebruch(0, 4, 8).unwrap()));
    }

    #[test]
    fn candidates_for_m5() {
        let c = xi_candidates(5, 100, &AcceptAll).unwrap();
        assert!(c.iter().any(|c| (c.x_prime, c.y) == (6, 8)));
        assert!(matches!(xi_candidates(3, 100, &AcceptAll), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn configured_predicate_filters() {
        let feas = ConfiguredPredicate { allow: Some(vec![(39, 110), (45, 128)]), ..ConfiguredPredicate::default() };
        let c = xi_candidates(4, 100, &feas).unwrap();
        let pairs: Vec<_> = c.iter().map(|c| (c.x_prime, c.y)).collect();
        assert_eq!(pairs, vec![(39, 110), (45, 128)]);
        assert!(c.iter().all(|c| !c.s_side_verified));

        let feas = ConfiguredPredicate { deny: vec![(3, 2)], verifies_s_side: true, ..Default::default() };
        let c = xi_candidates(4, 100, &feas).unwrap();
        assert!(c.iter().all(|c| c.s_side_verified && (c.x_prime, c.y) != (3, 2)));
    }

    #[test]
    fn plane_solutions() {
        assert_eq!(p2_solutions(4).unwrap(), vec![1, 8]);
        assert_eq!(p2_solutions(5).unwrap(), vec![2]);
        for m in 6..40 {
            assert_eq!(p2_solutions(m).unwrap(), vec![m - 3], "m={m}");
        }
    }

    #[test]
    fn quadratic_roots() {
        assert!(positive_integer_roots(1, 0, -2).is_empty());
        assert!(positive_integer_roots(1, 0, 1).is_empty());
        assert_eq!(positive_integer_roots(1, -9, 8), vec![1, 8]);
        assert_eq!(positive_integer_roots(2, -3, 1), vec![1]);
        assert_eq!(positive_integer_roots(0, 3, -7), Vec::<i128>::new());
        assert_eq!(positive_integer_roots(0, 3, -6), vec![2]);
    }

    #[test]
    fn moduli_examples_pass() {
        let r = verify_moduli_examples().unwrap();
        assert!(r.all_pass, "{:#?}", r.checks);
        assert!(r.checks.iter().any(|c| c.id == "mu-distinct"));
    }
}
