//! Line-bundle cohomology on P² and F_e.
//!
//! On F_e a class `alpha·C0 + beta·f` with `alpha ≥ 0` pushes down to P¹ as
//! `⊕_{k=0..alpha} O(beta - k·e)`, so `h⁰` and `h¹` are sums over those twists
//! and `h² = 0`. `alpha = -1` has vanishing pushforward. Classes with
//! `alpha ≤ -2` are handled through Serre duality.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{canonical_class, intersect, DivisorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyTable {
    pub h0: i128,
    pub h1: i128,
    pub h2: i128,
    pub chi: i128,
}

impl CohomologyTable {
    fn new(h0: i128, h1: i128, h2: i128) -> Self {
        CohomologyTable { h0, h1, h2, chi: h0 - h1 + h2 }
    }

    /// `h⁰ ↔ h²`, the shape of the table of the Serre dual class.
    pub fn reversed(&self) -> Self {
        Self::new(self.h2, self.h1, self.h0)
    }
}

const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

/// Memoizing front end. The cache is dropped wholesale once it reaches
/// capacity.
pub struct CohomologyEngine {
    cache: Mutex<HashMap<DivisorClass, CohomologyTable>>,
    capacity: usize,
}

impl CohomologyEngine {
    pub fn new(capacity: usize) -> Self {
        CohomologyEngine { cache: Mutex::new(HashMap::new()), capacity }
    }

    pub fn table(&self, class: &DivisorClass) -> Result<CohomologyTable> {
        if let Some(t) = self.lock().get(class) {
            return Ok(*t);
        }
        let table = compute(class)?;
        let mut cache = self.lock();
        if cache.len() >= self.capacity {
            cache.clear();
        }
        cache.insert(*class, table);
        Ok(table)
    }

    pub fn cached_entries(&self) -> usize {
        self.lock().len()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<DivisorClass, CohomologyTable>> {
        // a poisoned cache only ever holds complete entries
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }
}

impl Default for CohomologyEngine {
    fn default() -> Self {
        Self::new(DEFAULT_CACHE_CAPACITY)
    }
}

static ENGINE: LazyLock<CohomologyEngine> = LazyLock::new(CohomologyEngine::default);

/// `(h⁰, h¹, h², χ)` of the line bundle of `class`.
pub fn cohomology(class: &DivisorClass) -> Result<CohomologyTable> {
    ENGINE.table(class)
}

/// `K - D`.
pub fn serre_dual(class: &DivisorClass) -> Result<DivisorClass> {
    canonical_class(class.base()).try_sub(class)
}

/// `1 + D·(D - K)/2`.
pub fn riemann_roch(class: &DivisorClass) -> Result<i128> {
    let k = canonical_class(class.base());
    let dk = intersect(class, &class.try_sub(&k)?)?;
    // D·(D-K) = D² + D·(-K) is even by adjunction
    Ok(1 + dk / 2)
}

/// The twists `beta - k·e`, `k = 0..=alpha`, of the pushforward of
/// `alpha·C0 + beta·f` to P¹. `None` on P² or when `alpha < 0`.
pub fn pushforward_twists(class: &DivisorClass) -> Option<Vec<i128>> {
    match *class {
        DivisorClass::Hirzebruch { e, alpha, beta } if alpha >= 0 => {
            let (e, beta) = (i128::from(e), i128::from(beta));
            Some((0..=i128::from(alpha)).map(|k| beta - k * e).collect())
        }
        _ => None,
    }
}

/// Independent count of `h⁰` as the number of lattice points in the
/// polygon of the class (both surfaces are toric).
pub fn h0_lattice_oracle(class: &DivisorClass) -> i128 {
    let mut count = 0i128;
    match *class {
        DivisorClass::Plane { d } => {
            for i in 0..=d {
                for j in 0..=d {
                    if i + j <= d {
                        count += 1;
                    }
                }
            }
        }
        DivisorClass::Hirzebruch { e, alpha, beta } => {
            let e = i64::from(e);
            for k in 0..=alpha {
                let top = beta - k * e;
                for _ in 0..=top {
                    count += 1;
                }
            }
        }
    }
    count
}

fn compute(class: &DivisorClass) -> Result<CohomologyTable> {
    match *class {
        DivisorClass::Plane { d } => Ok(plane(i128::from(d))),
        DivisorClass::Hirzebruch { e, alpha, beta } => {
            if alpha >= -1 {
                hirzebruch(i128::from(e), i128::from(alpha), i128::from(beta))
            } else {
                Ok(compute(&serre_dual(class)?)?.reversed())
            }
        }
    }
}

fn binomial2(n: i128) -> i128 {
    n * (n - 1) / 2
}

fn plane(d: i128) -> CohomologyTable {
    let h0 = if d >= 0 { binomial2(d + 2) } else { 0 };
    let h2 = if d <= -3 { binomial2(-d - 1) } else { 0 };
    CohomologyTable::new(h0, 0, h2)
}

/// `Σ_{k=lo..=hi} (c + s·k)` in closed form; zero for an empty range.
fn arithmetic_sum(lo: i128, hi: i128, c: i128, s: i128) -> Result<i128> {
    if hi < lo {
        return Ok(0);
    }
    let overflow = || Error::Overflow("cohomology sum");
    let n = hi - lo + 1;
    let k_sum = (lo + hi).checked_mul(n).ok_or_else(overflow)? / 2;
    c.checked_mul(n).and_then(|a| s.checked_mul(k_sum).and_then(|b| a.checked_add(b))).ok_or_else(overflow)
}

/// `alpha ≥ -1`.
fn hirzebruch(e: i128, alpha: i128, beta: i128) -> Result<CohomologyTable> {
    // h⁰ collects h⁰(O(t)) = t+1 for twists t = beta - k·e ≥ 0,
    // h¹ collects h¹(O(t)) = -t-1 for twists t ≤ -2.
    let (h0_range, h1_range) = if e == 0 {
        let all = (0, alpha);
        let none = (0, -1);
        (if beta >= 0 { all } else { none }, if beta <= -2 { all } else { none })
    } else {
        let last_global = if beta >= 0 { alpha.min(beta.div_euclid(e)) } else { -1 };
        // smallest k with k·e ≥ beta + 2
        let first_h1 = (beta + 2 + e - 1).div_euclid(e).max(0);
        ((0, last_global), (first_h1, alpha))
    };
    let h0 = arithmetic_sum(h0_range.0, h0_range.1, beta + 1, -e)?;
    let h1 = arithmetic_sum(h1_range.0, h1_range.1, -beta - 1, e)?;
    Ok(CohomologyTable::new(h0, h1, 0))
}
