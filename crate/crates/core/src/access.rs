//! Access-structure analysis: exhaustive per-size information profiles,
//! empirical privacy/reconstruction thresholds, the distance-based bounds
//! they must respect, and the strong-security check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::par::{self, Config};
use crate::scheme::{AccessClass, Scheme};
use crate::symplectic::{coset_distance_with, enumeration_size, rgsw_all, SympSpace};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetEntry {
    /// 1-based share labels.
    pub set: Vec<usize>,
    pub ell: usize,
    #[serde(flatten)]
    pub class: AccessClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeProfile {
    pub size: usize,
    pub count: usize,
    pub min_ell: usize,
    pub max_ell: usize,
}

/// How a coset distance in the report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// Enumeration of the larger space.
    Enumeration,
    /// First relative generalized symplectic weight (subset sweep), used
    /// when the space is too large to enumerate.
    SubsetSweep,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    /// `d_s(C_R, C_S)`; absent when k = 0.
    pub d_s_primal: Option<usize>,
    /// `d_s(C_S^⊥s, C_R^⊥s)`.
    pub d_s_dual: Option<usize>,
    pub distance_method: Option<DistanceMethod>,
    /// `d_s^i(C_R, C_S)` for i = 1..k.
    pub rgsw_primal: Vec<usize>,
    /// `d_s^i(C_S^⊥s, C_R^⊥s)` for i = 1..k.
    pub rgsw_dual: Vec<usize>,
    /// Every set of at most this size is forbidden (`d_s(C_R, C_S) − 1`).
    pub forbidden_up_to: Option<usize>,
    /// Every set of at least this size is qualified (`n − d_s(dual pair) + 1`).
    pub qualified_from: Option<usize>,
    /// Lower bounds on t_i, i = 1..k: `d_s^i(C_R, C_S) − 1`.
    pub t_lower: Vec<usize>,
    /// Upper bounds on r_j, j = 1..k: `r_{k+1−i} ≤ n − d_s^i(dual pair) + 1`.
    pub r_upper: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccessReport {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub q: u32,
    /// False when the base field is an extension field; the dimension
    /// formulas are still evaluated verbatim.
    pub prime_field: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsets: Option<Vec<SubsetEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_size: Option<Vec<SizeProfile>>,
    /// Empirical t_i, i = 1..k: largest size whose sets all hold < i symbols.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<usize>>,
    /// Empirical r_i, i = 1..k: smallest size whose sets all hold ≥ i symbols.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<usize>>,
    pub bounds: Bounds,
    /// Whether the empirical thresholds respect every bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
}

fn distance(v1: &SympSpace, v2: &SympSpace, cfg: &Config) -> Result<(usize, DistanceMethod)> {
    if enumeration_size(v1.field().q(), v1.dim(), cfg.max_enum).is_ok() {
        Ok((coset_distance_with(v1, v2, cfg)?, DistanceMethod::Enumeration))
    } else {
        Ok((rgsw_all(v1, v2, cfg)?[0], DistanceMethod::SubsetSweep))
    }
}

pub fn bounds(scheme: &Scheme, cfg: &Config) -> Result<Bounds> {
    let n = scheme.n();
    let k = scheme.k();
    let rgsw_primal = rgsw_all(scheme.c_r(), scheme.c_s(), cfg)?;
    let rgsw_dual = rgsw_all(scheme.c_s_dual(), scheme.c_r_dual(), cfg)?;
    let (d_s_primal, d_s_dual, method) = if k == 0 {
        (None, None, None)
    } else {
        let (d1, m1) = distance(scheme.c_r(), scheme.c_s(), cfg)?;
        let (d2, m2) = distance(scheme.c_s_dual(), scheme.c_r_dual(), cfg)?;
        let method = if m1 == m2 { m1 } else { DistanceMethod::SubsetSweep };
        (Some(d1), Some(d2), Some(method))
    };
    let t_lower = rgsw_primal.iter().map(|&d| d - 1).collect();
    // r_{k+1-i} ≤ n − d^i + 1, re-indexed by j = k+1−i
    let r_upper = (1..=k).map(|j| n + 1 - rgsw_dual[k - j]).collect();
    Ok(Bounds {
        d_s_primal,
        d_s_dual,
        distance_method: method,
        forbidden_up_to: d_s_primal.map(|d| d - 1),
        qualified_from: d_s_dual.map(|d| n + 1 - d),
        rgsw_primal,
        rgsw_dual,
        t_lower,
        r_upper,
    })
}

/// Information of every subset, in size-then-lexicographic order.
pub fn info_profile(scheme: &Scheme, cfg: &Config) -> Result<Vec<(IndexSet, usize)>> {
    let n = scheme.n();
    if n > cfg.max_subset_positions {
        return Err(Error::TooManySubsets(n));
    }
    let subsets = IndexSet::all_subsets(n);
    let ells = par::map_slice(cfg.exec, &subsets, |&a| scheme.info_dim(a));
    subsets.into_iter().zip(ells).map(|(a, e)| e.map(|e| (a, e))).collect()
}

pub fn access_report(scheme: &Scheme, exhaustive: bool) -> Result<AccessReport> {
    access_report_with(scheme, exhaustive, &Config::from_env())
}

pub fn access_report_with(scheme: &Scheme, exhaustive: bool, cfg: &Config) -> Result<AccessReport> {
    let (n, k) = (scheme.n(), scheme.k());
    let bounds = bounds(scheme, cfg)?;
    let mut report = AccessReport {
        n,
        k,
        s: scheme.s(),
        q: scheme.field().q(),
        prime_field: scheme.field().is_prime_field(),
        subsets: None,
        per_size: None,
        t: None,
        r: None,
        bounds,
        consistent: None,
    };
    if !exhaustive {
        return Ok(report);
    }
    let profile = info_profile(scheme, cfg)?;
    let mut per_size: Vec<SizeProfile> = (0..=n)
        .map(|size| SizeProfile {
            size,
            count: 0,
            min_ell: usize::MAX,
            max_ell: 0,
        })
        .collect();
    for &(a, ell) in &profile {
        let p = &mut per_size[a.len()];
        p.count += 1;
        p.min_ell = p.min_ell.min(ell);
        p.max_ell = p.max_ell.max(ell);
    }
    let t: Vec<usize> = (1..=k)
        .map(|i| {
            per_size
                .iter()
                .take_while(|p| p.max_ell < i)
                .last()
                .map_or(0, |p| p.size)
        })
        .collect();
    let r: Vec<usize> = (1..=k)
        .map(|i| per_size.iter().find(|p| p.min_ell >= i).map_or(n + 1, |p| p.size))
        .collect();
    let b = &report.bounds;
    let mut ok = t.iter().zip(&b.t_lower).all(|(&t, &lo)| t >= lo) && r.iter().zip(&b.r_upper).all(|(&r, &hi)| r <= hi);
    for &(a, ell) in &profile {
        if b.forbidden_up_to.is_some_and(|f| a.len() <= f) && ell != 0 {
            ok = false;
        }
        if b.qualified_from.is_some_and(|q| a.len() >= q) && ell != k {
            ok = false;
        }
    }
    report.subsets = Some(
        profile
            .iter()
            .map(|&(a, ell)| SubsetEntry {
                set: a.to_labels(),
                ell,
                class: scheme.class_of(ell),
            })
            .collect(),
    );
    report.per_size = Some(per_size);
    report.t = Some(t);
    report.r = Some(r);
    report.consistent = Some(ok);
    Ok(report)
}

/// A share set that learns a secret projection it should not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongWitness {
    /// 1-based share labels.
    pub set: Vec<usize>,
    /// Information held by the set, in q-ary symbols.
    pub ell: usize,
    /// 1-based pair indices z; the projected coordinates are z and k/2 + z.
    pub z: Vec<usize>,
    /// q-ary symbols of `P_{Z ∪ k/2+Z}(m)` leaked.
    pub leaked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongSecurity {
    pub passed: bool,
    pub witness: Option<StrongWitness>,
}

/// For every share set `A` holding `ℓ > 0` symbols and every nonempty
/// `Z ⊆ {1..k/2}` with `2|Z| ≤ k − ℓ`, the paired projection
/// `P_{Z ∪ k/2+Z}(m)` must be hidden from `A`.
pub fn strong_security_check(scheme: &Scheme) -> Result<StrongSecurity> {
    strong_security_check_with(scheme, &Config::from_env())
}

pub fn strong_security_check_with(scheme: &Scheme, cfg: &Config) -> Result<StrongSecurity> {
    let (n, k) = (scheme.n(), scheme.k());
    if k % 2 != 0 {
        return Err(Error::OddK(k));
    }
    if n > cfg.max_subset_positions.min(24) {
        return Err(Error::TooManySubsets(n));
    }
    if k > 16 {
        return Err(Error::TooManySubsets(k));
    }
    let half = k / 2;
    let pair_sets: Vec<IndexSet> = (1..=half)
        .flat_map(|size| IndexSet::subsets_of_size(half, size))
        .collect();
    let subsets = IndexSet::all_subsets(n);
    let witness = par::find_first_in(cfg.exec, &subsets, |&a| {
        let ell = scheme.info_dim(a).expect("subset within range");
        if ell == 0 {
            return None;
        }
        pair_sets.iter().filter(|z| 2 * z.len() + ell <= k).find_map(|&z| {
            let b = z.union(IndexSet::from_bits(z.bits() << half));
            let leaked = scheme.partial_leakage(a, b).expect("indices within range");
            (leaked > 0).then(|| StrongWitness {
                set: a.to_labels(),
                ell,
                z: z.to_labels(),
                leaked,
            })
        })
    });
    Ok(StrongSecurity {
        passed: witness.is_none(),
        witness,
    })
}
