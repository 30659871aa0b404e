//! Gilbert–Varshamov style existence conditions for nested code pairs:
//! the exact finite inequality, its asymptotic form, and a seeded random
//! search that produces explicit witnesses.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldSpec};
use crate::par::{self, Config};
use crate::symplectic::{isotropic_extend_random, min_weight_enumeration, swt_raw, SympSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GVQuery {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub dt: usize,
    pub dr: usize,
}

impl GVQuery {
    pub fn validate(&self) -> Result<()> {
        if prime_power(self.q).is_none() {
            return Err(Error::InvalidParams(format!("q = {} is not a prime power", self.q)));
        }
        if self.n == 0 || self.k + self.s > self.n {
            return Err(Error::InvalidParams(format!(
                "need k + s ≤ n with n ≥ 1 (n = {}, k = {}, s = {})",
                self.n, self.k, self.s
            )));
        }
        if self.dt == 0 || self.dr == 0 {
            return Err(Error::InvalidParams("distance targets must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Exact left-hand side of the finite condition, kept over the
/// denominator `q^{2n} − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVResult {
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub feasible: bool,
}

impl GVResult {
    /// `"num/den"`; zero is written `"0/1"`.
    pub fn lhs_string(&self) -> String {
        if self.numerator.is_zero() {
            "0/1".to_string()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        }
    }
}

impl Serialize for GVResult {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("GVResult", 2)?;
        st.serialize_field("lhs", &self.lhs_string())?;
        st.serialize_field("feasible", &self.feasible)?;
        st.end()
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{i=1}^{δ−1} C(n,i) (q²−1)^i`
fn ball_sum(q: &BigUint, n: usize, delta: usize) -> BigUint {
    let base = q * q - BigUint::one();
    let mut sum = BigUint::zero();
    let mut pow = BigUint::one();
    for i in 1..delta.min(n + 1) {
        pow *= &base;
        sum += binomial(n, i) * &pow;
    }
    sum
}

pub fn gv_finite(query: &GVQuery) -> Result<GVResult> {
    query.validate()?;
    let GVQuery { q, n, k, s, dt, dr } = *query;
    let qb = BigUint::from(q);
    let pw = |e: usize| qb.pow(e as u32);
    let coef_r = pw(n + k + s) - pw(n + s);
    let coef_t = pw(n - s) - pw(n - k - s);
    let numerator = coef_r * ball_sum(&qb, n, dr) + coef_t * ball_sum(&qb, n, dt);
    let denominator = pw(2 * n) - BigUint::one();
    let feasible = numerator < denominator;
    Ok(GVResult {
        numerator,
        denominator,
        feasible,
    })
}

pub const ASYMPTOTIC_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    fn of(lhs: f64, rhs: f64) -> Verdict {
        let margin = rhs - lhs;
        if margin > ASYMPTOTIC_MARGIN {
            Verdict::Pass
        } else if margin < -ASYMPTOTIC_MARGIN {
            Verdict::Fail
        } else {
            Verdict::Indeterminate
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; positive means the strict inequality holds.
    pub margin: f64,
    pub verdict: Verdict,
}

impl Inequality {
    fn new(lhs: f64, rhs: f64) -> Self {
        Inequality {
            lhs,
            rhs,
            margin: rhs - lhs,
            verdict: Verdict::of(lhs, rhs),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GVAsymptotic {
    pub t: Inequality,
    pub r: Inequality,
}

impl GVAsymptotic {
    pub fn verdict(&self) -> Verdict {
        match (self.t.verdict, self.r.verdict) {
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            _ => Verdict::Indeterminate,
        }
    }
}

/// q-ary entropy `−x log_q x − (1−x) log_q(1−x)`, with `h_q(0) = 0`.
pub fn h_q(x: f64, q: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    (term(x) + term(1.0 - x)) / q.ln()
}

/// `h_q(ε) + ε log_q(q² − 1)`
pub fn asymptotic_lhs(eps: f64, q: f64) -> f64 {
    h_q(eps, q) + eps * (q * q - 1.0).ln() / q.ln()
}

fn check_rates(r: f64, s: f64, eps_t: f64, eps_r: f64, q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
    }
    for (name, v) in [("R", r), ("S", s)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange(format!("{name} = {v} outside [0, 1]")));
        }
    }
    for (name, v) in [("eps_t", eps_t), ("eps_r", eps_r)] {
        if !(0.0..0.5).contains(&v) {
            return Err(Error::OutOfRange(format!("{name} = {v} outside [0, 0.5)")));
        }
    }
    Ok(())
}

pub fn gv_asymptotic(r: f64, s: f64, eps_t: f64, eps_r: f64, q: u64) -> Result<GVAsymptotic> {
    check_rates(r, s, eps_t, eps_r, q)?;
    let qf = q as f64;
    Ok(GVAsymptotic {
        t: Inequality::new(asymptotic_lhs(eps_t, qf), 1.0 + s),
        r: Inequality::new(asymptotic_lhs(eps_r, qf), 1.0 - r - s),
    })
}

/// The `S = 0` case written out on its own:
/// `h_q(ε_t) + ε_t log_q(q²−1) < 1` and `h_q(ε_r) + ε_r log_q(q²−1) < 1 − R`.
pub fn gv_asymptotic_no_randomness(r: f64, eps_t: f64, eps_r: f64, q: u64) -> Result<GVAsymptotic> {
    check_rates(r, 0.0, eps_t, eps_r, q)?;
    let qf = q as f64;
    let lq = |x: f64| x.ln() / qf.ln();
    let h = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            -x * lq(x) - (1.0 - x) * lq(1.0 - x)
        }
    };
    let lhs_t = h(eps_t) + eps_t * lq(qf * qf - 1.0);
    let lhs_r = h(eps_r) + eps_r * lq(qf * qf - 1.0);
    Ok(GVAsymptotic {
        t: Inequality::new(lhs_t, 1.0),
        r: Inequality::new(lhs_r, 1.0 - r),
    })
}

/// A nested pair found by [`gv_search`], with its re-checked distances.
#[derive(Clone, Debug)]
pub struct GVWitness {
    pub trial: u64,
    pub c_s: SympSpace,
    pub c_r: SympSpace,
    /// `d_s(C_R, C_S)`, or `None` when `C_R = C_S`.
    pub d_t: Option<usize>,
    /// `d_s(C_S^⊥s, C_R^⊥s)`, or `None` when the duals coincide.
    pub d_r: Option<usize>,
}

/// Whether every vector of `v1 \ v2` has symplectic weight ≥ `delta`.
/// Stops at the first lighter vector.
fn distance_at_least(v1: &SympSpace, v2: &SympSpace, delta: usize, cfg: &Config) -> Result<bool> {
    if delta <= 1 || v1.dim() == v2.dim() {
        return Ok(true);
    }
    let light = min_weight_enumeration(v1.space(), cfg, delta - 1, swt_raw, |v| {
        swt_raw(v) < delta && !v2.contains(v)
    })?;
    Ok(light.is_none())
}

fn distance_or_none(v1: &SympSpace, v2: &SympSpace, cfg: &Config) -> Result<Option<usize>> {
    if v1.dim() == v2.dim() {
        return Ok(None);
    }
    let found = min_weight_enumeration(v1.space(), cfg, 1, swt_raw, |v| !v2.contains(v))?;
    Ok(found)
}

/// One random nested pair for `trial`: its RNG is ChaCha8 seeded with
/// `seed` on stream `trial`.
pub fn gv_sample(query: &GVQuery, field: &FieldSpec, seed: u64, trial: u64) -> Result<(SympSpace, SympSpace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let n = query.n;
    let c_s = isotropic_extend_random(&SympSpace::zero(field, n), n - query.k - query.s, &mut rng)?;
    let c_r = isotropic_extend_random(&c_s, n - query.s, &mut rng)?;
    Ok((c_s, c_r))
}

pub fn gv_search(query: &GVQuery, trials: u64, seed: u64) -> Result<Option<GVWitness>> {
    gv_search_with(query, trials, seed, &Config::from_env())
}

pub fn gv_search_with(query: &GVQuery, trials: u64, seed: u64, cfg: &Config) -> Result<Option<GVWitness>> {
    query.validate()?;
    let field = FieldSpec::gf(query.q)?;
    // Fail fast on sizes the distance checks cannot enumerate.
    let q = field.q();
    let n = query.n;
    if query.dt > 1 && query.k > 0 {
        crate::symplectic::enumeration_size(q, n - query.s, cfg.max_enum)?;
    }
    if query.dr > 1 && query.k > 0 {
        crate::symplectic::enumeration_size(q, n + query.k + query.s, cfg.max_enum)?;
    }
    // Inner enumerations run sequentially; trials are the parallel axis.
    let inner = cfg.with_exec(crate::par::Exec::Sequential);
    let hit = par::find_first(cfg.exec, 0..trials, |trial| {
        let attempt = || -> Result<Option<(SympSpace, SympSpace)>> {
            let (c_s, c_r) = gv_sample(query, &field, seed, trial)?;
            if !distance_at_least(&c_r, &c_s, query.dt, &inner)? {
                return Ok(None);
            }
            let (c_s_dual, c_r_dual) = (c_s.dual(), c_r.dual());
            if !distance_at_least(&c_s_dual, &c_r_dual, query.dr, &inner)? {
                return Ok(None);
            }
            Ok(Some((c_s, c_r)))
        };
        match attempt() {
            Ok(Some(pair)) => Some(Ok((trial, pair))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    let Some(hit) = hit else { return Ok(None) };
    let (trial, (c_s, c_r)) = hit?;
    let d_t = distance_or_none(&c_r, &c_s, cfg)?;
    let d_r = distance_or_none(&c_s.dual(), &c_r.dual(), cfg)?;
    Ok(Some(GVWitness {
        trial,
        c_s,
        c_r,
        d_t,
        d_r,
    }))
}
