//! The classical McEliece–Sarwate ramp scheme, kept as a baseline: the
//! secret is `g(α_1..α_k)` for a random `g` of degree `< (n+k+s)/2` and
//! participant `i` holds `g(α_{k+i})`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::index_set::IndexSet;
use crate::linalg::Mat;
use crate::rs::{default_alphas, interpolate, poly_eval_all};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsScheme {
    field: FieldSpec,
    n: usize,
    k: usize,
    s: usize,
    /// `α_1..α_k` for the secret, then one point per participant.
    alphas: Vec<u32>,
}

impl MsScheme {
    pub fn new(field: &FieldSpec, n: usize, k: usize, s: usize, alphas: Vec<u32>) -> Result<Self> {
        let q = field.q() as usize;
        if n + k > q {
            return Err(Error::TooManyParticipants {
                participants: n,
                limit: q.saturating_sub(k),
            });
        }
        if alphas.len() != n + k {
            return Err(Error::DimensionMismatch {
                expected: n + k,
                got: alphas.len(),
            });
        }
        let mut seen = vec![false; q];
        for &a in &alphas {
            field.check(a)?;
            if std::mem::replace(&mut seen[a as usize], true) {
                return Err(Error::DuplicateAlpha);
            }
        }
        if k == 0 || !(n + k + s).is_multiple_of(2) {
            return Err(Error::BadParity(format!(
                "n + k + s = {} must be even with k ≥ 1",
                n + k + s
            )));
        }
        let sch = MsScheme {
            field: field.clone(),
            n,
            k,
            s,
            alphas,
        };
        if sch.degree() < k || sch.degree() > n + k {
            return Err(Error::InvalidParams(format!(
                "degree bound (n+k+s)/2 = {} must lie in [k, n + k]",
                sch.degree()
            )));
        }
        Ok(sch)
    }

    /// The first `n + k` elements of [`default_alphas`].
    pub fn with_default_alphas(q: u64, n: usize, k: usize, s: usize) -> Result<Self> {
        let field = FieldSpec::gf(q)?;
        let mut alphas = default_alphas(&field);
        if n + k > alphas.len() {
            return Err(Error::TooManyParticipants {
                participants: n,
                limit: alphas.len().saturating_sub(k),
            });
        }
        alphas.truncate(n + k);
        Self::new(&field, n, k, s, alphas)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `(n + k + s)/2`
    pub fn degree(&self) -> usize {
        (self.n + self.k + self.s) / 2
    }

    /// Shares for secret `m` with uniformly random free coefficients.
    pub fn encode<R: Rng + ?Sized>(&self, m: &[u32], rng: &mut R) -> Result<Vec<u32>> {
        if m.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: m.len(),
            });
        }
        for &x in m {
            self.field.check(x)?;
        }
        let f = &self.field;
        let q = f.q();
        // g = interpolant of the secret + Π(x − α_i) · random(deg < degree − k)
        let pts: Vec<(u32, u32)> = self.alphas[..self.k].iter().copied().zip(m.iter().copied()).collect();
        let mut g = interpolate(f, &pts);
        g.resize(self.degree(), 0);
        let mut vanish = vec![1u32];
        for &a in &self.alphas[..self.k] {
            let mut next = vec![0; vanish.len() + 1];
            for (d, &c) in vanish.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(c, a));
            }
            vanish = next;
        }
        for shift in 0..self.degree() - self.k {
            let c = rng.gen_range(0..q);
            for (d, &v) in vanish.iter().enumerate() {
                g[shift + d] = f.add(g[shift + d], f.mul(c, v));
            }
        }
        Ok(poly_eval_all(f, &g, &self.alphas[self.k..]))
    }

    /// Recovers the secret from all shares in `a` when `|A| ≥ degree`.
    pub fn reconstruct(&self, a: IndexSet, shares: &[u32]) -> Result<Vec<u32>> {
        a.check_within(self.n)?;
        if a.len() < self.degree() {
            return Err(Error::InvalidParams(format!(
                "{} shares cannot determine degree {}",
                a.len(),
                self.degree()
            )));
        }
        let pts: Vec<(u32, u32)> = a
            .iter()
            .take(self.degree())
            .map(|i| (self.alphas[self.k + i], shares[i]))
            .collect();
        let g = interpolate(&self.field, &pts);
        Ok(poly_eval_all(&self.field, &g, &self.alphas[..self.k]))
    }

    /// `(qualified_from, forbidden_up_to) = ((n+k+s)/2, (n−k+s)/2)`.
    pub fn thresholds(&self) -> (usize, usize) {
        (self.degree(), (self.n + self.s).saturating_sub(self.k) / 2)
    }

    fn eval_rows(&self, points: impl Iterator<Item = u32>) -> Vec<Vec<u32>> {
        points
            .map(|a| (0..self.degree()).map(|i| self.field.pow(a, i as u64)).collect())
            .collect()
    }

    /// Secret symbols determined by the shares in `a`, i.e. the mutual
    /// information in q-ary units: `k + rank E_A − rank [E_A; S]`, where
    /// `E_A`, `S` evaluate the coefficient vector at the share and secret points.
    pub fn leakage(&self, a: IndexSet) -> Result<usize> {
        a.check_within(self.n)?;
        let e_rows = self.eval_rows(a.iter().map(|i| self.alphas[self.k + i]));
        let s_rows = self.eval_rows(self.alphas[..self.k].iter().copied());
        let d = self.degree();
        let rank_e = Mat::from_rows(&self.field, d, &e_rows)?.rank();
        let mut both = e_rows;
        both.extend(s_rows);
        let rank_both = Mat::from_rows(&self.field, d, &both)?.rank();
        Ok(self.k + rank_e - rank_both)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Thresholds {
    /// Largest size at which every set is forbidden.
    pub forbidden_up_to: usize,
    /// Smallest size at which every set is qualified.
    pub qualified_from: usize,
    pub max_participants: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MsComparison {
    pub q: u32,
    pub k: usize,
    pub s: usize,
    /// Number of participants used for the baseline (at most `q − k`).
    pub n_ms: usize,
    pub proposed: Thresholds,
    pub ms: Thresholds,
    /// Baseline leakage by share-set size (min = max at every size).
    pub ms_profile: Vec<usize>,
    pub proposed_forbidden_exceeds_ms: bool,
    /// Secret length the baseline supports with the proposed scheme's
    /// thresholds at `n = q − k/2`; the proposed `k` is twice this.
    pub ms_k_same_access: usize,
}

/// Proposed RS scheme on `n = q` shares against the baseline at the
/// largest `n ≤ q − k` with the right parity.
pub fn ms_compare(q: u64, k: usize, s: usize) -> Result<MsComparison> {
    let field = FieldSpec::gf(q)?;
    let qn = field.q() as usize;
    if k == 0 || !k.is_multiple_of(2) || k + s > qn || !(qn - k - s).is_multiple_of(2) {
        return Err(Error::BadParity(format!("k = {k}, s = {s} do not fit n = q = {qn}")));
    }
    let mut n_ms = qn.saturating_sub(k);
    while n_ms > 0 && !(n_ms + k + s).is_multiple_of(2) {
        n_ms -= 1;
    }
    let ms = MsScheme::with_default_alphas(q, n_ms, k, s)?;
    let (ms_q, ms_f) = ms.thresholds();
    let mut ms_profile = Vec::with_capacity(n_ms + 1);
    for size in 0..=n_ms {
        let a = IndexSet::from_indices(&(0..size).collect::<Vec<_>>(), n_ms)?;
        ms_profile.push(ms.leakage(a)?);
    }
    let proposed = Thresholds {
        forbidden_up_to: (qn + s) / 2,
        qualified_from: (qn + k + s) / 2,
        max_participants: qn,
    };
    let ms_t = Thresholds {
        forbidden_up_to: ms_f,
        qualified_from: ms_q,
        max_participants: qn - k,
    };
    Ok(MsComparison {
        q: field.q(),
        k,
        s,
        n_ms,
        proposed_forbidden_exceeds_ms: (qn + s) / 2 > (qn + s).saturating_sub(k) / 2,
        proposed,
        ms: ms_t,
        ms_profile,
        ms_k_same_access: k / 2,
    })
}
