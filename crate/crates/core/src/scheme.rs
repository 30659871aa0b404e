//! Secret-sharing schemes defined by a nested pair `C_S ⊆ C_R ⊆ C_R^⊥s`.
//!
//! A secret `m ∈ F_q^k` selects the coset `Σ m_j r_j + C_R^⊥s` of
//! `C_S^⊥s / C_R^⊥s`; the encoder then picks one of the `q^s` sub-cosets
//! modulo a Lagrangian `C_max` uniformly at random. Everything a share set
//! learns is determined by dimensions of restricted/projected codes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::index_set::IndexSet;
use crate::linalg::{axpy, FVector};
use crate::par::Config;
use crate::symplectic::{lagrangian_extend, symp_dual, SympSpace, SympVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    field: FieldSpec,
    n: usize,
    k: usize,
    s: usize,
    c_s: SympSpace,
    c_r: SympSpace,
    c_r_dual: SympSpace,
    c_s_dual: SympSpace,
    c_max: SympSpace,
    secret_reps: Vec<Vec<u32>>,
    rand_reps: Vec<Vec<u32>>,
}

/// Classification of a share set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "ell", rename_all = "snake_case")]
pub enum AccessClass {
    Qualified,
    Forbidden,
    /// Holds this many q-ary symbols of information, strictly between 0 and k.
    Intermediate(usize),
}

/// Information held by a share set: `ell` q-ary symbols, i.e. `bits`
/// bits for a uniformly distributed secret.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfoAmount {
    pub ell: usize,
    pub bits: f64,
}

pub fn scheme_build(c_s: &SympSpace, c_r: &SympSpace, secret_reps: Option<&[SympVec]>) -> Result<Scheme> {
    Scheme::build(c_s, c_r, secret_reps)
}

impl Scheme {
    /// Builds a scheme with `C_max` from [`lagrangian_extend`].
    pub fn build(c_s: &SympSpace, c_r: &SympSpace, secret_reps: Option<&[SympVec]>) -> Result<Self> {
        Self::check_nesting(c_s, c_r)?;
        let c_max = lagrangian_extend(c_r)?;
        Self::assemble(c_s, c_r, secret_reps, c_max)
    }

    /// Builds a scheme with a caller-supplied Lagrangian `C_max ⊇ C_R`.
    pub fn build_with_cmax(
        c_s: &SympSpace,
        c_r: &SympSpace,
        secret_reps: Option<&[SympVec]>,
        c_max: &SympSpace,
    ) -> Result<Self> {
        Self::check_nesting(c_s, c_r)?;
        if c_max.field() != c_r.field() || c_max.n() != c_r.n() {
            return Err(Error::NestingViolated("C_max lives in a different space".into()));
        }
        if !c_max.is_lagrangian() {
            return Err(Error::NestingViolated("C_max is not Lagrangian".into()));
        }
        if !c_r.is_subspace_of(c_max) {
            return Err(Error::NestingViolated("C_R is not contained in C_max".into()));
        }
        Self::assemble(c_s, c_r, secret_reps, c_max.clone())
    }

    fn check_nesting(c_s: &SympSpace, c_r: &SympSpace) -> Result<()> {
        if c_s.field() != c_r.field() {
            return Err(Error::FieldMismatch);
        }
        if c_s.n() != c_r.n() {
            return Err(Error::BadDimensions(format!(
                "C_S has n = {}, C_R has n = {}",
                c_s.n(),
                c_r.n()
            )));
        }
        if c_r.n() == 0 {
            return Err(Error::BadDimensions("no shares".into()));
        }
        if !c_s.is_subspace_of(c_r) {
            return Err(Error::NestingViolated("C_S is not contained in C_R".into()));
        }
        if !c_r.is_self_orthogonal() {
            return Err(Error::NestingViolated(
                "C_R is not contained in its symplectic dual".into(),
            ));
        }
        Ok(())
    }

    fn assemble(c_s: &SympSpace, c_r: &SympSpace, secret_reps: Option<&[SympVec]>, c_max: SympSpace) -> Result<Self> {
        let field = c_r.field().clone();
        let n = c_r.n();
        let s = n - c_r.dim();
        let k = c_r.dim() - c_s.dim();
        let c_r_dual = symp_dual(c_r);
        let c_s_dual = symp_dual(c_s);
        debug_assert_eq!(c_s_dual.dim(), n + k + s);

        let secret_reps = match secret_reps {
            None => c_s_dual.space().complement_basis(c_r_dual.space())?,
            Some(reps) => {
                if reps.len() != k {
                    return Err(Error::BadSecretReps(format!(
                        "expected {k} representatives, got {}",
                        reps.len()
                    )));
                }
                for (j, r) in reps.iter().enumerate() {
                    if r.field() != &field || r.n() != n {
                        return Err(Error::BadSecretReps(format!(
                            "representative {} has the wrong shape",
                            j + 1
                        )));
                    }
                    if !c_s_dual.contains(r.as_slice()) {
                        return Err(Error::BadSecretReps(format!(
                            "representative {} is outside C_S^⊥s",
                            j + 1
                        )));
                    }
                }
                let rows: Vec<&[u32]> = reps.iter().map(|r| r.as_slice()).collect();
                if c_r_dual.extend(&rows)?.dim() != c_r_dual.dim() + k {
                    return Err(Error::BadSecretReps(
                        "representatives are dependent modulo C_R^⊥s".into(),
                    ));
                }
                reps.iter().map(|r| r.as_slice().to_vec()).collect()
            }
        };
        let rand_reps = c_r_dual.space().complement_basis(c_max.space())?;
        debug_assert_eq!(rand_reps.len(), s);

        Ok(Scheme {
            field,
            n,
            k,
            s,
            c_s: c_s.clone(),
            c_r: c_r.clone(),
            c_r_dual,
            c_s_dual,
            c_max,
            secret_reps,
            rand_reps,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Number of shares.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Secret length in field symbols.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Randomness in field symbols.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn c_s(&self) -> &SympSpace {
        &self.c_s
    }

    pub fn c_r(&self) -> &SympSpace {
        &self.c_r
    }

    pub fn c_r_dual(&self) -> &SympSpace {
        &self.c_r_dual
    }

    pub fn c_s_dual(&self) -> &SympSpace {
        &self.c_s_dual
    }

    pub fn c_max(&self) -> &SympSpace {
        &self.c_max
    }

    /// Representatives `r_1..r_k` of the secret map.
    pub fn secret_reps(&self) -> &[Vec<u32>] {
        &self.secret_reps
    }

    /// Representatives `t_1..t_s` of `C_R^⊥s / C_max`.
    pub fn rand_reps(&self) -> &[Vec<u32>] {
        &self.rand_reps
    }

    /// Same codes and secret map, different Lagrangian `C_max`.
    pub fn with_cmax(&self, c_max: &SympSpace) -> Result<Scheme> {
        let reps = self.secret_rep_vecs();
        Scheme::build_with_cmax(&self.c_s, &self.c_r, Some(&reps), c_max)
    }

    pub fn secret_rep_vecs(&self) -> Vec<SympVec> {
        self.secret_reps
            .iter()
            .map(|r| SympVec::from_row(&self.field, r.clone()).expect("stored reps are valid"))
            .collect()
    }

    fn check_set(&self, a: IndexSet) -> Result<()> {
        a.check_within(self.n)
    }

    /// `dim (C_R ∩ F^A) − dim (C_S ∩ F^A)`, cross-checked against
    /// `dim P_A(C_S^⊥s) − dim P_A(C_R^⊥s)`.
    pub fn info_dim(&self, a: IndexSet) -> Result<usize> {
        self.check_set(a)?;
        let restricted = self.c_r.restrict_dim(a)? - self.c_s.restrict_dim(a)?;
        let projected = self.c_s_dual.project_dim(a)? - self.c_r_dual.project_dim(a)?;
        assert_eq!(
            restricted, projected,
            "restriction and projection routes disagree on {a:?}"
        );
        Ok(restricted)
    }

    /// Information available to `A` via the projection route only.
    pub fn info_dim_projected(&self, a: IndexSet) -> Result<usize> {
        self.check_set(a)?;
        Ok(self.c_s_dual.project_dim(a)? - self.c_r_dual.project_dim(a)?)
    }

    pub fn info_amount(&self, a: IndexSet) -> Result<InfoAmount> {
        let ell = self.info_dim(a)?;
        Ok(InfoAmount {
            ell,
            bits: ell as f64 * (self.field.q() as f64).log2(),
        })
    }

    pub fn classify(&self, a: IndexSet) -> Result<AccessClass> {
        Ok(self.class_of(self.info_dim(a)?))
    }

    pub fn class_of(&self, ell: usize) -> AccessClass {
        if ell == 0 {
            AccessClass::Forbidden
        } else if ell == self.k {
            AccessClass::Qualified
        } else {
            AccessClass::Intermediate(ell)
        }
    }

    /// Information `A` holds about the sub-secret `P_B(m)` when the
    /// coordinates outside `B` act as extra randomness:
    /// `dim P_A(C_S^⊥s) − dim P_A(C_R^⊥s + span{r_j : j ∉ B})`.
    /// `B` indexes secret coordinates `0..k`.
    pub fn partial_leakage(&self, a: IndexSet, b: IndexSet) -> Result<usize> {
        self.check_set(a)?;
        b.check_within(self.k)?;
        let dummies: Vec<&[u32]> = (0..self.k)
            .filter(|&j| !b.contains(j))
            .map(|j| self.secret_reps[j].as_slice())
            .collect();
        let widened = self.c_r_dual.extend(&dummies)?;
        Ok(self.c_s_dual.project_dim(a)? - widened.project_dim(a)?)
    }

    /// `Σ m_j r_j`, a representative of `f(m)` modulo `C_R^⊥s`.
    pub fn secret_coset_rep(&self, m: &FVector) -> Result<Vec<u32>> {
        if m.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if m.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: m.len(),
            });
        }
        let mut v = vec![0u32; 2 * self.n];
        for (j, &c) in m.as_slice().iter().enumerate() {
            axpy(&self.field, &mut v, c, &self.secret_reps[j]);
        }
        Ok(v)
    }

    /// Canonical representatives (modulo `C_max`) of the `q^s` cosets the
    /// randomized encoder may pick for secret `m`, in randomness order.
    pub fn encode_reps(&self, m: &FVector) -> Result<Vec<SympVec>> {
        self.encode_reps_with(m, &Config::from_env())
    }

    pub fn encode_reps_with(&self, m: &FVector, cfg: &Config) -> Result<Vec<SympVec>> {
        let base = self.secret_coset_rep(m)?;
        let q = self.field.q() as u64;
        let count = crate::symplectic::enumeration_size(self.field.q(), self.s, cfg.max_enum)?;
        (0..count)
            .map(|mut idx| {
                let mut v = base.clone();
                for t in &self.rand_reps {
                    axpy(&self.field, &mut v, (idx % q) as u32, t);
                    idx /= q;
                }
                SympVec::from_row(&self.field, self.c_max.space().reduce(&v))
            })
            .collect()
    }

    /// All `q^k` secrets in base-q counting order (first coordinate fastest).
    pub fn all_secrets(&self, cfg: &Config) -> Result<Vec<FVector>> {
        let q = self.field.q() as u64;
        let count = crate::symplectic::enumeration_size(self.field.q(), self.k, cfg.max_enum)?;
        Ok((0..count)
            .map(|mut idx| {
                let data = (0..self.k)
                    .map(|_| {
                        let d = (idx % q) as u32;
                        idx /= q;
                        d
                    })
                    .collect();
                FVector::new(&self.field, data).expect("digits are field elements")
            })
            .collect())
    }

    /// `dim (C_S^⊥s ∩ F^A) − dim (C_R^⊥s ∩ F^A)`: information of `A` in the
    /// scheme obtained by swapping the roles of the code pair and its dual.
    pub fn dual_pair_info_dim(&self, a: IndexSet) -> Result<usize> {
        self.check_set(a)?;
        Ok(self.c_s_dual.restrict_dim(a)? - self.c_r_dual.restrict_dim(a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(labels: &[usize], n: usize) -> IndexSet {
        IndexSet::from_labels(labels, n).unwrap()
    }

    #[test]
    fn ternary_fixture_parameters() {
        let s = fixtures::ternary_four_share();
        assert_eq!((s.n(), s.k(), s.s()), (4, 2, 2));
        assert_eq!(s.c_s().dim(), 0);
        assert_eq!(s.c_r().dim(), 2);
        assert_eq!(s.c_max().dim(), 4);
        assert_eq!(s.c_r_dual().dim(), 6);
        assert_eq!(s.c_s_dual().dim(), 8);
    }

    #[test]
    fn classification_of_fixture() {
        let s = fixtures::ternary_four_share();
        for a in IndexSet::all_subsets(4) {
            let c = s.classify(a).unwrap();
            match a.len() {
                0..=2 => assert_eq!(c, AccessClass::Forbidden, "{a:?}"),
                4 => assert_eq!(c, AccessClass::Qualified),
                _ => {}
            }
        }
        assert_eq!(s.classify(set(&[1, 2, 3], 4)).unwrap(), AccessClass::Qualified);
        assert_eq!(s.info_amount(set(&[1, 2, 3], 4)).unwrap().ell, 2);
        assert_eq!(s.classify(IndexSet::empty()).unwrap(), AccessClass::Forbidden);
        assert!(s.classify(IndexSet::from_indices(&[4], 5).unwrap()).is_err());
    }

    #[test]
    fn nesting_violation() {
        let f = FieldSpec::gf(3).unwrap();
        let c_r = SympSpace::span(&f, 2, &[[1, 0, 0, 0]]).unwrap();
        let c_s = SympSpace::span(&f, 2, &[[0, 1, 0, 0]]).unwrap();
        assert!(matches!(
            Scheme::build(&c_s, &c_r, None),
            Err(Error::NestingViolated(_))
        ));
        let not_iso = SympSpace::span(&f, 2, &[[1, 0, 0, 0], [0, 0, 1, 0]]).unwrap();
        assert!(matches!(
            Scheme::build(&SympSpace::zero(&f, 2), &not_iso, None),
            Err(Error::NestingViolated(_))
        ));
    }

    #[test]
    fn degenerate_k_zero() {
        let f = FieldSpec::gf(3).unwrap();
        let c_r = SympSpace::span(&f, 2, &[[1, 1, 0, 0]]).unwrap();
        let s = Scheme::build(&c_r, &c_r, None).unwrap();
        assert_eq!(s.k(), 0);
        for a in IndexSet::all_subsets(2) {
            assert_eq!(s.classify(a).unwrap(), AccessClass::Forbidden);
        }
    }

    #[test]
    fn bad_secret_reps() {
        let s = fixtures::ternary_four_share();
        let f = s.field().clone();
        let one = SympVec::from_row(&f, vec![0, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            Scheme::build(s.c_s(), s.c_r(), Some(std::slice::from_ref(&one))),
            Err(Error::BadSecretReps(_))
        ));
        // dependent modulo C_R^⊥s
        assert!(matches!(
            Scheme::build(s.c_s(), s.c_r(), Some(&[one.clone(), one])),
            Err(Error::BadSecretReps(_))
        ));
    }

    #[test]
    fn partial_leakage_extremes() {
        let s = fixtures::ternary_four_share();
        for a in IndexSet::all_subsets(4) {
            let info = s.info_dim(a).unwrap();
            assert_eq!(s.partial_leakage(a, IndexSet::full(2)).unwrap(), info);
            assert_eq!(s.partial_leakage(a, IndexSet::empty()).unwrap(), 0);
        }
    }

    #[test]
    fn encode_reps_count_and_disjointness() {
        let s = fixtures::ternary_four_share();
        let f = s.field().clone();
        let cfg = Config::default();
        let secrets = s.all_secrets(&cfg).unwrap();
        assert_eq!(secrets.len(), 9);
        let reps: Vec<Vec<SympVec>> = secrets.iter().map(|m| s.encode_reps(m).unwrap()).collect();
        for r in &reps {
            assert_eq!(r.len(), 9);
            let mut distinct: Vec<_> = r.iter().map(|v| v.as_slice().to_vec()).collect();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct.len(), 9);
        }
        // m = 0 reps lie in C_R^⊥s; zero coset included
        assert!(reps[0].iter().all(|v| s.c_r_dual().contains(v.as_slice())));
        assert!(reps[0].iter().any(|v| v.as_slice().iter().all(|&x| x == 0)));
        // different secrets are different modulo C_R^⊥s
        for i in 0..9 {
            for j in i + 1..9 {
                let diff: Vec<u32> = reps[i][0]
                    .as_slice()
                    .iter()
                    .zip(reps[j][0].as_slice())
                    .map(|(&x, &y)| f.sub(x, y))
                    .collect();
                assert!(!s.c_r_dual().contains(&diff));
            }
        }
        let wrong = FVector::new(&FieldSpec::gf(5).unwrap(), vec![0, 0]).unwrap();
        assert_eq!(s.encode_reps(&wrong), Err(Error::FieldMismatch));
    }
}
