//! The symplectic form on F_q^{2n} and the combinatorics built on it.
//!
//! Vectors use the `(a_1..a_n | b_1..b_n)` layout throughout. Position `i`
//! of a vector is "occupied" when `(a_i, b_i) ≠ (0, 0)`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};
use crate::index_set::IndexSet;
use crate::linalg::{axpy, coord_restrict_dim, FVector, Layout, Mat, Subspace};
use crate::par::{self, Config};

/// A vector `(a|b) ∈ F_q^{2n}`.
#[derive(Clone, PartialEq, Eq)]
pub struct SympVec {
    field: FieldSpec,
    data: Vec<u32>,
}

impl SympVec {
    pub fn new(a: &FVector, b: &FVector) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        let mut data = a.as_slice().to_vec();
        data.extend_from_slice(b.as_slice());
        Ok(SympVec {
            field: a.field().clone(),
            data,
        })
    }

    /// From a length-2n row in `(a|b)` layout.
    pub fn from_row(field: &FieldSpec, row: Vec<u32>) -> Result<Self> {
        if !row.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: row.len() + 1,
                got: row.len(),
            });
        }
        for &v in &row {
            field.check(v)?;
        }
        Ok(SympVec {
            field: field.clone(),
            data: row,
        })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        SympVec {
            field: field.clone(),
            data: vec![0; 2 * n],
        }
    }

    pub fn n(&self) -> usize {
        self.data.len() / 2
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn a(&self) -> &[u32] {
        &self.data[..self.n()]
    }

    pub fn b(&self) -> &[u32] {
        &self.data[self.n()..]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.data
    }
}

impl fmt::Debug for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}|{:?})", self.a(), self.b())
    }
}

/// ⟨(a|b),(a'|b')⟩_s = ⟨a,b'⟩ − ⟨a',b⟩ on raw rows of length 2n.
pub fn symp_inner_raw(f: &FieldSpec, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len() / 2;
    let mut acc = 0;
    for i in 0..n {
        acc = f.add(acc, f.mul(u[i], v[n + i]));
        acc = f.sub(acc, f.mul(v[i], u[n + i]));
    }
    acc
}

pub fn symp_inner(u: &SympVec, v: &SympVec) -> Result<Felt> {
    if u.field != v.field {
        return Err(Error::FieldMismatch);
    }
    if u.data.len() != v.data.len() {
        return Err(Error::DimensionMismatch {
            expected: u.data.len(),
            got: v.data.len(),
        });
    }
    u.field.elem(symp_inner_raw(&u.field, &u.data, &v.data))
}

/// Number of positions `i` with `(a_i, b_i) ≠ (0, 0)`.
pub fn swt_raw(v: &[u32]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count()
}

pub fn swt(v: &SympVec) -> usize {
    swt_raw(&v.data)
}

/// A subspace of F_q^{2n} carrying the symplectic form.
#[derive(Clone, PartialEq, Eq)]
pub struct SympSpace {
    n: usize,
    inner: Subspace,
}

impl fmt::Debug for SympSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SympSpace(n={}, dim={}) {:?}",
            self.n,
            self.dim(),
            self.inner.basis()
        )
    }
}

impl SympSpace {
    pub fn new(inner: Subspace) -> Result<Self> {
        let amb = inner.ambient_dim();
        if !amb.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: amb + 1,
                got: amb,
            });
        }
        Ok(SympSpace { n: amb / 2, inner })
    }

    pub fn span<R: AsRef<[u32]>>(field: &FieldSpec, n: usize, rows: &[R]) -> Result<Self> {
        Ok(SympSpace {
            n,
            inner: Subspace::span(field, 2 * n, rows)?,
        })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        SympSpace {
            n,
            inner: Subspace::zero(field, 2 * n),
        }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        SympSpace {
            n,
            inner: Subspace::full(field, 2 * n),
        }
    }

    /// `{(a|b) : a ∈ a_code, b ∈ b_code}` for two codes of length n.
    pub fn product(a_code: &Subspace, b_code: &Subspace) -> Result<Self> {
        if a_code.ambient_dim() != b_code.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: a_code.ambient_dim(),
                got: b_code.ambient_dim(),
            });
        }
        if a_code.field() != b_code.field() {
            return Err(Error::FieldMismatch);
        }
        let n = a_code.ambient_dim();
        let mut rows = Vec::with_capacity(a_code.dim() + b_code.dim());
        for r in a_code.rows() {
            let mut v = r.to_vec();
            v.resize(2 * n, 0);
            rows.push(v);
        }
        for r in b_code.rows() {
            let mut v = vec![0; n];
            v.extend_from_slice(r);
            rows.push(v);
        }
        Self::span(a_code.field(), n, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn field(&self) -> &FieldSpec {
        self.inner.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.inner
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.inner.rows()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.inner.contains(v)
    }

    pub fn is_subspace_of(&self, other: &SympSpace) -> bool {
        self.inner.is_subspace_of(&other.inner)
    }

    pub fn sum(&self, other: &SympSpace) -> Result<SympSpace> {
        Ok(SympSpace {
            n: self.n,
            inner: self.inner.sum(&other.inner)?,
        })
    }

    pub fn extend<R: AsRef<[u32]>>(&self, extra: &[R]) -> Result<SympSpace> {
        Ok(SympSpace {
            n: self.n,
            inner: self.inner.extend(extra)?,
        })
    }

    pub fn intersect(&self, other: &SympSpace) -> Result<SympSpace> {
        Ok(SympSpace {
            n: self.n,
            inner: self.inner.intersect(&other.inner)?,
        })
    }

    pub fn dual(&self) -> SympSpace {
        symp_dual(self)
    }

    /// `C ⊆ C^⊥s`
    pub fn is_self_orthogonal(&self) -> bool {
        let f = self.field();
        let rows: Vec<&[u32]> = self.rows().collect();
        rows.iter()
            .enumerate()
            .all(|(i, u)| rows[i + 1..].iter().all(|v| symp_inner_raw(f, u, v) == 0))
    }

    /// `C = C^⊥s`
    pub fn is_lagrangian(&self) -> bool {
        self.dim() == self.n && self.is_self_orthogonal()
    }

    /// `dim (C ∩ F^A)`.
    pub fn restrict_dim(&self, set: IndexSet) -> Result<usize> {
        coord_restrict_dim(&self.inner, set, Layout::Symplectic)
    }

    pub fn restrict(&self, set: IndexSet) -> Result<SympSpace> {
        let inner = crate::linalg::coord_restrict(&self.inner, set, Layout::Symplectic)?;
        Ok(SympSpace { n: self.n, inner })
    }

    /// `P_A(C)` as a symplectic space on `|A|` positions.
    pub fn project(&self, set: IndexSet) -> Result<SympSpace> {
        let inner = crate::linalg::coord_project(&self.inner, set, Layout::Symplectic)?;
        Ok(SympSpace { n: set.len(), inner })
    }

    pub fn project_dim(&self, set: IndexSet) -> Result<usize> {
        crate::linalg::coord_project_dim(&self.inner, set, Layout::Symplectic)
    }
}

/// `C^⊥s`: the Euclidean kernel of the rows `(b|−a)` for `(a|b)` in a basis of C.
pub fn symp_dual(c: &SympSpace) -> SympSpace {
    let f = c.field();
    let n = c.n;
    if c.dim() == 0 {
        return SympSpace::full(f, n);
    }
    let rows: Vec<Vec<u32>> = c
        .rows()
        .map(|r| {
            let mut w = r[n..].to_vec();
            w.extend(r[..n].iter().map(|&x| f.neg(x)));
            w
        })
        .collect();
    let m = Mat::from_rows(f, 2 * n, &rows).expect("rows have length 2n");
    let ker = m.kernel();
    SympSpace {
        n,
        inner: Subspace::span(f, 2 * n, &ker).expect("kernel has length 2n"),
    }
}

fn check_pair(v1: &SympSpace, v2: &SympSpace) -> Result<()> {
    if v1.field() != v2.field() {
        return Err(Error::FieldMismatch);
    }
    if v1.n != v2.n {
        return Err(Error::DimensionMismatch {
            expected: 2 * v1.n,
            got: 2 * v2.n,
        });
    }
    if !v2.is_subspace_of(v1) {
        return Err(Error::NotASubspacePair);
    }
    Ok(())
}

/// Checks `q^dim ≤ cap` and returns `q^dim`.
pub(crate) fn enumeration_size(q: u32, dim: usize, cap: u64) -> Result<u64> {
    let size = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    Ok(size as u64)
}

/// Minimum over all vectors of `space` of `weight(v)` restricted to vectors
/// accepted by `keep`, by full enumeration split into independent chunks.
/// `weight` must be ≥ `floor` for every kept vector; reaching `floor`
/// stops the chunk early. Returns `None` when no vector is kept.
pub(crate) fn min_weight_enumeration<W, K>(
    space: &Subspace,
    cfg: &Config,
    floor: usize,
    weight: W,
    keep: K,
) -> Result<Option<usize>>
where
    W: Fn(&[u32]) -> usize + Sync + Send,
    K: Fn(&[u32]) -> bool + Sync + Send,
{
    let f = space.field();
    let q = f.q() as u64;
    let d = space.dim();
    enumeration_size(f.q(), d, cfg.max_enum)?;
    let len = space.ambient_dim();
    // multiples[r][c] = c · basis_r
    let multiples: Vec<Vec<Vec<u32>>> = space
        .rows()
        .map(|row| {
            (0..q as u32)
                .map(|c| row.iter().map(|&x| f.mul(c, x)).collect())
                .collect()
        })
        .collect();
    // High digits index the chunk; low digits are walked by an odometer.
    let mut high = 0;
    while high < d && q.pow(high as u32) < 256 {
        high += 1;
    }
    let low = d - high;
    let chunks = q.pow(high as u32);
    let results = par::map_range(cfg.exec, 0..chunks, |chunk| {
        let mut cur = vec![0u32; len];
        let mut idx = chunk;
        for mult in &multiples[low..d] {
            let c = (idx % q) as usize;
            idx /= q;
            for (x, &m) in cur.iter_mut().zip(&mult[c]) {
                *x = f.add(*x, m);
            }
        }
        let mut digits = vec![0usize; low];
        let mut best: Option<usize> = None;
        loop {
            let w = weight(&cur);
            if best.is_none_or(|b| w < b) && keep(&cur) {
                best = Some(w);
                if w <= floor {
                    return best;
                }
            }
            // advance odometer
            let mut r = 0;
            loop {
                if r == low {
                    return best;
                }
                let old = digits[r];
                let new = if old + 1 == q as usize { 0 } else { old + 1 };
                digits[r] = new;
                for j in 0..len {
                    let delta = f.sub(multiples[r][new][j], multiples[r][old][j]);
                    if delta != 0 {
                        cur[j] = f.add(cur[j], delta);
                    }
                }
                if new != 0 {
                    break;
                }
                r += 1;
            }
        }
    });
    Ok(results.into_iter().flatten().min())
}

/// `d_s(V1, V2) = min{swt(v) : v ∈ V1 \ V2}` by enumerating V1.
pub fn coset_distance(v1: &SympSpace, v2: &SympSpace) -> Result<usize> {
    coset_distance_with(v1, v2, &Config::from_env())
}

pub fn coset_distance_with(v1: &SympSpace, v2: &SympSpace, cfg: &Config) -> Result<usize> {
    check_pair(v1, v2)?;
    if v1.dim() == v2.dim() {
        // V1 \ V2 is empty
        return Err(Error::NotASubspacePair);
    }
    let found = min_weight_enumeration(v1.space(), cfg, 1, swt_raw, |v| !v2.contains(v))?;
    Ok(found.expect("V1 strictly contains V2"))
}

/// `d_s^i(V1, V2)` for every `i = 1..=dim V1 − dim V2`, from one sweep of
/// subsets ordered by size.
pub fn rgsw_all(v1: &SympSpace, v2: &SympSpace, cfg: &Config) -> Result<Vec<usize>> {
    check_pair(v1, v2)?;
    let n = v1.n;
    if n > cfg.max_subset_positions {
        return Err(Error::TooManySubsets(n));
    }
    let gap = v1.dim() - v2.dim();
    let mut out = Vec::with_capacity(gap);
    for size in 0..=n {
        if out.len() == gap {
            break;
        }
        let subsets = IndexSet::subsets_of_size(n, size);
        let diffs = par::map_slice(cfg.exec, &subsets, |&a| {
            v1.restrict_dim(a).unwrap() - v2.restrict_dim(a).unwrap()
        });
        let best = diffs.into_iter().max().unwrap_or(0);
        while out.len() < best.min(gap) {
            out.push(size);
        }
    }
    Ok(out)
}

/// `d_s^i(V1, V2) = min{|A| : dim(F^A∩V1) − dim(F^A∩V2) ≥ i}`.
pub fn rgsw(v1: &SympSpace, v2: &SympSpace, i: usize) -> Result<usize> {
    rgsw_with(v1, v2, i, &Config::from_env())
}

pub fn rgsw_with(v1: &SympSpace, v2: &SympSpace, i: usize, cfg: &Config) -> Result<usize> {
    check_pair(v1, v2)?;
    let gap = v1.dim() - v2.dim();
    if i == 0 || i > gap {
        return Err(Error::IndexOutOfRange { index: i, limit: gap });
    }
    let n = v1.n;
    if n > cfg.max_subset_positions {
        return Err(Error::TooManySubsets(n));
    }
    for size in 0..=n {
        let subsets = IndexSet::subsets_of_size(n, size);
        let hit = par::find_first_in(cfg.exec, &subsets, |&a| {
            let d = v1.restrict_dim(a).unwrap() - v2.restrict_dim(a).unwrap();
            (d >= i).then_some(())
        });
        if hit.is_some() {
            return Ok(size);
        }
    }
    unreachable!("the full position set attains the whole gap")
}

/// Deterministic greedy extension of a self-orthogonal space to a
/// Lagrangian one: repeatedly adjoin the first row of the echelon basis of
/// the current dual that is not yet in the space.
pub fn lagrangian_extend(c: &SympSpace) -> Result<SympSpace> {
    if !c.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let mut cur = c.clone();
    while cur.dim() < cur.n {
        let dual = cur.dual();
        let next = dual
            .rows()
            .find(|r| !cur.contains(r))
            .expect("a non-Lagrangian isotropic space is strictly inside its dual")
            .to_vec();
        cur = cur.extend(&[next])?;
    }
    Ok(cur)
}

/// Grows a self-orthogonal space to dimension `target` by adjoining
/// uniformly random vectors of the current dual that lie outside it.
pub fn isotropic_extend_random<R: Rng + ?Sized>(c: &SympSpace, target: usize, rng: &mut R) -> Result<SympSpace> {
    if !c.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    if target > c.n || target < c.dim() {
        return Err(Error::BadDimensions(format!(
            "cannot grow a {}-dim isotropic space to {target} in 2·{} coordinates",
            c.dim(),
            c.n
        )));
    }
    let f = c.field().clone();
    let q = f.q();
    let mut cur = c.clone();
    while cur.dim() < target {
        let dual = cur.dual();
        let basis: Vec<&[u32]> = dual.rows().collect();
        loop {
            let mut v = vec![0u32; 2 * cur.n];
            for row in &basis {
                axpy(&f, &mut v, rng.gen_range(0..q), row);
            }
            if !cur.contains(&v) {
                cur = cur.extend(&[v])?;
                break;
            }
        }
    }
    Ok(cur)
}

/// Uniformly random `dim`-dimensional subspace of `space` (random
/// generators until the target dimension is reached).
pub fn random_subspace_of<R: Rng + ?Sized>(space: &SympSpace, dim: usize, rng: &mut R) -> Result<SympSpace> {
    if dim > space.dim() {
        return Err(Error::BadDimensions(format!(
            "subspace dim {dim} exceeds {}",
            space.dim()
        )));
    }
    let f = space.field().clone();
    let q = f.q();
    let basis: Vec<&[u32]> = space.rows().collect();
    let mut cur = SympSpace::zero(&f, space.n);
    while cur.dim() < dim {
        let mut v = vec![0u32; 2 * space.n];
        for row in &basis {
            axpy(&f, &mut v, rng.gen_range(0..q), row);
        }
        if !cur.contains(&v) {
            cur = cur.extend(&[v])?;
        }
    }
    Ok(cur)
}
