//! Dense linear algebra over a [`FieldSpec`] and canonical subspaces.
//!
//! A [`Subspace`] always stores its basis in reduced row-echelon form with
//! zero rows removed, so two subspaces are equal exactly when their bases
//! are equal entry by entry.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::index_set::IndexSet;

/// A row vector over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct FVector {
    field: FieldSpec,
    data: Vec<u32>,
}

impl FVector {
    pub fn new(field: &FieldSpec, data: Vec<u32>) -> Result<Self> {
        for &v in &data {
            field.check(v)?;
        }
        Ok(FVector {
            field: field.clone(),
            data,
        })
    }

    pub fn zeros(field: &FieldSpec, len: usize) -> Self {
        FVector {
            field: field.clone(),
            data: vec![0; len],
        }
    }

    /// Unit vector with a one at `i`.
    pub fn unit(field: &FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.data[i] = 1;
        v
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn hamming_weight(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    pub fn dot(&self, other: &FVector) -> Result<u32> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(dot(&self.field, &self.data, &other.data))
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.data)
    }
}

pub(crate) fn dot(f: &FieldSpec, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `dst += c * src`
pub(crate) fn axpy(f: &FieldSpec, dst: &mut [u32], c: u32, src: &[u32]) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(c, s));
        }
    }
}

pub(crate) fn scale(f: &FieldSpec, v: &mut [u32], c: u32) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        for &v in &data {
            field.check(v)?;
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Stacks equal-length rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows<R: AsRef<[u32]>>(field: &FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for &v in r {
                field.check(v)?;
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    let (dst, src) = (r * other.cols, k * other.cols);
                    for c in 0..other.cols {
                        let b = other.data[src + c];
                        if b != 0 {
                            out.data[dst + c] = f.add(out.data[dst + c], f.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `v · M` for a row vector `v` of length `nrows`.
    pub fn left_mul(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.cols];
        for (r, &c) in v.iter().enumerate() {
            axpy(&self.field, &mut out, c, self.row(r));
        }
        out
    }

    /// Reduces to reduced row-echelon form in place, drops zero rows and
    /// returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv(self.data[lead * cols + c]).unwrap();
            scale(&f, &mut self.data[lead * cols..(lead + 1) * cols], inv);
            let pivot_row = self.data[lead * cols..(lead + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r != lead {
                    let factor = self.data[r * cols + c];
                    if factor != 0 {
                        axpy(&f, &mut self.data[r * cols..(r + 1) * cols], f.neg(factor), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        self.rows = lead;
        self.data.truncate(lead * cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0; self.cols];
                x[free] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = f.neg(m.get(r, free));
                }
                x
            })
            .collect()
    }

    /// Basis of the left kernel `{y : y M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        self.transpose().kernel()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Whether positions map to one column (`Plain`, ambient n) or to the
/// column pair `(i, n + i)` of an `(a|b)` vector (`Symplectic`, ambient 2n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Plain,
    Symplectic,
}

impl Layout {
    pub fn positions(self, ambient: usize) -> usize {
        match self {
            Layout::Plain => ambient,
            Layout::Symplectic => ambient / 2,
        }
    }

    pub fn columns(self, ambient: usize, set: IndexSet) -> Vec<usize> {
        match self {
            Layout::Plain => set.iter().collect(),
            Layout::Symplectic => {
                let n = ambient / 2;
                let mut c: Vec<usize> = set.iter().collect();
                c.extend(set.iter().map(|i| n + i));
                c
            }
        }
    }
}

/// A linear subspace of F^N in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}^{}) {:?}",
            self.dim(),
            self.field(),
            self.ambient_dim(),
            self.basis
        )
    }
}

/// Canonical subspace spanned by `vectors`.
pub fn rref_basis(field: &FieldSpec, ambient: usize, vectors: &[FVector]) -> Result<Subspace> {
    for v in vectors {
        if v.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let rows: Vec<&[u32]> = vectors.iter().map(|v| v.as_slice()).collect();
    Subspace::span(field, ambient, &rows)
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        let mut m = Mat::zeros(field, ambient, ambient);
        for i in 0..ambient {
            m.set(i, i, 1);
        }
        Subspace {
            basis: m,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<R: AsRef<[u32]>>(field: &FieldSpec, ambient: usize, rows: &[R]) -> Result<Self> {
        let m = Mat::from_rows(field, ambient, rows)?;
        Ok(Self::from_mat(m))
    }

    pub fn from_mat(mut m: Mat) -> Self {
        let pivots = m.rref_in_place();
        Subspace { basis: m, pivots }
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.basis.rows()
    }

    fn same_space(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: other.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `v + self`: the unique element of the
    /// coset whose pivot coordinates are all zero.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c != 0 {
                axpy(f, &mut out, f.neg(c), self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient_dim() && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.same_space(other).is_ok() && self.rows().all(|r| other.contains(r))
    }

    /// `U + V`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_space(other)?;
        let rows: Vec<&[u32]> = self.rows().chain(other.rows()).collect();
        Subspace::span(self.field(), self.ambient_dim(), &rows)
    }

    /// Adds extra generators.
    pub fn extend<R: AsRef<[u32]>>(&self, extra: &[R]) -> Result<Subspace> {
        let mut rows: Vec<&[u32]> = self.rows().collect();
        rows.extend(extra.iter().map(|r| r.as_ref()));
        Subspace::span(self.field(), self.ambient_dim(), &rows)
    }

    /// `U ∩ V`, from the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_space(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient_dim()));
        }
        let rows: Vec<&[u32]> = self.rows().chain(other.rows()).collect();
        let stacked = Mat::from_rows(self.field(), self.ambient_dim(), &rows)?;
        let d = self.dim();
        let vecs: Vec<Vec<u32>> = stacked
            .left_kernel()
            .into_iter()
            .map(|y| self.basis.left_mul(&y[..d]))
            .collect();
        Subspace::span(self.field(), self.ambient_dim(), &vecs)
    }

    /// Euclidean orthogonal complement `{w : w·v = 0 ∀ v}`.
    pub fn euclidean_dual(&self) -> Subspace {
        let n = self.ambient_dim();
        if self.is_zero() {
            return Subspace::full(self.field(), n);
        }
        let k = self.basis.kernel();
        Subspace::span(self.field(), n, &k).expect("kernel vectors have ambient length")
    }

    /// Vectors of `self` whose cosets form a basis of `self / sub`, chosen
    /// by scanning the echelon basis of `self` in order and keeping each
    /// row that is new modulo the span so far (stored reduced).
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Vec<u32>>> {
        self.same_space(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(Error::NotASubspacePair);
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for r in self.rows() {
            let red = acc.reduce(r);
            if red.iter().any(|&x| x != 0) {
                acc = acc.extend(&[&red])?;
                out.push(sub.reduce(&red));
            }
        }
        Ok(out)
    }

    /// Dimension of `{v ∈ self : v_c = 0 for c ∈ cols}`.
    pub fn dim_vanishing_on(&self, cols: &[usize]) -> usize {
        self.dim() - self.basis.select_cols(cols).rank()
    }

    /// `{v ∈ self : v_c = 0 for c ∈ cols}`.
    pub fn vanishing_on(&self, cols: &[usize]) -> Subspace {
        if cols.is_empty() || self.is_zero() {
            return self.clone();
        }
        let coeffs = self.basis.select_cols(cols).left_kernel();
        let vecs: Vec<Vec<u32>> = coeffs.iter().map(|y| self.basis.left_mul(y)).collect();
        Subspace::span(self.field(), self.ambient_dim(), &vecs).expect("rows have ambient length")
    }

    /// Image under the coordinate projection onto `cols` (in that order).
    pub fn project_cols(&self, cols: &[usize]) -> Subspace {
        Subspace::from_mat(self.basis.select_cols(cols))
    }

    pub fn project_cols_dim(&self, cols: &[usize]) -> usize {
        self.basis.select_cols(cols).rank()
    }

    /// Every vector of the subspace, in coefficient order. Caller is
    /// responsible for keeping `q^dim` small.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let f = self.field();
        let q = f.q() as u64;
        let total = q.pow(self.dim() as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0; self.ambient_dim()];
                for r in 0..self.dim() {
                    axpy(f, &mut v, (idx % q) as u32, self.basis.row(r));
                    idx /= q;
                }
                v
            })
            .collect()
    }
}

/// `dim V1 − dim V2`, requiring `V2 ⊆ V1`.
pub fn quotient_dim(v1: &Subspace, v2: &Subspace) -> Result<usize> {
    v1.same_space(v2)?;
    if !v2.is_subspace_of(v1) {
        return Err(Error::NotASubspacePair);
    }
    Ok(v1.dim() - v2.dim())
}

fn check_positions(v: &Subspace, set: IndexSet, layout: Layout) -> Result<()> {
    if layout == Layout::Symplectic && !v.ambient_dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim() + 1,
            got: v.ambient_dim(),
        });
    }
    set.check_within(layout.positions(v.ambient_dim()))
}

/// `V ∩ F^A`: vectors of `V` supported on the positions in `A`.
pub fn coord_restrict(v: &Subspace, set: IndexSet, layout: Layout) -> Result<Subspace> {
    check_positions(v, set, layout)?;
    let n = layout.positions(v.ambient_dim());
    let outside = layout.columns(v.ambient_dim(), set.complement(n));
    Ok(v.vanishing_on(&outside))
}

/// `dim (V ∩ F^A)` without materializing the subspace.
pub fn coord_restrict_dim(v: &Subspace, set: IndexSet, layout: Layout) -> Result<usize> {
    check_positions(v, set, layout)?;
    let n = layout.positions(v.ambient_dim());
    Ok(v.dim_vanishing_on(&layout.columns(v.ambient_dim(), set.complement(n))))
}

/// `P_A(V)` in the reduced ambient space (`2|A|` columns laid out as
/// `(a_A | b_A)` for the symplectic layout).
pub fn coord_project(v: &Subspace, set: IndexSet, layout: Layout) -> Result<Subspace> {
    check_positions(v, set, layout)?;
    Ok(v.project_cols(&layout.columns(v.ambient_dim(), set)))
}

pub fn coord_project_dim(v: &Subspace, set: IndexSet, layout: Layout) -> Result<usize> {
    check_positions(v, set, layout)?;
    Ok(v.project_cols_dim(&layout.columns(v.ambient_dim(), set)))
}
