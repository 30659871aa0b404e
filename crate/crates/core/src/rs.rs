//! Reed–Solomon based schemes: the strongly secure construction on all of
//! F_q, its closed-form leakage profile, the insecure monomial scheme over
//! even q, and puncturing to fewer participants.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::index_set::IndexSet;
use crate::linalg::{axpy, Layout, Subspace};
use crate::par::Config;
use crate::scheme::Scheme;
use crate::symplectic::{min_weight_enumeration, SympSpace, SympVec};

/// Powers of the primitive element `g^0, …, g^{q−2}` followed by 0.
pub fn default_alphas(field: &FieldSpec) -> Vec<u32> {
    let g = field.primitive_element();
    let q = field.q();
    let mut out = Vec::with_capacity(q as usize);
    let mut x = 1;
    for _ in 0..q - 1 {
        out.push(x);
        x = field.mul(x, g);
    }
    out.push(0);
    out
}

fn check_alphas(field: &FieldSpec, alphas: &[u32]) -> Result<()> {
    let mut seen = vec![false; field.q() as usize];
    for &a in alphas {
        field.check(a)?;
        if std::mem::replace(&mut seen[a as usize], true) {
            return Err(Error::DuplicateAlpha);
        }
    }
    Ok(())
}

/// `(g(α_1), …, g(α_n))` for `g` given by coefficients, constant first.
pub fn poly_eval_all(field: &FieldSpec, coeffs: &[u32], alphas: &[u32]) -> Vec<u32> {
    alphas
        .iter()
        .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c)))
        .collect()
}

/// Coefficients (constant first, length `points.len()`) of the unique
/// polynomial of degree `< points.len()` through the given points.
pub fn interpolate(field: &FieldSpec, points: &[(u32, u32)]) -> Vec<u32> {
    let t = points.len();
    let mut out = vec![0; t];
    for (j, &(xj, yj)) in points.iter().enumerate() {
        if yj == 0 {
            continue;
        }
        // basis polynomial Π_{i≠j} (x − x_i) / (x_j − x_i)
        let mut basis = vec![1u32];
        let mut denom = 1;
        for (i, &(xi, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![0; basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] = field.add(next[d + 1], c);
                next[d] = field.sub(next[d], field.mul(c, xi));
            }
            basis = next;
            denom = field.mul(denom, field.sub(xj, xi));
        }
        let scale = field.mul(yj, field.inv(denom).expect("distinct nodes"));
        axpy(field, &mut out, scale, &basis);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    pub n: usize,
    pub ktilde: usize,
    pub alphas: Vec<u32>,
    pub space: Subspace,
}

impl RsCode {
    /// Row `i` is `(α_1^i, …, α_n^i)`.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        let f = self.space.field();
        (0..self.ktilde)
            .map(|i| self.alphas.iter().map(|&a| f.pow(a, i as u64)).collect())
            .collect()
    }
}

/// Evaluation code of all polynomials of degree `< ktilde` at `alphas`.
pub fn rs_code(field: &FieldSpec, ktilde: usize, alphas: &[u32]) -> Result<RsCode> {
    check_alphas(field, alphas)?;
    let n = alphas.len();
    if ktilde > n {
        return Err(Error::DegreeTooLarge { ktilde, n });
    }
    let rows: Vec<Vec<u32>> = (0..ktilde)
        .map(|i| alphas.iter().map(|&a| field.pow(a, i as u64)).collect())
        .collect();
    let space = Subspace::span(field, n, &rows)?;
    Ok(RsCode {
        n,
        ktilde,
        alphas: alphas.to_vec(),
        space,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsParams {
    pub field: FieldSpec,
    pub k: usize,
    pub s: usize,
    pub alphas: Vec<u32>,
}

impl RsParams {
    /// `n = q` with [`default_alphas`].
    pub fn new(q: u64, k: usize, s: usize) -> Result<Self> {
        let field = FieldSpec::gf(q)?;
        let alphas = default_alphas(&field);
        Self::with_alphas(&field, k, s, alphas)
    }

    pub fn with_alphas(field: &FieldSpec, k: usize, s: usize, alphas: Vec<u32>) -> Result<Self> {
        check_alphas(field, &alphas)?;
        let n = alphas.len();
        if n != field.q() as usize {
            return Err(Error::InvalidParams(format!(
                "the construction evaluates at all of F_q: need n = q = {}, got {n}",
                field.q()
            )));
        }
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::BadParity(format!("k = {k} must be even and at least 2")));
        }
        if k + s > n || !(n - s - k).is_multiple_of(2) {
            return Err(Error::BadParity(format!(
                "n − s − k = {n} − {s} − {k} must be even and ≥ 0"
            )));
        }
        if let Some(j) = alphas[..k / 2].iter().position(|&a| a == 0) {
            return Err(Error::AlphaZeroInPrefix(j + 1));
        }
        Ok(RsParams {
            field: field.clone(),
            k,
            s,
            alphas,
        })
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    /// `(n − k − s)/2`
    pub fn deg_s(&self) -> usize {
        (self.n() - self.k - self.s) / 2
    }

    /// `(n − s)/2`
    pub fn deg_r(&self) -> usize {
        (self.n() - self.s) / 2
    }

    /// `(n + s)/2`, the forbidden threshold.
    pub fn deg_r_dual(&self) -> usize {
        (self.n() + self.s) / 2
    }

    /// `(n + k + s)/2`, the qualified threshold.
    pub fn deg_s_dual(&self) -> usize {
        (self.n() + self.k + self.s) / 2
    }

    fn code(&self, ktilde: usize) -> Subspace {
        rs_code(&self.field, ktilde, &self.alphas)
            .expect("validated parameters")
            .space
    }

    fn square(&self, ktilde: usize) -> SympSpace {
        let c = self.code(ktilde);
        SympSpace::product(&c, &c).expect("same field and length")
    }
}

/// The representative `(g_3(α) | g_4(α))` of the secret `m`, where
/// `g_3 = x^{(n+s)/2} g_1`, `g_1` of degree `< k/2` with
/// `g_1(α_j) = m_j / α_j^{(n+s)/2}`, and likewise `g_4` for the second half.
pub fn rs_encode(params: &RsParams, m: &[u32]) -> Result<SympVec> {
    let f = &params.field;
    let half = params.k / 2;
    if m.len() != params.k {
        return Err(Error::DimensionMismatch {
            expected: params.k,
            got: m.len(),
        });
    }
    for &x in m {
        f.check(x)?;
    }
    let e = params.deg_r_dual() as u64;
    let half_poly = |ms: &[u32]| -> Vec<u32> {
        let points: Vec<(u32, u32)> = (0..half)
            .map(|j| {
                let a = params.alphas[j];
                (a, f.mul(ms[j], f.inv(f.pow(a, e)).expect("nonzero prefix")))
            })
            .collect();
        let g1 = interpolate(f, &points);
        let mut g3 = vec![0; e as usize];
        g3.extend(g1);
        poly_eval_all(f, &g3, &params.alphas)
    };
    let mut row = half_poly(&m[..half]);
    row.extend(half_poly(&m[half..]));
    SympVec::from_row(f, row)
}

fn unit(k: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

/// The strongly secure scheme: `C_S = RS((n−k−s)/2)²`, `C_R = RS((n−s)/2)²`,
/// `C_max = RS(⌊n/2⌋) × RS(⌈n/2⌉)`, secret map from [`rs_encode`]. The
/// materialized duals are checked against `RS((n+s)/2)²` and
/// `RS((n+k+s)/2)²`.
pub fn build_strong_rs(params: &RsParams) -> Result<Scheme> {
    let n = params.n();
    let c_s = params.square(params.deg_s());
    let c_r = params.square(params.deg_r());
    let c_max = SympSpace::product(&params.code(n / 2), &params.code(n.div_ceil(2)))?;
    let reps = (0..params.k)
        .map(|j| rs_encode(params, &unit(params.k, j)))
        .collect::<Result<Vec<_>>>()?;
    let scheme = Scheme::build_with_cmax(&c_s, &c_r, Some(&reps), &c_max)?;
    assert_eq!(
        scheme.c_r_dual(),
        &params.square(params.deg_r_dual()),
        "C_R^⊥s must be RS((n+s)/2)²"
    );
    assert_eq!(
        scheme.c_s_dual(),
        &params.square(params.deg_s_dual()),
        "C_S^⊥s must be RS((n+k+s)/2)²"
    );
    Ok(scheme)
}

fn check_piece(a: usize, b: usize, n: usize, k: usize) -> Result<()> {
    if a > n {
        return Err(Error::OutOfRange(format!("|A| = {a} exceeds n = {n}")));
    }
    if b > k / 2 {
        return Err(Error::OutOfRange(format!("b = {b} exceeds k/2 = {}", k / 2)));
    }
    Ok(())
}

/// Piecewise leakage of one half: 0 up to `(n+k+s)/2 − b`, then
/// `a + b − (n+k+s)/2`, capped at `b`. Also accepts `b = k/2`, where it is
/// half of the full-secret profile.
pub fn ell(a: usize, b: usize, n: usize, k: usize, s: usize) -> Result<usize> {
    check_piece(a, b, n, k)?;
    let top = (n + k + s) / 2;
    Ok((a + b).saturating_sub(top).min(b))
}

/// Information held by any `a` shares, in q-ary symbols:
/// `0`, `2(a − (n+s)/2)`, or `k`.
pub fn closed_form_info(params: &RsParams, a: usize) -> Result<usize> {
    let n = params.n();
    check_piece(a, 0, n, params.k)?;
    Ok((2 * a.saturating_sub(params.deg_r_dual())).min(params.k))
}

/// Leakage about `P_B(m)` for `|B ∩ first half| = b1`, `|B ∩ second half| = b2`.
pub fn closed_form_partial(params: &RsParams, a: usize, b1: usize, b2: usize) -> Result<usize> {
    let (n, k, s) = (params.n(), params.k, params.s);
    Ok(ell(a, b1, n, k, s)? + ell(a, b2, n, k, s)?)
}

/// `D_{B′} = RS((n+s)/2) + span{a-part of rs_encode(e_j) : j ∈ {1..k/2} \ B′}`,
/// with `B′` given as 0-based indices below `k/2`.
pub fn d_code(params: &RsParams, b_prime: IndexSet) -> Result<Subspace> {
    let half = params.k / 2;
    if b_prime.bound() > half {
        return Err(Error::IndexOutOfRange {
            index: b_prime.bound(),
            limit: half,
        });
    }
    if b_prime.len() > half {
        return Err(Error::BPrimeTooLarge {
            size: b_prime.len(),
            half,
        });
    }
    let n = params.n();
    let mut extra = Vec::new();
    for j in (0..half).filter(|&j| !b_prime.contains(j)) {
        let r = rs_encode(params, &unit(params.k, j))?;
        extra.push(r.a().to_vec());
    }
    let d = params.code(params.deg_r_dual()).extend(&extra)?;
    debug_assert_eq!(d.ambient_dim(), n);
    Ok(d)
}

/// Minimum Hamming weight of a nonzero codeword, by enumeration.
pub fn min_distance(code: &Subspace, cfg: &Config) -> Result<Option<usize>> {
    min_weight_enumeration(
        code,
        cfg,
        1,
        |v| v.iter().filter(|&&x| x != 0).count(),
        |v| v.iter().any(|&x| x != 0),
    )
}

/// `dim P_A(RS((n+k+s)/2)) − dim P_A(D_{B′})`
pub fn d_code_gap(params: &RsParams, d: &Subspace, a: IndexSet) -> Result<usize> {
    let outer = params.code(params.deg_s_dual());
    let cols = Layout::Plain.columns(params.n(), a);
    Ok(outer.project_cols_dim(&cols) - d.project_cols_dim(&cols))
}

/// The monomial scheme over even `q`: `n = k = q`, `s = 0`,
/// `C_R = C_max = RS(n/2)²`, secret `m_j ↦ x^{n/2+j−1}` on each half.
pub fn build_insecure(q: u64) -> Result<Scheme> {
    if !q.is_multiple_of(2) {
        return Err(Error::OddQ(q as u32));
    }
    let field = FieldSpec::gf(q)?;
    let alphas = default_alphas(&field);
    let n = alphas.len();
    let half = n / 2;
    let code = rs_code(&field, half, &alphas)?.space;
    let c_r = SympSpace::product(&code, &code)?;
    let c_s = SympSpace::zero(&field, n);
    let mut reps = Vec::with_capacity(n);
    for side in 0..2 {
        for j in 0..half {
            let ev: Vec<u32> = alphas.iter().map(|&a| field.pow(a, (half + j) as u64)).collect();
            let mut row = vec![0; 2 * n];
            row[side * n..(side + 1) * n].copy_from_slice(&ev);
            reps.push(SympVec::from_row(&field, row)?);
        }
    }
    Scheme::build_with_cmax(&c_s, &c_r, Some(&reps), &c_r)
}

/// Outcome of [`puncture`]: the scheme on the kept positions and its new
/// secret and randomness lengths.
#[derive(Clone, Debug)]
pub struct Punctured {
    pub scheme: Scheme,
    pub kept: IndexSet,
    pub k: usize,
    pub s: usize,
    /// Whether the projected secret representatives of the original scheme
    /// were reused (otherwise a default secret map was chosen).
    pub reps_inherited: bool,
}

/// Keeps only the shares in `a`: `C_S, C_R` become `P_A(C ∩ F^A)` on
/// `|A|` positions. The new duals are checked to be `P_A` of the old ones.
pub fn puncture(scheme: &Scheme, a: IndexSet) -> Result<Punctured> {
    a.check_within(scheme.n())?;
    if a.is_empty() {
        return Err(Error::DegeneratePuncture("no shares kept".into()));
    }
    let degenerate = |e: Error| Error::DegeneratePuncture(e.to_string());
    let c_s = scheme.c_s().restrict(a)?.project(a)?;
    let c_r = scheme.c_r().restrict(a)?.project(a)?;
    let k = c_r.dim() - c_s.dim();
    let inherited: Vec<SympVec> = scheme
        .secret_rep_vecs()
        .iter()
        .map(|r| project_vec(r, a))
        .collect::<Result<_>>()?;
    let (built, reps_inherited) = match Scheme::build(&c_s, &c_r, Some(&inherited)) {
        Ok(sch) => (sch, true),
        Err(_) => (Scheme::build(&c_s, &c_r, None).map_err(degenerate)?, false),
    };
    if built.c_r_dual() != &scheme.c_r_dual().project(a)? || built.c_s_dual() != &scheme.c_s_dual().project(a)? {
        return Err(Error::DegeneratePuncture("projected duals disagree".into()));
    }
    let s = built.s();
    Ok(Punctured {
        scheme: built,
        kept: a,
        k,
        s,
        reps_inherited,
    })
}

fn project_vec(v: &SympVec, a: IndexSet) -> Result<SympVec> {
    let cols = Layout::Symplectic.columns(2 * v.n(), a);
    let row: Vec<u32> = cols.iter().map(|&c| v.as_slice()[c]).collect();
    SympVec::from_row(v.field(), row)
}
