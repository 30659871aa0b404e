//! Random instances and invariant checks shared by the acceptance and
//! property targets.

#![allow(dead_code)]

use rand::Rng;
use sympshare::linalg::{coord_project_dim, coord_restrict_dim};
use sympshare::symplectic::{isotropic_extend_random, random_subspace_of};
use sympshare::{FieldSpec, IndexSet, Layout, Mat, Scheme, Subspace, SympSpace};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn random_set<R: Rng>(n: usize, rng: &mut R) -> IndexSet {
    IndexSet::from_bits(rng.gen_range(0..(1u64 << n)))
}

/// Random nested pair `C_S ⊆ C_R` (self-orthogonal) on 2..=5 shares.
pub fn random_scheme<R: Rng>(f: &FieldSpec, rng: &mut R) -> Scheme {
    let n = rng.gen_range(2..=5);
    let dim_r = rng.gen_range(0..=n);
    let dim_s = rng.gen_range(0..=dim_r);
    let zero = SympSpace::zero(f, n);
    let c_s = isotropic_extend_random(&zero, dim_s, rng).unwrap();
    let c_r = isotropic_extend_random(&c_s, dim_r, rng).unwrap();
    Scheme::build(&c_s, &c_r, None).unwrap()
}

fn random_matrix<R: Rng>(f: &FieldSpec, rng: &mut R) -> Mat {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=7));
    let data = (0..r * c).map(|_| rng.gen_range(0..f.q())).collect();
    Mat::new(f, r, c, data).unwrap()
}

/// `(C^⊥s)^⊥s = C` and `(V^⊥E)^⊥E = V`.
pub fn duality_involution<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let n = rng.gen_range(1..=5);
    let d = rng.gen_range(0..=2 * n);
    let c = random_subspace_of(&SympSpace::full(f, n), d, rng).unwrap();
    ensure(c.dual().dual() == c, || {
        format!("symplectic dual not an involution on {c:?}")
    })?;
    ensure(c.dual().dim() == 2 * n - c.dim(), || {
        "symplectic dual has the wrong dimension".into()
    })?;
    let v = c.space();
    ensure(v.euclidean_dual().euclidean_dual() == *v, || {
        "Euclidean dual not an involution".into()
    })
}

/// `rank M + dim ker M = #columns`, and kernel vectors are annihilated.
pub fn rank_nullity<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let m = random_matrix(f, rng);
    let ker = m.kernel();
    ensure(m.rank() + ker.len() == m.ncols(), || {
        format!("rank–nullity fails for {}×{}", m.nrows(), m.ncols())
    })?;
    let t = m.transpose();
    for k in &ker {
        ensure(t.left_mul(k).iter().all(|&x| x == 0), || {
            "kernel vector not annihilated".into()
        })?;
    }
    ensure(m.rank() == t.rank(), || "row rank differs from column rank".into())
}

/// `dim P_A(V) + dim(V ∩ F^Ā) = dim V` and `dim P_A(V) = |A| − dim(V^⊥E ∩ F^A)`.
pub fn projection_kernel<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let n = rng.gen_range(1..=6);
    let rows: Vec<Vec<u32>> = (0..rng.gen_range(0..=n))
        .map(|_| (0..n).map(|_| rng.gen_range(0..f.q())).collect())
        .collect();
    let v = Subspace::span(f, n, &rows).unwrap();
    let a = random_set(n, rng);
    let proj = coord_project_dim(&v, a, Layout::Plain).unwrap();
    let vanish = coord_restrict_dim(&v, a.complement(n), Layout::Plain).unwrap();
    ensure(proj + vanish == v.dim(), || {
        format!("projection kernel identity fails on {a:?}")
    })?;
    let dual_restrict = coord_restrict_dim(&v.euclidean_dual(), a, Layout::Plain).unwrap();
    ensure(proj == a.len() - dual_restrict, || {
        format!("projection/dual identity fails on {a:?}")
    })
}

/// `A ⊆ A′ ⟹ info(A) ≤ info(A′)`.
pub fn info_monotone<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let s = random_scheme(f, rng);
    let n = s.n();
    let a = random_set(n, rng);
    let bigger = a.union(random_set(n, rng));
    let (x, y) = (s.info_dim(a).unwrap(), s.info_dim(bigger).unwrap());
    ensure(x <= y && y <= s.k(), || {
        format!("info not monotone: {a:?} → {x}, {bigger:?} → {y}")
    })
}

/// `info(A; C_S, C_R) + info(Ā; C_R^⊥s, C_S^⊥s) = k`.
pub fn duality_complement<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let s = random_scheme(f, rng);
    let a = random_set(s.n(), rng);
    let lhs = s.info_dim(a).unwrap() + s.dual_pair_info_dim(a.complement(s.n())).unwrap();
    ensure(lhs == s.k(), || {
        format!("complement identity gives {lhs}, k = {}", s.k())
    })
}

/// Changing the Lagrangian `C_max ⊇ C_R` changes neither classification,
/// information nor partial leakage, and the encoder's cosets stay inside
/// the same secret coset.
pub fn cmax_independence<R: Rng>(f: &FieldSpec, rng: &mut R) -> Check {
    let s = random_scheme(f, rng);
    let n = s.n();
    let other = isotropic_extend_random(s.c_r(), n, rng).unwrap();
    let t = s.with_cmax(&other).map_err(|e| e.to_string())?;
    let a = random_set(n, rng);
    ensure(s.classify(a).unwrap() == t.classify(a).unwrap(), || {
        "classification depends on C_max".into()
    })?;
    ensure(s.info_dim(a).unwrap() == t.info_dim(a).unwrap(), || {
        "information depends on C_max".into()
    })?;
    if s.k() > 0 {
        let b = random_set(s.k(), rng);
        ensure(
            s.partial_leakage(a, b).unwrap() == t.partial_leakage(a, b).unwrap(),
            || "partial leakage depends on C_max".into(),
        )?;
        let m: Vec<u32> = (0..s.k()).map(|_| rng.gen_range(0..f.q())).collect();
        let m = sympshare::FVector::new(f, m).unwrap();
        let base = s.secret_coset_rep(&m).unwrap();
        let c_r_dual = s.c_r_dual();
        for r in t.encode_reps(&m).unwrap() {
            let diff: Vec<u32> = r.as_slice().iter().zip(&base).map(|(&x, &y)| f.sub(x, y)).collect();
            ensure(c_r_dual.contains(&diff), || "encoder left the secret coset".into())?;
        }
    }
    Ok(())
}

pub type Property = fn(&FieldSpec, &mut rand_chacha::ChaCha8Rng) -> Check;

pub const PROPERTIES: [(&str, Property); 6] = [
    ("duality involution", duality_involution),
    ("rank–nullity", rank_nullity),
    ("projection/kernel identity", projection_kernel),
    ("info monotonicity", info_monotone),
    ("duality complement", duality_complement),
    ("C_max independence", cmax_independence),
];

pub const FIELDS: [u64; 4] = [2, 3, 5, 4];
