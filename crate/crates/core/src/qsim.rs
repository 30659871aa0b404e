//! Dense qudit simulation of the encoder over prime fields: stabilizer
//! states of `C_max`, reduced density matrices of share sets, and the
//! access structure and Holevo information read off from them.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::FVector;
use crate::par::{self, Config};
use crate::scheme::{AccessClass, Scheme};
use crate::symplectic::SympSpace;

/// Largest `p^n` for a state vector.
pub const MAX_STATE_DIM: usize = 10_000;
/// Largest number of randomness cosets `p^s` averaged per secret.
pub const MAX_RANDOMNESS: usize = 1_000;
/// Largest `p^{|A|}` for a reduced density matrix.
pub const MAX_SUBSYSTEM_DIM: usize = 1_000;
/// Largest number of secrets `p^k`.
pub const MAX_SECRETS: usize = 10_000;
/// Budget on `p^k · p^{2|A|}` stored complex entries when all reduced
/// states of one set are held at once.
pub const MAX_TOTAL_ENTRIES: usize = 1 << 23;

pub const DECISION_TOL: f64 = 1e-8;
pub const ENTROPY_CUTOFF: f64 = 1e-12;

fn too_large(what: &str, size: usize, cap: usize) -> Error {
    Error::TooLarge(format!("{what} = {size} exceeds {cap}"))
}

fn checked_pow(p: usize, e: usize) -> usize {
    p.checked_pow(e as u32).unwrap_or(usize::MAX)
}

#[derive(Clone, Debug)]
pub struct PureState {
    p: u32,
    n: usize,
    /// Basis index `Σ v_i p^{n−1−i}`: share 1 is the most significant digit.
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn basis(p: u32, n: usize, index: usize) -> Result<Self> {
        let dim = checked_pow(p as usize, n);
        if dim > MAX_STATE_DIM {
            return Err(too_large("p^n", dim, MAX_STATE_DIM));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index % dim] = Complex64::new(1.0, 0.0);
        Ok(PureState { p, n, amps })
    }

    pub fn from_amplitudes(p: u32, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = checked_pow(p as usize, n);
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        Ok(PureState { p, n, amps })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn normalize(&mut self) {
        let nrm = self.norm();
        for z in &mut self.amps {
            *z /= nrm;
        }
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(x, y)| x.conj() * y).sum()
    }

    fn digits(&self, mut idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut d = vec![0; self.n];
        for i in (0..self.n).rev() {
            d[i] = (idx % p) as u32;
            idx /= p;
        }
        d
    }

    fn index(&self, digits: &[u32]) -> usize {
        digits.iter().fold(0, |acc, &x| acc * self.p as usize + x as usize)
    }
}

fn omega(p: u32, e: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (e % p as u64) as f64 / p as f64)
}

/// `X(a)Z(b)|ψ⟩`: the amplitude at `v` picks up `ω^{⟨b,v⟩}` and moves to `v + a`.
pub fn pauli_apply(a: &[u32], b: &[u32], psi: &PureState) -> Result<PureState> {
    let (p, n) = (psi.p, psi.n);
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.len().max(b.len()),
        });
    }
    if a.iter().chain(b).any(|&x| x >= p) {
        return Err(Error::ElementOutOfRange {
            value: *a.iter().chain(b).max().unwrap(),
            q: p,
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); psi.amps.len()];
    for (idx, &amp) in psi.amps.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let v = psi.digits(idx);
        let phase: u64 = v.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
        let w: Vec<u32> = v.iter().zip(a).map(|(&x, &y)| (x + y) % p).collect();
        out[psi.index(&w)] = amp * omega(p, phase);
    }
    Ok(PureState { p, n, amps: out })
}

/// Same as [`pauli_apply`] for `FVector` halves over a prime field.
pub fn pauli_apply_vec(a: &FVector, b: &FVector, psi: &PureState) -> Result<PureState> {
    if !a.field().is_prime_field() || a.field() != b.field() {
        return Err(Error::NonPrimeField);
    }
    pauli_apply(a.as_slice(), b.as_slice(), psi)
}

/// `c · X(a)Z(b)` with `c = i` when `p = 2` and `⟨a,b⟩` is odd, so that the
/// operator has order `p` and eigenvalues that are `p`-th roots of unity.
fn generator_apply(row: &[u32], psi: &PureState) -> Result<PureState> {
    let n = psi.n;
    let (a, b) = row.split_at(n);
    let mut out = pauli_apply(a, b, psi)?;
    if psi.p == 2 && a.iter().zip(b).map(|(&x, &y)| x * y).sum::<u32>() % 2 == 1 {
        for z in &mut out.amps {
            *z *= Complex64::new(0.0, 1.0);
        }
    }
    Ok(out)
}

fn check_prime(scheme_field_prime: bool) -> Result<()> {
    if scheme_field_prime {
        Ok(())
    } else {
        Err(Error::NonPrimeField)
    }
}

/// Simultaneous eigenvector of all `X(a)Z(b)`, `(a|b) ∈ C_max`, obtained by
/// projecting the basis state `|seed⟩` onto one eigenvalue sector per
/// generator (first nonzero sector in the order ω^0, ω^1, …).
pub fn stabilizer_state(c_max: &SympSpace) -> Result<PureState> {
    stabilizer_state_seeded(c_max, 0)
}

pub fn stabilizer_state_seeded(c_max: &SympSpace, seed: usize) -> Result<PureState> {
    let f = c_max.field();
    check_prime(f.is_prime_field())?;
    if !c_max.is_lagrangian() {
        return Err(Error::NotSelfOrthogonal);
    }
    let (p, n) = (f.p(), c_max.n());
    let gens: Vec<Vec<u32>> = c_max.rows().map(|r| r.to_vec()).collect();
    let dim = checked_pow(p as usize, n);
    for attempt in 0..dim {
        let mut psi = PureState::basis(p, n, seed + attempt)?;
        let mut ok = true;
        for g in &gens {
            // powers W^t ψ for t = 0..p−1
            let mut powers = vec![psi.clone()];
            for t in 1..p as usize {
                let next = generator_apply(g, &powers[t - 1])?;
                powers.push(next);
            }
            let mut chosen = None;
            for j in 0..p as u64 {
                let mut proj = vec![Complex64::new(0.0, 0.0); psi.amps.len()];
                for (t, st) in powers.iter().enumerate() {
                    let c = omega(p, (p as u64 - j) * t as u64) / p as f64;
                    for (x, y) in proj.iter_mut().zip(&st.amps) {
                        *x += c * y;
                    }
                }
                let cand = PureState { p, n, amps: proj };
                if cand.norm() > 1e-6 {
                    chosen = Some(cand);
                    break;
                }
            }
            match chosen {
                Some(mut c) => {
                    c.normalize();
                    psi = c;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && stabilizer_residual(&gens, &psi)? <= 1e-9 {
            return Ok(psi);
        }
    }
    Err(Error::ProjectionVanished)
}

/// Largest `‖Wψ − λψ‖` over the generators, with `λ = ⟨ψ|Wψ⟩`.
fn stabilizer_residual(gens: &[Vec<u32>], psi: &PureState) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g in gens {
        let w = generator_apply(g, psi)?;
        let lambda = psi.inner(&w);
        let r: f64 = w
            .amps
            .iter()
            .zip(&psi.amps)
            .map(|(x, y)| (x - lambda * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Eigenvalues of `state` under each basis row of `c_max`, with the residual.
pub fn stabilizer_eigenvalues(c_max: &SympSpace, psi: &PureState) -> Result<(Vec<Complex64>, f64)> {
    let gens: Vec<Vec<u32>> = c_max.rows().map(|r| r.to_vec()).collect();
    let mut eig = Vec::with_capacity(gens.len());
    for g in &gens {
        eig.push(psi.inner(&generator_apply(g, psi)?));
    }
    Ok((eig, stabilizer_residual(&gens, psi)?))
}

#[derive(Clone, Debug)]
pub struct DensityMatrix {
    pub set: IndexSet,
    pub mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.mat - self.mat.adjoint()).norm()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.mat + self.mat.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
    }

    /// Numerical rank: eigenvalues above `DECISION_TOL`.
    pub fn rank(&self) -> usize {
        self.eigenvalues().into_iter().filter(|&e| e > DECISION_TOL).count()
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.eigenvalues())
    }
}

fn entropy_bits(eigs: &[f64]) -> f64 {
    eigs.iter()
        .filter(|&&e| e > ENTROPY_CUTOFF)
        .map(|&e| -e * e.log2())
        .sum()
}

/// `Tr_Ā |ψ⟩⟨ψ|`, by reshaping ψ into a `p^{|A|} × p^{n−|A|}` matrix `M`
/// and forming `M M†`.
pub fn partial_trace(psi: &PureState, a: IndexSet) -> Result<DensityMatrix> {
    a.check_within(psi.n)?;
    let p = psi.p as usize;
    let da = checked_pow(p, a.len());
    if da > MAX_SUBSYSTEM_DIM {
        return Err(too_large("p^|A|", da, MAX_SUBSYSTEM_DIM));
    }
    let db = psi.amps.len() / da;
    let m = reshape(psi, a, da, db);
    Ok(DensityMatrix {
        set: a,
        mat: &m * m.adjoint(),
    })
}

fn reshape(psi: &PureState, a: IndexSet, da: usize, db: usize) -> DMatrix<Complex64> {
    let p = psi.p as usize;
    let mut m = DMatrix::zeros(da, db);
    for (idx, &amp) in psi.amps.iter().enumerate() {
        let v = psi.digits(idx);
        let (mut ia, mut ib) = (0, 0);
        for (i, &x) in v.iter().enumerate() {
            if a.contains(i) {
                ia = ia * p + x as usize;
            } else {
                ib = ib * p + x as usize;
            }
        }
        m[(ia, ib)] = amp;
    }
    m
}

/// Simulator for one scheme: its stabilizer state and size checks.
#[derive(Clone, Debug)]
pub struct Oracle<'a> {
    scheme: &'a Scheme,
    psi: PureState,
    cfg: Config,
}

impl<'a> Oracle<'a> {
    pub fn new(scheme: &'a Scheme) -> Result<Self> {
        Self::with_state(scheme, 0, Config::from_env())
    }

    /// Uses the stabilizer state grown from basis state `|seed⟩`.
    pub fn with_state(scheme: &'a Scheme, seed: usize, cfg: Config) -> Result<Self> {
        let f = scheme.field();
        check_prime(f.is_prime_field())?;
        let p = f.p() as usize;
        let dim = checked_pow(p, scheme.n());
        if dim > MAX_STATE_DIM {
            return Err(too_large("p^n", dim, MAX_STATE_DIM));
        }
        let r = checked_pow(p, scheme.s());
        if r > MAX_RANDOMNESS {
            return Err(too_large("p^s", r, MAX_RANDOMNESS));
        }
        let psi = stabilizer_state_seeded(scheme.c_max(), seed)?;
        Ok(Oracle { scheme, psi, cfg })
    }

    pub fn state(&self) -> &PureState {
        &self.psi
    }

    /// `ρ_A(m) = p^{−s} Σ_V Tr_Ā |Vφ⟩⟨Vφ|` over the `p^s` representatives of `m`.
    pub fn share_density(&self, m: &FVector, a: IndexSet) -> Result<DensityMatrix> {
        let reps = self.scheme.encode_reps_with(m, &self.cfg)?;
        let n = self.scheme.n();
        let da = checked_pow(self.psi.p as usize, a.len());
        if da > MAX_SUBSYSTEM_DIM {
            return Err(too_large("p^|A|", da, MAX_SUBSYSTEM_DIM));
        }
        let mut acc = DMatrix::<Complex64>::zeros(da, da);
        for r in &reps {
            let phi = pauli_apply(&r.as_slice()[..n], &r.as_slice()[n..], &self.psi)?;
            acc += partial_trace(&phi, a)?.mat;
        }
        acc /= Complex64::new(reps.len() as f64, 0.0);
        Ok(DensityMatrix { set: a, mat: acc })
    }

    fn all_densities(&self, a: IndexSet) -> Result<Vec<DensityMatrix>> {
        let p = self.psi.p as usize;
        let secrets = checked_pow(p, self.scheme.k());
        if secrets > MAX_SECRETS {
            return Err(too_large("p^k", secrets, MAX_SECRETS));
        }
        let da = checked_pow(p, a.len());
        let entries = secrets.saturating_mul(da.saturating_mul(da));
        if entries > MAX_TOTAL_ENTRIES {
            return Err(too_large("p^k · p^(2|A|)", entries, MAX_TOTAL_ENTRIES));
        }
        let ms = self.scheme.all_secrets(&self.cfg)?;
        par::map_slice(self.cfg.exec, &ms, |m| self.share_density(m, a))
            .into_iter()
            .collect()
    }

    /// Classifies `A` from the density matrices alone and compares with the
    /// linear-algebra prediction.
    pub fn verify(&self, a: IndexSet) -> Result<QuantumCheck> {
        a.check_within(self.scheme.n())?;
        let rhos = self.all_densities(a)?;
        let ell = self.scheme.info_dim(a)?;
        let class_linear = self.scheme.classify(a)?;

        // cluster equal matrices
        let mut reps: Vec<usize> = Vec::new();
        let mut label = vec![0usize; rhos.len()];
        for (i, r) in rhos.iter().enumerate() {
            match reps
                .iter()
                .position(|&j| (&rhos[j].mat - &r.mat).norm() <= DECISION_TOL)
            {
                Some(c) => label[i] = c,
                None => {
                    label[i] = reps.len();
                    reps.push(i);
                }
            }
        }
        let distinct = reps.len();
        let mut fibers = vec![0usize; distinct];
        for &l in &label {
            fibers[l] += 1;
        }
        let orthogonal = reps.iter().enumerate().all(|(x, &i)| {
            reps[x + 1..]
                .iter()
                .all(|&j| (&rhos[i].mat * &rhos[j].mat).norm() <= DECISION_TOL)
        });
        let p = self.psi.p as usize;
        let k = self.scheme.k();
        let class_quantum = if distinct == 1 {
            QuantumClass::Forbidden
        } else if distinct == rhos.len() && orthogonal {
            QuantumClass::Qualified
        } else {
            QuantumClass::Intermediate
        };
        let class_agrees = match (class_quantum, class_linear) {
            (QuantumClass::Forbidden, AccessClass::Forbidden) => true,
            (QuantumClass::Qualified, AccessClass::Qualified) => true,
            (QuantumClass::Intermediate, AccessClass::Intermediate(_)) => true,
            // k = 0: one secret, both descriptions hold
            (QuantumClass::Forbidden, AccessClass::Qualified) => k == 0,
            _ => false,
        };
        let expected_distinct = checked_pow(p, ell);
        let expected_fiber = checked_pow(p, k - ell);
        let counts_agree = distinct == expected_distinct && fibers.iter().all(|&f| f == expected_fiber);
        let max_rank = rhos.iter().map(|r| r.rank()).max().unwrap_or(0);
        Ok(QuantumCheck {
            set: a.to_labels(),
            class_quantum,
            class_linear,
            ell,
            distinct,
            expected_distinct,
            fiber_sizes: fibers,
            expected_fiber,
            classes_orthogonal: orthogonal,
            max_rank,
            matches: class_agrees && counts_agree,
        })
    }

    /// `χ = S(ρ̄_A) − p^{−k} Σ_m S(ρ_A(m))` in bits, uniform secret.
    pub fn holevo(&self, a: IndexSet) -> Result<f64> {
        a.check_within(self.scheme.n())?;
        let rhos = self.all_densities(a)?;
        let da = checked_pow(self.psi.p as usize, a.len());
        let mut avg = DMatrix::<Complex64>::zeros(da, da);
        for r in &rhos {
            avg += &r.mat;
        }
        avg /= Complex64::new(rhos.len() as f64, 0.0);
        let ents = par::map_slice(self.cfg.exec, &rhos, |r| r.entropy());
        let mean: f64 = ents.iter().sum::<f64>() / rhos.len() as f64;
        Ok(DensityMatrix { set: a, mat: avg }.entropy() - mean)
    }
}

/// Classification from density matrices alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumClass {
    /// All `ρ_A(m)` coincide.
    Forbidden,
    /// All `ρ_A(m)` have pairwise orthogonal supports.
    Qualified,
    Intermediate,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumCheck {
    pub set: Vec<usize>,
    pub class_quantum: QuantumClass,
    pub class_linear: AccessClass,
    pub ell: usize,
    pub distinct: usize,
    pub expected_distinct: usize,
    pub fiber_sizes: Vec<usize>,
    pub expected_fiber: usize,
    /// Whether distinct reduced states have orthogonal supports.
    pub classes_orthogonal: bool,
    pub max_rank: usize,
    pub matches: bool,
}

pub fn share_density(scheme: &Scheme, m: &FVector, a: IndexSet) -> Result<DensityMatrix> {
    Oracle::new(scheme)?.share_density(m, a)
}

pub fn verify_scheme(scheme: &Scheme, a: IndexSet) -> Result<QuantumCheck> {
    Oracle::new(scheme)?.verify(a)
}

pub fn holevo_numeric(scheme: &Scheme, a: IndexSet) -> Result<f64> {
    let p = scheme.field().p() as usize;
    let da = checked_pow(p, a.len());
    if da > MAX_SUBSYSTEM_DIM {
        return Err(too_large("p^|A|", da, MAX_SUBSYSTEM_DIM));
    }
    Oracle::new(scheme)?.holevo(a)
}
