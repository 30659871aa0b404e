//! Small reference schemes used by tests, benches and the CLI.

use crate::field::FieldSpec;
use crate::scheme::Scheme;
use crate::symplectic::{SympSpace, SympVec};

/// Basis of the doubly-extended [4, 2, 3] Reed–Solomon code over GF(3).
pub const V1: [u32; 4] = [1, 1, 1, 0];
pub const V2: [u32; 4] = [0, 1, 2, 1];
pub const V3: [u32; 4] = [0, 1, 1, 0];
pub const V4: [u32; 4] = [0, 0, 0, 1];

fn a_part(v: &[u32; 4]) -> Vec<u32> {
    let mut r = v.to_vec();
    r.extend([0; 4]);
    r
}

fn b_part(v: &[u32; 4]) -> Vec<u32> {
    let mut r = vec![0; 4];
    r.extend(v);
    r
}

/// p = 3, n = 4, k = s = 2: `C_S = {0}`, `C_R = ⟨(v1|0), (0|v1)⟩`,
/// `C_max = ⟨(v1|0), (v2|0), (0|v1), (0|v2)⟩`, secret map
/// `m ↦ m1·(v3|0) + m2·(0|v3) + C_R^⊥s`.
///
/// `v4` is orthogonal to `v1`, so `(v4|0)` and `(0|v4)` lie in `C_R^⊥s`
/// and complete `C_max` to it; `v3` is the vector that is not.
pub fn ternary_four_share() -> Scheme {
    let f = FieldSpec::gf(3).expect("GF(3)");
    let c_s = SympSpace::zero(&f, 4);
    let c_r = SympSpace::span(&f, 4, &[a_part(&V1), b_part(&V1)]).expect("C_R");
    let c_max = SympSpace::span(&f, 4, &[a_part(&V1), a_part(&V2), b_part(&V1), b_part(&V2)]).expect("C_max");
    let reps = [
        SympVec::from_row(&f, a_part(&V3)).expect("rep"),
        SympVec::from_row(&f, b_part(&V3)).expect("rep"),
    ];
    Scheme::build_with_cmax(&c_s, &c_r, Some(&reps), &c_max).expect("fixture is a valid scheme")
}

/// The spanning set `C_max ∪ {(v4|0), (0|v4)}` of
/// `C_R^⊥s`, for cross-checking the computed dual.
pub fn ternary_four_share_dual_generators() -> Vec<Vec<u32>> {
    vec![
        a_part(&V1),
        a_part(&V2),
        b_part(&V1),
        b_part(&V2),
        a_part(&V4),
        b_part(&V4),
    ]
}
