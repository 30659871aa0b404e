use proptest::prelude::*;
use sympshare::rs::*;
use sympshare::symplectic::SympSpace;
use sympshare::{Config, FieldSpec, IndexSet, Subspace};

/// Coefficients of `Π_{x∈pts}(X − x)`, constant term first.
fn vanishing(f: &FieldSpec, pts: &[u32]) -> Vec<u32> {
    let mut v = vec![1u32];
    for &a in pts {
        let mut next = vec![0; v.len() + 1];
        for (d, &c) in v.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(c, a));
        }
        v = next;
    }
    v
}

#[test]
fn weight_two_word_in_d_code() {
    // u = x − Σβ vanishes at α_1 = 1 when the five roots sum to 1, i.e. the
    // two excluded points sum to −1.
    let p = RsParams::new(7, 4, 1).unwrap();
    let f = FieldSpec::gf(7).unwrap();
    let alphas = default_alphas(&f);
    assert_eq!(alphas[0], 1);
    let roots: Vec<u32> = (1..6).collect();
    let h = vanishing(&f, &roots);
    let word = poly_eval_all(&f, &h, &alphas);
    assert_eq!(word.iter().filter(|&&x| x != 0).count(), 2);
    let d = d_code(&p, IndexSet::from_indices(&[0], 2).unwrap()).unwrap();
    assert!(d.contains(&word));
    assert_eq!(min_distance(&d, &Config::default()).unwrap(), Some(2));
}

#[test]
fn k_two_closed_forms_hold() {
    for (q, s) in [(5, 1), (7, 1), (7, 3), (8, 2), (9, 1)] {
        let p = RsParams::new(q, 2, s).unwrap();
        let sch = build_strong_rs(&p).unwrap();
        for a in IndexSet::all_subsets(p.n()) {
            assert_eq!(sch.info_dim(a).unwrap(), closed_form_info(&p, a.len()).unwrap());
            for bits in 0..4u64 {
                let b = IndexSet::from_bits(bits);
                let (b1, b2) = ((bits & 1) as usize, (bits >> 1) as usize);
                assert_eq!(
                    sch.partial_leakage(a, b).unwrap(),
                    closed_form_partial(&p, a.len(), b1, b2).unwrap(),
                    "q={q} s={s} A={a:?} B={b:?}"
                );
            }
        }
    }
}

/// Direct construction of `P_A(RS(d) ∩ F^A)`: multiples of the vanishing
/// polynomial of the dropped points, evaluated on the kept ones.
fn shortened(f: &FieldSpec, alphas: &[u32], kept: &[usize], d: usize) -> Subspace {
    let dropped: Vec<u32> = (0..alphas.len())
        .filter(|i| !kept.contains(i))
        .map(|i| alphas[i])
        .collect();
    let pts: Vec<u32> = kept.iter().map(|&i| alphas[i]).collect();
    let v = vanishing(f, &dropped);
    let rows: Vec<Vec<u32>> = (0..d.saturating_sub(dropped.len()))
        .map(|shift| {
            let mut c = vec![0; shift];
            c.extend(&v);
            poly_eval_all(f, &c, &pts)
        })
        .collect();
    Subspace::span(f, pts.len(), &rows).unwrap()
}

#[test]
fn puncture_matches_direct_construction() {
    let p = RsParams::new(7, 2, 1).unwrap();
    let f = FieldSpec::gf(7).unwrap();
    let alphas = default_alphas(&f);
    let sch = build_strong_rs(&p).unwrap();
    for kept in [vec![0, 1, 2, 3, 4, 5], vec![0, 2, 3, 5, 6], vec![1, 2, 3, 4]] {
        let a = IndexSet::from_indices(&kept, 7).unwrap();
        let pun = puncture(&sch, a).unwrap();
        let c_s = shortened(&f, &alphas, &kept, p.deg_s());
        let c_r = shortened(&f, &alphas, &kept, p.deg_r());
        assert_eq!(
            pun.scheme.c_s(),
            &SympSpace::product(&c_s, &c_s).unwrap(),
            "kept {kept:?}"
        );
        assert_eq!(
            pun.scheme.c_r(),
            &SympSpace::product(&c_r, &c_r).unwrap(),
            "kept {kept:?}"
        );
        assert_eq!(pun.k, 2 * (c_r.dim() - c_s.dim()));
    }
}

#[test]
fn insecure_scheme_shape() {
    for q in [4, 8] {
        let s = build_insecure(q).unwrap();
        assert_eq!(s.n(), q as usize);
        assert_eq!(s.c_max(), s.c_r());
    }
}

proptest! {
    #[test]
    fn encoder_is_linear_and_injective_mod_dual(m1 in prop::collection::vec(0u32..7, 4), m2 in prop::collection::vec(0u32..7, 4), c in 0u32..7) {
        let p = RsParams::new(7, 4, 1).unwrap();
        let f = FieldSpec::gf(7).unwrap();
        let sch = build_strong_rs(&p).unwrap();
        let combo: Vec<u32> = m1.iter().zip(&m2).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect();
        let r1 = rs_encode(&p, &m1).unwrap();
        let r2 = rs_encode(&p, &m2).unwrap();
        let r = rs_encode(&p, &combo).unwrap();
        let lin: Vec<u32> = r1.as_slice().iter().zip(r2.as_slice()).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect();
        prop_assert_eq!(r.as_slice(), &lin[..]);
        prop_assert!(sch.c_s_dual().contains(r.as_slice()));
        prop_assert_eq!(sch.c_r_dual().contains(r.as_slice()), combo.iter().all(|&x| x == 0));
    }
}
