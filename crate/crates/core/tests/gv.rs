use sympshare::gv::*;
use sympshare::par::Exec;
use sympshare::Config;

const FRAC: u32 = 60;
const ONE: u128 = 1 << FRAC;

/// `log2(num/den)` in 60-bit fixed point by repeated squaring; `num ≥ den`.
fn log2_fixed(num: u128, den: u128) -> i128 {
    let (mut d, mut int) = (den, 0i128);
    while num >= 2 * d {
        d *= 2;
        int += 1;
    }
    // x = num/d ∈ [1, 2) in fixed point
    let mut x = (num << FRAC) / d;
    let mut frac = 0i128;
    for bit in (0..FRAC).rev() {
        x = (x * x) >> FRAC;
        if x >= 2 * ONE {
            x >>= 1;
            frac |= 1 << bit;
        }
    }
    (int << FRAC) + frac
}

fn to_f64(v: i128) -> f64 {
    v as f64 / ONE as f64
}

#[test]
fn asymptotic_lhs_matches_fixed_point_oracle() {
    // h_4(0.1) + 0.1 log_4 15 = log_4 10 − 0.9 log_4 9 + 0.1 log_4 15
    let l = |x: u128| to_f64(log2_fixed(x, 1)) / 2.0;
    let oracle = l(10) - 0.9 * l(9) + 0.1 * l(15);
    let got = asymptotic_lhs(0.1, 4.0);
    assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    assert!((h_q(0.1, 4.0) - (l(10) - 0.9 * l(9))).abs() < 1e-12);
}

#[test]
fn oracle_self_check() {
    assert_eq!(log2_fixed(8, 1), 3 << FRAC);
    assert!((to_f64(log2_fixed(3, 1)) - 3f64.log2()).abs() < 1e-15);
}

#[test]
fn finite_condition_boundary() {
    let q = GVQuery {
        q: 2,
        n: 3,
        k: 1,
        s: 0,
        dt: 1,
        dr: 1,
    };
    let r = gv_finite(&q).unwrap();
    assert_eq!(r.lhs_string(), "0/1");
    assert!(r.feasible);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json, serde_json::json!({"lhs": "0/1", "feasible": true}));
    assert!(gv_finite(&GVQuery { q: 6, ..q }).is_err());
    assert!(gv_finite(&GVQuery { k: 3, s: 1, ..q }).is_err());
}

#[test]
fn search_is_deterministic_across_exec_modes() {
    let q = GVQuery {
        q: 3,
        n: 4,
        k: 2,
        s: 0,
        dt: 2,
        dr: 2,
    };
    let seq = Config::default().with_exec(Exec::Sequential);
    let par = Config::default().with_exec(Exec::Parallel);
    let a = gv_search_with(&q, 64, 11, &seq)
        .unwrap()
        .map(|w| (w.trial, w.d_t, w.d_r, w.c_r));
    let b = gv_search_with(&q, 64, 11, &par)
        .unwrap()
        .map(|w| (w.trial, w.d_t, w.d_r, w.c_r));
    assert_eq!(a, b);
    let w = a.expect("a witness within 64 trials");
    assert!(w.1.unwrap() >= 2 && w.2.unwrap() >= 2);
}

#[test]
fn verdicts() {
    assert_eq!(gv_asymptotic(0.1, 0.0, 0.01, 0.01, 2).unwrap().verdict(), Verdict::Pass);
    assert_eq!(gv_asymptotic(0.9, 0.0, 0.3, 0.3, 2).unwrap().verdict(), Verdict::Fail);
    assert!(gv_asymptotic(0.1, 0.0, 0.6, 0.1, 2).is_err());
}
