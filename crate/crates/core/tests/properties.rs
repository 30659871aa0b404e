mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sympshare::FieldSpec;

fn run(idx: usize, q: u64, seed: u64) -> Result<(), TestCaseError> {
    let f = FieldSpec::gf(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, prop) = common::PROPERTIES[idx];
    prop(&f, &mut rng).map_err(|e| TestCaseError::fail(format!("{name} over GF({q}), seed {seed}: {e}")))
}

fn field() -> impl Strategy<Value = u64> {
    prop::sample::select(common::FIELDS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn duality_involution(q in field(), seed in any::<u64>()) { run(0, q, seed)?; }

    #[test]
    fn rank_nullity(q in field(), seed in any::<u64>()) { run(1, q, seed)?; }

    #[test]
    fn projection_kernel(q in field(), seed in any::<u64>()) { run(2, q, seed)?; }

    #[test]
    fn info_monotone(q in field(), seed in any::<u64>()) { run(3, q, seed)?; }

    #[test]
    fn duality_complement(q in field(), seed in any::<u64>()) { run(4, q, seed)?; }

    #[test]
    fn cmax_independence(q in field(), seed in any::<u64>()) { run(5, q, seed)?; }
}
