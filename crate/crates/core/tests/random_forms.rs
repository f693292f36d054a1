//! Codes from random symmetric Gram matrices: every closed form must agree
//! with enumeration, whatever the basis of the form.

use proptest::prelude::*;
use qfcodes::codes::{weight_distribution_predicted, CodeCD, DEFAULT_BRUTE_LIMIT};
use qfcodes::gf::ExtField;
use qfcodes::ghw::{ghw_exact, ghw_predicted, Counter, GhwSide, HierarchyParams};
use qfcodes::matrix::Mat;
use qfcodes::quadform::QuadForm;
use qfcodes::subspace::{all_subspaces, PairSpaceCtx};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_code(p: u64, s1: usize, s2: usize, seed: u64) -> CodeCD {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k1 = ExtField::new(p, s1, None).unwrap();
    let k2 = ExtField::new(p, s2, None).unwrap();
    let fp = k1.prime_field();
    let f = QuadForm::from_gram(&k1, Mat::random_symmetric(s1, fp, &mut rng)).unwrap();
    let g = QuadForm::from_gram(&k2, Mat::random_symmetric(s2, fp, &mut rng)).unwrap();
    CodeCD::new(&PairSpaceCtx::new(k1, k2).unwrap(), &f, &g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_agree_with_enumeration(
        p in prop::sample::select(vec![3u64, 5]),
        s1 in 1usize..=2,
        s2 in 1usize..=2,
        seed in any::<u64>(),
    ) {
        let code = random_code(p, s1, s2, seed);
        let s = code.s();
        let fp = code.prime_field();

        let counter = Counter::new(&code).unwrap();
        for h in all_subspaces(fp, s) {
            prop_assert!(counter.count_n(&h).is_ok());
        }

        if code.dimension() == s {
            let brute = code.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap();
            let pred = weight_distribution_predicted(fp, s, code.rank(), code.sign()).unwrap();
            prop_assert_eq!(brute, pred);

            let params = HierarchyParams::from_code(&code);
            if params.rank() > 0 {
                for r in 1..=s {
                    let exact = ghw_exact(&code, r, GhwSide::Auto, u128::MAX).unwrap();
                    prop_assert_eq!(Ok(exact), ghw_predicted(&params, r));
                }
            }
        }
    }
}
