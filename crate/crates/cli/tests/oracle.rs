//! The library's colorings, Σ and transport against the brute-force
//! reference in `common`.

mod common;

use bawq::arrowweight::sigma_d;
use bawq::fixtures;
use bawq::homset::{enumerate_colorings, transport_coloring, Conventions};
use bawq::random::{random_diagram, random_move};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colorings_and_sigma_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 4);
        for f in fixtures::all() {
            let lib: Vec<Vec<usize>> = enumerate_colorings(&d, &f.biquandle).into_iter().map(|c| c.0).collect();
            let oracle = common::colorings(&d, &f.biquandle);
            prop_assert_eq!(&lib, &oracle);
            for c in enumerate_colorings(&d, &f.biquandle) {
                prop_assert_eq!(sigma_d(&d, &f.biquandle, &c, &f.tensor).unwrap(), common::sigma(&d, &c.0, &f.tensor));
            }
        }
    }

    #[test]
    fn transport_matches(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 3);
        let Some(mv) = random_move(&mut rng, &d, 3) else { return Ok(()) };
        for f in fixtures::all() {
            for c in enumerate_colorings(&d, &f.biquandle) {
                let (d2, c2, _) = transport_coloring(&d, &f.biquandle, Conventions::default(), &mv, &c).unwrap();
                let (od2, found) = common::transport(&d, &f.biquandle, &mv, &c.0);
                prop_assert_eq!(&d2, &od2);
                prop_assert_eq!(found, vec![c2.0]);
            }
        }
    }
}
