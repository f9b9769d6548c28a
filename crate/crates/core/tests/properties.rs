use num_bigint::BigInt;
use proptest::prelude::*;
use skein_core::braiding::{state_sum_eval, Morse};
use skein_core::qmatrix::{QElement, Ring};
use skein_core::scalar::{parse_laurent, specialize, Coeff, LaurentScalar};
use skein_core::signmap::SignMapSpec;
use skein_core::skein::{evaluate_closed, Mode};
use skein_core::web::{braid_closure, stats};

fn laurent() -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((-8i64..=8, -5i64..=5), 0..5)
        .prop_map(|t| LaurentScalar::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_strands).prop_flat_map(move |m| {
        let g = (1..m as i32, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g });
        (Just(m), prop::collection::vec(g, 0..=max_len))
    })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn laurent_text_round_trips(a in laurent()) {
        prop_assert_eq!(parse_laurent(&a.to_string(), None).unwrap(), a);
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent(), k in prop::sample::select(vec![1u32, 2, 3, 4, 6, 8])) {
        prop_assert_eq!(specialize(&(&a * &b), k), specialize(&a, k).mul(&specialize(&b, k)));
        prop_assert_eq!(specialize(&(&a + &b), k), Coeff::add(&specialize(&a, k), &specialize(&b, k)));
    }

    #[test]
    fn straightening_respects_concatenation(
        n in 2usize..=3,
        x in prop::collection::vec(0u8..9, 0..4),
        y in prop::collection::vec(0u8..9, 0..4),
    ) {
        let x: Vec<u8> = x.into_iter().map(|g| g % (n * n) as u8).collect();
        let y: Vec<u8> = y.into_iter().map(|g| g % (n * n) as u8).collect();
        let xy: Vec<u8> = x.iter().chain(&y).copied().collect();
        let a = QElement::from_word(n, Ring::Mn, &x).unwrap();
        let b = QElement::from_word(n, Ring::Mn, &y).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap(), QElement::from_word(n, Ring::Mn, &xy).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn state_sum_matches_the_skein((m, w) in braid(3, 4)) {
        let n = 2;
        let d = braid_closure(n, m, &w).unwrap();
        prop_assert_eq!(state_sum_eval(n, &Morse::braid_closure(m, &w)).unwrap(), evaluate_closed(&d, Mode::Stated).unwrap());
    }

    #[test]
    fn closed_links_get_eps_to_twice_the_writhe((m, w) in braid(3, 5), n in 2usize..=4) {
        let d = braid_closure(n, m, &w).unwrap();
        let spec = SignMapSpec::phi_eps(n, 1, 2).unwrap();
        let wr = stats(&d).w;
        prop_assert_eq!(spec.coeff(&d).unwrap(), skein_core::scalar::SpecScalar::eps_pow(2, 2 * wr));
        prop_assert_eq!(wr, w.iter().map(|g| g.signum() as i64).sum::<i64>());
    }
}
