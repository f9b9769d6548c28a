use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skein_core::qmatrix::*;
use skein_core::scalar::LaurentScalar;

fn gen(n: usize, i: usize, j: usize) -> QElement {
    QElement::generator(n, Ring::Mn, i, j).unwrap()
}

#[test]
fn det_q_rank_two_prints() {
    assert_eq!(format_qelement(&det_q(2).unwrap()), "u[1,1]*u[2,2] - q*u[1,2]*u[2,1]");
    assert_eq!(format_qelement(&det_q(1).unwrap()), "u[1,1]");
}

#[test]
fn det_q_row_and_column_expansions_agree() {
    for n in 2..=3 {
        assert_eq!(det_q(n).unwrap(), det_q_columns(n).unwrap(), "n={n}");
    }
}

#[test]
fn det_q_is_central() {
    for n in 2..=3 {
        let d = det_q(n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let u = gen(n, i, j);
                assert_eq!(d.mul(&u).unwrap(), u.mul(&d).unwrap(), "n={n} u[{i},{j}]");
            }
        }
    }
}

#[test]
fn det_q_is_group_like() {
    for n in 2..=3 {
        let d = det_q(n).unwrap();
        assert_eq!(coproduct(&d).unwrap(), Tensor::pair(&d, &d), "n={n}");
    }
}

#[test]
fn coproduct_of_corner_generator() {
    let t = coproduct(&gen(2, 1, 1)).unwrap();
    let want = Tensor::pair(&gen(2, 1, 1), &gen(2, 1, 1))
        .parts
        .into_iter()
        .chain(Tensor::pair(&gen(2, 1, 2), &gen(2, 2, 1)).parts)
        .collect();
    assert_eq!(t.parts, want);
    assert!(counit(&gen(2, 1, 2)).is_zero());
    assert_eq!(counit(&gen(2, 2, 2)), LaurentScalar::one());
}

#[test]
fn antipode_of_corner_is_opposite_corner() {
    let s = antipode(&gen(2, 1, 1).with_ring(Ring::SLn)).unwrap();
    assert_eq!(format_qelement(&s), "u[2,2]");
    assert!(antipode(&gen(2, 1, 1)).is_err());
}

fn random_element(n: usize, rng: &mut ChaCha8Rng) -> QElement {
    let mut x = QElement::zero(n, Ring::Mn);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=2);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..(n * n) as u8)).collect();
        let c = LaurentScalar::signed_v_pow(rng.gen_bool(0.5), rng.gen_range(-4..=4));
        x = x.add(&QElement::from_word(n, Ring::Mn, &w).unwrap().scale(&c)).unwrap();
    }
    x
}

#[test]
fn hopf_axioms_on_generators_and_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=3 {
        let mut xs: Vec<QElement> = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                xs.push(gen(n, i, j));
            }
        }
        for _ in 0..6 {
            xs.push(random_element(n, &mut rng));
        }
        for x in &xs {
            let d = coproduct(x).unwrap();
            assert_eq!(d.coproduct_at(0).unwrap(), d.coproduct_at(1).unwrap(), "coassociativity");
            assert_eq!(d.counit_at(0).unwrap().to_element(), *x, "left counit");
            assert_eq!(d.counit_at(1).unwrap().to_element(), *x, "right counit");
        }
        for i in 1..=n {
            for j in 1..=n {
                let d = coproduct(&gen(n, i, j).with_ring(Ring::SLn)).unwrap();
                let want = if i == j { QElement::one(n, Ring::SLn) } else { QElement::zero(n, Ring::SLn) };
                let left = d.antipode_at(0).unwrap().multiply_out().unwrap();
                let right = d.antipode_at(1).unwrap().multiply_out().unwrap();
                assert!(sl_equal(&left, &want).unwrap(), "m(S⊗id)Δ u[{i},{j}]");
                assert!(sl_equal(&right, &want).unwrap(), "m(id⊗S)Δ u[{i},{j}]");
            }
        }
    }
}

#[test]
fn sl_equality_examples() {
    let n = 2;
    let d = det_q(n).unwrap().with_ring(Ring::SLn);
    let one = QElement::one(n, Ring::SLn);
    assert!(sl_equal(&d, &one).unwrap());
    let a = gen(n, 1, 1).with_ring(Ring::SLn);
    let b = gen(n, 1, 2).with_ring(Ring::SLn);
    assert!(!sl_equal(&a, &b).unwrap());
    assert!(sl_equal(&a, &a).unwrap());
    assert!(sl_equal(&a.mul(&d).unwrap(), &a).unwrap());
    assert!(sl_equal(&a, &QElement::one(3, Ring::SLn)).is_err());
}

#[test]
fn corner_multiples_of_det_never_coincide() {
    let n = 2;
    let d = det_q(n).unwrap();
    let mut a = gen(n, 1, 1);
    let mut b = gen(n, 1, 2);
    for _ in 0..=2 {
        assert_ne!(a, b);
        a = a.mul(&d).unwrap();
        b = b.mul(&d).unwrap();
    }
}

#[test]
fn random_rewrite_orders_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=3 {
        let alg = QAlgebra::get(n).unwrap();
        for _ in 0..40 {
            let len = rng.gen_range(0..=6);
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..(n * n) as u8)).collect();
            let start = Combo::from([(w.clone(), LaurentScalar::one())]);
            let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
            let random = alg.rewrite_with(&start, &mut |_, b| r2.gen_range(0..b.len())).unwrap();
            assert_eq!(random, alg.word(&w), "word {w:?}");
        }
    }
}

#[test]
fn products_of_normal_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 3;
    let alg = QAlgebra::get(n).unwrap();
    for _ in 0..30 {
        let a: Vec<u8> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..9)).collect();
        let b: Vec<u8> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..9)).collect();
        let whole: Vec<u8> = a.iter().chain(&b).copied().collect();
        assert_eq!(alg.word(&whole), alg.mul(&alg.word(&a), &alg.word(&b)));
    }
}

#[test]
fn overlaps_resolve() {
    for n in 2..=3 {
        let alg = QAlgebra::get(n).unwrap();
        let big = (n * n) as u8;
        for x in 0..big {
            for y in 0..x {
                for z in 0..y {
                    let start = Combo::from([(vec![x, y, z], LaurentScalar::one())]);
                    let l = alg.rewrite_with(&start, &mut |_, _| 0).unwrap();
                    let r = alg.rewrite_with(&start, &mut |_, b| b.len() - 1).unwrap();
                    assert_eq!(l, r, "overlap {x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn word_text_round_trip() {
    let n = 2;
    let x = parse_qelement("u[1,2]*u[2,1]^3 - q*u[1,1]", n, Ring::Mn).unwrap();
    let y = parse_qelement(&format_qelement(&x), n, Ring::Mn).unwrap();
    assert_eq!(x, y);
    let z = parse_qelement("(v^4 - v^-4)*u[2,2]*u[1,1] + q^-1 + 3", n, Ring::Mn).unwrap();
    assert_eq!(parse_qelement(&format_qelement(&z), n, Ring::Mn).unwrap(), z);
    assert!(parse_qelement("u[3,1]", n, Ring::Mn).is_err());
    assert!(parse_qelement("u[1,1]^-1", n, Ring::Mn).is_err());
    assert!(parse_qelement("u[1,1] +", n, Ring::Mn).is_err());
}
