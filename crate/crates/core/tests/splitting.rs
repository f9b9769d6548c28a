use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skein_core::corpus::{in_polygon, random_bigon_product, random_closed, random_laurent};
use skein_core::qmatrix::{coproduct, QElement, Ring, Tensor};
use skein_core::scalar::LaurentScalar;
use skein_core::signmap::SignMapSpec;
use skein_core::skein::SkeinExpression;
use skein_core::splitting::*;
use skein_core::web::{bigon_arc, stack, stats, validate, Dir, Node, WebDiagram};

fn cut01() -> CutSpec {
    "0-1".parse().unwrap()
}

fn valid(d: &WebDiagram) {
    assert!(validate(d).is_empty(), "{:?}\n{d:?}", validate(d));
}

#[test]
fn cut_specs_parse() {
    assert_eq!(cut01(), CutSpec { from: 0, to: 1, via: None });
    let c: CutSpec = "2-0:3,1".parse().unwrap();
    assert_eq!(c.via, Some(vec![3, 1]));
    assert_eq!(c.to_string(), "2-0:3,1");
    assert!("0".parse::<CutSpec>().is_err());
    assert!(pieces(2, &"0-0".parse().unwrap()).is_err());
    let (r, l) = pieces(4, &"1-3".parse().unwrap()).unwrap();
    assert_eq!((r.corners, l.corners), (vec![1, 2, 3], vec![1, 3, 0]));
}

#[test]
fn a_diagram_away_from_the_cut_lifts_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 2..=3 {
        let d = in_polygon(&random_closed(n, 4, &mut rng), 2).unwrap();
        let c = random_laurent(&mut rng);
        let mut e = SkeinExpression::zero(n, 2);
        e.add_term(&d, &c).unwrap();
        let s = split(&e, &cut01()).unwrap();
        assert_eq!(s.len(), 1);
        let (a, b, k) = s.terms().next().unwrap();
        assert_eq!(k, &c);
        assert_eq!(stats(a).w, stats(&d).w);
        assert!(b.nodes.is_empty());
    }
}

#[test]
fn one_crossing_gives_n_lifts() {
    for n in 2..=3 {
        let lifts = split_diagram(&bigon_arc(n, 1, 2), &cut01()).unwrap();
        assert_eq!(lifts.len(), n);
        for (k, (a, b)) in lifts.iter().enumerate() {
            valid(a);
            valid(b);
            assert_eq!(stack_word(a).unwrap(), vec![(1, k as u8 + 1)]);
            assert_eq!(stack_word(b).unwrap(), vec![(k as u8 + 1, 2)]);
        }
    }
}

fn gen(n: usize, i: usize, j: usize) -> QElement {
    QElement::generator(n, Ring::SLn, i, j).unwrap()
}

#[test]
fn generators_split_like_the_coproduct() {
    for n in 2..=3 {
        for i in 1..=n {
            for j in 1..=n {
                let e = SkeinExpression::from_diagram(&bigon_arc(n, i as u8, j as u8)).unwrap();
                let x = bigon_to_oq(&e).unwrap();
                assert_eq!(x, gen(n, i, j));
                let t = split_to_tensor(&split(&e, &cut01()).unwrap()).unwrap();
                assert_eq!(t, coproduct(&x).unwrap(), "u[{i},{j}]");
                if i != j {
                    // the other tensor order is not the coproduct
                    let swapped: Tensor = Tensor {
                        parts: t.parts.iter().map(|(k, c)| (vec![k[1].clone(), k[0].clone()], c.clone())).collect(),
                        ..t.clone()
                    };
                    assert_ne!(swapped, coproduct(&x).unwrap());
                }
            }
        }
    }
}

#[test]
fn stacks_split_like_the_coproduct() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 2..=3 {
        for _ in 0..100 {
            let mut e = SkeinExpression::zero(n, 2);
            for _ in 0..rng.gen_range(1..=2) {
                let f = rng.gen_range(0..=2);
                e.add_term(&random_bigon_product(n, f, &mut rng).unwrap(), &random_laurent(&mut rng)).unwrap();
            }
            let s = split(&e, &cut01()).unwrap();
            for (a, b, _) in s.terms() {
                valid(a);
                valid(b);
            }
            assert_eq!(split_to_tensor(&s).unwrap(), coproduct(&bigon_to_oq(&e).unwrap()).unwrap());
        }
    }
}

#[test]
fn the_stack_word_reads_top_down() {
    let d = stack(&bigon_arc(2, 1, 1), &bigon_arc(2, 2, 2)).unwrap();
    assert_eq!(stack_word(&d).unwrap(), vec![(1, 1), (2, 2)]);
    let x = bigon_diagram_to_oq(&d).unwrap();
    assert_eq!(x, gen(2, 1, 1).mul(&gen(2, 2, 2)).unwrap());
    assert_eq!(bigon_diagram_to_oq(&WebDiagram::empty(2, 2)).unwrap(), QElement::one(2, Ring::SLn));
    let mut back = WebDiagram::empty(2, 2);
    let a = back.add_node(Node::Endpoint { edge: 1, height: 1, state: 1, dir: Dir::Out });
    let b = back.add_node(Node::Endpoint { edge: 0, height: 1, state: 1, dir: Dir::In });
    back.add_arc((a, 0), (b, 0));
    assert!(stack_word(&back).is_err());
}

#[test]
fn splitting_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=3 {
        for _ in 0..50 {
            let a = random_bigon_product(n, rng.gen_range(0..=2), &mut rng).unwrap();
            let b = random_bigon_product(n, rng.gen_range(0..=2), &mut rng).unwrap();
            let one = |d: &WebDiagram| split(&SkeinExpression::from_diagram(d).unwrap(), &cut01()).unwrap();
            let whole = split_to_tensor(&one(&stack(&a, &b).unwrap())).unwrap();
            let parts = split_to_tensor(&one(&a)).unwrap().mul(&split_to_tensor(&one(&b)).unwrap()).unwrap();
            assert_eq!(whole, parts);
            // and diagram by diagram: the lifts of the stack are the stacks of the lifts
            let words = |v: Vec<(WebDiagram, WebDiagram)>| -> Vec<_> {
                v.iter().map(|(r, l)| (stack_word(r).unwrap(), stack_word(l).unwrap())).collect()
            };
            let la = words(split_diagram(&a, &cut01()).unwrap());
            let lb = words(split_diagram(&b, &cut01()).unwrap());
            let mut lab = words(split_diagram(&stack(&a, &b).unwrap(), &cut01()).unwrap());
            let mut prod: Vec<_> =
                la.iter().flat_map(|(ra, l_a)| lb.iter().map(move |(rb, l_b)| ([ra.clone(), rb.clone()].concat(), [l_a.clone(), l_b.clone()].concat()))).collect();
            lab.sort();
            prod.sort();
            assert_eq!(lab, prod);
        }
    }
}

#[test]
fn counit_retracts_the_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 2..=3 {
        for _ in 0..20 {
            let d = random_bigon_product(n, rng.gen_range(0..=2), &mut rng).unwrap();
            let e = SkeinExpression::from_diagram(&d).unwrap();
            let t = split_to_tensor(&split(&e, &cut01()).unwrap()).unwrap();
            assert_eq!(t.counit_at(0).unwrap().to_element(), bigon_to_oq(&e).unwrap());
            assert_eq!(t.counit_at(1).unwrap().to_element(), bigon_to_oq(&e).unwrap());
        }
    }
}

#[test]
fn explicit_cut_through_one_arc() {
    for n in 2..=3 {
        let d = bigon_arc(n, 2, 1);
        let e = SkeinExpression::from_diagram(&d).unwrap();
        let via = split(&e, &"0-1:0".parse().unwrap()).unwrap();
        assert_eq!(via, split(&e, &cut01()).unwrap());
        assert!(split(&e, &"0-1:0,0".parse().unwrap()).is_err());
        let back = split(&e, &"1-0".parse().unwrap()).unwrap();
        assert_eq!(back.len(), n);
        for (a, b, _) in back.terms() {
            valid(a);
            valid(b);
        }
    }
}

#[test]
fn explicit_cut_across_a_stack() {
    let n = 2;
    let d = skein_core::web::canonical_form(&stack(&bigon_arc(n, 1, 2), &bigon_arc(n, 2, 1)).unwrap()).unwrap();
    let e = SkeinExpression::from_diagram(&d).unwrap();
    let want = coproduct(&bigon_to_oq(&e).unwrap()).unwrap();
    let mut agreeing = 0;
    for x in 0..d.arcs.len() {
        for y in 0..d.arcs.len() {
            let cut = CutSpec { from: 0, to: 1, via: Some(vec![x, y]) };
            let Ok(s) = split(&e, &cut) else { continue };
            for (a, b, _) in s.terms() {
                valid(a);
                valid(b);
            }
            if let Ok(t) = split_to_tensor(&s) {
                assert_eq!(t, want, "via {x},{y}");
                agreeing += 1;
            }
        }
    }
    assert!(agreeing >= 1);
}

#[test]
fn triangles_split_into_a_bigon_and_a_triangle() {
    let n = 2;
    let mut d = WebDiagram::empty(n, 3);
    let a = d.add_node(Node::Endpoint { edge: 0, height: 1, state: 1, dir: Dir::Out });
    let b = d.add_node(Node::Endpoint { edge: 2, height: 1, state: 2, dir: Dir::In });
    d.add_arc((a, 0), (b, 0));
    let e = SkeinExpression::from_diagram(&d).unwrap();
    let s = split(&e, &"0-1".parse().unwrap()).unwrap();
    assert_eq!((s.right.ideal_points, s.left.ideal_points), (2, 3));
    assert_eq!(s.len(), n);
    for (r, l, _) in s.terms() {
        valid(r);
        valid(l);
        assert_eq!(r.endpoints().count(), 2);
        assert_eq!(l.endpoints().count(), 2);
    }
    // the default cut hugs the far side, so both ends of the arc are crossed
    let far = split(&e, &"1-2".parse().unwrap()).unwrap();
    assert_eq!(far.len(), n * n);
    for (r, l, _) in far.terms() {
        valid(r);
        valid(l);
    }
}

#[test]
fn theta_p_only_relabels() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=3 {
        let d = random_bigon_product(n, 2, &mut rng).unwrap();
        let e = SkeinExpression::from_diagram(&d).unwrap();
        for p in 0..2 {
            let t = theta_p(&e, p).unwrap();
            assert_eq!(t.ideal_points, 3);
            let (x, c) = t.terms().next().unwrap();
            valid(x);
            assert_eq!(c, &LaurentScalar::one());
            assert_eq!(stats(x), stats(&d));
            let spec = SignMapSpec::phi_eps(n, 1, 2).unwrap();
            assert_eq!(spec.coeff(x).unwrap(), spec.coeff(&d).unwrap());
        }
        assert!(theta_p(&e, 2).is_err());
    }
}

#[test]
fn splitting_commutes_with_phi_on_closed_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 2..=4 {
        for (m, o) in [(1, 2), (n, 2 * n as u32)] {
            let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
            let d = in_polygon(&random_closed(n, 4, &mut rng), 2).unwrap();
            let s = split(&SkeinExpression::from_diagram(&d).unwrap(), &cut01()).unwrap();
            let (a, b, _) = s.terms().next().unwrap();
            assert_eq!(spec.coeff(&d).unwrap(), skein_core::scalar::Coeff::mul(&spec.coeff(a).unwrap(), &spec.coeff(b).unwrap()));
        }
    }
}
