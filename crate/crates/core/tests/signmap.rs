use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skein_core::corpus::{in_polygon, random_bigon_product, random_closed, random_expression};
use skein_core::scalar::{lift_int_coeffs, scale_variable, Coeff, Laurent, SpecScalar};
use skein_core::signmap::*;
use skein_core::skein::{rewrite, Relation};
use skein_core::web::{
    apply_move, bigon_arc, candidate_moves, canonical_code, kinked_unknot, mutual_crossing_sum, stack, stats, theta_web, unknot,
    Dir, Node, WebDiagram,
};

/// Every `(n, m, order)` with `m | n` and `order | 2m`, for `n ≤ n_max`.
fn admissible(n_max: usize) -> Vec<(usize, usize, u32)> {
    let mut out = vec![];
    for n in 1..=n_max {
        for m in (1..=n).filter(|m| n % m == 0) {
            for o in (1..=2 * m as u32).filter(|o| (2 * m as u32) % o == 0) {
                out.push((n, m, o));
            }
        }
    }
    out
}

#[test]
fn case_table_matches_hand_enumeration() {
    for (n, m, o) in admissible(12) {
        let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
        let k = n / m;
        let eps_m_one = m as u32 % o == 0;
        let want = if eps_m_one {
            if n % 2 == 0 {
                EpsCase::PlusEvenN
            } else {
                EpsCase::PlusOddN
            }
        } else if k % 2 == 0 {
            EpsCase::MinusEvenK
        } else if m % 2 == 0 {
            EpsCase::MinusOddKEvenM
        } else if (k + m) / 2 % 2 == 1 {
            EpsCase::MinusOddOddHalfOdd
        } else {
            EpsCase::MinusOddOddHalfEven
        };
        assert_eq!(spec.eps_case(), Some(want), "n={n} m={m} order={o}");
    }
}

#[test]
fn closed_diagrams_get_eps_to_twice_the_writhe() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, m, o) in admissible(6) {
        let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
        for _ in 0..6 {
            let d = random_closed(n, 5, &mut rng);
            let w = stats(&d).w;
            assert_eq!(spec.coeff(&d).unwrap(), SpecScalar::eps_pow(o, 2 * w), "n={n} m={m} order={o}");
        }
    }
}

#[test]
fn phi_eps_round_trips_and_psi_is_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let specs: Vec<_> = admissible(4).into_iter().filter(|t| t.0 >= 2).collect();
    for i in 0..200 {
        let (n, m, o) = specs[i % specs.len()];
        let x = TwistedExpression::lift(&random_expression(n, &mut rng).unwrap()).unwrap();
        let phi = SignMapSpec::phi_eps(n, m, o).unwrap();
        let y = apply_signmap(&x, &phi).unwrap();
        let mut back = apply_signmap(&y, &phi.inverse()).unwrap();
        back.root_order = None;
        assert_eq!(back, x, "n={n} m={m} order={o}");
        let psi = SignMapSpec::psi(n);
        let z = apply_signmap(&apply_signmap(&x, &psi).unwrap(), &psi).unwrap();
        assert_eq!(z, x);
    }
}

fn endpoint_corpus(n: usize) -> Vec<WebDiagram> {
    let mut out = vec![
        stack(&bigon_arc(n, 1, 2), &bigon_arc(n, 2, 1)).unwrap(),
        stack(&bigon_arc(n, 1, 1), &stack(&bigon_arc(n, 2, 1), &bigon_arc(n, 1, 2)).unwrap()).unwrap(),
        in_polygon(&theta_web(n).unwrap(), 2).unwrap(),
    ];
    out.push(stack(&out[2], &bigon_arc(n, 1, 1)).unwrap());
    out
}

#[test]
fn phi_eps_is_constant_along_move_scripts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (n, m, o) in admissible(4).into_iter().filter(|t| t.0 >= 2) {
        let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
        for d in endpoint_corpus(n) {
            let want = spec.coeff(&d).unwrap();
            let mut cur = d.clone();
            for _ in 0..3 {
                let moves: Vec<_> = candidate_moves(&cur).into_iter().filter(|mv| mv.is_isotopy()).collect();
                let Some(mv) = moves.choose(&mut rng) else { break };
                cur = apply_move(&cur, mv).unwrap();
                assert_eq!(spec.coeff(&cur).unwrap(), want, "n={n} m={m} order={o} after {mv:?}");
            }
        }
    }
}

#[test]
fn multiplicative_on_divisible_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for (n, m, o) in admissible(4).into_iter().filter(|t| t.0 >= 2) {
        let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
        for _ in 0..8 {
            let a = random_bigon_product(n, 2, &mut rng).unwrap();
            let b = if rand::Rng::gen_bool(&mut rng, 0.5) {
                random_bigon_product(n, 1, &mut rng).unwrap()
            } else {
                in_polygon(&random_closed(n, 3, &mut rng), 2).unwrap()
            };
            let ab = mutual_crossing_sum(&a, &b).unwrap();
            let ba = mutual_crossing_sum(&b, &a).unwrap();
            if ab.rem_euclid(m as i64) != 0 || ba.rem_euclid(m as i64) != 0 {
                continue;
            }
            let lhs = spec.coeff(&stack(&a, &b).unwrap()).unwrap();
            assert_eq!(lhs, spec.coeff(&a).unwrap().mul(&spec.coeff(&b).unwrap()), "n={n} m={m} order={o}");
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

fn relation_sites(d: &WebDiagram) -> Vec<(Relation, Vec<usize>)> {
    let nodes = d.nodes.len();
    let mut out = vec![];
    for c in d.crossings() {
        out.push((Relation::R1, vec![c]));
        out.push((Relation::R2, vec![c]));
        for e in 0..d.ideal_points {
            out.push((Relation::R8, vec![c, e]));
        }
    }
    for l in 0..d.loops.len() {
        out.push((Relation::R3, vec![l]));
    }
    for (s, t) in d.pairing().unwrap_or_default() {
        out.push((Relation::R4, vec![s, t]));
    }
    let eps: Vec<usize> = d.endpoints().collect();
    for &x in &eps {
        for &y in &eps {
            if x != y {
                out.push((Relation::R6, vec![x, y]));
            }
        }
    }
    for v in (0..nodes).filter(|&v| d.nodes[v].is_vertex()) {
        for port in 0..d.nodes[v].arity() {
            for e in 0..d.ideal_points {
                for slot in 0..=eps.len() {
                    out.push((Relation::R5, vec![v, port, e, slot]));
                }
            }
        }
    }
    for a in 0..d.arcs.len() {
        for e in 0..d.ideal_points {
            for slot in 0..=eps.len() {
                out.push((Relation::R7, vec![a, e, slot]));
            }
        }
    }
    out
}

fn relation_corpus(n: usize) -> Vec<WebDiagram> {
    let mut out = endpoint_corpus(n);
    out.push(in_polygon(&kinked_unknot(n, &[1, -1]).unwrap(), 1).unwrap());
    out.push(in_polygon(&unknot(n), 1).unwrap());
    let mut cap = WebDiagram::empty(n, 1);
    let first = cap.add_node(Node::Endpoint { edge: 0, height: 2, state: 1, dir: Dir::In });
    let second = cap.add_node(Node::Endpoint { edge: 0, height: 1, state: n as u8, dir: Dir::Out });
    cap.add_arc((second, 0), (first, 0));
    out.push(cap);
    let mut legs = WebDiagram::empty(n, 1);
    let s = legs.add_node(Node::Source { arity: n, base: 0 });
    for k in 0..n {
        let e = legs.add_node(Node::Endpoint { edge: 0, height: n - k, state: 1 + (k % n) as u8, dir: Dir::In });
        legs.add_arc((s, k), (e, 0));
    }
    out.push(legs);
    out
}

/// `f(d)·c(εv) = c(v)·f(d')` for every term `c·d'` of every applicable relation.
fn check_relations(spec: &SignMapSpec, d: &WebDiagram, subst: impl Fn(&Laurent<SpecScalar>) -> Laurent<SpecScalar>) -> Vec<String> {
    let fd = spec.coeff(d).unwrap();
    let mut hits = vec![];
    for (rel, at) in relation_sites(d) {
        let Ok(rhs) = rewrite(d, rel, &at) else { continue };
        let mut grouped: BTreeMap<_, (WebDiagram, Laurent<SpecScalar>)> = BTreeMap::new();
        for (e, c) in rhs {
            let slot = grouped.entry(canonical_code(&e).unwrap()).or_insert((e, Laurent::zero()));
            slot.1.add_assign_ref(&lift_int_coeffs(&c));
        }
        for (e, c) in grouped.values() {
            let lhs = subst(c).scale(&fd);
            let rhs = c.scale(&spec.coeff(e).unwrap());
            assert_eq!(lhs, rhs, "{rel:?} at {at:?} in {d:?}");
        }
        hits.push(format!("{rel:?}"));
    }
    hits
}

#[test]
fn phi_eps_respects_each_relation() {
    let mut hits = BTreeMap::new();
    for (n, m, o) in admissible(4).into_iter().filter(|t| t.0 >= 2) {
        let spec = SignMapSpec::phi_eps(n, m, o).unwrap();
        let SignMapKind::PhiEps { eps_power, .. } = spec.kind else { unreachable!() };
        for d in relation_corpus(n) {
            for r in check_relations(&spec, &d, |c| scale_variable(c, o, eps_power)) {
                *hits.entry(r).or_insert(0) += 1;
            }
        }
    }
    assert_eq!(hits.len(), 8, "{hits:?}");
}

#[test]
fn psi_respects_each_relation() {
    for n in 2..=4 {
        let spec = SignMapSpec::psi(n);
        let hits: Vec<String> = relation_corpus(n).iter().flat_map(|d| check_relations(&spec, d, |c| scale_variable(c, 2, 1))).collect();
        assert!(hits.len() > 20);
    }
}

#[test]
fn phi_spin_contract() {
    let oracle = Arc::new(BlackboardSpin);
    for n in 1..=6 {
        let spec = SignMapSpec::phi_spin(n, oracle.clone());
        for signs in [vec![], vec![1], vec![-1], vec![1, 1], vec![1, -1, 1]] {
            let d = if signs.is_empty() { unknot(n) } else { kinked_unknot(n, &signs).unwrap() };
            let got = spec.coeff(&d).unwrap().as_sign().unwrap();
            let st = stats(&d);
            let s = oracle.spin(&d).unwrap() as usize;
            let want = if n % 2 == 1 || (s + st.k + st.tau_length.unwrap_or(0)) % 2 == 0 { 1 } else { -1 };
            assert_eq!(got, want, "n={n} {signs:?}");
            assert_eq!(got * got, 1);
        }
        assert_eq!(oracle.spin(&unknot(n)).unwrap(), 1);
        let once = kinked_unknot(n, &[1]).unwrap();
        let twice = kinked_unknot(n, &[1, 1]).unwrap();
        assert_ne!(oracle.spin(&once).unwrap(), oracle.spin(&twice).unwrap());
    }
}
