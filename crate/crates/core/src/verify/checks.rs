use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Artifacts, Job, Params, VerifyConfig};
use crate::braiding::{boundary_coeffs, check_hecke, check_ybe, state_sum_with, Morse, RMatrix};
use crate::corpus::{in_polygon, link_corpus, random_bigon_product, random_closed, random_expression, random_laurent};
use crate::error::Result;
use crate::qmatrix::{coproduct, det_q, format_qelement, sl_equal, Combo, QAlgebra, QElement, Ring, Tensor};
use crate::scalar::{constants, q_pow, t_v, unknot_value, LaurentScalar, SpecScalar};
use crate::signmap::{apply_signmap, BlackboardSpin, SignMapSpec, SpinOracle, TwistedExpression};
use crate::skein::{evaluate_closed, Mode, SkeinExpression};
use crate::splitting::{bigon_to_oq, split, split_to_tensor, CutSpec};
use crate::web::{
    apply_move, bigon_arc, braid_closure, candidate_moves, kinked_unknot, mutual_crossing_sum, stack, stats, theta_web, unknot,
    WebDiagram,
};

fn ns(lo: usize, hi: usize, cfg: &VerifyConfig) -> std::ops::RangeInclusive<usize> {
    lo..=hi.min(cfg.n_max)
}

/// A reproducible stream per criterion and parameter point.
fn rng(cfg: &VerifyConfig, criterion: u64, p: Params) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(criterion * 1_000_000 + p.n.unwrap_or(0) as u64 * 1000 + p.eps_order.unwrap_or(0) as u64);
    r
}

fn r_matrix(n: usize, fault: bool) -> RMatrix {
    if fault {
        RMatrix::perturbed(n)
    } else {
        RMatrix::build(n)
    }
}

pub(super) fn jobs(cfg: &VerifyConfig) -> Vec<Job> {
    let mut out = vec![];
    let fault = cfg.inject_fault;
    for n in ns(1, 6, cfg) {
        out.push(Job::new("c01-constants", Params::n(n), move |a| constants_check(n, a)));
    }
    for n in ns(2, 5, cfg) {
        out.push(Job::new("c02-unknot", Params::n(n), move |a| unknot_check(n, a)));
    }
    for n in ns(2, 4, cfg) {
        out.push(Job::new("c03-kink", Params::n(n), move |a| kink_check(n, a)));
    }
    for n in ns(1, 4, cfg) {
        out.push(Job::new("c04-ybe", Params::n(n), move |a| {
            let ok = check_ybe(&r_matrix(n, fault));
            a.insert("ybe".into(), ok.to_string());
            Ok(ok)
        }));
    }
    for n in ns(1, 3, cfg) {
        out.push(Job::new("c05-hecke", Params::n(n), move |a| {
            let h = check_hecke(&r_matrix(n, fault));
            a.insert("det".into(), h.det.to_string());
            a.insert("invertible".into(), h.invertible.to_string());
            Ok(h.holds)
        }));
    }
    for n in ns(2, 3, cfg) {
        let r = rng(cfg, 6, Params::n(n));
        out.push(Job::new("c06-hopf", Params::n(n), move |a| hopf_check(n, r.clone(), a)));
    }
    for n in ns(2, 3, cfg) {
        out.push(Job::new("c07-oracle", Params::n(n), move |a| oracle_check(&r_matrix(n, fault), a)));
    }
    for n in ns(1, 4, cfg) {
        for &o in &cfg.eps_orders {
            let p = Params { eps_order: Some(o), ..Params::n(n) };
            out.push(Job::new("c08-root-tables", p, move |a| {
                let t = boundary_coeffs(n, o)?;
                let show = |m: &Vec<Vec<SpecScalar>>| {
                    m.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
                };
                a.insert("a".into(), show(&t.a));
                a.insert("b".into(), show(&t.b));
                Ok(t.entries_are_signs() && t.products_are_one())
            }));
        }
    }
    for n in ns(2, 4, cfg) {
        let r = rng(cfg, 9, Params::n(n));
        let orders = cfg.eps_orders.clone();
        out.push(Job::new("c09-signmaps", Params::n(n), move |a| signmap_check(n, &orders, r.clone(), a)));
    }
    for n in ns(2, 3, cfg) {
        let r = rng(cfg, 10, Params::n(n));
        out.push(Job::new("c10-splitting", Params::n(n), move |a| splitting_check(n, r.clone(), a)));
    }
    for n in ns(1, 6, cfg) {
        out.push(Job::new("c11-phi-spin", Params::n(n), move |a| spin_check(n, a)));
    }
    out.push(Job::new("c12-negative-control", Params::n(2), |a| {
        let r = RMatrix::perturbed(2);
        let ybe = check_ybe(&r);
        let hecke = check_hecke(&r).holds;
        let mut sub = Artifacts::new();
        let oracle = oracle_check(&r, &mut sub)?;
        a.insert("ybe".into(), ybe.to_string());
        a.insert("hecke".into(), hecke.to_string());
        a.insert("oracle".into(), oracle.to_string());
        Ok(!ybe && !hecke && !oracle)
    }));
    out
}

fn constants_check(n: usize, a: &mut Artifacts) -> Result<bool> {
    let t = constants(n)?;
    a.insert("c".into(), t.c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    a.insert("t".into(), t.t.to_string());
    a.insert("a".into(), t.a.to_string());
    a.insert("qint".into(), t.qint.to_string());
    let monomials = t.c.iter().chain([&t.t, &t.a]).all(|x| x.as_monomial().is_some());
    if n != 2 {
        return Ok(monomials);
    }
    let v = LaurentScalar::v_pow;
    let want = (vec![-v(5), v(1)], -v(6), v(-5), &v(4) + &v(-4));
    Ok(monomials && (t.c, t.t, t.a, t.qint) == want)
}

fn unknot_check(n: usize, a: &mut Artifacts) -> Result<bool> {
    let got = evaluate_closed(&unknot(n), Mode::Stated)?;
    let qn = &q_pow(n, n as i64) - &q_pow(n, -(n as i64));
    let qint = qn.div_exact(&(&q_pow(n, 1) - &q_pow(n, -1))).expect("[n] is a polynomial");
    let want = if n % 2 == 0 { -qint } else { qint };
    a.insert("value".into(), got.to_string());
    Ok(got == want && got == unknot_value(n))
}

fn kink_check(n: usize, a: &mut Artifacts) -> Result<bool> {
    let u = unknot_value(n);
    let t = t_v(n);
    let mut ok = true;
    for (sign, factor) in [(1, t.clone()), (-1, t.inverse_monomial().expect("t is a monomial"))] {
        let got = evaluate_closed(&kinked_unknot(n, &[sign])?, Mode::Stated)?;
        a.insert(format!("kink{sign:+}"), got.to_string());
        ok &= got == &factor * &u;
    }
    Ok(ok)
}

fn gens(n: usize, ring: Ring) -> Vec<QElement> {
    let mut out = vec![];
    for i in 1..=n {
        for j in 1..=n {
            out.push(QElement::generator(n, ring, i, j).expect("generator in range"));
        }
    }
    out
}

fn hopf_check(n: usize, mut rng: ChaCha8Rng, a: &mut Artifacts) -> Result<bool> {
    let alg = QAlgebra::get(n)?;
    let mut confluent = 0;
    for _ in 0..500 {
        let len = rng.gen_range(0..=6);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..(n * n) as u8)).collect();
        let start = Combo::from([(w.clone(), LaurentScalar::one())]);
        let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
        if alg.rewrite_with(&start, &mut |_, b| r2.gen_range(0..b.len()))? == alg.word(&w) {
            confluent += 1;
        }
    }
    a.insert("confluent_words".into(), format!("{confluent}/500"));

    let det = det_q(n)?;
    let mut central = true;
    for g in gens(n, Ring::Mn) {
        central &= det.mul(&g)? == g.mul(&det)?;
    }
    let group_like = coproduct(&det)? == Tensor::pair(&det, &det);
    a.insert("det_central".into(), central.to_string());
    a.insert("det_group_like".into(), group_like.to_string());
    a.insert("det".into(), format_qelement(&det));

    let mut xs = gens(n, Ring::Mn);
    for _ in 0..6 {
        let mut x = QElement::zero(n, Ring::Mn);
        for _ in 0..rng.gen_range(1..=3) {
            let w: Vec<u8> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..(n * n) as u8)).collect();
            x = x.add(&QElement::from_word(n, Ring::Mn, &w)?.scale(&random_laurent(&mut rng)))?;
        }
        xs.push(x);
    }
    let mut bialgebra = true;
    for x in &xs {
        let d = coproduct(x)?;
        bialgebra &= d.coproduct_at(0)? == d.coproduct_at(1)?;
        bialgebra &= d.counit_at(0)?.to_element() == *x && d.counit_at(1)?.to_element() == *x;
    }
    a.insert("coassociative_counital".into(), bialgebra.to_string());

    let mut antipode = true;
    let one = QElement::one(n, Ring::SLn);
    let zero = QElement::zero(n, Ring::SLn);
    for i in 1..=n {
        for j in 1..=n {
            let d = coproduct(&QElement::generator(n, Ring::SLn, i, j)?)?;
            let want = if i == j { &one } else { &zero };
            antipode &= sl_equal(&d.antipode_at(0)?.multiply_out()?, want)?;
            antipode &= sl_equal(&d.antipode_at(1)?.multiply_out()?, want)?;
        }
    }
    a.insert("antipode".into(), antipode.to_string());
    Ok(confluent == 500 && central && group_like && bialgebra && antipode)
}

/// The links of the corpus with at most six crossings.
fn small_links() -> Vec<(&'static str, usize, Vec<i32>)> {
    link_corpus().into_iter().filter(|(_, _, w)| w.len() <= 6).collect()
}

fn oracle_check(r: &RMatrix, a: &mut Artifacts) -> Result<bool> {
    let n = r.n();
    let mut ok = true;
    for (name, m, word) in small_links() {
        let skein = evaluate_closed(&braid_closure(n, m, &word)?, Mode::Stated)?;
        let sum = state_sum_with(r, &Morse::braid_closure(m, &word))?;
        a.insert(name.into(), skein.to_string());
        if sum != skein {
            a.insert(format!("{name}.state_sum"), sum.to_string());
            ok = false;
        }
    }
    Ok(ok)
}

/// `(m, order)` pairs with `m | n`, `order | 2m`, and `order` among the requested ones.
fn admissible(n: usize, orders: &[u32]) -> Vec<(usize, u32)> {
    let mut out = vec![];
    for m in (1..=n).filter(|m| n % m == 0) {
        for &o in orders {
            if (2 * m as u32) % o == 0 {
                out.push((m, o));
            }
        }
    }
    out
}

fn replay_corpus(n: usize) -> Result<Vec<WebDiagram>> {
    let mut out = vec![
        stack(&bigon_arc(n, 1, 2), &bigon_arc(n, 2, 1))?,
        stack(&bigon_arc(n, 1, 1), &stack(&bigon_arc(n, 2, 1), &bigon_arc(n, 1, 2))?)?,
        in_polygon(&theta_web(n)?, 2)?,
    ];
    out.push(stack(&out[2], &bigon_arc(n, 1, 1))?);
    Ok(out)
}

fn signmap_check(n: usize, orders: &[u32], mut rng: ChaCha8Rng, a: &mut Artifacts) -> Result<bool> {
    let specs: Vec<SignMapSpec> = admissible(n, orders).into_iter().map(|(m, o)| SignMapSpec::phi_eps(n, m, o)).collect::<Result<_>>()?;
    a.insert(
        "maps".into(),
        specs
            .iter()
            .map(|s| match s.kind {
                crate::signmap::SignMapKind::PhiEps { m, eps_order, .. } => format!("m={m}/order={eps_order}"),
                _ => unreachable!(),
            })
            .collect::<Vec<_>>()
            .join(" "),
    );
    let mut ok = true;

    let psi = SignMapSpec::psi(n);
    let mut round = 0;
    for i in 0..200 {
        let x = TwistedExpression::lift(&random_expression(n, &mut rng)?)?;
        let phi = &specs[i % specs.len()];
        let mut back = apply_signmap(&apply_signmap(&x, phi)?, &phi.inverse())?;
        back.root_order = None;
        let twice = apply_signmap(&apply_signmap(&x, &psi)?, &psi)?;
        if back == x && twice == x {
            round += 1;
        }
    }
    a.insert("round_trips".into(), format!("{round}/200"));
    ok &= round == 200;

    let mut replays = 0;
    for phi in &specs {
        for d in replay_corpus(n)? {
            let want = phi.coeff(&d)?;
            let mut cur = d;
            for _ in 0..3 {
                let moves: Vec<_> = candidate_moves(&cur).into_iter().filter(|mv| mv.is_isotopy()).collect();
                let Some(mv) = moves.choose(&mut rng) else { break };
                cur = apply_move(&cur, mv)?;
                ok &= phi.coeff(&cur)? == want;
                replays += 1;
            }
        }
    }
    a.insert("move_replays".into(), replays.to_string());

    let mut closed = 0;
    for phi in &specs {
        let crate::signmap::SignMapKind::PhiEps { eps_order, eps_power, .. } = phi.kind else { unreachable!() };
        for _ in 0..6 {
            let d = random_closed(n, 5, &mut rng);
            ok &= phi.coeff(&d)? == SpecScalar::eps_pow(eps_order, 2 * stats(&d).w * eps_power);
            closed += 1;
        }
    }
    a.insert("closed_diagrams".into(), closed.to_string());

    let mut pairs = 0;
    for phi in &specs {
        let crate::signmap::SignMapKind::PhiEps { m, .. } = phi.kind else { unreachable!() };
        for _ in 0..8 {
            let x = random_bigon_product(n, 2, &mut rng)?;
            let y = if rng.gen_bool(0.5) { random_bigon_product(n, 1, &mut rng)? } else { in_polygon(&random_closed(n, 3, &mut rng), 2)? };
            let divisible = |s: i64| s.rem_euclid(m as i64) == 0;
            if !divisible(mutual_crossing_sum(&x, &y)?) || !divisible(mutual_crossing_sum(&y, &x)?) {
                continue;
            }
            ok &= phi.coeff(&stack(&x, &y)?)? == crate::scalar::Coeff::mul(&phi.coeff(&x)?, &phi.coeff(&y)?);
            pairs += 1;
        }
    }
    a.insert("multiplicative_pairs".into(), pairs.to_string());
    Ok(ok && pairs > 0)
}

fn splitting_check(n: usize, mut rng: ChaCha8Rng, a: &mut Artifacts) -> Result<bool> {
    let cut: CutSpec = "0-1".parse()?;
    let tensor_of = |e: &SkeinExpression| -> Result<Tensor> { split_to_tensor(&split(e, &cut)?) };
    let mut generators = 0;
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            let e = SkeinExpression::from_diagram(&bigon_arc(n, i, j))?;
            if tensor_of(&e)? == coproduct(&bigon_to_oq(&e)?)? {
                generators += 1;
            }
        }
    }
    a.insert("generators".into(), format!("{generators}/{}", n * n));

    let mut products = 0;
    for _ in 0..100 {
        let mut e = SkeinExpression::zero(n, 2);
        for _ in 0..rng.gen_range(1..=2) {
            let f = rng.gen_range(0..=2);
            e.add_term(&random_bigon_product(n, f, &mut rng)?, &random_laurent(&mut rng))?;
        }
        if tensor_of(&e)? == coproduct(&bigon_to_oq(&e)?)? {
            products += 1;
        }
    }
    a.insert("products".into(), format!("{products}/100"));

    let mut pairs = 0;
    for _ in 0..100 {
        let x = random_bigon_product(n, rng.gen_range(0..=2), &mut rng)?;
        let y = random_bigon_product(n, rng.gen_range(0..=2), &mut rng)?;
        let one = |d: &WebDiagram| -> Result<Tensor> { tensor_of(&SkeinExpression::from_diagram(d)?) };
        if one(&stack(&x, &y)?)? == one(&x)?.mul(&one(&y)?)? {
            pairs += 1;
        }
    }
    a.insert("multiplicative_pairs".into(), format!("{pairs}/100"));
    Ok(generators == n * n && products == 100 && pairs == 100)
}

fn spin_check(n: usize, a: &mut Artifacts) -> Result<bool> {
    let oracle = Arc::new(BlackboardSpin);
    let spec = SignMapSpec::phi_spin(n, oracle.clone());
    let mut ok = true;
    let mut seen = vec![];
    for signs in [vec![], vec![1], vec![-1], vec![1, 1], vec![1, -1, 1], vec![-1, -1, -1]] {
        let d = if signs.is_empty() { unknot(n) } else { kinked_unknot(n, &signs)? };
        let got = spec.coeff(&d)?.as_sign().unwrap_or(0);
        let st = stats(&d);
        let s = oracle.spin(&d)? as usize;
        let want = if n % 2 == 1 || (s + st.k + st.tau_length.unwrap_or(0)) % 2 == 0 { 1 } else { -1 };
        ok &= got == want;
        let x = TwistedExpression::lift(&SkeinExpression::from_diagram(&d)?)?;
        let twice = apply_signmap(&apply_signmap(&x, &spec)?, &spec)?;
        ok &= twice.terms().map(|(_, c)| c).eq(x.terms().map(|(_, c)| c));
        seen.push(got.to_string());
    }
    a.insert("oracle".into(), oracle.name().into());
    a.insert("coefficients".into(), seen.join(" "));
    Ok(ok)
}
