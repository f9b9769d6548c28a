use std::io::Read;
use std::sync::Arc;

use serde_json::{json, Value};
use skein_core::braiding::{boundary_coeffs, check_hecke, check_ybe, state_sum_eval, Morse, RMatrix};
use skein_core::qmatrix::{coproduct, counit, antipode, det_q, format_monomial, format_qelement, parse_qelement, sl_equal, Ring, Tensor};
use skein_core::scalar::{constants, specialize, LaurentScalar};
use skein_core::signmap::{apply_signmap, BlackboardSpin, SignMapSpec, TwistedExpression};
use skein_core::skein::{evaluate_closed, Mode, SkeinExpression};
use skein_core::splitting::{split, split_to_tensor, theta_p, CutSpec};
use skein_core::verify::{self, VerifyConfig};
use skein_core::web::{braid_closure, WebDiagram};
use skein_core::Error;

use crate::{pretty, ClosedInput, Cli, Cmd, OqCmd, RCmd};

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 1,
            Error::Precondition(_) | Error::Pattern(_) | Error::Internal(_) => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn malformed(msg: impl Into<String>) -> CliError {
    CliError { code: 1, message: format!("malformed input: {}", msg.into()) }
}

fn line(s: impl std::fmt::Display) -> Output {
    Output { text: format!("{s}\n"), code: 0 }
}

fn emit(v: &Value, pretty_out: bool) -> Output {
    let text = if pretty_out { pretty::render(v) } else { pretty::json_line(v) };
    Output { text, code: 0 }
}

fn read_json(path: Option<&str>) -> Res<Value> {
    let mut s = String::new();
    match path {
        None | Some("-") => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| malformed(format!("stdin: {e}")))?;
        }
        Some(p) => s = std::fs::read_to_string(p).map_err(|e| malformed(format!("{p}: {e}")))?,
    }
    serde_json::from_str(&s).map_err(|e| malformed(format!("JSON: {e}")))
}

fn read_expr(path: Option<&str>) -> Res<SkeinExpression> {
    Ok(SkeinExpression::from_json(read_json(path)?)?)
}

fn parse_braid(word: &str, strands: Option<usize>) -> Res<(usize, Vec<i32>)> {
    let w: Vec<i32> = word
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| malformed(format!("braid generator `{t}`"))))
        .collect::<Res<_>>()?;
    if w.contains(&0) {
        return Err(malformed("braid generators are nonzero"));
    }
    let m = strands.unwrap_or_else(|| w.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1));
    Ok((m, w))
}

/// Closed links carry no rank-dependent data, so `--n` may relabel them.
fn with_rank(e: SkeinExpression, n: Option<usize>) -> Res<SkeinExpression> {
    let Some(n) = n else { return Ok(e) };
    if n == 0 {
        return Err(Error::Precondition("rank n must be at least 1".into()).into());
    }
    if n == e.n {
        return Ok(e);
    }
    let mut out = SkeinExpression::zero(n, e.ideal_points);
    for (d, c) in e.terms() {
        if d.nodes.iter().any(|x| x.is_vertex()) || d.endpoints().next().is_some() {
            return Err(Error::Precondition(format!("diagram has rank {} but --n {n} was given", e.n)).into());
        }
        let mut d2: WebDiagram = d.clone();
        d2.n = n;
        out.add_term(&d2, c)?;
    }
    Ok(out)
}

fn closed_input(src: &ClosedInput, n: Option<usize>) -> Res<SkeinExpression> {
    match &src.braid {
        Some(word) => {
            let n = n.ok_or_else(|| malformed("--braid needs --n"))?;
            let (m, w) = parse_braid(word, src.strands)?;
            Ok(SkeinExpression::from_diagram(&braid_closure(n, m, &w)?)?)
        }
        None => with_rank(read_expr(src.input.as_deref())?, n),
    }
}

fn tensor_json(t: &Tensor) -> Value {
    let parts: Vec<Value> = t
        .parts
        .iter()
        .map(|(k, c)| json!({ "coefficient": c.to_string(), "factors": k.iter().map(|m| format_monomial(t.n, m)).collect::<Vec<_>>() }))
        .collect();
    Value::Array(parts)
}

pub fn dispatch(cli: Cli) -> Res<Output> {
    let pretty_out = cli.pretty;
    match cli.cmd {
        Cmd::Eval { src, n, mode, spec } => {
            let mode: Mode = mode.parse()?;
            let e = closed_input(&src, n)?;
            let mut total = LaurentScalar::zero();
            for (d, c) in e.terms() {
                total.add_assign_ref(&(c * &evaluate_closed(d, mode)?));
            }
            match spec.as_str() {
                "generic" => Ok(line(total)),
                s => {
                    let k: u32 = s
                        .strip_prefix("root:")
                        .and_then(|k| k.parse().ok())
                        .filter(|&k| k > 0)
                        .ok_or_else(|| malformed(format!("--spec `{s}` (expected generic or root:<k>)")))?;
                    Ok(line(specialize(&total, k)))
                }
            }
        }
        Cmd::Constants { n } => Ok(emit(&constants(n)?.to_json(), pretty_out)),
        Cmd::Oq(c) => oq(c, pretty_out),
        Cmd::Rmatrix(c) => rmatrix(c, pretty_out),
        Cmd::Signmap { kind, n, m, eps_order, eps_power, input } => {
            let spec = match kind.as_str() {
                "phi_eps" => {
                    let m = m.ok_or_else(|| malformed("phi_eps needs --m"))?;
                    let o = eps_order.ok_or_else(|| malformed("phi_eps needs --eps-order"))?;
                    SignMapSpec::phi_eps_power(n, m, o, eps_power)?
                }
                "psi" => SignMapSpec::psi(n),
                "phi_spin" => SignMapSpec::phi_spin(n, Arc::new(BlackboardSpin)),
                k => return Err(malformed(format!("--kind `{k}` (expected phi_eps, psi or phi_spin)"))),
            };
            let e = read_expr(input.as_deref())?;
            if e.n != n {
                return Err(Error::Precondition(format!("expression has rank {} but --n {n} was given", e.n)).into());
            }
            let out = apply_signmap(&TwistedExpression::lift(&e)?, &spec)?;
            Ok(emit(&json!({ "map": spec.to_json(), "result": out.to_json()? }), pretty_out))
        }
        Cmd::Split { arc, add_point, read_oq, input } => {
            let e = read_expr(input.as_deref())?;
            if let Some(p) = add_point {
                return Ok(emit(&theta_p(&e, p)?.to_json()?, pretty_out));
            }
            let cut: CutSpec = arc.expect("clap requires --arc").parse()?;
            let s = split(&e, &cut)?;
            let mut v = s.to_json()?;
            if read_oq {
                v["oq"] = tensor_json(&split_to_tensor(&s)?);
            }
            Ok(emit(&v, pretty_out))
        }
        Cmd::Verify { n_max, eps_orders, seed, timings, inject_fault } => {
            let seed = match std::env::var("SKEIN_SEED") {
                Ok(s) => s.trim().parse().map_err(|_| malformed(format!("SKEIN_SEED `{s}` is not an integer")))?,
                Err(_) => seed,
            };
            let eps_orders = eps_orders
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| malformed(format!("epsilon order `{t}`"))))
                .collect::<Res<Vec<_>>>()?;
            let report = verify::run(&VerifyConfig { n_max, eps_orders, seed, inject_fault })?;
            let text = if pretty_out { report.to_pretty(timings) } else { pretty::json_line(&report.to_json(timings)) };
            Ok(Output { text, code: if report.passed() { 0 } else { 3 } })
        }
    }
}

fn oq(c: OqCmd, pretty_out: bool) -> Res<Output> {
    match c {
        OqCmd::NormalForm { n, expr } => Ok(line(format_qelement(&parse_qelement(&expr, n, Ring::Mn)?))),
        OqCmd::Det { n } => Ok(line(format_qelement(&det_q(n)?))),
        OqCmd::Hopf { n, expr } => {
            let x = parse_qelement(&expr, n, Ring::SLn)?;
            let v = json!({
                "delta": tensor_json(&coproduct(&x)?),
                "counit": counit(&x).to_string(),
                "antipode": format_qelement(&antipode(&x)?),
            });
            Ok(emit(&v, pretty_out))
        }
        OqCmd::Equal { n, x, y } => {
            let eq = sl_equal(&parse_qelement(&x, n, Ring::SLn)?, &parse_qelement(&y, n, Ring::SLn)?)?;
            Ok(emit(&json!({ "equal": eq }), pretty_out))
        }
    }
}

fn rank(n: usize) -> Res<usize> {
    if n == 0 {
        return Err(Error::Precondition("rank n must be at least 1".into()).into());
    }
    Ok(n)
}

fn rmatrix(c: RCmd, pretty_out: bool) -> Res<Output> {
    match c {
        RCmd::Build { n } => Ok(emit(&RMatrix::build(rank(n)?).to_json(), pretty_out)),
        RCmd::Ybe { n } => {
            let ok = check_ybe(&RMatrix::build(rank(n)?));
            Ok(Output { code: if ok { 0 } else { 3 }, ..emit(&json!({ "ybe": ok }), pretty_out) })
        }
        RCmd::Hecke { n } => {
            let h = check_hecke(&RMatrix::build(rank(n)?));
            let v = json!({ "hecke": h.holds, "det": h.det.to_string(), "invertible": h.invertible });
            Ok(Output { code: if h.holds { 0 } else { 3 }, ..emit(&v, pretty_out) })
        }
        RCmd::Coeffs { n, eps_order } => Ok(emit(&boundary_coeffs(n, eps_order)?.to_json(), pretty_out)),
        RCmd::Statesum { n, input, braid, strands } => {
            let morse = match braid {
                Some(word) => {
                    let (m, w) = parse_braid(&word, strands)?;
                    Morse::braid_closure(m, &w)
                }
                None => serde_json::from_value(read_json(input.as_deref())?).map_err(|e| malformed(format!("Morse diagram: {e}")))?,
            };
            Ok(line(state_sum_eval(n, &morse)?))
        }
    }
}
