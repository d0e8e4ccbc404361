mod args;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use perpcalc::mech::{parse_script, Reading, RESOLUTION_LADDER};
use perpcalc::{
    render_trace, run_script, Backend, Calculator, CfOptions, DivideMethod, MeanMethod, MeasuredResult,
    MeasurementModel, PowerStrategy, PrecisionPolicy, ReciprocalMethod, ScriptOp, SignedScaled, Trace,
};
use serde_json::{json, Map, Value};

use args::{BackendArg, Cli, Cmd, DivArg, MeanArg, Opts, RecipArg, StrategyArg};

enum Failure {
    Usage(String),
    Domain(perpcalc::Error),
}

impl From<perpcalc::Error> for Failure {
    fn from(e: perpcalc::Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = Result<T, Failure>;

/// What a subcommand produced, before formatting.
struct Outcome {
    result: Value,
    plain: String,
    error_bound: Option<String>,
    cf: Option<String>,
    trace: Option<Trace>,
}

impl Outcome {
    fn text(s: String) -> Self {
        Outcome { result: Value::String(s.clone()), plain: s, error_bound: None, cf: None, trace: None }
    }

    fn bounded(value: String, bound: String) -> Self {
        Outcome { plain: format!("{value} +- {bound}"), error_bound: Some(bound), ..Outcome::text(value) }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn calculator(o: &Opts) -> Run<Calculator> {
    let policy = PrecisionPolicy::with_tolerance(o.digits, o.tol.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
    let backend = match o.backend {
        BackendArg::Construction => Backend::Construction,
        BackendArg::Oracle => Backend::Oracle,
    };
    Ok(Calculator::new(policy, backend))
}

fn run(cli: &Cli) -> Run<String> {
    let o = &cli.opts;
    let calc = calculator(o)?;
    if o.resolution.is_some() && o.backend == BackendArg::Oracle {
        return Err(Failure::Usage("--resolution runs the device and needs the construction backend".into()));
    }
    let mech = o.resolution.is_some() && !matches!(cli.cmd, Cmd::Simulate { .. } | Cmd::Diagram { .. });
    if (o.emit_trace.is_some() || (o.diagram.is_some() && !matches!(cli.cmd, Cmd::Diagram { .. })))
        && (mech || !cli.cmd.traced())
    {
        return Err(Failure::Usage(format!("{} leaves no construction trace to write", cli.cmd.name())));
    }

    let out = if mech { device(&cli.cmd, o)? } else { evaluate(&cli.cmd, &calc, o)? };

    let mut trace_path = None;
    if let Some(t) = &out.trace {
        if let Some(p) = &o.emit_trace {
            write(p, &t.to_string())?;
            trace_path = Some(p.display().to_string());
        }
        if let Some(p) = &o.diagram {
            write(p, &render_trace(t, 800, 600)?)?;
        }
    }

    if !o.json {
        return Ok(format!("{}\n", out.plain));
    }
    let mut doc = Map::new();
    doc.insert("op".into(), json!(cli.cmd.name()));
    doc.insert("inputs".into(), inputs(&cli.cmd, o));
    doc.insert("result".into(), out.result);
    if let Some(b) = out.error_bound {
        doc.insert("error_bound".into(), json!(b));
    }
    if let Some(cf) = out.cf {
        doc.insert("cf".into(), json!(cf));
    }
    if let Some(p) = trace_path {
        doc.insert("trace_path".into(), json!(p));
    }
    Ok(format!("{}\n", Value::Object(doc)))
}

fn read(p: &Path) -> Run<String> {
    fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn write(p: &Path, text: &str) -> Run<()> {
    fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn evaluate(cmd: &Cmd, calc: &Calculator, o: &Opts) -> Run<Outcome> {
    let sig = o.sig;
    let traced = |r: perpcalc::Evaluated| Outcome { trace: Some(r.trace), ..Outcome::text(r.value.to_text(sig)) };
    let cf_opts = CfOptions { max_depth: o.cf_depth, cf_tol: o.cf_tol.clone(), ..CfOptions::default() };
    Ok(match cmd {
        Cmd::Pow { x, n } => traced(calc.power(x, *n)?),
        Cmd::Root { x, n } => traced(calc.nth_root_signed(x, *n)?),
        Cmd::Powfrac { x, m, n, strategy } => {
            let s = match strategy {
                StrategyArg::Compose => PowerStrategy::Compose,
                StrategyArg::Split => PowerStrategy::Split,
            };
            traced(calc.rational_power(x, *m, *n, s)?)
        }
        Cmd::Recip { x, method } => {
            let m = match method {
                RecipArg::Angle => ReciprocalMethod::Angle,
                RecipArg::UnitPerpendicular => ReciprocalMethod::UnitPerpendicular,
            };
            traced(calc.reciprocal(x, m)?)
        }
        Cmd::Mul { a, b } => traced(calc.multiply(a, b)?),
        Cmd::Div { a, b, method } => {
            let m = match method {
                DivArg::Hypotenuse => DivideMethod::Hypotenuse,
                DivArg::SimilarTriangles => DivideMethod::SimilarTriangles,
            };
            traced(calc.divide(a, b, m)?)
        }
        Cmd::Gmean { a, b, method } => {
            let m = match method {
                MeanArg::Bisect => MeanMethod::Bisect,
                MeanArg::Rotate => MeanMethod::Rotate,
            };
            traced(calc.geometric_mean(a, b, m)?)
        }
        Cmd::Ln { a } => Outcome::text(calc.natural_log(a, o.cf_depth)?.to_sci(sig)),
        Cmd::Antilog { n } => Outcome::text(calc.antilog(n)?.to_text(sig)),
        Cmd::Euler { n } => {
            let e = calc.approximate_e(*n)?;
            Outcome::bounded(e.value.to_sci(sig), e.error_bound.to_sci(sig))
        }
        Cmd::SolveN { x, a, max_n, root } => {
            let n = if *root { calc.solve_root_index(x, a, *max_n)? } else { calc.solve_integer_exponent(x, a, *max_n)? };
            Outcome::text(n.to_string())
        }
        Cmd::SolveMn { x, a, logs: false } => {
            let cf = calc.recover_rational_exponent(x, a, &cf_opts)?;
            let r = cf.evaluate();
            Outcome {
                plain: format!("{cf} = {r}"),
                cf: Some(cf.to_string()),
                ..Outcome::text(r.to_string())
            }
        }
        Cmd::SolveMn { x, a, logs: true } => {
            let l = calc.recover_exponent_via_logs(x, a, &cf_opts)?;
            let cf = format!("{} / {}", l.p, l.q);
            Outcome {
                plain: format!("{cf} = {}", l.ratio.to_text(sig)),
                cf: Some(cf),
                ..Outcome::text(l.ratio.to_text(sig))
            }
        }
        Cmd::Simulate { script } => simulate(&read(script)?, o)?,
        Cmd::Diagram { trace, width, height } => {
            let svg = render_trace(&Trace::parse(&read(trace)?)?, *width, *height)?;
            match &o.diagram {
                Some(p) => {
                    write(p, &svg)?;
                    Outcome::text(p.display().to_string())
                }
                None => Outcome { plain: svg.trim_end().to_string(), ..Outcome::text(svg) },
            }
        }
    })
}

fn base_model(o: &Opts) -> Run<MeasurementModel> {
    MeasurementModel::new(o.resolution.unwrap_or(RESOLUTION_LADDER[0])).map_err(|e| Failure::Usage(e.to_string()))
}

fn device(cmd: &Cmd, o: &Opts) -> Run<Outcome> {
    let count = |n: i64| {
        usize::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| Failure::Usage("the device needs n >= 1".into()))
    };
    let op = match cmd {
        Cmd::Pow { x, n } => ScriptOp::Power { x: x.clone(), n: count(*n)? },
        Cmd::Root { x, n } => ScriptOp::Root { x: x.clone(), n: count(*n)? },
        Cmd::Div { a, b, .. } => ScriptOp::Divide { num: a.clone(), den: b.clone() },
        Cmd::Gmean { a, b, .. } => ScriptOp::Gmean { a: a.clone(), b: b.clone() },
        Cmd::SolveMn { x, a, .. } => ScriptOp::CfRecover { x: x.clone(), a: a.clone() },
        other => return Err(Failure::Usage(format!("the device has no script for {}", other.name()))),
    };
    let r = run_script(&op, &base_model(o)?)?;
    let mut out = Outcome::bounded(r.value.to_text(o.sig), r.half_width.to_sci(o.sig));
    out.result = json!({
        "value": out.result,
        "half_width": out.error_bound,
        "readings": r.readings.iter().map(reading).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn reading(r: &Reading) -> Value {
    json!({ "arm": r.arm, "length": r.length.to_sci(20) })
}

fn record(op: &ScriptOp, r: &MeasuredResult, sig: u32) -> Value {
    json!({
        "op": op.to_string(),
        "value": r.value.to_text(sig),
        "half_width": r.half_width.to_sci(sig),
        "readings": r.readings.iter().map(reading).collect::<Vec<_>>(),
    })
}

fn simulate(text: &str, o: &Opts) -> Run<Outcome> {
    let base = base_model(o)?;
    let mut records = Vec::new();
    let mut lines = Vec::new();
    for line in parse_script(text)? {
        let r = run_script(&line.op, &line.model.apply(&base)?)
            .map_err(|e| perpcalc::Error::Script { line: line.line, msg: e.to_string() })?;
        lines.push(format!("{}: {} +- {}", line.op, r.value.to_text(o.sig), r.half_width.to_sci(o.sig)));
        records.push(record(&line.op, &r, o.sig));
    }
    Ok(Outcome { result: Value::Array(records), plain: lines.join("\n"), error_bound: None, cf: None, trace: None })
}

fn inputs(cmd: &Cmd, o: &Opts) -> Value {
    let s = |v: &SignedScaled| json!(v.to_string());
    let mut m = match cmd {
        Cmd::Pow { x, n } | Cmd::Root { x, n } => json!({ "x": s(x), "n": n }),
        Cmd::Powfrac { x, m, n, strategy } => {
            json!({ "x": s(x), "m": m, "n": n, "strategy": format!("{strategy:?}").to_lowercase() })
        }
        Cmd::Recip { x, .. } => json!({ "x": s(x) }),
        Cmd::Mul { a, b } | Cmd::Div { a, b, .. } | Cmd::Gmean { a, b, .. } => json!({ "a": s(a), "b": s(b) }),
        Cmd::Ln { a } => json!({ "a": s(a) }),
        Cmd::Antilog { n } => json!({ "n": n.to_string() }),
        Cmd::Euler { n } => json!({ "n": n }),
        Cmd::SolveN { x, a, max_n, root } => json!({ "x": s(x), "a": s(a), "max_n": max_n, "root": root }),
        Cmd::SolveMn { x, a, logs } => json!({ "x": s(x), "a": s(a), "logs": logs }),
        Cmd::Simulate { script } => json!({ "script": script.display().to_string() }),
        Cmd::Diagram { trace, width, height } => {
            json!({ "trace": trace.display().to_string(), "width": width, "height": height })
        }
    };
    if let (Some(r), Some(map)) = (o.resolution, m.as_object_mut()) {
        map.insert("resolution".into(), json!(r));
    }
    m
}
