//! One function per subcommand. Each returns the text and JSON renderings
//! of its result; `main` picks one.

use std::path::Path;
use std::time::Instant;

use haarint_core::asymptotics::{asymptotic, asymptotic_rational};
use haarint_core::cache::{cache_stats, clear_caches};
use haarint_core::entrywise::Options;
use haarint_core::expression::{evaluate, expand, integrate, parse, parse_rational, Expr, IntegrationResult};
use haarint_core::hciz::{hciz_eigen, hciz_formal, hciz_matrices, Eigen, HcizValue, Spectrum};
use haarint_core::measure::{Dim, MeasureSpec};
use haarint_core::weingarten::{orthogonal_table, symplectic_table, unitary_table, DimMode};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json;

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

#[derive(Debug, Clone, Default)]
pub struct IntegrateArgs {
    pub expr: String,
    pub measure: String,
    pub asymptotic: Option<i64>,
    pub dim_override: Option<i64>,
    pub cold: bool,
    pub degree_limit: Option<usize>,
}

fn options(limit: Option<usize>) -> Options {
    limit.map(|degree_limit| Options { degree_limit }).unwrap_or_default()
}

fn has_trace(e: &Expr) -> bool {
    match e {
        Expr::Tr(_) => true,
        Expr::Conj(x) | Expr::Abs(x) | Expr::Re(x) | Expr::Im(x) | Expr::Adjoint(x) | Expr::Neg(x) => has_trace(x),
        Expr::Power(x, _) | Expr::Quotient(x, _) => has_trace(x),
        Expr::Sum(xs) | Expr::Product(xs) => xs.iter().any(has_trace),
        _ => false,
    }
}

fn engine(e: &Expr, r: Option<&IntegrationResult>) -> &'static str {
    match r {
        Some(IntegrationResult::Matrix(_)) => "matrix",
        _ if has_trace(e) => "trace",
        _ => "entrywise",
    }
}

fn dimension(spec: &MeasureSpec) -> Value {
    match &spec.dim {
        Dim::Symbolic(s) => json!({ "mode": "symbolic", "symbol": s }),
        Dim::Concrete(n) => json!({ "mode": "concrete", "value": n }),
    }
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn cmd_integrate(args: &IntegrateArgs) -> Result<Output, CliError> {
    let e = parse(&args.expr)?;
    let spec = MeasureSpec::parse(&args.measure)?;
    let opts = options(args.degree_limit);
    if args.cold {
        clear_caches();
    }
    let degree = expand(&e).ok().map(|ms| ms.iter().map(|m| m.degree()).max().unwrap_or(0));
    let before = cache_stats();
    let start = Instant::now();
    let var = spec.dim_symbol().to_string();
    let (text, result, engine_name) = if let Some(order) = args.asymptotic {
        let a = asymptotic(&e, &spec, order, &opts)?;
        (a.render(), json::series(&a), engine(&e, None))
    } else {
        let mut r = integrate(&e, &spec, &opts)?;
        if let Some(n) = args.dim_override {
            r = evaluate(&r, n)?;
        }
        (r.render(&var), json::result(&r, &var), engine(&e, Some(&r)))
    };
    let elapsed = millis(start);
    let after = cache_stats();
    let record = json!({
        "result": result,
        "measure": spec.to_string(),
        "dimension": dimension(&spec),
        "engine": engine_name,
        "degree": degree,
        "cache": { "hits": after.hits - before.hits, "misses": after.misses - before.misses },
        "elapsed_ms": elapsed,
    });
    Ok(Output { text, json: record })
}

/// Expand a raw rational function of `var`, or an integrand when `measure` is given.
pub fn cmd_asymptotic(expr: &str, var: &str, order: i64, measure: Option<&str>) -> Result<Output, CliError> {
    let start = Instant::now();
    let (a, measure_name) = match measure {
        Some(m) => {
            let spec = MeasureSpec::parse(m)?;
            (asymptotic(&parse(expr)?, &spec, order, &Options::default())?, Value::String(spec.to_string()))
        }
        None => (asymptotic_rational(&parse_rational(expr, var)?, var, order)?, Value::Null),
    };
    let record = json!({
        "result": json::series(&a),
        "measure": measure_name,
        "dimension": { "mode": "symbolic", "symbol": a.var },
        "engine": "laurent",
        "elapsed_ms": millis(start),
    });
    Ok(Output { text: a.render(), json: record })
}

fn dim_mode(dim: &str) -> Result<(DimMode, Dim), CliError> {
    match dim.parse::<i64>() {
        Ok(n) => Ok((DimMode::Concrete(n), Dim::Concrete(n))),
        Err(_) if dim.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !dim.is_empty() => {
            Ok((DimMode::Symbolic, Dim::Symbolic(dim.into())))
        }
        Err(_) => Err(CliError::dispatch(format!("bad dimension `{}`", dim))),
    }
}

/// Weingarten values by cycle type (U) or loop type (O, Sp) for degree `k`.
pub fn cmd_wg(family: &str, k: usize, dim: &str, degree_limit: Option<usize>) -> Result<Output, CliError> {
    let start = Instant::now();
    let (mode, d) = dim_mode(dim)?;
    let opts = options(degree_limit);
    let total_degree = if family.eq_ignore_ascii_case("U") { k } else { 2 * k };
    opts.check_degree(total_degree)?;
    let table: Vec<(String, haarint_core::RationalFunction)> = if k == 0 {
        Vec::new()
    } else {
        match family.to_ascii_lowercase().as_str() {
            "u" => unitary_table(k, mode)?.into_iter().map(|(p, w)| (p.to_string(), w)).collect(),
            "o" => orthogonal_table(k, mode)?.iter().map(|(p, w)| (p.to_string(), w.clone())).collect(),
            "sp" => symplectic_table(k, mode)?.into_iter().map(|(p, w)| (p.to_string(), w)).collect(),
            other => return Err(CliError::dispatch(format!("wg takes U, O or Sp, got `{}`", other))),
        }
    };
    let var = match &d {
        Dim::Symbolic(s) => s.clone(),
        Dim::Concrete(_) => "d".into(),
    };
    let width = table.iter().map(|(t, _)| t.len()).max().unwrap_or(0);
    let text = table.iter().map(|(t, w)| format!("{:<width$}  {}", t, w.render(&var))).collect::<Vec<_>>().join("\n");
    let rows: Vec<Value> = table
        .iter()
        .map(|(t, w)| json!({ "type": t, "value": json::rational(w), "text": w.render(&var) }))
        .collect();
    let record = json!({
        "result": rows,
        "measure": format!("{}({})", family, d),
        "dimension": match &d { Dim::Symbolic(s) => json!({"mode": "symbolic", "symbol": s}), Dim::Concrete(n) => json!({"mode": "concrete", "value": n}) },
        "engine": "weingarten",
        "degree": total_degree,
        "elapsed_ms": millis(start),
    });
    Ok(Output { text, json: record })
}

pub enum HcizInput {
    Eigenvalues(String, String),
    Files(std::path::PathBuf, std::path::PathBuf),
    Formal(String),
}

/// A JSON matrix: rows of numbers or symbol strings.
pub fn read_matrix(path: &Path) -> Result<Vec<Vec<Eigen>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::internal(format!("{}: {}", path.display(), e)))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {}", path.display(), e)))?;
    let bad = || CliError::parse(format!("{}: expected an array of rows", path.display()));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| match x {
                    Value::Number(n) if n.is_i64() => Ok(Eigen::Exact(n.as_i64().unwrap().into())),
                    Value::Number(n) => Ok(Eigen::Float(num_complex::Complex64::new(n.as_f64().unwrap(), 0.0))),
                    Value::String(s) => Eigen::parse(s).map_err(CliError::from),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect()
}

pub fn cmd_hciz(input: &HcizInput) -> Result<Output, CliError> {
    let start = Instant::now();
    let (value, dim) = match input {
        HcizInput::Eigenvalues(a, b) => {
            let (a, b) = (Spectrum::parse(a)?, Spectrum::parse(b)?);
            let n = a.len();
            (hciz_eigen(&a, &b)?, n as i64)
        }
        HcizInput::Files(a, b) => {
            let (a, b) = (read_matrix(a)?, read_matrix(b)?);
            let n = a.len();
            (hciz_matrices(&a, &b)?, n as i64)
        }
        HcizInput::Formal(d) => {
            let (_, d) = dim_mode(d)?;
            let n = match d {
                Dim::Concrete(n) => n,
                Dim::Symbolic(_) => 0,
            };
            (HcizValue::Exact(hciz_formal(&d)?), n)
        }
    };
    let numeric = value.to_complex().map(|z| json!([z.re, z.im]));
    let record = json!({
        "result": { "text": value.render(), "numeric": numeric },
        "measure": format!("U({})", dim),
        "dimension": { "mode": "concrete", "value": dim },
        "engine": match value { HcizValue::Exact(_) => "hciz-exact", HcizValue::Numeric(_) => "hciz-numeric" },
        "elapsed_ms": millis(start),
    });
    Ok(Output { text: value.render(), json: record })
}

pub fn cmd_cache_clear() -> Output {
    let stats = cache_stats();
    clear_caches();
    Output {
        text: "caches cleared".into(),
        json: json!({ "result": "cleared", "cache": { "hits": stats.hits, "misses": stats.misses } }),
    }
}
