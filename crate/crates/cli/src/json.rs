//! JSON encodings. Rational functions are `{"num": [[power, "p/q"], ...],
//! "den": [...]}` with integer coefficients, as in the text form.

use haarint_core::asymptotics::{Asymptotic, Expansion};
use haarint_core::expression::IntegrationResult;
use haarint_core::trace::TraceExpr;
use haarint_core::{DimPoly, Error, ExactScalar, RationalFunction};
use serde_json::{json, Value};

pub fn poly(p: &DimPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([k, c.to_string()]))
            .collect(),
    )
}

pub fn rational(r: &RationalFunction) -> Value {
    let (n, d) = r.integer_form();
    json!({ "num": poly(&n), "den": poly(&d) })
}

fn poly_from(v: &Value) -> Result<DimPoly, Error> {
    let bad = || Error::InvalidInput(format!("not a coefficient list: {}", v));
    let mut coeffs: Vec<ExactScalar> = Vec::new();
    for item in v.as_array().ok_or_else(bad)? {
        let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        let k = pair[0].as_u64().ok_or_else(bad)? as usize;
        let c: ExactScalar = pair[1].as_str().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ExactScalar::zero());
        }
        coeffs[k] = &coeffs[k] + &c;
    }
    Ok(DimPoly::new(coeffs))
}

/// Inverse of [`rational`].
pub fn rational_from(v: &Value) -> Result<RationalFunction, Error> {
    let n = poly_from(&v["num"])?;
    let d = poly_from(&v["den"])?;
    RationalFunction::normalize(n, d)
}

pub fn trace(t: &TraceExpr, var: &str) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(atoms, c)| {
            let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
            json!({ "coeff": rational(c), "atoms": names })
        })
        .collect();
    json!({ "terms": terms, "text": t.render(var) })
}

pub fn result(r: &IntegrationResult, var: &str) -> Value {
    match r {
        IntegrationResult::Rational(f) => json!({ "kind": "rational", "value": rational(f), "text": f.render(var) }),
        IntegrationResult::Scalar(c) => json!({ "kind": "scalar", "value": c.to_string(), "text": c.to_string() }),
        IntegrationResult::Trace(t) => json!({ "kind": "trace", "value": trace(t, var), "text": t.render(var) }),
        IntegrationResult::Matrix(rows) => {
            let cells: Vec<Vec<Value>> = rows.iter().map(|row| row.iter().map(|c| result(c, var)).collect()).collect();
            json!({ "kind": "matrix", "value": cells, "text": r.render(var) })
        }
    }
}

pub fn series(a: &Asymptotic) -> Value {
    match &a.expansion {
        Expansion::Series(s) => {
            let terms: Vec<Value> = s.terms().iter().map(|(m, c)| json!([m, c.to_string()])).collect();
            json!({ "kind": "series", "var": a.var, "order": s.order(), "terms": terms, "text": a.render() })
        }
        Expansion::Trace(t) => {
            let groups: Vec<Value> = t.groups.iter().map(|(m, g)| json!([m, trace(g, &a.var)])).collect();
            json!({ "kind": "trace-series", "var": a.var, "order": t.order, "groups": groups, "text": a.render() })
        }
    }
}
