//! Timing suites: medians over cold-cache samples.

use std::time::Instant;

use haarint_core::cache::clear_caches;
use haarint_core::entrywise::Options;
use haarint_core::expression::{integrate, parse, Expr};
use haarint_core::measure::MeasureSpec;
use haarint_core::trace::partial_trace;
use serde_json::{json, Value};

use crate::error::CliError;

/// `(group, integrand, measure)`.
type Row = (&'static str, &'static str, &'static str);

const ENTRY_MOMENTS: &[Row] = &[
    ("Unitary", "abs(U[1,1])^6", "U(d)"),
    ("Unitary", "abs(U[1,1])^8", "U(d)"),
    ("Unitary", "abs(U[1,1])^10", "U(d)"),
    ("Unitary", "abs(U[1,1])^10", "U(10)"),
    ("Unitary", "abs(U[1,1])^10", "U(50)"),
];

const ORTHOGONAL: &[Row] = &[
    ("Orthogonal", "O[1,1]^2", "O(d)"),
    ("Orthogonal", "O[1,1]^4", "O(d)"),
    ("Orthogonal", "O[1,1]^6", "O(10)"),
    ("Orthogonal", "O[1,1]^8", "O(20)"),
    ("Orthogonal", "O[1,1]^10", "O(20)"),
    ("Orthogonal", "O[1,1]^10", "O(50)"),
];

const SYMPLECTIC: &[Row] = &[
    ("Symplectic", "abs(Sp[1,1])^8", "Sp(10)"),
    ("Symplectic", "abs(Sp[1,1])^10", "Sp(10)"),
    ("Symplectic", "abs(Sp[1,1])^10", "Sp(20)"),
];

const GINIBRE: &[Row] = &[("GinUE", "tr(G*G')", "GinUE(d)"), ("GinUE", "tr(G*G')", "GinUE(4)")];

const CIRCULAR: &[Row] = &[
    ("Circ. Orthogonal", "abs(S[1,1])^2", "COE(d)"),
    ("Circ. Orthogonal", "abs(S[1,1])^4", "COE(d)"),
    ("Circ. Orthogonal", "abs(S[1,1])^6", "COE(d)"),
    ("Circ. Symplectic", "abs(S[1,1])^2", "CSE(d)"),
    ("Circ. Symplectic", "abs(S[1,1])^4", "CSE(d)"),
    ("Circ. Symplectic", "abs(S[1,1])^6", "CSE(d)"),
];

const PERMUTATION: &[Row] = &[
    (
        "Permutation",
        "P[1,1]*P[2,2]*P[3,3]*P[4,4]*P[5,5]*P[6,6]*P[7,7]*P[8,8]*P[9,9]*P[10,10]",
        "Perm(100)",
    ),
    ("Centered Perm.", "Y[1,1]^4", "CPerm(10)"),
];

/// Marker integrand: the purity of a random pure state on `2 ⊗ 3`.
const BIPARTITE: &str = "purity(2,3)";
const APPLICATION: &[Row] = &[("Application", BIPARTITE, "Psi(6)")];

pub const SUITES: &[(&str, &[Row])] = &[
    ("entry-moments", ENTRY_MOMENTS),
    ("orthogonal", ORTHOGONAL),
    ("symplectic", SYMPLECTIC),
    ("ginibre", GINIBRE),
    ("circular", CIRCULAR),
    ("permutation", PERMUTATION),
    ("application", APPLICATION),
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub group: String,
    pub integrand: String,
    pub measure: String,
    pub result: String,
    pub median_ms: f64,
}

/// `E tr(ρ_A²)` for a pure state on `da ⊗ db`, written out entrywise.
pub fn purity_expr(da: usize, db: usize) -> Expr {
    let n = da * db;
    let rho: Vec<Vec<Expr>> = (1..=n)
        .map(|i| (1..=n).map(|j| Expr::Product(vec![Expr::entry("psi", i, 1), Expr::entry("psi", j, 1).conj()])).collect())
        .collect();
    let add = |a: &Expr, b: &Expr| Expr::Sum(vec![a.clone(), b.clone()]);
    let rho_a = partial_trace(&rho, (da, db), 2, add).expect("square by construction");
    let terms = (0..da)
        .flat_map(|a| (0..da).map(move |b| (a, b)))
        .map(|(a, b)| Expr::Product(vec![rho_a[a][b].clone(), rho_a[b][a].clone()]))
        .collect();
    Expr::Sum(terms)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn run_row(row: &Row, samples: usize) -> Result<BenchRow, CliError> {
    let (group, integrand, measure) = *row;
    let e = if integrand == BIPARTITE { purity_expr(2, 3) } else { parse(integrand)? };
    let spec = MeasureSpec::parse(measure)?;
    let opts = Options::default();
    let mut times = Vec::with_capacity(samples);
    let mut result = String::new();
    for _ in 0..samples.max(1) {
        clear_caches();
        let t = Instant::now();
        let r = integrate(&e, &spec, &opts)?;
        times.push(t.elapsed().as_secs_f64() * 1e3);
        result = r.render(spec.dim_symbol());
    }
    Ok(BenchRow {
        group: group.into(),
        integrand: integrand.into(),
        measure: measure.into(),
        result,
        median_ms: median(times),
    })
}

/// Run every row of `suite`; rows are spread over `threads` workers.
pub fn run_suite(suite: &str, samples: usize, threads: usize) -> Result<Vec<BenchRow>, CliError> {
    let rows = SUITES
        .iter()
        .find(|(name, _)| *name == suite)
        .map(|(_, rows)| *rows)
        .ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            CliError::dispatch(format!("unknown suite `{}`; available: {}", suite, names.join(", ")))
        })?;
    let threads = threads.clamp(1, rows.len());
    let chunk = rows.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = rows
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|r| run_row(r, samples)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("bench worker panicked")).collect()
    })
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("group,integrand,measure,median_ms,result\n");
    for r in rows {
        out.push_str(&format!("{},\"{}\",{},{:.4},\"{}\"\n", r.group, r.integrand, r.measure, r.median_ms, r.result));
    }
    out
}

pub fn to_json(suite: &str, samples: usize, rows: &[BenchRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "group": r.group, "integrand": r.integrand, "measure": r.measure,
                "median_ms": r.median_ms, "result": r.result,
            })
        })
        .collect();
    json!({ "suite": suite, "samples": samples, "rows": rows })
}
