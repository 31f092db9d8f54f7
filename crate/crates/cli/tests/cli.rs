use std::process::Command;

use haarint::json;
use haarint::montecarlo::{haar_unitary, hciz_estimate};
use haarint_core::algebra::{DimPoly, ExactScalar, RationalFunction};
use haarint_core::expression::parse_rational;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::Value;

fn haarint(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_haarint")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = haarint(&full);
    (code, serde_json::from_str(&stdout).expect("stdout is JSON"))
}

#[test]
fn integrate_text_outputs() {
    assert_eq!(haarint(&["integrate", "abs(U[1,1])^2", "--measure", "U(d)"]), (0, "1 // d\n".into(), String::new()));
    assert_eq!(haarint(&["integrate", "abs(tr(U))^4", "--measure", "U(10)"]).1, "2\n");
    assert_eq!(haarint(&["integrate", "abs(U[1,1])^4", "--measure", "U(d)", "--dim-override", "3"]).1, "1/6\n");
    assert_eq!(haarint(&["integrate", "abs(U[1,1])^4", "--measure", "U(d)", "--asymptotic", "4"]).1, "2/d^2 - 2/d^3 + 2/d^4\n");
}

#[test]
fn exit_codes() {
    let (code, _, err) = haarint(&["integrate", "abs(U[1,1])^6", "--measure", "Design(d,2)"]);
    assert_eq!(code, 4);
    assert!(err.contains("design order"), "{}", err);
    assert_eq!(haarint(&["integrate", "abs(U[1,1", "--measure", "U(d)"]).0, 2);
    assert_eq!(haarint(&["integrate", "U[1,1]", "--measure", "Nope(d)"]).0, 3);
    assert_eq!(haarint(&["integrate", "abs(U[1,1])^14", "--measure", "U(d)"]).0, 4);
    assert_eq!(haarint(&["bench", "unknown"]).0, 3);
    assert_eq!(haarint(&["hciz", "--a", "0,1"]).0, 2);
}

#[test]
fn error_json_on_stdout() {
    let (code, v) = json_out(&["integrate", "abs(U[1,1])^6", "--measure", "Design(d,2)"]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["code"], 4);
    assert!(v["error"]["message"].as_str().unwrap().contains("design order"));
}

#[test]
fn success_records_carry_metadata() {
    for args in [
        vec!["integrate", "abs(U[1,1])^4", "--measure", "U(d)"],
        vec!["integrate", "tr(U*A*U'*B)", "--measure", "U(d)"],
        vec!["wg", "O", "2"],
        vec!["hciz", "--a", "0,1", "--b", "0,1"],
    ] {
        let (code, v) = json_out(&args);
        assert_eq!(code, 0, "{:?}", args);
        for key in ["result", "measure", "dimension", "engine", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "{:?} lacks {}", args, key);
        }
    }
}

#[test]
fn json_rational_matches_text() {
    let (_, v) = json_out(&["integrate", "abs(U[1,1])^4", "--measure", "U(d)"]);
    let r = json::rational_from(&v["result"]["value"]).unwrap();
    assert_eq!(r, parse_rational("2/(d^2+d)", "d").unwrap());
    assert_eq!(v["result"]["text"], r.render("d"));
}

#[test]
fn weingarten_tables() {
    let (_, v) = json_out(&["wg", "U", "2"]);
    let rows = v["result"].as_array().unwrap();
    let get = |ty: &str| {
        let row = rows.iter().find(|r| r["type"] == ty).unwrap();
        json::rational_from(&row["value"]).unwrap()
    };
    assert_eq!(get("[1,1]"), parse_rational("1/(d^2-1)", "d").unwrap());
    assert_eq!(get("[2]"), parse_rational("-1/(d^3-d)", "d").unwrap());

    let (_, v) = json_out(&["wg", "O", "1"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(json::rational_from(&rows[0]["value"]).unwrap(), parse_rational("1/d", "d").unwrap());

    let (code, v) = json_out(&["wg", "U", "0"]);
    assert_eq!(code, 0);
    assert!(v["result"].as_array().unwrap().is_empty());
}

#[test]
fn asymptotic_subcommand() {
    assert_eq!(haarint(&["asymptotic", "2n/(n^2+1)", "--var", "n", "--order", "5"]).1, "2/n - 2/n^3 + 2/n^5\n");
}

#[test]
fn hciz_inputs() {
    assert_eq!(haarint(&["hciz", "--a", "0,1", "--b", "0,1"]).1, "exp(1) - 1\n");
    let dir = std::env::temp_dir().join(format!("haarint-hciz-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    std::fs::write(&a, "[[0, 0], [0, 1]]").unwrap();
    std::fs::write(&b, "[[0, 0], [0, 1]]").unwrap();
    let out = haarint(&["hciz", "--a-file", a.to_str().unwrap(), "--b-file", b.to_str().unwrap()]);
    assert_eq!(out.1, "exp(1) - 1\n");
    // a rotated projector has the same spectrum
    std::fs::write(&b, "[[0.5, 0.5], [0.5, 0.5]]").unwrap();
    let (code, v) = json_out(&["hciz", "--a-file", a.to_str().unwrap(), "--b-file", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let re = v["result"]["numeric"][0].as_f64().unwrap();
    assert!((re - (std::f64::consts::E - 1.0)).abs() < 1e-10, "{}", re);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_rows() {
    let (code, v) = json_out(&["bench", "ginibre", "--samples", "2", "--threads", "2"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["result"], "d^2");
    assert_eq!(rows[1]["result"], "16");
    let (_, csv, _) = haarint(&["bench", "entry-moments", "--samples", "1"]);
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn cache_clear_subcommand() {
    let (code, out, _) = haarint(&["cache-clear"]);
    assert_eq!((code, out.as_str()), (0, "caches cleared\n"));
}

#[test]
fn sampled_unitaries_are_unitary() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=4 {
        let u = haar_unitary(n, &mut rng);
        let err = (&u * u.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm();
        assert!(err < 1e-12, "n={} err={}", n, err);
    }
}

#[test]
fn sampled_hciz_near_closed_form() {
    // d = 2, a = b = (0, 1): (e - 1)/1
    let mut rng = StdRng::seed_from_u64(11);
    let mc = hciz_estimate(&[0.0, 1.0], &[0.0, 1.0], 20_000, &mut rng);
    assert!((mc - (std::f64::consts::E - 1.0)).abs() < 0.03, "{}", mc);
}

fn arb_rational() -> impl Strategy<Value = RationalFunction> {
    let poly = prop::collection::vec((-20i64..20, 1i64..6), 0..4);
    (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
        let mk = |cs: &[(i64, i64)]| DimPoly::new(cs.iter().map(|&(p, q)| ExactScalar::ratio(p, q)).collect());
        let den = mk(&d);
        if den.is_zero() {
            return None;
        }
        RationalFunction::normalize(mk(&n), den).ok()
    })
}

proptest! {
    #[test]
    fn json_round_trip(r in arb_rational()) {
        prop_assert_eq!(json::rational_from(&json::rational(&r)).unwrap(), r);
    }
}
