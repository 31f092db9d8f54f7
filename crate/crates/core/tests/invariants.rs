use haarint_core::algebra::{laurent_expand, DimPoly, ExactScalar, RationalFunction};
use haarint_core::entrywise::{integrate_monomial, Monomial, MonomialFactor, Options};
use haarint_core::expression::{integrate, parse, parse_rational, IntegrationResult};
use haarint_core::measure::MeasureSpec;
use proptest::prelude::*;

fn spec(s: &str) -> MeasureSpec {
    MeasureSpec::parse(s).unwrap()
}

/// A monomial with `k` plain and `k` conjugated entries, indices in `1..=3`.
fn balanced(symbol: &'static str) -> impl Strategy<Value = Monomial> {
    (1usize..=3).prop_flat_map(move |k| {
        prop::collection::vec((1usize..=3, 1usize..=3), 2 * k).prop_map(move |idx| {
            let factors = idx
                .iter()
                .enumerate()
                .map(|(n, &(i, j))| MonomialFactor::new(symbol, i, j, n >= k))
                .collect();
            Monomial::new(ExactScalar::one(), factors)
        })
    })
}

fn real_monomial(symbol: &'static str) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1usize..=3, 1usize..=3), 1..=6).prop_map(move |idx| {
        Monomial::new(ExactScalar::one(), idx.iter().map(|&(i, j)| MonomialFactor::new(symbol, i, j, false)).collect())
    })
}

fn relabel(m: &Monomial, rows: &[usize; 3], cols: &[usize; 3]) -> Monomial {
    let factors = m
        .factors
        .iter()
        .map(|f| {
            let (r, c) = (f.row.to_string().parse::<usize>().unwrap(), f.col.to_string().parse::<usize>().unwrap());
            MonomialFactor::new(&f.symbol, rows[r - 1], cols[c - 1], f.conjugated)
        })
        .collect();
    Monomial::new(m.coeff.clone(), factors)
}

const PERMS3: [[usize; 3]; 6] = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_symbolic_agrees_with_concrete(m in balanced("U")) {
        let opts = Options::default();
        let sym = integrate_monomial(&m, &spec("U(d)"), &opts).unwrap();
        let at7 = integrate_monomial(&m, &spec("U(7)"), &opts).unwrap();
        prop_assert_eq!(RationalFunction::from_scalar(sym.eval(7).unwrap()), at7);
    }

    #[test]
    fn unitary_invariant_under_relabelling(m in balanced("U"), r in 0usize..6, c in 0usize..6) {
        let opts = Options::default();
        let a = integrate_monomial(&m, &spec("U(d)"), &opts).unwrap();
        let b = integrate_monomial(&relabel(&m, &PERMS3[r], &PERMS3[c]), &spec("U(d)"), &opts).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orthogonal_symbolic_agrees_with_concrete(m in real_monomial("O")) {
        let opts = Options::default();
        let sym = integrate_monomial(&m, &spec("O(d)"), &opts).unwrap();
        let at9 = integrate_monomial(&m, &spec("O(9)"), &opts).unwrap();
        prop_assert_eq!(RationalFunction::from_scalar(sym.eval(9).unwrap()), at9);
    }

    #[test]
    fn laurent_series_resums_to_truncation(num in prop::collection::vec(-9i64..9, 1..4), shift in 1i64..5) {
        // (Σ a_k d^k) / (d + shift)^3 vanishes at infinity, so its expansion
        // agrees with it to every order
        let den = DimPoly::from_ints(&[shift, 1]).pow(3);
        let r = RationalFunction::normalize(DimPoly::from_ints(&num), den).unwrap();
        let s = laurent_expand(&r, 8).unwrap();
        let diff = &r - &s.to_rational();
        let tail = laurent_expand(&diff, 8).unwrap();
        prop_assert!(tail.is_zero(), "{} leaves {}", r, diff);
    }

    #[test]
    fn infix_rendering_parses_back(num in prop::collection::vec(-9i64..9, 1..4), den in prop::collection::vec(-9i64..9, 1..4)) {
        prop_assume!(den.iter().any(|&c| c != 0));
        let r = RationalFunction::normalize(DimPoly::from_ints(&num), DimPoly::from_ints(&den)).unwrap();
        prop_assert_eq!(parse_rational(&r.render_infix("d"), "d").unwrap(), r);
    }
}

#[test]
fn haar_measures_normalize_columns() {
    // Σ_i |X_i1|² = 1; the diagonal entry can differ from the rest
    let rational = |text: &str, measure: &str| match integrate(&parse(text).unwrap(), &spec(measure), &Options::default()) {
        Ok(IntegrationResult::Rational(r)) => r,
        other => panic!("{} over {}: {:?}", text, measure, other),
    };
    // self-duality forces the entry paired with (1,1) to vanish, leaving d - 2 generic rows
    let families = [("U(d)", "U", 1), ("O(d)", "O", 1), ("Sp(d)", "Sp", 1), ("COE(d)", "S", 1), ("CSE(d)", "S", 2)];
    for (measure, entry, tied) in families {
        let diag = rational(&format!("abs({}[1,1])^2", entry), measure);
        let off = rational(&format!("abs({}[2,1])^2", entry), measure);
        for d in [4i64, 6, 10] {
            let col = &diag.eval(d).unwrap() + &(&off.eval(d).unwrap() * &ExactScalar::from_int(d - tied));
            assert_eq!(col, ExactScalar::one(), "{} at {}", measure, d);
        }
    }
    match integrate(&parse("abs(S[3,1])^2").unwrap(), &spec("CSE(4)"), &Options::default()) {
        Ok(IntegrationResult::Scalar(z)) => assert_eq!(z, ExactScalar::zero()),
        other => panic!("{:?}", other),
    }
}

#[test]
fn trace_engine_matches_entrywise_expansion() {
    // tr(U A U' B) with A = B = E_11 is |U_11|²
    let opts = Options::default();
    let IntegrationResult::Scalar(via_entries) =
        integrate(&parse("abs(U[1,1])^2").unwrap(), &spec("U(5)"), &opts).unwrap()
    else {
        panic!()
    };
    assert_eq!(via_entries, ExactScalar::ratio(1, 5));
    let IntegrationResult::Scalar(gue) = integrate(&parse("tr(H^4)").unwrap(), &spec("GUE(3)"), &opts).unwrap() else {
        panic!()
    };
    assert_eq!(gue, ExactScalar::from_int(2 * 27 + 3));
}
