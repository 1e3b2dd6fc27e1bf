use fracsum_core::parser::{canonicalize, parse, parse_catalog, BinaryOp, Function, NamedConstant, SyntaxTree};
use fracsum_core::Complex64;
use proptest::prelude::*;

mod common;
use common::{any_catalog, clear, complex, rel};

fn leaf() -> impl Strategy<Value = SyntaxTree> {
    prop_oneof![
        (0.0f64..1e6, any::<bool>()).prop_map(|(value, imaginary)| SyntaxTree::Number { value, imaginary }),
        (1e-12f64..1e-3).prop_map(|value| SyntaxTree::Number { value, imaginary: false }),
        prop_oneof![
            Just(NamedConstant::Pi),
            Just(NamedConstant::E),
            Just(NamedConstant::Gamma),
            Just(NamedConstant::I)
        ]
        .prop_map(SyntaxTree::Constant),
        Just(SyntaxTree::Var),
    ]
}

fn tree() -> impl Strategy<Value = SyntaxTree> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        let op = prop_oneof![
            Just(BinaryOp::Add),
            Just(BinaryOp::Sub),
            Just(BinaryOp::Mul),
            Just(BinaryOp::Div),
            Just(BinaryOp::Pow)
        ];
        let func = prop_oneof![Just(Function::Exp), Just(Function::Ln), Just(Function::Sin), Just(Function::Cos)];
        prop_oneof![
            inner.clone().prop_map(|a| SyntaxTree::Neg(Box::new(a))),
            (op, inner.clone(), inner.clone()).prop_map(|(op, a, b)| SyntaxTree::binary(op, a, b)),
            (func, inner).prop_map(|(f, a)| SyntaxTree::Call(f, Box::new(a))),
        ]
    })
}

/// Source texts built from the shapes the canonicalizer recognizes.
fn catalog_source() -> impl Strategy<Value = String> {
    let a = -2.0f64..2.0;
    let b = -2.0f64..2.0;
    let shape = 0usize..9;
    (shape, a, b, 1u32..4).prop_map(|(shape, a, b, n)| match shape {
        0 => format!("({a} + k)^{n} - {b}*k"),
        1 => format!("1/((k + {a} + {b}i)*(k + {b}))"),
        2 => format!("cos({a}*k + {b})*k"),
        3 => format!("sin({a}*k)*(k - {b})"),
        4 => format!("(1.5 + {a}i)^k + {b}"),
        5 => format!("exp(-k/{n}) * (k + {a}) / {b}"),
        6 => format!("ln({n}*k + {a}) - k^{n}"),
        7 => format!("(k^2 + {a}*k)/(k + {b})^{n}"),
        _ => format!("{a}/(k+{b})^{n} + 2^(-k) * {n}"),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn unparse_round_trips(t in tree()) {
        let text = t.to_string();
        prop_assert_eq!(parse(&text).unwrap(), t, "{}", text);
    }

    #[test]
    fn rendered_catalog_expressions_round_trip(e in any_catalog()) {
        let text = e.to_string();
        prop_assert_eq!(parse_catalog(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn canonical_form_agrees_with_tree_evaluation(src in catalog_source(), x in complex(0.5..=3.0, -2.0..=2.0)) {
        let tree = parse(&src).unwrap();
        let e = match canonicalize(&tree) {
            Ok(e) => e,
            Err(_) => return Err(TestCaseError::reject("outside the catalog")),
        };
        prop_assume!(clear(&e, x, &[0.0]));
        let direct = tree.evaluate(x);
        prop_assume!(direct.norm() < 1e8);
        let got = e.evaluate(x);
        prop_assert!(rel(got, direct) <= 1e-12, "{src} at {x}: {got} vs {direct}");
    }
}

#[test]
fn spec_examples() {
    let pi = std::f64::consts::PI;
    let want = |re: f64, im: f64| Complex64::new(re, im);
    let e = parse_catalog("cos(pi*k)*k").unwrap();
    let x = want(0.3, 0.7);
    assert!((e.evaluate(x) - (pi * x).cos() * x).norm() < 1e-14);
    let e = parse_catalog("2^k").unwrap();
    assert!((e.evaluate(want(3.0, 0.0)) - 8.0).norm() < 1e-13);
    assert_eq!(parse_catalog("1/k").unwrap(), fracsum_core::CatalogExpr::inverse_monomial(1));
    assert!(parse_catalog("ln(k)^2").is_err());
    assert!(parse_catalog("exp(k^2)").is_err());
}
