use ncfourier::expr::{parse_function, Expr, Func, Point, Var};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        // literals are non-negative: a leading minus parses as negation
        (0.0f64..1e6).prop_map(Expr::Num),
        (0u32..1000).prop_map(|n| Expr::Num(f64::from(n))),
        Just(Expr::Pi),
        prop_oneof![Just(Var::X), Just(Var::Y), Just(Var::Z), Just(Var::R)].prop_map(Expr::Var),
    ]
}

fn func() -> impl Strategy<Value = Func> {
    prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Exp), Just(Func::Sqrt), Just(Func::Abs)]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        let pair = (inner.clone(), inner.clone());
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            pair.clone().prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            pair.clone().prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            pair.prop_map(|(a, b)| Expr::Pow(Box::new(a), Box::new(b))),
            (func(), inner).prop_map(|(f, e)| Expr::Call(f, Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn print_then_parse_is_the_identity(e in expr()) {
        let printed = e.to_string();
        let parsed = parse_function(&printed).unwrap();
        prop_assert_eq!(&parsed.ast, &e);
        let again = parse_function(&parsed.to_string()).unwrap();
        prop_assert_eq!(again.ast, parsed.ast);
    }

    #[test]
    fn evaluation_is_total_or_reports_a_domain_error(e in expr(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let f = parse_function(&e.to_string()).unwrap();
        match f.eval(&Point { x, y, z: 0.5 }) {
            Ok(v) => prop_assert!(v.is_finite()),
            Err(err) => prop_assert!(err.to_string().contains("undefined"), "{}", err),
        }
    }

    #[test]
    fn whitespace_is_insignificant(a in 0u32..100, b in 1u32..100) {
        let tight = parse_function(&format!("{a}*x+{b}/r")).unwrap();
        let loose = parse_function(&format!("  {a} *  x +\t{b} / r ")).unwrap();
        prop_assert_eq!(tight.ast, loose.ast);
    }
}

#[test]
fn textbook_precedence() {
    let at = Point { x: 2.0, y: 3.0, z: 0.0 };
    let cases = [
        ("1 + 2 * 3", 7.0),
        ("2 ^ 3 ^ 2", 512.0),
        ("-2 ^ 2", -4.0),
        ("8 / 4 / 2", 1.0),
        ("10 - 4 - 3", 3.0),
        ("x * y - x", 4.0),
        ("sqrt(abs(-16))", 4.0),
        ("2 ^ -1", 0.5),
    ];
    for (src, want) in cases {
        let v = parse_function(src).unwrap().eval(&at).unwrap();
        assert!((v - want).abs() < 1e-12, "{src} = {v}");
    }
}
