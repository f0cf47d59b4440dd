use bracket_core::group::WeylGroup;
use bracket_core::nc::{twisted_derivation, NcExpr};
use bracket_core::poly::parse_poly;
use bracket_core::{CoxeterType, MultiPoly, Scalar};
use proptest::prelude::*;

fn word_expr(word: &[u32], c: i64) -> NcExpr {
    NcExpr::monomial(word.to_vec(), Scalar::from_int(c))
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-3i64..=3, 0u16..3, 0u16..3, 0u16..2), 0..5).prop_map(|terms| {
        let mut p = MultiPoly::zero(3);
        for (c, a, b, d) in terms {
            p.add_term(bracket_core::Monomial::from_exps(&[a, b, d]), Scalar::from_int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_leibniz_rule_b3(k in 0usize..9, x in prop::collection::vec(0u32..9, 1..4), y in prop::collection::vec(0u32..9, 1..4), c in 1i64..4) {
        let g = WeylGroup::build(CoxeterType::b(3)).unwrap();
        let (x, y) = (word_expr(&x, c), word_expr(&y, 1));
        let s = g.reflections[k];
        let lhs = twisted_derivation(&g, k, &(&x * &y));
        let rhs = &(&twisted_derivation(&g, k, &x) * &y) + &(&x.act(&g, s) * &twisted_derivation(&g, k, &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn printed_form_parses_back(a in poly_strategy()) {
        let names = ["x", "y", "z"];
        let text = a.format_with(&names);
        prop_assert_eq!(parse_poly(&text, &names).unwrap(), a);
    }

    #[test]
    fn group_multiplication_matches_words(u in 0usize..48, v in 0usize..48) {
        let g = WeylGroup::build(CoxeterType::b(3)).unwrap();
        let uv = g.mul(u, v);
        let mut word = g.word(u).to_vec();
        word.extend_from_slice(g.word(v));
        prop_assert_eq!(g.from_word(&word), uv);
        prop_assert!(g.length(uv) <= g.length(u) + g.length(v));
    }
}

#[test]
fn group_orders() {
    for (t, n) in [("A3", 24), ("B3", 48), ("D4", 192), ("G2", 12), ("I2(5)", 10)] {
        let g = WeylGroup::build(t.parse().unwrap()).unwrap();
        assert_eq!(g.order(), n, "{t}");
        assert_eq!(g.length(g.longest()), g.rs.num_positive(), "{t}");
    }
}

#[test]
fn unsupported_types_are_rejected() {
    assert!("E6".parse::<CoxeterType>().is_err());
    assert!("I2(1)".parse::<CoxeterType>().map(WeylGroup::build).map_or(true, |r| r.is_err()));
}
