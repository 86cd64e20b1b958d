use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use fusionlab::document::corpus;
use fusionlab::lattice::{closure, closure_defect};
use fusionlab::scalar::{is_algebraic_integer, parse_scalar, Expr};
use fusionlab::{Equality, IntegralityTier, Scalar};

const RADICANDS: [i64; 8] = [2, 3, 5, 6, 7, -1, -2, -3];

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn quadratic_in(d: i64) -> impl Strategy<Value = Scalar> {
    (-30i64..30, 1i64..9, -30i64..30, 1i64..9)
        .prop_map(move |(a, ad, b, bd)| Scalar::quadratic(rational(a, ad), rational(b, bd), d))
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(RADICANDS.to_vec()).prop_flat_map(|d| (quadratic_in(d), quadratic_in(d), quadratic_in(d)))
}

fn eq(a: &Scalar, b: &Scalar) -> bool {
    a.compare_eq(b) == Equality::Equal
}

/// Expressions over one radicand, so the exact value stays quadratic.
fn expr() -> impl Strategy<Value = Expr> {
    prop::sample::select(RADICANDS.to_vec()).prop_flat_map(|d| {
        let leaf = prop_oneof![
            (-20i64..20).prop_map(|n| Expr::Int(BigInt::from(n))),
            Just(Expr::Sqrt(d)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            ]
        })
    })
}

/// Integrality of `(p + q sqrt d) / r` for squarefree `d`, by trace and norm.
fn integral_oracle(p: i128, q: i128, r: i128, d: i128) -> bool {
    if q == 0 {
        p % r == 0
    } else {
        (2 * p) % r == 0 && (p * p - d * q * q) % (r * r) == 0
    }
}

proptest! {
    #[test]
    fn field_laws((a, b, c) in triple()) {
        prop_assert!(eq(&a.add_ref(&b), &b.add_ref(&a)));
        prop_assert!(eq(&a.mul_ref(&b), &b.mul_ref(&a)));
        prop_assert!(eq(&a.add_ref(&b).add_ref(&c), &a.add_ref(&b.add_ref(&c))));
        prop_assert!(eq(&a.mul_ref(&b).mul_ref(&c), &a.mul_ref(&b.mul_ref(&c))));
        prop_assert!(eq(&a.mul_ref(&b.add_ref(&c)), &a.mul_ref(&b).add_ref(&a.mul_ref(&c))));
        prop_assert!(eq(&a.sub_ref(&a), &Scalar::zero()));
        if a.is_nonzero() {
            prop_assert!(eq(&a.mul_ref(&a.inv().unwrap()), &Scalar::one()));
            prop_assert!(eq(&b.div_ref(&a).unwrap().mul_ref(&a), &b));
        }
        prop_assert!(eq(&a.conj().conj(), &a));
    }

    #[test]
    fn render_parse_round_trip((a, _, _) in triple()) {
        let text = a.render();
        let back = parse_scalar(&text).unwrap();
        prop_assert!(back.is_exact());
        prop_assert!(eq(&back, &a), "{} -> {}", text, back);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn integrality_matches_trace_norm_oracle(
        p in -200i64..200, q in -200i64..200, r in 1i64..40, d in prop::sample::select(RADICANDS.to_vec()),
    ) {
        let v = Scalar::quadratic(rational(p, r), rational(q, r), d);
        let got = is_algebraic_integer(&v, None).tier;
        let want = integral_oracle(p as i128, q as i128, r as i128, d as i128);
        prop_assert_eq!(got.is_integral(), Some(want), "({} + {} sqrt {}) / {}", p, q, d, r);
        if want {
            prop_assert_eq!(got, IntegralityTier::IntegralExact);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn intervals_contain_exact_values(e in expr()) {
        let exact = e.eval();
        let ball = e.eval_interval(128);
        if let (Ok(exact), Ok(ball)) = (exact, ball) {
            prop_assert!(exact.is_exact());
            prop_assert!(ball.contains(&exact.to_ball(512)), "{} not in {}", exact, ball.render());
        }
    }
}

proptest! {
    #[test]
    fn precision_is_monotone(e in expr()) {
        if let (Ok(lo), Ok(hi)) = (e.eval_interval(96), e.eval_interval(256)) {
            prop_assert!(lo.overlaps(&hi));
            prop_assert!(hi.radius_f64() <= lo.radius_f64());
        }
    }

    #[test]
    fn closure_is_idempotent(ring_index in 0usize..14, mask in 0u32..64) {
        let docs = corpus();
        let ring = docs[ring_index % docs.len()].ring().unwrap();
        let gens: Vec<usize> = (0..ring.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let once = closure(&ring, &gens);
        prop_assert_eq!(closure(&ring, &once), once.clone());
        prop_assert!(closure_defect(&ring, &once).is_none());
        prop_assert!(gens.iter().all(|g| once.contains(g)));
        prop_assert!(once.iter().all(|&x| once.contains(&ring.dual(x))));
    }
}
