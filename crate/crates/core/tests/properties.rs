use num_bigint::BigInt;
use proptest::prelude::*;

use shapdet::exact::{binomial, CycNumber, ExactMatrix, Rational};
use shapdet::gram::{FormContext, FormKind, YMonomial};
use shapdet::partitions::enumerate_partitions;
use shapdet::series::{ab_from_coloring, ab_series, cartan_series, spin_cartan_series};
use shapdet::AffineType;

fn cyc(order: u8, a: i64, b: i64) -> CycNumber {
    let b = if order == 1 { 0 } else { b };
    CycNumber::new(
        order,
        Rational::from_integer(a.into()),
        Rational::from_integer(b.into()),
    )
    .unwrap()
}

fn matrix(order: u8, n: usize, entries: &[(i64, i64)]) -> ExactMatrix {
    ExactMatrix::from_fn(order, n, n, |i, j| {
        let (a, b) = entries[i * n + j];
        cyc(order, a, b)
    })
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &ExactMatrix) -> CycNumber {
    let n = m.rows();
    if n == 0 {
        return CycNumber::one(m.order());
    }
    let mut acc = CycNumber::zero(m.order());
    for j in 0..n {
        let minor = ExactMatrix::from_fn(m.order(), n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j) * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn square(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (prop_oneof![Just(1u8), Just(3u8)], 1..=max).prop_flat_map(|(order, n)| {
        proptest::collection::vec((-4i64..=4, -3i64..=3), n * n)
            .prop_map(move |e| matrix(order, n, &e))
    })
}

fn ty(s: &str) -> AffineType {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in square(4)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn inverse_is_two_sided(m in square(4)) {
        match m.invert() {
            Ok(inv) => {
                let id = ExactMatrix::identity(m.order(), m.rows());
                prop_assert_eq!(m.mul(&inv).unwrap(), id.clone());
                prop_assert_eq!(inv.mul(&m).unwrap(), id);
            }
            Err(_) => prop_assert!(m.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn sym_power_low_degrees(m in square(3)) {
        prop_assert_eq!(m.sym_power(1).unwrap(), m.clone());
        prop_assert_eq!(m.sym_power(0).unwrap(), ExactMatrix::identity(m.order(), 1));
    }

    #[test]
    fn sym_power_determinant(m in square(3), k in 0usize..=4) {
        let n = m.rows() as u64;
        let e = u64::try_from(binomial(n + k as u64 - 1, n)).unwrap();
        prop_assert_eq!(m.sym_power(k).unwrap().det().unwrap(), m.det().unwrap().pow(e));
    }

    #[test]
    fn sym_power_is_multiplicative(
        n in 1usize..=3,
        k in 0usize..=3,
        a in proptest::collection::vec((-3i64..=3, -2i64..=2), 9),
        b in proptest::collection::vec((-3i64..=3, -2i64..=2), 9),
    ) {
        let (a, b) = (matrix(3, n, &a), matrix(3, n, &b));
        let lhs = a.mul(&b).unwrap().sym_power(k).unwrap();
        let rhs = a.sym_power(k).unwrap().mul(&b.sym_power(k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_determinant(
        order in prop_oneof![Just(1u8), Just(3u8)],
        n in 1usize..=3,
        m in 1usize..=3,
        a in proptest::collection::vec((-3i64..=3, -2i64..=2), 9),
        b in proptest::collection::vec((-3i64..=3, -2i64..=2), 9),
    ) {
        let (a, b) = (matrix(order, n, &a), matrix(order, m, &b));
        let lhs = a.kron(&b).unwrap().det().unwrap();
        let rhs = &a.det().unwrap().pow(m as u64) * &b.det().unwrap().pow(n as u64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn memo_matches_direct_recursion(
        s in prop::sample::select(vec!["A2^1", "A5^2", "E6^2", "D4^3", "D3^2"]),
        d in 1u32..=4,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let ctx = FormContext::new(&ty(s));
        let basis = ctx.basis(d);
        let u = YMonomial::from(&basis[i.index(basis.len())]);
        let v = YMonomial::from(&basis[j.index(basis.len())]);
        for kind in [FormKind::Shapovalov, FormKind::Contravariant] {
            prop_assert_eq!(ctx.pair(kind, &u, &v), ctx.pair_unmemoized(kind, &u, &v));
        }
    }
}

#[test]
fn forms_are_symmetric_on_monomials() {
    for s in ["A2^1", "A4^2", "E6^2", "D4^3"] {
        let ctx = FormContext::new(&ty(s));
        let basis = ctx.basis(3);
        for u in &basis {
            for v in &basis {
                let (u, v) = (YMonomial::from(u), YMonomial::from(v));
                for kind in [FormKind::Shapovalov, FormKind::Contravariant] {
                    assert_eq!(ctx.pair(kind, &u, &v), ctx.pair(kind, &v, &u), "{s}");
                }
            }
        }
    }
}

#[test]
fn corollary_series_match_type_series() {
    for p in [2u32, 3, 5, 7] {
        let (a, _) = ab_series(&ty(&format!("A{}^1", p - 1)), 20);
        assert_eq!(cartan_series(p, 20).unwrap(), a);
    }
    for p in [3u32, 5, 7] {
        let (_, b) = ab_series(&ty(&format!("A{}^2", p - 1)), 20);
        assert_eq!(spin_cartan_series(p, 20).unwrap(), b);
    }
}

#[test]
fn coloring_derivatives_reproduce_exponent_series() {
    for s in shapdet::ROSTER {
        let t = ty(s);
        assert_eq!(ab_from_coloring(&t, 15).unwrap(), ab_series(&t, 15), "{s}");
    }
}

#[test]
fn untwisted_b_vanishes() {
    for s in ["A1^1", "A2^1", "A4^1", "D4^1", "E6^1"] {
        let t = ty(s);
        for d in 0..=8 {
            for lambda in enumerate_partitions(d) {
                let (_, b) = shapdet::partitions::exponents(&t, &lambda).unwrap();
                assert_eq!(b, BigInt::from(0), "{s} {lambda}");
            }
        }
    }
}
