use hopfcheck::document::{parse, Structure};
use hopfcheck::hopf::{check_hopf_star, HopfStarAlgebra};
use hopfcheck::linalg::Matrix;
use hopfcheck::Q;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| &Q::from_frac(a, b) + &(&Q::i() * &Q::from_frac(c, d)))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..4, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| Q::from_int(v[i * n + j])))
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn scalars_round_trip_json(a in scalar()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Q>(&s).unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in (1usize..6).prop_flat_map(matrix)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for v in m.kernel().basis() {
            prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn inverse_round_trip(m in (1usize..6).prop_flat_map(matrix)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn solve_finds_preimages(m in (1usize..5).prop_flat_map(matrix), x in prop::collection::vec(-4i64..5, 5)) {
        let x: Vec<Q> = x.iter().take(m.cols()).map(|&k| Q::from_int(k)).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn group_algebras_are_hopf_star(n in 1usize..6) {
        let r = check_hopf_star(&HopfStarAlgebra::cyclic(n));
        prop_assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn coproduct_perturbations_are_caught(n in 2usize..4, row in 0usize..64, col in 0usize..4) {
        let h = HopfStarAlgebra::cyclic(n);
        let (row, col) = (row % (n * n), col % n);
        let x = h.delta.get(row, col) + &Q::one();
        let r = check_hopf_star(&h.with_delta_entry(row, col, x));
        prop_assert!(!r.failures().is_empty());
    }

    #[test]
    fn documents_round_trip(n in 1usize..6) {
        let s = Structure::Hopf(HopfStarAlgebra::cyclic(n));
        let text = s.to_json();
        prop_assert_eq!(parse(&text).unwrap().to_json(), text);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    for text in ["", "{", "{\"schema_version\":1}", "{\"schema_version\":2,\"document\":{\"kind\":\"algebra\"}}", "[1,2]"] {
        assert!(parse(text).is_err(), "{text:?} parsed");
    }
}
