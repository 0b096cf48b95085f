use concordant::exactnum::matrix::inner;
use concordant::exactnum::rational::{rat, ratio};
use concordant::exactnum::{
    bareiss_eliminate, isolate_real_roots, rational_gram_schmidt, AlgebraicNumber, BigRational, ExactMatrix, Field,
    FieldElement, GaussianRational as G, IntPolynomial, NumberField,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn gmatrix(rows: usize, cols: usize, v: &[(i64, i64)]) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| {
        let (a, b) = v[r * cols + c];
        G::from_ints(a, b)
    })
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

fn system() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| {
        // Sparse small entries so rank deficiency is common.
        prop::collection::vec(prop_oneof![3 => Just((0i64, 0i64)), 2 => (-3i64..=3, -3i64..=3)], r * c)
            .prop_map(move |v| gmatrix(r, c, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_null_space_is_exact(a in system()) {
        let e = bareiss_eliminate(&a);
        for v in &e.null_space {
            prop_assert!(a.mul_vec(v).iter().all(G::is_zero));
            prop_assert!(v.iter().all(G::is_gaussian_integer));
        }
        // Rank-nullity against plain rational row reduction.
        prop_assert_eq!(e.pivot_columns.len(), a.rank());
        prop_assert_eq!(e.null_space.len() + a.rank(), a.cols());
        prop_assert!(e.echelon.entries().iter().all(G::is_gaussian_integer));
    }

    #[test]
    fn root_isolation_matches_planted_roots(
        lin in prop::collection::btree_set((-20i64..=20, 1i64..=5), 0..4),
        surds in prop::collection::btree_set(2i64..=30, 0..3),
        pos in prop::collection::vec(1i64..=9, 0..2),
    ) {
        // Distinct linear factors b x - a, x^2 - s for non-squares s, and
        // x^2 + c with no real roots.
        let mut roots: Vec<f64> = Vec::new();
        let mut p = IntPolynomial::from_i64(&[1]);
        let mut seen: Vec<BigRational> = Vec::new();
        for &(a, b) in &lin {
            let r = ratio(a, b);
            if seen.contains(&r) {
                continue;
            }
            seen.push(r);
            p = p.mul(&IntPolynomial::from_i64(&[-a, b]));
            roots.push(a as f64 / b as f64);
        }
        for &s in &surds {
            let q = (s as f64).sqrt().round() as i64;
            if q * q == s {
                continue;
            }
            p = p.mul(&IntPolynomial::from_i64(&[-s, 0, 1]));
            roots.push((s as f64).sqrt());
            roots.push(-(s as f64).sqrt());
        }
        for &c in &pos {
            p = p.mul(&IntPolynomial::from_i64(&[c, 0, 1]));
        }
        prop_assume!(p.degree() <= 8);
        roots.sort_by(f64::total_cmp);
        let mut found = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (alpha, want) in found.iter_mut().zip(&roots) {
            alpha.refine_to(&ratio(1, 1 << 20));
            let (lo, hi) = alpha.enclosure();
            prop_assert!(to_f64(lo) - 1e-9 <= *want && *want <= to_f64(hi) + 1e-9);
        }
    }

    #[test]
    fn quadratic_field_laws(
        s in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10]),
        v in prop::collection::vec((-6i64..=6, -6i64..=6), 6),
    ) {
        let k = NumberField::new(&IntPolynomial::from_i64(&[-s, 0, 1]));
        let x = FieldElement::generator(&k);
        let elt = |(a, b): (i64, i64), (c, d): (i64, i64)| {
            FieldElement::constant(&k, G::from_ints(a, b)).plus(&x.times(&FieldElement::constant(&k, G::from_ints(c, d))))
        };
        let (a, b, c) = (elt(v[0], v[1]), elt(v[2], v[3]), elt(v[4], v[5]));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&b).minus(&b), a.clone());
        prop_assert_eq!(x.times(&x), FieldElement::constant(&k, G::from_int(s)));
        if !a.is_zero() {
            prop_assert!(a.times(&a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn algebraic_arithmetic_agrees_with_floats(a in 2i64..=20, b in 2i64..=20, m in -5i64..=5) {
        let sqrt = |n: i64| {
            AlgebraicNumber::from_interval(&IntPolynomial::from_i64(&[-n, 0, 1]), rat(0), rat(n)).unwrap()
        };
        let (x, y) = (sqrt(a), sqrt(b));
        let k = AlgebraicNumber::from_integer(m);
        let mut sum = x.add(&y).mul(&k);
        sum.refine_to(&ratio(1, 1 << 24));
        let want = ((a as f64).sqrt() + (b as f64).sqrt()) * m as f64;
        let (lo, hi) = sum.enclosure();
        prop_assert!(to_f64(lo) - 1e-6 <= want && want <= to_f64(hi) + 1e-6);
        // sqrt(a) * sqrt(a) is exactly a.
        prop_assert_eq!(x.mul(&x), AlgebraicNumber::from_integer(a));
    }

    #[test]
    fn gram_schmidt_is_orthogonal_and_spans(v in prop::collection::vec((-4i64..=4, -4i64..=4), 12)) {
        let vecs: Vec<Vec<G>> = v.chunks(3).map(|c| c.iter().map(|&(a, b)| G::from_ints(a, b)).collect()).collect();
        let out = rational_gram_schmidt(&vecs);
        let input_rank = ExactMatrix::from_rows(vecs.clone()).rank();
        prop_assert_eq!(out.len(), input_rank);
        for i in 0..out.len() {
            for j in 0..i {
                prop_assert!(inner(&out[i], &out[j]).is_zero());
            }
        }
        let mut stacked = vecs.clone();
        stacked.extend(out.iter().cloned());
        prop_assert_eq!(ExactMatrix::from_rows(stacked).rank(), input_rank);
    }
}
