use mirrorbench_core::complexes::{cone, find_quasi_iso, hom_complex, ChainMap, Complex};
use mirrorbench_core::exactlin::{fraction_free_rank, sparse_rank};
use mirrorbench_core::field::{Field, Fp, Q};
use mirrorbench_core::{ExactMatrix, Grading};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

/// `k^c -> k^r -> k^s` with the second map built from the left kernel of the first.
fn three_term<F: Field>(r: usize, c: usize, e: &[i64]) -> Complex<F> {
    let m = ExactMatrix::<F>::from_ints(r, c, e);
    let left = m.transpose().kernel();
    let n = ExactMatrix::from_rows(left.clone(), r);
    let mut dims = vec![(0, c), (1, r)];
    let mut diffs = vec![(0, m)];
    if !left.is_empty() {
        dims.push((2, left.len()));
        diffs.push((1, n));
    }
    Complex::from_parts(Grading::Z, &dims, diffs).unwrap()
}

proptest! {
    #[test]
    fn rank_routes_agree((r, c, e) in matrix()) {
        let m = ExactMatrix::<Q>::from_ints(r, c, &e);
        let rank = m.rank();
        prop_assert_eq!(sparse_rank(&m), rank);
        prop_assert_eq!(fraction_free_rank(&m), rank);
        prop_assert_eq!(m.transpose().rank(), rank);
        prop_assert_eq!(rank + m.kernel().len(), c);
        // reduction mod p can only drop rank
        prop_assert!(ExactMatrix::<Fp<3>>::from_ints(r, c, &e).rank() <= rank);
    }

    #[test]
    fn cohomology_invariants((r, c, e) in matrix(), n in -3i64..=3) {
        let x = three_term::<Q>(r, c, &e);
        let h = x.cohomology();
        let rank = ExactMatrix::<Q>::from_ints(r, c, &e).rank();
        prop_assert_eq!(h.get(0), c - rank);
        prop_assert_eq!(h.get(1), 0);
        prop_assert_eq!(h.euler(), x.euler_char());
        prop_assert_eq!(x.shift(n).cohomology(), h.shifted(n));
        prop_assert!(cone(&ChainMap::identity(&x)).unwrap().is_acyclic());
        prop_assert!(find_quasi_iso(&x, &x.shift(n).shift(-n)).is_some());
        // H^0 of Hom(x, x) contains the identity class whenever x is not acyclic
        let end = hom_complex(&x, &x).unwrap().cohomology();
        prop_assert_eq!(end.get(0) > 0, !h.is_zero());
    }
}
