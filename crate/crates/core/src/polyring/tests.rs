use super::*;
use crate::field::{Fp, Q};

type K = Q;

fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| MultiMonomial::product(n, g)).collect()).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `k[t] --t--> k[t]` in degrees −1, 0.
fn t_complex() -> FreeComplex<K> {
    let r = Ring::polynomial(1);
    FreeComplex::new(
        r,
        Grading::Z,
        Vec::new(),
        [(-1, vec![vec![1]]), (0, vec![vec![0]])].into_iter().collect(),
        [(-1, PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(1, 0))]))].into_iter().collect(),
    )
    .unwrap()
}

#[test]
fn hilbert_examples() {
    assert_eq!(hilbert_function(&ideal(1, &[&[0]]), 3), [1, 0, 0, 0]);
    assert_eq!(hilbert_function(&ideal(3, &[&[0], &[1, 2]]), 3), [1, 2, 2, 2]);
    assert_eq!(hilbert_function(&ideal(3, &[&[0], &[1]]), 3), [1, 1, 1, 1]);
}

#[test]
fn hilbert_of_zero_ideal_is_binomial() {
    for v in 1..=4 {
        let h = hilbert_function(&MonomialIdeal::zero(v), 6);
        for (d, x) in h.iter().enumerate() {
            assert_eq!(*x, binom(d + v - 1, v - 1));
        }
    }
}

#[test]
fn ideal_is_kept_minimal() {
    let i = ideal(2, &[&[0, 1], &[0], &[0, 0, 1]]);
    assert_eq!(i.generators(), &[MultiMonomial(vec![1, 0])]);
}

#[test]
fn slice_of_t_complex() {
    let c = t_complex();
    let h0 = c.slice(&[0]).unwrap().cohomology();
    assert_eq!(h0.get(0), 1);
    assert_eq!(h0.total(), 1);
    assert!(c.slice(&[1]).unwrap().is_acyclic());
    assert!(c.slice(&[5]).unwrap().is_acyclic());
}

#[test]
fn koszul_is_acyclic_off_the_origin() {
    let r = Ring::polynomial(2);
    let k = koszul_complex::<K>(&r, &[0, 1]).unwrap();
    let t = truncated_cohomology(&k, 6).unwrap();
    assert_eq!(t, [((0, 0), 1)].into_iter().collect());
}

#[test]
fn zero_differential_gives_hilbert_function() {
    let r = Ring::polynomial(3);
    let c = FreeComplex::<K>::new(r, Grading::Z, Vec::new(), [(0, vec![vec![0, 0, 0]])].into_iter().collect(), BTreeMap::new()).unwrap();
    let t = truncated_cohomology(&c, 4).unwrap();
    let h = hilbert_function(&MonomialIdeal::zero(3), 4);
    for d in 0..=4 {
        assert_eq!(t.get(&(0, d as i64)).copied().unwrap_or(0), h[d]);
    }
}

#[test]
fn inhomogeneous_entry_rejected() {
    let r = Ring::polynomial(1);
    let bad = FreeComplex::<K>::new(
        r,
        Grading::Z,
        Vec::new(),
        [(-1, vec![vec![2]]), (0, vec![vec![0]])].into_iter().collect(),
        [(-1, PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(1, 0))]))].into_iter().collect(),
    );
    assert!(matches!(bad, Err(Error::NotHomogeneous(_))));
}

#[test]
fn non_complex_rejected() {
    let r = Ring::polynomial(1);
    let t = || PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(1, 0))]);
    let bad = FreeComplex::<K>::new(
        r,
        Grading::Z,
        Vec::new(),
        [(-2, vec![vec![2]]), (-1, vec![vec![1]]), (0, vec![vec![0]])].into_iter().collect(),
        [(-2, t()), (-1, t())].into_iter().collect(),
    );
    assert!(matches!(bad, Err(Error::NotAComplex(_))));
}

#[test]
fn quotient_ring_slices() {
    // k[z1, z2]/(z1 z2): standard monomials of weight (a, b) exist iff a = 0 or b = 0
    let r = Ring::polynomial(2).quotient(&ideal(2, &[&[0, 1]])).unwrap();
    assert_eq!(r.monomials_of_degree(&[2, 0]).len(), 1);
    assert_eq!(r.monomials_of_degree(&[1, 1]).len(), 0);
    assert_eq!(r.monomials_of_degree(&[-1, 0]).len(), 0);
}

#[test]
fn laurent_ring_enumeration() {
    let r = Ring::new(vec![vec![1]], vec![true], MonomialIdeal::zero(1)).unwrap();
    assert_eq!(r.monomials_of_degree(&[-3]), vec![MultiMonomial(vec![-3])]);
    assert!(r.monomials_up_to(3).is_err());
    assert!(Ring::new(vec![vec![1], vec![-1]], vec![false, false], MonomialIdeal::zero(2)).is_err());
}

#[test]
fn restriction_of_origin_skyscraper() {
    let c = t_complex();
    let r = koszul_restrict(&c, &[]).unwrap();
    let h = r.slice(&[0]).unwrap().cohomology();
    assert_eq!((h.get(-1), h.get(0)), (0, 1));
    let h1 = r.slice(&[1]).unwrap().cohomology();
    assert_eq!((h1.get(-1), h1.get(0)), (1, 0));
    // totals: one class in each degree
    let t = truncated_cohomology(&koszul_restrict_tensor(&c, &[]).unwrap(), 4).unwrap();
    assert_eq!(t.values().sum::<usize>(), 2);
    assert_eq!(t.get(&(-1, 1)), Some(&1));
}

#[test]
fn flat_restriction_of_free_module() {
    let r = Ring::polynomial(2);
    let c = FreeComplex::<K>::new(r, Grading::Z, Vec::new(), [(0, vec![vec![0, 0]])].into_iter().collect(), BTreeMap::new()).unwrap();
    let rr = koszul_restrict(&c, &[0]).unwrap();
    assert_eq!(rr.ring().nvars(), 1);
    let t = truncated_cohomology(&rr, 3).unwrap();
    assert_eq!(t, [((0, 0), 1), ((0, 1), 1), ((0, 2), 1), ((0, 3), 1)].into_iter().collect());
}

fn random_koszul(mask: u32, twist: &[i64]) -> FreeComplex<K> {
    let r = Ring::polynomial(3);
    let vars: Vec<usize> = (0..3).filter(|b| mask & (1 << b) != 0).collect();
    koszul_complex::<K>(&r, &vars).unwrap().twist(twist)
}

#[test]
fn two_routes_to_restriction_agree() {
    for mask in 0..8u32 {
        let c = random_koszul(mask, &[0, 0, 0]);
        for keep in [vec![], vec![0], vec![1, 2], vec![0, 2]] {
            let a = koszul_restrict(&c, &keep).unwrap();
            let b = koszul_restrict_tensor(&c, &keep).unwrap();
            for m in b.candidate_degrees(4).unwrap() {
                let ha = a.slice(&m).unwrap().cohomology();
                let hb = b.slice(&m).unwrap().cohomology();
                assert_eq!(ha, hb, "mask {mask} keep {keep:?} at {m:?}");
            }
        }
    }
}

#[test]
fn restriction_is_transitive() {
    let c = random_koszul(0b101, &[0, 1, 0]);
    let a = koszul_restrict(&koszul_restrict(&c, &[0, 1]).unwrap(), &[0]).unwrap();
    let b = koszul_restrict(&c, &[0]).unwrap();
    for m in koszul_restrict_tensor(&c, &[0]).unwrap().candidate_degrees(4).unwrap() {
        assert_eq!(a.slice(&m).unwrap().cohomology(), b.slice(&m).unwrap().cohomology());
    }
}

#[test]
fn hom_of_t_complex_with_itself() {
    // End of k[t]/(t) is k in degree 0 plus k in degree 1 (Ext^1 of k over k[t])
    let c = t_complex();
    let h = hom_free(&c, &c).unwrap();
    let t = truncated_cohomology(&h, 4).unwrap();
    assert_eq!(t.values().sum::<usize>(), 2);
    assert_eq!(t.get(&(0, 0)), Some(&1));
    assert_eq!(t.get(&(1, -1)), Some(&1));
}

#[test]
fn two_periodic_slices() {
    // matrix factorization of z1 z2, with its End complex
    let r = Ring::polynomial(2);
    let w = Poly::monomial(K::one(), MultiMonomial(vec![1, 1]));
    let mf = FreeComplex::curved(
        r,
        Grading::Z2,
        vec![-1, -1],
        [(0, vec![vec![0, 0]]), (1, vec![vec![0, -1]])].into_iter().collect(),
        [
            (0, PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(2, 1))])),
            (1, PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(2, 0))])),
        ]
        .into_iter()
        .collect(),
        w,
    )
    .unwrap();
    assert!(mf.slice(&[0, 0]).is_err());
    let e = hom_free(&mf, &mf).unwrap();
    assert!(e.curvature().is_zero());
    let h = e.slice(&[0, 0]).unwrap().cohomology();
    assert_eq!((h.get(0), h.get(1)), (1, 0));
    let h = e.slice(&[1, 0]).unwrap().cohomology();
    assert_eq!((h.get(0), h.get(1)), (0, 0));
    // the unfurled period agrees
    let a = e.slice(&[0, 0]).unwrap().cohomology();
    let b = e.shift(2).slice(&[-1, -1]).unwrap().cohomology();
    assert_eq!((a.get(0), a.get(1)), (b.get(0), b.get(1)));
}

#[test]
fn substitution_into_laurent_ring() {
    // v ↦ u^{-1} along the overlap
    let r = Ring::new(vec![vec![-1]], vec![false], MonomialIdeal::zero(1)).unwrap();
    let c = FreeComplex::<K>::new(
        r,
        Grading::Z,
        Vec::new(),
        [(-1, vec![vec![-1]]), (0, vec![vec![0]])].into_iter().collect(),
        [(-1, PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::var(1, 0))]))].into_iter().collect(),
    )
    .unwrap();
    let g = Ring::new(vec![vec![1]], vec![true], MonomialIdeal::zero(1)).unwrap();
    let s = c.substitute(&g, &[Some(MultiMonomial(vec![-1]))]).unwrap();
    for m in -3..=3 {
        assert!(s.slice(&[m]).unwrap().is_acyclic());
    }
    assert!(c.substitute(&g, &[Some(MultiMonomial(vec![1]))]).is_err());
}

#[test]
fn finite_field_hilbert_agrees() {
    let c = random_koszul(0b011, &[0, 0, 0]);
    let a = truncated_cohomology(&c, 4).unwrap();
    let cf = {
        let r = Ring::polynomial(3);
        koszul_complex::<Fp<3>>(&r, &[0, 1]).unwrap()
    };
    assert_eq!(a, truncated_cohomology(&cf, 4).unwrap());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn slice_euler_is_conserved(mask in 0u32..8, tw in prop::collection::vec(-1i64..=1, 3), m in prop::collection::vec(-1i64..=3, 3)) {
            let c = random_koszul(mask, &tw);
            let s = c.slice(&m).unwrap();
            let chain: i64 = s.dims().iter().map(|(k, d)| if k.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum();
            prop_assert_eq!(chain, s.cohomology().euler());
        }

        #[test]
        fn slice_commutes_with_shift(mask in 0u32..8, k in -2i64..=2, m in prop::collection::vec(0i64..=2, 3)) {
            let c = random_koszul(mask, &[0, 0, 0]);
            let a = c.shift(k).slice(&m).unwrap().cohomology();
            let b = c.slice(&m).unwrap().cohomology().shifted(k);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn tensor_with_koszul_kills_torsion_free_part(mask in 1u32..8, m in prop::collection::vec(0i64..=2, 3)) {
            // K(x) ⊗ K(y) = K(x, y) up to reordering
            let r = Ring::polynomial(3);
            let vars: Vec<usize> = (0..3).filter(|b| mask & (1 << b) != 0).collect();
            let (a, b) = vars.split_at(1);
            let t = koszul_complex::<K>(&r, a).unwrap().tensor(&koszul_complex::<K>(&r, b).unwrap()).unwrap();
            let k = koszul_complex::<K>(&r, &vars).unwrap();
            prop_assert_eq!(t.slice(&m).unwrap().cohomology(), k.slice(&m).unwrap().cohomology());
        }

        #[test]
        fn hilbert_matches_enumeration(gens in prop::collection::vec(prop::collection::vec(0usize..3, 1..3), 0..3)) {
            let i = MonomialIdeal::new(3, gens.iter().map(|g| MultiMonomial::product(3, g)).collect()).unwrap();
            let h = hilbert_function(&i, 5);
            let r = Ring::polynomial(3).quotient(&i).unwrap();
            for d in 0..=5 {
                let n = r.monomials_up_to(d as i64).unwrap().iter().filter(|m| m.total_degree() == d as i64).count();
                prop_assert_eq!(h[d], n);
            }
        }
    }
}
