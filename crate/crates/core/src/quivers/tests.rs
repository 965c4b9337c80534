use super::*;
use crate::field::{Fp, Q};

type K = Q;

fn proj(n: usize, a: usize) -> PerfComplex<K> {
    PerfComplex::projective(n, a).unwrap()
}

fn sky(n: usize, a: usize) -> PerfComplex<K> {
    PerfComplex::skyscraper(n, a).unwrap()
}

fn inj(n: usize, a: usize) -> PerfComplex<K> {
    PerfComplex::injective(n, a).unwrap()
}

fn iso(x: &PerfComplex<K>, y: &PerfComplex<K>) -> bool {
    perf_find_quasi_iso(x, y).is_some()
}

#[test]
fn projective_homs_follow_paths() {
    for n in 1..=4 {
        for a in 1..=n {
            for b in 1..=n {
                let h = quiver_hom(&proj(n, b), &proj(n, a)).unwrap().cohomology();
                let want = if b >= a { 1 } else { 0 };
                assert_eq!(h.get(0), want, "Hom(P{b}, P{a}) in A_{n}");
                assert_eq!(h.total(), want);
            }
        }
    }
}

#[test]
fn named_objects_have_expected_supports() {
    let n = 4;
    for a in 1..=n {
        let s = sky(n, a).vertex_cohomology();
        let i = inj(n, a).vertex_cohomology();
        for v in 1..=n {
            assert_eq!(s[v - 1].get(0), usize::from(v == a));
            assert_eq!(i[v - 1].get(0), usize::from(v <= a));
            assert_eq!(s[v - 1].total(), usize::from(v == a));
        }
    }
}

#[test]
fn invalid_path_is_rejected() {
    let r = PerfComplex::<K>::new(
        3,
        Grading::Z,
        [(-1, vec![1]), (0, vec![2])].into_iter().collect(),
        [(-1, ExactMatrix::identity(1))].into_iter().collect(),
    );
    assert!(r.is_err());
    assert!(matches!(PerfComplex::<K>::projective(3, 4), Err(Error::VertexOutOfRange { .. })));
}

#[test]
fn skyscraper_ext_table() {
    // Ext^1(k_a, k_{a+1}) = k along each arrow, nothing else off the diagonal
    let n = 3;
    for a in 1..=n {
        for b in 1..=n {
            let h = quiver_hom(&sky(n, a), &sky(n, b)).unwrap().cohomology();
            assert_eq!(h.get(0), usize::from(a == b));
            assert_eq!(h.get(1), usize::from(b == a + 1));
            assert_eq!(h.total(), usize::from(a == b) + usize::from(b == a + 1));
        }
    }
}

#[test]
fn tau_moves_skyscrapers_along_the_cycle() {
    for n in 1..=4 {
        let t = tau::<K>(n);
        for a in 1..n {
            assert!(iso(&t.apply(&sky(n, a)).unwrap(), &sky(n, a + 1)));
        }
        assert!(iso(&t.apply(&sky(n, n)).unwrap(), &proj(n, 1).shift(-1)));
        assert!(iso(&t.apply(&proj(n, 1).shift(1)).unwrap(), &sky(n, 1)));
    }
}

#[test]
fn tau_inverse_undoes_tau() {
    for n in 1..=4 {
        let t = tau::<K>(n);
        let ti = tau_inverse::<K>(n);
        for (name, x) in all_named::<K>(n) {
            let y = ti.apply(&t.apply(&x).unwrap()).unwrap();
            assert!(iso(&y, &x), "τ⁻¹τ {name} in A_{n}");
            let z = t.apply(&ti.apply(&x).unwrap()).unwrap();
            assert!(iso(&z, &x), "ττ⁻¹ {name} in A_{n}");
        }
    }
}

#[test]
fn full_turn_is_a_double_shift() {
    for n in 1..=3 {
        let t = tau::<K>(n);
        let ti = tau_inverse::<K>(n);
        for (name, x) in all_named::<K>(n) {
            let mut y = x.clone();
            let mut z = x.clone();
            for _ in 0..=n {
                y = t.apply(&y).unwrap();
                z = ti.apply(&z).unwrap();
            }
            assert!(iso(&y, &x.shift(-2)), "τ^m {name}");
            assert!(iso(&z, &x.shift(2)), "τ^-m {name}");
            assert!(iso(&y.fold(), &x.fold()));
        }
    }
}

#[test]
fn serre_is_shifted_tau() {
    for n in 1..=4 {
        let s = serre::<K>(n);
        let t = tau::<K>(n);
        for (_, x) in all_named::<K>(n) {
            assert!(iso(&s.apply(&x).unwrap(), &t.apply(&x).unwrap().shift(1)));
        }
        for a in 1..=n {
            assert!(iso(&s.apply(&proj(n, a)).unwrap(), &inj(n, a)));
        }
    }
}

#[test]
fn functor_composition_matches_iterated_application() {
    let n = 3;
    let t = tau::<K>(n);
    let s = serre::<K>(n);
    let ts = t.then(&s).unwrap();
    for (_, x) in all_named::<K>(n) {
        let a = ts.apply(&x).unwrap();
        let b = s.apply(&t.apply(&x).unwrap()).unwrap();
        assert!(iso(&a, &b));
    }
}

#[test]
fn apply_map_preserves_composition_and_chain_condition() {
    let n = 3;
    let t = tau::<K>(n);
    let x = sky(n, 1);
    let y = sky(n, 2);
    let h = PerfHom::new(&x, &y).unwrap();
    for f in h.cocycles(1) {
        let g = t.apply_map(&f).unwrap();
        assert!(g.map.commutes());
        assert_eq!(g.degree(), 1);
    }
    let p = PerfMap::new(proj(n, 3), proj(n, 1), 0, [(0, ExactMatrix::identity(1))].into_iter().collect()).unwrap();
    let q = PerfMap::new(proj(n, 1), proj(n, 1), 0, [(0, ExactMatrix::identity(1))].into_iter().collect()).unwrap();
    let lhs = t.apply_map(&p.then(&q).unwrap()).unwrap();
    let rhs = t.apply_map(&p).unwrap().then(&t.apply_map(&q).unwrap()).unwrap();
    assert_eq!(lhs.map, rhs.map);
}

#[test]
fn restriction_at_positions() {
    let n = 3;
    let one = GradedSpace::from_pairs(Grading::Z, &[(0, 1)]);
    assert_eq!(subcycle_restrict(&proj(n, 1).shift(1), 1).unwrap().cohomology(), one);
    for p in 2..=n + 1 {
        assert_eq!(subcycle_restrict(&sky(n, p - 1), p).unwrap().cohomology(), one);
        // E_p is the image of k_1 under τ^{p-1}, and I_{p-1} also restricts to k
        assert_eq!(subcycle_restrict(&inj(n, p - 1), p).unwrap().cohomology(), one, "I_{} at {p}", p - 1);
    }
    assert!(subcycle_restrict(&sky(n, 1), 5).is_err());
}

#[test]
fn extension_is_left_adjoint_to_restriction() {
    let n = 3;
    let v = Complex::<K>::from_parts(Grading::Z, &[(0, 2), (1, 1)], Vec::new()).unwrap();
    for p in 1..=n + 1 {
        let ev = subcycle_extend(&v, LinearQuiver { n }, p).unwrap();
        for (_, x) in all_named::<K>(n) {
            let lhs = quiver_hom(&ev, &x).unwrap().cohomology();
            let r = subcycle_restrict(&x, p).unwrap();
            let rhs = crate::complexes::hom_complex(&v, &r).unwrap().cohomology();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn corepresented_functor_agrees_with_direct_hom() {
    let n = 3;
    for p in 1..=n + 1 {
        let e = position_object::<K>(n, p).unwrap();
        let f = corepresented(&e).unwrap();
        for (_, x) in all_named::<K>(n) {
            let a = f.apply(&x).unwrap().to_field().cohomology();
            let b = subcycle_restrict(&x, p).unwrap().cohomology();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn duality_and_euler_form() {
    for n in 1..=5 {
        let r = hom_pairing_duality_report::<K>(LinearQuiver { n });
        assert!(r.holds, "{r:?}");
        assert_eq!(r.pairs_checked, 9 * n * n);
        assert!(hom_pairing_duality_check::<Fp<7>>(LinearQuiver { n }));
    }
    let e = euler_matrix::<K>(LinearQuiver { n: 3 });
    assert_eq!(e, ExactMatrix::from_ints(3, 3, &[1, -1, 0, 0, 1, -1, 0, 0, 1]));
}

#[test]
fn folded_objects_and_cones() {
    let n = 2;
    let f = PerfMap::new(proj(n, 2), proj(n, 1), 0, [(0, ExactMatrix::identity(1))].into_iter().collect()).unwrap();
    assert!(iso(&f.cone().unwrap(), &sky(n, 1)));
    let x = sky(n, 1).fold();
    assert!(iso(&x, &x.shift(2)));
    assert!(!iso(&x, &x.shift(1)));
    assert_eq!(parse_object_name("k2"), Some((ObjectKind::Skyscraper, 2)));
    assert_eq!(object_name(ObjectKind::Injective, 3), "I3");
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn object(n: usize) -> impl Strategy<Value = PerfComplex<K>> {
        (prop::collection::vec((0usize..3, 1usize..=n, -2i64..=2), 1..3)).prop_map(move |parts| {
            let mut acc: Option<PerfComplex<K>> = None;
            for (kind, a, s) in parts {
                let kind = [ObjectKind::Projective, ObjectKind::Skyscraper, ObjectKind::Injective][kind];
                let x = named_object::<K>(LinearQuiver { n }, kind, a).unwrap().shift(s);
                acc = Some(match acc {
                    None => x,
                    Some(y) => y.direct_sum(&x).unwrap(),
                });
            }
            acc.unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tau_preserves_hom_dimensions(x in object(3), y in object(3)) {
            let t = tau::<K>(3);
            let a = quiver_hom(&x, &y).unwrap().cohomology();
            let b = quiver_hom(&t.apply(&x).unwrap(), &t.apply(&y).unwrap()).unwrap().cohomology();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn serre_duality_on_sums(x in object(3), y in object(3)) {
            let s = serre::<K>(3);
            let a = quiver_hom(&x, &y).unwrap().cohomology();
            let b = quiver_hom(&y, &s.apply(&x).unwrap()).unwrap().cohomology();
            for (d, v) in a.dims() {
                prop_assert_eq!(*v, b.get(-*d));
            }
            prop_assert_eq!(a.total(), b.total());
        }

        #[test]
        fn shift_commutes_with_tau(x in object(2), k in -2i64..=2) {
            let t = tau::<K>(2);
            let a = t.apply(&x.shift(k)).unwrap();
            let b = t.apply(&x).unwrap().shift(k);
            prop_assert!(perf_find_quasi_iso(&a, &b).is_some());
        }
    }
}

#[test]
fn mutation_follows_the_rotation_rule() {
    for n in 1..=4 {
        for a in 2..=n {
            assert!(iso(&cyclic_rotate(&sky(n, a)).unwrap(), &sky(n, a - 1)));
        }
        assert!(iso(&cyclic_rotate(&sky(n, 1)).unwrap(), &proj(n, 1).shift(1)));
        for (name, x) in all_named::<K>(n) {
            let mut y = x.clone();
            for _ in 0..=n {
                y = cyclic_rotate(&y).unwrap();
            }
            assert!(iso(&y, &x.shift(2)), "R^m {name} in A_{n}");
            assert!(iso(&cyclic_rotate_inverse(&cyclic_rotate(&x).unwrap()).unwrap(), &x));
        }
    }
}
