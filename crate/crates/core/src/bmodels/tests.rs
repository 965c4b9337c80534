use super::*;
use crate::field::{Field, Fp, Q};
use crate::polyring::{hilbert_function, MonomialIdeal, MultiMonomial, Poly, PolyMatrix};
use alloc::vec;
use alloc::vec::Vec;

#[test]
fn generator_factorizes_the_potential() {
    let m = mf_generator::<Q>(1, 1).unwrap();
    let z = |i| Poly::var(2, i);
    assert_eq!(m.d0().get(0, 0), z(1));
    assert_eq!(m.d1().get(0, 0), z(0));
    let w = PolyMatrix::scalar(1, &z(0).mul(&z(1)));
    assert_eq!(m.d1().mul(&m.d0()).unwrap(), w);
    assert_eq!(m.d0().mul(&m.d1()).unwrap(), w);
    let m = mf_generator::<Q>(2, 3).unwrap();
    assert_eq!(m.d0().get(0, 0), Poly::monomial(Q::one(), MultiMonomial(vec![1, 1, 0])));
    assert_eq!(m.d1().get(0, 0), Poly::var(3, 2));
    assert!(mf_generator::<Q>(2, 4).is_err());
}

#[test]
fn factorization_must_square_to_the_potential() {
    let d0 = PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::<Q>::var(2, 1))]);
    let d1 = PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::<Q>::var(2, 1))]);
    assert!(MatrixFactorization::new(1, vec![vec![0, 0]], vec![vec![0, -1]], d0, d1).is_err());
}

#[test]
fn mf_tables_small_cases() {
    let e1 = mf_generator::<Q>(1, 1).unwrap();
    let e2 = mf_generator::<Q>(1, 2).unwrap();
    let t = mf_hom_cohomology(&e1, &e1, 4).unwrap();
    assert_eq!(t.even, vec![1, 0, 0, 0, 0]);
    assert_eq!(t.odd, vec![0; 5]);
    let t = mf_hom_cohomology(&e1, &e2, 4).unwrap();
    assert_eq!(t.odd, vec![1, 0, 0, 0, 0]);
    assert_eq!(t.even, vec![0; 5]);
    let f = mf_generator::<Q>(2, 1).unwrap();
    let t = mf_hom_cohomology(&f, &f, 3).unwrap();
    assert_eq!(t.even, vec![1, 2, 2, 2]);
    assert_eq!(t.odd, vec![0; 4]);
    // same numbers from the monomial count
    let h = hilbert_function(&MonomialIdeal::new(3, vec![MultiMonomial(vec![1, 0, 0]), MultiMonomial(vec![0, 1, 1])]).unwrap(), 3);
    assert_eq!(h, t.even);
}

#[test]
fn mf_tables_match_closed_form_three_variables() {
    for a in 1..=3 {
        for b in 1..=3 {
            let t = mf_hom_cohomology(&mf_generator::<Fp<101>>(2, a).unwrap(), &mf_generator(2, b).unwrap(), 5).unwrap();
            assert_eq!(t, mf_expected(2, a, b, 5).unwrap(), "pair ({a},{b})");
        }
    }
}

#[test]
fn resolution_is_exact_below_the_top() {
    let g = CoherentGenerator::<Q>::hyperplane(3, 2, 5).unwrap();
    for m in [vec![0, 0, 0], vec![1, 1, 1], vec![2, 1, 1], vec![0, 2, 0], vec![2, 2, 2]] {
        let h = g.resolution.slice(&m).unwrap().cohomology();
        for c in -4..0 {
            assert_eq!(h.get(c), 0, "degree {c} at {m:?}");
        }
    }
    let o = CoherentGenerator::<Q>::new(2, CohKind::Origin, 5).unwrap();
    for m in [vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 3]] {
        let h = o.resolution.slice(&m).unwrap().cohomology();
        for c in -4..0 {
            assert_eq!(h.get(c), 0, "origin, degree {c} at {m:?}");
        }
        assert_eq!(h.get(0), usize::from(m == vec![0, 0]));
    }
}

#[test]
fn resolution_is_periodic_in_the_potential() {
    let g = CoherentGenerator::<Q>::hyperplane(2, 1, 7).unwrap();
    let a = g.resolution.slice(&[2, 2]).unwrap();
    let b = g.resolution.slice(&[3, 3]).unwrap();
    assert_eq!(a.cohomology().get(-2), b.cohomology().get(-4));
    assert_eq!(g.resolution.shifts_at(-4)[0], vec![2, 2]);
    assert_eq!(g.resolution.shifts_at(-3)[0], vec![2, 1]);
}

#[test]
fn coh_tables_small_cases() {
    let t = coh_ext_table::<Q>(2, 1, 1, 3, 2).unwrap();
    assert_eq!(t.row(0), &[1, 1, 1, 1]);
    assert_eq!(t.row(2), &[1, 0, 0, 0]);
    assert_eq!(t.row(4), &[1, 0, 0, 0]);
    for c in [1, 3, 5] {
        assert_eq!(t.row(c), &[0, 0, 0, 0]);
    }
    let t = coh_ext_table::<Q>(2, 1, 2, 3, 2).unwrap();
    for c in [1, 3, 5] {
        assert_eq!(t.row(c), &[1, 0, 0, 0]);
    }
    for c in [0, 2, 4] {
        assert_eq!(t.row(c), &[0, 0, 0, 0]);
    }
    let t = coh_ext_table::<Q>(3, 1, 1, 2, 1).unwrap();
    assert_eq!(t.row(0), &[1, 2, 3]);
    assert_eq!(t.row(2), &[1, 2, 2]);
    assert_eq!(t, coh_expected(3, 1, 1, 2, 1).unwrap());
}

#[test]
fn truncation_is_enforced() {
    let g = CoherentGenerator::<Q>::hyperplane(2, 1, 4).unwrap();
    assert!(matches!(ext_table(&g, &g, 4, 2), Err(crate::Error::TruncationTooSmall { .. })));
    assert!(ext_table(&g, &g, 3, 2).is_ok());
}

#[test]
fn origin_self_ext_on_the_node() {
    // k over k[x, y]/(xy): Ext^i has dimension 1, 2, 2, 2, ...
    let o = CoherentGenerator::<Q>::new(2, CohKind::Origin, 6).unwrap();
    let t = ext_table(&o, &o, 5, 12).unwrap();
    let totals: Vec<usize> = (0..=5).map(|c| t.row(c).iter().sum()).collect();
    assert_eq!(totals, vec![1, 2, 2, 2, 2, 2]);
}

#[test]
fn folding_small_cases() {
    assert!(fold_compare::<Q>(2, 1, 4).unwrap());
    assert!(fold_compare::<Q>(3, 2, 3).unwrap());
    assert!(fold_compare_pair::<Q>(2, 1, 2, 4).unwrap());
    let (f, m) = fold_tables::<Q>(2, 1, 1, 4).unwrap();
    assert_eq!(f.even, vec![1, 2, 2, 2, 2]);
    assert_eq!(f, m);
}

#[test]
fn descent_over_components_matches_direct_hom() {
    for (n, a, b) in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 2, 3)] {
        let g1 = CoherentGenerator::<Q>::hyperplane(n, a, 5).unwrap();
        let g2 = CoherentGenerator::<Q>::hyperplane(n, b, 5).unwrap();
        let cmp = cech_descent_check(&g1.resolution, &g2.module, 3).unwrap();
        assert!(!cmp.direct.is_empty());
        assert!(cmp.agree(), "n={n} a={a} b={b}");
    }
}

#[test]
fn descent_object_certificates() {
    let g = CoherentGenerator::<Q>::hyperplane(3, 1, 4).unwrap();
    let subsets: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 2]];
    let d = DescentObject::from_global(&g.resolution, &subsets).unwrap();
    d.verify().unwrap();
}

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

#[test]
fn torsion_ext_on_the_line() {
    let p = TorsionModule::point(q(2));
    let r = TorsionModule::point(q(3));
    assert_eq!(p.ext(&p).unwrap().dims().values().copied().collect::<Vec<_>>(), vec![1, 1]);
    assert!(p.ext(&r).unwrap().is_zero());
    let thick = TorsionModule::<Q>::new(2, vec![crate::ExactMatrix::from_ints(2, 2, &[0, 0, 1, 0])]).unwrap();
    let e = thick.ext(&thick).unwrap();
    assert_eq!((e.get(0), e.get(1)), (2, 2));
    let f = p.restrict_to_origin().unwrap();
    assert!(f.is_acyclic());
    let z = TorsionModule::point(q(0));
    assert_eq!(z.restrict_to_origin().unwrap().cohomology().total(), 2);
}

#[test]
fn kronecker_reps_match_the_projective_line() {
    let o = KroneckerRep::<Q>::simple_source();
    let o1 = KroneckerRep::<Q>::injective_sink();
    assert_eq!(o.hom(&o).unwrap().get(0), 1);
    assert_eq!(o.hom(&o1).unwrap().get(0), 0);
    assert_eq!(o1.hom(&o).unwrap().get(0), 2);
    for (a, b) in [(&o, &o), (&o, &o1), (&o1, &o), (&o1, &o1)] {
        let h = a.hom(b).unwrap();
        assert_eq!(h.get(0) as i64 - h.get(1) as i64, a.euler_form(b));
    }
    for pole in [Pole::Plus, Pole::Minus] {
        let e = o.eta(pole).unwrap().cohomology();
        assert_eq!((e.get(0), e.get(1)), (1, 0));
        let e = o1.eta(pole).unwrap().cohomology();
        assert_eq!((e.get(0), e.get(1)), (1, 0));
    }
}

fn skyscraper_model() -> KroneckerModel<Q> {
    let k = crate::complexes::Complex::<Q>::stalk(crate::Grading::Z, 0, 1);
    let z = crate::complexes::Complex::<Q>::zero(crate::Grading::Z);
    let f = crate::complexes::ChainMap::zero(&k, &z, 0);
    let w0 = alloc::collections::BTreeMap::from([(0, vec![vec![0]])]);
    KroneckerModel::new(
        vec![0],
        vec![vec![1]],
        vec![k, z],
        vec![w0, alloc::collections::BTreeMap::new()],
        [((0, 0), f.clone())].into_iter().collect(),
        [((0, 0), f)].into_iter().collect(),
    )
    .unwrap()
}

#[test]
fn eta_of_the_skyscraper_model_is_k() {
    let m = skyscraper_model();
    for pole in [Pole::Plus, Pole::Minus] {
        let e = m.eta(0, pole).unwrap();
        let h = e.corner(0).cohomology();
        assert_eq!((h.get(0), h.total()), (1, 1));
    }
    assert!(matches!(kronecker_dictionary(&m), Err(crate::Error::NotXInvertible(_))));
}

#[test]
fn dictionary_examples() {
    // x = 1, y = 0: one-dimensional module with t acting by 0
    let m = KroneckerModel::<Q>::from_module(vec![0], vec![vec![1]], vec![vec![0]], vec![crate::ExactMatrix::zeros(1, 1)]).unwrap();
    assert_eq!(m.torsion_module().unwrap().ops()[0], crate::ExactMatrix::zeros(1, 1));
    let d = kronecker_dictionary(&m).unwrap();
    let h = d.slice(&[0]).unwrap().cohomology();
    assert_eq!((h.get(0), h.total()), (1, 1));
    assert!(d.slice(&[1]).unwrap().is_acyclic());
    // x = y = 1, ungraded: t acts by 1
    let m = KroneckerModel::from_module(vec![0], vec![vec![]], vec![vec![]], vec![crate::ExactMatrix::identity(1)]).unwrap();
    let d = kronecker_dictionary(&m).unwrap();
    let one = Poly::constant(1, Q::one());
    assert_eq!(d.diff(-1).get(0, 0), Poly::var(1, 0).add(&one.neg()));
}

fn thickened(dirs: Vec<usize>, rank: usize, along: usize) -> KroneckerModel<Q> {
    let r = dirs.len();
    let unit = |a: usize| -> Vec<i64> { (0..rank).map(|i| i64::from(i == a)).collect() };
    let dw: Vec<Vec<i64>> = dirs.iter().map(|&a| unit(a)).collect();
    let ops = (0..r)
        .map(|i| if dirs[i] == along { crate::ExactMatrix::from_ints(2, 2, &[0, 0, 1, 0]) } else { crate::ExactMatrix::zeros(2, 2) })
        .collect();
    KroneckerModel::from_module(dirs, dw, vec![vec![0; rank], unit(along)], ops).unwrap()
}

#[test]
fn eta_commutes_with_koszul_restriction() {
    let m = thickened(vec![0, 1], 2, 0);
    let full = kronecker_dictionary(&m).unwrap();
    for (pos, keep) in [(0usize, vec![1usize]), (1, vec![0])] {
        let eta = m.eta(pos, Pole::Plus).unwrap();
        let p = kronecker_dictionary(&eta).unwrap();
        let qc = crate::polyring::koszul_restrict(&full, &keep).unwrap().shift(-1);
        let (mut lo, mut hi) = shift_box(&[&p, &qc]);
        lo.iter_mut().for_each(|x| *x -= 1);
        hi.iter_mut().for_each(|x| *x += 1);
        let pts = box_points(&lo, &hi);
        assert!(find_free_quasi_iso(&p, &qc, &pts).unwrap().is_some(), "direction {pos}");
        assert!(find_free_quasi_iso(&p, &qc.shift(1), &pts).unwrap().is_none());
    }
}

#[test]
fn nodal_chain_small_cases() {
    use NodalGenerator::{Component, Node};
    let norms = |m, a, b| nodal_chain_ext::<Q>(m, a, b, 3, 3).unwrap().by_norm().into_iter().collect::<Vec<_>>();
    // the end component: polynomial sections in degree 0, one class in degree 2 at the node
    assert_eq!(norms(3, Component(0), Component(0)), vec![((0, 0), 1), ((0, 1), 1), ((0, 2), 1), ((0, 3), 1), ((2, 2), 1)]);
    assert_eq!(norms(3, Component(1), Component(0)), vec![((1, 1), 1), ((3, 3), 1)]);
    // a projective line has only constants, and picks up one class per node
    assert_eq!(norms(4, Component(1), Component(1)), vec![((0, 0), 1), ((2, 2), 2)]);
    assert_eq!(norms(5, Component(2), Component(2)), vec![((0, 0), 1), ((2, 2), 2)]);
    assert_eq!(norms(4, Component(0), Component(1)), vec![((1, 1), 1), ((3, 3), 1)]);
    assert_eq!(norms(4, Node(1), Node(1)), vec![((0, 0), 1), ((1, 1), 2), ((2, 2), 2), ((3, 3), 2)]);
    assert_eq!(norms(4, Component(1), Node(2)), vec![((0, 0), 1), ((1, 1), 1), ((2, 2), 1), ((3, 3), 1)]);
    assert!(nodal_chain_ext::<Q>(2, Component(0), Component(0), 1, 1).is_err());
    assert!(nodal_chain_ext::<Q>(4, Node(3), Node(1), 1, 1).is_err());
}

#[test]
fn three_punctures_is_one_node_chart() {
    use NodalGenerator::Component;
    // C_1 = {v = 0} is O^1 and C_0 = {u = 0} is O^2 on the two-variable hypersurface
    for (a, b, ga, gb) in [(1, 2, Component(1), Component(0)), (1, 1, Component(1), Component(1)), (2, 1, Component(0), Component(1))] {
        let d = 3;
        let coh = coh_ext_table::<Q>(2, a, b, d, 1).unwrap();
        let g1 = CoherentGenerator::<Q>::hyperplane(2, a, 4).unwrap();
        let t = nodal_chain_ext::<Q>(3, ga, gb, 3, 12).unwrap();
        let mut conv = CohTable::zero(3, d);
        for ((c, m), v) in &t.entries {
            let tt = m.iter().sum::<i64>() + g1.min_shift_total(*c);
            if (0..=d as i64).contains(&tt) {
                conv.rows.get_mut(c).unwrap()[tt as usize] += v;
            }
        }
        assert_eq!(conv, coh, "O^{a} vs O^{b}");
    }
}
