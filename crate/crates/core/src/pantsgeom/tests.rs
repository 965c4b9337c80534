use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;

#[test]
fn small_strata() {
    let t = strata(1).unwrap();
    let rows: Vec<(Vec<usize>, usize, usize)> = t.strata.iter().map(|s| (s.subset.clone(), s.torus_rank, s.simplex_dim)).collect();
    assert_eq!(rows, vec![(vec![], 0, 1), (vec![1], 1, 0), (vec![2], 1, 0)]);
    assert_eq!(t.incidence, vec![(0, 1), (0, 2)]);
    assert_eq!(strata(2).unwrap().strata.len(), 7);
    assert!(strata(0).is_err());
}

#[test]
fn euler_characteristics() {
    assert_eq!(euler_char_c(1).unwrap(), -1);
    assert_eq!(euler_char_c(2).unwrap(), 1);
}

#[test]
fn meets() {
    let p = |s: &[usize]| SignPattern::new(2, s, true).unwrap();
    assert_eq!(cover_meet(&p(&[1, 2]), &p(&[2, 3])).unwrap(), p(&[2]));
    assert_eq!(cover_meet(&p(&[1, 2]), &p(&[1, 2])).unwrap(), p(&[1, 2]));
    assert!(cover_meet(&p(&[1]), &p(&[2])).unwrap().allowed_zero.is_empty());
    assert!(SignPattern::new(2, &[4], true).is_err());
    let q = p(&[2]);
    assert!(q.contains(&[1, 0, 1]) && !q.contains(&[0, 1, 1]) && !q.contains(&[-1, 0, -1]));
}

#[test]
fn cubes() {
    let c = cube_diagram(1).unwrap();
    assert_eq!(c.nodes.len(), 3);
    assert_eq!(c.edges.len(), 2);
    assert_eq!(c.nodes[1].variables, vec![String::from("t1")]);
    let c = cube_diagram(2).unwrap();
    assert_eq!((c.nodes.len(), c.edges.len()), (7, 12));
    let e = c.edges.iter().find(|e| c.nodes[e.small].subset.is_empty() && c.nodes[e.big].subset == vec![1, 3]).unwrap();
    assert_eq!(e.killed, vec![1, 3]);
}

#[test]
fn cover_degrees() {
    assert_eq!(contact_cover_degree(1).unwrap(), 2);
    assert_eq!(contact_cover_degree(2).unwrap(), 3);
    assert_eq!(contact_cover_degree(5).unwrap(), 6);
}

proptest! {
    #[test]
    fn strata_invariants(n in 1usize..=8) {
        let t = strata(n).unwrap();
        prop_assert_eq!(t.strata.len(), (1usize << (n + 1)) - 1);
        prop_assert!(t.strata.iter().all(|s| s.dimension() == n));
        prop_assert_eq!(euler_char_c(n).unwrap(), if n % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(contact_cover_degree(n).unwrap(), n as u64 + 1);
    }

    #[test]
    fn meet_is_a_semilattice(a in 0u8..16, b in 0u8..16, c in 0u8..16, sa: bool, sb: bool) {
        let mk = |m: u8, s: bool| {
            let v: Vec<usize> = (0..4).filter(|i| m & (1 << i) != 0).map(|i| i + 1).collect();
            SignPattern::new(3, &v, s).unwrap()
        };
        let (x, y, z) = (mk(a, sa), mk(b, sb), mk(c, true));
        prop_assert_eq!(cover_meet(&x, &x).unwrap(), x.clone());
        prop_assert_eq!(cover_meet(&x, &y).unwrap(), cover_meet(&y, &x).unwrap());
        prop_assert_eq!(
            cover_meet(&cover_meet(&x, &y).unwrap(), &z).unwrap(),
            cover_meet(&x, &cover_meet(&y, &z).unwrap()).unwrap()
        );
    }
}
