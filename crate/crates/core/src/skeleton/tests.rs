use super::*;
use crate::field::{Fp, Q};
use alloc::string::ToString;

type K = Q;

fn tripod() -> RibbonSkeleton {
    let inc =
        |e: &str, l: &str, r: &str| Incidence { vertex: "v".into(), edge: e.into(), end: End::Start, left: l.into(), right: r.into() };
    RibbonSkeleton::new(
        vec![("v".into(), CyclicSet::new(&["x", "y", "z"]).unwrap())],
        ["e1", "e2", "e3"].iter().map(|e| SkeletonEdge { id: (*e).into(), start: Some("v".into()), end: None }).collect(),
        vec![inc("e1", "y", "x"), inc("e2", "z", "y"), inc("e3", "x", "z")],
    )
    .unwrap()
}

fn objs(pairs: &[(&str, PerfComplex<K>)]) -> BTreeMap<String, PerfComplex<K>> {
    pairs.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect()
}

#[test]
fn tripod_diagram_shape() {
    let d = build_diagram::<K>(&tripod(), DiagramMode::Sheaf).unwrap();
    let sizes: Vec<usize> = d.nodes.values().map(|n| n.quiver.n).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 6);
    assert_eq!(d.edges.len(), 6);
    let w = build_diagram::<K>(&tripod(), DiagramMode::Cosheaf).unwrap();
    assert!(w.edges.values().all(|e| e.direction == EdgeDirection::Extension));
}

#[test]
fn non_adjacent_sectors_rejected() {
    let r = RibbonSkeleton::new(
        vec![("v".into(), CyclicSet::new(&["a", "b", "c", "d"]).unwrap())],
        vec![SkeletonEdge { id: "e".into(), start: Some("v".into()), end: None }],
        vec![Incidence { vertex: "v".into(), edge: "e".into(), end: End::Start, left: "c".into(), right: "a".into() }],
    );
    assert!(matches!(r, Err(Error::InvalidIncidence(_))));
}

#[test]
fn node_sizes_match_sector_counts() {
    for n in 2..=5 {
        let s = punctured_sphere_skeleton(n).unwrap();
        let d = build_diagram::<K>(&s, DiagramMode::Sheaf).unwrap();
        for (p, node) in &d.nodes {
            let want = match p {
                Element::Vertex(v) => s.vertices().iter().find(|(w, _)| w == v).unwrap().1.len() - 1,
                _ => 1,
            };
            assert_eq!(node.quiver.n, want);
        }
    }
}

#[test]
fn ladder_counts() {
    let s2 = punctured_sphere_skeleton(2).unwrap();
    assert_eq!((s2.vertices().len(), s2.edges().len()), (1, 1));
    let s3 = punctured_sphere_skeleton(3).unwrap();
    assert_eq!((s3.vertices().len(), s3.edges().len()), (2, 3));
    assert!(s3.vertices().iter().all(|(_, c)| c.len() == 3));
    for n in 2..=7 {
        let s = punctured_sphere_skeleton(n).unwrap();
        assert_eq!(s.vertices().len(), n - 1);
        assert_eq!(s.edges().len(), 2 * n - 3);
        assert_eq!(s.euler_characteristic(), 2 - n as i64);
    }
    assert!(punctured_sphere_skeleton(1).is_err());
}

#[test]
fn cover_counts() {
    let c3 = cover_diagram::<K>(3).unwrap();
    assert_eq!((c3.pieces.len(), c3.overlaps.len()), (2, 1));
    let c4 = cover_diagram::<K>(4).unwrap();
    assert_eq!((c4.pieces.len(), c4.overlaps.len()), (3, 2));
    for o in &c4.overlaps {
        assert!(o.piece.diagram.nodes.values().all(|n| n.quiver.n == 1));
    }
}

fn circle_point(lambda: i64) -> (CatDiagram<K>, LimitObject<K>) {
    let s = punctured_sphere_skeleton(2).unwrap();
    let d = build_diagram::<K>(&s, DiagramMode::Sheaf).unwrap();
    let x = PerfComplex::projective(1, 1).unwrap();
    let mut o = LimitObject::from_vertex_objects(&d, &objs(&[("v1", x)]), &BTreeMap::new()).unwrap();
    if lambda != 1 {
        let u = Element::Incidence { vertex: "v1".into(), edge: "c1".into(), end: End::Start };
        o.twist(&u, &Element::Edge("c1".into()), &K::from_i64(lambda)).unwrap();
    }
    (d, o)
}

#[test]
fn point_on_the_circle_has_self_ext_of_a_point() {
    let (d, x) = circle_point(1);
    let h = limit_hom(&d, &x, &x).unwrap();
    assert_eq!(h.parity_dims(), (1, 1));
}

#[test]
fn different_monodromies_are_orthogonal() {
    let (d, x) = circle_point(1);
    let (_, y) = circle_point(2);
    assert_eq!(limit_hom(&d, &x, &y).unwrap().total(), 0);
    assert_eq!(limit_hom(&d, &y, &y).unwrap().parity_dims(), (1, 1));
}

#[test]
fn zero_family() {
    let (d, x) = circle_point(1);
    let z = LimitObject::zero(&d);
    assert!(limit_hom(&d, &z, &x).unwrap().is_zero());
    assert!(limit_hom(&d, &z, &z).unwrap().is_zero());
}

#[test]
fn broken_certificate_is_reported() {
    let (d, mut x) = circle_point(1);
    let u = Element::Incidence { vertex: "v1".into(), edge: "c1".into(), end: End::End };
    x.twist(&u, &Element::Edge("c1".into()), &K::from_i64(0)).unwrap();
    assert!(matches!(limit_hom(&d, &x, &x), Err(Error::CertificateFailure(_))));
}

#[test]
fn identity_survives_in_the_limit() {
    for n in 2..=4 {
        let (cover, x) = ladder_family(n);
        assert!(limit_hom(&cover.full, &x, &x).unwrap().get(0) >= 1);
    }
}

fn ladder_family(n: usize) -> (SurfaceCover<K>, LimitObject<K>) {
    // the circle point at the bottom vertex, zero elsewhere
    let cover = cover_diagram::<K>(n).unwrap();
    let mut vo = BTreeMap::new();
    for (v, c) in cover.full.skeleton.vertices() {
        let m = c.len() - 1;
        let x = if v == "v1" && n > 2 {
            PerfComplex::projective(m, 2).unwrap()
        } else if v == "v1" {
            PerfComplex::projective(1, 1).unwrap()
        } else {
            PerfComplex::zero(m, Grading::Z)
        };
        vo.insert(v.clone(), x);
    }
    let x = LimitObject::from_vertex_objects(&cover.full, &vo, &BTreeMap::new()).unwrap();
    (cover, x)
}

#[test]
fn mayer_vietoris_agrees_with_full_limit() {
    for n in 2..=4 {
        let (cover, x) = ladder_family(n);
        let full = limit_hom(&cover.full, &x, &x).unwrap();
        let mv = mayer_vietoris_hom(&cover, &x, &x).unwrap();
        assert_eq!(full, mv, "n = {n}");
        assert_eq!(full.parity_dims(), (1, 1), "n = {n}");
    }
}

#[test]
fn finite_field_agrees() {
    let s = punctured_sphere_skeleton(2).unwrap();
    let d = build_diagram::<Fp<5>>(&s, DiagramMode::Sheaf).unwrap();
    let x = PerfComplex::projective(1, 1).unwrap();
    let o = LimitObject::from_vertex_objects(&d, &[("v1".to_string(), x)].into_iter().collect(), &BTreeMap::new()).unwrap();
    assert_eq!(limit_hom(&d, &o, &o).unwrap().parity_dims(), (1, 1));
}

#[test]
fn perturbed_edge_breaks_certificates() {
    let (mut d, x) = circle_point(1);
    let u = Element::Incidence { vertex: "v1".into(), edge: "c1".into(), end: End::End };
    d.perturb(&u, &Element::Vertex("v1".into())).unwrap();
    assert!(x.verify(&d).is_err());
}
