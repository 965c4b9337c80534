use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::field::{Fp, Q};

fn quick() -> MirrorOptions {
    MirrorOptions { skip_glued: true, ..MirrorOptions::default() }
}

#[test]
fn surface_small_cases_pass() {
    for n in 2..=4 {
        let r = verify_surface_mirror::<Q>(n, &MirrorOptions::default()).unwrap();
        assert!(r.overall, "n = {n}: {:?}", r.failure);
        assert!(r.failure.is_none());
        assert_eq!(r.truncation, Truncation::default());
    }
}

#[test]
fn surface_middle_hom_dims() {
    let r = verify_surface_mirror::<Q>(4, &MirrorOptions::default()).unwrap();
    let c = r.checks.iter().find(|c| c.name.ends_with("Hom dims")).unwrap();
    assert!(c.verdict, "{}", c.detail);
    let r = verify_surface_mirror::<Q>(3, &MirrorOptions::default()).unwrap();
    assert!(r.checks.iter().any(|c| c.name == "pushout square" && c.verdict));
}

#[test]
fn surface_over_finite_field() {
    let r = verify_surface_mirror::<Fp<101>>(3, &MirrorOptions::default()).unwrap();
    assert!(r.overall, "{:?}", r.failure);
}

#[test]
fn out_of_range_cases_are_rejected() {
    assert!(verify_surface_mirror::<Q>(1, &quick()).is_err());
    assert!(verify_surface_mirror::<Q>(6, &quick()).is_err());
    assert!(verify_pants_mirror::<Q>(0, &quick()).is_err());
    assert!(verify_pants_mirror::<Q>(4, &quick()).is_err());
}

#[test]
fn pants_line_passes_with_glued_checks() {
    let r = verify_pants_mirror::<Q>(1, &MirrorOptions::default()).unwrap();
    assert!(r.overall, "{:?}", r.failure);
    assert!(!r.checks.is_empty());
}

#[test]
fn pants_plane_nodes_and_edges() {
    let r = verify_pants_mirror::<Q>(2, &quick()).unwrap();
    assert_eq!(r.nodes.len(), 7);
    assert_eq!(r.edges.len(), 12);
    assert!(r.overall, "{:?}", r.failure);
}

#[test]
fn reports_are_deterministic() {
    let a = verify_surface_mirror::<Q>(3, &MirrorOptions::default()).unwrap();
    let b = verify_surface_mirror::<Q>(3, &MirrorOptions::default()).unwrap();
    assert_eq!(a, b);
    let a = verify_pants_mirror::<Q>(1, &quick()).unwrap();
    let b = verify_pants_mirror::<Q>(1, &quick()).unwrap();
    assert_eq!(a, b);
}

fn sweep(run: &dyn Fn(&MirrorOptions) -> MirrorReport) -> (usize, Vec<(usize, usize)>) {
    let base = run(&quick());
    assert!(base.overall);
    let mut flipped = 0;
    let mut kept = Vec::new();
    for (ei, e) in base.edges.iter().enumerate() {
        for gi in 0..e.generators.len() {
            let o = MirrorOptions { perturb: Some(Perturbation { edge: ei, generator: gi }), ..quick() };
            let r = run(&o);
            if !r.edges[ei].verdict && !r.overall {
                flipped += 1;
            } else {
                kept.push((ei, gi));
            }
        }
    }
    (flipped, kept)
}

#[test]
fn pants_perturbation_flips_every_edge() {
    let (flipped, kept) = sweep(&|o| verify_pants_mirror::<Q>(1, o).unwrap());
    assert!(flipped > 0);
    assert_eq!(kept, vec![]);
    assert!(verify_pants_mirror::<Q>(1, &quick()).unwrap().edges.iter().all(|e| e.zero_images.is_empty()));
}

#[test]
fn surface_perturbation_flips_nonzero_images() {
    let run = |o: &MirrorOptions| verify_surface_mirror::<Q>(3, o).unwrap();
    let base = run(&quick());
    let (flipped, kept) = sweep(&run);
    assert!(flipped > 0);
    // Only node objects at the twisted points survive: their restriction to the arc is zero.
    assert!(!kept.is_empty());
    for (ei, gi) in kept {
        let e = &base.edges[ei];
        assert!(e.generators[gi].0.contains('@'), "{} {}", e.name, e.generators[gi].0);
        assert!(e.zero_images.contains(&e.generators[gi].0));
    }
    let zeros: usize = base.edges.iter().map(|e| e.zero_images.len()).sum();
    assert_eq!(zeros + flipped, base.edges.iter().map(|e| e.generators.len()).sum::<usize>());
}

#[test]
fn perturbation_index_is_validated() {
    let o = MirrorOptions { perturb: Some(Perturbation { edge: 999, generator: 0 }), ..quick() };
    assert!(verify_surface_mirror::<Q>(2, &o).is_err());
    assert!(verify_pants_mirror::<Q>(1, &o).is_err());
    let o = MirrorOptions { perturb: Some(Perturbation { edge: 0, generator: 99 }), ..quick() };
    assert!(verify_surface_mirror::<Q>(2, &o).is_err());
    assert!(verify_pants_mirror::<Q>(1, &o).is_err());
}
