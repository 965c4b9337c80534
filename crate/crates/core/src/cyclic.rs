//! Cyclically ordered sets, the categories attached to them, and the functors along
//! inclusions of two-element subcycles.
//!
//! A cycle `c` with base `b` is linearized as `s_1, …, s_m` starting just after `b`, so
//! `s_m = b`. Position `p` is the consecutive pair `(s_p, s_{p+1})` with `s_{m+1} = s_1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quivers::{all_named, corepresented, position_object, tau, tau_inverse, tensor_with, GenFunctor, LinearQuiver, PerfComplex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    elements: Vec<String>,
}

impl CyclicSet {
    /// Elements listed in cyclic order; the successor of the last is the first.
    pub fn new<S: ToString>(elements: &[S]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
        if elements.is_empty() {
            return Err(Error::InvalidArgument("empty cyclic set".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidArgument(format!("repeated label {e}")));
            }
        }
        Ok(CyclicSet { elements })
    }

    /// The standard cycle `1 -> 2 -> … -> m -> 1`.
    pub fn standard(m: usize) -> Self {
        CyclicSet { elements: (1..=m).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements.iter().position(|e| e == label).ok_or_else(|| Error::LabelNotFound(label.into()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.elements.iter().any(|e| e == label)
    }

    pub fn successor(&self, label: &str) -> Result<&str> {
        let i = self.index_of(label)?;
        Ok(&self.elements[(i + 1) % self.len()])
    }

    pub fn are_consecutive(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.successor(a)? == b)
    }
}

/// An order-preserving injection of cyclic sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcycleInclusion {
    pub source: CyclicSet,
    pub target: CyclicSet,
    /// `embedding[i]` is the target index of source element `i`.
    pub embedding: Vec<usize>,
}

impl SubcycleInclusion {
    pub fn new(source: CyclicSet, target: CyclicSet, embedding: Vec<usize>) -> Result<Self> {
        let m = target.len();
        if embedding.len() != source.len() || embedding.iter().any(|&i| i >= m) {
            return Err(Error::InvalidArgument("embedding has the wrong shape".into()));
        }
        for (i, a) in embedding.iter().enumerate() {
            if embedding[..i].contains(a) {
                return Err(Error::InvalidArgument("embedding is not injective".into()));
            }
        }
        // cyclic order: the forward gaps around the target add up to one full turn
        let k = embedding.len();
        let turn: usize = (0..k).map(|i| (embedding[(i + 1) % k] + m - embedding[i]) % m).sum();
        if k > 1 && turn != m {
            return Err(Error::InvalidArgument("embedding does not respect the cyclic order".into()));
        }
        Ok(SubcycleInclusion { source, target, embedding })
    }

    /// The inclusion of the pair `(first, second)`, which must be cyclically adjacent.
    pub fn pair(target: &CyclicSet, first: &str, second: &str) -> Result<Self> {
        let i = target.index_of(first)?;
        let j = target.index_of(second)?;
        if target.len() < 2 || (i + 1) % target.len() != j {
            return Err(Error::NotConsecutive(first.into(), second.into()));
        }
        let source = CyclicSet::new(&[first, second])?;
        SubcycleInclusion::new(source, target.clone(), alloc::vec![i, j])
    }
}

/// `C_st` of a cycle of size `m`: perfect complexes over `A_{m−1}`, linearized at `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryNode {
    pub cycle: CyclicSet,
    pub base: String,
    pub quiver: LinearQuiver,
}

impl CategoryNode {
    /// Linear order `s_1, …, s_m`.
    pub fn linearization(&self) -> Vec<&str> {
        let m = self.cycle.len();
        let b = self.cycle.index_of(&self.base).expect("base is in the cycle");
        (1..=m).map(|k| self.cycle.elements()[(b + k) % m].as_str()).collect()
    }

    /// Position `p` of the consecutive pair starting at `first`.
    pub fn position_of(&self, first: &str) -> Result<usize> {
        let lin = self.linearization();
        lin.iter().position(|s| *s == first).map(|i| i + 1).ok_or_else(|| Error::LabelNotFound(first.into()))
    }

    pub fn pair_at(&self, p: usize) -> Result<(String, String)> {
        let lin = self.linearization();
        let m = lin.len();
        if p == 0 || p > m {
            return Err(Error::PositionOutOfRange { position: p, max: m });
        }
        Ok((lin[p - 1].into(), lin[p % m].into()))
    }

    /// Functor from this node to the same cycle based at `new_base`: `τ^{−k}` for a forward step `k`.
    pub fn rebase<F: Field>(&self, new_base: &str) -> Result<(CategoryNode, GenFunctor<F>)> {
        let m = self.cycle.len();
        let k = (self.cycle.index_of(new_base)? + m - self.cycle.index_of(&self.base)?) % m;
        let node = cst_node(&self.cycle, new_base)?;
        let n = self.quiver.n;
        let mut f = crate::quivers::shift_functor::<F>(n, 0);
        let ti = tau_inverse::<F>(n);
        for _ in 0..k {
            f = f.then(&ti)?;
        }
        Ok((node, f))
    }
}

pub fn cst_node(c: &CyclicSet, base: &str) -> Result<CategoryNode> {
    c.index_of(base)?;
    if c.len() < 2 {
        return Err(Error::InvalidArgument("a cycle needs at least two elements".into()));
    }
    Ok(CategoryNode { cycle: c.clone(), base: base.into(), quiver: LinearQuiver { n: c.len() - 1 } })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeDirection {
    Restriction,
    Extension,
}

/// Functor along a subcycle inclusion, with its images on named generators.
#[derive(Clone, Debug)]
pub struct FunctorEdge<F: Field> {
    pub direction: EdgeDirection,
    /// Position of the pair inside the large node.
    pub position: usize,
    /// Whether the small node's base disagrees with the pair order, forcing a rotation.
    pub rotated: bool,
    pub functor: GenFunctor<F>,
    pub generator_images: Vec<(String, PerfComplex<F>)>,
}

fn small_node_rotation(big: &CategoryNode, small: &CategoryNode, i: &SubcycleInclusion) -> Result<(usize, bool)> {
    if i.source.len() != 2 || i.target != big.cycle || i.source != small.cycle {
        return Err(Error::InvalidArgument("edge data does not match its nodes".into()));
    }
    let first = &i.source.elements()[0];
    let second = &i.source.elements()[1];
    if !big.cycle.are_consecutive(first, second)? {
        return Err(Error::NotConsecutive(first.clone(), second.clone()));
    }
    let p = big.position_of(first)?;
    // the natural linearization of (s_p, s_{p+1}) is based at s_{p+1}
    Ok((p, small.base != *second))
}

/// Restriction `C_st(big) -> C_st(pair)`.
pub fn cst_edge<F: Field>(i: &SubcycleInclusion, big: &CategoryNode, small: &CategoryNode) -> Result<FunctorEdge<F>> {
    let (p, rotated) = small_node_rotation(big, small, i)?;
    let e = position_object::<F>(big.quiver.n, p)?;
    let mut functor = corepresented(&e)?;
    if rotated {
        functor = functor.then(&tau_inverse::<F>(1))?;
    }
    let generator_images =
        all_named::<F>(big.quiver.n).into_iter().map(|(name, x)| functor.apply(&x).map(|y| (name, y))).collect::<Result<_>>()?;
    Ok(FunctorEdge { direction: EdgeDirection::Restriction, position: p, rotated, functor, generator_images })
}

/// Extension `C^w_st(pair) -> C^w_st(big)`, left adjoint of [`cst_edge`].
pub fn cwst_edge<F: Field>(i: &SubcycleInclusion, big: &CategoryNode, small: &CategoryNode) -> Result<FunctorEdge<F>> {
    let (p, rotated) = small_node_rotation(big, small, i)?;
    let e = position_object::<F>(big.quiver.n, p)?;
    let mut functor = tensor_with(&e);
    if rotated {
        functor = tau::<F>(1).then(&functor)?;
    }
    let k = PerfComplex::projective(1, 1)?;
    let generator_images = alloc::vec![("k".to_string(), functor.apply(&k)?)];
    Ok(FunctorEdge { direction: EdgeDirection::Extension, position: p, rotated, functor, generator_images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{GradedSpace, Grading};
    use crate::field::Q;
    use crate::quivers::{perf_find_quasi_iso, quiver_hom};

    fn edge(m: usize, first: usize) -> (SubcycleInclusion, CategoryNode, CategoryNode) {
        let c = CyclicSet::standard(m);
        let a = first.to_string();
        let b = (first % m + 1).to_string();
        let i = SubcycleInclusion::pair(&c, &a, &b).unwrap();
        let big = cst_node(&c, &m.to_string()).unwrap();
        let small = cst_node(&i.source, &b).unwrap();
        (i, big, small)
    }

    fn image(e: &FunctorEdge<Q>, name: &str) -> GradedSpace {
        e.generator_images.iter().find(|(n, _)| n == name).unwrap().1.to_field().cohomology()
    }

    #[test]
    fn node_sizes() {
        for m in 2..=8 {
            let c = CyclicSet::standard(m);
            assert_eq!(cst_node(&c, "1").unwrap().quiver.n, m - 1);
        }
        assert!(matches!(cst_node(&CyclicSet::standard(3), "9"), Err(Error::LabelNotFound(_))));
        let n = cst_node(&CyclicSet::standard(4), "4").unwrap();
        assert_eq!(n.linearization(), ["1", "2", "3", "4"]);
        assert_eq!(n.pair_at(4).unwrap(), ("4".into(), "1".into()));
    }

    #[test]
    fn inclusions_respect_order() {
        let c = CyclicSet::standard(5);
        let s = CyclicSet::new(&["a", "b", "c"]).unwrap();
        assert!(SubcycleInclusion::new(s.clone(), c.clone(), alloc::vec![0, 2, 4]).is_ok());
        assert!(SubcycleInclusion::new(s.clone(), c.clone(), alloc::vec![3, 4, 1]).is_ok());
        assert!(SubcycleInclusion::new(s, c.clone(), alloc::vec![0, 4, 2]).is_err());
        assert!(matches!(SubcycleInclusion::pair(&c, "1", "3"), Err(Error::NotConsecutive(..))));
        assert!(SubcycleInclusion::pair(&c, "5", "1").is_ok());
    }

    #[test]
    fn restriction_kills_other_injectives() {
        let (i, big, small) = edge(4, 3);
        let e = cst_edge::<Q>(&i, &big, &small).unwrap();
        assert_eq!(e.position, 3);
        assert_eq!(image(&e, "I2").total(), 1);
        assert_eq!(image(&e, "I1").total(), 0);
        assert_eq!(image(&e, "I3").total(), 0);
    }

    #[test]
    fn wraparound_restriction_of_first_projective() {
        let (i, big, small) = edge(4, 1);
        let e = cst_edge::<Q>(&i, &big, &small).unwrap();
        assert_eq!(e.position, 1);
        // k[−1]
        assert_eq!(image(&e, "P1"), GradedSpace::from_pairs(Grading::Z, &[(1, 1)]));
    }

    #[test]
    fn extension_images() {
        let (i, big, small) = edge(4, 2);
        let e = cwst_edge::<Q>(&i, &big, &small).unwrap();
        let k1 = PerfComplex::<Q>::skyscraper(3, 1).unwrap();
        assert!(perf_find_quasi_iso(&e.generator_images[0].1, &k1).is_some());
        let (i, big, small) = edge(4, 1);
        let e = cwst_edge::<Q>(&i, &big, &small).unwrap();
        let p = PerfComplex::<Q>::projective(3, 1).unwrap().shift(1);
        assert!(perf_find_quasi_iso(&e.generator_images[0].1, &p).is_some());
    }

    #[test]
    fn adjunction_on_generators() {
        for m in 2..=5 {
            for first in 1..=m {
                let (i, big, small) = edge(m, first);
                let r = cst_edge::<Q>(&i, &big, &small).unwrap();
                let x = cwst_edge::<Q>(&i, &big, &small).unwrap();
                let ek = &x.generator_images[0].1;
                let k = PerfComplex::<Q>::projective(1, 1).unwrap();
                for (name, y) in all_named::<Q>(m - 1) {
                    let lhs = quiver_hom(ek, &y).unwrap().cohomology();
                    let ry = r.generator_images.iter().find(|(n, _)| *n == name).unwrap().1.clone();
                    let rhs = quiver_hom(&k, &ry).unwrap().cohomology();
                    assert_eq!(lhs, rhs, "m={m} pos={first} {name}");
                }
                // extension followed by restriction returns k
                let back = r.functor.apply(ek).unwrap();
                assert!(perf_find_quasi_iso(&back, &k).is_some());
            }
        }
    }

    #[test]
    fn mismatched_small_base_rotates() {
        let c = CyclicSet::standard(3);
        let i = SubcycleInclusion::pair(&c, "2", "3").unwrap();
        let big = cst_node(&c, "3").unwrap();
        let small = cst_node(&i.source, "2").unwrap();
        let e = cst_edge::<Q>(&i, &big, &small).unwrap();
        assert!(e.rotated);
        assert_eq!(image(&e, "k1"), GradedSpace::from_pairs(Grading::Z, &[(-1, 1)]));
    }

    #[test]
    fn rebasing_is_rotation_and_full_turn_is_double_shift() {
        let c = CyclicSet::standard(4);
        let node = cst_node(&c, "4").unwrap();
        let (new, f) = node.rebase::<Q>("1").unwrap();
        assert_eq!(new.linearization(), ["2", "3", "4", "1"]);
        // restriction at new position p equals old position p + 1
        for (_, x) in all_named::<Q>(3) {
            let fx = f.apply(&x).unwrap();
            for p in 1..=3 {
                let a = crate::quivers::subcycle_restrict(&fx, p).unwrap().cohomology().fold();
                let b = crate::quivers::subcycle_restrict(&x, p + 1).unwrap().cohomology().fold();
                assert_eq!(a, b);
            }
        }
        let mut cur = node.clone();
        let mut total = crate::quivers::shift_functor::<Q>(3, 0);
        for step in 0..4 {
            let next = c.elements()[step].clone();
            let (nn, g) = cur.rebase::<Q>(&next).unwrap();
            total = total.then(&g).unwrap();
            cur = nn;
        }
        assert_eq!(cur, node);
        for (_, x) in all_named::<Q>(3) {
            assert!(perf_find_quasi_iso(&total.apply(&x).unwrap(), &x.shift(2)).is_some());
        }
    }
}
