//! Strata of the pair-of-pants skeleton, the sign-pattern cover, the coordinate cube and the
//! contact cover degree.
//!
//! Strata are indexed by proper subsets `I ⊂ [n+1]` of torus directions: `S_I = T^I × Ξ_I`, where
//! the open simplex `Ξ_I` has dimension `n − |I|` and pins the complementary coordinates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::ExactMatrix;
use crate::field::Q;

/// `T^I × Ξ_I`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Stratum {
    /// Torus directions, 1-based elements of `[n+1]`.
    pub subset: Vec<usize>,
    pub torus_rank: usize,
    pub simplex_dim: usize,
}

impl Stratum {
    pub fn dimension(&self) -> usize {
        self.torus_rank + self.simplex_dim
    }

    /// `χ_c(T^r) · χ_c(open simplex of dimension d)`.
    pub fn euler_char_c(&self) -> i64 {
        let torus = i64::from(self.torus_rank == 0);
        let simplex = if self.simplex_dim.is_multiple_of(2) { 1 } else { -1 };
        torus * simplex
    }
}

/// All strata with the frontier-meeting incidence `I ⊑ I′ ⇔ I ⊆ I′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataTable {
    pub n: usize,
    pub strata: Vec<Stratum>,
    /// Strict incidences as index pairs `(I, I′)` with `I ⊊ I′`.
    pub incidence: Vec<(usize, usize)>,
}

impl StrataTable {
    pub fn incident(&self, i: usize, j: usize) -> bool {
        is_subset(&self.strata[i].subset, &self.strata[j].subset)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidArgument(format!("pants dimension {n} outside 1..=30")));
    }
    Ok(())
}

/// Proper subsets of `[n+1]`, by size then lexicographically.
pub fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    let full = n + 1;
    let mut out: Vec<Vec<usize>> =
        (0u32..(1u32 << full) - 1).map(|mask| (0..full).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()).collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub fn strata(n: usize) -> Result<StrataTable> {
    check_n(n)?;
    let strata: Vec<Stratum> =
        proper_subsets(n).into_iter().map(|s| Stratum { torus_rank: s.len(), simplex_dim: n - s.len(), subset: s }).collect();
    let mut incidence = Vec::new();
    for (i, a) in strata.iter().enumerate() {
        for (j, b) in strata.iter().enumerate() {
            if i != j && is_subset(&a.subset, &b.subset) {
                incidence.push((i, j));
            }
        }
    }
    Ok(StrataTable { n, strata, incidence })
}

/// Compactly supported Euler characteristic, summed over the product decomposition.
pub fn euler_char_c(n: usize) -> Result<i64> {
    Ok(strata(n)?.strata.iter().map(Stratum::euler_char_c).sum())
}

/// `Ω_I = {ξ_a ≠ 0 for a ∉ I}`, optionally with `Σξ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    pub n: usize,
    /// Coordinates allowed to vanish.
    pub allowed_zero: BTreeSet<usize>,
    pub sum_positive: bool,
}

impl SignPattern {
    pub fn new(n: usize, allowed_zero: &[usize], sum_positive: bool) -> Result<Self> {
        if let Some(&a) = allowed_zero.iter().find(|&&a| a == 0 || a > n + 1) {
            return Err(Error::IndexOutOfRange { index: a, max: n + 1 });
        }
        Ok(SignPattern { n, allowed_zero: allowed_zero.iter().copied().collect(), sum_positive })
    }

    /// Membership of a point `ξ ∈ ℝ^{n+1}`.
    pub fn contains(&self, xi: &[i64]) -> bool {
        let nonzero = xi.iter().enumerate().all(|(i, x)| *x != 0 || self.allowed_zero.contains(&(i + 1)));
        nonzero && (!self.sum_positive || xi.iter().sum::<i64>() > 0)
    }
}

/// `Ω_I ∩ Ω_{I′} = Ω_{I∩I′}`.
pub fn cover_meet(p: &SignPattern, q: &SignPattern) -> Result<SignPattern> {
    if p.n != q.n {
        return Err(Error::InvalidArgument(format!("patterns for n = {} and n = {}", p.n, q.n)));
    }
    Ok(SignPattern {
        n: p.n,
        allowed_zero: p.allowed_zero.intersection(&q.allowed_zero).copied().collect(),
        sum_positive: p.sum_positive || q.sum_positive,
    })
}

/// `𝔸^I = Spec k[t_a | a ∈ I]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeNode {
    pub subset: Vec<usize>,
    pub variables: Vec<String>,
}

/// Restriction `𝔸^{big} ⇢ 𝔸^{small}` setting `t_a = 0` for `a ∈ big ∖ small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub small: usize,
    pub big: usize,
    pub killed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeDiagram {
    pub n: usize,
    pub nodes: Vec<CubeNode>,
    pub edges: Vec<CubeEdge>,
}

impl CubeDiagram {
    pub fn node_index(&self, subset: &[usize]) -> Option<usize> {
        self.nodes.iter().position(|c| c.subset == subset)
    }
}

/// Nodes over proper subsets, one edge per strict inclusion.
pub fn cube_diagram(n: usize) -> Result<CubeDiagram> {
    check_n(n)?;
    let nodes: Vec<CubeNode> =
        proper_subsets(n).into_iter().map(|s| CubeNode { variables: s.iter().map(|a| format!("t{a}")).collect(), subset: s }).collect();
    let mut edges = Vec::new();
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if i != j && is_subset(&a.subset, &b.subset) {
                let killed = b.subset.iter().copied().filter(|x| !a.subset.contains(x)).collect();
                edges.push(CubeEdge { small: i, big: j, killed });
            }
        }
    }
    Ok(CubeDiagram { n, nodes, edges })
}

/// Index of the image of `θ ↦ (θ mod diagonal, Σθ)` on `ℤ^{n+1}` (angles in units of `2π`).
pub fn contact_cover_degree(n: usize) -> Result<u64> {
    check_n(n)?;
    let k = n + 1;
    let mut entries = Vec::with_capacity(k * k);
    for a in 0..n {
        for b in 0..k {
            entries.push(if b == a {
                1
            } else if b == n {
                -1
            } else {
                0
            });
        }
    }
    entries.extend(core::iter::repeat_n(1, k));
    let m = ExactMatrix::<Q>::from_ints(k, k, &entries);
    let det = m.determinant()?;
    let v = det.to_i64().ok_or_else(|| Error::CertificateFailure("non-integral lattice determinant".into()))?;
    Ok(v.unsigned_abs())
}

#[cfg(test)]
mod tests;
