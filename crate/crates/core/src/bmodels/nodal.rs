//! Ext on the nodal chains `Q_m = 𝔸¹ ∪ ℙ¹ ∪ ⋯ ∪ ℙ¹ ∪ 𝔸¹` (`m − 3` projective lines).
//!
//! Components `C_0..C_{m−2}` meet at nodes `N_1..N_{m−2}`; `N_i` joins `C_{i−1}` and `C_i`. Each
//! component carries its own grading axis. The chart at `N_i` is `k[v, u]/(vu)`, where `v` is the
//! coordinate of `C_{i−1}` (weight `+e_0` on the first end, `−e_{i−1}` on a projective line) and `u`
//! that of `C_i` (weight `+e_i`). The punctured lines `U_j = C_j ∖ {N_j, N_{j+1}}` are the overlaps.
//! Ext is the totalization of the chart Homs (from truncated resolutions) mapping to the overlap
//! Homs, where every generator restricts to `O` or `0`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Grading};
use crate::field::Field;
use crate::polyring::{hom_free, FreeComplex, MonomialIdeal, MultiMonomial, Ring};

use super::coh::periodic_resolution;

/// Generators on `Q_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodalGenerator {
    /// Structure sheaf of `C_j`.
    Component(usize),
    /// Skyscraper at `N_i`.
    Node(usize),
}

/// A nodal chain with `m − 1` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalChain {
    pub m: usize,
}

impl NodalChain {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument("a nodal chain needs m >= 3".into()));
        }
        Ok(NodalChain { m })
    }

    pub fn components(&self) -> usize {
        self.m - 1
    }

    pub fn nodes(&self) -> usize {
        self.m - 2
    }

    fn unit(&self, j: usize, s: i64) -> Vec<i64> {
        let mut v = vec![0; self.components()];
        v[j] = s;
        v
    }

    /// The chart ring at `N_i`: variables `(v, u)`.
    pub fn chart_ring(&self, i: usize) -> Result<Ring> {
        let wv = if i == 1 { self.unit(0, 1) } else { self.unit(i - 1, -1) };
        let wu = self.unit(i, 1);
        Ring::graded(self.components(), vec![wv, wu], vec![false, false], MonomialIdeal::new(2, vec![MultiMonomial(vec![1, 1])])?)
    }

    fn check(&self, g: NodalGenerator) -> Result<()> {
        match g {
            NodalGenerator::Component(j) if j < self.components() => Ok(()),
            NodalGenerator::Node(i) if (1..=self.nodes()).contains(&i) => Ok(()),
            NodalGenerator::Component(j) => Err(Error::IndexOutOfRange { index: j, max: self.components() - 1 }),
            NodalGenerator::Node(i) => Err(Error::IndexOutOfRange { index: i, max: self.nodes() }),
        }
    }

    /// Variables cutting out the generator on the chart at `N_i`, or `None` if it misses the chart.
    fn chart_vars(&self, g: NodalGenerator, i: usize) -> Option<Vec<usize>> {
        match g {
            NodalGenerator::Component(j) if j + 1 == i => Some(vec![1]),
            NodalGenerator::Component(j) if j == i => Some(vec![0]),
            NodalGenerator::Node(k) if k == i => Some(vec![0, 1]),
            _ => None,
        }
    }

    fn on_overlap(&self, g: NodalGenerator, j: usize) -> bool {
        g == NodalGenerator::Component(j)
    }
}

/// Ext counts keyed by (degree, multidegree) over the box `|M_i| <= bound`, exact in degrees `<= max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalTable {
    pub max_degree: i64,
    pub entries: BTreeMap<(i64, Vec<i64>), usize>,
}

impl NodalTable {
    /// Counts per degree and `ℓ¹` norm of the multidegree.
    pub fn by_norm(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for ((c, m), v) in &self.entries {
            *out.entry((*c, m.iter().map(|x| x.abs()).sum())).or_insert(0) += v;
        }
        out
    }

    pub fn degree_total(&self, c: i64) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == c).map(|(_, v)| v).sum()
    }
}

/// `Ext^c_{Q_m}(g1, g2)` for `c <= max_degree`, on multidegrees with every coordinate in `−bound..=bound`.
pub fn nodal_chain_ext<F: Field>(m: usize, g1: NodalGenerator, g2: NodalGenerator, max_degree: usize, bound: i64) -> Result<NodalTable> {
    let q = NodalChain::new(m)?;
    q.check(g1)?;
    q.check(g2)?;
    let len = max_degree + 2;
    // chart Homs
    let mut charts: BTreeMap<usize, FreeComplex<F>> = BTreeMap::new();
    for i in 1..=q.nodes() {
        let (Some(v1), Some(v2)) = (q.chart_vars(g1, i), q.chart_vars(g2, i)) else { continue };
        let b = q.chart_ring(i)?;
        let res = periodic_resolution::<F>(&b, &MultiMonomial(vec![1, 1]), &v1, v1[0], len)?;
        let gens = v2.iter().map(|&x| MultiMonomial::var(2, x)).collect();
        let ring = b.quotient(&MonomialIdeal::new(2, gens)?)?;
        let module = FreeComplex::new(ring, Grading::Z, Vec::new(), BTreeMap::from([(0, vec![vec![0; q.components()]])]), BTreeMap::new())?;
        charts.insert(i, hom_free(&res, &module)?);
    }
    let overlaps: Vec<usize> = (1..q.components().saturating_sub(1)).filter(|&j| q.on_overlap(g1, j) && q.on_overlap(g2, j)).collect();
    // candidate multidegrees
    let mut ms: BTreeSet<Vec<i64>> = BTreeSet::new();
    let inside = |v: &[i64]| v.iter().all(|x| x.abs() <= bound);
    for h in charts.values() {
        let w = h.ring().weights().to_vec();
        for k in h.degrees() {
            for s in h.shifts_at(k) {
                for e in 0..=(2 * bound + 2 * len as i64) {
                    for var in 0..2 {
                        let cand: Vec<i64> = s.iter().zip(&w[var]).map(|(a, b)| a + e * b).collect();
                        if inside(&cand) {
                            ms.insert(cand);
                        }
                    }
                }
            }
        }
    }
    for &j in &overlaps {
        for e in -bound..=bound {
            ms.insert(q.unit(j, e));
        }
    }
    let mut entries = BTreeMap::new();
    for mdeg in ms {
        let tot = total_slice(&charts, &overlaps, &mdeg)?;
        let h = tot.cohomology();
        for c in 0..=max_degree as i64 {
            let v = h.get(c);
            if v > 0 {
                entries.insert((c, mdeg.clone()), v);
            }
        }
    }
    Ok(NodalTable { max_degree: max_degree as i64, entries })
}

fn total_slice<F: Field>(charts: &BTreeMap<usize, FreeComplex<F>>, overlaps: &[usize], m: &[i64]) -> Result<Complex<F>> {
    let mut slices = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for (i, h) in charts {
        slices.insert(*i, h.slice(m)?);
        bases.insert(*i, h.slice_basis(m));
    }
    // overlap U_j contributes O(m), one-dimensional iff m is a multiple of e_j, in degree 1
    let live: Vec<usize> = overlaps.iter().copied().filter(|&j| m.iter().enumerate().all(|(a, x)| a == j || *x == 0)).collect();
    let mut degs: BTreeSet<i64> = BTreeSet::new();
    for c in slices.values() {
        degs.extend(c.degrees());
    }
    if !live.is_empty() {
        degs.insert(0);
        degs.insert(1);
    }
    let mut offsets: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for &k in &degs {
        let mut off = 0;
        for (i, c) in &slices {
            offsets.insert((k, *i), off);
            off += c.dim(k);
        }
        if k == 1 {
            off += live.len();
        }
        dims.insert(k, off);
    }
    let mut d = BTreeMap::new();
    for &k in &degs {
        let rows = dims.get(&(k + 1)).copied().unwrap_or(0);
        let mut mat = ExactMatrix::zeros(rows, dims[&k]);
        for (i, c) in &slices {
            if c.dim(k) > 0 && c.dim(k + 1) > 0 {
                mat.add_block(offsets[&(k + 1, *i)], offsets[&(k, *i)], &c.diff(k));
            }
        }
        if k == 0 {
            let base = rows - live.len();
            for (slot, &j) in live.iter().enumerate() {
                // s ↦ s_{j+1}|U − s_j|U; chart j keeps u (var 1), chart j+1 keeps v (var 0)
                for (i, keep, sgn) in [(j, 1usize, F::one().neg()), (j + 1, 0usize, F::one())] {
                    let Some(b) = bases.get(&i).and_then(|b| b.get(&0)) else { continue };
                    for (col, (_, mu)) in b.iter().enumerate() {
                        if mu.0[1 - keep] == 0 {
                            mat.add_at(base + slot, offsets[&(0, i)] + col, &sgn);
                        }
                    }
                }
            }
        }
        d.insert(k, mat);
    }
    Complex::new(Grading::Z, dims, d)
}
