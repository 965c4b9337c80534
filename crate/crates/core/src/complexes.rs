//! Cochain complexes of finite-dimensional vector spaces, graded by `Z` or `Z/2`.
//!
//! Differentials raise degree by one. In the `Z/2` case degree 1 wraps to degree 0.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, GradedSpace, Grading};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<F: Field> {
    grading: Grading,
    dims: BTreeMap<i64, usize>,
    d: BTreeMap<i64, ExactMatrix<F>>,
}

pub(crate) fn sign<F: Field>(n: i64) -> F {
    if n.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

impl<F: Field> Complex<F> {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(grading: Grading, dims: BTreeMap<i64, usize>, d: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        let mut nd = BTreeMap::new();
        for (k, v) in dims {
            if v > 0 {
                *nd.entry(grading.norm(k)).or_insert(0) += v;
            }
        }
        let c = Complex { grading, dims: nd, d: BTreeMap::new() };
        let mut dd = BTreeMap::new();
        for (k, m) in d {
            let k = grading.norm(k);
            let (r, cc) = (c.dim(c.next(k)), c.dim(k));
            if m.rows() != r || m.cols() != cc {
                return Err(Error::ShapeMismatch(format!("differential at degree {k} is {}x{}, expected {r}x{cc}", m.rows(), m.cols())));
            }
            if !m.is_zero() {
                dd.insert(k, m);
            }
        }
        let c = Complex { d: dd, ..c };
        for k in c.degrees() {
            let comp = c.diff(c.next(k)).dot(&c.diff(k));
            if !comp.is_zero() {
                return Err(Error::NotAComplex(k));
            }
        }
        Ok(c)
    }

    pub fn from_parts(grading: Grading, dims: &[(i64, usize)], diffs: Vec<(i64, ExactMatrix<F>)>) -> Result<Self> {
        Self::new(grading, dims.iter().copied().collect(), diffs.into_iter().collect())
    }

    pub fn zero(grading: Grading) -> Self {
        Complex { grading, dims: BTreeMap::new(), d: BTreeMap::new() }
    }

    /// `k^dim` placed in one degree.
    pub fn stalk(grading: Grading, degree: i64, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        if dim > 0 {
            dims.insert(grading.norm(degree), dim);
        }
        Complex { grading, dims, d: BTreeMap::new() }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn next(&self, k: i64) -> i64 {
        self.grading.norm(k + 1)
    }

    pub fn prev(&self, k: i64) -> i64 {
        self.grading.norm(k - 1)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&self.grading.norm(k)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees with nonzero terms, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Differential out of degree `k`, shape `dim(k+1) x dim(k)`.
    pub fn diff(&self, k: i64) -> ExactMatrix<F> {
        let k = self.grading.norm(k);
        self.d.get(&k).cloned().unwrap_or_else(|| ExactMatrix::zeros(self.dim(self.next(k)), self.dim(k)))
    }

    pub fn cohomology(&self) -> GradedSpace {
        let mut g = GradedSpace::zero(self.grading);
        for k in self.degrees() {
            let n = self.dim(k) - self.diff(k).rank() - self.diff(self.prev(k)).rank();
            g.add(k, n);
        }
        g
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_zero()
    }

    pub fn euler_char(&self) -> i64 {
        self.dims.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }

    /// `C[n]`: degree `i` holds `C^{i+n}`, differential multiplied by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        let s: F = sign(n);
        let dims = self.dims.iter().map(|(k, v)| (self.grading.norm(k - n), *v)).collect();
        let d = self.d.iter().map(|(k, m)| (self.grading.norm(k - n), m.scale(&s))).collect();
        Complex { grading: self.grading, dims, d }
    }

    /// Offsets of each integer degree inside its parity block.
    fn fold_offsets(&self) -> BTreeMap<i64, usize> {
        let mut off = BTreeMap::new();
        let mut acc = [0usize; 2];
        for (k, v) in &self.dims {
            let p = k.rem_euclid(2) as usize;
            off.insert(*k, acc[p]);
            acc[p] += v;
        }
        off
    }

    /// Folding: even and odd parts are the sums of even and odd terms.
    pub fn fold(&self) -> Self {
        if self.grading == Grading::Z2 {
            return self.clone();
        }
        let off = self.fold_offsets();
        let mut tot = [0usize; 2];
        for (k, v) in &self.dims {
            tot[k.rem_euclid(2) as usize] += v;
        }
        let mut d0 = ExactMatrix::zeros(tot[1], tot[0]);
        let mut d1 = ExactMatrix::zeros(tot[0], tot[1]);
        for (k, m) in &self.d {
            let target = if k.rem_euclid(2) == 0 { &mut d0 } else { &mut d1 };
            target.add_block(off[&(k + 1)], off[k], m);
        }
        Complex::new(Grading::Z2, [(0, tot[0]), (1, tot[1])].into_iter().collect(), [(0, d0), (1, d1)].into_iter().collect())
            .expect("folding preserves d^2 = 0")
    }

    /// Integer-graded window `lo..=hi` of the 2-periodic unfurling of a `Z/2` complex.
    pub fn unfurl(&self, lo: i64, hi: i64) -> Self {
        assert_eq!(self.grading, Grading::Z2, "unfurl applies to Z/2 complexes");
        let mut dims = BTreeMap::new();
        let mut d = BTreeMap::new();
        for k in lo..=hi {
            dims.insert(k, self.dim(k));
            if k < hi {
                d.insert(k, self.diff(k));
            }
        }
        Complex::new(Grading::Z, dims, d).expect("window of a complex")
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.grading != other.grading {
            return Err(Error::GradingMismatch);
        }
        let mut dims = self.dims.clone();
        for (k, v) in &other.dims {
            *dims.entry(*k).or_insert(0) += v;
        }
        let mut d = BTreeMap::new();
        let keys: alloc::collections::BTreeSet<i64> = dims.keys().copied().collect();
        for k in keys {
            let nk = self.next(k);
            let mut m = ExactMatrix::zeros(self.dim(nk) + other.dim(nk), self.dim(k) + other.dim(k));
            m.add_block(0, 0, &self.diff(k));
            m.add_block(self.dim(nk), self.dim(k), &other.diff(k));
            d.insert(k, m);
        }
        Complex::new(self.grading, dims, d)
    }

    /// All degrees that can carry a nonzero Hom component from `self` to `other`.
    fn hom_degree_range(&self, other: &Self) -> Vec<i64> {
        match self.grading {
            Grading::Z2 => vec![0, 1],
            Grading::Z => {
                if self.dims.is_empty() || other.dims.is_empty() {
                    return Vec::new();
                }
                let (xl, xh) = (*self.dims.keys().next().unwrap(), *self.dims.keys().last().unwrap());
                let (yl, yh) = (*other.dims.keys().next().unwrap(), *other.dims.keys().last().unwrap());
                ((yl - xh)..=(yh - xl)).collect()
            }
        }
    }
}

/// Basis bookkeeping for the degree-`n` part of a Hom complex: one block per source degree.
#[derive(Clone, Debug)]
pub struct HomLayout {
    pub n: i64,
    /// (source degree, rows = dim target, cols = dim source, offset)
    pub blocks: Vec<(i64, usize, usize, usize)>,
    pub dim: usize,
}

impl HomLayout {
    pub fn new<F: Field>(x: &Complex<F>, y: &Complex<F>, n: i64) -> Self {
        let mut blocks = Vec::new();
        let mut off = 0;
        for i in x.degrees() {
            let r = y.dim(i + n);
            let c = x.dim(i);
            if r * c > 0 {
                blocks.push((i, r, c, off));
                off += r * c;
            }
        }
        HomLayout { n, blocks, dim: off }
    }

    pub fn index(&self, i: i64, r: usize, c: usize) -> Option<usize> {
        self.blocks.iter().find(|b| b.0 == i).map(|&(_, _, cols, off)| off + r * cols + c)
    }

    /// Converts a coordinate vector into component matrices.
    pub fn to_map<F: Field>(&self, x: &Complex<F>, y: &Complex<F>, v: &[F]) -> ChainMap<F> {
        let mut comps = BTreeMap::new();
        for &(i, rows, cols, off) in &self.blocks {
            let mut m = ExactMatrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, v[off + r * cols + c].clone());
                }
            }
            comps.insert(i, m);
        }
        ChainMap { source: x.clone(), target: y.clone(), degree: self.n, comps }
    }

    pub fn to_vector<F: Field>(&self, f: &ChainMap<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for &(i, _, cols, off) in &self.blocks {
            let m = f.component(i);
            for (r, c, a) in m.entries() {
                v[off + r * cols + c] = a.clone();
            }
        }
        v
    }
}

/// Differential `Hom^n -> Hom^{n+1}`: `f ↦ d∘f − (−1)^n f∘d`.
pub fn hom_differential<F: Field>(x: &Complex<F>, y: &Complex<F>, n: i64) -> (HomLayout, HomLayout, ExactMatrix<F>) {
    let src = HomLayout::new(x, y, n);
    let tgt = HomLayout::new(x, y, n + 1);
    let mut m = ExactMatrix::zeros(tgt.dim, src.dim);
    let s: F = sign::<F>(n).neg();
    for &(i, rows, cols, off) in &src.blocks {
        let dy = y.diff(i + n);
        let dx_prev = x.diff(x.prev(i));
        let ip = x.prev(i);
        for r in 0..rows {
            for c in 0..cols {
                let col = off + r * cols + c;
                for rr in 0..dy.rows() {
                    let a = dy.get(rr, r);
                    if !a.is_zero() {
                        let row = tgt.index(i, rr, c).expect("target block exists");
                        m.add_at(row, col, &a);
                    }
                }
                if x.dim(ip) > 0 {
                    for (cc, a) in dx_prev.row(c).iter() {
                        let row = tgt.index(ip, r, *cc).expect("target block exists");
                        m.add_at(row, col, &s.mul(a));
                    }
                }
            }
        }
    }
    (src, tgt, m)
}

/// Total Hom complex.
pub fn hom_complex<F: Field>(x: &Complex<F>, y: &Complex<F>) -> Result<Complex<F>> {
    if x.grading != y.grading {
        return Err(Error::GradingMismatch);
    }
    let mut dims = BTreeMap::new();
    let mut d = BTreeMap::new();
    for n in x.hom_degree_range(y) {
        let (src, _, m) = hom_differential(x, y, n);
        dims.insert(n, src.dim);
        d.insert(n, m);
    }
    if x.grading == Grading::Z {
        // drop the differential leaving the top degree if the next layout is outside the range
        let top = dims.keys().last().copied();
        if let Some(t) = top {
            if let Some(m) = d.get(&t) {
                if m.rows() > 0 {
                    dims.insert(t + 1, m.rows());
                }
            }
        }
    }
    Complex::new(x.grading, dims, d)
}

/// Degree-`n` morphism of graded spaces given by components `X^i -> Y^{i+n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F: Field> {
    pub source: Complex<F>,
    pub target: Complex<F>,
    pub degree: i64,
    comps: BTreeMap<i64, ExactMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    /// Validates shapes and commutation `d f = (−1)^n f d`.
    pub fn new(source: Complex<F>, target: Complex<F>, degree: i64, comps: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        let f = Self::unchecked(source, target, degree, comps)?;
        if !f.commutes() {
            let bad = f.source.degrees().into_iter().next().unwrap_or(0);
            return Err(Error::NotAChainMap(bad));
        }
        Ok(f)
    }

    /// Validates shapes only.
    pub fn unchecked(source: Complex<F>, target: Complex<F>, degree: i64, comps: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        if source.grading != target.grading {
            return Err(Error::GradingMismatch);
        }
        let g = source.grading;
        let mut cc = BTreeMap::new();
        for (i, m) in comps {
            let i = g.norm(i);
            if m.rows() != target.dim(i + degree) || m.cols() != source.dim(i) {
                return Err(Error::ShapeMismatch(format!("chain map component at degree {i}")));
            }
            if !m.is_zero() {
                cc.insert(i, m);
            }
        }
        Ok(ChainMap { source, target, degree: if g == Grading::Z2 { degree.rem_euclid(2) } else { degree }, comps: cc })
    }

    pub fn identity(c: &Complex<F>) -> Self {
        let comps = c.degrees().into_iter().map(|k| (k, ExactMatrix::identity(c.dim(k)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, comps }
    }

    pub fn zero(source: &Complex<F>, target: &Complex<F>, degree: i64) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn component(&self, i: i64) -> ExactMatrix<F> {
        let i = self.source.grading.norm(i);
        self.comps.get(&i).cloned().unwrap_or_else(|| ExactMatrix::zeros(self.target.dim(i + self.degree), self.source.dim(i)))
    }

    pub fn components(&self) -> &BTreeMap<i64, ExactMatrix<F>> {
        &self.comps
    }

    pub fn commutes(&self) -> bool {
        let s: F = sign(self.degree);
        for i in self.source.degrees().into_iter().chain(self.source.degrees().into_iter().map(|k| k - 1)) {
            let lhs = self.target.diff(i + self.degree).dot(&self.component(i));
            let rhs = self.component(i + 1).dot(&self.source.diff(i)).scale(&s);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn scale(&self, s: &F) -> Self {
        let comps = self.comps.iter().map(|(k, m)| (*k, m.scale(s))).filter(|(_, m)| !m.is_zero()).collect();
        ChainMap { comps, ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::ShapeMismatch("degrees differ".into()));
        }
        let mut comps = self.comps.clone();
        for (k, m) in &other.comps {
            let cur = self.component(*k);
            comps.insert(*k, cur.add(m)?);
        }
        Self::unchecked(self.source.clone(), self.target.clone(), self.degree, comps)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::ShapeMismatch("composition of non-composable maps".into()));
        }
        let mut comps = BTreeMap::new();
        for i in self.source.degrees() {
            let m = other.component(i + self.degree).dot(&self.component(i));
            comps.insert(i, m);
        }
        Self::unchecked(self.source.clone(), other.target.clone(), self.degree + other.degree, comps)
    }

    /// The map shifted to `X[n] -> Y[n]` with the sign `(−1)^{n·deg}` absorbed into components.
    pub fn shift(&self, n: i64) -> Self {
        let s: F = sign(n * self.degree);
        let g = self.source.grading;
        let comps = self.comps.iter().map(|(k, m)| (g.norm(k - n), m.scale(&s))).collect();
        ChainMap { source: self.source.shift(n), target: self.target.shift(n), degree: self.degree, comps }
    }
}

/// Mapping cone of a degree-0 map: `Cone^i = X^{i+1} ⊕ Y^i`, `d(x, y) = (−dx, f x + d y)`.
pub fn cone<F: Field>(f: &ChainMap<F>) -> Result<Complex<F>> {
    if f.degree != 0 {
        return Err(Error::InvalidArgument("cone requires a degree-0 map".into()));
    }
    let x = &f.source;
    let y = &f.target;
    let g = x.grading;
    let mut keys: alloc::collections::BTreeSet<i64> = y.degrees().into_iter().collect();
    for k in x.degrees() {
        keys.insert(g.norm(k - 1));
    }
    let dims: BTreeMap<i64, usize> = keys.iter().map(|k| (*k, x.dim(k + 1) + y.dim(*k))).collect();
    let mut d = BTreeMap::new();
    for &k in &keys {
        let nk = g.norm(k + 1);
        let (xa, xb) = (x.dim(k + 1), x.dim(nk + 1));
        let mut m = ExactMatrix::zeros(xb + y.dim(nk), xa + y.dim(k));
        m.add_block(0, 0, &x.diff(k + 1).neg());
        m.add_block(xb, 0, &f.component(k + 1));
        m.add_block(xb, xa, &y.diff(k));
        d.insert(k, m);
    }
    Complex::new(g, dims, d)
}

pub fn is_quasi_iso<F: Field>(f: &ChainMap<F>) -> bool {
    f.degree == 0 && cone(f).map(|c| c.is_acyclic()).unwrap_or(false)
}

/// Degree-0 cocycles of `Hom(x, y)`, as chain maps.
pub fn degree_zero_cocycles<F: Field>(x: &Complex<F>, y: &Complex<F>) -> Vec<ChainMap<F>> {
    let (src, _, d) = hom_differential(x, y, 0);
    d.kernel().iter().map(|v| src.to_map(x, y, v)).collect()
}

/// Chosen cocycle representatives of one cohomology group, with coordinates for classes.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    pub reps: Vec<Vec<F>>,
    solver: ExactMatrix<F>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of the cocycle `z` in the chosen basis.
    pub fn coords(&self, z: &[F]) -> Option<Vec<F>> {
        if self.reps.is_empty() {
            return Some(Vec::new());
        }
        let x = self.solver.solve(z)?;
        Some(x[..self.reps.len()].to_vec())
    }
}

impl<F: Field> Complex<F> {
    /// Cocycle representatives for `H^k`, completing a basis of the boundaries.
    pub fn cohomology_basis(&self, k: i64) -> CohomologyBasis<F> {
        let n = self.dim(k);
        let din = self.diff(self.prev(k));
        let mut span: Vec<Vec<F>> = Vec::new();
        let mut rank = 0;
        for c in 0..din.cols() {
            let v = din.column(c);
            let mut cand = span.clone();
            cand.push(v.clone());
            let r = ExactMatrix::from_columns(n, &cand).rank();
            if r > rank {
                rank = r;
                span.push(v);
            }
        }
        let boundaries = span.len();
        let mut reps = Vec::new();
        for z in self.diff(k).kernel() {
            let mut cand = span.clone();
            cand.push(z.clone());
            let r = ExactMatrix::from_columns(n, &cand).rank();
            if r > rank {
                rank = r;
                span.push(z.clone());
                reps.push(z);
            }
        }
        let mut cols = reps.clone();
        cols.extend(span[..boundaries].iter().cloned());
        CohomologyBasis { reps, solver: ExactMatrix::from_columns(n, &cols) }
    }
}

/// Matrices of the map induced on cohomology, keyed by source degree, in the bases of
/// [`Complex::cohomology_basis`].
pub fn induced_on_cohomology<F: Field>(f: &ChainMap<F>) -> BTreeMap<i64, ExactMatrix<F>> {
    let mut out = BTreeMap::new();
    for k in f.source.degrees() {
        let hs = f.source.cohomology_basis(k);
        if hs.dim() == 0 {
            continue;
        }
        let t = f.source.grading.norm(k + f.degree);
        let ht = f.target.cohomology_basis(t);
        let comp = f.component(k);
        let cols: Vec<Vec<F>> = hs
            .reps
            .iter()
            .map(|r| {
                let img = if comp.cols() == r.len() { comp.mul_vec(r) } else { vec![F::zero(); f.target.dim(t)] };
                ht.coords(&img).expect("image of a cocycle is a cocycle")
            })
            .collect();
        out.insert(k, ExactMatrix::from_columns(ht.dim(), &cols));
    }
    out
}

/// Small deterministic generator for coefficient search.
pub(crate) struct Lcg(u64);

impl Lcg {
    pub(crate) fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }
    pub(crate) fn next_coeff(&mut self) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) % 97) as i64 - 48
    }
}

/// Linear combination of maps of equal type.
pub fn combine<F: Field>(maps: &[ChainMap<F>], coeffs: &[i64]) -> ChainMap<F> {
    let mut acc = ChainMap::zero(&maps[0].source, &maps[0].target, maps[0].degree);
    for (m, c) in maps.iter().zip(coeffs) {
        if *c != 0 {
            acc = acc.add(&m.scale(&F::from_i64(*c))).expect("same type");
        }
    }
    acc
}

/// Searches the degree-0 cocycles for a quasi-isomorphism.
///
/// Tries basis cocycles, then sign combinations, then pseudo-random integer combinations.
pub fn find_quasi_iso<F: Field>(x: &Complex<F>, y: &Complex<F>) -> Option<ChainMap<F>> {
    if x.grading != y.grading || x.cohomology() != y.cohomology() {
        return None;
    }
    let z = degree_zero_cocycles(x, y);
    if z.is_empty() {
        return if x.is_acyclic() { Some(ChainMap::zero(x, y, 0)) } else { None };
    }
    for f in &z {
        if is_quasi_iso(f) {
            return Some(f.clone());
        }
    }
    let k = z.len();
    if k <= 8 {
        for mask in 0..(1u32 << (k - 1)) {
            let coeffs: Vec<i64> = (0..k).map(|i| if i > 0 && mask & (1 << (i - 1)) != 0 { -1 } else { 1 }).collect();
            let f = combine(&z, &coeffs);
            if is_quasi_iso(&f) {
                return Some(f);
            }
        }
    }
    let mut rng = Lcg::new(k as u64 + 17);
    for _ in 0..24 {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.next_coeff()).collect();
        let f = combine(&z, &coeffs);
        if is_quasi_iso(&f) {
            return Some(f);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type C = Complex<Q>;
    type M = ExactMatrix<Q>;

    fn k_at(d: i64) -> C {
        C::stalk(Grading::Z, d, 1)
    }

    fn id_complex() -> C {
        C::from_parts(Grading::Z, &[(0, 1), (1, 1)], vec![(0, M::identity(1))]).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(k_at(0).cohomology(), GradedSpace::from_pairs(Grading::Z, &[(0, 1)]));
        assert!(id_complex().is_acyclic());
        let c = C::from_parts(Grading::Z, &[(0, 1), (1, 2), (2, 1)], vec![]).unwrap();
        assert_eq!(c.cohomology(), GradedSpace::from_pairs(Grading::Z, &[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn rejects_non_complex() {
        let r = C::from_parts(Grading::Z, &[(0, 1), (1, 1), (2, 1)], vec![(0, M::identity(1)), (1, M::identity(1))]);
        assert_eq!(r, Err(Error::NotAComplex(0)));
    }

    #[test]
    fn cone_examples() {
        let k = k_at(0);
        assert!(cone(&ChainMap::identity(&k)).unwrap().is_acyclic());
        let z = cone(&ChainMap::zero(&k, &k, 0)).unwrap();
        // source sits one degree lower in the cone
        assert_eq!(z.cohomology(), GradedSpace::from_pairs(Grading::Z, &[(-1, 1), (0, 1)]));
    }

    #[test]
    fn cone_of_t_on_degree_one_slice() {
        // k[t] --t--> k[t] at t-degree 1: both terms one-dimensional, map 1
        let k = k_at(0);
        let f = ChainMap::new(k.clone(), k.clone(), 0, [(0, M::identity(1))].into_iter().collect()).unwrap();
        assert!(cone(&f).unwrap().is_acyclic());
    }

    #[test]
    fn shift_examples() {
        let c = k_at(0);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(c.shift(2).fold().cohomology(), c.fold().cohomology());
        assert_eq!(c.shift(1).cohomology(), GradedSpace::from_pairs(Grading::Z, &[(-1, 1)]));
    }

    #[test]
    fn fold_examples() {
        let c = C::from_parts(Grading::Z, &[(0, 1), (2, 1)], vec![]).unwrap();
        assert_eq!(c.fold().cohomology(), GradedSpace::even_odd(2, 0));
        assert!(id_complex().fold().is_acyclic());
        assert_eq!(k_at(-1).fold().cohomology(), GradedSpace::even_odd(0, 1));
    }

    #[test]
    fn hom_examples() {
        let h = hom_complex(&k_at(0), &k_at(0)).unwrap();
        assert_eq!(h.cohomology(), GradedSpace::from_pairs(Grading::Z, &[(0, 1)]));
        let h = hom_complex(&k_at(0), &k_at(1)).unwrap();
        assert_eq!(h.cohomology(), GradedSpace::from_pairs(Grading::Z, &[(1, 1)]));
        let z = cone(&ChainMap::identity(&k_at(0))).unwrap();
        let other = C::from_parts(Grading::Z, &[(0, 2), (1, 1)], vec![]).unwrap();
        assert!(hom_complex(&z, &other).unwrap().is_acyclic());
        assert_eq!(hom_complex(&k_at(0), &k_at(0).fold()), Err(Error::GradingMismatch));
    }

    #[test]
    fn quasi_iso_examples() {
        let k = k_at(0);
        assert!(is_quasi_iso(&ChainMap::identity(&k)));
        assert!(!is_quasi_iso(&ChainMap::zero(&k, &k, 0)));
        // k -> (k --1--> k --0--> k) including the last term
        let big = C::from_parts(Grading::Z, &[(-1, 1), (0, 2)], vec![(-1, M::from_ints(2, 1, &[1, 0]))]).unwrap();
        let f = find_quasi_iso(&k, &big).expect("quasi-iso exists");
        assert!(is_quasi_iso(&f));
        assert!(find_quasi_iso(&k, &k_at(1)).is_none());
    }

    #[test]
    fn z2_hom_and_cone() {
        let a = C::stalk(Grading::Z2, 0, 1);
        let b = C::stalk(Grading::Z2, 1, 1);
        assert_eq!(hom_complex(&a, &b).unwrap().cohomology(), GradedSpace::even_odd(0, 1));
        let per = C::from_parts(Grading::Z2, &[(0, 1), (1, 1)], vec![(0, M::identity(1))]).unwrap();
        assert!(per.is_acyclic());
        assert!(cone(&ChainMap::identity(&per)).unwrap().is_acyclic());
    }

    #[test]
    fn composition_and_shift_of_maps() {
        let c = C::from_parts(Grading::Z, &[(0, 1), (1, 1)], vec![(0, M::from_ints(1, 1, &[2]))]).unwrap();
        let id = ChainMap::identity(&c);
        assert_eq!(id.then(&id).unwrap(), id);
        assert!(id.shift(1).commutes());
        assert!(is_quasi_iso(&id.shift(3)));
    }
}
