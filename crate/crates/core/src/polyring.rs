//! Multigraded polynomial rings with monomial relations, and complexes of graded free modules.
//!
//! A generator with shift `s` sits in multidegree `s`; an entry `p` of a map from a generator
//! with shift `s` to one with shift `t` must be homogeneous of degree `s − t`. The slice of a
//! complex at `m` is the field complex spanned by `μ·e` with `deg μ + shift(e) = m`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{sign, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Grading};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiMonomial(pub Vec<i64>);

impl MultiMonomial {
    pub fn one(nvars: usize) -> Self {
        MultiMonomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiMonomial(e)
    }

    /// Product of the listed variables.
    pub fn product(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &i in vars {
            e[i] += 1;
        }
        MultiMonomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        MultiMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when it is a monomial.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(MultiMonomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }
}

/// Ideal generated by monomials, kept minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<MultiMonomial>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn new(nvars: usize, gens: Vec<MultiMonomial>) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for g in gens {
            if g.nvars() != nvars || g.0.iter().any(|e| *e < 0) {
                return Err(Error::ShapeMismatch(format!("monomial {:?} in {nvars} variables", g.0)));
            }
            out.insert(g);
        }
        Ok(out)
    }

    fn insert(&mut self, g: MultiMonomial) {
        if self.gens.iter().any(|h| h.divides(&g)) {
            return;
        }
        self.gens.retain(|h| !g.divides(h));
        self.gens.push(g);
        self.gens.sort();
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for g in &other.gens {
            out.insert(g.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiMonomial] {
        &self.gens
    }

    pub fn contains(&self, m: &MultiMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }
}

/// Dimensions of `k[z]/I` in total degrees `0..=d`, by enumerating standard monomials.
pub fn hilbert_function(ideal: &MonomialIdeal, d: usize) -> Vec<usize> {
    let n = ideal.nvars;
    let mut out = vec![0; d + 1];
    let mut e = vec![0i64; n];
    fn rec(i: usize, left: i64, e: &mut Vec<i64>, ideal: &MonomialIdeal, out: &mut Vec<usize>, d: usize) {
        if i == e.len() {
            let m = MultiMonomial(e.clone());
            if !ideal.contains(&m) {
                out[d - left as usize] += 1;
            }
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, ideal, out, d);
        }
        e[i] = 0;
    }
    if n == 0 {
        out[0] = 1;
        return out;
    }
    rec(0, d as i64, &mut e, ideal, &mut out, d);
    out
}

/// Polynomial ring in weighted variables, some possibly Laurent, modulo a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    rank: usize,
    weights: Vec<Vec<i64>>,
    laurent: Vec<bool>,
    ideal: MonomialIdeal,
}

impl Ring {
    /// Variables of weights `weights[i]`; on each axis the non-Laurent weights share a sign, and
    /// each Laurent variable owns a unit axis.
    pub fn new(weights: Vec<Vec<i64>>, laurent: Vec<bool>, ideal: MonomialIdeal) -> Result<Self> {
        let k = weights.first().map(|w| w.len()).unwrap_or(0);
        Self::graded(k, weights, laurent, ideal)
    }

    /// As [`Ring::new`], with the rank of the grading group given explicitly.
    pub fn graded(k: usize, weights: Vec<Vec<i64>>, laurent: Vec<bool>, ideal: MonomialIdeal) -> Result<Self> {
        let n = weights.len();
        if laurent.len() != n || ideal.nvars != n {
            return Err(Error::ShapeMismatch("ring data lengths differ".into()));
        }
        if weights.iter().any(|w| w.len() != k) {
            return Err(Error::ShapeMismatch("weights of different lengths".into()));
        }
        for j in 0..k {
            let signs: BTreeSet<i64> = (0..n).filter(|&i| !laurent[i] && weights[i][j] != 0).map(|i| weights[i][j].signum()).collect();
            if signs.len() > 1 {
                return Err(Error::InvalidArgument(format!("axis {j} has weights of both signs")));
            }
        }
        for i in 0..n {
            if k > 0 && weights[i].iter().all(|w| *w == 0) {
                return Err(Error::InvalidArgument(format!("variable {i} has weight zero")));
            }
            if laurent[i] {
                let nz: Vec<usize> = (0..k).filter(|&j| weights[i][j] != 0).collect();
                if nz.len() != 1 || weights[i][nz[0]].abs() != 1 || (0..n).any(|h| h != i && weights[h][nz[0]] != 0) {
                    return Err(Error::InvalidArgument(format!("Laurent variable {i} must own a unit axis")));
                }
                if ideal.gens.iter().any(|g| g.0[i] != 0) {
                    return Err(Error::InvalidArgument("relations may not involve Laurent variables".into()));
                }
            }
        }
        Ok(Ring { rank: k, weights, laurent, ideal })
    }

    /// `k[z_1..z_n]` with `deg z_i = e_i`.
    pub fn polynomial(n: usize) -> Self {
        let weights = (0..n).map(|i| MultiMonomial::var(n, i).0).collect();
        Ring { rank: n, weights, laurent: vec![false; n], ideal: MonomialIdeal::zero(n) }
    }

    pub fn quotient(&self, extra: &MonomialIdeal) -> Result<Self> {
        Ring::graded(self.rank, self.weights.clone(), self.laurent.clone(), self.ideal.sum(extra))
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn same_variables(&self, other: &Ring) -> bool {
        self.rank == other.rank && self.weights == other.weights && self.laurent == other.laurent
    }

    pub fn degree(&self, m: &MultiMonomial) -> Vec<i64> {
        let mut d = vec![0; self.rank()];
        for (i, e) in m.0.iter().enumerate() {
            for (j, w) in self.weights[i].iter().enumerate() {
                d[j] += e * w;
            }
        }
        d
    }

    /// Zero in the ring: a relation divides it, or a non-Laurent exponent is negative.
    pub fn is_standard(&self, m: &MultiMonomial) -> bool {
        m.0.iter().enumerate().all(|(i, e)| self.laurent[i] || *e >= 0) && !self.ideal.contains(m)
    }

    /// Standard monomials of the given weight.
    pub fn monomials_of_degree(&self, w: &[i64]) -> Vec<MultiMonomial> {
        let n = self.nvars();
        let mut rem: Vec<i64> = w.to_vec();
        let mut e = vec![0i64; n];
        for i in 0..n {
            if self.laurent[i] {
                let j = self.weights[i].iter().position(|x| *x != 0).expect("unit axis");
                e[i] = rem[j] * self.weights[i][j];
                rem[j] = 0;
            }
        }
        let order: Vec<usize> = (0..n).filter(|&i| !self.laurent[i]).collect();
        let mut out = Vec::new();
        self.dfs(&order, 0, &mut rem, &mut e, &mut out);
        out
    }

    fn dfs(&self, order: &[usize], k: usize, rem: &mut Vec<i64>, e: &mut Vec<i64>, out: &mut Vec<MultiMonomial>) {
        if k == order.len() {
            if rem.iter().all(|x| *x == 0) {
                let m = MultiMonomial(e.clone());
                if !self.ideal.contains(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let i = order[k];
        let w = &self.weights[i];
        let mut bound = i64::MAX;
        for (j, wj) in w.iter().enumerate() {
            if *wj != 0 {
                let q = rem[j] / wj;
                bound = bound.min(if q < 0 { -1 } else { q });
            }
        }
        for t in 0..=bound.max(-1) {
            e[i] = t;
            for (j, wj) in w.iter().enumerate() {
                rem[j] -= wj * t;
            }
            let m = MultiMonomial(e.clone());
            let dead = self.ideal.gens.iter().any(|g| g.divides(&m));
            if !dead {
                self.dfs(order, k + 1, rem, e, out);
            }
            for (j, wj) in w.iter().enumerate() {
                rem[j] += wj * t;
            }
            if dead {
                break;
            }
        }
        e[i] = 0;
    }

    /// Standard monomials of total weight at most `budget` (positively weighted rings only).
    pub fn monomials_up_to(&self, budget: i64) -> Result<Vec<MultiMonomial>> {
        let totals: Vec<i64> = self.weights.iter().map(|w| w.iter().sum()).collect();
        if self.laurent.iter().any(|l| *l) || totals.iter().any(|t| *t <= 0) {
            return Err(Error::InvalidArgument("bounded enumeration needs positive weights".into()));
        }
        let mut out = Vec::new();
        let mut e = vec![0i64; self.nvars()];
        fn rec(r: &Ring, totals: &[i64], i: usize, left: i64, e: &mut Vec<i64>, out: &mut Vec<MultiMonomial>) {
            if i == e.len() {
                out.push(MultiMonomial(e.clone()));
                return;
            }
            let mut t = 0;
            while t * totals[i] <= left {
                e[i] = t;
                if r.ideal.contains(&MultiMonomial(e.clone())) {
                    break;
                }
                rec(r, totals, i + 1, left - t * totals[i], e, out);
                t += 1;
            }
            e[i] = 0;
        }
        if budget >= 0 {
            rec(self, &totals, 0, budget, &mut e, &mut out);
        }
        Ok(out)
    }
}

/// Sparse polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    terms: BTreeMap<MultiMonomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(c: F, m: MultiMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(c, MultiMonomial::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(F::one(), MultiMonomial::var(nvars, i))
    }

    pub fn add_term(&mut self, c: F, m: MultiMonomial) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(F::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiMonomial, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(c.clone(), m.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.add_term(c.mul(s), m.clone());
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(x.mul(y), a.mul(b));
            }
        }
        p
    }

    /// Drops terms that vanish in the ring.
    pub fn reduce(&self, r: &Ring) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| r.is_standard(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// The common degree of all terms, if homogeneous.
    pub fn degree(&self, r: &Ring) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| r.degree(m));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Image under a monomial substitution (`None` sends a variable to zero).
    pub fn substitute(&self, images: &[Option<MultiMonomial>], nvars: usize) -> Self {
        let mut p = Self::zero();
        'terms: for (m, c) in &self.terms {
            let mut acc = MultiMonomial::one(nvars);
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match &images[i] {
                    None => continue 'terms,
                    Some(img) => {
                        for (j, x) in img.0.iter().enumerate() {
                            acc.0[j] += x * e;
                        }
                    }
                }
            }
            p.add_term(c.clone(), acc);
        }
        p
    }
}

/// Matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<((usize, usize), Poly<F>)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for ((r, c), p) in entries {
            m.add_at(r, c, &p);
        }
        m
    }

    pub fn scalar(n: usize, p: &Poly<F>) -> Self {
        Self::from_entries(n, n, (0..n).map(|i| ((i, i), p.clone())).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Poly<F> {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_at(&mut self, r: usize, c: usize, p: &Poly<F>) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        let e = self.entries.entry((r, c)).or_insert_with(Poly::zero);
        *e = e.add(p);
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly<F>)> {
        self.entries.iter()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for ((r, k), p) in &self.entries {
            for ((k2, c), q) in o.entries.range((*k, 0)..(*k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.add_at(*r, *c, &p.mul(q));
            }
        }
        Ok(out)
    }

    pub fn reduce(&self, r: &Ring) -> Self {
        let entries = self.entries.iter().map(|(k, p)| (*k, p.reduce(r))).filter(|(_, p)| !p.is_zero()).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, p: &Poly<F>) -> Self {
        let entries = self.entries.iter().map(|(k, q)| (*k, q.mul(p))).filter(|(_, q)| !q.is_zero()).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn substitute(&self, images: &[Option<MultiMonomial>], nvars: usize) -> Self {
        let entries = self.entries.iter().map(|(k, p)| (*k, p.substitute(images, nvars))).filter(|(_, p)| !p.is_zero()).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for ((r, c), p) in &b.entries {
            self.add_at(r0 + r, c0 + c, p);
        }
    }
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vscale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

/// A complex of graded free modules over a [`Ring`], possibly curved.
///
/// In the two-periodic case the terms are stored in degrees 0 and 1; the unfurled term in
/// degree `2j + r` has the shifts of degree `r` moved by `j · period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex<F: Field> {
    ring: Ring,
    grading: Grading,
    period: Vec<i64>,
    shifts: BTreeMap<i64, Vec<Vec<i64>>>,
    d: BTreeMap<i64, PolyMatrix<F>>,
    curvature: Poly<F>,
}

impl<F: Field> FreeComplex<F> {
    pub fn new(
        ring: Ring,
        grading: Grading,
        period: Vec<i64>,
        shifts: BTreeMap<i64, Vec<Vec<i64>>>,
        d: BTreeMap<i64, PolyMatrix<F>>,
    ) -> Result<Self> {
        Self::curved(ring, grading, period, shifts, d, Poly::zero())
    }

    /// A complex whose differential squares to `curvature · id`.
    pub fn curved(
        ring: Ring,
        grading: Grading,
        period: Vec<i64>,
        shifts: BTreeMap<i64, Vec<Vec<i64>>>,
        d: BTreeMap<i64, PolyMatrix<F>>,
        curvature: Poly<F>,
    ) -> Result<Self> {
        let k = ring.rank();
        let period = if grading == Grading::Z { vec![0; k] } else { period };
        if period.len() != k {
            return Err(Error::ShapeMismatch("period has the wrong length".into()));
        }
        let shifts: BTreeMap<i64, Vec<Vec<i64>>> = shifts.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        for (deg, v) in &shifts {
            if grading == Grading::Z2 && !(0..2).contains(deg) {
                return Err(Error::InvalidArgument("two-periodic terms live in degrees 0 and 1".into()));
            }
            if v.iter().any(|s| s.len() != k) {
                return Err(Error::ShapeMismatch("generator shift of the wrong length".into()));
            }
        }
        let c = FreeComplex { ring, grading, period, shifts, d: BTreeMap::new(), curvature };
        let mut dd = BTreeMap::new();
        for (deg, m) in d {
            let (src, tgt) = (c.shifts_at(deg), c.shifts_at(deg + 1));
            if m.rows != tgt.len() || m.cols != src.len() {
                return Err(Error::ShapeMismatch(format!("differential at degree {deg}")));
            }
            for ((r, col), p) in &m.entries {
                let want = vsub(&src[*col], &tgt[*r]);
                for (mono, _) in p.terms() {
                    if c.ring.degree(mono) != want {
                        return Err(Error::NotHomogeneous(format!("entry ({r},{col}) of d^{deg}")));
                    }
                }
            }
            let m = m.reduce(&c.ring);
            if !m.is_zero() {
                dd.insert(deg, m);
            }
        }
        let c = FreeComplex { d: dd, ..c };
        c.check_square()?;
        Ok(c)
    }

    fn check_square(&self) -> Result<()> {
        let degs: Vec<i64> = match self.grading {
            Grading::Z2 => vec![0, 1],
            Grading::Z => self.shifts.keys().copied().collect(),
        };
        for k in degs {
            let a = self.diff(k);
            let sq = self.diff(k + 1).mul(&a)?.reduce(&self.ring);
            let want = if self.curvature.is_zero() {
                PolyMatrix::zeros(sq.rows, sq.cols)
            } else {
                if sq.rows != a.cols {
                    return Err(Error::NotAComplex(k));
                }
                PolyMatrix::scalar(a.cols, &self.curvature).reduce(&self.ring)
            };
            if sq != want {
                return Err(Error::NotAComplex(k));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn curvature(&self) -> &Poly<F> {
        &self.curvature
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.shifts.keys().copied().collect()
    }

    /// Generator shifts of the (unfurled) term in degree `k`.
    pub fn shifts_at(&self, k: i64) -> Vec<Vec<i64>> {
        match self.grading {
            Grading::Z => self.shifts.get(&k).cloned().unwrap_or_default(),
            Grading::Z2 => {
                let (j, r) = (k.div_euclid(2), k.rem_euclid(2));
                let p = vscale(&self.period, j);
                self.shifts.get(&r).map(|v| v.iter().map(|s| vadd(s, &p)).collect()).unwrap_or_default()
            }
        }
    }

    pub fn rank_at(&self, k: i64) -> usize {
        self.shifts.get(&self.grading.norm(k)).map(|v| v.len()).unwrap_or(0)
    }

    pub fn diff(&self, k: i64) -> PolyMatrix<F> {
        let k = self.grading.norm(k);
        self.d.get(&k).cloned().unwrap_or_else(|| PolyMatrix::zeros(self.rank_at(k + 1), self.rank_at(k)))
    }

    /// Degrees of the slice window: every degree for `Z`, `−1..=2` for two-periodic complexes.
    fn window(&self) -> Vec<i64> {
        match self.grading {
            Grading::Z => self.degrees(),
            Grading::Z2 => vec![-1, 0, 1, 2],
        }
    }

    /// The multidegree-`m` part, as an integer-graded field complex. Two-periodic complexes
    /// give the unfurled window in degrees `−1..=2`, whose cohomology at 0 and 1 is exact.
    pub fn slice(&self, m: &[i64]) -> Result<Complex<F>> {
        if !self.curvature.is_zero() {
            return Err(Error::InvalidArgument("a curved complex has no cohomology".into()));
        }
        if self.ring.rank() == 0 {
            return Err(Error::InvalidArgument("an ungraded complex has no finite slices".into()));
        }
        let win = self.window();
        let bases = self.slice_basis(m);
        let dims = bases.iter().map(|(k, b)| (*k, b.len())).collect();
        let mut diffs = BTreeMap::new();
        for &k in &win {
            let Some(tb) = bases.get(&(k + 1)) else { continue };
            let sb = &bases[&k];
            let index: BTreeMap<(usize, &MultiMonomial), usize> = tb.iter().enumerate().map(|(i, (g, mu))| ((*g, mu), i)).collect();
            let d = self.diff(k);
            let mut mat = ExactMatrix::zeros(tb.len(), sb.len());
            for (col, (g, mu)) in sb.iter().enumerate() {
                for ((r, c), p) in d.entries() {
                    if c != g {
                        continue;
                    }
                    for (nu, coef) in p.terms() {
                        let prod = nu.mul(mu);
                        if !self.ring.is_standard(&prod) {
                            continue;
                        }
                        let row = *index.get(&(*r, &prod)).ok_or_else(|| Error::NotHomogeneous(format!("d^{k} at {m:?}")))?;
                        mat.add_at(row, col, coef);
                    }
                }
            }
            diffs.insert(k, mat);
        }
        Complex::new(Grading::Z, dims, diffs)
    }

    /// Basis of the multidegree-`m` part over the slice window: (generator, coefficient monomial).
    pub fn slice_basis(&self, m: &[i64]) -> BTreeMap<i64, Vec<(usize, MultiMonomial)>> {
        let mut bases = BTreeMap::new();
        for k in self.window() {
            let mut b = Vec::new();
            for (g, s) in self.shifts_at(k).iter().enumerate() {
                for mu in self.ring.monomials_of_degree(&vsub(m, s)) {
                    b.push((g, mu));
                }
            }
            bases.insert(k, b);
        }
        bases
    }

    /// Cohomology in the given degrees, keyed by `(degree, t)` with `t = total(m) − reference(degree)`,
    /// over all multidegrees with `t <= bound`. Only multidegrees where the term is nonzero are sliced.
    pub fn graded_table(&self, degrees: &[i64], reference: &dyn Fn(i64) -> i64, bound: i64) -> Result<BTreeMap<(i64, i64), usize>> {
        let exact = self.exact_degrees();
        let mut wanted: BTreeMap<Vec<i64>, BTreeSet<i64>> = BTreeMap::new();
        for &k in degrees {
            if self.grading == Grading::Z && !exact.contains(&k) {
                continue;
            }
            let r = reference(k);
            for s in self.shifts_at(k) {
                let tot: i64 = s.iter().sum();
                for mu in self.ring.monomials_up_to(bound + r - tot)? {
                    wanted.entry(vadd(&s, &self.ring.degree(&mu))).or_default().insert(k);
                }
            }
        }
        let mut out = BTreeMap::new();
        for (m, ks) in wanted {
            let h = self.slice(&m)?.cohomology();
            let tot: i64 = m.iter().sum();
            for k in ks {
                let probe = match self.grading {
                    Grading::Z => k,
                    Grading::Z2 => k.rem_euclid(2),
                };
                let v = h.get(probe);
                if v > 0 {
                    *out.entry((k, tot - reference(k))).or_insert(0) += v;
                }
            }
        }
        Ok(out)
    }

    /// Degrees whose cohomology a slice determines exactly.
    pub fn exact_degrees(&self) -> Vec<i64> {
        match self.grading {
            Grading::Z => self.degrees(),
            Grading::Z2 => vec![0, 1],
        }
    }

    /// Multidegrees `m = s + deg μ` with total degree at most `bound`.
    pub fn candidate_degrees(&self, bound: i64) -> Result<BTreeSet<Vec<i64>>> {
        let mut out = BTreeSet::new();
        let mut shifts = BTreeSet::new();
        for k in self.window() {
            shifts.extend(self.shifts_at(k));
        }
        for s in shifts {
            let tot: i64 = s.iter().sum();
            for mu in self.ring.monomials_up_to(bound - tot)? {
                out.insert(vadd(&s, &self.ring.degree(&mu)));
            }
        }
        Ok(out)
    }

    /// Cohomology of every slice, keyed by (degree, multidegree), over total degree `<= bound`.
    pub fn multidegree_cohomology(&self, bound: i64) -> Result<BTreeMap<(i64, Vec<i64>), usize>> {
        let mut out = BTreeMap::new();
        for m in self.candidate_degrees(bound)? {
            let h = self.slice(&m)?.cohomology();
            for k in self.exact_degrees() {
                let v = h.get(k);
                if v > 0 {
                    out.insert((k, m.clone()), v);
                }
            }
        }
        Ok(out)
    }

    pub fn shift(&self, n: i64) -> Self {
        let s: F = sign(n);
        match self.grading {
            Grading::Z => FreeComplex {
                shifts: self.shifts.iter().map(|(k, v)| (k - n, v.clone())).collect(),
                d: self.d.iter().map(|(k, m)| (k - n, m.scale(&Poly::constant(self.ring.nvars(), s.clone())))).collect(),
                ..self.clone()
            },
            Grading::Z2 => {
                let mut shifts = BTreeMap::new();
                let mut d = BTreeMap::new();
                for r in 0..2 {
                    shifts.insert(r, self.shifts_at(r + n));
                    let m = self.diff(r + n);
                    d.insert(r, m.scale(&Poly::constant(self.ring.nvars(), s.clone())));
                }
                let shifts = shifts.into_iter().filter(|(_, v): &(i64, Vec<Vec<i64>>)| !v.is_empty()).collect();
                let d = d.into_iter().filter(|(_, m)| !m.is_zero()).collect();
                FreeComplex { shifts, d, ..self.clone() }
            }
        }
    }

    /// Moves every generator shift by `v` (internal twist).
    pub fn twist(&self, v: &[i64]) -> Self {
        let shifts = self.shifts.iter().map(|(k, s)| (*k, s.iter().map(|x| vadd(x, v)).collect())).collect();
        FreeComplex { shifts, ..self.clone() }
    }

    /// Reinterprets the complex over a quotient ring with the same variables.
    pub fn over(&self, ring: &Ring) -> Result<Self> {
        if !self.ring.same_variables(ring) || !ring.ideal.contains_ideal(&self.ring.ideal) {
            return Err(Error::AlgebraMismatch("not a quotient of the original ring".into()));
        }
        FreeComplex::curved(ring.clone(), self.grading, self.period.clone(), self.shifts.clone(), self.d.clone(), self.curvature.clone())
    }

    /// Monomial substitution of the variables into `ring`; a variable mapped to `None` becomes 0.
    pub fn substitute(&self, ring: &Ring, images: &[Option<MultiMonomial>]) -> Result<Self> {
        if images.len() != self.ring.nvars() || ring.rank() != self.ring.rank() {
            return Err(Error::ShapeMismatch("substitution data".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if let Some(m) = img {
                if ring.degree(m) != self.ring.weights[i] {
                    return Err(Error::NotHomogeneous(format!("image of variable {i}")));
                }
            }
        }
        let n = ring.nvars();
        let d = self.d.iter().map(|(k, m)| (*k, m.substitute(images, n))).collect();
        FreeComplex::curved(ring.clone(), self.grading, self.period.clone(), self.shifts.clone(), d, self.curvature.substitute(images, n))
    }

    /// Tensor product over the common ring: `d(a ⊗ b) = da ⊗ b + (−1)^{|a|} a ⊗ db`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.grading != Grading::Z || other.grading != Grading::Z {
            return Err(Error::AlgebraMismatch("tensor needs integer-graded complexes over one ring".into()));
        }
        let mut layout: BTreeMap<i64, Vec<(i64, i64, usize)>> = BTreeMap::new();
        let mut shifts: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for (i, sa) in &self.shifts {
            for (j, sb) in &other.shifts {
                let off = shifts.get(&(i + j)).map(|v| v.len()).unwrap_or(0);
                layout.entry(i + j).or_default().push((*i, *j, off));
                let e = shifts.entry(i + j).or_default();
                for a in sa {
                    for b in sb {
                        e.push(vadd(a, b));
                    }
                }
            }
        }
        let nv = self.ring.nvars();
        let mut d: BTreeMap<i64, PolyMatrix<F>> = BTreeMap::new();
        let find = |k: i64, i: i64, j: i64| layout.get(&k).and_then(|v| v.iter().find(|b| b.0 == i && b.1 == j).map(|b| b.2));
        for (k, blocks) in &layout {
            let rows = shifts.get(&(k + 1)).map(|v| v.len()).unwrap_or(0);
            let cols = shifts[k].len();
            let mut m = PolyMatrix::zeros(rows, cols);
            for &(i, j, off) in blocks {
                let nb = other.rank_at(j);
                let da = self.diff(i);
                if let Some(to) = find(k + 1, i + 1, j) {
                    for ((r, c), p) in da.entries() {
                        for t in 0..nb {
                            m.add_at(to + r * nb + t, off + c * nb + t, p);
                        }
                    }
                }
                let db = other.diff(j);
                if let Some(to) = find(k + 1, i, j + 1) {
                    let nb2 = other.rank_at(j + 1);
                    let s = Poly::constant(nv, sign::<F>(i));
                    for a in 0..self.rank_at(i) {
                        for ((r, c), p) in db.entries() {
                            m.add_at(to + a * nb2 + r, off + a * nb + c, &p.mul(&s));
                        }
                    }
                }
            }
            d.insert(*k, m);
        }
        FreeComplex::new(self.ring.clone(), Grading::Z, Vec::new(), shifts, d)
    }
}

/// `Hom_R(x, y)`: `x` free over `R`, `y` free over a quotient of `R`; the result lives over
/// `y`'s ring. Differential `f ↦ d_y f − (−1)^n f d_x`. Curvatures must agree and cancel.
pub fn hom_free<F: Field>(x: &FreeComplex<F>, y: &FreeComplex<F>) -> Result<FreeComplex<F>> {
    if !x.ring.same_variables(&y.ring) || !y.ring.ideal.contains_ideal(&x.ring.ideal) {
        return Err(Error::AlgebraMismatch("Hom needs the target over a quotient of the source ring".into()));
    }
    if x.grading != y.grading || x.period != y.period {
        return Err(Error::GradingMismatch);
    }
    if x.curvature.reduce(&y.ring) != y.curvature.reduce(&y.ring) {
        return Err(Error::AlgebraMismatch("curvatures differ".into()));
    }
    let g = x.grading;
    let (xd, yd) = (x.degrees(), y.degrees());
    let homdeg: Vec<i64> = match g {
        Grading::Z2 => vec![0, 1],
        Grading::Z => {
            if xd.is_empty() || yd.is_empty() {
                Vec::new()
            } else {
                (yd[0] - xd[xd.len() - 1]..=yd[yd.len() - 1] - xd[0]).collect()
            }
        }
    };
    let srcdeg: Vec<i64> = match g {
        Grading::Z2 => vec![0, 1],
        Grading::Z => xd.clone(),
    };
    // blocks of Hom^n: (source degree i, offset); generator (i, r, c) at offset + r * cols + c
    let mut layout: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut shifts: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for &n in &homdeg {
        let mut off = 0;
        let mut sh = Vec::new();
        let mut blocks = Vec::new();
        for &i in &srcdeg {
            let (sy, sx) = (y.shifts_at(i + n), x.shifts_at(i));
            if sy.is_empty() || sx.is_empty() {
                continue;
            }
            blocks.push((i, off));
            for t in &sy {
                for s in &sx {
                    sh.push(vsub(t, s));
                }
            }
            off += sy.len() * sx.len();
        }
        layout.insert(n, blocks);
        shifts.insert(n, sh);
    }
    let find = |n: i64, i: i64| -> Option<usize> {
        let (n, i) = match g {
            Grading::Z2 => (n.rem_euclid(2), i.rem_euclid(2)),
            Grading::Z => (n, i),
        };
        layout.get(&n).and_then(|b| b.iter().find(|(j, _)| *j == i).map(|(_, o)| *o))
    };
    let nv = y.ring.nvars();
    let mut d = BTreeMap::new();
    for &n in &homdeg {
        let rows = shifts.get(&g.norm(n + 1)).map(|v| v.len()).unwrap_or(0);
        let cols = shifts[&n].len();
        let mut m = PolyMatrix::zeros(rows, cols);
        let s = Poly::constant(nv, sign::<F>(n).neg());
        for &(i, off) in &layout[&n] {
            let cx = x.rank_at(i);
            let ry = y.rank_at(i + n);
            // d_y ∘ f lands in the block with the same source degree
            if let Some(to) = find(n + 1, i) {
                let dy = y.diff(i + n);
                for ((r2, r), p) in dy.entries() {
                    for c in 0..cx {
                        m.add_at(to + r2 * cx + c, off + r * cx + c, p);
                    }
                }
            }
            // f ∘ d_x lands in the block with source degree i − 1
            if let Some(to) = find(n + 1, i - 1) {
                let dx = x.diff(i - 1);
                let cx2 = x.rank_at(i - 1);
                for ((c, c2), p) in dx.entries() {
                    for r in 0..ry {
                        m.add_at(to + r * cx2 + c2, off + r * cx + c, &p.mul(&s));
                    }
                }
            }
        }
        d.insert(n, m);
    }
    FreeComplex::new(y.ring.clone(), g, y.period.clone(), shifts, d)
}

/// A map of integer-graded free complexes over a common ring, raising degree by `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap<F: Field> {
    pub source: FreeComplex<F>,
    pub target: FreeComplex<F>,
    pub degree: i64,
    pub comps: BTreeMap<i64, PolyMatrix<F>>,
}

impl<F: Field> FreeMap<F> {
    /// The multidegree-`m` part, as a map of field complexes.
    pub fn slice(&self, m: &[i64]) -> Result<ChainMap<F>> {
        let (xs, ys) = (self.source.slice(m)?, self.target.slice(m)?);
        let (bx, by) = (self.source.slice_basis(m), self.target.slice_basis(m));
        let ring = self.target.ring();
        let mut comps = BTreeMap::new();
        for (k, sb) in &bx {
            let Some(tb) = by.get(&(k + self.degree)) else { continue };
            let Some(f) = self.comps.get(k) else { continue };
            let index: BTreeMap<(usize, &MultiMonomial), usize> = tb.iter().enumerate().map(|(i, (g, mu))| ((*g, mu), i)).collect();
            let mut mat = ExactMatrix::zeros(tb.len(), sb.len());
            for (col, (g, mu)) in sb.iter().enumerate() {
                for ((r, c), p) in f.entries() {
                    if c != g {
                        continue;
                    }
                    for (nu, coef) in p.terms() {
                        let prod = nu.mul(mu);
                        if !ring.is_standard(&prod) {
                            continue;
                        }
                        let row = *index.get(&(*r, &prod)).ok_or_else(|| Error::NotHomogeneous(format!("map at {m:?}")))?;
                        mat.add_at(row, col, coef);
                    }
                }
            }
            comps.insert(*k, mat);
        }
        ChainMap::new(xs, ys, self.degree, comps)
    }
}

/// Cocycles of `Hom(x, y)` in degree `n` at internal multidegree `m`, as maps of free complexes.
pub fn hom_cocycles_at<F: Field>(x: &FreeComplex<F>, y: &FreeComplex<F>, m: &[i64], n: i64) -> Result<Vec<FreeMap<F>>> {
    if x.grading != Grading::Z || y.grading != Grading::Z {
        return Err(Error::GradingMismatch);
    }
    let h = hom_free(x, y)?;
    let basis = h.slice_basis(m);
    let Some(b) = basis.get(&n) else { return Ok(Vec::new()) };
    let sl = h.slice(m)?;
    let kernel = sl.diff(n).kernel();
    // generator layout of hom_free in degree n: blocks by ascending source degree
    let mut blocks = Vec::new();
    let mut off = 0;
    for i in x.degrees() {
        let (ry, cx) = (y.rank_at(i + n), x.rank_at(i));
        if ry == 0 || cx == 0 {
            continue;
        }
        blocks.push((i, off, ry, cx));
        off += ry * cx;
    }
    let mut out = Vec::new();
    for v in kernel {
        let mut comps: BTreeMap<i64, PolyMatrix<F>> = BTreeMap::new();
        for (coef, (g, mu)) in v.iter().zip(b) {
            if coef.is_zero() {
                continue;
            }
            let &(i, o, ry, cx) = blocks.iter().find(|(_, o, ry, cx)| *g >= *o && *g < o + ry * cx).expect("generator in a block");
            let (r, c) = ((g - o) / cx, (g - o) % cx);
            let e = comps.entry(i).or_insert_with(|| PolyMatrix::zeros(ry, cx));
            e.add_at(r, c, &Poly::monomial(coef.clone(), mu.clone()));
        }
        out.push(FreeMap { source: x.clone(), target: y.clone(), degree: n, comps });
    }
    Ok(out)
}

/// Koszul complex of the given variables over `ring`, in degrees `−r..=0`.
pub fn koszul_complex<F: Field>(ring: &Ring, vars: &[usize]) -> Result<FreeComplex<F>> {
    let r = vars.len();
    let nv = ring.nvars();
    let subsets: Vec<Vec<usize>> = (0..(1usize << r)).map(|mask| (0..r).filter(|b| mask & (1 << b) != 0).collect()).collect();
    let deg_of = |s: &[usize]| -> Vec<i64> {
        let mut d = vec![0; ring.rank()];
        for &b in s {
            d = vadd(&d, &ring.weights[vars[b]]);
        }
        d
    };
    let mut shifts: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut idx: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in &subsets {
        let e = shifts.entry(-(s.len() as i64)).or_default();
        idx.insert(s.clone(), e.len());
        e.push(deg_of(s));
    }
    let mut d = BTreeMap::new();
    for k in 1..=r {
        let src = &shifts[&-(k as i64)];
        let tgt = &shifts[&-(k as i64 - 1)];
        let mut m = PolyMatrix::zeros(tgt.len(), src.len());
        for s in subsets.iter().filter(|s| s.len() == k) {
            for (pos, &b) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(pos);
                let sg = sign::<F>(pos as i64);
                m.add_at(idx[&t], idx[s], &Poly::monomial(sg, MultiMonomial::var(nv, vars[b])));
            }
        }
        d.insert(-(k as i64), m);
    }
    FreeComplex::new(ring.clone(), Grading::Z, Vec::new(), shifts, d)
}

/// Derived restriction to `{z_a = 0 : a ∉ keep}`: the variables outside `keep` are set to zero
/// and removed. Weights keep their full length, so slices are indexed as before.
pub fn koszul_restrict<F: Field>(c: &FreeComplex<F>, keep: &[usize]) -> Result<FreeComplex<F>> {
    let r = c.ring();
    if (0..r.nvars()).any(|i| !keep.contains(&i) && r.is_laurent(i)) {
        return Err(Error::InvalidArgument("cannot restrict along a Laurent variable".into()));
    }
    let kept: Vec<usize> = (0..r.nvars()).filter(|i| keep.contains(i)).collect();
    let weights = kept.iter().map(|&i| r.weights[i].clone()).collect();
    let laurent = kept.iter().map(|&i| r.laurent[i]).collect();
    let mut gens = Vec::new();
    for g in r.ideal.gens.iter() {
        if (0..r.nvars()).all(|i| kept.contains(&i) || g.0[i] == 0) {
            gens.push(MultiMonomial(kept.iter().map(|&i| g.0[i]).collect()));
        }
    }
    let target = Ring::graded(r.rank(), weights, laurent, MonomialIdeal::new(kept.len(), gens)?)?;
    let images: Vec<Option<MultiMonomial>> =
        (0..r.nvars()).map(|i| kept.iter().position(|&j| j == i).map(|p| MultiMonomial::var(kept.len(), p))).collect();
    c.substitute(&target, &images)
}

/// The same restriction by the second route: `c ⊗ K(z_a : a ∉ keep)` over the original ring.
pub fn koszul_restrict_tensor<F: Field>(c: &FreeComplex<F>, keep: &[usize]) -> Result<FreeComplex<F>> {
    let drop: Vec<usize> = (0..c.ring().nvars()).filter(|i| !keep.contains(i)).collect();
    c.tensor(&koszul_complex(c.ring(), &drop)?)
}

/// Cohomology counts of every slice with total degree `<= d`, keyed by (degree, total degree).
pub fn truncated_cohomology<F: Field>(c: &FreeComplex<F>, d: i64) -> Result<BTreeMap<(i64, i64), usize>> {
    let mut out = BTreeMap::new();
    for ((k, m), v) in c.multidegree_cohomology(d)? {
        *out.entry((k, m.iter().sum())).or_insert(0) += v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
