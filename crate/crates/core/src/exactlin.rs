//! Sparse exact matrices, rank and kernel computations, graded dimension vectors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{big_gcd, Field, Q};

/// Integer grading or grading mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grading {
    Z,
    Z2,
}

impl Grading {
    /// Canonical representative of a degree.
    pub fn norm(self, d: i64) -> i64 {
        match self {
            Grading::Z => d,
            Grading::Z2 => d.rem_euclid(2),
        }
    }
}

/// Sparse matrix over an exact field. Rows are stored as ordered maps of nonzero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, F::one());
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, s: &F) -> Self {
        let mut m = Self::zeros(n, n);
        if !s.is_zero() {
            for i in 0..n {
                m.data[i].insert(i, s.clone());
            }
        }
        m
    }

    /// Builds a matrix from row-major integer entries.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, F::from_i64(entries[r * cols + c]));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &F) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, F> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in &self.data[r] {
                for (c, b) in &other.data[*k] {
                    let p = a.mul(b);
                    let e = acc.entry(*c).or_insert_with(F::zero);
                    *e = e.add(&p);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    /// Product that panics on shape mismatch; for internal use where shapes are known.
    pub fn dot(&self, other: &Self) -> Self {
        self.mul(other).expect("matrix shapes must agree")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("cannot add {}x{} and {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_at(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for v in row.values_mut() {
                *v = v.mul(s);
            }
        }
        out
    }

    /// Adds `block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        for (r, c, v) in block.entries() {
            self.add_at(r0 + r, c0 + c, v);
        }
    }

    /// Extracts the submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = BTreeMap::new();
        for (j, c) in cols.iter().enumerate() {
            col_pos.insert(*c, j);
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in &self.data[*r] {
                if let Some(j) = col_pos.get(c) {
                    out.data[i].insert(*j, v.clone());
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|row| row.iter().fold(F::zero(), |acc, (c, a)| acc.add(&a.mul(&v[*c])))).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn rank(&self) -> usize {
        F::rank_of(self)
    }

    /// Reduced row echelon form: returns the nonzero reduced rows (pivot entry 1) with their pivot columns.
    pub fn rref(&self) -> Vec<(usize, BTreeMap<usize, F>)> {
        let mut rows: Vec<BTreeMap<usize, F>> = self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut done: Vec<(usize, BTreeMap<usize, F>)> = Vec::new();
        while !rows.is_empty() {
            let idx = markowitz_pick(&rows);
            let mut prow = rows.swap_remove(idx);
            let (&pc, pv) = prow.iter().next().expect("nonempty row");
            let inv = pv.inv().expect("nonzero pivot");
            for v in prow.values_mut() {
                *v = v.mul(&inv);
            }
            for r in rows.iter_mut() {
                eliminate(r, &prow, pc);
            }
            rows.retain(|r| !r.is_empty());
            for (_, r) in done.iter_mut() {
                eliminate(r, &prow, pc);
            }
            done.push((pc, prow));
        }
        done.sort_by_key(|(c, _)| *c);
        done
    }

    /// Basis of the kernel, as dense column vectors.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let red = self.rref();
        let pivots: BTreeMap<usize, &BTreeMap<usize, F>> = red.iter().map(|(c, r)| (*c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (pc, row) in &pivots {
                if let Some(a) = row.get(&free) {
                    v[*pc] = a.neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        aug.add_block(0, 0, self);
        for (r, v) in b.iter().enumerate() {
            aug.set(r, self.cols, v.clone());
        }
        let red = aug.rref();
        let mut x = vec![F::zero(); self.cols];
        for (pc, row) in &red {
            if *pc == self.cols {
                return None;
            }
            x[*pc] = row.get(&self.cols).cloned().unwrap_or_else(F::zero);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.add_block(0, 0, self);
        aug.add_block(0, n, &Self::identity(n));
        let red = aug.rref();
        if red.len() < n || red.iter().any(|(c, _)| *c >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (pc, row) in &red {
            for (c, v) in row.range(n..) {
                inv.set(*pc, c - n, v.clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Determinant by elimination with exact pivots.
    pub fn determinant(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a: Vec<BTreeMap<usize, F>> = self.data.clone();
        let mut det = F::one();
        for col in 0..n {
            let piv = (col..n).find(|r| a[*r].contains_key(&col));
            let Some(p) = piv else { return Ok(F::zero()) };
            if p != col {
                a.swap(p, col);
                det = det.neg();
            }
            let prow = a[col].clone();
            let pv = prow.get(&col).cloned().expect("pivot");
            det = det.mul(&pv);
            let inv = pv.inv().expect("nonzero pivot");
            let normalized: BTreeMap<usize, F> = prow.iter().map(|(c, v)| (*c, v.mul(&inv))).collect();
            for r in (col + 1)..n {
                eliminate(&mut a[r], &normalized, col);
            }
        }
        Ok(det)
    }
}

fn markowitz_pick<T>(rows: &[BTreeMap<usize, T>]) -> usize {
    let mut best = 0;
    for (i, r) in rows.iter().enumerate() {
        let key = (r.len(), r.keys().next().copied().unwrap_or(usize::MAX));
        let bkey = (rows[best].len(), rows[best].keys().next().copied().unwrap_or(usize::MAX));
        if key < bkey {
            best = i;
        }
    }
    best
}

/// `row -= row[pc] * prow` where `prow[pc] == 1`.
fn eliminate<F: Field>(row: &mut BTreeMap<usize, F>, prow: &BTreeMap<usize, F>, pc: usize) {
    let Some(f) = row.get(&pc).cloned() else { return };
    for (c, v) in prow {
        let cur = row.get(c).cloned().unwrap_or_else(F::zero);
        let nv = cur.sub(&f.mul(v));
        if nv.is_zero() {
            row.remove(c);
        } else {
            row.insert(*c, nv);
        }
    }
}

/// Rank by sparse Gaussian elimination with the fewest-nonzeros pivot rule.
pub fn sparse_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut rows: Vec<BTreeMap<usize, F>> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let idx = markowitz_pick(&rows);
        let mut prow = rows.swap_remove(idx);
        let (&pc, pv) = prow.iter().next().expect("nonempty row");
        let inv = pv.inv().expect("nonzero pivot");
        for v in prow.values_mut() {
            *v = v.mul(&inv);
        }
        for r in rows.iter_mut() {
            eliminate(r, &prow, pc);
        }
        rows.retain(|r| !r.is_empty());
        rank += 1;
    }
    rank
}

/// Rank over the rationals by fraction-free elimination on integer rows.
///
/// Each row is cleared of denominators, and after every elimination step
/// rows are divided by the gcd of their entries.
pub fn fraction_free_rank(m: &ExactMatrix<Q>) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let l = r.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: BTreeMap<usize, BigInt> = r.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect();
            primitive(ints)
        })
        .collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let idx = markowitz_pick(&rows);
        let prow = rows.swap_remove(idx);
        let (&pc, pv) = prow.iter().next().expect("nonempty row");
        let pv = pv.clone();
        for r in rows.iter_mut() {
            let Some(f) = r.get(&pc).cloned() else { continue };
            let g = big_gcd(&pv, &f);
            let a = &pv / &g;
            let b = &f / &g;
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, v) in r.iter() {
                next.insert(*c, v * &a);
            }
            for (c, v) in &prow {
                let e = next.entry(*c).or_insert_with(BigInt::zero);
                *e -= v * &b;
            }
            next.retain(|_, v| !v.is_zero());
            *r = primitive(next);
        }
        rows.retain(|r| !r.is_empty());
        rank += 1;
    }
    rank
}

fn primitive(mut row: BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
    let g = row.values().fold(BigInt::zero(), |acc, v| big_gcd(&acc, v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
    if let Some(first) = row.values().next() {
        if first.is_negative() {
            for v in row.values_mut() {
                *v = -&*v;
            }
        }
    }
    row
}

/// Dimension of cohomology at the middle of `d_in` then `d_out`.
pub fn homology_dim<F: Field>(d_in: &ExactMatrix<F>, d_out: &ExactMatrix<F>) -> Result<usize> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch(format!("d_out has {} columns but d_in has {} rows", d_out.cols(), d_in.rows())));
    }
    if !d_out.dot(d_in).is_zero() {
        return Err(Error::NotAComplex(0));
    }
    Ok(d_out.cols() - d_out.rank() - d_in.rank())
}

/// Dimensions by degree, with the grading tag recorded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    pub grading: Grading,
    dims: BTreeMap<i64, usize>,
}

impl GradedSpace {
    pub fn zero(grading: Grading) -> Self {
        GradedSpace { grading, dims: BTreeMap::new() }
    }

    pub fn from_pairs(grading: Grading, pairs: &[(i64, usize)]) -> Self {
        let mut g = Self::zero(grading);
        for (d, n) in pairs {
            g.add(*d, *n);
        }
        g
    }

    /// Folded dimensions `(even, odd)` as a mod-2 space.
    pub fn even_odd(even: usize, odd: usize) -> Self {
        Self::from_pairs(Grading::Z2, &[(0, even), (1, odd)])
    }

    pub fn add(&mut self, degree: i64, n: usize) {
        if n == 0 {
            return;
        }
        *self.dims.entry(self.grading.norm(degree)).or_insert(0) += n;
    }

    pub fn get(&self, degree: i64) -> usize {
        self.dims.get(&self.grading.norm(degree)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }

    pub fn fold(&self) -> Self {
        let mut g = Self::zero(Grading::Z2);
        for (d, n) in &self.dims {
            g.add(*d, *n);
        }
        g
    }

    pub fn shifted(&self, n: i64) -> Self {
        let mut g = Self::zero(self.grading);
        for (d, k) in &self.dims {
            g.add(d - n, *k);
        }
        g
    }

    /// `(even, odd)` totals.
    pub fn parity_dims(&self) -> (usize, usize) {
        let f = self.fold();
        (f.get(0), f.get(1))
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {n}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type M = ExactMatrix<Q>;

    #[test]
    fn rank_examples() {
        assert_eq!(M::identity(2).rank(), 2);
        assert_eq!(ExactMatrix::<Fp<2>>::from_ints(2, 2, &[1, 1, 1, 1]).rank(), 1);
        assert_eq!(M::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rank_routes_agree() {
        let m = M::from_ints(3, 4, &[2, 4, 6, 8, 1, 3, 5, 7, 3, 7, 11, 15]);
        assert_eq!(fraction_free_rank(&m), 2);
        assert_eq!(sparse_rank(&m), 2);
        let mut r = M::zeros(2, 2);
        r.set(0, 0, Q::new(1, 2));
        r.set(0, 1, Q::new(1, 3));
        r.set(1, 0, Q::new(3, 2));
        r.set(1, 1, Q::new(1, 1));
        assert_eq!(fraction_free_rank(&r), 1);
    }

    #[test]
    fn homology_dim_examples() {
        let z = M::zeros(1, 1);
        assert_eq!(homology_dim(&z, &z).unwrap(), 1);
        assert_eq!(homology_dim(&M::identity(1), &M::zeros(0, 1)).unwrap(), 0);
        // k[t] --t--> k[t] sliced at t-degree 0: 0 -> k -> 0
        assert_eq!(homology_dim(&M::zeros(1, 0), &M::zeros(0, 1)).unwrap(), 1);
    }

    #[test]
    fn homology_dim_errors() {
        assert!(matches!(homology_dim(&M::identity(2), &M::identity(3)), Err(Error::ShapeMismatch(_))));
        assert!(matches!(homology_dim(&M::identity(1), &M::identity(1)), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn kernel_and_solve() {
        let m = M::from_ints(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let x = m.solve(&[Q::from_i64(3), Q::from_i64(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Q::from_i64(3), Q::from_i64(6)]);
        assert!(m.solve(&[Q::from_i64(1), Q::from_i64(1)]).is_none());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = M::from_ints(2, 2, &[2, 1, 5, 3]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.dot(&inv), M::identity(2));
        assert_eq!(m.determinant().unwrap(), Q::from_i64(1));
        assert!(M::from_ints(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert_eq!(M::from_ints(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]).determinant().unwrap(), Q::from_i64(-1));
    }

    #[test]
    fn graded_space_fold() {
        let g = GradedSpace::from_pairs(Grading::Z, &[(0, 1), (2, 1), (-1, 3)]);
        assert_eq!(g.fold(), GradedSpace::even_odd(2, 3));
        assert_eq!(g.euler(), -1);
    }
}
