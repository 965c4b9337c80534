//! Matrix factorizations of `W = z_1⋯z_{n+1}` and their Hom tables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::Grading;
use crate::field::Field;
use crate::polyring::{hilbert_function, hom_free, FreeComplex, MonomialIdeal, MultiMonomial, Poly, PolyMatrix, Ring};

/// The ring `A_{n+1} = k[z_1..z_{n+1}]` with `deg z_i = e_i`.
pub fn potential_ring(n: usize) -> Ring {
    Ring::polynomial(n + 1)
}

/// `W_{n+1} = z_1⋯z_{n+1}` as a monomial.
pub fn potential(n: usize) -> MultiMonomial {
    MultiMonomial(vec![1; n + 1])
}

/// A two-periodic free complex with `d1·d0 = d0·d1 = W·id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization<F: Field> {
    n: usize,
    complex: FreeComplex<F>,
}

impl<F: Field> MatrixFactorization<F> {
    /// Even generators with shifts `s0`, odd with shifts `s1`; `d0` even→odd, `d1` odd→even.
    /// The period is `−deg W`.
    pub fn new(n: usize, s0: Vec<Vec<i64>>, s1: Vec<Vec<i64>>, d0: PolyMatrix<F>, d1: PolyMatrix<F>) -> Result<Self> {
        let ring = potential_ring(n);
        let w = potential(n);
        let period = w.0.iter().map(|e| -e).collect();
        let shifts = BTreeMap::from([(0, s0), (1, s1)]);
        let d = BTreeMap::from([(0, d0), (1, d1)]);
        let complex = FreeComplex::curved(ring, Grading::Z2, period, shifts, d, Poly::monomial(F::one(), w))?;
        Ok(MatrixFactorization { n, complex })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &FreeComplex<F> {
        &self.complex
    }

    pub fn even_rank(&self) -> usize {
        self.complex.rank_at(0)
    }

    pub fn odd_rank(&self) -> usize {
        self.complex.rank_at(1)
    }

    pub fn d0(&self) -> PolyMatrix<F> {
        self.complex.diff(0)
    }

    pub fn d1(&self) -> PolyMatrix<F> {
        self.complex.diff(1)
    }
}

/// `O̲^a`: `A --W/z_a--> A --z_a--> A`, even shift 0, odd shift `e_a − deg W`.
pub fn mf_generator<F: Field>(n: usize, a: usize) -> Result<MatrixFactorization<F>> {
    if a == 0 || a > n + 1 {
        return Err(Error::IndexOutOfRange { index: a, max: n + 1 });
    }
    let w = potential(n);
    let za = MultiMonomial::var(n + 1, a - 1);
    let wa = za.quotient(&w).expect("z_a divides W");
    let s1: Vec<i64> = (0..=n).map(|i| if i == a - 1 { 0 } else { -1 }).collect();
    let d0 = PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::monomial(F::one(), wa))]);
    let d1 = PolyMatrix::from_entries(1, 1, vec![((0, 0), Poly::monomial(F::one(), za))]);
    MatrixFactorization::new(n, vec![vec![0; n + 1]], vec![s1], d0, d1)
}

/// Hom cohomology by parity and total degree `t = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfTable {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl MfTable {
    pub fn zero(d: usize) -> Self {
        MfTable { even: vec![0; d + 1], odd: vec![0; d + 1] }
    }

    pub fn parity(&self, p: usize) -> &[usize] {
        if p.is_multiple_of(2) {
            &self.even
        } else {
            &self.odd
        }
    }
}

/// Cohomology of `Hom(x, y)`, per parity `p` and `t = total(m) − r_p`, where `r_p` is the largest
/// total degree among the generator shifts of `Hom^p`; `t` is then the coefficient degree.
pub fn mf_hom_cohomology<F: Field>(x: &MatrixFactorization<F>, y: &MatrixFactorization<F>, d: usize) -> Result<MfTable> {
    if x.n != y.n {
        return Err(Error::AlgebraMismatch("factorizations over different algebras".into()));
    }
    let h = hom_free(&x.complex, &y.complex)?;
    let reference = |p: i64| -> i64 { h.shifts_at(p).iter().map(|s| s.iter().sum()).max().unwrap_or(0) };
    let raw = h.graded_table(&[0, 1], &reference, d as i64)?;
    let mut out = MfTable::zero(d);
    for ((p, t), v) in raw {
        if t < 0 {
            return Err(Error::InvalidArgument("class below the reference degree".into()));
        }
        let row = if p == 0 { &mut out.even } else { &mut out.odd };
        row[t as usize] += v;
    }
    Ok(out)
}

/// The closed form: `A/(z_a, W/z_a)` in even parity when `a = b`, `A/(z_a, z_b)` in odd parity otherwise.
pub fn mf_expected(n: usize, a: usize, b: usize, d: usize) -> Result<MfTable> {
    let nv = n + 1;
    for i in [a, b] {
        if i == 0 || i > nv {
            return Err(Error::IndexOutOfRange { index: i, max: nv });
        }
    }
    let za = MultiMonomial::var(nv, a - 1);
    let mut out = MfTable::zero(d);
    if a == b {
        let wa = za.quotient(&potential(n)).expect("z_a divides W");
        out.even = hilbert_function(&MonomialIdeal::new(nv, vec![za, wa])?, d);
    } else {
        out.odd = hilbert_function(&MonomialIdeal::new(nv, vec![za, MultiMonomial::var(nv, b - 1)])?, d);
    }
    Ok(out)
}
