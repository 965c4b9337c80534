//! Coherent generators on `X_{n−1} = {z_1⋯z_n = 0} ⊂ 𝔸^n` and their Ext tables.
//!
//! Resolutions over `B = A_n/(W)` come from the Koszul complex of a set of variables `S` with the
//! homotopy `s = (W/z_c)·(e_c ∧ −)` for one `c ∈ S`; since `s² = 0`, the total complex of
//! `K(S) ⊗ k[u^∨]` with differential `d_K + s` is the full resolution of `B/(z_S)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::sign;
use crate::error::{Error, Result};
use crate::exactlin::Grading;
use crate::field::Field;
use crate::polyring::{hilbert_function, hom_free, FreeComplex, MonomialIdeal, MultiMonomial, Poly, PolyMatrix, Ring};

use super::mf::{mf_generator, mf_hom_cohomology, MfTable};

/// `W_n = z_1⋯z_n`.
pub fn hypersurface_potential(n: usize) -> MultiMonomial {
    MultiMonomial(vec![1; n])
}

/// `B = k[z_1..z_n]/(z_1⋯z_n)`.
pub fn hypersurface_ring(n: usize) -> Result<Ring> {
    Ring::polynomial(n).quotient(&MonomialIdeal::new(n, vec![hypersurface_potential(n)])?)
}

/// Which quotient `B/(z_S)` a generator is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CohKind {
    /// `O^a = B/(z_a)`, 1-based.
    Hyperplane(usize),
    /// The origin `B/(z_1, …, z_n)`.
    Origin,
}

impl CohKind {
    fn vars(&self, n: usize) -> Vec<usize> {
        match self {
            CohKind::Hyperplane(a) => vec![a - 1],
            CohKind::Origin => (0..n).collect(),
        }
    }
}

/// A generator of `Coh(X_{n−1})` with a resolution truncated after `length` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentGenerator<F: Field> {
    pub n: usize,
    pub kind: CohKind,
    pub length: usize,
    /// Free resolution over `B` in degrees `−length..=0`.
    pub resolution: FreeComplex<F>,
    /// The module itself, rank one over `B/(z_S)` in degree 0.
    pub module: FreeComplex<F>,
}

impl<F: Field> CoherentGenerator<F> {
    pub fn new(n: usize, kind: CohKind, length: usize) -> Result<Self> {
        if let CohKind::Hyperplane(a) = kind {
            if a == 0 || a > n {
                return Err(Error::IndexOutOfRange { index: a, max: n });
            }
        }
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one variable".into()));
        }
        let vars = kind.vars(n);
        let b = hypersurface_ring(n)?;
        let resolution = periodic_resolution(&b, &hypersurface_potential(n), &vars, vars[0], length)?;
        let gens: Vec<MultiMonomial> = vars.iter().map(|&i| MultiMonomial::var(n, i)).collect();
        let ring = b.quotient(&MonomialIdeal::new(n, gens)?)?;
        let module = FreeComplex::new(ring, Grading::Z, Vec::new(), BTreeMap::from([(0, vec![vec![0; n]])]), BTreeMap::new())?;
        Ok(CoherentGenerator { n, kind, length, resolution, module })
    }

    pub fn hyperplane(n: usize, a: usize, length: usize) -> Result<Self> {
        Self::new(n, CohKind::Hyperplane(a), length)
    }

    /// Smallest total degree among the generator shifts of the resolution term `−c`.
    pub fn min_shift_total(&self, c: i64) -> i64 {
        self.resolution.shifts_at(-c).iter().map(|s| s.iter().sum()).min().unwrap_or(0)
    }
}

/// Resolution of `B/(z_vars)` over `B = A/(w)`, truncated at homological length `length`;
/// `c ∈ vars` must divide `w`.
pub fn periodic_resolution<F: Field>(b: &Ring, w: &MultiMonomial, vars: &[usize], c: usize, length: usize) -> Result<FreeComplex<F>> {
    let nv = b.nvars();
    let zc = MultiMonomial::var(nv, c);
    let wc = zc.quotient(w).ok_or_else(|| Error::InvalidArgument("z_c must divide the potential".into()))?;
    let mut vars = vars.to_vec();
    vars.sort_unstable();
    let r = vars.len();
    let cpos = vars.iter().position(|&v| v == c).ok_or_else(|| Error::InvalidArgument("c must be one of the variables".into()))?;
    let wdeg = b.degree(w);
    // generators (mask over vars, u-power j) with |mask| + 2j <= length
    let mut shifts: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut index: BTreeMap<(u32, usize), (i64, usize)> = BTreeMap::new();
    for k in 0..=length {
        for j in 0..=k / 2 {
            let size = k - 2 * j;
            if size > r {
                continue;
            }
            for mask in 0u32..(1u32 << r) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let mut s: Vec<i64> = wdeg.iter().map(|x| x * j as i64).collect();
                for (p, &v) in vars.iter().enumerate() {
                    if mask & (1 << p) != 0 {
                        for (t, x) in b.weights()[v].iter().enumerate() {
                            s[t] += x;
                        }
                    }
                }
                let e = shifts.entry(-(k as i64)).or_default();
                index.insert((mask, j), (-(k as i64), e.len()));
                e.push(s);
            }
        }
    }
    let mut d: BTreeMap<i64, PolyMatrix<F>> = BTreeMap::new();
    for (&(mask, j), &(deg, col)) in &index {
        if deg == 0 {
            continue;
        }
        let rows = shifts[&(deg + 1)].len();
        let cols = shifts[&deg].len();
        let m = d.entry(deg).or_insert_with(|| PolyMatrix::zeros(rows, cols));
        // Koszul part
        let mut pos = 0;
        for (p, &v) in vars.iter().enumerate() {
            if mask & (1 << p) == 0 {
                continue;
            }
            if let Some(&(_, row)) = index.get(&(mask & !(1 << p), j)) {
                m.add_at(row, col, &Poly::monomial(sign::<F>(pos), MultiMonomial::var(nv, v)));
            }
            pos += 1;
        }
        // homotopy part
        if j >= 1 && mask & (1 << cpos) == 0 {
            let before = (mask & ((1 << cpos) - 1)).count_ones() as i64;
            if let Some(&(_, row)) = index.get(&(mask | (1 << cpos), j - 1)) {
                m.add_at(row, col, &Poly::monomial(sign::<F>(before), wc.clone()));
            }
        }
    }
    FreeComplex::new(b.clone(), Grading::Z, Vec::new(), shifts, d)
}

/// Ext counts by cohomological degree `c` and total polynomial degree `t = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohTable {
    pub rows: BTreeMap<i64, Vec<usize>>,
}

impl CohTable {
    pub fn zero(max_degree: i64, d: usize) -> Self {
        CohTable { rows: (0..=max_degree).map(|c| (c, vec![0; d + 1])).collect() }
    }

    pub fn row(&self, c: i64) -> &[usize] {
        self.rows.get(&c).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Folding: parity of `c`, and the `u`-power `⌊c/2⌋` added to the polynomial degree.
    pub fn fold(&self, d: usize) -> MfTable {
        let mut out = MfTable::zero(d);
        for (&c, row) in &self.rows {
            let j = (c / 2) as usize;
            for (t, v) in row.iter().enumerate() {
                if t + j > d {
                    continue;
                }
                if c % 2 == 0 {
                    out.even[t + j] += v;
                } else {
                    out.odd[t + j] += v;
                }
            }
        }
        out
    }
}

/// `Ext^c(g1, g2)` for `c <= max_degree`, keyed by `t = total(m) + min total shift of term −c`.
/// The top term of a truncated resolution is not exact, so `max_degree < g1.length` is required.
pub fn ext_table<F: Field>(g1: &CoherentGenerator<F>, g2: &CoherentGenerator<F>, max_degree: usize, d_poly: usize) -> Result<CohTable> {
    if g1.n != g2.n {
        return Err(Error::AlgebraMismatch("generators on different hypersurfaces".into()));
    }
    if max_degree >= g1.length {
        return Err(Error::TruncationTooSmall { requested: max_degree, available: g1.length.saturating_sub(1) });
    }
    let h = hom_free(&g1.resolution, &g2.module)?;
    let degrees: Vec<i64> = (0..=max_degree as i64).collect();
    let reference = |c: i64| -> i64 { -g1.min_shift_total(c) };
    let raw = h.graded_table(&degrees, &reference, d_poly as i64)?;
    let mut out = CohTable::zero(max_degree as i64, d_poly);
    for ((c, t), v) in raw {
        if t < 0 {
            return Err(Error::InvalidArgument("class below the reference degree".into()));
        }
        out.rows.get_mut(&c).expect("requested degree")[t as usize] += v;
    }
    Ok(out)
}

/// `Ext(O^a, O^b)` on `X_{n−1}` in degrees `0..=2·D_u+1`, from resolutions of length `2·D_u+2`.
pub fn coh_ext_table<F: Field>(n: usize, a: usize, b: usize, d_poly: usize, d_u: usize) -> Result<CohTable> {
    let len = 2 * d_u + 2;
    let g1 = CoherentGenerator::<F>::hyperplane(n, a, len)?;
    let g2 = CoherentGenerator::<F>::hyperplane(n, b, len)?;
    ext_table(&g1, &g2, 2 * d_u + 1, d_poly)
}

/// The closed form `A_n[u]/(z_a, u·W^a)` for `a = b` and `A_n[u]/(z_a, z_b)[−1]` otherwise.
pub fn coh_expected(n: usize, a: usize, b: usize, d_poly: usize, d_u: usize) -> Result<CohTable> {
    for i in [a, b] {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
    }
    let za = MultiMonomial::var(n, a - 1);
    let top = 2 * d_u as i64 + 1;
    let mut out = CohTable::zero(top, d_poly);
    if a == b {
        let wa = za.quotient(&hypersurface_potential(n)).expect("z_a divides W");
        let h0 = hilbert_function(&MonomialIdeal::new(n, vec![za.clone()])?, d_poly);
        let hu = hilbert_function(&MonomialIdeal::new(n, vec![za, wa])?, d_poly);
        for c in (0..=top).step_by(2) {
            out.rows.insert(c, if c == 0 { h0.clone() } else { hu.clone() });
        }
    } else {
        let h = hilbert_function(&MonomialIdeal::new(n, vec![za, MultiMonomial::var(n, b - 1)])?, d_poly);
        for c in (1..=top).step_by(2) {
            out.rows.insert(c, h.clone());
        }
    }
    Ok(out)
}

/// The folded `Ext(O^a, O^b)` on `X_{n−1}` and `Hom(O̲^a, O̲^b)` in `MF(𝔸^{n+1}, W_{n+1})`, up to total degree `d`.
pub fn fold_tables<F: Field>(n: usize, a: usize, b: usize, d: usize) -> Result<(MfTable, MfTable)> {
    let coh = coh_ext_table::<F>(n, a, b, d, d)?;
    let mf = mf_hom_cohomology(&mf_generator::<F>(n, a)?, &mf_generator::<F>(n, b)?, d)?;
    Ok((coh.fold(d), mf))
}

/// Whether folding `Ext(O^a, O^a)` with `u ↦ z_{n+1}` reproduces the matrix factorization table.
pub fn fold_compare<F: Field>(n: usize, a: usize, d: usize) -> Result<bool> {
    fold_compare_pair::<F>(n, a, a, d)
}

pub fn fold_compare_pair<F: Field>(n: usize, a: usize, b: usize, d: usize) -> Result<bool> {
    if a == 0 || a > n || b == 0 || b > n {
        return Err(Error::IndexOutOfRange { index: a.max(b), max: n });
    }
    let (folded, mf) = fold_tables::<F>(n, a, b, d)?;
    Ok(folded == mf)
}
