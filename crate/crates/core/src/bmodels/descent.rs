//! Descent over coordinate subspaces: restrictions of free complexes to `𝔸^I`, their
//! certificates, and the Čech totalization computing Homs on `{z_1⋯z_n = 0}` from the pieces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{is_quasi_iso, sign, Complex, Lcg};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Grading};
use crate::field::Field;
use crate::polyring::{hom_cocycles_at, hom_free, koszul_restrict, FreeComplex, FreeMap, MultiMonomial, PolyMatrix};

/// Variables of `ring` (sorted subset of `0..n`) to positions, for restricting from `from` to `to ⊆ from`.
fn positions(from: &[usize], to: &[usize]) -> Result<Vec<usize>> {
    to.iter().map(|v| from.iter().position(|w| w == v).ok_or_else(|| Error::InvalidArgument("not a subset".into()))).collect()
}

/// Whether `f` is a quasi-isomorphism on every listed slice.
pub fn is_quasi_iso_on<F: Field>(f: &FreeMap<F>, ms: &[Vec<i64>]) -> Result<bool> {
    for m in ms {
        if !is_quasi_iso(&f.slice(m)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches the degree-0, internal-degree-0 cocycles of `Hom(p, q)` for a map that is a
/// quasi-isomorphism on every slice in `ms`.
pub fn find_free_quasi_iso<F: Field>(p: &FreeComplex<F>, q: &FreeComplex<F>, ms: &[Vec<i64>]) -> Result<Option<FreeMap<F>>> {
    let zero = vec![0; p.ring().rank()];
    let cands = hom_cocycles_at(p, q, &zero, 0)?;
    if cands.is_empty() {
        let empty = FreeMap { source: p.clone(), target: q.clone(), degree: 0, comps: BTreeMap::new() };
        return Ok(if is_quasi_iso_on(&empty, ms)? { Some(empty) } else { None });
    }
    for f in &cands {
        if is_quasi_iso_on(f, ms)? {
            return Ok(Some(f.clone()));
        }
    }
    let mut rng = Lcg::new(cands.len() as u64 + 5);
    for _ in 0..16 {
        let coeffs: Vec<F> = (0..cands.len()).map(|_| F::from_i64(rng.next_coeff())).collect();
        let f = combine_free(&cands, &coeffs);
        if is_quasi_iso_on(&f, ms)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn combine_free<F: Field>(maps: &[FreeMap<F>], coeffs: &[F]) -> FreeMap<F> {
    let mut comps: BTreeMap<i64, PolyMatrix<F>> = BTreeMap::new();
    for (f, c) in maps.iter().zip(coeffs) {
        for (k, m) in &f.comps {
            let e = comps.entry(*k).or_insert_with(|| PolyMatrix::zeros(m.rows(), m.cols()));
            for ((r, col), p) in m.entries() {
                e.add_at(*r, *col, &p.scale(c));
            }
        }
    }
    FreeMap { source: maps[0].source.clone(), target: maps[0].target.clone(), degree: maps[0].degree, comps }
}

/// Every integer vector in the box `lo..=hi`.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for v in &out {
            for x in *a..=*b {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Componentwise bounds of all generator shifts of the given complexes.
pub fn shift_box<F: Field>(cs: &[&FreeComplex<F>]) -> (Vec<i64>, Vec<i64>) {
    let k = cs[0].ring().rank();
    let (mut lo, mut hi) = (vec![i64::MAX; k], vec![i64::MIN; k]);
    for c in cs {
        for d in c.degrees() {
            for s in c.shifts_at(d) {
                for i in 0..k {
                    lo[i] = lo[i].min(s[i]);
                    hi[i] = hi[i].max(s[i]);
                }
            }
        }
    }
    if lo[0] == i64::MAX {
        return (vec![0; k], vec![0; k]);
    }
    (lo, hi)
}

/// Objects on coordinate subspaces `𝔸^I`, with restriction certificates for `I′ ⊂ I`.
#[derive(Clone, Debug)]
pub struct DescentObject<F: Field> {
    /// Sorted variable subsets and the complex over the variables of each.
    pub objects: BTreeMap<Vec<usize>, FreeComplex<F>>,
}

impl<F: Field> DescentObject<F> {
    /// Restricts a complex over all variables to each listed subset.
    pub fn from_global(c: &FreeComplex<F>, subsets: &[Vec<usize>]) -> Result<Self> {
        let mut objects = BTreeMap::new();
        for s in subsets {
            let mut s = s.clone();
            s.sort_unstable();
            objects.insert(s.clone(), koszul_restrict(c, &s)?);
        }
        Ok(DescentObject { objects })
    }

    /// Checks every inclusion `I′ ⊂ I`: the restriction of the `I`-object is the `I′`-object,
    /// literally or through a quasi-isomorphism on the shift box.
    pub fn verify(&self) -> Result<()> {
        for (big, x) in &self.objects {
            for (small, y) in &self.objects {
                if small.len() >= big.len() || !small.iter().all(|v| big.contains(v)) {
                    continue;
                }
                let r = koszul_restrict(x, &positions(big, small)?)?;
                if &r == y {
                    continue;
                }
                let (lo, hi) = shift_box(&[&r, y]);
                if find_free_quasi_iso(&r, y, &box_points(&lo, &hi))?.is_none() {
                    return Err(Error::CertificateFailure(alloc::format!("restriction {big:?} -> {small:?}")));
                }
            }
        }
        Ok(())
    }
}

/// Slice cohomology of the direct Hom and of its Čech totalization, keyed by (degree, multidegree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentComparison {
    pub direct: BTreeMap<(i64, Vec<i64>), usize>,
    pub glued: BTreeMap<(i64, Vec<i64>), usize>,
}

impl DescentComparison {
    pub fn agree(&self) -> bool {
        self.direct == self.glued
    }
}

/// Compares `Hom_B(F, G)` over `B = A/(z_1⋯z_n)` with the totalization over nonempty `S ⊆ [n]`
/// of `Hom_{𝔸^{I}}(F|_I, G|_I)[−(|S|−1)]`, `I = [n] ∖ S`, with alternating restriction maps.
/// `F` is a bounded free complex over `B` and `G` a complex over a quotient of `B` whose
/// terms make the Čech sequence of the components exact (free terms, or `B/(z_b)`).
pub fn cech_descent_check<F: Field>(src: &FreeComplex<F>, tgt: &FreeComplex<F>, d_poly: usize) -> Result<DescentComparison> {
    let n = src.ring().nvars();
    let direct_hom = hom_free(src, tgt)?;
    let masks: Vec<u32> = (1u32..(1u32 << n)).collect();
    let keep = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask & (1 << i) == 0).collect() };
    let mut homs = BTreeMap::new();
    for &s in &masks {
        let i = keep(s);
        let f = koszul_restrict(src, &i)?;
        let g = koszul_restrict(tgt, &i)?;
        homs.insert(s, hom_free(&f, &g)?);
    }
    // multidegrees: coefficient degree at most d_poly in some term of the direct Hom
    let mut ms: BTreeSet<Vec<i64>> = BTreeSet::new();
    for k in direct_hom.degrees() {
        let shifts = direct_hom.shifts_at(k);
        let r: i64 = shifts.iter().map(|s| s.iter().sum()).max().unwrap_or(0);
        for s in shifts {
            let tot: i64 = s.iter().sum();
            for mu in direct_hom.ring().monomials_up_to(d_poly as i64 + r - tot)? {
                ms.insert(s.iter().zip(direct_hom.ring().degree(&mu)).map(|(a, b)| a + b).collect());
            }
        }
    }
    let mut direct = BTreeMap::new();
    let mut glued = BTreeMap::new();
    for m in ms {
        let h = direct_hom.slice(&m)?.cohomology();
        for (k, v) in h.dims() {
            if *v > 0 {
                direct.insert((*k, m.clone()), *v);
            }
        }
        let t = cech_slice(&homs, n, &m)?.cohomology();
        for (k, v) in t.dims() {
            if *v > 0 {
                glued.insert((*k, m.clone()), *v);
            }
        }
    }
    Ok(DescentComparison { direct, glued })
}

fn cech_slice<F: Field>(homs: &BTreeMap<u32, FreeComplex<F>>, n: usize, m: &[i64]) -> Result<Complex<F>> {
    let keep = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask & (1 << i) == 0).collect() };
    let mut slices = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for (s, h) in homs {
        slices.insert(*s, h.slice(m)?);
        bases.insert(*s, h.slice_basis(m));
    }
    // Tot^k = ⊕_S C_S^{k − |S| + 1}; block offsets per degree
    let mut degs: BTreeSet<i64> = BTreeSet::new();
    for (s, c) in &slices {
        for k in c.degrees() {
            degs.insert(k + s.count_ones() as i64 - 1);
        }
    }
    let mut offsets: BTreeMap<(i64, u32), usize> = BTreeMap::new();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for &k in &degs {
        let mut off = 0;
        for (s, c) in &slices {
            offsets.insert((k, *s), off);
            off += c.dim(k - s.count_ones() as i64 + 1);
        }
        dims.insert(k, off);
    }
    let mut d = BTreeMap::new();
    for &k in &degs {
        let rows = dims.get(&(k + 1)).copied().unwrap_or(0);
        let mut mat = ExactMatrix::zeros(rows, dims[&k]);
        if rows == 0 {
            d.insert(k, mat);
            continue;
        }
        for (s, c) in &slices {
            let size = s.count_ones() as i64;
            let j = k - size + 1;
            if c.dim(j) == 0 {
                continue;
            }
            let col0 = offsets[&(k, *s)];
            let inner = c.diff(j).scale(&sign::<F>(size - 1));
            mat.add_block(offsets[&(k + 1, *s)], col0, &inner);
            let src_vars = keep(*s);
            let src_basis = &bases[s][&j];
            for b in (0..n).filter(|b| s & (1 << b) == 0) {
                let t = s | (1 << b);
                let eps = sign::<F>((0..b).filter(|x| s & (1 << x) != 0).count() as i64);
                let tgt_vars = keep(t);
                let Some(tgt_basis) = bases[&t].get(&j) else { continue };
                let index: BTreeMap<(usize, &MultiMonomial), usize> =
                    tgt_basis.iter().enumerate().map(|(i, (g, mu))| ((*g, mu), i)).collect();
                let pb = src_vars.iter().position(|v| *v == b).expect("b is kept in S");
                let row0 = offsets[&(k + 1, t)];
                for (col, (g, mu)) in src_basis.iter().enumerate() {
                    if mu.0[pb] != 0 {
                        continue;
                    }
                    let reduced = MultiMonomial(mu.0.iter().enumerate().filter(|(i, _)| *i != pb).map(|(_, e)| *e).collect());
                    debug_assert_eq!(reduced.0.len(), tgt_vars.len());
                    if let Some(&row) = index.get(&(*g, &reduced)) {
                        mat.add_at(row0 + row, col0 + col, &eps);
                    }
                }
            }
        }
        d.insert(k, mat);
    }
    Complex::new(Grading::Z, dims, d)
}
