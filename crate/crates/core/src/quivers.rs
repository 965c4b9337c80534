//! Perfect complexes over the linearly oriented quiver `A_n`.
//!
//! Arrows point `a -> a+1`. The projective `P_a` is supported on vertices `>= a`, so
//! `Hom(P_b, P_a)` is one-dimensional exactly when `b >= a`, spanned by the path.
//! Path-algebra matrices therefore multiply like scalar matrices, with entries
//! (row label `a`, column label `b`) allowed only when `b >= a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{cone, hom_differential, ChainMap, Complex, HomLayout, Lcg};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, GradedSpace, Grading};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearQuiver {
    pub n: usize,
}

impl LinearQuiver {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("A_n needs n >= 1".into()));
        }
        Ok(LinearQuiver { n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Projective,
    Injective,
    Skyscraper,
}

/// Bounded complex of projectives; `labels[i]` lists the vertex of each summand of the degree-`i` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfComplex<F: Field> {
    n: usize,
    labels: BTreeMap<i64, Vec<usize>>,
    body: Complex<F>,
}

fn check_paths<F: Field>(m: &ExactMatrix<F>, rows: &[usize], cols: &[usize]) -> bool {
    m.entries().all(|(r, c, _)| cols[c] >= rows[r])
}

impl<F: Field> PerfComplex<F> {
    pub fn new(n: usize, grading: Grading, labels: BTreeMap<i64, Vec<usize>>, diffs: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        let mut nl: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, v) in labels {
            for &a in &v {
                if a == 0 || a > n {
                    return Err(Error::VertexOutOfRange { vertex: a, n });
                }
            }
            if !v.is_empty() {
                nl.entry(grading.norm(k)).or_default().extend(v);
            }
        }
        let dims = nl.iter().map(|(k, v)| (*k, v.len())).collect();
        let body = Complex::new(grading, dims, diffs)?;
        for k in body.degrees() {
            let empty = Vec::new();
            let rows = nl.get(&body.next(k)).unwrap_or(&empty);
            if !check_paths(&body.diff(k), rows, &nl[&k]) {
                return Err(Error::InvalidArgument(format!("differential at degree {k} uses a nonexistent path")));
            }
        }
        Ok(PerfComplex { n, labels: nl, body })
    }

    pub fn zero(n: usize, grading: Grading) -> Self {
        PerfComplex { n, labels: BTreeMap::new(), body: Complex::zero(grading) }
    }

    pub fn projective(n: usize, a: usize) -> Result<Self> {
        Self::new(n, Grading::Z, [(0, vec![a])].into_iter().collect(), BTreeMap::new())
    }

    /// `k_a = [P_{a+1} -> P_a]` in degrees −1, 0; `k_n = P_n`.
    pub fn skyscraper(n: usize, a: usize) -> Result<Self> {
        if a == 0 || a > n {
            return Err(Error::VertexOutOfRange { vertex: a, n });
        }
        if a == n {
            return Self::projective(n, a);
        }
        Self::new(
            n,
            Grading::Z,
            [(-1, vec![a + 1]), (0, vec![a])].into_iter().collect(),
            [(-1, ExactMatrix::identity(1))].into_iter().collect(),
        )
    }

    /// `I_a = [P_{a+1} -> P_1]` in degrees −1, 0, supported on vertices `<= a`; `I_n = P_1`.
    pub fn injective(n: usize, a: usize) -> Result<Self> {
        if a == 0 || a > n {
            return Err(Error::VertexOutOfRange { vertex: a, n });
        }
        if a == n {
            return Self::projective(n, 1);
        }
        Self::new(
            n,
            Grading::Z,
            [(-1, vec![a + 1]), (0, vec![1])].into_iter().collect(),
            [(-1, ExactMatrix::identity(1))].into_iter().collect(),
        )
    }

    /// A field complex viewed over `A_1`.
    pub fn from_field(c: &Complex<F>) -> Self {
        let labels = c.degrees().into_iter().map(|k| (k, vec![1; c.dim(k)])).collect();
        PerfComplex { n: 1, labels, body: c.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.body.grading()
    }

    pub fn body(&self) -> &Complex<F> {
        &self.body
    }

    pub fn labels(&self, k: i64) -> &[usize] {
        self.labels.get(&self.grading().norm(k)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.body.degrees()
    }

    /// Number of projective summands.
    pub fn size(&self) -> usize {
        self.body.total_dim()
    }

    pub fn shift(&self, k: i64) -> Self {
        let g = self.grading();
        let labels = self.labels.iter().map(|(d, v)| (g.norm(d - k), v.clone())).collect();
        PerfComplex { n: self.n, labels, body: self.body.shift(k) }
    }

    pub fn fold(&self) -> Self {
        if self.grading() == Grading::Z2 {
            return self.clone();
        }
        let mut labels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, v) in &self.labels {
            labels.entry(k.rem_euclid(2)).or_default().extend(v.iter().copied());
        }
        PerfComplex { n: self.n, labels, body: self.body.fold() }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QuiverMismatch(self.n, other.n));
        }
        let body = self.body.direct_sum(&other.body)?;
        let mut labels = self.labels.clone();
        for (k, v) in &other.labels {
            labels.entry(*k).or_default().extend(v.iter().copied());
        }
        Ok(PerfComplex { n: self.n, labels, body })
    }

    /// The representation at vertex `v`: summands `P_a` with `a <= v` contribute `k`.
    pub fn stalk(&self, v: usize) -> Complex<F> {
        let mut keep: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, ls) in &self.labels {
            keep.insert(*k, ls.iter().enumerate().filter(|(_, a)| **a <= v).map(|(i, _)| i).collect());
        }
        let dims = keep.iter().map(|(k, v)| (*k, v.len())).collect();
        let empty = Vec::new();
        let d = self
            .degrees()
            .into_iter()
            .map(|k| {
                let rows = keep.get(&self.body.next(k)).unwrap_or(&empty);
                (k, self.body.diff(k).submatrix(rows, &keep[&k]))
            })
            .collect();
        Complex::new(self.grading(), dims, d).expect("stalk of a complex")
    }

    /// Cohomology of the representation at each vertex `1..=n`.
    pub fn vertex_cohomology(&self) -> Vec<GradedSpace> {
        (1..=self.n).map(|v| self.stalk(v).cohomology()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (1..=self.n).all(|v| self.stalk(v).is_acyclic())
    }

    /// The underlying field complex of an `A_1` complex.
    pub fn to_field(&self) -> Complex<F> {
        self.stalk(self.n)
    }
}

/// Morphism of perfect complexes: a map of bodies whose entries are paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfMap<F: Field> {
    pub source: PerfComplex<F>,
    pub target: PerfComplex<F>,
    pub map: ChainMap<F>,
}

impl<F: Field> PerfMap<F> {
    pub fn new(source: PerfComplex<F>, target: PerfComplex<F>, degree: i64, comps: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        let f = Self::unchecked(source, target, degree, comps)?;
        if !f.map.commutes() {
            return Err(Error::NotAChainMap(0));
        }
        Ok(f)
    }

    pub fn unchecked(source: PerfComplex<F>, target: PerfComplex<F>, degree: i64, comps: BTreeMap<i64, ExactMatrix<F>>) -> Result<Self> {
        if source.n != target.n {
            return Err(Error::QuiverMismatch(source.n, target.n));
        }
        let map = ChainMap::unchecked(source.body.clone(), target.body.clone(), degree, comps)?;
        for (i, m) in map.components() {
            if !check_paths(m, target.labels(i + degree), source.labels(*i)) {
                return Err(Error::InvalidArgument(format!("map component at degree {i} uses a nonexistent path")));
            }
        }
        Ok(PerfMap { source, target, map })
    }

    pub fn identity(x: &PerfComplex<F>) -> Self {
        PerfMap { source: x.clone(), target: x.clone(), map: ChainMap::identity(&x.body) }
    }

    pub fn zero(x: &PerfComplex<F>, y: &PerfComplex<F>, degree: i64) -> Self {
        PerfMap { source: x.clone(), target: y.clone(), map: ChainMap::zero(&x.body, &y.body, degree) }
    }

    pub fn degree(&self) -> i64 {
        self.map.degree
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        let map = self.map.then(&other.map)?;
        Ok(PerfMap { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn scale(&self, s: &F) -> Self {
        PerfMap { map: self.map.scale(s), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(PerfMap { map: self.map.add(&other.map)?, ..self.clone() })
    }

    pub fn cone(&self) -> Result<PerfComplex<F>> {
        let body = cone(&self.map)?;
        let g = body.grading();
        let mut labels = BTreeMap::new();
        for k in body.degrees() {
            let mut v: Vec<usize> = self.source.labels(g.norm(k + 1)).to_vec();
            v.extend_from_slice(self.target.labels(k));
            labels.insert(k, v);
        }
        Ok(PerfComplex { n: self.source.n, labels, body })
    }

    /// Quasi-isomorphism test: the cone is acyclic at every vertex.
    pub fn is_quasi_iso(&self) -> bool {
        self.degree() == 0 && self.cone().map(|c| c.is_acyclic()).unwrap_or(false)
    }

    /// The induced map of representations at vertex `v`.
    pub fn stalk(&self, v: usize) -> ChainMap<F> {
        let keep = |x: &PerfComplex<F>, k: i64| -> Vec<usize> {
            x.labels(k).iter().enumerate().filter(|(_, a)| **a <= v).map(|(i, _)| i).collect()
        };
        let comps = self
            .map
            .components()
            .iter()
            .map(|(i, m)| (*i, m.submatrix(&keep(&self.target, i + self.degree()), &keep(&self.source, *i))))
            .collect();
        ChainMap::unchecked(self.source.stalk(v), self.target.stalk(v), self.degree(), comps).expect("stalk shapes")
    }
}

/// Source degree, row and column of a Hom entry the labels allow.
type HomBlock = (i64, usize, usize);

/// The field-valued Hom complex between perfect complexes, with basis bookkeeping.
#[derive(Clone, Debug)]
pub struct PerfHom<F: Field> {
    pub x: PerfComplex<F>,
    pub y: PerfComplex<F>,
    layouts: BTreeMap<i64, (HomLayout, Vec<HomBlock>)>,
    pub complex: Complex<F>,
}

impl<F: Field> PerfHom<F> {
    pub fn new(x: &PerfComplex<F>, y: &PerfComplex<F>) -> Result<Self> {
        if x.n != y.n {
            return Err(Error::QuiverMismatch(x.n, y.n));
        }
        if x.grading() != y.grading() {
            return Err(Error::GradingMismatch);
        }
        let g = x.grading();
        let degrees: Vec<i64> = match g {
            Grading::Z2 => vec![0, 1],
            Grading::Z => {
                let (xd, yd) = (x.degrees(), y.degrees());
                if xd.is_empty() || yd.is_empty() {
                    Vec::new()
                } else {
                    ((yd[0] - xd[xd.len() - 1] - 1)..=(yd[yd.len() - 1] - xd[0] + 1)).collect()
                }
            }
        };
        let allowed = |n: i64, lay: &HomLayout| -> Vec<HomBlock> {
            let mut out = Vec::new();
            for &(i, rows, cols, _) in &lay.blocks {
                let (ly, lx) = (y.labels(i + n), x.labels(i));
                for r in 0..rows {
                    for c in 0..cols {
                        if lx[c] >= ly[r] {
                            out.push((i, r, c));
                        }
                    }
                }
            }
            out
        };
        let mut layouts = BTreeMap::new();
        for &n in &degrees {
            let lay = HomLayout::new(&x.body, &y.body, n);
            let al = allowed(n, &lay);
            layouts.insert(g.norm(n), (lay, al));
        }
        let mut dims = BTreeMap::new();
        let mut d = BTreeMap::new();
        for &n in &degrees {
            let n = g.norm(n);
            let (src, tgt, m) = hom_differential(&x.body, &y.body, n);
            let (_, al_s) = &layouts[&n];
            let nn = g.norm(n + 1);
            let al_t: Vec<HomBlock> = match layouts.get(&nn) {
                Some((_, a)) => a.clone(),
                None => Vec::new(),
            };
            let cols: Vec<usize> = al_s.iter().map(|&(i, r, c)| src.index(i, r, c).unwrap()).collect();
            let rows: Vec<usize> = al_t.iter().map(|&(i, r, c)| tgt.index(i, r, c).unwrap()).collect();
            dims.insert(n, cols.len());
            if layouts.contains_key(&nn) {
                d.insert(n, m.submatrix(&rows, &cols));
            }
        }
        let complex = Complex::new(g, dims, d)?;
        Ok(PerfHom { x: x.clone(), y: y.clone(), layouts, complex })
    }

    pub fn cohomology(&self) -> GradedSpace {
        self.complex.cohomology()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    /// Morphism with the given coordinates in `Hom^n`.
    pub fn to_map(&self, n: i64, v: &[F]) -> PerfMap<F> {
        let n = self.x.grading().norm(n);
        let Some((lay, al)) = self.layouts.get(&n) else {
            return PerfMap::zero(&self.x, &self.y, n);
        };
        let mut full = vec![F::zero(); lay.dim];
        for (k, &(i, r, c)) in al.iter().enumerate() {
            full[lay.index(i, r, c).unwrap()] = v[k].clone();
        }
        let cm = lay.to_map(&self.x.body, &self.y.body, &full);
        PerfMap { source: self.x.clone(), target: self.y.clone(), map: cm }
    }

    pub fn to_vector(&self, f: &PerfMap<F>) -> Vec<F> {
        let n = self.x.grading().norm(f.degree());
        let Some((lay, al)) = self.layouts.get(&n) else { return Vec::new() };
        let full = lay.to_vector(&f.map);
        al.iter().map(|&(i, r, c)| full[lay.index(i, r, c).unwrap()].clone()).collect()
    }

    /// Degree-`n` cocycles, as morphisms.
    pub fn cocycles(&self, n: i64) -> Vec<PerfMap<F>> {
        self.complex.diff(n).kernel().iter().map(|v| self.to_map(n, v)).collect()
    }
}

pub fn quiver_hom<F: Field>(x: &PerfComplex<F>, y: &PerfComplex<F>) -> Result<Complex<F>> {
    Ok(PerfHom::new(x, y)?.complex)
}

/// Searches degree-0 cocycles for a quasi-isomorphism `x -> y`.
pub fn perf_find_quasi_iso<F: Field>(x: &PerfComplex<F>, y: &PerfComplex<F>) -> Option<PerfMap<F>> {
    if x.n != y.n || x.grading() != y.grading() || x.vertex_cohomology() != y.vertex_cohomology() {
        return None;
    }
    let h = PerfHom::new(x, y).ok()?;
    let z = h.cocycles(0);
    if z.is_empty() {
        return if x.is_acyclic() { Some(PerfMap::zero(x, y, 0)) } else { None };
    }
    for f in &z {
        if f.is_quasi_iso() {
            return Some(f.clone());
        }
    }
    let k = z.len();
    let comb = |coeffs: &[i64]| -> PerfMap<F> {
        let mut acc = PerfMap::zero(x, y, 0);
        for (m, c) in z.iter().zip(coeffs) {
            if *c != 0 {
                acc = acc.add(&m.scale(&F::from_i64(*c))).expect("same type");
            }
        }
        acc
    };
    if k <= 8 {
        for mask in 0..(1u32 << (k - 1)) {
            let coeffs: Vec<i64> = (0..k).map(|i| if i > 0 && mask & (1 << (i - 1)) != 0 { -1 } else { 1 }).collect();
            let f = comb(&coeffs);
            if f.is_quasi_iso() {
                return Some(f);
            }
        }
    }
    let mut rng = Lcg::new(k as u64 + 29);
    for _ in 0..24 {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.next_coeff()).collect();
        let f = comb(&coeffs);
        if f.is_quasi_iso() {
            return Some(f);
        }
    }
    None
}

pub fn named_object<F: Field>(q: LinearQuiver, kind: ObjectKind, a: usize) -> Result<PerfComplex<F>> {
    if a == 0 || a > q.n {
        return Err(Error::VertexOutOfRange { vertex: a, n: q.n });
    }
    match kind {
        ObjectKind::Projective => PerfComplex::projective(q.n, a),
        ObjectKind::Injective => PerfComplex::injective(q.n, a),
        ObjectKind::Skyscraper => PerfComplex::skyscraper(q.n, a),
    }
}

/// Parses names such as `P2`, `k1`, `I3`.
pub fn parse_object_name(name: &str) -> Option<(ObjectKind, usize)> {
    let (head, tail) = name.split_at(1);
    let kind = match head {
        "P" | "p" => ObjectKind::Projective,
        "I" | "i" => ObjectKind::Injective,
        "k" | "K" | "S" => ObjectKind::Skyscraper,
        _ => return None,
    };
    tail.parse().ok().map(|a| (kind, a))
}

pub fn object_name(kind: ObjectKind, a: usize) -> String {
    match kind {
        ObjectKind::Projective => format!("P{a}"),
        ObjectKind::Injective => format!("I{a}"),
        ObjectKind::Skyscraper => format!("k{a}"),
    }
}

/// All named generators of `A_n`, in a fixed order.
pub fn all_named<F: Field>(n: usize) -> Vec<(String, PerfComplex<F>)> {
    let q = LinearQuiver { n };
    let mut out = Vec::new();
    for kind in [ObjectKind::Projective, ObjectKind::Skyscraper, ObjectKind::Injective] {
        for a in 1..=n {
            out.push((object_name(kind, a), named_object(q, kind, a).expect("valid vertex")));
        }
    }
    out
}

/// An additive functor on perfect complexes, given by the images of the projectives and
/// of the arrows `P_{a+1} -> P_a`.
#[derive(Clone, Debug)]
pub struct GenFunctor<F: Field> {
    pub source_n: usize,
    pub target_n: usize,
    images: Vec<PerfComplex<F>>,
    /// `paths[b-1][a-1]` is the image of the path `P_b -> P_a` for `b >= a`.
    paths: Vec<Vec<Option<PerfMap<F>>>>,
}

impl<F: Field> GenFunctor<F> {
    /// `arrows[a-1]` is the image of `P_{a+1} -> P_a`, for `a = 1..n-1`.
    pub fn new(source_n: usize, target_n: usize, images: Vec<PerfComplex<F>>, arrows: Vec<PerfMap<F>>) -> Result<Self> {
        if images.len() != source_n || arrows.len() + 1 != source_n.max(1) {
            return Err(Error::InvalidArgument("functor data has the wrong size".into()));
        }
        for (a, f) in arrows.iter().enumerate() {
            if f.source != images[a + 1] || f.target != images[a] || f.degree() != 0 {
                return Err(Error::InvalidArgument(format!("arrow image {} has the wrong type", a + 1)));
            }
            if !f.map.commutes() {
                return Err(Error::NotAChainMap(0));
            }
        }
        let n = source_n;
        let mut paths: Vec<Vec<Option<PerfMap<F>>>> = vec![vec![None; n]; n];
        for b in 1..=n {
            paths[b - 1][b - 1] = Some(PerfMap::identity(&images[b - 1]));
            for a in (1..b).rev() {
                let prev = paths[b - 1][a].clone().expect("built in order");
                paths[b - 1][a - 1] = Some(prev.then(&arrows[a - 1])?);
            }
        }
        Ok(GenFunctor { source_n, target_n, images, paths })
    }

    pub fn image(&self, a: usize) -> &PerfComplex<F> {
        &self.images[a - 1]
    }

    fn path(&self, b: usize, a: usize) -> &PerfMap<F> {
        self.paths[b - 1][a - 1].as_ref().expect("path exists when b >= a")
    }

    fn prepared(&self, x: &PerfComplex<F>) -> (Grading, Vec<PerfComplex<F>>) {
        let g = if x.grading() == Grading::Z2 || self.images.iter().any(|i| i.grading() == Grading::Z2) { Grading::Z2 } else { Grading::Z };
        let imgs = self.images.iter().map(|i| if g == Grading::Z2 { i.fold() } else { i.clone() }).collect();
        (g, imgs)
    }

    /// Block layout of the totalization: output degree -> list of (i, j, e, offset).
    fn layout(&self, x: &PerfComplex<F>, g: Grading, imgs: &[PerfComplex<F>]) -> BTreeMap<i64, Vec<(i64, usize, i64, usize)>> {
        let mut out: BTreeMap<i64, Vec<(i64, usize, i64, usize)>> = BTreeMap::new();
        let mut off: BTreeMap<i64, usize> = BTreeMap::new();
        for i in x.degrees() {
            for (j, &l) in x.labels(i).iter().enumerate() {
                let img = &imgs[l - 1];
                for e in img.degrees() {
                    let k = g.norm(i + e);
                    let o = off.entry(k).or_insert(0);
                    out.entry(k).or_default().push((i, j, e, *o));
                    *o += img.body().dim(e);
                }
            }
        }
        out
    }

    fn find_block(lay: &BTreeMap<i64, Vec<(i64, usize, i64, usize)>>, g: Grading, i: i64, j: usize, e: i64) -> usize {
        let k = g.norm(i + e);
        lay[&k].iter().find(|b| b.0 == i && b.1 == j && b.2 == e).map(|b| b.3).expect("block present")
    }

    pub fn apply(&self, x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
        if x.n != self.source_n {
            return Err(Error::QuiverMismatch(x.n, self.source_n));
        }
        let (g, imgs) = self.prepared(x);
        let x = if g == Grading::Z2 { x.fold() } else { x.clone() };
        let lay = self.layout(&x, g, &imgs);
        let mut labels: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, blocks) in &lay {
            let v = labels.entry(*k).or_default();
            for &(i, j, e, _) in blocks {
                v.extend_from_slice(imgs[x.labels(i)[j] - 1].labels(e));
            }
        }
        let dim = |k: i64| labels.get(&g.norm(k)).map(|v| v.len()).unwrap_or(0);
        let mut diffs: BTreeMap<i64, ExactMatrix<F>> = BTreeMap::new();
        for (k, blocks) in &lay {
            let nk = g.norm(k + 1);
            let mut m = ExactMatrix::zeros(dim(nk), dim(*k));
            for &(i, j, e, off) in blocks {
                let l = x.labels(i)[j];
                let img = &imgs[l - 1];
                let s: F = crate::complexes::sign(i);
                let dv = img.body().diff(e);
                if img.body().dim(e + 1) > 0 {
                    let to = Self::find_block(&lay, g, i, j, g.norm(e + 1));
                    m.add_block(to, off, &dv.scale(&s));
                }
                let dx = x.body().diff(i);
                let ni = g.norm(i + 1);
                for r in 0..dx.rows() {
                    let c = dx.get(r, j);
                    if c.is_zero() {
                        continue;
                    }
                    let lt = x.labels(ni)[r];
                    let p = self.path_prepared(l, lt, g);
                    let comp = p.map.component(e);
                    if comp.rows() == 0 || comp.cols() == 0 {
                        continue;
                    }
                    let to = Self::find_block(&lay, g, ni, r, e);
                    m.add_block(to, off, &comp.scale(&c));
                }
            }
            diffs.insert(*k, m);
        }
        PerfComplex::new(self.target_n, g, labels, diffs)
    }

    fn path_prepared(&self, b: usize, a: usize, g: Grading) -> PerfMap<F> {
        let p = self.path(b, a);
        if g == Grading::Z2 && p.source.grading() == Grading::Z {
            fold_map(p)
        } else {
            p.clone()
        }
    }

    /// Image of a morphism of any degree; components are transported without signs.
    pub fn apply_map(&self, f: &PerfMap<F>) -> Result<PerfMap<F>> {
        let (g, imgs) = self.prepared(&f.source);
        let fx = self.apply(&f.source)?;
        let fy = self.apply(&f.target)?;
        let (x, y) = if g == Grading::Z2 { (f.source.fold(), f.target.fold()) } else { (f.source.clone(), f.target.clone()) };
        let lx = self.layout(&x, g, &imgs);
        let ly = self.layout(&y, g, &imgs);
        let n = f.degree();
        let fmap = if g == Grading::Z2 && f.source.grading() == Grading::Z { fold_map(f) } else { f.clone() };
        let mut comps: BTreeMap<i64, ExactMatrix<F>> = BTreeMap::new();
        for (k, blocks) in &lx {
            let tk = g.norm(k + n);
            let mut m = ExactMatrix::zeros(fy.body().dim(tk), fx.body().dim(*k));
            for &(i, j, e, off) in blocks {
                let l = x.labels(i)[j];
                let fi = fmap.map.component(i);
                let ti = g.norm(i + n);
                for r in 0..fi.rows() {
                    let c = fi.get(r, j);
                    if c.is_zero() {
                        continue;
                    }
                    let lt = y.labels(ti)[r];
                    let p = self.path_prepared(l, lt, g);
                    let comp = p.map.component(e);
                    if comp.rows() == 0 || comp.cols() == 0 {
                        continue;
                    }
                    let to = Self::find_block(&ly, g, ti, r, e);
                    m.add_block(to, off, &comp.scale(&c));
                }
            }
            comps.insert(*k, m);
        }
        PerfMap::unchecked(fx, fy, n, comps)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GenFunctor<F>) -> Result<GenFunctor<F>> {
        let images: Vec<PerfComplex<F>> = self.images.iter().map(|i| other.apply(i)).collect::<Result<_>>()?;
        let arrows: Vec<PerfMap<F>> = (1..self.source_n).map(|a| other.apply_map(self.path(a + 1, a))).collect::<Result<_>>()?;
        GenFunctor::new(self.source_n, other.target_n, images, arrows)
    }
}

/// Folds a morphism between integer-graded complexes.
pub fn fold_map<F: Field>(f: &PerfMap<F>) -> PerfMap<F> {
    let (x, y) = (&f.source, &f.target);
    let (fx, fy) = (x.fold(), y.fold());
    let offsets = |c: &PerfComplex<F>| -> BTreeMap<i64, usize> {
        let mut off = BTreeMap::new();
        let mut acc = [0usize; 2];
        for k in c.degrees() {
            let p = k.rem_euclid(2) as usize;
            off.insert(k, acc[p]);
            acc[p] += c.body().dim(k);
        }
        off
    };
    let (ox, oy) = (offsets(x), offsets(y));
    let n = f.degree();
    let mut comps: BTreeMap<i64, ExactMatrix<F>> = BTreeMap::new();
    for (i, m) in f.map.components() {
        let p = i.rem_euclid(2);
        let tp = (i + n).rem_euclid(2);
        let e = comps.entry(p).or_insert_with(|| ExactMatrix::zeros(fy.body().dim(tp), fx.body().dim(p)));
        e.add_block(oy[&(i + n)], ox[i], m);
    }
    PerfMap::unchecked(fx, fy, n.rem_euclid(2), comps).expect("folded shapes")
}

fn arrow<F: Field>(src: &PerfComplex<F>, tgt: &PerfComplex<F>, comps: &[(i64, ExactMatrix<F>)]) -> Result<PerfMap<F>> {
    PerfMap::new(src.clone(), tgt.clone(), 0, comps.iter().cloned().collect())
}

fn one<F: Field>() -> ExactMatrix<F> {
    ExactMatrix::identity(1)
}

/// The Auslander–Reiten translate `τ`: `P_a ↦ [P_{a+1} -> P_1]` in degrees 0, 1 (`P_n ↦ P_1[−1]`).
pub fn tau<F: Field>(n: usize) -> GenFunctor<F> {
    let img = |a: usize| -> PerfComplex<F> {
        if a == n {
            PerfComplex::projective(n, 1).unwrap().shift(-1)
        } else {
            PerfComplex::injective(n, a).unwrap().shift(-1)
        }
    };
    let images: Vec<PerfComplex<F>> = (1..=n).map(img).collect();
    let arrows = (1..n)
        .map(|a| {
            let mut comps = vec![(1, one())];
            if a + 1 < n {
                comps.push((0, one()));
            }
            arrow(&images[a], &images[a - 1], &comps).expect("τ arrow")
        })
        .collect();
    GenFunctor::new(n, n, images, arrows).expect("τ data")
}

/// The inverse translate: `P_a ↦ [P_n -> P_{a−1}]` in degrees −1, 0 (`P_1 ↦ P_n[1]`).
pub fn tau_inverse<F: Field>(n: usize) -> GenFunctor<F> {
    let img = |a: usize| -> PerfComplex<F> {
        if a == 1 {
            PerfComplex::projective(n, n).unwrap().shift(1)
        } else {
            PerfComplex::new(n, Grading::Z, [(-1, vec![n]), (0, vec![a - 1])].into_iter().collect(), [(-1, one())].into_iter().collect())
                .unwrap()
        }
    };
    let images: Vec<PerfComplex<F>> = (1..=n).map(img).collect();
    let arrows = (1..n)
        .map(|a| {
            let mut comps = vec![(-1, one())];
            if a >= 2 {
                comps.push((0, one()));
            }
            arrow(&images[a], &images[a - 1], &comps).expect("τ⁻¹ arrow")
        })
        .collect();
    GenFunctor::new(n, n, images, arrows).expect("τ⁻¹ data")
}

/// The Serre functor `P_a ↦ I_a`.
pub fn serre<F: Field>(n: usize) -> GenFunctor<F> {
    let images: Vec<PerfComplex<F>> = (1..=n).map(|a| PerfComplex::injective(n, a).unwrap()).collect();
    let arrows = (1..n)
        .map(|a| {
            let mut comps = vec![(0, one())];
            if a + 1 < n {
                comps.push((-1, one()));
            }
            arrow(&images[a], &images[a - 1], &comps).expect("Serre arrow")
        })
        .collect();
    GenFunctor::new(n, n, images, arrows).expect("Serre data")
}

/// Shift functor `[k]` as a generator functor.
pub fn shift_functor<F: Field>(n: usize, k: i64) -> GenFunctor<F> {
    let images: Vec<PerfComplex<F>> = (1..=n).map(|a| PerfComplex::projective(n, a).unwrap().shift(k)).collect();
    let arrows = (1..n).map(|a| arrow(&images[a], &images[a - 1], &[(-k, one())]).unwrap()).collect();
    GenFunctor::new(n, n, images, arrows).expect("shift data")
}

/// The object `E_p` corepresenting restriction at position `p`: `E_1 = P_1[1]`, `E_p = k_{p−1}`.
pub fn position_object<F: Field>(n: usize, p: usize) -> Result<PerfComplex<F>> {
    if p == 0 || p > n + 1 {
        return Err(Error::PositionOutOfRange { position: p, max: n + 1 });
    }
    if p == 1 {
        Ok(PerfComplex::projective(n, 1)?.shift(1))
    } else {
        PerfComplex::skyscraper(n, p - 1)
    }
}

/// `RHom(E, −)` as a functor to field complexes (`A_1`).
pub fn corepresented<F: Field>(e: &PerfComplex<F>) -> Result<GenFunctor<F>> {
    let n = e.n;
    let projs: Vec<PerfComplex<F>> = (1..=n).map(|a| PerfComplex::projective(n, a).unwrap()).collect();
    let homs: Vec<PerfHom<F>> = projs.iter().map(|p| PerfHom::new(e, p)).collect::<Result<_>>()?;
    let images: Vec<PerfComplex<F>> = homs.iter().map(|h| PerfComplex::from_field(&h.complex)).collect();
    let mut arrows = Vec::new();
    for a in 1..n {
        // post-composition with the path P_{a+1} -> P_a
        let iota = PerfMap::new(projs[a].clone(), projs[a - 1].clone(), 0, [(0, one())].into_iter().collect())?;
        let (hs, ht) = (&homs[a], &homs[a - 1]);
        let mut comps = BTreeMap::new();
        for k in hs.complex.degrees() {
            let mut m = ExactMatrix::zeros(ht.dim(k), hs.dim(k));
            for col in 0..hs.dim(k) {
                let mut v = vec![F::zero(); hs.dim(k)];
                v[col] = F::one();
                let f = hs.to_map(k, &v);
                let g = f.then(&iota)?;
                let w = ht.to_vector(&PerfMap { source: e.clone(), target: projs[a - 1].clone(), map: g.map });
                for (r, x) in w.into_iter().enumerate() {
                    m.set(r, col, x);
                }
            }
            comps.insert(k, m);
        }
        arrows.push(PerfMap::new(images[a].clone(), images[a - 1].clone(), 0, comps)?);
    }
    GenFunctor::new(n, 1, images, arrows)
}

/// `V ↦ V ⊗ E` from field complexes to `A_n`.
pub fn tensor_with<F: Field>(e: &PerfComplex<F>) -> GenFunctor<F> {
    GenFunctor::new(1, e.n, vec![e.clone()], Vec::new()).expect("single image")
}

/// Restriction to the two-element subcycle at position `p` (`RHom(E_p, −)`).
pub fn subcycle_restrict<F: Field>(x: &PerfComplex<F>, p: usize) -> Result<Complex<F>> {
    let e = position_object::<F>(x.n, p)?;
    let e = if x.grading() == Grading::Z2 { e.fold() } else { e };
    quiver_hom(&e, x)
}

/// Left adjoint of restriction: `V ↦ V ⊗ E_p`.
pub fn subcycle_extend<F: Field>(v: &Complex<F>, q: LinearQuiver, p: usize) -> Result<PerfComplex<F>> {
    let e = position_object::<F>(q.n, p)?;
    tensor_with(&e).apply(&PerfComplex::from_field(v))
}

/// Mutation `R = τ^{-1}` of a simple cyclic rotation. Positions are read against the arrow
/// direction: `k_a ↦ k_{a−1}`, `k_1 ↦ P_1[1]`, so `R^m ≅ [2]` on `A_{m−1}`.
pub fn cyclic_rotate<F: Field>(x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
    tau_inverse(x.n).apply(x)
}

/// Inverse mutation `R^{-1} = τ`.
pub fn cyclic_rotate_inverse<F: Field>(x: &PerfComplex<F>) -> Result<PerfComplex<F>> {
    tau(x.n).apply(x)
}

/// `⟨k_a, k_b⟩ = Σ (−1)^i dim Ext^i(k_a, k_b)`.
pub fn euler_matrix<F: Field>(q: LinearQuiver) -> ExactMatrix<F> {
    let ks: Vec<PerfComplex<F>> = (1..=q.n).map(|a| PerfComplex::skyscraper(q.n, a).unwrap()).collect();
    let mut m = ExactMatrix::zeros(q.n, q.n);
    for a in 0..q.n {
        for b in 0..q.n {
            let h = quiver_hom(&ks[a], &ks[b]).expect("same quiver");
            m.set(a, b, F::from_i64(h.cohomology().euler()));
        }
    }
    m
}

/// Result of the hom-pairing comparison on generator Ext tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub pairs_checked: usize,
    pub finite: bool,
    pub serre_tables_match: bool,
    pub euler_determinant: i64,
    pub holds: bool,
}

/// For every pair of named generators, compares `dim Ext^i(x, y)` with `dim Ext^{−i}(y, Sx)`,
/// where `Sx` represents the dual of the functional `Hom(x, −)`.
pub fn hom_pairing_duality_report<F: Field>(q: LinearQuiver) -> DualityReport {
    let gens = all_named::<F>(q.n);
    let s = serre::<F>(q.n);
    let mut finite = true;
    let mut matches = true;
    let mut pairs = 0;
    for (_, x) in &gens {
        let sx = s.apply(x).expect("Serre image");
        for (_, y) in &gens {
            let h = quiver_hom(x, y).expect("same quiver").cohomology();
            let d = quiver_hom(y, &sx).expect("same quiver").cohomology();
            finite &= h.dims().keys().count() < usize::MAX;
            for deg in h.dims().keys().chain(d.dims().keys()) {
                if h.get(*deg) != d.get(-*deg) {
                    matches = false;
                }
            }
            pairs += 1;
        }
    }
    let det = euler_matrix::<F>(q).determinant().expect("square");
    let det_i = if det == F::one() {
        1
    } else if det == F::one().neg() {
        -1
    } else {
        0
    };
    DualityReport {
        pairs_checked: pairs,
        finite,
        serre_tables_match: matches,
        euler_determinant: det_i,
        holds: finite && matches && det_i != 0,
    }
}

pub fn hom_pairing_duality_check<F: Field>(q: LinearQuiver) -> bool {
    hom_pairing_duality_report::<F>(q).holds
}

#[cfg(test)]
mod tests;
