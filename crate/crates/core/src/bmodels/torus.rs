//! Torus and Kronecker models.
//!
//! A [`KroneckerModel`] over directions `D` assigns a complex to every corner `S ⊆ D` with maps
//! `x_a, y_a` from corner `S` to `S ∪ {a}`; `x` preserves basis weights and `y_a` raises them by the
//! weight of direction `a`. Hyperbolic restriction `η` along `a` is the fiber of `y_a` (or of `x_a`
//! for the opposite end). When every `x` is invertible, transporting `y_a` along `x_a^{-1}` at the
//! corner `∅` gives commuting operators `T_a`, i.e. a module over `k[t_a : a ∈ D]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{cone, sign, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, GradedSpace, Grading};
use crate::field::Field;
use crate::polyring::{FreeComplex, MonomialIdeal, MultiMonomial, Poly, PolyMatrix, Ring};

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Row-major unvectorization: index `r · cols + c`.
fn unvectorize<F: Field>(v: &[F], rows: usize, cols: usize) -> ExactMatrix<F> {
    let mut m = ExactMatrix::zeros(rows, cols);
    for (i, a) in v.iter().enumerate() {
        if !a.is_zero() {
            m.set(i / cols, i % cols, a.clone());
        }
    }
    m
}

/// The matrix of `f ↦ A f − f B` on row-major vectorized `f: V → W` (`A` on `W`, `B` on `V`).
fn ad_matrix<F: Field>(a: &ExactMatrix<F>, b: &ExactMatrix<F>) -> ExactMatrix<F> {
    let (w, v) = (a.rows(), b.rows());
    let mut m = ExactMatrix::zeros(w * v, w * v);
    for (r, k, s) in a.entries() {
        for c in 0..v {
            m.add_at(r * v + c, k * v + c, s);
        }
    }
    for (k, c, s) in b.entries() {
        for r in 0..w {
            m.add_at(r * v + c, r * v + k, &s.neg());
        }
    }
    m
}

/// A finite-dimensional module over `k[t_1..t_r]`: commuting operators on one vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionModule<F: Field> {
    dim: usize,
    ops: Vec<ExactMatrix<F>>,
}

impl<F: Field> TorsionModule<F> {
    pub fn new(dim: usize, ops: Vec<ExactMatrix<F>>) -> Result<Self> {
        for t in &ops {
            if t.rows() != dim || t.cols() != dim {
                return Err(Error::ShapeMismatch("operator of the wrong size".into()));
            }
        }
        for i in 0..ops.len() {
            for j in 0..i {
                if ops[i].mul(&ops[j])? != ops[j].mul(&ops[i])? {
                    return Err(Error::InvalidArgument("operators do not commute".into()));
                }
            }
        }
        Ok(TorsionModule { dim, ops })
    }

    /// The point `t = λ` of the line.
    pub fn point(lambda: F) -> Self {
        TorsionModule { dim: 1, ops: vec![ExactMatrix::scalar(1, &lambda)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[ExactMatrix<F>] {
        &self.ops
    }

    /// `RHom(V, W)` as the Koszul complex of the operators `f ↦ T^W_a f − f T^V_a`,
    /// with `Hom(V, W)` in degree `|U|` for every `U ⊆ {1..r}`.
    pub fn ext_complex(&self, w: &Self) -> Result<Complex<F>> {
        let r = self.vars();
        if w.vars() != r {
            return Err(Error::AlgebraMismatch("modules over different rings".into()));
        }
        let block = self.dim * w.dim;
        let masks_of = |p: usize| -> Vec<u32> { (0u32..(1 << r)).filter(|m| m.count_ones() as usize == p).collect() };
        let mut dims = BTreeMap::new();
        let mut d = BTreeMap::new();
        for p in 0..=r {
            dims.insert(p as i64, masks_of(p).len() * block);
        }
        let ads: Vec<ExactMatrix<F>> = (0..r).map(|a| ad_matrix(&w.ops[a], &self.ops[a])).collect();
        for p in 0..r {
            let (src, tgt) = (masks_of(p), masks_of(p + 1));
            let mut m = ExactMatrix::zeros(tgt.len() * block, src.len() * block);
            for (i, u) in src.iter().enumerate() {
                for b in (0..r).filter(|b| u & (1 << b) == 0) {
                    let t = u | (1 << b);
                    let j = tgt.iter().position(|x| *x == t).expect("superset");
                    let s = sign::<F>((u & ((1 << b) - 1)).count_ones() as i64);
                    m.add_block(j * block, i * block, &ads[b].scale(&s));
                }
            }
            d.insert(p as i64, m);
        }
        Complex::new(Grading::Z, dims, d)
    }

    pub fn ext(&self, w: &Self) -> Result<GradedSpace> {
        Ok(self.ext_complex(w)?.cohomology())
    }

    /// Derived fiber at the origin of a one-variable module: `[V --T--> V]` in degrees −1, 0.
    pub fn restrict_to_origin(&self) -> Result<Complex<F>> {
        if self.vars() != 1 {
            return Err(Error::InvalidArgument("restriction to the origin of a line needs one variable".into()));
        }
        Complex::from_parts(Grading::Z, &[(-1, self.dim), (0, self.dim)], vec![(-1, self.ops[0].clone())])
    }

    /// The map on restrictions induced by a cocycle of [`TorsionModule::ext_complex`] in degree `deg`.
    pub fn restrict_class(&self, w: &Self, deg: i64, v: &[F]) -> Result<ChainMap<F>> {
        let (src, tgt) = (self.restrict_to_origin()?, w.restrict_to_origin()?);
        let f = unvectorize(v, w.dim, self.dim);
        let comps = match deg {
            0 => BTreeMap::from([(-1, f.clone()), (0, f)]),
            1 => BTreeMap::from([(-1, f)]),
            _ => return Err(Error::InvalidArgument(format!("no classes in degree {deg}"))),
        };
        ChainMap::new(src, tgt, deg, comps)
    }
}

/// A representation `x, y: V_0 → V_1` of the Kronecker quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerRep<F: Field> {
    pub v0: usize,
    pub v1: usize,
    pub x: ExactMatrix<F>,
    pub y: ExactMatrix<F>,
}

/// Which end of the cylinder a hyperbolic restriction looks at: the fiber of `y` or of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pole {
    Plus,
    Minus,
}

impl<F: Field> KroneckerRep<F> {
    pub fn new(x: ExactMatrix<F>, y: ExactMatrix<F>) -> Result<Self> {
        if x.rows() != y.rows() || x.cols() != y.cols() {
            return Err(Error::ShapeMismatch("x and y differ in shape".into()));
        }
        Ok(KroneckerRep { v0: x.cols(), v1: x.rows(), x, y })
    }

    /// `(k, 0)`: the model of `i_! k_0`.
    pub fn simple_source() -> Self {
        KroneckerRep { v0: 1, v1: 0, x: ExactMatrix::zeros(0, 1), y: ExactMatrix::zeros(0, 1) }
    }

    /// `(k², k)` with `x = (1, 0)`, `y = (0, 1)`.
    pub fn injective_sink() -> Self {
        KroneckerRep { v0: 2, v1: 1, x: ExactMatrix::from_ints(1, 2, &[1, 0]), y: ExactMatrix::from_ints(1, 2, &[0, 1]) }
    }

    /// `Hom` in degree 0 and `Ext^1` in degree 1: `(φ_0, φ_1) ↦ (x φ_0 − φ_1 x, y φ_0 − φ_1 y)`.
    pub fn hom_complex(&self, w: &Self) -> Result<Complex<F>> {
        let (h0, h1) = (w.v0 * self.v0, w.v1 * self.v1);
        let e = w.v1 * self.v0;
        let mut m = ExactMatrix::zeros(2 * e, h0 + h1);
        for (i, (wm, vm)) in [(&w.x, &self.x), (&w.y, &self.y)].into_iter().enumerate() {
            // φ_0 ↦ wm φ_0
            for (r, k, s) in wm.entries() {
                for c in 0..self.v0 {
                    m.add_at(i * e + r * self.v0 + c, k * self.v0 + c, s);
                }
            }
            // φ_1 ↦ −φ_1 vm
            for (k, c, s) in vm.entries() {
                for r in 0..w.v1 {
                    m.add_at(i * e + r * self.v0 + c, h0 + r * self.v1 + k, &s.neg());
                }
            }
        }
        Complex::from_parts(Grading::Z, &[(0, h0 + h1), (1, 2 * e)], vec![(0, m)])
    }

    pub fn hom(&self, w: &Self) -> Result<GradedSpace> {
        Ok(self.hom_complex(w)?.cohomology())
    }

    /// `⟨V, W⟩ = v_0 w_0 + v_1 w_1 − 2 v_0 w_1`.
    pub fn euler_form(&self, w: &Self) -> i64 {
        (self.v0 * w.v0 + self.v1 * w.v1) as i64 - 2 * (self.v0 * w.v1) as i64
    }

    fn arrow(&self, pole: Pole) -> &ExactMatrix<F> {
        match pole {
            Pole::Plus => &self.y,
            Pole::Minus => &self.x,
        }
    }

    /// `η_+ = fib(y)`, `η_− = fib(x)`: `[V_0 → V_1]` in degrees 0, 1.
    pub fn eta(&self, pole: Pole) -> Result<Complex<F>> {
        Complex::from_parts(Grading::Z, &[(0, self.v0), (1, self.v1)], vec![(0, self.arrow(pole).clone())])
    }

    /// The map on `η` induced by a cocycle of [`KroneckerRep::hom_complex`] in degree `deg`.
    pub fn eta_class(&self, w: &Self, pole: Pole, deg: i64, v: &[F]) -> Result<ChainMap<F>> {
        let (src, tgt) = (self.eta(pole)?, w.eta(pole)?);
        let comps = match deg {
            0 => {
                let h0 = w.v0 * self.v0;
                BTreeMap::from([(0, unvectorize(&v[..h0], w.v0, self.v0)), (1, unvectorize(&v[h0..], w.v1, self.v1))])
            }
            1 => {
                let e = w.v1 * self.v0;
                let part = if pole == Pole::Minus { &v[..e] } else { &v[e..] };
                BTreeMap::from([(0, unvectorize(part, w.v1, self.v0))])
            }
            _ => return Err(Error::InvalidArgument(format!("no classes in degree {deg}"))),
        };
        ChainMap::new(src, tgt, deg, comps)
    }
}

/// Complexes on the corners of a cube of directions, with commuting `x` and `y` maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerModel<F: Field> {
    /// Direction labels, in order.
    dirs: Vec<usize>,
    /// Weight of each direction (the degree of `t_a`).
    dir_weights: Vec<Vec<i64>>,
    /// Per corner mask: the complex and the weight of every basis vector, per degree.
    corners: Vec<Complex<F>>,
    weights: Vec<BTreeMap<i64, Vec<Vec<i64>>>>,
    /// Keyed by (corner mask without the direction, direction position).
    x: BTreeMap<(u32, usize), ChainMap<F>>,
    y: BTreeMap<(u32, usize), ChainMap<F>>,
}

impl<F: Field> KroneckerModel<F> {
    /// Validates shapes, chain maps, weights and the commuting squares.
    pub fn new(
        dirs: Vec<usize>,
        dir_weights: Vec<Vec<i64>>,
        corners: Vec<Complex<F>>,
        weights: Vec<BTreeMap<i64, Vec<Vec<i64>>>>,
        x: BTreeMap<(u32, usize), ChainMap<F>>,
        y: BTreeMap<(u32, usize), ChainMap<F>>,
    ) -> Result<Self> {
        let r = dirs.len();
        if dir_weights.len() != r || corners.len() != 1 << r || weights.len() != 1 << r {
            return Err(Error::ShapeMismatch("corner data".into()));
        }
        let model = KroneckerModel { dirs, dir_weights, corners, weights, x, y };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let r = self.dirs.len();
        for (s, c) in self.corners.iter().enumerate() {
            for k in c.degrees() {
                if self.weights[s].get(&k).map(|v| v.len()).unwrap_or(0) != c.dim(k) {
                    return Err(Error::ShapeMismatch(format!("weights of corner {s} in degree {k}")));
                }
            }
        }
        for s in 0u32..(1 << r) {
            for a in (0..r).filter(|a| s & (1 << a) == 0) {
                for (name, maps, raise) in [("x", &self.x, false), ("y", &self.y, true)] {
                    let f = maps.get(&(s, a)).ok_or_else(|| Error::ShapeMismatch(format!("missing {name} at corner {s}")))?;
                    if f.degree != 0 || f.source != self.corners[s as usize] || f.target != self.corners[(s | (1 << a)) as usize] {
                        return Err(Error::ShapeMismatch(format!("{name}_{a} at corner {s}")));
                    }
                    for (k, m) in f.components() {
                        for (row, col, _) in m.entries() {
                            let w0 = &self.weights[s as usize][k][col];
                            let w1 = &self.weights[(s | (1 << a)) as usize][k][row];
                            let want = if raise { vadd(w0, &self.dir_weights[a]) } else { w0.clone() };
                            if *w1 != want {
                                return Err(Error::NotHomogeneous(format!("{name}_{a} at corner {s}")));
                            }
                        }
                    }
                }
                for b in (0..r).filter(|b| *b != a && s & (1 << b) == 0) {
                    for (p, q) in [(&self.x, &self.x), (&self.x, &self.y), (&self.y, &self.x), (&self.y, &self.y)] {
                        let one = p[&(s, a)].then(&q[&(s | (1 << a), b)])?;
                        let two = q[&(s, b)].then(&p[&(s | (1 << b), a)])?;
                        if !one.add(&two.scale(&F::one().neg()))?.is_zero() {
                            return Err(Error::InvalidArgument(format!("square at corner {s}, directions {a}, {b} does not commute")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The constant model `V` on every corner with `x = id`, `y_a = T_a`, from a graded module complex.
    pub fn from_operators(
        dirs: Vec<usize>,
        dir_weights: Vec<Vec<i64>>,
        v: Complex<F>,
        weights: BTreeMap<i64, Vec<Vec<i64>>>,
        ops: Vec<ChainMap<F>>,
    ) -> Result<Self> {
        let r = dirs.len();
        if ops.len() != r {
            return Err(Error::ShapeMismatch("one operator per direction".into()));
        }
        let mut x = BTreeMap::new();
        let mut y = BTreeMap::new();
        for s in 0u32..(1 << r) {
            for a in (0..r).filter(|a| s & (1 << a) == 0) {
                x.insert((s, a), ChainMap::identity(&v));
                y.insert((s, a), ops[a].clone());
            }
        }
        KroneckerModel::new(dirs, dir_weights, vec![v; 1 << r], vec![weights; 1 << r], x, y)
    }

    /// A module in degree 0 with the given basis weights and operator matrices.
    pub fn from_module(
        dirs: Vec<usize>,
        dir_weights: Vec<Vec<i64>>,
        basis_weights: Vec<Vec<i64>>,
        ops: Vec<ExactMatrix<F>>,
    ) -> Result<Self> {
        let v = Complex::stalk(Grading::Z, 0, basis_weights.len());
        let maps = ops.into_iter().map(|m| ChainMap::new(v.clone(), v.clone(), 0, BTreeMap::from([(0, m)]))).collect::<Result<Vec<_>>>()?;
        Self::from_operators(dirs, dir_weights, v, BTreeMap::from([(0, basis_weights)]), maps)
    }

    pub fn dirs(&self) -> &[usize] {
        &self.dirs
    }

    pub fn dir_weights(&self) -> &[Vec<i64>] {
        &self.dir_weights
    }

    pub fn corner(&self, mask: u32) -> &Complex<F> {
        &self.corners[mask as usize]
    }

    pub fn corner_weights(&self, mask: u32) -> &BTreeMap<i64, Vec<Vec<i64>>> {
        &self.weights[mask as usize]
    }

    pub fn x_map(&self, mask: u32, a: usize) -> &ChainMap<F> {
        &self.x[&(mask, a)]
    }

    pub fn y_map(&self, mask: u32, a: usize) -> &ChainMap<F> {
        &self.y[&(mask, a)]
    }

    /// Checks that every `x` component is invertible in every degree.
    pub fn check_x_invertible(&self) -> Result<()> {
        for f in self.x.values() {
            for k in f.source.degrees().into_iter().chain(f.target.degrees()) {
                if !f.component(k).is_invertible() {
                    return Err(Error::NotXInvertible(k));
                }
            }
        }
        Ok(())
    }

    /// `η` along the direction at position `a`: the fiber of `y_a` (`Pole::Plus`) or `x_a`
    /// (`Pole::Minus`), as a model over the remaining directions. The source corner of a `y`
    /// fiber is reweighted by the direction weight so that the map preserves weights.
    pub fn eta(&self, a: usize, pole: Pole) -> Result<Self> {
        let r = self.dirs.len();
        if a >= r {
            return Err(Error::IndexOutOfRange { index: a + 1, max: r });
        }
        let rest: Vec<usize> = (0..r).filter(|b| *b != a).collect();
        let lift = |s: u32| -> u32 {
            let mut m = 0;
            for (i, b) in rest.iter().enumerate() {
                if s & (1 << i) != 0 {
                    m |= 1 << b;
                }
            }
            m
        };
        let arrow = |s: u32| -> &ChainMap<F> {
            match pole {
                Pole::Plus => &self.y[&(s, a)],
                Pole::Minus => &self.x[&(s, a)],
            }
        };
        let twist = match pole {
            Pole::Plus => self.dir_weights[a].clone(),
            Pole::Minus => vec![0; self.dir_weights[a].len()],
        };
        let r2 = rest.len();
        let mut corners = Vec::new();
        let mut weights = Vec::new();
        for s in 0u32..(1 << r2) {
            let big = lift(s);
            let f = arrow(big);
            corners.push(cone(f)?.shift(-1));
            // fiber degree i holds source degree i, then target degree i − 1
            let (ws, wt) = (&self.weights[big as usize], &self.weights[(big | (1 << a)) as usize]);
            let mut w: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
            let degs: alloc::collections::BTreeSet<i64> = ws.keys().copied().chain(wt.keys().map(|k| k + 1)).collect();
            for k in degs {
                let mut v: Vec<Vec<i64>> = ws.get(&k).map(|v| v.iter().map(|x| vadd(x, &twist)).collect()).unwrap_or_default();
                v.extend(wt.get(&(k - 1)).cloned().unwrap_or_default());
                if !v.is_empty() {
                    w.insert(k, v);
                }
            }
            weights.push(w);
        }
        let mut x = BTreeMap::new();
        let mut y = BTreeMap::new();
        for s in 0u32..(1 << r2) {
            for (j, &b) in rest.iter().enumerate() {
                if s & (1 << j) != 0 {
                    continue;
                }
                let (big, big2) = (lift(s), lift(s | (1 << j)));
                for (maps, out) in [(&self.x, &mut x), (&self.y, &mut y)] {
                    let g_src = &maps[&(big, b)];
                    let g_tgt = &maps[&(big | (1 << a), b)];
                    let (src, tgt) = (&corners[s as usize], &corners[(s | (1 << j)) as usize]);
                    let mut comps = BTreeMap::new();
                    for k in src.degrees() {
                        let (a0, a1) = (self.corners[big as usize].dim(k), self.corners[(big | (1 << a)) as usize].dim(k - 1));
                        let (b0, b1) = (self.corners[big2 as usize].dim(k), self.corners[(big2 | (1 << a)) as usize].dim(k - 1));
                        let mut m = ExactMatrix::zeros(b0 + b1, a0 + a1);
                        m.add_block(0, 0, &g_src.component(k));
                        m.add_block(b0, a0, &g_tgt.component(k - 1));
                        comps.insert(k, m);
                    }
                    out.insert((s, j), ChainMap::new(src.clone(), tgt.clone(), 0, comps)?);
                }
            }
        }
        KroneckerModel::new(
            rest.iter().map(|&b| self.dirs[b]).collect(),
            rest.iter().map(|&b| self.dir_weights[b].clone()).collect(),
            corners,
            weights,
            x,
            y,
        )
    }

    /// The transported operators `T_a = x_a^{-1} y_a` on the corner `∅`.
    pub fn transported(&self) -> Result<Vec<ChainMap<F>>> {
        self.check_x_invertible()?;
        let v = &self.corners[0];
        let mut out = Vec::new();
        for a in 0..self.dirs.len() {
            let (x, y) = (&self.x[&(0, a)], &self.y[&(0, a)]);
            let mut comps = BTreeMap::new();
            for k in v.degrees() {
                let inv = x.component(k).inverse().ok_or(Error::NotXInvertible(k))?;
                comps.insert(k, inv.mul(&y.component(k))?);
            }
            out.push(ChainMap::new(v.clone(), v.clone(), 0, comps)?);
        }
        Ok(out)
    }

    /// The corner-`∅` module with transported operators, when it sits in degree 0.
    pub fn torsion_module(&self) -> Result<TorsionModule<F>> {
        let v = &self.corners[0];
        if v.degrees().iter().any(|k| *k != 0) {
            return Err(Error::InvalidArgument("the model is not a module in degree 0".into()));
        }
        let ops = self.transported()?.iter().map(|t| t.component(0)).collect();
        TorsionModule::new(v.dim(0), ops)
    }

    /// The polynomial ring `k[t_a : a ∈ D]` with `deg t_a` the direction weights.
    pub fn ring(&self) -> Result<Ring> {
        let rank = self.dir_weights.first().map(|w| w.len()).unwrap_or_else(|| self.weight_rank());
        Ring::graded(rank, self.dir_weights.clone(), vec![false; self.dirs.len()], MonomialIdeal::zero(self.dirs.len()))
    }

    fn weight_rank(&self) -> usize {
        self.weights.iter().flat_map(|w| w.values()).flat_map(|v| v.iter()).map(|x| x.len()).next().unwrap_or(0)
    }
}

/// The dictionary: the corner-`∅` complex with `T_a = x_a^{-1} y_a`, resolved over `k[t]` as
/// `K(t − T) ⊗ V`.
pub fn kronecker_dictionary<F: Field>(m: &KroneckerModel<F>) -> Result<FreeComplex<F>> {
    let ops = m.transported()?;
    let ring = m.ring()?;
    let r = m.dirs.len();
    let nv = r;
    let v = &m.corners[0];
    let vw = &m.weights[0];
    let rank = ring.rank();
    // generators (degree p of V, basis index, mask U) in degree p − |U|
    let mut shifts: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut index: BTreeMap<(i64, usize, u32), (i64, usize)> = BTreeMap::new();
    for p in v.degrees() {
        for (i, w) in vw.get(&p).cloned().unwrap_or_default().iter().enumerate() {
            for u in 0u32..(1 << r) {
                let mut s = if w.len() == rank { w.clone() } else { vec![0; rank] };
                for b in (0..r).filter(|b| u & (1 << b) != 0) {
                    s = vadd(&s, &m.dir_weights[b]);
                }
                let deg = p - u.count_ones() as i64;
                let e = shifts.entry(deg).or_default();
                index.insert((p, i, u), (deg, e.len()));
                e.push(s);
            }
        }
    }
    let mut d: BTreeMap<i64, PolyMatrix<F>> = BTreeMap::new();
    for (&(p, i, u), &(deg, col)) in &index {
        let rows = shifts.get(&(deg + 1)).map(|v| v.len()).unwrap_or(0);
        let cols = shifts[&deg].len();
        let mat = d.entry(deg).or_insert_with(|| PolyMatrix::zeros(rows, cols));
        let mut pos = 0;
        for b in 0..r {
            if u & (1 << b) == 0 {
                continue;
            }
            let s = sign::<F>(pos);
            pos += 1;
            let u2 = u & !(1 << b);
            let (_, row) = index[&(p, i, u2)];
            mat.add_at(row, col, &Poly::monomial(s.clone(), MultiMonomial::var(nv, b)));
            let t = ops[b].component(p);
            for (rr, cc, a) in t.entries() {
                if cc == i {
                    let (_, row) = index[&(p, rr, u2)];
                    mat.add_at(row, col, &Poly::constant(nv, s.mul(a).neg()));
                }
            }
        }
        let dv = v.diff(p);
        let s = sign::<F>(u.count_ones() as i64);
        for (rr, cc, a) in dv.entries() {
            if cc == i {
                let (_, row) = index[&(p + 1, rr, u)];
                mat.add_at(row, col, &Poly::constant(nv, s.mul(a)));
            }
        }
    }
    FreeComplex::new(ring, Grading::Z, Vec::new(), shifts, d)
}
