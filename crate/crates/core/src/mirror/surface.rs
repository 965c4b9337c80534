//! The punctured sphere: cover pieces against models on the components of the nodal chain.
//!
//! End pieces are matched with torsion modules on `𝔸¹` (the node at the origin), middle pieces
//! with Kronecker representations (`ℙ¹`), the two-punctured sphere with torsion modules on
//! `𝔾_m`, and the arcs between pieces with points. Edges restrict to the arc on the A-side and
//! to the node on the B-side: the derived fiber at the origin for `𝔸¹`, `η_±` for `ℙ¹`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bmodels::{KroneckerRep, Pole, TorsionModule};
use crate::complexes::{induced_on_cohomology, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::ExactMatrix;
use crate::field::Field;
use crate::quivers::{PerfComplex, PerfHom};
use crate::skeleton::{cover_diagram, limit_hom, limit_hom_complex, CoverPiece, Element, End, LimitObject};

use super::{CheckResult, EdgeResult, MirrorOptions, MirrorReport, NodeResult, PairTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PieceKind {
    Circle,
    Bottom,
    Middle,
    Top,
}

#[derive(Clone, Debug)]
enum BObject<F: Field> {
    Torsion(TorsionModule<F>),
    Kronecker(KroneckerRep<F>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Site {
    Origin,
    Pole(Pole),
}

fn mismatch() -> Error {
    Error::AlgebraMismatch("objects of different models".into())
}

impl<F: Field> BObject<F> {
    fn ext_complex(&self, w: &Self) -> Result<Complex<F>> {
        match (self, w) {
            (BObject::Torsion(a), BObject::Torsion(b)) => a.ext_complex(b),
            (BObject::Kronecker(a), BObject::Kronecker(b)) => a.hom_complex(b),
            _ => Err(mismatch()),
        }
    }

    fn restrict(&self, site: Site) -> Result<Complex<F>> {
        match (self, site) {
            (BObject::Torsion(a), Site::Origin) => a.restrict_to_origin(),
            (BObject::Kronecker(a), Site::Pole(p)) => a.eta(p),
            _ => Err(mismatch()),
        }
    }

    fn restrict_class(&self, w: &Self, site: Site, deg: i64, v: &[F]) -> Result<ChainMap<F>> {
        match (self, w, site) {
            (BObject::Torsion(a), BObject::Torsion(b), Site::Origin) => a.restrict_class(b, deg, v),
            (BObject::Kronecker(a), BObject::Kronecker(b), Site::Pole(p)) => a.eta_class(b, p, deg, v),
            _ => Err(mismatch()),
        }
    }
}

struct Generator<F: Field> {
    a_name: String,
    b_name: String,
    a: LimitObject<F>,
    b: BObject<F>,
}

fn parity(k: i64) -> usize {
    k.rem_euclid(2) as usize
}

/// Two distinct nonzero scalars for monodromies and points.
fn twist_values<F: Field>() -> Result<(i64, i64)> {
    let cands = [2i64, 3, 5, 7, 11, -1];
    let mut picked: Vec<i64> = Vec::new();
    for c in cands {
        let v = F::from_i64(c);
        if !v.is_zero() && picked.iter().all(|p| F::from_i64(*p) != v) {
            picked.push(c);
        }
        if picked.len() == 2 {
            return Ok((picked[0], picked[1]));
        }
    }
    Err(Error::InvalidArgument("field too small for two distinct monodromies".into()))
}

fn circle_edge(piece: &CoverPiece<impl Field>) -> Result<String> {
    let v = &piece.skeleton.vertices()[0].0;
    piece
        .skeleton
        .edges()
        .iter()
        .find(|e| e.start.as_ref() == Some(v) && e.end.as_ref() == Some(v))
        .map(|e| e.id.clone())
        .ok_or_else(|| Error::LabelNotFound(format!("loop at {v}")))
}

fn a_object<F: Field>(piece: &CoverPiece<F>, x: PerfComplex<F>, twist: Option<i64>) -> Result<LimitObject<F>> {
    let v = piece.skeleton.vertices()[0].0.clone();
    let vo = BTreeMap::from([(v.clone(), x)]);
    let mut o = LimitObject::from_vertex_objects(&piece.diagram, &vo, &BTreeMap::new())?;
    if let Some(l) = twist {
        let c = circle_edge(piece)?;
        o.twist(&Element::Incidence { vertex: v, edge: c.clone(), end: End::Start }, &Element::Edge(c), &F::from_i64(l))?;
    }
    Ok(o)
}

fn dictionary<F: Field>(kind: PieceKind, piece: &CoverPiece<F>) -> Result<Vec<Generator<F>>> {
    let (l1, l2) = twist_values::<F>()?;
    let m = piece.skeleton.vertices()[0].1.len() - 1;
    let p = |a| PerfComplex::<F>::projective(m, a);
    let k = |a| PerfComplex::<F>::skyscraper(m, a);
    let point = |l: i64| BObject::Torsion(TorsionModule::point(F::from_i64(l)));
    let mut out = Vec::new();
    let mut push = |a_name: String, x: PerfComplex<F>, twist: Option<i64>, b_name: String, b: BObject<F>| -> Result<()> {
        out.push(Generator { a_name, b_name, a: a_object(piece, x, twist)?, b });
        Ok(())
    };
    match kind {
        PieceKind::Circle => {
            for l in [l1, l2] {
                push(format!("P1@{l}"), p(1)?, Some(l), format!("k({l})"), point(l))?;
            }
        }
        PieceKind::Bottom | PieceKind::Top => {
            let (node, name, loose) = if kind == PieceKind::Bottom {
                (p(1)?.shift(1).direct_sum(&k(1)?)?, "P1[1]+k1", 2)
            } else {
                (p(2)?.direct_sum(&k(1)?)?.shift(1), "P2[1]+k1[1]", 1)
            };
            push(name.into(), node, None, "k(0)".into(), point(0))?;
            for l in [l1, l2] {
                push(format!("P{loose}@{l}"), p(loose)?, Some(l), format!("k({l})"), point(l))?;
            }
        }
        PieceKind::Middle => {
            let f1 = k(1)?.direct_sum(&k(3)?.shift(1))?;
            push("k1+k3[1]".into(), f1, None, "O".into(), BObject::Kronecker(KroneckerRep::simple_source()))?;
            push("I2".into(), PerfComplex::injective(m, 2)?, None, "O(-1)".into(), BObject::Kronecker(KroneckerRep::injective_sink()))?;
            let pt = KroneckerRep::new(ExactMatrix::identity(1), ExactMatrix::scalar(1, &F::from_i64(l1)))?;
            push(format!("P2@{l1}"), p(2)?, Some(l1), format!("O_[1:{l1}]"), BObject::Kronecker(pt))?;
        }
    }
    Ok(out)
}

fn piece_kind(name: &str) -> Result<PieceKind> {
    let head = name.split(':').next().unwrap_or("");
    match head {
        "circle" => Ok(PieceKind::Circle),
        "bottom" => Ok(PieceKind::Bottom),
        "middle" => Ok(PieceKind::Middle),
        "top" => Ok(PieceKind::Top),
        _ => Err(Error::LabelNotFound(name.to_string())),
    }
}

fn model_name(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::Circle => "torsion modules on G_m",
        PieceKind::Bottom | PieceKind::Top => "torsion modules on A^1",
        PieceKind::Middle => "Kronecker representations (P^1)",
    }
}

fn node_result<F: Field>(piece: &CoverPiece<F>, kind: PieceKind, gens: &[Generator<F>]) -> Result<NodeResult> {
    let mut tables = Vec::new();
    let mut bad = Vec::new();
    for g in gens {
        for h in gens {
            let a = limit_hom(&piece.diagram, &g.a, &h.a)?.parity_dims();
            let b = g.b.ext_complex(&h.b)?.cohomology().parity_dims();
            if a != b {
                bad.push(format!("({}, {})", g.a_name, h.a_name));
            }
            tables.push(PairTable { source: g.a_name.clone(), target: h.a_name.clone(), a_side: vec![a.0, a.1], b_side: vec![b.0, b.1] });
        }
    }
    let verdict = bad.is_empty();
    let detail =
        if verdict { format!("{} pairs, even/odd dimensions agree", tables.len()) } else { format!("tables differ at {}", bad.join(", ")) };
    Ok(NodeResult {
        name: piece.name.clone(),
        model: model_name(kind).into(),
        dictionary: gens.iter().map(|g| (g.a_name.clone(), g.b_name.clone())).collect(),
        tables,
        verdict,
        detail,
    })
}

/// Restrictions of the generators along one edge: even/odd dimensions of each image and the
/// ranks of the restriction on Homs, by Hom parity and source/target parity blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeImages {
    dims: Vec<(usize, usize)>,
    ranks: BTreeMap<RankKey, usize>,
}

/// `(source generator, target generator, Hom parity, source parity, target parity)`.
type RankKey = (usize, usize, usize, usize, usize);

impl EdgeImages {
    /// The effect of replacing the image of generator `g` by its shift `[1]`.
    fn shifted(&self, g: usize) -> Self {
        let mut dims = self.dims.clone();
        dims[g] = (dims[g].1, dims[g].0);
        let ranks = self
            .ranks
            .iter()
            .map(|(&(a, b, p, s, t), &r)| ((a, b, p, if a == g { 1 - s } else { s }, if b == g { 1 - t } else { t }), r))
            .collect();
        EdgeImages { dims, ranks }
    }

    fn agrees_on(&self, other: &Self, g: usize) -> bool {
        let pick =
            |e: &Self| -> Vec<(RankKey, usize)> { e.ranks.iter().filter(|(k, _)| k.0 == g || k.1 == g).map(|(k, v)| (*k, *v)).collect() };
        self.dims[g] == other.dims[g] && pick(self) == pick(other)
    }
}

/// Flattened folded blocks `H^s(X) → H^{s+deg}(Y)` of a map, per source parity.
fn blocks<F: Field>(f: &ChainMap<F>) -> [Vec<F>; 2] {
    let mats = induced_on_cohomology(f);
    let hx = f.source.cohomology();
    let hy = f.target.cohomology();
    let mut out: [Vec<F>; 2] = [Vec::new(), Vec::new()];
    for (&k, &dx) in hx.dims() {
        for (&kk, &dy) in hy.dims() {
            if parity(kk) != parity(k + f.degree) || dx == 0 || dy == 0 {
                continue;
            }
            let hit = f.source.grading().norm(k + f.degree) == f.target.grading().norm(kk);
            for r in 0..dy {
                for c in 0..dx {
                    let v = match (hit, mats.get(&k)) {
                        (true, Some(m)) => m.get(r, c),
                        _ => F::zero(),
                    };
                    out[parity(k)].push(v);
                }
            }
        }
    }
    out
}

fn rank_of<F: Field>(vs: &[Vec<F>]) -> usize {
    match vs.first() {
        Some(v) if !v.is_empty() => ExactMatrix::from_columns(v.len(), vs).rank(),
        _ => 0,
    }
}

fn record<F: Field>(ranks: &mut BTreeMap<RankKey, usize>, g: usize, h: usize, p: usize, per_s: &[Vec<Vec<F>>; 2]) {
    for s in 0..2 {
        let r = rank_of(&per_s[s]);
        if r > 0 {
            ranks.insert((g, h, p, s, (s + p) % 2), r);
        }
    }
}

fn a_images<F: Field>(piece: &CoverPiece<F>, gens: &[Generator<F>], arc: &str) -> Result<EdgeImages> {
    let e = Element::Edge(arc.into());
    let part = |g: &Generator<F>| -> Result<PerfComplex<F>> { g.a.parts.get(&e).cloned().ok_or_else(|| Error::LabelNotFound(arc.into())) };
    let mut dims = Vec::new();
    for g in gens {
        dims.push(part(g)?.to_field().cohomology().parity_dims());
    }
    let mut ranks = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        for (hi, h) in gens.iter().enumerate() {
            let tot = limit_hom_complex(&piece.diagram, &g.a, &h.a)?;
            let he = PerfHom::new(&part(g)?, &part(h)?)?;
            let off = tot.offsets[&e];
            for p in 0..2usize {
                let mut per_s: [Vec<Vec<F>>; 2] = [Vec::new(), Vec::new()];
                for rep in tot.complex.cohomology_basis(p as i64).reps {
                    let z = &rep[off[p]..off[p] + he.dim(p as i64)];
                    let f = he.to_map(p as i64, z).map;
                    let b = blocks(&f);
                    for s in 0..2 {
                        per_s[s].push(b[s].clone());
                    }
                }
                record(&mut ranks, gi, hi, p, &per_s);
            }
        }
    }
    Ok(EdgeImages { dims, ranks })
}

fn b_images<F: Field>(gens: &[Generator<F>], site: Site) -> Result<EdgeImages> {
    let mut dims = Vec::new();
    for g in gens {
        dims.push(g.b.restrict(site)?.cohomology().parity_dims());
    }
    let mut ranks = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        for (hi, h) in gens.iter().enumerate() {
            let ext = g.b.ext_complex(&h.b)?;
            let mut per_ps: BTreeMap<usize, [Vec<Vec<F>>; 2]> = BTreeMap::new();
            for deg in ext.degrees() {
                for rep in ext.cohomology_basis(deg).reps {
                    let f = g.b.restrict_class(&h.b, site, deg, &rep)?;
                    let b = blocks(&f);
                    let slot = per_ps.entry(parity(deg)).or_insert_with(|| [Vec::new(), Vec::new()]);
                    for s in 0..2 {
                        slot[s].push(b[s].clone());
                    }
                }
            }
            for (p, per_s) in per_ps {
                record(&mut ranks, gi, hi, p, &per_s);
            }
        }
    }
    Ok(EdgeImages { dims, ranks })
}

/// Which end of `ℙ¹` an arc of a middle piece restricts to.
fn arc_pole(piece_vertex: usize, arc_index: usize) -> Pole {
    if arc_index == piece_vertex {
        Pole::Plus
    } else {
        Pole::Minus
    }
}

/// Verifies the cover diagram of the `n`-punctured sphere against the nodal chain, `2 <= n <= 5`.
pub fn verify_surface_mirror<F: Field>(n: usize, opts: &MirrorOptions) -> Result<MirrorReport> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidArgument(format!("punctures {n} outside 2..=5")));
    }
    let cover = cover_diagram::<F>(n)?;
    let mut report = MirrorReport::new(format!("surface n={n}"), opts.truncation);
    let mut dicts = Vec::new();
    for piece in &cover.pieces {
        let kind = piece_kind(&piece.name)?;
        let gens = dictionary(kind, piece)?;
        report.nodes.push(node_result(piece, kind, &gens)?);
        dicts.push((kind, gens));
    }
    for ov in &cover.overlaps {
        let (a, b) = (PerfComplex::<F>::projective(1, 1)?.fold(), PerfComplex::<F>::projective(1, 1)?.fold().shift(1));
        let objs = [("P1", &a, 0usize), ("P1[1]", &b, 1usize)];
        let mut tables = Vec::new();
        let mut ok = true;
        for (na, x, px) in objs {
            for (nb, y, py) in objs {
                let h = PerfHom::new(x, y)?.cohomology().parity_dims();
                let expect = if px == py { (1, 0) } else { (0, 1) };
                ok &= h == expect;
                tables.push(PairTable { source: na.into(), target: nb.into(), a_side: vec![h.0, h.1], b_side: vec![expect.0, expect.1] });
            }
        }
        report.nodes.push(NodeResult {
            name: ov.piece.name.clone(),
            model: "point".into(),
            dictionary: vec![("P1".into(), "k".into()), ("P1[1]".into(), "k[1]".into())],
            tables,
            verdict: ok,
            detail: "graded vector spaces".into(),
        });
    }
    for (oi, ov) in cover.overlaps.iter().enumerate() {
        let arc = ov.piece.skeleton.edges()[0].id.clone();
        for pi in [ov.between.0, ov.between.1] {
            let (kind, gens) = &dicts[pi];
            let piece = &cover.pieces[pi];
            let site = match kind {
                PieceKind::Middle => Site::Pole(arc_pole(pi, oi)),
                _ => Site::Origin,
            };
            let edge_index = report.edges.len();
            let mut a = a_images(piece, gens, &arc)?;
            if let Some(pt) = opts.perturb.filter(|p| p.edge == edge_index) {
                if pt.generator >= gens.len() {
                    return Err(Error::InvalidArgument(format!("perturbed generator {} but the node has {}", pt.generator, gens.len())));
                }
                a = a.shifted(pt.generator);
            }
            let b = b_images(gens, site)?;
            let generators: Vec<(String, bool)> = gens.iter().enumerate().map(|(i, g)| (g.a_name.clone(), a.agrees_on(&b, i))).collect();
            let verdict = generators.iter().all(|(_, v)| *v);
            let failing: Vec<&str> = generators.iter().filter(|(_, v)| !v).map(|(n, _)| n.as_str()).collect();
            let detail = if verdict {
                format!("{} generators: images and restriction ranks agree", gens.len())
            } else {
                format!("restriction differs for {}", failing.join(", "))
            };
            let zero_images = gens.iter().zip(&a.dims).filter(|(_, d)| **d == (0, 0)).map(|(g, _)| g.a_name.clone()).collect();
            report.edges.push(EdgeResult {
                name: format!("{} -> {}", piece.name, arc),
                source: piece.name.clone(),
                target: arc.clone(),
                generators,
                zero_images,
                verdict,
                detail,
            });
        }
    }
    // the projective-line dictionary: Hom(O,O) = k, Hom(O,O(-1)) = 0, Hom(O(-1),O) = k²
    for (node, (kind, _)) in report.nodes.iter().zip(&dicts) {
        if *kind != PieceKind::Middle {
            continue;
        }
        let even = |s: &str, t: &str| node.tables.iter().find(|x| x.source == s && x.target == t).map(|x| x.a_side[0]);
        let got = [even("k1+k3[1]", "k1+k3[1]"), even("k1+k3[1]", "I2"), even("I2", "k1+k3[1]")];
        let verdict = got == [Some(1), Some(0), Some(2)];
        report.checks.push(CheckResult {
            name: format!("{} Hom dims", node.name),
            verdict,
            detail: format!("(O,O), (O,O(-1)), (O(-1),O) = {got:?}"),
        });
    }
    if n == 3 {
        let verdict = report.nodes.iter().all(|x| x.verdict) && report.edges.iter().all(|x| x.verdict) && report.edges.len() == 2;
        report.checks.push(CheckResult { name: "pushout square".into(), verdict, detail: "two ends over one node".into() });
    }
    if let Some(p) = opts.perturb.filter(|p| p.edge >= report.edges.len()) {
        return Err(Error::InvalidArgument(format!("perturbed edge {} but the diagram has {}", p.edge, report.edges.len())));
    }
    Ok(report.finish())
}
