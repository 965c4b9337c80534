//! Ribbon skeleta of surfaces and the diagrams of categories they carry.
//!
//! Orientation conventions: an edge runs from its start to its end. Seen from a vertex, the
//! two sectors beside a half-edge form a counterclockwise pair: `(right, left)` where the
//! edge leaves, `(left, right)` where it arrives.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complexes::{cone, ChainMap, Complex};
use crate::cyclic::{cst_edge, cst_node, cwst_edge, CategoryNode, CyclicSet, EdgeDirection, FunctorEdge, SubcycleInclusion};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, GradedSpace, Grading};
use crate::field::Field;
use crate::quivers::{all_named, perf_find_quasi_iso, shift_functor, tau, tau_inverse, GenFunctor, PerfComplex, PerfHom, PerfMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Start,
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub id: String,
    pub start: Option<String>,
    pub end: Option<String>,
}

/// A half-edge at a vertex, with the vertex sectors on the edge's left and right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub vertex: String,
    pub edge: String,
    pub end: End,
    pub left: String,
    pub right: String,
}

impl Incidence {
    pub fn ccw_pair(&self) -> (&str, &str) {
        match self.end {
            End::Start => (&self.right, &self.left),
            End::End => (&self.left, &self.right),
        }
    }

    pub fn element(&self) -> Element {
        Element::Incidence { vertex: self.vertex.clone(), edge: self.edge.clone(), end: self.end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonSkeleton {
    vertices: Vec<(String, CyclicSet)>,
    edges: Vec<SkeletonEdge>,
    incidences: Vec<Incidence>,
}

impl RibbonSkeleton {
    pub fn new(vertices: Vec<(String, CyclicSet)>, edges: Vec<SkeletonEdge>, incidences: Vec<Incidence>) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidIncidence(s));
        for (i, (v, _)) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|(w, _)| w == v) || edges.iter().any(|e| &e.id == v) {
                return bad(format!("duplicate id {v}"));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|f| f.id == e.id) {
                return bad(format!("duplicate edge {}", e.id));
            }
            for v in e.start.iter().chain(e.end.iter()) {
                if !vertices.iter().any(|(w, _)| w == v) {
                    return bad(format!("edge {} ends at unknown vertex {v}", e.id));
                }
            }
        }
        for inc in &incidences {
            let Some(e) = edges.iter().find(|e| e.id == inc.edge) else {
                return bad(format!("unknown edge {}", inc.edge));
            };
            let endpoint = match inc.end {
                End::Start => &e.start,
                End::End => &e.end,
            };
            if endpoint.as_deref() != Some(inc.vertex.as_str()) {
                return bad(format!("edge {} has no {:?} at {}", inc.edge, inc.end, inc.vertex));
            }
            let Some((_, cyc)) = vertices.iter().find(|(w, _)| *w == inc.vertex) else {
                return bad(format!("unknown vertex {}", inc.vertex));
            };
            let (a, b) = inc.ccw_pair();
            if !cyc.contains(a) || !cyc.contains(b) {
                return bad(format!("sector labels {a}, {b} not at vertex {}", inc.vertex));
            }
            if !cyc.are_consecutive(a, b)? {
                return bad(format!("sectors {a}, {b} are not adjacent at vertex {} for edge {}", inc.vertex, inc.edge));
            }
        }
        for e in &edges {
            for (end, ep) in [(End::Start, &e.start), (End::End, &e.end)] {
                let n = incidences.iter().filter(|i| i.edge == e.id && i.end == end).count();
                if n != usize::from(ep.is_some()) {
                    return bad(format!("edge {} needs exactly one incidence at its {:?}", e.id, end));
                }
            }
        }
        for (v, cyc) in &vertices {
            let here: Vec<&Incidence> = incidences.iter().filter(|i| &i.vertex == v).collect();
            if here.is_empty() {
                return bad(format!("vertex {v} has valence 0"));
            }
            if here.len() != cyc.len() {
                return bad(format!("vertex {v} has {} sectors but valence {}", cyc.len(), here.len()));
            }
            let mut firsts: Vec<&str> = here.iter().map(|i| i.ccw_pair().0).collect();
            firsts.sort();
            firsts.dedup();
            if firsts.len() != here.len() {
                return bad(format!("two half-edges share a sector gap at vertex {v}"));
            }
        }
        Ok(RibbonSkeleton { vertices, edges, incidences })
    }

    pub fn vertices(&self) -> &[(String, CyclicSet)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SkeletonEdge] {
        &self.edges
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// The open neighbourhood of the given vertices: their edges (ends elsewhere dropped) and half-edges.
    pub fn star(&self, vertices: &[&str]) -> Result<Self> {
        let keep = |v: &Option<String>| v.as_deref().filter(|v| vertices.contains(v)).map(String::from);
        let vs: Vec<(String, CyclicSet)> = self.vertices.iter().filter(|(v, _)| vertices.contains(&v.as_str())).cloned().collect();
        if vs.len() != vertices.len() {
            return Err(Error::LabelNotFound(vertices.join(",")));
        }
        let incs: Vec<Incidence> = self.incidences.iter().filter(|i| vertices.contains(&i.vertex.as_str())).cloned().collect();
        let es = self
            .edges
            .iter()
            .filter(|e| incs.iter().any(|i| i.edge == e.id))
            .map(|e| SkeletonEdge { id: e.id.clone(), start: keep(&e.start), end: keep(&e.end) })
            .collect();
        RibbonSkeleton::new(vs, es, incs)
    }

    /// A single edge with no endpoints.
    pub fn bare_edge(id: &str) -> Self {
        RibbonSkeleton { vertices: Vec::new(), edges: vec![SkeletonEdge { id: id.into(), start: None, end: None }], incidences: Vec::new() }
    }

    pub fn poset(&self) -> ChainPoset {
        let mut elements: Vec<Element> = self.vertices.iter().map(|(v, _)| Element::Vertex(v.clone())).collect();
        elements.extend(self.edges.iter().map(|e| Element::Edge(e.id.clone())));
        let mut relations = Vec::new();
        for i in &self.incidences {
            let u = i.element();
            elements.push(u.clone());
            relations.push((u.clone(), Element::Vertex(i.vertex.clone())));
            relations.push((u, Element::Edge(i.edge.clone())));
        }
        ChainPoset { elements, relations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(String),
    Edge(String),
    Incidence { vertex: String, edge: String, end: End },
}

impl core::fmt::Display for Element {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "{v}"),
            Element::Edge(e) => write!(f, "{e}"),
            Element::Incidence { vertex, edge, end } => {
                write!(f, "({vertex},{edge},{})", if *end == End::Start { "start" } else { "end" })
            }
        }
    }
}

/// Elements `V ⊔ E ⊔ U` with relations `u < v`, `u < e` for each half-edge `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPoset {
    pub elements: Vec<Element>,
    pub relations: Vec<(Element, Element)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramMode {
    /// Restrictions toward half-edges.
    Sheaf,
    /// Extensions away from half-edges.
    Cosheaf,
}

#[derive(Clone, Debug)]
pub struct CatDiagram<F: Field> {
    pub mode: DiagramMode,
    pub skeleton: RibbonSkeleton,
    pub poset: ChainPoset,
    pub nodes: BTreeMap<Element, CategoryNode>,
    /// Keyed by relation `(u, p)`.
    pub edges: BTreeMap<(Element, Element), FunctorEdge<F>>,
}

const EDGE_SIDES: [&str; 2] = ["L", "R"];

/// The functor between the edge node and a half-edge node: identity where the edge arrives,
/// the `A_1` rotation where it leaves.
fn edge_to_halfedge<F: Field>(mode: DiagramMode, end: End) -> FunctorEdge<F> {
    let rotated = end == End::Start;
    let (direction, functor) = match (mode, rotated) {
        (_, false) => {
            (if mode == DiagramMode::Sheaf { EdgeDirection::Restriction } else { EdgeDirection::Extension }, shift_functor::<F>(1, 0))
        }
        (DiagramMode::Sheaf, true) => (EdgeDirection::Restriction, tau_inverse::<F>(1)),
        (DiagramMode::Cosheaf, true) => (EdgeDirection::Extension, tau::<F>(1)),
    };
    let generator_images = all_named::<F>(1).into_iter().map(|(n, x)| (n, functor.apply(&x).expect("A_1 image"))).collect();
    FunctorEdge { direction, position: 1, rotated, functor, generator_images }
}

pub fn build_diagram<F: Field>(s: &RibbonSkeleton, mode: DiagramMode) -> Result<CatDiagram<F>> {
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (v, cyc) in &s.vertices {
        let base = cyc.elements().last().expect("nonempty").clone();
        nodes.insert(Element::Vertex(v.clone()), cst_node(cyc, &base)?);
    }
    let sides = CyclicSet::new(&EDGE_SIDES)?;
    for e in &s.edges {
        nodes.insert(Element::Edge(e.id.clone()), cst_node(&sides, "R")?);
    }
    for inc in &s.incidences {
        let u = inc.element();
        let vnode = &nodes[&Element::Vertex(inc.vertex.clone())];
        let (a, b) = inc.ccw_pair();
        let i = SubcycleInclusion::pair(&vnode.cycle, a, b).map_err(|_| Error::InvalidIncidence(format!("{u}")))?;
        let unode = cst_node(&i.source, b)?;
        let fv = match mode {
            DiagramMode::Sheaf => cst_edge::<F>(&i, vnode, &unode)?,
            DiagramMode::Cosheaf => cwst_edge::<F>(&i, vnode, &unode)?,
        };
        edges.insert((u.clone(), Element::Vertex(inc.vertex.clone())), fv);
        edges.insert((u.clone(), Element::Edge(inc.edge.clone())), edge_to_halfedge(mode, inc.end));
        nodes.insert(u, unode);
    }
    Ok(CatDiagram { mode, skeleton: s.clone(), poset: s.poset(), nodes, edges })
}

impl<F: Field> CatDiagram<F> {
    /// Replaces the functor on one relation by its composite with `[1]`.
    pub fn perturb(&mut self, u: &Element, p: &Element) -> Result<()> {
        let e = self.edges.get_mut(&(u.clone(), p.clone())).ok_or_else(|| Error::LabelNotFound(format!("{u} < {p}")))?;
        let n = e.functor.target_n;
        e.functor = e.functor.then(&shift_functor::<F>(n, 1))?;
        for (_, img) in e.generator_images.iter_mut() {
            *img = img.shift(1);
        }
        Ok(())
    }

    pub fn functor(&self, u: &Element, p: &Element) -> Result<&GenFunctor<F>> {
        self.edges.get(&(u.clone(), p.clone())).map(|e| &e.functor).ok_or_else(|| Error::LabelNotFound(format!("{u} < {p}")))
    }
}

/// A compatible family: an object at every element and, for every relation `u < p`, a
/// quasi-isomorphism `F_{p→u}(x_p) -> x_u`.
#[derive(Clone, Debug)]
pub struct LimitObject<F: Field> {
    pub parts: BTreeMap<Element, PerfComplex<F>>,
    pub certificates: BTreeMap<(Element, Element), PerfMap<F>>,
}

impl<F: Field> LimitObject<F> {
    /// Builds a family from vertex objects, restricting them to half-edges and searching the
    /// edge certificates. Edges without half-edges need an entry in `edge_objects`; other edges
    /// default to the object their first half-edge forces.
    pub fn from_vertex_objects(
        d: &CatDiagram<F>,
        vertex_objects: &BTreeMap<String, PerfComplex<F>>,
        edge_objects: &BTreeMap<String, PerfComplex<F>>,
    ) -> Result<Self> {
        let mut parts = BTreeMap::new();
        let mut certificates = BTreeMap::new();
        for (v, _) in d.skeleton.vertices() {
            let x = vertex_objects.get(v).ok_or_else(|| Error::LabelNotFound(v.clone()))?.fold();
            parts.insert(Element::Vertex(v.clone()), x);
        }
        for inc in d.skeleton.incidences() {
            let u = inc.element();
            let pv = Element::Vertex(inc.vertex.clone());
            let xu = d.functor(&u, &pv)?.apply(&parts[&pv])?;
            certificates.insert((u.clone(), pv), PerfMap::identity(&xu));
            parts.insert(u, xu);
        }
        for e in d.skeleton.edges() {
            let pe = Element::Edge(e.id.clone());
            let xe = match edge_objects.get(&e.id) {
                Some(x) => x.fold(),
                None => {
                    let inc = d.skeleton.incidences().iter().find(|i| i.edge == e.id).ok_or_else(|| Error::LabelNotFound(e.id.clone()))?;
                    let xu = &parts[&inc.element()];
                    if inc.end == End::Start {
                        xu.shift(-1)
                    } else {
                        xu.clone()
                    }
                }
            };
            for inc in d.skeleton.incidences().iter().filter(|i| i.edge == e.id) {
                let u = inc.element();
                let fx = d.functor(&u, &pe)?.apply(&xe)?;
                let cert = perf_find_quasi_iso(&fx, &parts[&u])
                    .ok_or_else(|| Error::CertificateFailure(format!("no quasi-isomorphism on {u} < {pe}")))?;
                certificates.insert((u, pe.clone()), cert);
            }
            parts.insert(pe, xe);
        }
        Ok(LimitObject { parts, certificates })
    }

    pub fn zero(d: &CatDiagram<F>) -> Self {
        let parts = d.nodes.iter().map(|(p, n)| (p.clone(), PerfComplex::zero(n.quiver.n, Grading::Z2))).collect();
        let certificates = d
            .poset
            .relations
            .iter()
            .map(|(u, p)| {
                let z = PerfComplex::zero(d.nodes[u].quiver.n, Grading::Z2);
                ((u.clone(), p.clone()), PerfMap::identity(&z))
            })
            .collect();
        LimitObject { parts, certificates }
    }

    /// Scales one certificate, changing the gluing (monodromy) of the family.
    pub fn twist(&mut self, u: &Element, p: &Element, lambda: &F) -> Result<()> {
        let c = self.certificates.get_mut(&(u.clone(), p.clone())).ok_or_else(|| Error::LabelNotFound(format!("{u} < {p}")))?;
        *c = c.scale(lambda);
        Ok(())
    }

    /// The family over a sub-diagram (elements and relations present there).
    pub fn restrict(&self, d: &CatDiagram<F>) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for p in d.nodes.keys() {
            parts.insert(p.clone(), self.parts.get(p).ok_or_else(|| Error::LabelNotFound(format!("{p}")))?.clone());
        }
        let mut certificates = BTreeMap::new();
        for r in &d.poset.relations {
            let c = self.certificates.get(r).ok_or_else(|| Error::LabelNotFound(format!("{} < {}", r.0, r.1)))?;
            certificates.insert(r.clone(), c.clone());
        }
        Ok(LimitObject { parts, certificates })
    }

    /// Re-checks every certificate against the diagram.
    pub fn verify(&self, d: &CatDiagram<F>) -> Result<()> {
        for (u, p) in &d.poset.relations {
            let fail = |why: &str| Error::CertificateFailure(format!("{u} < {p}: {why}"));
            let c = self.certificates.get(&(u.clone(), p.clone())).ok_or_else(|| fail("missing"))?;
            let fx = d.functor(u, p)?.apply(self.parts.get(p).ok_or_else(|| fail("missing object"))?)?;
            if c.source != fx || Some(&c.target) != self.parts.get(u) {
                return Err(fail("certificate has the wrong type"));
            }
            if !c.map.commutes() || !c.is_quasi_iso() {
                return Err(fail("not a quasi-isomorphism"));
            }
        }
        Ok(())
    }
}

/// Matrix of a linear map between Hom complexes, column by column in degree `k`.
fn induced<F: Field>(src: &PerfHom<F>, tgt: &PerfHom<F>, k: i64, f: impl Fn(&PerfMap<F>) -> Result<PerfMap<F>>) -> Result<ExactMatrix<F>> {
    let (m, n) = (tgt.dim(k), src.dim(k));
    let mut out = ExactMatrix::zeros(m, n);
    for c in 0..n {
        let mut v = vec![F::zero(); n];
        v[c] = F::one();
        let g = f(&src.to_map(k, &v))?;
        for (r, x) in tgt.to_vector(&g).into_iter().enumerate() {
            if !x.is_zero() {
                out.set(r, c, x);
            }
        }
    }
    Ok(out)
}

/// The two-layer totalization computing Homs between compatible families.
#[derive(Clone, Debug)]
pub struct Totalization<F: Field> {
    pub complex: Complex<F>,
    /// Offsets of each element's block inside `complex`, by degree 0 / 1.
    pub offsets: BTreeMap<Element, [usize; 2]>,
    pub element_homs: BTreeMap<Element, Complex<F>>,
}

fn direct_sum_all<F: Field>(cs: &[Complex<F>]) -> Result<Complex<F>> {
    let mut acc = Complex::zero(Grading::Z2);
    for c in cs {
        acc = acc.direct_sum(c)?;
    }
    Ok(acc)
}

pub fn limit_hom_complex<F: Field>(d: &CatDiagram<F>, x: &LimitObject<F>, y: &LimitObject<F>) -> Result<Totalization<F>> {
    if d.mode != DiagramMode::Sheaf {
        return Err(Error::InvalidArgument("limit Homs are computed over the sheaf diagram".into()));
    }
    x.verify(d)?;
    y.verify(d)?;
    let elems: Vec<Element> = d.nodes.keys().cloned().collect();
    let homs0: Vec<PerfHom<F>> = elems.iter().map(|p| PerfHom::new(&x.parts[p], &y.parts[p])).collect::<Result<_>>()?;
    let rels = &d.poset.relations;
    let mut homs1 = Vec::new();
    for (u, p) in rels {
        let fx = &x.certificates[&(u.clone(), p.clone())].source;
        homs1.push(PerfHom::new(fx, &y.parts[u])?);
    }
    let c0 = direct_sum_all(&homs0.iter().map(|h| h.complex.clone()).collect::<Vec<_>>())?;
    let c1 = direct_sum_all(&homs1.iter().map(|h| h.complex.clone()).collect::<Vec<_>>())?;
    let mut off0: BTreeMap<Element, [usize; 2]> = BTreeMap::new();
    let mut acc = [0usize; 2];
    for (p, h) in elems.iter().zip(&homs0) {
        off0.insert(p.clone(), acc);
        for k in 0..2 {
            acc[k] += h.dim(k as i64);
        }
    }
    let mut comps = BTreeMap::new();
    for k in 0..2i64 {
        let mut m = ExactMatrix::zeros(c1.dim(k), c0.dim(k));
        let mut row = 0;
        for (ri, (u, p)) in rels.iter().enumerate() {
            let h1 = &homs1[ri];
            let f = d.functor(u, p)?;
            let phi_y = &y.certificates[&(u.clone(), p.clone())];
            let phi_x = &x.certificates[&(u.clone(), p.clone())];
            let ip = elems.iter().position(|e| e == p).expect("element");
            let iu = elems.iter().position(|e| e == u).expect("element");
            let a = induced(&homs0[ip], h1, k, |g| f.apply_map(g)?.then(phi_y))?;
            let b = induced(&homs0[iu], h1, k, |g| phi_x.then(g))?;
            m.add_block(row, off0[p][k as usize], &a);
            m.add_block(row, off0[u][k as usize], &b.neg());
            row += h1.dim(k);
        }
        comps.insert(k, m);
    }
    let delta = ChainMap::new(c0, c1, 0, comps)?;
    let complex = cone(&delta)?.shift(-1);
    let element_homs = elems.iter().cloned().zip(homs0.into_iter().map(|h| h.complex)).collect();
    Ok(Totalization { complex, offsets: off0, element_homs })
}

/// Cohomology of `Hom(x, y)` in the limit, folded to even/odd.
pub fn limit_hom<F: Field>(d: &CatDiagram<F>, x: &LimitObject<F>, y: &LimitObject<F>) -> Result<GradedSpace> {
    Ok(limit_hom_complex(d, x, y)?.complex.cohomology())
}

/// Ladder skeleton of the sphere with `n` punctures: circles `c_1..c_{n−1}` running east,
/// joined by arcs `a_i` from `v_i` north to `v_{i+1}`.
pub fn punctured_sphere_skeleton(n: usize) -> Result<RibbonSkeleton> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two punctures".into()));
    }
    let v = |i: usize| format!("v{i}");
    let c = |i: usize| format!("c{i}");
    let a = |i: usize| format!("a{i}");
    let inc = |vx: String, e: String, end: End, l: &str, r: &str| Incidence { vertex: vx, edge: e, end, left: l.into(), right: r.into() };
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut incs = Vec::new();
    for i in 1..n {
        let sectors: &[&str] = if n == 2 {
            &["N", "S"]
        } else if i == 1 {
            &["NE", "NW", "S"]
        } else if i == n - 1 {
            &["N", "SW", "SE"]
        } else {
            &["NE", "NW", "SW", "SE"]
        };
        vertices.push((v(i), CyclicSet::new(sectors)?));
        edges.push(SkeletonEdge { id: c(i), start: Some(v(i)), end: Some(v(i)) });
        let (cs, ce): ((&str, &str), (&str, &str)) = if n == 2 {
            (("N", "S"), ("N", "S"))
        } else if i == 1 {
            (("NE", "S"), ("NW", "S"))
        } else if i == n - 1 {
            (("N", "SE"), ("N", "SW"))
        } else {
            (("NE", "SE"), ("NW", "SW"))
        };
        incs.push(inc(v(i), c(i), End::Start, cs.0, cs.1));
        incs.push(inc(v(i), c(i), End::End, ce.0, ce.1));
        if i + 1 < n {
            edges.push(SkeletonEdge { id: a(i), start: Some(v(i)), end: Some(v(i + 1)) });
            incs.push(inc(v(i), a(i), End::Start, "NW", "NE"));
        }
        if i > 1 {
            incs.push(inc(v(i), a(i - 1), End::End, "SW", "SE"));
        }
    }
    RibbonSkeleton::new(vertices, edges, incs)
}

/// One open piece of the cover, or one overlap between consecutive pieces.
#[derive(Clone, Debug)]
pub struct CoverPiece<F: Field> {
    pub name: String,
    pub skeleton: RibbonSkeleton,
    pub diagram: CatDiagram<F>,
}

#[derive(Clone, Debug)]
pub struct Overlap<F: Field> {
    pub piece: CoverPiece<F>,
    /// Indices of the two pieces containing this overlap (lower, upper).
    pub between: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct SurfaceCover<F: Field> {
    pub full: CatDiagram<F>,
    pub pieces: Vec<CoverPiece<F>>,
    pub overlaps: Vec<Overlap<F>>,
}

/// The cover of `Σ_n` by stars of the vertices, overlapping along the arcs.
pub fn cover_diagram<F: Field>(n: usize) -> Result<SurfaceCover<F>> {
    let s = punctured_sphere_skeleton(n)?;
    let full = build_diagram(&s, DiagramMode::Sheaf)?;
    let mut pieces = Vec::new();
    for i in 1..n {
        let name = format!("v{i}");
        let sk = s.star(&[name.as_str()])?;
        let diagram = build_diagram(&sk, DiagramMode::Sheaf)?;
        let kind = if n == 2 {
            "circle"
        } else if i == 1 {
            "bottom"
        } else if i == n - 1 {
            "top"
        } else {
            "middle"
        };
        pieces.push(CoverPiece { name: format!("{kind}:{name}"), skeleton: sk, diagram });
    }
    let mut overlaps = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let sk = RibbonSkeleton::bare_edge(&format!("a{i}"));
        let diagram = build_diagram(&sk, DiagramMode::Sheaf)?;
        overlaps.push(Overlap { piece: CoverPiece { name: format!("a{i}"), skeleton: sk, diagram }, between: (i - 1, i) });
    }
    Ok(SurfaceCover { full, pieces, overlaps })
}

/// Totalization of the piecewise Homs: `cone(⊕ pieces -> ⊕ overlaps)[−1]`, using the
/// restriction of each piece's totalization onto an overlap's edge block.
pub fn mayer_vietoris_hom<F: Field>(cover: &SurfaceCover<F>, x: &LimitObject<F>, y: &LimitObject<F>) -> Result<GradedSpace> {
    let tots: Vec<Totalization<F>> = cover
        .pieces
        .iter()
        .map(|p| limit_hom_complex(&p.diagram, &x.restrict(&p.diagram)?, &y.restrict(&p.diagram)?))
        .collect::<Result<_>>()?;
    let ovs: Vec<(Element, Complex<F>)> = cover
        .overlaps
        .iter()
        .map(|o| {
            let e = Element::Edge(o.piece.skeleton.edges()[0].id.clone());
            let h = PerfHom::new(&x.parts[&e], &y.parts[&e])?.complex;
            Ok((e, h))
        })
        .collect::<Result<_>>()?;
    let c0 = direct_sum_all(&tots.iter().map(|t| t.complex.clone()).collect::<Vec<_>>())?;
    let c1 = direct_sum_all(&ovs.iter().map(|(_, h)| h.clone()).collect::<Vec<_>>())?;
    let mut comps = BTreeMap::new();
    for k in 0..2i64 {
        let ku = k as usize;
        let mut m = ExactMatrix::zeros(c1.dim(k), c0.dim(k));
        let mut row = 0;
        for (oi, (e, h)) in ovs.iter().enumerate() {
            let (lo, hi) = cover.overlaps[oi].between;
            let mut col0 = 0;
            for (pi, t) in tots.iter().enumerate() {
                if pi == lo || pi == hi {
                    let s: F = if pi == lo { F::one() } else { F::one().neg() };
                    let off = t.offsets[e][ku];
                    for r in 0..h.dim(k) {
                        m.set(row + r, col0 + off + r, s.clone());
                    }
                }
                col0 += t.complex.dim(k);
            }
            row += h.dim(k);
        }
        comps.insert(k, m);
    }
    let pi = ChainMap::new(c0, c1, 0, comps)?;
    Ok(cone(&pi)?.shift(-1).cohomology())
}

#[cfg(test)]
mod tests;
