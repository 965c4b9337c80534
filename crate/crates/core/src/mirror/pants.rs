//! The pair of pants: torus models over proper subsets `I ⊂ [n+1]` against the coordinate cube
//! `I ↦ 𝔸^I`, glued to `Coh(X_n)`.
//!
//! The A-side object at `I` is a Kronecker model with `x = id` and `y_a = T_a` on a module
//! supported at the origin; its image is the dictionary resolution shifted by `[−|I|]`. An edge
//! `I′ ⊂ I` applies `η_+` along `I ∖ I′` on the A-side and Koszul restriction on the B-side.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bmodels::{
    box_points, cech_descent_check, coh_ext_table, find_free_quasi_iso, fold_compare, kronecker_dictionary, shift_box, CohTable,
    CoherentGenerator, KroneckerModel, Pole,
};
use crate::error::{Error, Result};
use crate::exactlin::ExactMatrix;
use crate::field::Field;
use crate::pantsgeom::cube_diagram;
use crate::polyring::{hom_free, koszul_restrict, FreeComplex};

use super::{CheckResult, EdgeResult, MirrorOptions, MirrorReport, NodeResult, PairTable};

struct Generator<F: Field> {
    name: String,
    model: KroneckerModel<F>,
}

fn set_name(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|a| format!("{a}")).collect();
    format!("{{{}}}", inner.join(","))
}

fn unit(rank: usize, a: usize) -> Vec<i64> {
    (0..rank).map(|i| i64::from(i == a)).collect()
}

/// The origin skyscraper and, for each `a ∈ I`, the module `k[t_a]/t_a²` at the origin.
fn generators<F: Field>(subset: &[usize], rank: usize) -> Result<Vec<Generator<F>>> {
    let dirs: Vec<usize> = subset.iter().map(|a| a - 1).collect();
    let dw: Vec<Vec<i64>> = dirs.iter().map(|&a| unit(rank, a)).collect();
    let mut out = vec![Generator {
        name: "k0".into(),
        model: KroneckerModel::from_module(
            dirs.clone(),
            dw.clone(),
            vec![vec![0; rank]],
            dirs.iter().map(|_| ExactMatrix::zeros(1, 1)).collect(),
        )?,
    }];
    for &a in &dirs {
        let ops =
            dirs.iter().map(|&b| if b == a { ExactMatrix::from_ints(2, 2, &[0, 0, 1, 0]) } else { ExactMatrix::zeros(2, 2) }).collect();
        out.push(Generator {
            name: format!("thick{}", a + 1),
            model: KroneckerModel::from_module(dirs.clone(), dw.clone(), vec![vec![0; rank], unit(rank, a)], ops)?,
        });
    }
    Ok(out)
}

fn dictionary_name(name: &str, size: usize) -> String {
    if size == 0 {
        format!("K(t-T){name}")
    } else {
        format!("K(t-T){name}[-{size}]")
    }
}

fn dictionary_image<F: Field>(m: &KroneckerModel<F>) -> Result<FreeComplex<F>> {
    Ok(kronecker_dictionary(m)?.shift(-(m.dirs().len() as i64)))
}

fn widened<F: Field>(cs: &[&FreeComplex<F>], by: i64) -> (Vec<i64>, Vec<i64>) {
    let (mut lo, mut hi) = shift_box(cs);
    lo.iter_mut().for_each(|x| *x -= by);
    hi.iter_mut().for_each(|x| *x += by);
    (lo, hi)
}

/// Hom cohomology of two dictionary images summed over all multidegrees; `None` if classes
/// reach the boundary of the search box.
fn total_hom<F: Field>(p: &FreeComplex<F>, q: &FreeComplex<F>) -> Result<Option<BTreeMap<i64, usize>>> {
    let h = hom_free(p, q)?;
    let (lo, hi) = widened(&[&h], 2);
    let mut out = BTreeMap::new();
    for m in box_points(&lo, &hi) {
        let c = h.slice(&m)?.cohomology();
        if c.is_zero() {
            continue;
        }
        if m.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, u))| x == l || x == u) {
            return Ok(None);
        }
        for (k, v) in c.dims() {
            if *v > 0 {
                *out.entry(*k).or_insert(0) += v;
            }
        }
    }
    Ok(Some(out))
}

fn as_vec(m: &BTreeMap<i64, usize>) -> Vec<usize> {
    let top = m.keys().copied().max().unwrap_or(-1);
    (0..=top.max(0)).map(|k| m.get(&k).copied().unwrap_or(0)).collect()
}

/// Restriction of a model along every direction in `killed` (axis labels).
fn eta_along<F: Field>(m: &KroneckerModel<F>, killed: &[usize]) -> Result<KroneckerModel<F>> {
    let mut cur = m.clone();
    for a in killed {
        let pos = cur.dirs().iter().position(|d| d == a).ok_or(Error::IndexOutOfRange { index: a + 1, max: cur.dirs().len() })?;
        cur = cur.eta(pos, Pole::Plus)?;
    }
    Ok(cur)
}

/// Glued Ext over the components, reindexed like [`coh_ext_table`].
fn glued_table<F: Field>(vars: usize, a: usize, b: usize, d_poly: usize, d_u: usize) -> Result<(bool, CohTable)> {
    let len = 2 * d_u + 2;
    let g1 = CoherentGenerator::<F>::hyperplane(vars, a, len)?;
    let g2 = CoherentGenerator::<F>::hyperplane(vars, b, len)?;
    let cmp = cech_descent_check(&g1.resolution, &g2.module, d_poly)?;
    let top = 2 * d_u as i64 + 1;
    let mut out = CohTable::zero(top, d_poly);
    for ((c, m), v) in &cmp.glued {
        if *c > top {
            continue;
        }
        let t = m.iter().sum::<i64>() + g1.min_shift_total(*c);
        if (0..=d_poly as i64).contains(&t) {
            out.rows.get_mut(c).expect("degree in range")[t as usize] += v;
        }
    }
    Ok((cmp.agree(), out))
}

/// Verifies the cube diagram of the `n`-dimensional pair of pants, `1 <= n <= 3`.
pub fn verify_pants_mirror<F: Field>(n: usize, opts: &MirrorOptions) -> Result<MirrorReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!("pants dimension {n} outside 1..=3")));
    }
    let rank = n + 1;
    let cube = cube_diagram(n)?;
    let mut report = MirrorReport::new(format!("pants n={n}"), opts.truncation);
    let mut gens = Vec::new();
    for node in &cube.nodes {
        let gs = generators::<F>(&node.subset, rank)?;
        let mut tables = Vec::new();
        let mut bad = Vec::new();
        let images: Vec<FreeComplex<F>> = gs.iter().map(|g| dictionary_image(&g.model)).collect::<Result<_>>()?;
        for (g, pg) in gs.iter().zip(&images) {
            for (h, ph) in gs.iter().zip(&images) {
                let a = g.model.torsion_module()?.ext(&h.model.torsion_module()?)?;
                let a: BTreeMap<i64, usize> = a.dims().iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect();
                let b = total_hom(pg, ph)?;
                match &b {
                    Some(b) if *b == a => {}
                    Some(_) => bad.push(format!("({}, {})", g.name, h.name)),
                    None => bad.push(format!("({}, {}) leaves the search box", g.name, h.name)),
                }
                tables.push(PairTable {
                    source: g.name.clone(),
                    target: h.name.clone(),
                    a_side: as_vec(&a),
                    b_side: b.as_ref().map(as_vec).unwrap_or_default(),
                });
            }
        }
        let verdict = bad.is_empty();
        report.nodes.push(NodeResult {
            name: set_name(&node.subset),
            model: format!("A^{}", node.subset.len()),
            dictionary: gs.iter().map(|g| (g.name.clone(), dictionary_name(&g.name, node.subset.len()))).collect(),
            tables,
            verdict,
            detail: if verdict { "Ext by degree agrees".into() } else { format!("tables differ at {}", bad.join(", ")) },
        });
        gens.push(gs);
    }
    for e in &cube.edges {
        let edge_index = report.edges.len();
        let (big, small) = (&cube.nodes[e.big], &cube.nodes[e.small]);
        let killed: Vec<usize> = e.killed.iter().map(|a| a - 1).collect();
        let keep: Vec<usize> = small.subset.iter().map(|a| big.subset.iter().position(|b| b == a).expect("subset")).collect();
        let mut results = Vec::new();
        let mut zero_images = Vec::new();
        for (gi, g) in gens[e.big].iter().enumerate() {
            let mut a_img = dictionary_image(&eta_along(&g.model, &killed)?)?;
            let (lo, hi) = widened(&[&a_img], 1);
            if box_points(&lo, &hi).iter().map(|m| a_img.slice(m)).collect::<Result<Vec<_>>>()?.iter().all(|c| c.is_acyclic()) {
                zero_images.push(g.name.clone());
            }
            if opts.perturb.is_some_and(|p| p.edge == edge_index && p.generator == gi) {
                a_img = a_img.shift(1);
            }
            let b_img = koszul_restrict(&dictionary_image(&g.model)?, &keep)?;
            let (lo, hi) = widened(&[&a_img, &b_img], 1);
            let ok = find_free_quasi_iso(&a_img, &b_img, &box_points(&lo, &hi))?.is_some();
            results.push((g.name.clone(), ok));
        }
        if let Some(p) = opts.perturb.filter(|p| p.edge == edge_index && p.generator >= gens[e.big].len()) {
            return Err(Error::InvalidArgument(format!("perturbed generator {} but the node has {}", p.generator, gens[e.big].len())));
        }
        let verdict = results.iter().all(|(_, v)| *v);
        let failing: Vec<&str> = results.iter().filter(|(_, v)| !v).map(|(n, _)| n.as_str()).collect();
        report.edges.push(EdgeResult {
            name: format!("{} -> {}", set_name(&big.subset), set_name(&small.subset)),
            source: set_name(&big.subset),
            target: set_name(&small.subset),
            detail: if verdict {
                format!("{} quasi-isomorphism certificates", results.len())
            } else {
                format!("no certificate for {}", failing.join(", "))
            },
            generators: results,
            zero_images,
            verdict,
        });
    }
    if !opts.skip_glued {
        let t = opts.truncation;
        for a in 1..=rank {
            for b in 1..=rank {
                let (agree, glued) = glued_table::<F>(rank, a, b, t.poly_degree, t.u_degree)?;
                let direct = coh_ext_table::<F>(rank, a, b, t.poly_degree, t.u_degree)?;
                let verdict = agree && glued == direct;
                report.checks.push(CheckResult {
                    name: format!("glued Ext(O^{a}, O^{b})"),
                    verdict,
                    detail: format!(
                        "cech totalization {} the direct Hom; table {}",
                        if agree { "matches" } else { "differs from" },
                        if glued == direct { "matches" } else { "differs" }
                    ),
                });
            }
            let verdict = fold_compare::<F>(rank, a, t.poly_degree)?;
            report.checks.push(CheckResult {
                name: format!("fold O^{a}"),
                verdict,
                detail: format!("folded Ext against matrix factorizations up to degree {}", t.poly_degree),
            });
        }
    }
    if let Some(p) = opts.perturb.filter(|p| p.edge >= report.edges.len()) {
        return Err(Error::InvalidArgument(format!("perturbed edge {} but the diagram has {}", p.edge, report.edges.len())));
    }
    Ok(report.finish())
}
