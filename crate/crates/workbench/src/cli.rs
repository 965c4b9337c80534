//! Command-line verbs. Every verb produces a [`Report`]; [`run`] maps it to an exit code.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use mirrorbench_core::bmodels::{
    coh_expected, coh_ext_table, fold_tables, mf_expected, mf_generator, mf_hom_cohomology, CohTable, MfTable,
};
use mirrorbench_core::field::{Field, Fp, Q};
use mirrorbench_core::mirror::{verify_pants_mirror, verify_surface_mirror, MirrorOptions, MirrorReport, Perturbation, Truncation};
use mirrorbench_core::pantsgeom::{contact_cover_degree, strata};
use mirrorbench_core::quivers::{
    all_named, cyclic_rotate, cyclic_rotate_inverse, hom_pairing_duality_report, perf_find_quasi_iso, LinearQuiver,
};
use mirrorbench_core::skeleton::{build_diagram, limit_hom, DiagramMode, LimitObject, RibbonSkeleton};
use mirrorbench_core::Error;

use crate::objects::{parse_assignment, parse_object, shifted_name, split_shift};
use crate::report::Report;
use crate::skeleton_file::read_skeleton;

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "MIRRORBENCH_THREADS";

#[derive(Parser, Debug)]
#[command(name = "mirrorbench", version, about = "Exact generator-level checks of quiver, matrix factorization and skeleton categories")]
pub struct Cli {
    /// Coefficient field: `q` for the rationals or `fp:<p>` for a supported prime.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hom cohomology between generators O_a, O_b of matrix factorizations of z_1⋯z_{n+1},
    /// compared with A/(z_a, W/z_a) (a = b, even) and A/(z_a, z_b) (a ≠ b, odd).
    MfHom {
        /// Number of variables minus one.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        /// Second index; all indices when omitted.
        #[arg(long)]
        b: Option<usize>,
        /// Largest total polynomial degree.
        #[arg(long)]
        deg: usize,
    },
    /// Ext between structure sheaves of coordinate hyperplanes on {z_1⋯z_n = 0}, compared with
    /// A[u]/(z_a, u·W/z_a) for a = b and A[u]/(z_a, z_b)[−1] otherwise, u of degree 2.
    CohExt {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Largest total polynomial degree.
        #[arg(long)]
        deg: usize,
        /// Largest power of u.
        #[arg(long)]
        udeg: usize,
    },
    /// Folding: the 2-periodic Ext(O^a, O^a) on {z_1⋯z_n = 0} with u ↦ z_{n+1} against matrix
    /// factorizations of z_1⋯z_{n+1}, for every a.
    FoldCheck {
        /// Number of variables of the hypersurface.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: usize,
    },
    /// Applies the cyclic-rotation mutation to a named object over A_{m−1}; m rotations give [2].
    Mutate {
        /// Size m of the cyclic set.
        #[arg(long)]
        cycle: usize,
        /// Object such as `k1`, `P2[1]` or `k1+I2`.
        #[arg(long)]
        object: String,
        /// Number of rotations; negative values rotate backwards.
        #[arg(long, allow_hyphen_values = true)]
        times: i64,
    },
    /// Homs in the category of sections over a ribbon skeleton read from a file.
    Skeleton {
        #[arg(long)]
        file: PathBuf,
        #[command(subcommand)]
        query: SkeletonQuery,
    },
    /// Strata T^I × Ξ_I of the skeleton of the n-dimensional pair of pants, with the
    /// compactly supported Euler characteristic and the degree of the contact cover.
    Strata {
        #[arg(long)]
        n: usize,
    },
    /// Diagram-level mirror checks with generator dictionaries.
    Mirror {
        #[command(subcommand)]
        case: MirrorCase,
    },
    /// Hom-pairing duality on A_n: Ext^i(x, y) against Ext^{−i}(y, Sx) and the Euler form.
    Duality {
        #[arg(long)]
        an: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SkeletonQuery {
    /// Hom between two compatible families given by vertex objects, e.g. `v1=k1,v2=P2[1]`.
    /// Edges without half-edges take an object too.
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TruncationArgs {
    /// Polynomial degree bound.
    #[arg(long, default_value_t = 6)]
    pub poly_degree: usize,
    /// Bound on the power of the degree-2 variable u.
    #[arg(long, default_value_t = 3)]
    pub u_degree: usize,
    /// Bound on loop lengths in quiver Homs.
    #[arg(long, default_value_t = 6)]
    pub loop_length: usize,
    /// Replace the image of one generator along one edge by its shift (harness self-test).
    #[arg(long, requires = "perturb_generator")]
    pub perturb_edge: Option<usize>,
    /// Index of the generator to perturb, in the source node's generator order.
    #[arg(long, requires = "perturb_edge")]
    pub perturb_generator: Option<usize>,
}

impl TruncationArgs {
    fn options(&self) -> MirrorOptions {
        MirrorOptions {
            truncation: Truncation { poly_degree: self.poly_degree, u_degree: self.u_degree, loop_length: self.loop_length },
            perturb: self.perturb_edge.zip(self.perturb_generator).map(|(edge, generator)| Perturbation { edge, generator }),
            skip_glued: false,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum MirrorCase {
    /// Cover of the n-punctured sphere against the chain of projective lines, 2 ≤ n ≤ 5.
    Surface {
        /// Number of punctures.
        #[arg(long)]
        punctures: usize,
        #[command(flatten)]
        truncation: TruncationArgs,
    },
    /// Diagram over proper subsets for the n-dimensional pair of pants against the
    /// coordinate-hyperplane union, 1 ≤ n ≤ 3.
    Pants {
        /// Dimension of the pair of pants.
        #[arg(long)]
        dim: usize,
        /// Skip the glued Ext and folding comparisons.
        #[arg(long)]
        skip_glued: bool,
        #[command(flatten)]
        truncation: TruncationArgs,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                Error::InvalidArgument(_)
                | Error::IndexOutOfRange { .. }
                | Error::VertexOutOfRange { .. }
                | Error::PositionOutOfRange { .. }
                | Error::TruncationTooSmall { .. } => 2,
                _ => 3,
            },
        }
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

fn in_range(flag: &str, v: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    if v < lo || v > hi {
        return Err(usage(flag, format!("{v} outside {lo}..={hi}")));
    }
    Ok(())
}

/// Primes accepted by `--field fp:<p>`.
pub const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 101, 1009, 10007, 32003, 65521, 2147483647];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u32),
}

impl FieldChoice {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rationals);
        }
        let p: u32 =
            s.strip_prefix("fp:").and_then(|p| p.parse().ok()).ok_or_else(|| usage("--field", format!("`{s}` is neither q nor fp:<p>")))?;
        if !PRIMES.contains(&p) {
            return Err(usage("--field", format!("prime {p} not among the supported {PRIMES:?}")));
        }
        Ok(FieldChoice::Prime(p))
    }

    pub fn name(self) -> String {
        match self {
            FieldChoice::Rationals => "Q".into(),
            FieldChoice::Prime(p) => format!("F_{p}"),
        }
    }
}

fn dispatch(field: FieldChoice, cmd: &Command) -> Result<Report, CliError> {
    match field {
        FieldChoice::Rationals => execute::<Q>(cmd),
        FieldChoice::Prime(2) => execute::<Fp<2>>(cmd),
        FieldChoice::Prime(3) => execute::<Fp<3>>(cmd),
        FieldChoice::Prime(5) => execute::<Fp<5>>(cmd),
        FieldChoice::Prime(7) => execute::<Fp<7>>(cmd),
        FieldChoice::Prime(11) => execute::<Fp<11>>(cmd),
        FieldChoice::Prime(13) => execute::<Fp<13>>(cmd),
        FieldChoice::Prime(101) => execute::<Fp<101>>(cmd),
        FieldChoice::Prime(1009) => execute::<Fp<1009>>(cmd),
        FieldChoice::Prime(10007) => execute::<Fp<10007>>(cmd),
        FieldChoice::Prime(32003) => execute::<Fp<32003>>(cmd),
        FieldChoice::Prime(65521) => execute::<Fp<65521>>(cmd),
        FieldChoice::Prime(2147483647) => execute::<Fp<2147483647>>(cmd),
        FieldChoice::Prime(p) => Err(usage("--field", format!("unsupported prime {p}"))),
    }
}

fn mf_json(t: &MfTable) -> Value {
    json!({ "even": t.even, "odd": t.odd })
}

fn coh_json(t: &CohTable) -> Value {
    Value::Array(t.rows.iter().map(|(c, row)| json!({ "degree": c, "dims": row })).collect())
}

fn mf_hom<F: Field>(n: usize, a: usize, b: Option<usize>, deg: usize) -> Result<Report, CliError> {
    in_range("--n", n, 1, 8)?;
    in_range("--a", a, 1, n + 1)?;
    if let Some(b) = b {
        in_range("--b", b, 1, n + 1)?;
    }
    let bs: Vec<usize> = b.map(|b| vec![b]).unwrap_or_else(|| (1..=n + 1).collect());
    let x = mf_generator::<F>(n, a)?;
    let rows: Vec<Result<(usize, MfTable, bool), Error>> = bs
        .par_iter()
        .map(|&b| {
            let t = mf_hom_cohomology(&x, &mf_generator::<F>(n, b)?, deg)?;
            let ok = t == mf_expected(n, a, b, deg)?;
            Ok((b, t, ok))
        })
        .collect();
    let mut pairs = Vec::new();
    let mut all = true;
    for r in rows {
        let (b, t, ok) = r?;
        all &= ok;
        let mut v = mf_json(&t);
        v["a"] = json!(a);
        v["b"] = json!(b);
        v["matches_closed_form"] = json!(ok);
        pairs.push(v);
    }
    Ok(Report::new("mf-hom", json!({ "n": n, "a": a, "b": b }), json!({ "deg": deg }), json!({ "pairs": pairs }), Some(all)))
}

fn coh_ext<F: Field>(n: usize, a: usize, b: usize, deg: usize, udeg: usize) -> Result<Report, CliError> {
    in_range("--n", n, 1, 8)?;
    in_range("--a", a, 1, n)?;
    in_range("--b", b, 1, n)?;
    let t = coh_ext_table::<F>(n, a, b, deg, udeg)?;
    let ok = t == coh_expected(n, a, b, deg, udeg)?;
    let result = json!({ "rows": coh_json(&t), "matches_closed_form": ok });
    Ok(Report::new("coh-ext", json!({ "n": n, "a": a, "b": b }), json!({ "deg": deg, "udeg": udeg }), result, Some(ok)))
}

fn fold_check<F: Field>(n: usize, deg: usize) -> Result<Report, CliError> {
    in_range("--n", n, 1, 8)?;
    let rows: Vec<Result<(usize, MfTable, MfTable), Error>> = (1..=n)
        .into_par_iter()
        .map(|a| {
            let (f, m) = fold_tables::<F>(n, a, a, deg)?;
            Ok((a, f, m))
        })
        .collect();
    let mut out = Vec::new();
    let mut all = true;
    for r in rows {
        let (a, f, m) = r?;
        all &= f == m;
        out.push(json!({ "a": a, "folded": mf_json(&f), "mf": mf_json(&m), "agree": f == m }));
    }
    Ok(Report::new("fold-check", json!({ "n": n }), json!({ "deg": deg }), json!({ "indices": out }), Some(all)))
}

fn mutate<F: Field>(cycle: usize, object: &str, times: i64) -> Result<Report, CliError> {
    in_range("--cycle", cycle, 2, 12)?;
    if times.unsigned_abs() > 64 {
        return Err(usage("--times", format!("{times} outside -64..=64")));
    }
    let n = cycle - 1;
    let x = parse_object::<F>(object, n).map_err(|e| usage("--object", e))?;
    let mut y = x.clone();
    for _ in 0..times.unsigned_abs() {
        y = if times > 0 { cyclic_rotate(&y)? } else { cyclic_rotate_inverse(&y)? };
    }
    // the input itself first, then every named generator, at shifts within the reachable range
    let reach = 2 * (times.unsigned_abs() as i64) / cycle as i64 + 2;
    let shifts: Vec<i64> = (0..=reach).flat_map(|s| if s == 0 { vec![0] } else { vec![s, -s] }).collect();
    let input_name = if object.contains('+') { format!("({object})") } else { object.to_string() };
    let mut candidates = vec![(input_name, x.clone())];
    candidates.extend(all_named::<F>(n));
    let mut identified = None;
    'search: for (name, c) in &candidates {
        for &s in &shifts {
            if perf_find_quasi_iso(&y, &c.shift(s)).is_some() {
                let (base, s0) = split_shift(name).unwrap_or((name.as_str(), 0));
                identified = Some(if name.starts_with('(') { shifted_name(name, s) } else { shifted_name(base, s0 + s) });
                break 'search;
            }
        }
    }
    let stalks: Vec<Value> = (1..=n)
        .map(|v| {
            let h = y.stalk(v).cohomology();
            json!({ "vertex": v, "dims": h.dims().iter().map(|(d, k)| json!([d, k])).collect::<Vec<_>>() })
        })
        .collect();
    let summary = match &identified {
        Some(name) => format!("quasi-isomorphic to {name}"),
        None => "no named object up to shift matches".to_string(),
    };
    let result = json!({ "identified": identified, "summary": summary, "certificate": identified.is_some(), "stalk_cohomology": stalks });
    Ok(Report::new("mutate", json!({ "cycle": cycle, "object": object, "times": times }), json!({}), result, Some(identified.is_some())))
}

fn family<F: Field>(
    flag: &str,
    s: &RibbonSkeleton,
    spec: &str,
    d: &mirrorbench_core::skeleton::CatDiagram<F>,
) -> Result<LimitObject<F>, CliError> {
    let spec = parse_assignment(spec).map_err(|e| usage(flag, e))?;
    let mut vs = std::collections::BTreeMap::new();
    let mut es = std::collections::BTreeMap::new();
    for (id, obj) in &spec {
        if let Some((_, cyc)) = s.vertices().iter().find(|(v, _)| v == id) {
            vs.insert(id.clone(), parse_object::<F>(obj, cyc.len() - 1).map_err(|e| usage(flag, e))?);
        } else if s.edges().iter().any(|e| &e.id == id) {
            es.insert(id.clone(), parse_object::<F>(obj, 1).map_err(|e| usage(flag, e))?);
        } else {
            return Err(usage(flag, format!("no vertex or edge named {id}")));
        }
    }
    for (v, _) in s.vertices() {
        if !vs.contains_key(v) {
            return Err(usage(flag, format!("no object for vertex {v}")));
        }
    }
    Ok(LimitObject::from_vertex_objects(d, &vs, &es)?)
}

fn skeleton_hom<F: Field>(file: &std::path::Path, x: &str, y: &str) -> Result<Report, CliError> {
    let s = read_skeleton(file).map_err(|e| CliError::Input(e.to_string()))?;
    let d = build_diagram::<F>(&s, DiagramMode::Sheaf)?;
    let fx = family("--x", &s, x, &d)?;
    let fy = family("--y", &s, y, &d)?;
    let h = limit_hom(&d, &fx, &fy)?;
    let (even, odd) = h.parity_dims();
    let result = json!({
        "even": even,
        "odd": odd,
        "vertices": s.vertices().len(),
        "edges": s.edges().len(),
        "euler_characteristic": s.euler_characteristic(),
    });
    let params = json!({ "file": file.display().to_string(), "x": x, "y": y });
    Ok(Report::new("skeleton hom", params, json!({}), result, None))
}

fn strata_report(n: usize) -> Result<Report, CliError> {
    in_range("--n", n, 1, 30)?;
    let t = strata(n)?;
    let rows: Vec<Value> = t
        .strata
        .iter()
        .map(|s| json!({ "subset": s.subset, "torus_rank": s.torus_rank, "simplex_dim": s.simplex_dim, "dimension": s.dimension(), "euler_c": s.euler_char_c() }))
        .collect();
    let euler: i64 = t.strata.iter().map(|s| s.euler_char_c()).sum();
    let result = json!({
        "count": t.strata.len(),
        "strata": rows,
        "incidences": t.incidence.len(),
        "euler_c": euler,
        "cover_degree": contact_cover_degree(n)?,
    });
    Ok(Report::new("strata", json!({ "n": n }), json!({}), result, None))
}

fn truncation_json(t: &Truncation) -> Value {
    json!({ "poly_degree": t.poly_degree, "u_degree": t.u_degree, "loop_length": t.loop_length })
}

pub fn mirror_json(r: &MirrorReport) -> Value {
    let nodes: Vec<Value> = r
        .nodes
        .iter()
        .map(|x| {
            json!({
                "name": x.name,
                "model": x.model,
                "dictionary": x.dictionary.iter().map(|(a, b)| json!({ "a_side": a, "b_side": b })).collect::<Vec<_>>(),
                "tables": x.tables.iter().map(|t| json!({ "source": t.source, "target": t.target, "a_side": t.a_side, "b_side": t.b_side })).collect::<Vec<_>>(),
                "verdict": x.verdict,
                "detail": x.detail,
            })
        })
        .collect();
    let edges: Vec<Value> = r
        .edges
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "source": e.source,
                "target": e.target,
                "generators": e.generators.iter().map(|(g, v)| json!({ "generator": g, "commutes": v })).collect::<Vec<_>>(),
                "zero_images": e.zero_images,
                "verdict": e.verdict,
                "detail": e.detail,
            })
        })
        .collect();
    let checks: Vec<Value> = r.checks.iter().map(|c| json!({ "name": c.name, "verdict": c.verdict, "detail": c.detail })).collect();
    json!({ "case": r.case, "nodes": nodes, "edges": edges, "checks": checks, "overall": r.overall, "failure": r.failure })
}

fn mirror<F: Field>(case: &MirrorCase) -> Result<Report, CliError> {
    let (r, params) = match case {
        MirrorCase::Surface { punctures, truncation } => {
            in_range("--punctures", *punctures, 2, 5)?;
            (verify_surface_mirror::<F>(*punctures, &truncation.options())?, json!({ "case": "surface", "punctures": punctures }))
        }
        MirrorCase::Pants { dim, skip_glued, truncation } => {
            in_range("--dim", *dim, 1, 3)?;
            let opts = MirrorOptions { skip_glued: *skip_glued, ..truncation.options() };
            (verify_pants_mirror::<F>(*dim, &opts)?, json!({ "case": "pants", "dim": dim, "skip_glued": skip_glued }))
        }
    };
    let mut params = params;
    let opts = match case {
        MirrorCase::Surface { truncation, .. } | MirrorCase::Pants { truncation, .. } => truncation.options(),
    };
    if let Some(p) = opts.perturb {
        params["perturb"] = json!({ "edge": p.edge, "generator": p.generator });
    }
    Ok(Report::new("mirror", params, truncation_json(&r.truncation), mirror_json(&r), Some(r.overall)))
}

fn duality<F: Field>(an: usize) -> Result<Report, CliError> {
    in_range("--an", an, 1, 12)?;
    let r = hom_pairing_duality_report::<F>(LinearQuiver::new(an)?);
    let result = json!({
        "pairs_checked": r.pairs_checked,
        "finite": r.finite,
        "serre_tables_match": r.serre_tables_match,
        "euler_determinant": r.euler_determinant,
        "holds": r.holds,
    });
    Ok(Report::new("duality", json!({ "an": an }), json!({}), result, Some(r.holds)))
}

fn execute<F: Field>(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::MfHom { n, a, b, deg } => mf_hom::<F>(*n, *a, *b, *deg),
        Command::CohExt { n, a, b, deg, udeg } => coh_ext::<F>(*n, *a, *b, *deg, *udeg),
        Command::FoldCheck { n, deg } => fold_check::<F>(*n, *deg),
        Command::Mutate { cycle, object, times } => mutate::<F>(*cycle, object, *times),
        Command::Skeleton { file, query: SkeletonQuery::Hom { x, y } } => skeleton_hom::<F>(file, x, y),
        Command::Strata { n } => strata_report(*n),
        Command::Mirror { case } => mirror::<F>(case),
        Command::Duality { an } => duality::<F>(*an),
    }
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_VAR}: `{v}` is not a positive integer"))),
        },
    }
}

/// Parses `argv` (program name first), runs the verb and renders the report.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = (|| -> Result<Report, CliError> {
        let field = FieldChoice::parse(&cli.field)?;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = thread_cap()? {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| CliError::Input(e.to_string()))?;
        let mut report = pool.install(|| dispatch(field, &cli.command))?;
        report.field = field.name();
        Ok(report)
    })();
    match result {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Json => r.to_json(),
                Format::Table => r.to_table(),
            };
            Outcome { code: if r.verdict == Some(false) { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_flag() {
        assert_eq!(FieldChoice::parse("q").unwrap(), FieldChoice::Rationals);
        assert_eq!(FieldChoice::parse("fp:101").unwrap(), FieldChoice::Prime(101));
        assert_eq!(FieldChoice::parse("fp:4").unwrap_err().exit_code(), 2);
        assert_eq!(FieldChoice::parse("r").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn error_classes() {
        assert_eq!(CliError::Core(Error::CertificateFailure("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::IndexOutOfRange { index: 4, max: 3 }).exit_code(), 2);
        assert_eq!(CliError::Input("f:1: bad".into()).exit_code(), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
