//! Line-oriented skeleton files.
//!
//! ```text
//! vertex <id>
//! edge <id> <start-vertex or -> <end-vertex or ->
//! sectors <vertex> <labels in counterclockwise order>
//! incidence <vertex> <edge> <sector> <sector>
//! ```
//!
//! The two sectors of an incidence are the counterclockwise-consecutive pair beside the
//! half-edge. For a loop edge the first incidence line at its vertex is the start.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mirrorbench_core::cyclic::CyclicSet;
use mirrorbench_core::skeleton::{End, Incidence, RibbonSkeleton, SkeletonEdge};

#[derive(Debug, thiserror::Error)]
pub enum SkeletonFileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Syntax { path: PathBuf, line: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

pub fn read_skeleton(path: &Path) -> Result<RibbonSkeleton, SkeletonFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| SkeletonFileError::Io { path: path.to_path_buf(), source })?;
    parse_skeleton(&text, path)
}

/// Parses skeleton text; `origin` only labels error messages.
pub fn parse_skeleton(text: &str, origin: &Path) -> Result<RibbonSkeleton, SkeletonFileError> {
    let syntax = |line: usize, message: String| SkeletonFileError::Syntax { path: origin.to_path_buf(), line, message };
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<SkeletonEdge> = Vec::new();
    let mut sectors: BTreeMap<String, CyclicSet> = BTreeMap::new();
    let mut pending: Vec<(usize, String, String, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let arity = |n: usize| -> Result<(), SkeletonFileError> {
            if words.len() == n {
                Ok(())
            } else {
                Err(syntax(line, format!("`{}` takes {} fields, found {}", words[0], n - 1, words.len() - 1)))
            }
        };
        match words[0] {
            "vertex" => {
                arity(2)?;
                if vertices.iter().any(|v| v == words[1]) {
                    return Err(syntax(line, format!("vertex {} declared twice", words[1])));
                }
                vertices.push(words[1].to_string());
            }
            "edge" => {
                arity(4)?;
                let end = |w: &str| -> Result<Option<String>, SkeletonFileError> {
                    if w == "-" {
                        return Ok(None);
                    }
                    if !vertices.iter().any(|v| v == w) {
                        return Err(syntax(line, format!("unknown vertex {w}")));
                    }
                    Ok(Some(w.to_string()))
                };
                if edges.iter().any(|e| e.id == words[1]) {
                    return Err(syntax(line, format!("edge {} declared twice", words[1])));
                }
                edges.push(SkeletonEdge { id: words[1].to_string(), start: end(words[2])?, end: end(words[3])? });
            }
            "sectors" => {
                if words.len() < 3 {
                    return Err(syntax(line, "`sectors` needs a vertex and at least one label".into()));
                }
                if !vertices.iter().any(|v| v == words[1]) {
                    return Err(syntax(line, format!("unknown vertex {}", words[1])));
                }
                let cyc = CyclicSet::new(&words[2..]).map_err(|e| syntax(line, e.to_string()))?;
                if sectors.insert(words[1].to_string(), cyc).is_some() {
                    return Err(syntax(line, format!("sectors of {} given twice", words[1])));
                }
            }
            "incidence" => {
                arity(5)?;
                pending.push((line, words[1].to_string(), words[2].to_string(), words[3].to_string(), words[4].to_string()));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let mut incidences = Vec::new();
    for (line, v, e, a, b) in pending {
        let Some(edge) = edges.iter().find(|x| x.id == e) else {
            return Err(syntax(line, format!("unknown edge {e}")));
        };
        let Some(cyc) = sectors.get(&v) else {
            return Err(syntax(line, format!("vertex {v} has no sectors line")));
        };
        for s in [&a, &b] {
            if !cyc.contains(s) {
                return Err(syntax(line, format!("sector {s} is not at vertex {v}")));
            }
        }
        if !cyc.are_consecutive(&a, &b).map_err(|x| syntax(line, x.to_string()))? {
            return Err(syntax(line, format!("sectors {a} and {b} are not cyclically adjacent at {v}")));
        }
        let used = |end: End| incidences.iter().any(|i: &Incidence| i.edge == e && i.end == end);
        let end = if edge.start.as_deref() == Some(v.as_str()) && !used(End::Start) {
            End::Start
        } else if edge.end.as_deref() == Some(v.as_str()) && !used(End::End) {
            End::End
        } else {
            return Err(syntax(line, format!("edge {e} has no free end at {v}")));
        };
        let (left, right) = match end {
            End::Start => (b, a),
            End::End => (a, b),
        };
        incidences.push(Incidence { vertex: v, edge: e, end, left, right });
    }
    let mut vs = Vec::new();
    for v in vertices {
        let cyc = sectors
            .remove(&v)
            .ok_or_else(|| SkeletonFileError::Invalid { path: origin.to_path_buf(), message: format!("vertex {v} has no sectors line") })?;
        vs.push((v, cyc));
    }
    RibbonSkeleton::new(vs, edges, incidences)
        .map_err(|e| SkeletonFileError::Invalid { path: origin.to_path_buf(), message: e.to_string() })
}

/// Writes a skeleton in the file format; reading the output back gives an equal skeleton.
pub fn write_skeleton(s: &RibbonSkeleton) -> String {
    let mut out = String::new();
    for (v, _) in s.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in s.edges() {
        let end = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
        writeln!(out, "edge {} {} {}", e.id, end(&e.start), end(&e.end)).unwrap();
    }
    for (v, cyc) in s.vertices() {
        writeln!(out, "sectors {v} {}", cyc.elements().join(" ")).unwrap();
    }
    let mut incs: Vec<&Incidence> = s.incidences().iter().collect();
    incs.sort_by_key(|i| i.end);
    for i in incs {
        let (a, b) = i.ccw_pair();
        writeln!(out, "incidence {} {} {a} {b}", i.vertex, i.edge).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirrorbench_core::skeleton::punctured_sphere_skeleton;

    fn parse(text: &str) -> Result<RibbonSkeleton, SkeletonFileError> {
        parse_skeleton(text, Path::new("t.skel"))
    }

    #[test]
    fn tripod_parses() {
        let s = parse(
            "vertex v\nedge a v -\nedge b v -\nedge c v -\nsectors v x y z\nincidence v a x y\nincidence v b y z\nincidence v c z x\n",
        )
        .unwrap();
        assert_eq!(s.incidences().len(), 3);
        assert_eq!(s.euler_characteristic(), -2);
    }

    #[test]
    fn ladders_round_trip() {
        for n in 2..=5 {
            let s = punctured_sphere_skeleton(n).unwrap();
            let text = write_skeleton(&s);
            let back = parse(&text).unwrap();
            assert_eq!(write_skeleton(&back), text);
            assert_eq!(back.euler_characteristic(), s.euler_characteristic());
        }
    }

    #[test]
    fn non_adjacent_pair_reports_line() {
        let e = parse("vertex v\nedge a v -\nsectors v p q r s\n\nincidence v a p r\n").unwrap_err();
        let msg = e.to_string();
        assert!(msg.starts_with("t.skel:5:"), "{msg}");
        assert!(msg.contains("not cyclically adjacent"));
    }

    #[test]
    fn unknown_names_report_line() {
        assert!(parse("vertex v\nedge a w -\n").unwrap_err().to_string().starts_with("t.skel:2:"));
        assert!(parse("vertex v\nbogus\n").unwrap_err().to_string().starts_with("t.skel:2:"));
        assert!(parse("vertex v\nedge a v -\nsectors v x\nincidence v b x x\n").unwrap_err().to_string().starts_with("t.skel:4:"));
    }

    #[test]
    fn missing_sectors_is_invalid() {
        assert!(matches!(parse("vertex v\nedge a v -\n"), Err(SkeletonFileError::Invalid { .. })));
    }
}
