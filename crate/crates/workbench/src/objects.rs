//! Textual names for perfect complexes: sums of `P<a>`, `k<a>`, `I<a>` with optional shifts,
//! e.g. `k1`, `P2[1]`, `k1+k3[-1]`, or `0`.

use std::collections::BTreeMap;

use mirrorbench_core::field::Field;
use mirrorbench_core::quivers::{named_object, parse_object_name, LinearQuiver, PerfComplex};
use mirrorbench_core::Grading;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("bad object `{text}`: {reason}")]
pub struct ObjectError {
    pub text: String,
    pub reason: String,
}

fn bad(text: &str, reason: impl Into<String>) -> ObjectError {
    ObjectError { text: text.to_string(), reason: reason.into() }
}

/// Splits `name[s]` into `(name, s)`.
pub fn split_shift(term: &str) -> Result<(&str, i64), ObjectError> {
    match term.find('[') {
        None => Ok((term, 0)),
        Some(i) => {
            let inner = term[i + 1..].strip_suffix(']').ok_or_else(|| bad(term, "unclosed shift"))?;
            let s = inner.parse().map_err(|_| bad(term, "shift is not an integer"))?;
            Ok((&term[..i], s))
        }
    }
}

pub fn parse_object<F: Field>(text: &str, n: usize) -> Result<PerfComplex<F>, ObjectError> {
    let mut acc = PerfComplex::zero(n, Grading::Z);
    for term in text.split('+').map(str::trim) {
        let (name, s) = split_shift(term)?;
        if name == "0" {
            continue;
        }
        let (kind, a) = parse_object_name(name).ok_or_else(|| bad(term, "expected P<a>, k<a>, I<a> or 0"))?;
        let x = named_object::<F>(LinearQuiver { n }, kind, a).map_err(|e| bad(term, e.to_string()))?;
        acc = acc.direct_sum(&x.shift(s)).map_err(|e| bad(term, e.to_string()))?;
    }
    Ok(acc)
}

/// A family given as `id=object` pairs separated by commas.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, String>, ObjectError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(part, "expected id=object"))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(bad(part, "id given twice"));
        }
    }
    Ok(out)
}

/// Formats `name` shifted by `s` the way [`split_shift`] reads it.
pub fn shifted_name(name: &str, s: i64) -> String {
    if s == 0 {
        name.to_string()
    } else {
        format!("{name}[{s}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirrorbench_core::field::Q;
    use mirrorbench_core::quivers::perf_find_quasi_iso;

    #[test]
    fn sums_and_shifts() {
        let x = parse_object::<Q>("k1+P2[1]", 3).unwrap();
        let y = PerfComplex::<Q>::skyscraper(3, 1).unwrap().direct_sum(&PerfComplex::projective(3, 2).unwrap().shift(1)).unwrap();
        assert!(perf_find_quasi_iso(&x, &y).is_some());
        assert!(parse_object::<Q>("0", 2).unwrap().is_acyclic());
    }

    #[test]
    fn rejects_bad_names() {
        assert!(parse_object::<Q>("k4", 3).is_err());
        assert!(parse_object::<Q>("x1", 3).is_err());
        assert!(parse_object::<Q>("k1[", 3).is_err());
        assert!(parse_object::<Q>("k1[a]", 3).is_err());
    }

    #[test]
    fn assignments() {
        let a = parse_assignment("v1=k1, v2=P1[1]").unwrap();
        assert_eq!(a["v2"], "P1[1]");
        assert!(parse_assignment("v1").is_err());
        assert!(parse_assignment("v1=k1,v1=k2").is_err());
        assert_eq!(split_shift(&shifted_name("k2", -3)).unwrap(), ("k2", -3));
    }
}
