//! Plain-text ring-model files.
//!
//! ```text
//! rank 3
//! basis one s s2
//! mul 0 0 : 1 0 0
//! mul 0 1 : 0 1 0
//! ...
//! omega: 1 -3 6
//! comega: 2 -3 3
//! hyperplane: 1 1 0
//! wedgeW 0 : 1 0 0 0 0 0 0 0 0
//! r: 3
//! ```
//!
//! One `mul i j` line is required for every `i <= j`. Basis element 0 is the
//! unit. `wedgeW` vectors live in the tensor square (length `d²`, row-major).
//! `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use super::sparse::{self, Coords};
use super::{KSurfaceModel, RingError, RingModel};
use crate::scalar::Scalar;

/// Contents of a model file.
#[derive(Debug, Clone)]
pub struct ParsedModel<T: Scalar> {
    pub ring: Arc<RingModel<T>>,
    /// Present when the file carries surface data (`omega:` and friends).
    pub surface: Option<KSurfaceModel<T>>,
}

fn perr(line: usize, message: impl Into<String>) -> RingError {
    RingError::Parse { line, message: message.into() }
}

fn ints<T: Scalar>(line: usize, text: &str) -> Result<Vec<T>, RingError> {
    text.split_whitespace()
        .map(|tok| {
            let v = num_bigint::BigInt::from_str(tok).map_err(|_| perr(line, format!("bad integer `{tok}`")))?;
            T::from_bigint(&v).ok_or_else(|| perr(line, format!("integer `{tok}` out of range")))
        })
        .collect()
}

fn index(line: usize, tok: Option<&str>) -> Result<usize, RingError> {
    let tok = tok.ok_or_else(|| perr(line, "missing index"))?;
    tok.parse().map_err(|_| perr(line, format!("bad index `{tok}`")))
}

pub fn parse_model_file<T: Scalar>(text: &str) -> Result<ParsedModel<T>, RingError> {
    let mut rank: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut table: BTreeMap<(usize, usize), Vec<T>> = BTreeMap::new();
    let mut omega = None;
    let mut comega = None;
    let mut hyperplane = None;
    let mut wedge: BTreeMap<usize, Vec<T>> = BTreeMap::new();
    let mut r: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, tail) = match body.split_once(':') {
            Some((h, t)) => (h.trim(), Some(t.trim())),
            None => (body, None),
        };
        let mut words = head.split_whitespace();
        let key = words.next().unwrap_or("");
        match (key, tail) {
            ("rank", None) => {
                let d = index(ln, words.next())?;
                if d == 0 {
                    return Err(perr(ln, "rank must be positive"));
                }
                rank = Some(d);
            }
            ("basis", None) => basis = Some(words.by_ref().map(str::to_string).collect()),
            ("mul", Some(t)) => {
                let i = index(ln, words.next())?;
                let j = index(ln, words.next())?;
                if i > j {
                    return Err(perr(ln, "mul lines need i <= j"));
                }
                if table.insert((i, j), ints(ln, t)?).is_some() {
                    return Err(perr(ln, format!("duplicate mul {i} {j}")));
                }
            }
            ("omega", Some(t)) => omega = Some(ints(ln, t)?),
            ("comega", Some(t)) => comega = Some(ints(ln, t)?),
            ("hyperplane", Some(t)) => hyperplane = Some(ints(ln, t)?),
            ("wedgeW", Some(t)) => {
                let k = index(ln, words.next())?;
                if wedge.insert(k, ints(ln, t)?).is_some() {
                    return Err(perr(ln, format!("duplicate wedgeW {k}")));
                }
            }
            ("r", Some(t)) => r = Some(index(ln, Some(t))?),
            _ => return Err(perr(ln, format!("unknown key `{key}`"))),
        }
        if key != "basis" && key != "rank" && key != "mul" && key != "wedgeW" && words.next().is_some() {
            return Err(perr(ln, "unexpected tokens before `:`"));
        }
    }

    let d = rank.ok_or_else(|| perr(0, "missing `rank` line"))?;
    let basis = basis.unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
    if basis.len() != d {
        return Err(perr(0, format!("basis has {} names, rank is {d}", basis.len())));
    }
    let mut unit = vec![T::zero(); d];
    unit[0] = T::one();
    let ring = Arc::new(RingModel::from_table(basis, &table, unit)?);

    let vec_of = |v: Vec<T>, len: usize, what: &str| -> Result<Coords<T>, RingError> {
        if v.len() != len {
            return Err(perr(0, format!("{what} has length {}, expected {len}", v.len())));
        }
        Ok(sparse::from_dense(&v))
    };
    let any_surface = omega.is_some() || comega.is_some() || !wedge.is_empty() || r.is_some();
    let surface = if any_surface {
        let omega = vec_of(omega.ok_or_else(|| perr(0, "missing omega"))?, d, "omega")?;
        let comega = vec_of(comega.ok_or_else(|| perr(0, "missing comega"))?, d, "comega")?;
        let hyperplane = hyperplane.map(|h| vec_of(h, d, "hyperplane")).transpose()?;
        let r = r.ok_or_else(|| perr(0, "missing r"))?;
        if wedge.keys().copied().ne(0..wedge.len()) {
            return Err(perr(0, "wedgeW indices must be 0..r-1"));
        }
        let ws = wedge
            .into_values()
            .map(|w| vec_of(w, d * d, "wedgeW"))
            .collect::<Result<Vec<_>, _>>()?;
        Some(KSurfaceModel::new(ring.clone(), omega, comega, hyperplane, ws, r)?)
    } else {
        if hyperplane.is_some() {
            return Err(perr(0, "hyperplane given without surface data"));
        }
        None
    };
    Ok(ParsedModel { ring, surface })
}

fn dense_line<T: Scalar>(c: &[(usize, T)], len: usize) -> String {
    sparse::to_dense(c, len).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Serializes a table model (and optional surface data) in the file format.
pub fn write_model_file<T: Scalar>(
    ring: &RingModel<T>,
    surface: Option<&KSurfaceModel<T>>,
) -> Result<String, RingError> {
    if ring.tensor_factors().is_some() {
        return Err(RingError::Shape("tensor powers are not written as files".into()));
    }
    let d = ring.rank();
    let mut out = String::new();
    let _ = writeln!(out, "rank {d}");
    let names: Vec<String> = (0..d).map(|i| ring.basis_name(i)).collect();
    let _ = writeln!(out, "basis {}", names.join(" "));
    for i in 0..d {
        for j in i..d {
            let _ = writeln!(out, "mul {i} {j} : {}", dense_line(&ring.basis_product(i, j), d));
        }
    }
    if let Some(s) = surface {
        let _ = writeln!(out, "omega: {}", dense_line(s.omega(), d));
        let _ = writeln!(out, "comega: {}", dense_line(s.c_omega(), d));
        if let Some(h) = s.hyperplane() {
            let _ = writeln!(out, "hyperplane: {}", dense_line(h, d));
        }
        for (k, w) in s.wedge_w().iter().enumerate() {
            let _ = writeln!(out, "wedgeW {k} : {}", dense_line(w, d * d));
        }
        let _ = writeln!(out, "r: {}", s.r());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffrings::builtin_kp2;
    use num_bigint::BigInt;

    #[test]
    fn kp2_roundtrip() {
        let k = builtin_kp2();
        let text = write_model_file(k.ring(), Some(&k)).unwrap();
        let parsed: ParsedModel<BigInt> = parse_model_file(&text).unwrap();
        assert_eq!(*parsed.ring, **k.ring());
        assert_eq!(parsed.surface.unwrap(), k);
    }

    #[test]
    fn shipped_kp2_file_matches_builtin() {
        let parsed: ParsedModel<BigInt> = parse_model_file(include_str!("../../data/kp2.ring")).unwrap();
        assert_eq!(parsed.surface.unwrap(), builtin_kp2());
    }

    #[test]
    fn plain_ring() {
        let text = "# integers\nrank 1\nbasis one\nmul 0 0 : 1\n";
        let parsed: ParsedModel<i64> = parse_model_file(text).unwrap();
        assert_eq!(parsed.ring.rank(), 1);
        assert!(parsed.surface.is_none());
    }

    #[test]
    fn unknown_key_is_an_error() {
        let text = "rank 1\nmul 0 0 : 1\ncolour: 3\n";
        let err = parse_model_file::<i64>(text).unwrap_err();
        assert_eq!(err, RingError::Parse { line: 3, message: "unknown key `colour`".into() });
    }

    #[test]
    fn missing_product_is_an_error() {
        let text = "rank 2\nmul 0 0 : 1 0\nmul 0 1 : 0 1\n";
        assert!(parse_model_file::<i64>(text).is_err());
    }

    #[test]
    fn partial_surface_data_is_an_error() {
        let text = "rank 1\nmul 0 0 : 1\nomega: 1\n";
        assert!(parse_model_file::<i64>(text).is_err());
    }
}
