//! Named built-in models.
//!
//! `flat-kahler:N` (alias `cN`), `s6[:SCALE]`, `s3s3[:SCALE]`,
//! `twistor:N:KAPPA` and `product:A,B`. The product splits at the first
//! comma, so only the second factor may itself be a product.

use super::{flat_kahler, product, s3s3, s6_scaled, NKModel};
use crate::error::{Error, Result};
use crate::twistor::build_twistor_model;

fn parse_num<T: std::str::FromStr>(s: &str, what: &str, name: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad {what} `{s}` in model name `{name}`")))
}

fn positive(s: Option<&str>, name: &str) -> Result<f64> {
    let v: f64 = match s {
        None => 1.0,
        Some(s) => parse_num(s, "scale", name)?,
    };
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Parse(format!("scale must be positive in `{name}`")));
    }
    Ok(v)
}

pub fn resolve(name: &str) -> Result<NKModel> {
    let name = name.trim();
    let (head, rest) = match name.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (name, None),
    };
    match head {
        "flat-kahler" => {
            let n: usize = parse_num(rest.unwrap_or(""), "dimension", name)?;
            flat(n, name)
        }
        "s6" => {
            let s = positive(rest, name)?;
            Ok(s6_scaled(s))
        }
        "s3s3" => {
            let s = positive(rest, name)?;
            Ok(s3s3(s))
        }
        "twistor" => {
            let (n, k) = rest
                .and_then(|r| r.split_once(':'))
                .ok_or_else(|| Error::Parse(format!("expected twistor:N:KAPPA, got `{name}`")))?;
            let n: usize = parse_num(n, "quaternionic dimension", name)?;
            let k: f64 = parse_num(k, "kappa", name)?;
            Ok(build_twistor_model(n, k)?.model)
        }
        "product" => {
            let (a, b) = rest
                .and_then(|r| r.split_once(','))
                .ok_or_else(|| Error::Parse(format!("expected product:A,B, got `{name}`")))?;
            Ok(product(&resolve(a)?, &resolve(b)?))
        }
        _ if rest.is_none() && head.len() > 1 && head.starts_with('c') => {
            let n: usize = parse_num(&head[1..], "dimension", name)?;
            flat(n, name)
        }
        _ => Err(Error::Parse(format!("unknown model `{name}`"))),
    }
}

/// A registry name, or a path to a model file (anything ending in `.json`
/// or naming an existing file).
pub fn load_model(source: &str) -> Result<NKModel> {
    let path = std::path::Path::new(source);
    if source.ends_with(".json") || path.is_file() {
        return NKModel::from_json(&std::fs::read_to_string(path)?);
    }
    resolve(source)
}

fn flat(n: usize, name: &str) -> Result<NKModel> {
    if n == 0 {
        return Err(Error::Parse(format!("flat model needs n ≥ 1 in `{name}`")));
    }
    Ok(flat_kahler(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in [
            "flat-kahler:3",
            "s6",
            "s6:2",
            "s3s3",
            "s3s3:0.5",
            "twistor:2:1",
            "product:s6,s6:2",
        ] {
            let m = resolve(n).unwrap();
            assert_eq!(m.name(), n);
            assert_eq!(resolve(m.name()).unwrap().a(), m.a());
        }
    }

    #[test]
    fn aliases_and_dimensions() {
        assert_eq!(resolve("c1").unwrap().name(), "flat-kahler:1");
        assert_eq!(resolve("product:c1,s6").unwrap().dim(), 8);
        assert_eq!(resolve("twistor:3:0.5").unwrap().dim(), 14);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_model("/nonexistent/model.json"),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn bad_names() {
        for n in [
            "",
            "s7",
            "s6:-1",
            "s6:x",
            "flat-kahler:0",
            "c",
            "twistor:2",
            "product:s6",
            "cx",
        ] {
            assert!(matches!(resolve(n), Err(Error::Parse(_))), "{n}");
        }
    }
}
