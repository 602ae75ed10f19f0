//! Shared text formatting for the CSV and JSON surfaces.

use std::io::BufRead;

use crate::error::{FracError, Result};

/// 17 significant digits, `.` decimal separator, exponent form.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_f64(field: &str) -> Result<f64> {
    let field = field.trim();
    field
        .parse::<f64>()
        .map_err(|_| FracError::Parse(format!("not a number: {field:?}")))
}

/// Reads a `# key=value,key=value` metadata line.
pub(crate) fn read_metadata<R: BufRead>(reader: &mut R) -> Result<Vec<(String, String)>> {
    let mut line = String::new();
    reader.read_line(&mut line)?;
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| FracError::Parse("missing '# key=value' metadata line".into()))?;
    body.split(',')
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| FracError::Parse(format!("bad metadata entry {pair:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub(crate) fn metadata_value<'a>(meta: &'a [(String, String)], key: &str) -> Result<&'a str> {
    meta.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| FracError::Parse(format!("metadata is missing {key:?}")))
}

/// Header row `prefix,re_0,im_0,...,re_{d-1},im_{d-1}`.
pub(crate) fn component_header(first: &str, dim: usize) -> Vec<String> {
    let mut header = vec![first.to_string()];
    for i in 0..dim {
        header.push(format!("re_{i}"));
        header.push(format!("im_{i}"));
    }
    header
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trips() {
        for &x in &[0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -0.0] {
            let s = fmt_f64(x);
            assert_eq!(parse_f64(&s).unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn metadata_parse() {
        let mut r = "# rho=2,dim=3\nrest".as_bytes();
        let meta = read_metadata(&mut r).unwrap();
        assert_eq!(metadata_value(&meta, "dim").unwrap(), "3");
        assert!(metadata_value(&meta, "alpha").is_err());
        let mut bad = "rho=2\n".as_bytes();
        assert!(read_metadata(&mut bad).is_err());
    }
}
