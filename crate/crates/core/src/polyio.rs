//! Text format for polynomials: the modulus on the first line, then the
//! coefficients from degree 0 upwards separated by single spaces, each line
//! ending in a newline. An empty second line is the zero polynomial.

use std::path::Path;

use crate::error::{Error, Result};
use crate::ff::Elem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFile {
    pub modulus: u64,
    pub coeffs: Vec<Elem>,
}

fn parse_u64(tok: &str, what: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|e| Error::Parse(format!("{what} {tok:?}: {e}")))
}

/// Parses one record. Coefficients must be canonical residues.
pub fn parse(text: &str) -> Result<PolyFile> {
    let mut records = parse_many(text)?;
    match records.len() {
        1 => Ok(records.pop().unwrap()),
        k => Err(Error::Parse(format!("expected one polynomial, found {k}"))),
    }
}

/// Parses a sequence of records written back to back.
pub fn parse_many(text: &str) -> Result<Vec<PolyFile>> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() || lines.len() % 2 != 0 {
        return Err(Error::Parse(format!("expected modulus/coefficient line pairs, found {} lines", lines.len())));
    }
    lines
        .chunks(2)
        .map(|pair| {
            let modulus = parse_u64(pair[0].trim(), "modulus")?;
            let coeffs = pair[1]
                .split_whitespace()
                .map(|t| {
                    let x = parse_u64(t, "coefficient")?;
                    if x >= modulus {
                        return Err(Error::Parse(format!("coefficient {x} is not reduced modulo {modulus}")));
                    }
                    Ok(x)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PolyFile { modulus, coeffs })
        })
        .collect()
}

/// Formats one record, newline-terminated.
pub fn format(modulus: u64, coeffs: &[Elem]) -> String {
    let body: Vec<String> = coeffs.iter().map(u64::to_string).collect();
    format!("{modulus}\n{}\n", body.join(" "))
}

pub fn read(path: &Path) -> Result<PolyFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}
