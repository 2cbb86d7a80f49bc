//! Generator fixture files.
//!
//! ```text
//! # comment
//! p=2 n=5
//! 11000|00101
//! ```

use crate::error::{Error, Result};
use crate::field::Field;
use crate::pauli::PauliVector;

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub field: Field,
    pub n: usize,
    pub generators: Vec<PauliVector>,
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut header: Option<(Field, usize)> = None;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        match header {
            None => header = Some(parse_header(line).map_err(err)?),
            Some((field, n)) => {
                let v = PauliVector::parse(field, line).map_err(|e| err(e.to_string()))?;
                if v.n() != n {
                    return Err(err(format!("generator has {} sites, header says n={n}", v.n())));
                }
                generators.push(v);
            }
        }
    }
    let (field, n) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing 'p=<2|3> n=<int>' header".into(),
    })?;
    if generators.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "fixture lists no generators".into(),
        });
    }
    Ok(Fixture { field, n, generators })
}

fn parse_header(line: &str) -> std::result::Result<(Field, usize), String> {
    let mut p = None;
    let mut n = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("p", v)) => p = Some(v.parse::<u32>().map_err(|e| format!("bad p: {e}"))?),
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|e| format!("bad n: {e}"))?),
            _ => return Err(format!("unexpected header token {tok:?}")),
        }
    }
    let field = Field::new(p.ok_or("header lacks p=")?).map_err(|e| e.to_string())?;
    let n = n.ok_or("header lacks n=")?;
    if n == 0 {
        return Err("n must be positive".into());
    }
    Ok((field, n))
}

pub fn format_fixture(field: Field, generators: &[PauliVector]) -> String {
    let n = generators.first().map(PauliVector::n).unwrap_or(0);
    let mut out = format!("p={} n={n}\n", field.order());
    for g in generators {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
