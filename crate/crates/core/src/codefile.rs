//! Line-oriented text serialization of verified codes.
//!
//! ```text
//! name: five
//! version: 0.1.0
//! p: 2
//! n: 5
//! rank: 4
//! k: 1
//! distance: exact 3
//! gen: 11000|00101
//! logical: 10010|00000 00000|11000
//! ```
//!
//! Loading rebuilds the code from its generators and re-verifies rank, k and
//! the stored logical pairs.

use crate::code::{DistanceRecord, StabilizerCode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pauli::PauliVector;
use crate::symplectic::LogicalPair;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

fn format_distance(d: DistanceRecord) -> String {
    match d {
        DistanceRecord::Unknown => "unknown".into(),
        DistanceRecord::Exact(d) => format!("exact {d}"),
        DistanceRecord::LowerBound {
            at_least,
            claimed: None,
        } => format!("at_least {at_least}"),
        DistanceRecord::LowerBound {
            at_least,
            claimed: Some(c),
        } => format!("at_least {at_least} claimed {c}"),
    }
}

fn parse_distance(s: &str) -> std::result::Result<DistanceRecord, String> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let num = |t: &str| t.parse::<usize>().map_err(|e| format!("bad distance {t:?}: {e}"));
    match toks.as_slice() {
        ["unknown"] => Ok(DistanceRecord::Unknown),
        ["exact", d] => Ok(DistanceRecord::Exact(num(d)?)),
        ["at_least", a] => Ok(DistanceRecord::LowerBound {
            at_least: num(a)?,
            claimed: None,
        }),
        ["at_least", a, "claimed", c] => Ok(DistanceRecord::LowerBound {
            at_least: num(a)?,
            claimed: Some(num(c)?),
        }),
        _ => Err(format!("unrecognized distance record {s:?}")),
    }
}

pub fn to_code_file(code: &StabilizerCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", code.name()));
    out.push_str(&format!("version: {TOOLKIT_VERSION}\n"));
    out.push_str(&format!("p: {}\n", code.field().order()));
    out.push_str(&format!("n: {}\n", code.n()));
    out.push_str(&format!("rank: {}\n", code.rank()));
    out.push_str(&format!("k: {}\n", code.k()));
    out.push_str(&format!("distance: {}\n", format_distance(code.distance())));
    for g in code.generators() {
        out.push_str(&format!("gen: {g}\n"));
    }
    for l in code.logicals() {
        out.push_str(&format!("logical: {} {}\n", l.x, l.z));
    }
    out
}

pub fn from_code_file(text: &str) -> Result<StabilizerCode> {
    let mut name = None;
    let mut field = None;
    let mut n = None;
    let mut rank = None;
    let mut k = None;
    let mut distance = DistanceRecord::Unknown;
    let mut gens = Vec::new();
    let mut logicals = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected 'key: value', got {line:?}")))?;
        let value = value.trim();
        let int = |v: &str| v.parse::<usize>().map_err(|e| err(format!("bad integer {v:?}: {e}")));
        let need_field = || field.ok_or_else(|| err("'p:' must precede vectors".into()));
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "version" => {}
            "p" => {
                let p = value.parse::<u32>().map_err(|e| err(format!("bad p: {e}")))?;
                field = Some(Field::new(p).map_err(|e| err(e.to_string()))?);
            }
            "n" => n = Some(int(value)?),
            "rank" => rank = Some(int(value)?),
            "k" => k = Some(int(value)?),
            "distance" => distance = parse_distance(value).map_err(err)?,
            "gen" => gens.push(PauliVector::parse(need_field()?, value).map_err(|e| err(e.to_string()))?),
            "logical" => {
                let f = need_field()?;
                let (x, z) = value
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("logical needs two vectors".into()))?;
                let x = PauliVector::parse(f, x.trim()).map_err(|e| err(e.to_string()))?;
                let z = PauliVector::parse(f, z.trim()).map_err(|e| err(e.to_string()))?;
                logicals.push(LogicalPair { x, z });
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let missing = |what: &str| Error::Parse {
        line: 0,
        msg: format!("code file lacks '{what}:'"),
    };
    let name = name.ok_or_else(|| missing("name"))?;
    field.ok_or_else(|| missing("p"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    if gens.is_empty() {
        return Err(missing("gen"));
    }
    if gens.iter().any(|g| g.n() != n) {
        return Err(Error::Verification(format!("generator length differs from n = {n}")));
    }
    let mut code = StabilizerCode::new(name, gens)?;
    if rank.is_some_and(|r| r != code.rank()) || k.is_some_and(|k| k != code.k()) {
        return Err(Error::Verification(format!(
            "stored rank/k disagree with the generators (rank {}, k {})",
            code.rank(),
            code.k()
        )));
    }
    if !logicals.is_empty() {
        code = code.with_logicals(logicals)?;
    }
    Ok(code.with_distance(distance))
}
