use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use qortho::builder::{self, DEFAULT_MAX_QR_PRIME};
use qortho::codefile::from_code_file;
use qortho::{min_weight_logical, DistanceRecord, MinWeight, SearchBudget, StabilizerCode};

/// Default ceiling on the distance search weight when none is given. Higher
/// weights are available with `--w-max`.
pub const DEFAULT_SEARCH_WEIGHT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSelector {
    Five,
    EightThree,
    TenFour,
    /// Plain duplication without the Clifford twist, kept for comparison.
    TenFourLiteral,
    Qr(Option<u64>),
    Mpc(PathBuf),
    File(PathBuf),
}

impl FromStr for CodeSelector {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("five", None) => CodeSelector::Five,
            ("eight-three", None) => CodeSelector::EightThree,
            ("ten-four", None) => CodeSelector::TenFour,
            ("ten-four-literal", None) => CodeSelector::TenFourLiteral,
            ("qr", None) => CodeSelector::Qr(None),
            ("qr", Some(p)) => CodeSelector::Qr(Some(p.parse().with_context(|| format!("bad prime {p:?}"))?)),
            ("mpc", Some(path)) => CodeSelector::Mpc(path.into()),
            ("file", Some(path)) => CodeSelector::File(path.into()),
            _ => bail!(
                "unknown code {s:?}; expected five, eight-three, ten-four, ten-four-literal, qr:<p>, mpc:<fixture> or file:<code file>"
            ),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SelectOptions {
    /// Prime for a bare `qr` selector.
    pub prime: Option<u64>,
    pub max_prime: u64,
    /// Distance search weight; defaults to the claimed distance capped by
    /// [`DEFAULT_SEARCH_WEIGHT`] and the budget.
    pub w_max: Option<usize>,
    pub budget: SearchBudget,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions {
            prime: None,
            max_prime: DEFAULT_MAX_QR_PRIME,
            w_max: None,
            budget: SearchBudget::default(),
        }
    }
}

/// Build (or load) and verify the selected code, then settle its distance
/// record if it is not already known.
pub fn load_code(sel: &CodeSelector, opts: &SelectOptions) -> Result<StabilizerCode> {
    let (code, claimed) = match sel {
        CodeSelector::Five => (builder::five_qubit()?, None),
        CodeSelector::EightThree => (builder::eight_three(builder::eight_three_fixture())?, None),
        CodeSelector::TenFour => (builder::ten_four()?, None),
        CodeSelector::TenFourLiteral => (builder::ten_four_literal()?, None),
        CodeSelector::Qr(p) => {
            let prime = p.or(opts.prime).context("qr needs a prime: use qr:<p> or --prime")?;
            (
                builder::quadratic_residue_code(prime, opts.max_prime)?,
                builder::qr_claimed_distance(prime),
            )
        }
        CodeSelector::Mpc(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let fx = builder::parse_fixture(&text)?;
            let name = path
                .file_stem()
                .map_or("mpc".into(), |s| s.to_string_lossy().into_owned());
            (StabilizerCode::new(name, fx.generators)?, None)
        }
        CodeSelector::File(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (from_code_file(&text)?, None)
        }
    };
    code.verify()?;
    settle_distance(code, claimed, opts)
}

fn settle_distance(code: StabilizerCode, claimed: Option<usize>, opts: &SelectOptions) -> Result<StabilizerCode> {
    let current = code.distance();
    let needs_search = match current {
        DistanceRecord::Unknown => true,
        DistanceRecord::Exact(_) => false,
        DistanceRecord::LowerBound { at_least, .. } => opts.w_max.is_some_and(|w| w >= at_least),
    };
    if !needs_search || code.k() == 0 {
        return Ok(code);
    }
    let w_max = opts.w_max.unwrap_or_else(|| {
        claimed
            .unwrap_or(code.n())
            .min(DEFAULT_SEARCH_WEIGHT)
            .min(opts.budget.max_weight(&code))
            .max(1)
    });
    let found = min_weight_logical(&code, w_max, opts.budget)?;
    let claimed = claimed.or(match current {
        DistanceRecord::LowerBound { claimed, .. } => claimed,
        _ => None,
    });
    if let (MinWeight::Exact { d, .. }, Some(c)) = (&found, claimed) {
        if *d < c {
            eprintln!(
                "warning: {} has a logical of weight {d}, below the claimed distance {c}",
                code.name()
            );
        }
    }
    let record = found.record(claimed);
    Ok(code.with_distance(record))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_parse() {
        assert_eq!("qr:13".parse::<CodeSelector>().unwrap(), CodeSelector::Qr(Some(13)));
        assert_eq!("qr".parse::<CodeSelector>().unwrap(), CodeSelector::Qr(None));
        assert_eq!(
            "file:a/b.code".parse::<CodeSelector>().unwrap(),
            CodeSelector::File("a/b.code".into())
        );
        assert!("seven".parse::<CodeSelector>().is_err());
        assert!("qr:x".parse::<CodeSelector>().is_err());
    }

    #[test]
    fn qr13_distance_is_settled_exactly() {
        let code = load_code(&CodeSelector::Qr(Some(13)), &SelectOptions::default()).unwrap();
        assert_eq!(code.distance(), DistanceRecord::Exact(5));
    }
}
