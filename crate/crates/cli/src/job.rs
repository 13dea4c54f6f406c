//! JSON job files.
//!
//! ```json
//! {"command": "periods", "d": 2, "coeffs": [["1", "1"]], "initials": [["1", "0"]],
//!  "range": [1, 30], "options": {"mult": 2}}
//! ```
//! Each field element is an `[a, b]` pair of rational strings for `a + b sqrt d`.

use std::collections::BTreeMap;

use cfperiod_core::places::{places_above, real_places, Place};
use cfperiod_core::recurrence::LinRec;
use cfperiod_core::{QuadElem, QuadField, Rational};
use serde::Deserialize;
use serde_json::Value as Json;

use crate::parse::parse_rational;
use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    pub d: i64,
    pub coeffs: Vec<[String; 2]>,
    pub initials: Vec<[String; 2]>,
    #[serde(default)]
    pub range: Option<[i64; 2]>,
    #[serde(default)]
    pub options: BTreeMap<String, Json>,
}

impl JobSpec {
    pub fn from_json(src: &str) -> Result<JobSpec, CliError> {
        serde_json::from_str(src).map_err(|e| {
            let (line, column) = (e.line().max(1), e.column().max(1));
            CliError::Parse(crate::parse::ParseError { line, column, message: format!("job file: {e}") })
        })
    }

    pub fn field(&self) -> Result<QuadField, CliError> {
        Ok(QuadField::new(self.d)?)
    }

    fn elem(&self, k: QuadField, pair: &[String; 2], what: &str) -> Result<QuadElem, CliError> {
        let part = |s: &str| {
            parse_rational(s).map_err(|e| CliError::Usage(format!("{what}: cannot parse {s:?}: {}", e.message)))
        };
        Ok(k.elem(part(&pair[0])?, part(&pair[1])?))
    }

    pub fn recurrence(&self) -> Result<LinRec, CliError> {
        let k = self.field()?;
        let coeffs = self.coeffs.iter().map(|p| self.elem(k, p, "coeffs")).collect::<Result<Vec<_>, _>>()?;
        let initials = self.initials.iter().map(|p| self.elem(k, p, "initials")).collect::<Result<Vec<_>, _>>()?;
        Ok(LinRec::new(k, coeffs, initials)?)
    }

    pub fn range(&self) -> Result<(i64, i64), CliError> {
        match self.range {
            Some([a, b]) if a <= b => Ok((a, b)),
            Some([a, b]) => Err(CliError::Usage(format!("empty range [{a}, {b}]"))),
            None => Err(CliError::Usage("job needs a \"range\": [n0, n1]".into())),
        }
    }

    pub fn option_str(&self, key: &str) -> Option<String> {
        match self.options.get(key)? {
            Json::String(s) => Some(s.clone()),
            other => Some(other.to_string()),
        }
    }

    pub fn option_rational(&self, key: &str) -> Result<Option<Rational>, CliError> {
        match self.option_str(key) {
            None => Ok(None),
            Some(s) => parse_rational(&s)
                .map(Some)
                .map_err(|e| CliError::Usage(format!("option {key}: cannot parse {s:?}: {}", e.message))),
        }
    }

    pub fn option_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.options.get(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(Some).ok_or_else(|| CliError::Usage(format!("option {key} must be a nonnegative integer"))),
        }
    }

    /// `"real:1"`, `"real:2"`, `"p:7"` or `"p:7:2"` (second place above 7).
    pub fn place(&self) -> Result<Place, CliError> {
        let spec = self.option_str("place").ok_or_else(|| CliError::Usage("growth job needs options.place".into()))?;
        parse_place(&spec, self.field()?)
    }
}

pub fn parse_place(spec: &str, k: QuadField) -> Result<Place, CliError> {
    let bad = || CliError::Usage(format!("place {spec:?}: expected real:1, real:2, p:P or p:P:I"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["real", e] => {
            let e: usize = e.parse().map_err(|_| bad())?;
            real_places(k).into_iter().nth(e.wrapping_sub(1)).ok_or_else(bad)
        }
        ["p", p] | ["p", p, _] => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            let i: usize = match parts.get(2) {
                Some(i) => i.parse().map_err(|_| bad())?,
                None => 1,
            };
            let places = places_above(p, k)?;
            let n = places.len();
            places
                .into_iter()
                .nth(i.wrapping_sub(1))
                .ok_or_else(|| CliError::Usage(format!("place {spec:?}: only {n} place(s) above {p}")))
        }
        _ => Err(bad()),
    }
}
