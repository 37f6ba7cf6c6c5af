//! Germ files: `Ψ` at a point as a list of coefficient matrices by ascending
//! degree, entries written as Gaussian rationals.

use std::path::Path;

use matdiv_core::divisor::DivisorGerm;
use matdiv_core::liecore::{build_realization, Family, ModuleTag};
use matdiv_core::{Matrix, Scalar, TruncatedMatrixSeries};
use serde::Deserialize;

use crate::scene::PointText;
use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermFile {
    pub family: String,
    pub rank: usize,
    #[serde(default)]
    pub module: Option<String>,
    #[serde(default)]
    pub point: Option<PointText>,
    /// Degree of the first matrix in `coeffs`.
    #[serde(default)]
    pub valuation: i64,
    /// Number of known terms from `valuation` on; `null` marks an exact
    /// (polynomial) germ, absent means `coeffs.len()`.
    #[serde(default, deserialize_with = "present")]
    pub precision: Option<Option<usize>>,
    pub coeffs: Vec<Vec<Vec<EntryText>>>,
}

fn present<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Option<usize>>, D::Error> {
    Option::<usize>::deserialize(d).map(Some)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EntryText {
    Int(i64),
    Text(String),
}

pub fn load_germ(path: &Path, precision_cap: Option<usize>) -> Result<DivisorGerm, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_germ(&text, precision_cap).map_err(|e| e.in_file(path))
}

pub fn parse_germ(text: &str, precision_cap: Option<usize>) -> Result<DivisorGerm, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: GermFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        CliError::input(format!(
            "line {}, column {}: at `{}`: {}",
            inner.line(),
            inner.column(),
            e.path(),
            inner
        ))
    })?;
    let family: Family = file.family.parse().map_err(CliError::from_core)?;
    let module = match &file.module {
        Some(m) => m.parse::<ModuleTag>().map_err(CliError::from_core)?,
        None => ModuleTag::Defining,
    };
    let r = build_realization(family, file.rank, module).map_err(CliError::from_core)?;
    let n = file.coeffs.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(CliError::input("coeffs must hold at least one nonempty matrix"));
    }
    if n != r.module_dim() {
        return Err(CliError::input(format!(
            "{} acts on dimension {}, but the coefficients are {n}×{n}",
            r.tag(),
            r.module_dim()
        )));
    }
    let mut mats = Vec::with_capacity(file.coeffs.len());
    for (d, m) in file.coeffs.iter().enumerate() {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(CliError::input(format!("coeffs[{d}] is not a {n}×{n} matrix")));
        }
        let rows = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| match e {
                        EntryText::Int(k) => Ok(Scalar::from(*k)),
                        EntryText::Text(s) => s
                            .parse()
                            .map_err(|err| CliError::input(format!("coeffs[{d}][{i}][{j}]: {err}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        mats.push(Matrix::from_rows(n, rows));
    }
    let known = match file.precision {
        None => Some(mats.len()),
        Some(p) => p,
    };
    let known = match (known, precision_cap) {
        (Some(k), Some(c)) => Some(k.min(c)),
        (None, Some(c)) => Some(c),
        (k, None) => k,
    };
    let psi = match known {
        None => TruncatedMatrixSeries::exact(file.valuation, mats),
        Some(k) => {
            if k < mats.len() {
                mats.truncate(k);
            }
            if mats.is_empty() {
                return Err(CliError::input("precision 0 leaves no known terms"));
            }
            TruncatedMatrixSeries::new(n, n, file.valuation, mats, file.valuation + k as i64)
        }
    };
    let point = match &file.point {
        None => Scalar::from(0),
        Some(PointText::Int(k)) => Scalar::from(*k),
        Some(PointText::Text(s)) => s.parse().map_err(CliError::from_core)?,
    };
    Ok(DivisorGerm::new(family, psi).map_err(CliError::from_core)?.at(point))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_germ() {
        let g = parse_germ(
            r#"{"family": "A", "rank": 1, "valuation": 0, "precision": 6,
                "coeffs": [[[0, 1], [0, 0]], [[1, 0], [0, 1]]]}"#,
            None,
        )
        .unwrap();
        assert_eq!(g.psi().precision(), Some(6));
        assert_eq!(g.module_dim(), 2);
    }

    #[test]
    fn exact_and_capped() {
        let text = r#"{"family": "A", "rank": 1, "precision": null, "coeffs": [[["1/2+i", 0], [0, 1]]]}"#;
        assert!(parse_germ(text, None).unwrap().psi().is_exact());
        assert_eq!(parse_germ(text, Some(3)).unwrap().psi().precision(), Some(3));
    }

    #[test]
    fn bad_entries_are_located() {
        let err = parse_germ(r#"{"family": "A", "rank": 1, "coeffs": [[["zz", 0], [0, 1]]]}"#, None).unwrap_err();
        assert!(err.to_string().contains("coeffs[0][0][0]"));
    }
}
