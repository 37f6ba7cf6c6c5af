//! Scene files: an algebra, marked points with their grading elements, a
//! divisor `D` on other points and a few run options.

use std::path::Path;

use matdiv_core::grading::ModuliMode;
use matdiv_core::lax::SurfaceConfig;
use matdiv_core::liecore::{build_realization, CoweightH, Family, ModuleTag, RootSystemRealization};
use matdiv_core::Scalar;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: String,
    pub rank: usize,
    #[serde(default = "default_module")]
    pub module: String,
}

fn default_module() -> String {
    "defining".into()
}

/// A point written as a JSON integer or as text such as `"1/2+3i"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PointText {
    Int(i64),
    Text(String),
}

impl PointText {
    fn parse(&self) -> Result<Scalar, String> {
        match self {
            PointText::Int(k) => Ok(Scalar::from(*k)),
            PointText::Text(s) => s.parse().map_err(|e| format!("{e}")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GammaSpec {
    pub point: PointText,
    /// Values `α_i(h)` on the simple roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<i64>>,
    /// Explicit coordinates of `h` in the `ε` basis, e.g. `[1, -1]` for `diag(1, -1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PiSpec {
    pub point: PointText,
    pub mult: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The file as written. The algebra may be nested under `algebra` or given
/// as top-level `family`, `rank`, `module`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, alias = "points")]
    pub gammas: Vec<GammaSpec>,
    #[serde(default)]
    pub pis: Vec<PiSpec>,
    #[serde(default, alias = "genus", skip_serializing_if = "Option::is_none")]
    pub genus_for_formulas: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default)]
    pub options: Options,
}

impl SceneFile {
    /// Canonical form: nested algebra, flat fields cleared.
    pub fn canonical(&self) -> Result<SceneFile, CliError> {
        let mut out = self.clone();
        out.algebra = Some(self.algebra_spec()?);
        out.family = None;
        out.rank = None;
        out.module = None;
        Ok(out)
    }

    fn algebra_spec(&self) -> Result<AlgebraSpec, CliError> {
        match (&self.algebra, &self.family, self.rank) {
            (Some(a), None, None) => Ok(a.clone()),
            (None, Some(f), Some(r)) => Ok(AlgebraSpec {
                family: f.clone(),
                rank: r,
                module: self.module.clone().unwrap_or_else(default_module),
            }),
            (Some(_), _, _) => Err(CliError::input("give the algebra either nested or flat, not both")),
            _ => Err(CliError::input("missing algebra: expected `algebra` or `family` and `rank`")),
        }
    }
}

/// A validated scene.
#[derive(Clone, Debug)]
pub struct Scene {
    pub file: SceneFile,
    pub realization: RootSystemRealization,
    pub gammas: Vec<(Scalar, CoweightH)>,
    pub pis: Vec<(Scalar, usize)>,
    pub genus: Option<i64>,
    pub mode: Option<ModuliMode>,
    pub config: SurfaceConfig,
}

impl Scene {
    pub fn hs(&self) -> Vec<CoweightH> {
        self.gammas.iter().map(|(_, h)| h.clone()).collect()
    }
}

pub fn load_scene(path: &Path) -> Result<Scene, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_scene(&text).map_err(|e| e.in_file(path))
}

pub fn parse_scene(text: &str) -> Result<Scene, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: SceneFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        CliError::input(format!(
            "line {}, column {}: at `{}`: {}",
            inner.line(),
            inner.column(),
            e.path(),
            inner
        ))
    })?;
    validate(file, text)
}

fn validate(file: SceneFile, text: &str) -> Result<Scene, CliError> {
    let spec = file.algebra_spec()?;
    let at_algebra = |msg: String| CliError::input(format!("{}: {msg}", located(text, "family", 0)));
    let family: Family = spec.family.parse().map_err(|e| at_algebra(format!("{e}")))?;
    let module: ModuleTag = spec.module.parse().map_err(|e| at_algebra(format!("{e}")))?;
    let realization = build_realization(family, spec.rank, module).map_err(|e| at_algebra(format!("{e}")))?;
    let rs = realization.root_system();

    let mut gammas = Vec::new();
    for (i, g) in file.gammas.iter().enumerate() {
        let here = |msg: String| CliError::input(format!("{}: gammas[{i}]: {msg}", located_in(text, "gammas", "point", i)));
        let point = g.point.parse().map_err(here)?;
        let h = match (&g.h, &g.diag) {
            (Some(v), None) => {
                if v.len() != rs.rank() {
                    return Err(here(format!("h needs {} simple-root values, got {}", rs.rank(), v.len())));
                }
                CoweightH::for_realization(&realization, v)
            }
            (None, Some(v)) => {
                if v.len() != rs.eps_dim() {
                    return Err(here(format!("diag needs {} entries, got {}", rs.eps_dim(), v.len())));
                }
                CoweightH::from_eps_i64(v)
            }
            _ => return Err(here("give exactly one of `h` and `diag`".into())),
        };
        gammas.push((point, h));
    }
    let mut pis = Vec::new();
    for (i, p) in file.pis.iter().enumerate() {
        let here = |msg: String| CliError::input(format!("{}: pis[{i}]: {msg}", located_in(text, "pis", "point", i)));
        pis.push((p.point.parse().map_err(here)?, p.mult));
    }

    // repeated points, reported at the second occurrence
    let labels: Vec<(String, usize)> = (0..gammas.len())
        .map(|i| ("gammas".to_string(), i))
        .chain((0..pis.len()).map(|i| ("pis".to_string(), i)))
        .collect();
    let points: Vec<&Scalar> = gammas.iter().map(|(p, _)| p).chain(pis.iter().map(|(p, _)| p)).collect();
    for (j, p) in points.iter().enumerate() {
        if let Some(i) = points[..j].iter().position(|q| q == p) {
            let (sec, k) = &labels[j];
            let (sec0, k0) = &labels[i];
            return Err(CliError::input(format!(
                "{}: {sec}[{k}]: point {p} coincides with {sec0}[{k0}]",
                located_in(text, sec, "point", *k)
            )));
        }
    }

    let mode = file
        .mode
        .as_deref()
        .map(str::parse::<ModuliMode>)
        .transpose()
        .map_err(|e| CliError::input(format!("{}: {e}", located(text, "mode", 0))))?;

    let config = SurfaceConfig::new(realization.clone(), gammas.clone(), pis.clone()).map_err(|e| {
        let idx = gammas
            .iter()
            .position(|(_, h)| h.module_matrix(&realization).is_err() || !matdiv_core::liecore::dual_lattice_check(h, &realization))
            .unwrap_or(0);
        CliError::input(format!("{}: gammas[{idx}]: {e}", located_in(text, "gammas", "point", idx)))
    })?;
    Ok(Scene {
        genus: file.genus_for_formulas,
        file,
        realization,
        gammas,
        pis,
        mode,
        config,
    })
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].matches('\n').count() + 1
}

/// `line N` of the `n`-th occurrence of the key `"key"`.
fn located(text: &str, key: &str, n: usize) -> String {
    let pat = format!("\"{key}\"");
    match text.match_indices(&pat).nth(n) {
        Some((off, _)) => format!("line {}", line_of(text, off)),
        None => "line ?".into(),
    }
}

/// `line N` of the `n`-th `"key"` after the start of the section `"section"`.
fn located_in(text: &str, section: &str, key: &str, n: usize) -> String {
    let sec = format!("\"{section}\"");
    let Some(start) = text.find(&sec).or_else(|| (section == "gammas").then(|| text.find("\"points\"")).flatten()) else {
        return "line ?".into();
    };
    let pat = format!("\"{key}\"");
    match text[start..].match_indices(&pat).nth(n) {
        Some((off, _)) => format!("line {}", line_of(text, start + off)),
        None => format!("line {}", line_of(text, start)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"{
  "algebra": {"family": "A", "rank": 1, "module": "gl"},
  "gammas": [
    {"point": 1, "h": [1]},
    {"point": "2", "diag": [1, 0]}
  ],
  "pis": [{"point": 5, "mult": 1}],
  "genus_for_formulas": 2
}"#;

    #[test]
    fn parses_nested_and_flat_forms() {
        let s = parse_scene(BASIC).unwrap();
        assert_eq!(s.gammas.len(), 2);
        assert_eq!(s.gammas[0].1, s.gammas[1].1);
        let flat = r#"{"family": "C", "rank": 2, "gammas": [{"point": "1/2", "h": [1, 0]}]}"#;
        let s = parse_scene(flat).unwrap();
        assert_eq!(s.realization.tag(), "C2d");
    }

    #[test]
    fn coincident_points_name_their_line() {
        let text = "{\n\"family\": \"A\", \"rank\": 1, \"module\": \"gl\",\n\"gammas\": [\n{\"point\": 1, \"h\": [1]}\n],\n\"pis\": [\n{\"point\": 1, \"mult\": 1}\n]\n}";
        let err = parse_scene(text).unwrap_err().to_string();
        assert!(err.contains("line 7"), "{err}");
        assert!(err.contains("coincides"), "{err}");
    }

    #[test]
    fn type_errors_carry_path_and_line() {
        let text = "{\n\"family\": \"A\", \"rank\": 1,\n\"gammas\": [{\"point\": 1, \"h\": [\"x\"]}]\n}";
        let err = parse_scene(text).unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("gammas[0].h[0]"), "{err}");
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let flat = r#"{"family": "A", "rank": 1, "module": "gl", "gammas": [{"point": 1, "h": [1]}]}"#;
        let once = parse_scene(flat).unwrap().file.canonical().unwrap();
        let text = serde_json::to_string_pretty(&once).unwrap();
        let twice = parse_scene(&text).unwrap().file.canonical().unwrap();
        assert_eq!(once, twice);
        assert_eq!(serde_json::to_string_pretty(&twice).unwrap(), text);
    }
}
