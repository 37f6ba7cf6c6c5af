use std::fmt::Write as _;

use matdiv_core::divisor::{flag_from_h, flag_from_system, smith_reduce_with_guard, DivisorGerm, Flag, DEFAULT_GUARD};
use matdiv_core::grading::{closed_form_dimension, closed_form_point_count, dimension_report, ModuliMode};
use matdiv_core::lax::{build_section_space, quotient_report, section_dim_by_weights, QuotientReport};
use matdiv_core::{Matrix, Scalar, SubspaceBasis, TruncatedMatrixSeries};
use serde_json::{json, Value};

use crate::scene::Scene;
use crate::{CliError, Report};

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub precision: Option<usize>,
    pub guard: i64,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            precision: None,
            guard: DEFAULT_GUARD,
            seed: 0,
        }
    }
}

pub(crate) fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub(crate) fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar).collect())).collect())
}

fn basis(s: &SubspaceBasis) -> Value {
    Value::Array(s.vectors().map(|v| Value::Array(v.iter().map(scalar).collect())).collect())
}

fn h_text(scene: &Scene, i: usize) -> String {
    format!("{:?}", scene.gammas[i].1)
}

pub fn cmd_dims(scene: &Scene) -> Result<Report, CliError> {
    let r = &scene.realization;
    let report = dimension_report(r, &scene.hs())?;
    let mut text = format!("{}\n{report}\n", r);
    let points: Vec<Value> = scene
        .gammas
        .iter()
        .enumerate()
        .map(|(i, (p, _))| {
            json!({
                "point": scalar(p),
                "h": h_text(scene, i),
                "depth": report.depths[i],
                "contribution": report.per_point[i],
            })
        })
        .collect();
    let formula = scene.genus.and_then(|g| {
        let value = closed_form_dimension(r, g)?;
        let expected_points = closed_form_point_count(r, g)?;
        Some(json!({ "genus": g, "points": expected_points, "value": value }))
    });
    if let Some(f) = &formula {
        let _ = writeln!(
            text,
            "closed form at genus {} with {} points: {}",
            f["genus"], f["points"], f["value"]
        );
    }
    let mode = scene.mode.unwrap_or(ModuliMode::MovingGammaModAdG);
    let value = report.total(mode);
    let _ = writeln!(text, "{mode}: {value}");
    let json = json!({
        "algebra": r.tag(),
        "points": points,
        "fixed_gamma": report.fixed_gamma,
        "moving_gamma": report.moving_gamma,
        "moving_gamma_mod_adG": report.moving_gamma_mod_adg,
        "adg_dim": report.adg_dim,
        "mode": mode.name(),
        "value": value,
        "formula": formula,
    });
    Ok(Report {
        text,
        json,
        ok: true,
        failure: None,
    })
}

pub fn cmd_reduce(germ: &DivisorGerm, opts: &RunOptions) -> Result<Report, CliError> {
    let red = smith_reduce_with_guard(germ, opts.guard)?;
    let psi = germ.psi();
    let back = red.left.mul(psi).sub(&TruncatedMatrixSeries::diag_monomials(&red.d).mul(&red.residual));
    let residual_zero = back.vanishes_within_precision();
    let head: Vec<Value> = (0..3).filter_map(|i| red.residual.coeff(i)).map(|m| matrix(&m)).collect();
    let mut text = format!("d = {:?}\n", red.d);
    for i in 0..3 {
        if let Some(m) = red.residual.coeff(i) {
            let _ = writeln!(text, "k_{i} = {m:?}");
        }
    }
    let _ = writeln!(
        text,
        "left·Ψ − z^d·k = {} within precision {}",
        if residual_zero { "0" } else { "NONZERO" },
        psi.precision().map_or("exact".to_string(), |p| p.to_string())
    );
    let json = json!({
        "d": red.d,
        "k_head": head,
        "residual_zero": residual_zero,
        "precision": psi.precision(),
    });
    Ok(Report {
        text,
        json,
        ok: residual_zero,
        failure: (!residual_zero).then(|| "multiply-back residual".to_string()),
    })
}

fn flag_json(flag: &Flag) -> Value {
    let pieces: Vec<Value> = flag
        .pieces()
        .map(|(i, p)| json!({ "index": i, "dim": p.dim(), "basis": basis(p) }))
        .collect();
    json!({ "lo": flag.lo(), "hi": flag.hi(), "pieces": pieces })
}

fn flag_text(flag: &Flag) -> String {
    let mut out = String::new();
    for (i, p) in flag.pieces() {
        let _ = write!(out, "  F_{i}: dim {}", p.dim());
        if !p.is_full() {
            let rows: Vec<String> = p
                .vectors()
                .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect();
            let _ = write!(out, "  {}", rows.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn cmd_flag_germ(germ: &DivisorGerm) -> Result<Report, CliError> {
    let flag = flag_from_system(germ)?;
    Ok(Report {
        text: format!("flag of Ψ at {}\n{}", germ.point(), flag_text(&flag)),
        json: json!({ "source": "germ", "point": scalar(germ.point()), "flag": flag_json(&flag) }),
        ok: true,
        failure: None,
    })
}

pub fn cmd_flag_scene(scene: &Scene) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut flags = Vec::new();
    for (i, (p, h)) in scene.gammas.iter().enumerate() {
        let flag = flag_from_h(&scene.realization, h)?;
        let _ = write!(text, "flag of z^h at {p}, h = {}\n{}", h_text(scene, i), flag_text(&flag));
        flags.push(json!({ "point": scalar(p), "h": h_text(scene, i), "flag": flag_json(&flag) }));
    }
    Ok(Report {
        text,
        json: json!({ "source": "scene", "flags": flags }),
        ok: true,
        failure: None,
    })
}

pub(crate) fn quotient_json(q: &QuotientReport) -> Value {
    json!({
        "gamma_count": q.gamma_count,
        "deg_d": q.deg_d,
        "ambient_dim": q.ambient_dim,
        "dim_L": q.dim_l,
        "dim_M": q.dim_m,
        "dim_quotient": q.dim_quotient,
        "tangent_formula": q.tangent_formula,
        "excess": q.excess,
        "localization_kernel_dim": q.localization_kernel_dim,
        "injectivity_applies": q.injectivity_applies,
        "L_in_M": q.l_in_m,
    })
}

pub fn cmd_lax_dim(scene: &Scene) -> Result<Report, CliError> {
    let q = quotient_report(&scene.config)?;
    let sections = build_section_space(&scene.config)?;
    let by_weights = section_dim_by_weights(&scene.config);
    let mut json = quotient_json(&q);
    json["dim_sections"] = json!(sections.dim());
    json["dim_sections_by_weights"] = json!(by_weights);
    json["dim_sections_formula"] = json!(scene.realization.module_dim() * (q.deg_d + 1));
    let text = format!(
        "{}\n{q}\nsections: {} (by weights {}, dim V·(deg D + 1) = {})\n",
        scene.realization,
        sections.dim(),
        by_weights,
        scene.realization.module_dim() * (q.deg_d + 1)
    );
    Ok(Report {
        text,
        json,
        ok: true,
        failure: None,
    })
}

pub fn cmd_verify_quot(scene: &Scene) -> Result<Report, CliError> {
    let q = quotient_report(&scene.config)?;
    let failure = if q.injectivity_applies && q.localization_kernel_dim != 0 {
        Some("localization-injectivity".to_string())
    } else if !q.l_in_m {
        Some("L-in-M".to_string())
    } else if q.dim_quotient < q.tangent_formula {
        Some("quotient-lower-bound".to_string())
    } else {
        None
    };
    let mut json = quotient_json(&q);
    json["ok"] = json!(failure.is_none());
    let verdict = match &failure {
        None => "PASS".to_string(),
        Some(f) => format!("FAIL ({f})"),
    };
    Ok(Report {
        text: format!("{}\n{q}\n{verdict}\n", scene.realization),
        json,
        ok: failure.is_none(),
        failure,
    })
}
