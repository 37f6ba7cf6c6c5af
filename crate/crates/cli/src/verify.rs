//! `verify-all`: every property suite, run against one scene with seeded
//! random instances.

use std::fmt::Write as _;

use matdiv_core::divisor::{
    flag_from_h, flag_from_system, flags_equal_up_to_shift, smith_reduce_with_guard, DivisorGerm, ShiftVariant,
};
use matdiv_core::grading::compute_grading;
use matdiv_core::lax::{bracket_global, build_l_space, build_section_space, l_jet_violations, quotient_report, section_dim_by_weights};
use matdiv_core::liecore::Family;
use matdiv_core::random::{random_exponents, random_germ, random_invertible, random_k, seeded};
use matdiv_core::Error;
use rand::Rng;
use serde_json::{json, Value};

use crate::commands::{quotient_json, RunOptions};
use crate::scene::Scene;
use crate::{CliError, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skip(name: &'static str, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail: detail.into(),
    }
}

fn fail_on_error(name: &'static str, e: Error) -> Check {
    check(name, false, format!("error: {e}"))
}

pub fn verify_all(scene: &Scene, opts: &RunOptions) -> Result<Report, CliError> {
    let mut rng = seeded(opts.seed);
    let precision = opts.precision.unwrap_or(10).max(8);
    let r = &scene.realization;
    let n = r.module_dim().min(4);
    let mut checks = Vec::new();

    // flags of random germs are nested
    let mut nested = 0;
    let trials = 10;
    let mut nesting_error = None;
    for _ in 0..trials {
        let m = rng.gen_range(1..=2);
        let d = random_exponents(&mut rng, n, m);
        let germ = DivisorGerm::new(Family::A, random_germ(&mut rng, &d, precision)).expect("nonzero germ");
        match flag_from_system(&germ) {
            Ok(f) if f.is_nested() => nested += 1,
            Ok(_) => {}
            Err(e) => nesting_error = Some(e),
        }
    }
    checks.push(match nesting_error {
        Some(e) => fail_on_error("flag-nesting", e),
        None => check("flag-nesting", nested == trials, format!("{nested}/{trials} random germs of size {n}")),
    });

    // z^h gives the flag of h, and a shifted configuration is recognised
    let mut flags = Vec::new();
    let mut mismatch = None;
    for (p, h) in &scene.gammas {
        let from_h = flag_from_h(r, h)?;
        let from_system = flag_from_system(&DivisorGerm::from_h(r, h)?)?;
        if from_h != from_system && mismatch.is_none() {
            mismatch = Some(p.clone());
        }
        flags.push((p.clone(), from_h));
    }
    let g = random_invertible(&mut rng, r.module_dim(), 3);
    let shifted = flags
        .iter()
        .map(|(p, f)| Ok((p.clone(), f.map(&g)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let shift_ok = flags_equal_up_to_shift(&flags, &shifted, &g, ShiftVariant::Equid)?
        && flags_equal_up_to_shift(&flags, &shifted, &g, ShiftVariant::Equid2)?;
    checks.push(check(
        "flag-equality",
        mismatch.is_none() && shift_ok,
        match &mismatch {
            Some(p) => format!("flag of z^h differs from flag of h at {p}"),
            None => format!("{} points; shifted copy recognised: {shift_ok}", flags.len()),
        },
    ));

    // [g_p, g_q] ⊆ g_{p+q}
    let mut graded = 0;
    let mut non_dominant = 0;
    let mut closure_failed = false;
    for (_, h) in &scene.gammas {
        match compute_grading(r, h) {
            Ok(gr) => {
                if gr.check_bracket_grading(r) {
                    graded += 1;
                } else {
                    closure_failed = true;
                }
            }
            Err(Error::Domain(_)) => non_dominant += 1,
            Err(e) => return Err(e.into()),
        }
    }
    checks.push(if graded == 0 && !closure_failed {
        skip("grading-closure", "no dominant h in the scene")
    } else {
        check(
            "grading-closure",
            !closure_failed,
            format!("{graded} gradings checked, {non_dominant} non-dominant h skipped"),
        )
    });

    // Smith exponents do not move under K on either side
    if r.family() == Family::A {
        let mut stable = true;
        let mut err = None;
        'outer: for _ in 0..3 {
            let d = random_exponents(&mut rng, n, 1);
            let psi = random_germ(&mut rng, &d, precision);
            let base = match smith_reduce_with_guard(&DivisorGerm::new(Family::A, psi.clone())?, opts.guard) {
                Ok(red) => red.d,
                Err(e) => {
                    err = Some(e);
                    break;
                }
            };
            for _ in 0..5 {
                let moved = random_k(&mut rng, n, precision).mul(&psi).mul(&random_k(&mut rng, n, precision));
                match smith_reduce_with_guard(&DivisorGerm::new(Family::A, moved)?, opts.guard) {
                    Ok(red) if red.d == base => {}
                    Ok(_) => {
                        stable = false;
                        break 'outer;
                    }
                    Err(e) => {
                        err = Some(e);
                        break 'outer;
                    }
                }
            }
        }
        checks.push(match err {
            Some(e) => fail_on_error("smith-invariance", e),
            None => check("smith-invariance", stable, "3 germs × 5 two-sided K multiplications"),
        });
    } else {
        checks.push(skip("smith-invariance", "reduction is implemented for type A only"));
    }

    let q = quotient_report(&scene.config)?;
    checks.push(if q.injectivity_applies {
        check(
            "localization-injectivity",
            q.localization_kernel_dim == 0,
            format!("kernel dimension {}", q.localization_kernel_dim),
        )
    } else {
        skip(
            "localization-injectivity",
            format!("deg D = {} ≥ |Γ| = {}", q.deg_d, q.gamma_count),
        )
    });

    let sections = build_section_space(&scene.config)?;
    let by_weights = section_dim_by_weights(&scene.config);
    checks.push(check(
        "section-dimension",
        sections.dim() == by_weights,
        format!("rank count {} vs weight count {by_weights}", sections.dim()),
    ));

    let l = build_l_space(&scene.config)?;
    let mut closed = true;
    for _ in 0..5 {
        let (a, b) = (l.random_element(&mut rng), l.random_element(&mut rng));
        if !l_jet_violations(&scene.config, &bracket_global(&a, &b)?)?.is_empty() {
            closed = false;
        }
    }
    checks.push(check("lax-closure", closed, format!("5 random brackets in L (dim {})", l.dim())));

    checks.push(check(
        "quotient-report",
        q.l_in_m && q.dim_quotient >= q.tangent_formula,
        format!(
            "dim M/L = {}, Σ α(h) = {}, excess = {} (data)",
            q.dim_quotient, q.tangent_formula, q.excess
        ),
    ));

    let failure = checks.iter().find(|c| c.status == Status::Fail).map(|c| c.name.to_string());
    let mut text = format!("{} with seed {}\n", r, opts.seed);
    for c in &checks {
        let _ = writeln!(text, "{} {}: {}", c.status.label(), c.name, c.detail);
    }
    let _ = writeln!(text, "quotient excess: {}", q.excess);
    if let Some(f) = &failure {
        let _ = writeln!(text, "first failure: {f}");
    }
    let json = json!({
        "seed": opts.seed,
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.label(), "detail": c.detail }))
            .collect::<Vec<Value>>(),
        "quotient": quotient_json(&q),
        "ok": failure.is_none(),
        "first_failure": failure,
    });
    Ok(Report {
        text,
        json,
        ok: failure.is_none(),
        failure,
    })
}
