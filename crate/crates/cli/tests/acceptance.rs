//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matdiv_cli::commands::{cmd_dims, RunOptions};
use matdiv_cli::scene::parse_scene;
use matdiv_cli::verify::verify_all;
use matdiv_core::divisor::{flag_from_h, flag_from_system, smith_reduce, DivisorGerm};
use matdiv_core::grading::compute_grading;
use matdiv_core::lax::{
    bracket_global, build_l_space, build_section_space, l_jet_violations, quotient_report, section_dim_by_weights,
    SurfaceConfig,
};
use matdiv_core::liecore::{build_realization, dual_lattice_check, CoweightH, Family, ModuleTag};
use matdiv_core::random::{random_exponents, random_germ, random_k, seeded};
use matdiv_core::{Error, Scalar};
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn pt(k: i64) -> Scalar {
    Scalar::from(k)
}

fn diag_scene(family: &str, rank: usize, module: &str, eps_dim: usize, points: i64, genus: i64) -> String {
    let mut eps = vec!["0"; eps_dim];
    eps[0] = "1";
    let gammas: Vec<String> = (1..=points)
        .map(|p| format!(r#"{{"point": {p}, "diag": [{}]}}"#, eps.join(", ")))
        .collect();
    format!(
        r#"{{"algebra": {{"family": "{family}", "rank": {rank}, "module": "{module}"}},
            "gammas": [{}], "pis": [], "genus_for_formulas": {genus},
            "mode": "moving_gamma_mod_adG"}}"#,
        gammas.join(", ")
    )
}

fn dimension_formulas() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=4i64 {
        for g in 1..=3i64 {
            let nu = n as usize;
            let cases = [
                ("A", nu - 1, "gl", nu, n * n * (g - 1) + 1),
                ("D", nu, "defining", nu, (2 * n - 1) * n * (g - 1)),
                ("C", nu, "defining", nu, (2 * n + 1) * n * (g - 1)),
            ];
            for (family, rank, module, eps_dim, expected) in cases {
                let text = diag_scene(family, rank, module, eps_dim, n * g, g);
                let scene = match parse_scene(&text) {
                    Ok(s) => s,
                    Err(e) => return fail(format!("{family}{rank} g={g}: {e}")),
                };
                let report = match cmd_dims(&scene) {
                    Ok(r) => r,
                    Err(e) => return fail(format!("{family}{rank} g={g}: {e}")),
                };
                let value = report.json["value"].as_i64();
                if value != Some(expected) || report.json["formula"]["value"].as_i64() != Some(expected) {
                    return fail(format!("{family}{rank} n={n} g={g}: got {value:?}, expected {expected}"));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return fail(format!("{checked} scenes took {elapsed:?}"));
    }
    pass(format!("{checked} scenes exact in {elapsed:?}"))
}

fn grading_facts() -> Outcome {
    let mut checked = 0;
    for n in 2..=4usize {
        let cases = [
            (Family::A, n - 1, ModuleTag::GlDefining, 1, vec![(1, n - 1)]),
            (Family::D, n, ModuleTag::Defining, 1, vec![(1, 2 * n - 2)]),
            (Family::C, n, ModuleTag::Defining, 2, vec![(1, 2 * n - 2), (2, 1)]),
        ];
        for (family, rank, module, depth, dims) in cases {
            let r = build_realization(family, rank, module).unwrap();
            let mut eps = vec![0; r.root_system().eps_dim()];
            eps[0] = 1;
            let gr = match compute_grading(&r, &CoweightH::from_eps_i64(&eps)) {
                Ok(gr) => gr,
                Err(e) => return fail(format!("{}: {e}", r.tag())),
            };
            if gr.depth() != depth {
                return fail(format!("{}: depth {} vs {depth}", r.tag(), gr.depth()));
            }
            for (p, d) in dims {
                if gr.dim(p) != d || gr.dim(-p) != d {
                    return fail(format!("{}: dim g_±{p} = {}/{} vs {d}", r.tag(), gr.dim(p), gr.dim(-p)));
                }
            }
            checked += 1;
        }
    }
    pass(format!("{checked} gradings, depths and piece dimensions exact"))
}

fn random_flags_nested() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2024);
    let trials = 60;
    for t in 0..trials {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let d = random_exponents(&mut rng, n, m);
        let germ = DivisorGerm::new(Family::A, random_germ(&mut rng, &d, 8)).unwrap();
        match flag_from_system(&germ) {
            Ok(f) if f.is_nested() => {}
            Ok(f) => return fail(format!("trial {t}: not nested: {:?}", f.dims())),
            Err(e) => return fail(format!("trial {t}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        return fail(format!("{trials} germs took {elapsed:?}"));
    }
    pass(format!("{trials}/{trials} random germs nested in {elapsed:?}"))
}

fn monomial_flags() -> Outcome {
    let mut compared = 0;
    let mut rejected = 0;
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 1..=3usize {
            let modules: &[ModuleTag] = if family == Family::A {
                &[ModuleTag::Defining, ModuleTag::GlDefining]
            } else {
                &[ModuleTag::Defining]
            };
            for &module in modules {
                let Ok(r) = build_realization(family, rank, module) else {
                    continue;
                };
                for code in 0..3usize.pow(rank as u32) {
                    let values: Vec<i64> = (0..rank).map(|j| (code / 3usize.pow(j as u32) % 3) as i64).collect();
                    let h = CoweightH::for_realization(&r, &values);
                    if !dual_lattice_check(&h, &r) {
                        match flag_from_h(&r, &h) {
                            Err(Error::Domain(_)) => rejected += 1,
                            other => return fail(format!("{} {values:?}: off-lattice h gave {other:?}", r.tag())),
                        }
                        continue;
                    }
                    let from_h = flag_from_h(&r, &h);
                    let from_system = DivisorGerm::from_h(&r, &h).and_then(|g| flag_from_system(&g));
                    match (from_h, from_system) {
                        (Ok(a), Ok(b)) if a == b => compared += 1,
                        (a, b) => return fail(format!("{} {values:?}: {a:?} vs {b:?}", r.tag())),
                    }
                }
            }
        }
    }
    pass(format!("{compared} (realization, h) pairs equal, {rejected} off-lattice h rejected"))
}

fn smith_invariance() -> Outcome {
    let mut rng = seeded(77);
    for germ_index in 0..20 {
        let n = rng.gen_range(2..=3);
        let d = random_exponents(&mut rng, n, 2);
        let psi = random_germ(&mut rng, &d, 12);
        let base = match smith_reduce(&DivisorGerm::new(Family::A, psi.clone()).unwrap()) {
            Ok(red) => red.d,
            Err(e) => return fail(format!("germ {germ_index}: {e}")),
        };
        let mut expected = d.clone();
        expected.sort_unstable_by(|a, b| b.cmp(a));
        if base != expected {
            return fail(format!("germ {germ_index}: exponents {base:?}, built with {d:?}"));
        }
        for k in 0..20 {
            let moved = random_k(&mut rng, n, 12).mul(&psi).mul(&random_k(&mut rng, n, 12));
            match smith_reduce(&DivisorGerm::new(Family::A, moved).unwrap()) {
                Ok(red) if red.d == base => {}
                Ok(red) => return fail(format!("germ {germ_index}, multiplication {k}: {:?} vs {base:?}", red.d)),
                Err(e) => return fail(format!("germ {germ_index}, multiplication {k}: {e}")),
            }
        }
    }
    pass("20 germs × 20 two-sided multiplications, exponents unchanged")
}

fn config(family: Family, rank: usize, module: ModuleTag, eps: &[i64], count: usize, deg: usize) -> SurfaceConfig {
    let r = build_realization(family, rank, module).unwrap();
    let gammas = (1..=count as i64).map(|p| (pt(p), CoweightH::from_eps_i64(eps))).collect();
    let pis = if deg == 0 { vec![] } else { vec![(pt(9), deg)] };
    SurfaceConfig::new(r, gammas, pis).unwrap()
}

fn section_dimensions() -> Outcome {
    let mut notes = Vec::new();
    let algebras: [(Family, usize, ModuleTag, &[i64], &[i64]); 2] = [
        (Family::A, 1, ModuleTag::GlDefining, &[1, -1], &[1, 0]),
        (Family::C, 2, ModuleTag::Defining, &[1, 0], &[1, 0]),
    ];
    let mut checked = 0;
    for (family, rank, module, symmetric, first) in algebras {
        for deg in 1..=3usize {
            for count in 1..=2usize {
                let c = config(family, rank, module, symmetric, count, deg);
                let dim_v = c.realization().module_dim();
                let s = match build_section_space(&c) {
                    Ok(s) => s.dim(),
                    Err(e) => return fail(format!("{}: {e}", c.realization().tag())),
                };
                if s != section_dim_by_weights(&c) || s != dim_v * (deg + 1) {
                    return fail(format!(
                        "{} deg {deg} |Γ| {count}: rank {s}, weights {}, dim V·(deg D+1) = {}",
                        c.realization().tag(),
                        section_dim_by_weights(&c),
                        dim_v * (deg + 1)
                    ));
                }
                let c = config(family, rank, module, first, count, deg);
                let s = build_section_space(&c).map(|s| s.dim()).unwrap_or(0);
                if s != section_dim_by_weights(&c) {
                    return fail(format!("{} h={first:?}: rank {s} vs weights", c.realization().tag()));
                }
                if family == Family::A && deg == 1 {
                    notes.push(format!("diag(1,0) |Γ|={count}: {s}"));
                }
                checked += 2;
            }
        }
    }
    pass(format!("{checked} scenes match the weight oracle; {}", notes.join(", ")))
}

fn point_list(count: usize, h: &str) -> String {
    (1..=count)
        .map(|p| format!(r#"{{"point": {p}, "h": {h}}}"#))
        .collect::<Vec<_>>()
        .join(", ")
}

fn quotient_scenes() -> Outcome {
    let mut excesses = Vec::new();
    for (name, tag) in [("gl2", "gl"), ("sl2", "adjoint")] {
        for count in 2..=3usize {
            for deg in 0..=1usize {
                let start = Instant::now();
                let pis = if deg == 0 { "" } else { r#"{"point": 9, "mult": 1}"# };
                let scene = parse_scene(&format!(
                    r#"{{"algebra": {{"family": "A", "rank": 1, "module": "{tag}"}},
                        "gammas": [{}], "pis": [{pis}]}}"#,
                    point_list(count, "[1]")
                ))
                .unwrap();
                let q = match quotient_report(&scene.config) {
                    Ok(q) => q,
                    Err(e) => return fail(format!("{name} |Γ|={count} deg {deg}: {e}")),
                };
                if !q.injectivity_applies || q.localization_kernel_dim != 0 || !q.l_in_m {
                    return fail(format!("{name} |Γ|={count} deg {deg}: {q}"));
                }
                if q.dim_quotient < q.tangent_formula {
                    return fail(format!("{name} |Γ|={count} deg {deg}: quotient below Σ α(h): {q}"));
                }
                if quotient_report(&scene.config).unwrap().excess != q.excess {
                    return fail(format!("{name}: excess changed between runs"));
                }
                for seed in [1, 99] {
                    let opts = RunOptions { seed, ..RunOptions::default() };
                    let report = verify_all(&scene, &opts).unwrap();
                    if report.json["quotient"]["excess"].as_i64() != Some(q.excess) {
                        return fail(format!("{name}: excess differs under seed {seed}"));
                    }
                }
                let elapsed = start.elapsed();
                if elapsed >= Duration::from_secs(60) {
                    return fail(format!("{name} |Γ|={count} deg {deg} took {elapsed:?}"));
                }
                excesses.push(format!("{name}/{count}/{deg}: {}", q.excess));
            }
        }
    }
    // the coroot of sl(2) has α(h) = 2; recorded, not asserted
    let c = config(Family::A, 1, ModuleTag::Defining, &[1, -1], 2, 0);
    let coroot = quotient_report(&c).unwrap();
    pass(format!(
        "kernel 0, L ⊆ M, bound holds; excess (algebra/|Γ|/deg D) {}; sl2 coroot |Γ|=2 deg 0: M/L = {} vs Σ α(h) = {}",
        excesses.join(", "),
        coroot.dim_quotient,
        coroot.tangent_formula
    ))
}

fn lax_closure() -> Outcome {
    let c = config(Family::A, 1, ModuleTag::GlDefining, &[1, 0], 2, 1);
    let l = build_l_space(&c).unwrap();
    let mut rng = seeded(8);
    for i in 0..20 {
        let (a, b) = (l.random_element(&mut rng), l.random_element(&mut rng));
        let violations = match bracket_global(&a, &b).and_then(|x| l_jet_violations(&c, &x)) {
            Ok(v) => v,
            Err(e) => return fail(format!("pair {i}: {e}")),
        };
        if !violations.is_empty() {
            return fail(format!("pair {i}: violations at {violations:?}"));
        }
    }
    pass(format!("20/20 brackets satisfy every jet constraint (dim L = {})", l.dim()))
}

fn sl2_lattice() -> Outcome {
    let d = build_realization(Family::A, 1, ModuleTag::Defining).unwrap();
    let adj = build_realization(Family::A, 1, ModuleTag::Adjoint).unwrap();
    let coroot = CoweightH::from_simple_values(d.root_system(), &[2]);
    let half = CoweightH::from_simple_values(d.root_system(), &[1]);
    let got = [
        dual_lattice_check(&coroot, &d),
        dual_lattice_check(&half, &adj),
        dual_lattice_check(&half, &d),
    ];
    if got == [true, true, false] {
        pass("(defining, coroot) true, (adjoint, half-coroot) true, (defining, half-coroot) false")
    } else {
        fail(format!("got {got:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dimension formulas", dimension_formulas),
        ("grading facts", grading_facts),
        ("random flags nested", random_flags_nested),
        ("flag of z^h", monomial_flags),
        ("Smith exponent invariance", smith_invariance),
        ("section dimension at genus 0", section_dimensions),
        ("quotient M/L", quotient_scenes),
        ("Lax bracket closure", lax_closure),
        ("sl(2) lattice booleans", sl2_lattice),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        println!(
            "{} {}. {name}: {}",
            if outcome.ok { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
        if !outcome.ok {
            failed += 1;
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
