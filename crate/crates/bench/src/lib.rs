//! Fixed, seeded inputs shared by the benchmarks.

use matdiv_core::divisor::DivisorGerm;
use matdiv_core::lax::SurfaceConfig;
use matdiv_core::liecore::{build_realization, CoweightH, Family, ModuleTag};
use matdiv_core::random::{random_exponents, random_germ, random_matrix, seeded};
use matdiv_core::{Matrix, Scalar};

/// A dense `n × n` matrix of small integers.
pub fn dense_matrix(n: usize, seed: u64) -> Matrix {
    let mut rng = seeded(seed);
    random_matrix(&mut rng, n, n, 5)
}

/// A type-A germ of size `n` with pole and zero orders up to `m`.
pub fn germ(n: usize, m: i64, precision: usize, seed: u64) -> DivisorGerm {
    let mut rng = seeded(seed);
    let d = random_exponents(&mut rng, n, m);
    DivisorGerm::new(Family::A, random_germ(&mut rng, &d, precision)).expect("nonzero germ")
}

/// `gl(n)` with `h = diag(1, 0, …, 0)` at the points `1..=points` and a
/// divisor of degree `deg` at a separate point.
pub fn gl_scene(n: usize, points: usize, deg: usize) -> SurfaceConfig {
    let r = build_realization(Family::A, n - 1, ModuleTag::GlDefining).expect("gl(n)");
    let mut eps = vec![0; n];
    eps[0] = 1;
    let gammas = (1..=points as i64)
        .map(|p| (Scalar::from(p), CoweightH::from_eps_i64(&eps)))
        .collect();
    let pis = if deg == 0 { vec![] } else { vec![(Scalar::from(100), deg)] };
    SurfaceConfig::new(r, gammas, pis).expect("distinct points")
}
