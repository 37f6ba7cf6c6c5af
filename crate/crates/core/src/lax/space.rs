use num_traits::Zero;
use rand::Rng;

use super::global::{pole_expansion, GlobalMatrixFunction};
use super::SurfaceConfig;
use crate::divisor::flag_from_h;
use crate::error::Result;
use crate::exactnum::{nullspace, Matrix, Scalar, SubspaceBasis};
use crate::grading::{grading_unchecked, LieFiltration};
use crate::liecore::{unit_vector, CoweightH, RootSystemRealization};
use crate::random::random_scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Ambient,
    L,
    M,
    Section,
}

/// Scalar factor of an ambient basis function.
#[derive(Clone, Debug, PartialEq, Eq)]
enum ScalarFn {
    Constant,
    Pole(Scalar, usize),
}

impl ScalarFn {
    fn jet(&self, gamma: &Scalar, lo: i64, hi: i64) -> Vec<Scalar> {
        match self {
            ScalarFn::Constant => (lo..=hi)
                .map(|d| if d == 0 { Scalar::from(1) } else { Scalar::zero() })
                .collect(),
            ScalarFn::Pole(p, s) => pole_expansion(p, *s, gamma, lo, hi),
        }
    }
}

/// A subspace of the ambient space `{σ·B_t}`, where the `σ` run over
/// `1, (w − p)^{-s}` within the pole bounds and `B_t` over a fixed basis of
/// the target (the algebra for `L` and `M`, the module for sections). Vectors
/// are indexed by `σ·T + t`.
#[derive(Clone, Debug)]
pub struct OperatorSpace {
    kind: SpaceKind,
    pole_bounds: Vec<(Scalar, usize)>,
    targets: Vec<Matrix>,
    scalars: Vec<ScalarFn>,
    coords: SubspaceBasis,
    constraint_rank: usize,
}

impl OperatorSpace {
    fn ambient(kind: SpaceKind, pole_bounds: Vec<(Scalar, usize)>, targets: Vec<Matrix>) -> Self {
        let mut scalars = vec![ScalarFn::Constant];
        for (p, order) in &pole_bounds {
            scalars.extend((1..=*order).map(|s| ScalarFn::Pole(p.clone(), s)));
        }
        let n = scalars.len() * targets.len();
        OperatorSpace {
            kind,
            pole_bounds,
            targets,
            scalars,
            coords: SubspaceBasis::full(n),
            constraint_rank: 0,
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.ambient_dim()
    }

    /// Rank of the stacked jet conditions cutting the space out of the ambient.
    pub fn constraint_rank(&self) -> usize {
        self.constraint_rank
    }

    pub fn pole_bounds(&self) -> &[(Scalar, usize)] {
        &self.pole_bounds
    }

    /// The space as a subspace of the ambient coordinates.
    pub fn coords(&self) -> &SubspaceBasis {
        &self.coords
    }

    /// Function with the given ambient coordinates.
    pub fn function(&self, coords: &[Scalar]) -> GlobalMatrixFunction {
        let t = self.targets.len();
        let (rows, cols) = (self.targets[0].rows(), self.targets[0].cols());
        let mut f = GlobalMatrixFunction::zero(rows, cols);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = self.targets[i % t].scale(c);
            let term = match &self.scalars[i / t] {
                ScalarFn::Constant => GlobalMatrixFunction::constant(x),
                ScalarFn::Pole(p, s) => GlobalMatrixFunction::pole(p.clone(), *s, x),
            };
            f = f.add(&term).expect("same shape");
        }
        f
    }

    pub fn basis(&self) -> Vec<GlobalMatrixFunction> {
        self.coords.vectors().map(|v| self.function(v)).collect()
    }

    /// A random combination of the basis with small integer coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> GlobalMatrixFunction {
        let mut v = vec![Scalar::zero(); self.ambient_dim()];
        for b in self.coords.vectors() {
            let c = random_scalar(rng, 3, false);
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        self.function(&v)
    }

    /// Rows sending ambient coordinates to the coordinates of the degree `p`
    /// jet at `gamma`, composed with `ann`.
    fn jet_rows(&self, gamma: &Scalar, p: i64, ann: &Matrix) -> Vec<Vec<Scalar>> {
        let t = self.targets.len();
        let values: Vec<Scalar> = self.scalars.iter().map(|s| s.jet(gamma, p, p).remove(0)).collect();
        ann.row_vecs()
            .map(|a| {
                let mut row = Vec::with_capacity(values.len() * t);
                for v in &values {
                    row.extend(a.iter().map(|x| x * v));
                }
                row
            })
            .collect()
    }

    /// Full jet matrix at `gamma` over degrees `lo..=hi`, in target coordinates.
    pub fn jet_matrix(&self, gamma: &Scalar, lo: i64, hi: i64) -> Matrix {
        let t = self.targets.len();
        let id = Matrix::identity(t);
        let rows: Vec<Vec<Scalar>> = (lo..=hi).flat_map(|p| self.jet_rows(gamma, p, &id)).collect();
        Matrix::from_rows(self.ambient_dim(), rows)
    }

    /// Restricts to the vectors whose jets satisfy every `(gamma, p, S)`
    /// condition `jet_p ∈ S`.
    fn constrain(mut self, kind: SpaceKind, conditions: &[(Scalar, i64, SubspaceBasis)]) -> Self {
        let mut rows = Vec::new();
        for (gamma, p, s) in conditions {
            if !s.is_full() {
                rows.extend(self.jet_rows(gamma, *p, &s.annihilator()));
            }
        }
        let n = self.ambient_dim();
        self.kind = kind;
        if !rows.is_empty() {
            let system = Matrix::from_rows(n, rows);
            self.coords = nullspace(&system);
            self.constraint_rank = n - self.coords.dim();
        }
        self
    }
}

/// Basis of all functions `σ·B_t` with poles bounded by `pole_bounds`, for
/// `B_t` running over the algebra basis.
pub fn ambient_basis(r: &RootSystemRealization, pole_bounds: &[(Scalar, usize)]) -> Vec<GlobalMatrixFunction> {
    OperatorSpace::ambient(SpaceKind::Ambient, pole_bounds.to_vec(), r.algebra_basis()).basis()
}

pub(crate) struct GammaData {
    pub point: Scalar,
    pub h: CoweightH,
    pub depth: i64,
    pub order: usize,
    pub filtration: LieFiltration,
    pub positive_sum: i64,
}

pub(crate) fn gamma_data(config: &SurfaceConfig) -> Result<Vec<GammaData>> {
    let r = config.realization();
    config
        .gammas()
        .iter()
        .map(|(p, h)| {
            let g = grading_unchecked(r, h)?;
            let depth = g.depth();
            Ok(GammaData {
                point: p.clone(),
                h: h.clone(),
                depth,
                order: (depth as usize).max(usize::from(!h.is_zero())),
                filtration: g.filtration(),
                positive_sum: g.positive_degree_sum(),
            })
        })
        .collect()
}

fn operator_ambient(config: &SurfaceConfig, data: &[GammaData]) -> OperatorSpace {
    let mut bounds: Vec<(Scalar, usize)> = data.iter().map(|d| (d.point.clone(), d.order)).collect();
    bounds.extend(config.pis().iter().cloned());
    OperatorSpace::ambient(SpaceKind::Ambient, bounds, config.realization().algebra_basis())
}

fn l_conditions(data: &[GammaData]) -> Vec<(Scalar, i64, SubspaceBasis)> {
    let mut out = Vec::new();
    for d in data {
        for p in -(d.order as i64)..d.depth {
            out.push((d.point.clone(), p, d.filtration.piece(p)));
        }
    }
    out
}

/// Lax operators: `L_p ∈ g̃_p` at every `γ`, poles bounded by `D` on `Π`.
pub fn build_l_space(config: &SurfaceConfig) -> Result<OperatorSpace> {
    let data = gamma_data(config)?;
    Ok(operator_ambient(config, &data).constrain(SpaceKind::L, &l_conditions(&data)))
}

/// M-operators: `M_p ∈ g̃_p` for `p < 0`, with `ℂ·h_γ` admitted at `p = -1`.
pub fn build_m_space(config: &SurfaceConfig) -> Result<OperatorSpace> {
    let data = gamma_data(config)?;
    Ok(operator_ambient(config, &data).constrain(SpaceKind::M, &m_conditions(config, &data)?))
}

fn m_conditions(config: &SurfaceConfig, data: &[GammaData]) -> Result<Vec<(Scalar, i64, SubspaceBasis)>> {
    let r = config.realization();
    let mut out = Vec::new();
    for d in data {
        for p in -(d.order as i64)..0 {
            let mut s = d.filtration.piece(p);
            if p == -1 {
                let h = SubspaceBasis::span(r.algebra_dim(), [d.h.algebra_coordinates(r)?]);
                s = s.sum(&h)?;
            }
            out.push((d.point.clone(), p, s));
        }
    }
    Ok(out)
}

pub(crate) fn build_lm(config: &SurfaceConfig) -> Result<(OperatorSpace, OperatorSpace, Vec<GammaData>)> {
    let data = gamma_data(config)?;
    let ambient = operator_ambient(config, &data);
    let l = ambient.clone().constrain(SpaceKind::L, &l_conditions(&data));
    let m = ambient.constrain(SpaceKind::M, &m_conditions(config, &data)?);
    Ok((l, m, data))
}

/// Module-valued `f` with `(f) + D + mΓ ≥ 0` and `f_i ∈ F_i` for the flag of
/// `z^{h_γ}` at every `γ`.
pub fn build_section_space(config: &SurfaceConfig) -> Result<OperatorSpace> {
    let r = config.realization();
    let n = r.module_dim();
    let mut bounds = Vec::new();
    let mut conditions = Vec::new();
    for (p, h) in config.gammas() {
        let flag = flag_from_h(r, h)?;
        let order = (-flag.lo()).max(0);
        bounds.push((p.clone(), order as usize));
        for i in -order..flag.hi() {
            conditions.push((p.clone(), i, flag.get(i)));
        }
    }
    bounds.extend(config.pis().iter().cloned());
    let targets = (0..n).map(|b| Matrix::column(unit_vector(n, b))).collect();
    Ok(OperatorSpace::ambient(SpaceKind::Section, bounds, targets).constrain(SpaceKind::Section, &conditions))
}

/// The section count component by component: `e_b` may have a pole of order
/// `μ_b(h_γ)` at each `γ` (a zero when negative), so the space splits as
/// `⊕_b O(D + Σ_γ μ_b(h_γ)·γ)` with dimensions `max(0, deg D + Σ_γ μ_b(h_γ) + 1)`.
pub fn section_dim_by_weights(config: &SurfaceConfig) -> usize {
    let r = config.realization();
    let deg = config.deg_d() as i64;
    let mut totals = vec![deg; r.module_dim()];
    for (_, h) in config.gammas() {
        for (t, mu) in totals.iter_mut().zip(h.module_values(r)) {
            *t += i64::try_from(mu.to_integer()).expect("small weights");
        }
    }
    totals.iter().map(|t| (t + 1).max(0) as usize).sum()
}

/// `(γ, p)` for every jet coefficient of `f` at a marked point that leaves
/// `g̃_p`. Poles of `f` at `Π` are not restricted.
pub fn l_jet_violations(config: &SurfaceConfig, f: &GlobalMatrixFunction) -> Result<Vec<(Scalar, i64)>> {
    let r = config.realization();
    let mut out = Vec::new();
    for d in gamma_data(config)? {
        let order = f.pole_order_at(&d.point) as i64;
        let jet = f.localize(&d.point, -order, d.depth - 1);
        for p in -order..d.depth {
            let m = jet.coeff(p).expect("inside the window");
            let ok = r
                .coordinates(&m)
                .map(|c| d.filtration.piece(p).contains_vector(&c))
                .transpose()?
                .unwrap_or(false);
            if !ok {
                out.push((d.point.clone(), p));
            }
        }
    }
    Ok(out)
}
