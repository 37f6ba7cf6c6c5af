//! Z-gradings of a realized Lie algebra and of its module induced by a Cartan
//! element `h`, the associated filtrations, and the dimension counts built
//! from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::divisor::Flag;
use crate::error::{Error, Result};
use crate::exactnum::{nullspace, Matrix, Scalar, SubspaceBasis};
use crate::liecore::{dual_lattice_check, pair, unit_vector, CoweightH, Family, ModuleTag, Root, RootSystemRealization};

/// `g = ⊕_p g_p` with `g_p = {X : [h, X] = pX}`, subspaces stored in the
/// coordinates of [`RootSystemRealization::algebra_basis`].
#[derive(Clone, Debug)]
pub struct LieGrading {
    h: CoweightH,
    depth: i64,
    algebra_dim: usize,
    pieces: BTreeMap<i64, SubspaceBasis>,
    root_degrees: Vec<(Root, i64)>,
}

impl LieGrading {
    pub fn h(&self) -> &CoweightH {
        &self.h
    }

    /// Largest `p` with `g_p ≠ 0`.
    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn piece(&self, p: i64) -> SubspaceBasis {
        self.pieces
            .get(&p)
            .cloned()
            .unwrap_or_else(|| SubspaceBasis::zero(self.algebra_dim))
    }

    pub fn dim(&self, p: i64) -> usize {
        self.pieces.get(&p).map_or(0, SubspaceBasis::dim)
    }

    /// `(α, α(h))` for every root, positive roots first.
    pub fn root_degrees(&self) -> &[(Root, i64)] {
        &self.root_degrees
    }

    /// `Σ_{s ≥ 1} s·dim g_s`.
    pub fn positive_degree_sum(&self) -> i64 {
        (1..=self.depth).map(|s| s * self.dim(s) as i64).sum()
    }

    /// `g̃_p = ⊕_{q ≤ p} g_q` for `p = -k..=k`.
    pub fn filtration(&self) -> LieFiltration {
        let k = self.depth;
        let mut acc = SubspaceBasis::zero(self.algebra_dim);
        let mut pieces = Vec::new();
        for p in -k..=k {
            acc = acc.sum(&self.piece(p)).expect("same ambient");
            pieces.push(acc.clone());
        }
        LieFiltration::new(Flag::new(self.algebra_dim, -k, pieces).expect("same ambient"))
    }

    /// `[g_p, g_q] ⊆ g_{p+q}` on all pairs of basis vectors.
    pub fn check_bracket_grading(&self, r: &RootSystemRealization) -> bool {
        let elements: Vec<(i64, Vec<Matrix>)> = self
            .pieces
            .iter()
            .map(|(&p, s)| (p, s.vectors().map(|v| r.element(v)).collect()))
            .collect();
        for (p, xs) in &elements {
            for (q, ys) in &elements {
                let target = self.piece(p + q);
                for x in xs {
                    for y in ys {
                        let Some(c) = r.coordinates(&x.commutator(y)) else {
                            return false;
                        };
                        if !target.contains_vector(&c).expect("same ambient") {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// An increasing chain `g̃_p` of subspaces of the algebra, in algebra
/// coordinates; zero below its range and the whole algebra above it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieFiltration {
    chain: Flag,
}

impl LieFiltration {
    pub fn new(chain: Flag) -> Self {
        LieFiltration { chain }
    }

    pub fn piece(&self, p: i64) -> SubspaceBasis {
        self.chain.get(p)
    }

    pub fn chain(&self) -> &Flag {
        &self.chain
    }

    pub fn is_monotone(&self) -> bool {
        self.chain.is_nested()
    }
}

/// Computes the grading of the algebra by `ad h`, twice: as eigenspaces of the
/// explicit `ad h` matrix and as sums of root spaces. The two must agree.
pub fn compute_grading(r: &RootSystemRealization, h: &CoweightH) -> Result<LieGrading> {
    let rs = r.root_system();
    if !h.is_dominant_integral(rs) {
        return Err(Error::Domain(format!(
            "h = {h:?} must be integral with α_i(h) ≥ 0 on every simple root"
        )));
    }
    grading_unchecked(r, h)
}

pub(crate) fn grading_unchecked(r: &RootSystemRealization, h: &CoweightH) -> Result<LieGrading> {
    let dim = r.algebra_dim();
    let hm = h.module_matrix(r)?;
    let ad = r.ad_matrix(&hm);

    let roots = r.roots();
    let mut root_degrees = Vec::with_capacity(roots.len());
    for alpha in &roots {
        root_degrees.push((alpha.clone(), pair(alpha, h)?));
    }
    let depth = root_degrees.iter().map(|(_, d)| *d).max().unwrap_or(0).max(0);
    let low = root_degrees.iter().map(|(_, d)| *d).min().unwrap_or(0).min(0);

    let mut pieces = BTreeMap::new();
    for p in low..=depth {
        let shifted = &ad - &Matrix::identity(dim).scale(&Scalar::from(p));
        let eigen = nullspace(&shifted);
        let mut generators: Vec<Vec<Scalar>> = root_degrees
            .iter()
            .filter(|(_, d)| *d == p)
            .map(|(alpha, _)| unit_vector(dim, r.root_coordinate_index(alpha).expect("root")))
            .collect();
        if p == 0 {
            generators.extend((0..r.cartan_basis().len()).map(|i| unit_vector(dim, i)));
        }
        let root_sum = SubspaceBasis::span(dim, generators);
        if eigen != root_sum {
            return Err(Error::Indeterminate(format!(
                "ad-h eigenspace and root-space sum disagree in degree {p}"
            )));
        }
        if !eigen.is_zero() {
            pieces.insert(p, eigen);
        }
    }
    let total: usize = pieces.values().map(SubspaceBasis::dim).sum();
    debug_assert_eq!(total, dim);

    // positive roots first, as stored by the root system
    Ok(LieGrading {
        h: h.clone(),
        depth,
        algebra_dim: dim,
        pieces,
        root_degrees,
    })
}

/// The grading `V = ⊕ V_i`, `V_i = {v : hv = -i·v}`, and the flag
/// `F_j = ⊕_{s ≤ j} V_s`.
#[derive(Clone, Debug)]
pub struct ModuleGrading {
    h: CoweightH,
    m: i64,
    module_dim: usize,
    pieces: BTreeMap<i64, SubspaceBasis>,
    flag: Flag,
}

impl ModuleGrading {
    pub fn h(&self) -> &CoweightH {
        &self.h
    }

    /// `m = χ(h)` for the highest weight `χ`.
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn piece(&self, i: i64) -> SubspaceBasis {
        self.pieces
            .get(&i)
            .cloned()
            .unwrap_or_else(|| SubspaceBasis::zero(self.module_dim))
    }

    pub fn pieces(&self) -> &BTreeMap<i64, SubspaceBasis> {
        &self.pieces
    }

    pub fn flag(&self) -> &Flag {
        &self.flag
    }
}

pub fn compute_module_grading(r: &RootSystemRealization, h: &CoweightH) -> Result<ModuleGrading> {
    if !dual_lattice_check(h, r) {
        return Err(Error::Domain(format!(
            "h = {h:?} is not in the dual of the weight lattice of {r}: some μ(h) is not an integer"
        )));
    }
    let n = r.module_dim();
    let hm = h.module_matrix(r)?;
    let values: Vec<i64> = h
        .module_values(r)
        .iter()
        .map(|v| i64::try_from(v.to_integer()).expect("small weight values"))
        .collect();
    let top = *values.iter().max().expect("nonzero module");
    let bottom = *values.iter().min().expect("nonzero module");

    let mut pieces = BTreeMap::new();
    let mut flag_pieces = Vec::new();
    let mut acc = SubspaceBasis::zero(n);
    for i in -top..=-bottom {
        let eigen = nullspace(&(&hm + &Matrix::identity(n).scale(&Scalar::from(i))));
        let weight_span = SubspaceBasis::span(
            n,
            values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == -i)
                .map(|(b, _)| unit_vector(n, b)),
        );
        if eigen != weight_span {
            return Err(Error::Indeterminate(format!(
                "eigenspace of h for eigenvalue {} disagrees with the weight decomposition",
                -i
            )));
        }
        acc = acc.sum(&eigen)?;
        flag_pieces.push(acc.clone());
        if !eigen.is_zero() {
            pieces.insert(i, eigen);
        }
    }
    let flag = Flag::new(n, -top, flag_pieces)?;
    let chi = h.weight_value(r.highest_weight());
    let m = i64::try_from(chi.to_integer()).expect("integral on the lattice");
    Ok(ModuleGrading {
        h: h.clone(),
        m,
        module_dim: n,
        pieces,
        flag,
    })
}

/// Monomials `z^d·x_α` with `α > 0` and `0 ≤ d < α(h)`.
pub fn tangent_basis(r: &RootSystemRealization, h: &CoweightH) -> Result<Vec<(Root, i64)>> {
    let rs = r.root_system();
    if !h.is_dominant_integral(rs) {
        return Err(Error::Domain(format!("h = {h:?} is not dominant integral")));
    }
    let mut out = Vec::new();
    for alpha in rs.positive_roots() {
        let k = pair(alpha, h)?;
        out.extend((0..k).map(|d| (alpha.clone(), d)));
    }
    Ok(out)
}

/// Which points of the divisor support are allowed to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuliMode {
    FixedGamma,
    MovingGamma,
    MovingGammaModAdG,
}

impl ModuliMode {
    pub const ALL: [ModuliMode; 3] = [
        ModuliMode::FixedGamma,
        ModuliMode::MovingGamma,
        ModuliMode::MovingGammaModAdG,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModuliMode::FixedGamma => "fixed_gamma",
            ModuliMode::MovingGamma => "moving_gamma",
            ModuliMode::MovingGammaModAdG => "moving_gamma_mod_adG",
        }
    }
}

impl fmt::Display for ModuliMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModuliMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fixed_gamma" | "fixed" | "1" => Ok(ModuliMode::FixedGamma),
            "moving_gamma" | "moving" | "2" => Ok(ModuliMode::MovingGamma),
            "moving_gamma_mod_adG" | "moving_gamma_mod_adg" | "mod_adg" | "3" => {
                Ok(ModuliMode::MovingGammaModAdG)
            }
            other => Err(Error::Config(format!(
                "unknown mode {other:?}; expected fixed_gamma, moving_gamma or moving_gamma_mod_adG"
            ))),
        }
    }
}

/// Per-point contributions and totals in every mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    /// `Σ_s s·dim g_s` at each point.
    pub per_point: Vec<i64>,
    pub depths: Vec<i64>,
    pub fixed_gamma: i64,
    pub moving_gamma: i64,
    pub moving_gamma_mod_adg: i64,
    /// The group dimension removed by the last mode.
    pub adg_dim: i64,
}

impl DimensionReport {
    pub fn total(&self, mode: ModuliMode) -> i64 {
        match mode {
            ModuliMode::FixedGamma => self.fixed_gamma,
            ModuliMode::MovingGamma => self.moving_gamma,
            ModuliMode::MovingGammaModAdG => self.moving_gamma_mod_adg,
        }
    }
}

/// Dimension of the acting group `Ad G`: the algebra dimension minus the
/// center, which acts trivially.
pub fn adjoint_group_dim(r: &RootSystemRealization) -> i64 {
    (r.algebra_dim() - r.center_dim()) as i64
}

pub fn dimension_report(r: &RootSystemRealization, hs: &[CoweightH]) -> Result<DimensionReport> {
    let mut per_point = Vec::with_capacity(hs.len());
    let mut depths = Vec::with_capacity(hs.len());
    for h in hs {
        let g = compute_grading(r, h)?;
        let by_grading = g.positive_degree_sum();
        let by_roots: i64 = r
            .root_system()
            .positive_roots()
            .iter()
            .map(|a| pair(a, h))
            .sum::<Result<i64>>()?;
        if by_grading != by_roots {
            return Err(Error::Indeterminate(format!(
                "Σ s·dim g_s = {by_grading} but Σ α(h) = {by_roots}"
            )));
        }
        per_point.push(by_grading);
        depths.push(g.depth());
    }
    let fixed: i64 = per_point.iter().sum();
    let adg_dim = adjoint_group_dim(r);
    let (moving, mod_adg) = if hs.is_empty() {
        (0, 0)
    } else {
        let moving = fixed + hs.len() as i64;
        (moving, moving - adg_dim)
    };
    Ok(DimensionReport {
        per_point,
        depths,
        fixed_gamma: fixed,
        moving_gamma: moving,
        moving_gamma_mod_adg: mod_adg,
        adg_dim,
    })
}

/// Dimension count of the moduli space for the given points in `mode`.
pub fn moduli_dimension(r: &RootSystemRealization, hs: &[CoweightH], mode: ModuliMode) -> Result<i64> {
    Ok(dimension_report(r, hs)?.total(mode))
}

/// Closed-form moduli dimension for `|Γ| = n·genus` points, each carrying
/// `h = diag(1, 0, …, 0)`: `n²(g-1)+1` for `gl(n)`, `(2n-1)n(g-1)` for
/// `so(2n)`, `(2n+1)n(g-1)` for `sp(2n)`. `None` for other algebras.
pub fn closed_form_dimension(r: &RootSystemRealization, genus: i64) -> Option<i64> {
    let l = r.rank() as i64;
    match (r.family(), r.module()) {
        (Family::A, ModuleTag::GlDefining) => {
            let n = l + 1;
            Some(n * n * (genus - 1) + 1)
        }
        (Family::D, ModuleTag::Defining) => Some((2 * l - 1) * l * (genus - 1)),
        (Family::C, ModuleTag::Defining) => Some((2 * l + 1) * l * (genus - 1)),
        _ => None,
    }
}

/// Number of points `|Γ| = n·genus` used by [`closed_form_dimension`], where
/// `n` is the size of the matrices in the examples.
pub fn closed_form_point_count(r: &RootSystemRealization, genus: i64) -> Option<i64> {
    let l = r.rank() as i64;
    match (r.family(), r.module()) {
        (Family::A, ModuleTag::GlDefining) => Some((l + 1) * genus),
        (Family::C | Family::D, ModuleTag::Defining) => Some(l * genus),
        _ => None,
    }
}

/// `diag(1, 0, …, 0)` in the realization's conventions (for B/C/D the
/// defining matrix is `diag(1, 0, …, 0, -1)`).
pub fn first_coordinate_h(r: &RootSystemRealization) -> CoweightH {
    let mut eps = vec![0; r.root_system().eps_dim()];
    eps[0] = 1;
    CoweightH::from_eps_i64(&eps)
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6} {:>6} {:>10}", "point", "depth", "Σ s·dim")?;
        for (i, (d, k)) in self.per_point.iter().zip(&self.depths).enumerate() {
            writeln!(f, "{i:>6} {k:>6} {d:>10}")?;
        }
        writeln!(f, "{:<22}{:>8}", "fixed_gamma", self.fixed_gamma)?;
        writeln!(f, "{:<22}{:>8}", "moving_gamma", self.moving_gamma)?;
        write!(f, "{:<22}{:>8}", "moving_gamma_mod_adG", self.moving_gamma_mod_adg)
    }
}
