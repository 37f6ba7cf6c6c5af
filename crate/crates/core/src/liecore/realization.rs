use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::root_system::{build_root_system, Family, Root, RootSystem};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar, SubspaceBasis};

/// Which module the algebra acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleTag {
    /// `sl(n)`, `so(n)` or `sp(2n)` on its standard module.
    Defining,
    /// The algebra acting on itself (not available for `gl`).
    Adjoint,
    /// Type A only: the full `gl(n)` on `K^n`, center included.
    GlDefining,
}

impl ModuleTag {
    fn suffix(self) -> &'static str {
        match self {
            ModuleTag::Defining => "d",
            ModuleTag::Adjoint => "adj",
            ModuleTag::GlDefining => "gl",
        }
    }
}

impl FromStr for ModuleTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "defining" | "d" => Ok(ModuleTag::Defining),
            "adjoint" | "adj" => Ok(ModuleTag::Adjoint),
            "gl" => Ok(ModuleTag::GlDefining),
            other => Err(Error::Config(format!(
                "unknown module {other:?}; expected defining, adjoint or gl"
            ))),
        }
    }
}

/// Parses tags such as `A1d`, `A1adj`, `C2d`, `A2gl`.
pub fn parse_realization_tag(tag: &str) -> Result<(Family, usize, ModuleTag)> {
    let bad = || Error::Config(format!("malformed realization tag {tag:?}"));
    let mut chars = tag.chars();
    let family: Family = chars.next().ok_or_else(bad)?.to_string().parse()?;
    let rest = chars.as_str();
    let split = rest.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
    let rank: usize = rest[..split].parse().map_err(|_| bad())?;
    let module: ModuleTag = rest[split..].parse().map_err(|_| bad())?;
    Ok((family, rank, module))
}

/// A classical Lie algebra as explicit matrices on a module with a weight
/// basis: every standard basis vector of the module is a weight vector.
#[derive(Clone, Debug)]
pub struct RootSystemRealization {
    root_system: RootSystem,
    module: ModuleTag,
    module_dim: usize,
    cartan: Vec<Matrix>,
    /// Aligned with `root_system.roots()`.
    root_vectors: Vec<Matrix>,
    /// Weight of each standard basis vector, in ε-coordinates.
    weights: Vec<Vec<i64>>,
    highest_weight: Vec<i64>,
    coords: CoordinateSolver,
}

/// Solves for coordinates in a fixed basis of matrices.
#[derive(Clone, Debug)]
struct CoordinateSolver {
    /// Rows of the flattened matrices where the basis is independent.
    rows: Vec<usize>,
    /// Inverse of the basis restricted to `rows`.
    inverse: Matrix,
    basis_flat: Matrix,
}

impl CoordinateSolver {
    fn new(basis: &[Matrix]) -> Self {
        let n2 = basis.first().map_or(0, |b| b.rows() * b.cols());
        // columns are flattened basis matrices
        let flat = Matrix::from_fn(n2, basis.len(), |i, j| basis[j].as_slice()[i].clone());
        let pivots = flat.transpose().rref().pivots;
        assert_eq!(pivots.len(), basis.len(), "algebra basis is linearly dependent");
        let sub = Matrix::from_fn(basis.len(), basis.len(), |i, j| flat[(pivots[i], j)].clone());
        let inverse = sub.inverse().expect("independent rows give an invertible block");
        CoordinateSolver {
            rows: pivots,
            inverse,
            basis_flat: flat,
        }
    }

    fn solve(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        let flat = x.as_slice();
        if flat.len() != self.basis_flat.rows() {
            return None;
        }
        let rhs: Vec<Scalar> = self.rows.iter().map(|&r| flat[r].clone()).collect();
        let c = self.inverse.mul_vec(&rhs);
        (self.basis_flat.mul_vec(&c) == flat).then_some(c)
    }
}

impl RootSystemRealization {
    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn family(&self) -> Family {
        self.root_system.family()
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn module(&self) -> ModuleTag {
        self.module
    }

    pub fn tag(&self) -> String {
        format!("{}{}{}", self.family(), self.rank(), self.module.suffix())
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Basis of the Cartan subalgebra (for `gl`, including the center).
    pub fn cartan_basis(&self) -> &[Matrix] {
        &self.cartan
    }

    pub fn roots(&self) -> Vec<Root> {
        self.root_system.roots()
    }

    pub fn root_vectors(&self) -> &[Matrix] {
        &self.root_vectors
    }

    pub fn root_vector(&self, alpha: &Root) -> Option<&Matrix> {
        let idx = self.roots().iter().position(|r| r == alpha)?;
        Some(&self.root_vectors[idx])
    }

    pub fn module_weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.highest_weight
    }

    /// Cartan basis followed by the root vectors in root order.
    pub fn algebra_basis(&self) -> Vec<Matrix> {
        self.cartan.iter().chain(&self.root_vectors).cloned().collect()
    }

    pub fn algebra_dim(&self) -> usize {
        self.cartan.len() + self.root_vectors.len()
    }

    /// Dimension of the center (1 for `gl`, 0 otherwise).
    pub fn center_dim(&self) -> usize {
        usize::from(self.module == ModuleTag::GlDefining)
    }

    /// Coordinates of `x` in [`Self::algebra_basis`], or `None` if `x` is not
    /// in the algebra.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        self.coords.solve(x)
    }

    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        assert_eq!(coords.len(), self.algebra_dim());
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (c, b) in coords.iter().zip(self.algebra_basis()) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// Matrix of `ad x` in the algebra basis.
    pub fn ad_matrix(&self, x: &Matrix) -> Matrix {
        let basis = self.algebra_basis();
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| {
                self.coordinates(&x.commutator(b))
                    .expect("the algebra is closed under brackets")
            })
            .collect();
        Matrix::from_fn(basis.len(), basis.len(), |i, j| cols[j][i].clone())
    }

    /// Zero vector in coordinates except a one at the Cartan/root slot.
    pub fn root_coordinate_index(&self, alpha: &Root) -> Option<usize> {
        self.roots().iter().position(|r| r == alpha).map(|i| self.cartan.len() + i)
    }

    /// Subspace (in algebra coordinates) spanned by the Cartan subalgebra.
    pub fn cartan_subspace(&self) -> SubspaceBasis {
        let d = self.algebra_dim();
        SubspaceBasis::span(d, (0..self.cartan.len()).map(|i| unit_vector(d, i)))
    }
}

pub(crate) fn unit_vector(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Builds the matrix realization of the classical algebra of the given type
/// on the requested module.
pub fn build_realization(family: Family, rank: usize, module: ModuleTag) -> Result<RootSystemRealization> {
    let rs = build_root_system(family, rank)?;
    match module {
        ModuleTag::Defining => Ok(defining(rs, false)),
        ModuleTag::GlDefining => {
            if family != Family::A {
                return Err(Error::Config(format!(
                    "the gl module exists only for family A, not {family}"
                )));
            }
            Ok(defining(rs, true))
        }
        ModuleTag::Adjoint => Ok(adjoint(&defining(rs, false))),
    }
}

/// Weights of the standard basis of the defining module, in ε-coordinates.
fn defining_weights(rs: &RootSystem) -> Vec<Vec<i64>> {
    let l = rs.rank();
    let dim = rs.eps_dim();
    let eps = |i: usize, sign: i64| {
        let mut v = vec![0; dim];
        v[i] = sign;
        v
    };
    match rs.family() {
        Family::A => (0..dim).map(|i| eps(i, 1)).collect(),
        Family::B => (0..l)
            .map(|i| eps(i, 1))
            .chain(std::iter::once(vec![0; dim]))
            .chain((0..l).rev().map(|i| eps(i, -1)))
            .collect(),
        Family::C | Family::D => (0..l)
            .map(|i| eps(i, 1))
            .chain((0..l).rev().map(|i| eps(i, -1)))
            .collect(),
    }
}

/// The invariant anti-diagonal form: symmetric for B/D, symplectic for C.
fn invariant_form(family: Family, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        if i + j != n - 1 {
            Scalar::zero()
        } else if family == Family::C && i >= n / 2 {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    })
}

fn defining(rs: RootSystem, gl: bool) -> RootSystemRealization {
    let family = rs.family();
    let weights = defining_weights(&rs);
    let n = weights.len();
    let l = rs.rank();

    let cartan: Vec<Matrix> = match family {
        Family::A if gl => (0..n).map(|i| Matrix::unit(n, n, i, i)).collect(),
        Family::A => (0..l)
            .map(|i| &Matrix::unit(n, n, i, i) - &Matrix::unit(n, n, i + 1, i + 1))
            .collect(),
        _ => (0..l)
            .map(|i| &Matrix::unit(n, n, i, i) - &Matrix::unit(n, n, n - 1 - i, n - 1 - i))
            .collect(),
    };

    let weight_of_unit = |a: usize, b: usize| -> Root {
        Root(weights[a].iter().zip(&weights[b]).map(|(x, y)| x - y).collect())
    };

    let root_vectors: Vec<Matrix> = rs
        .roots()
        .iter()
        .map(|alpha| {
            if family == Family::A {
                let i = alpha.coords().iter().position(|&c| c == 1).expect("A root");
                let j = alpha.coords().iter().position(|&c| c == -1).expect("A root");
                return Matrix::unit(n, n, i, j);
            }
            // project a matrix unit of weight alpha onto the algebra:
            // X ↦ X - J^{-1} Xᵀ J keeps the weight and satisfies Xᵀ J + J X = 0
            let j_form = invariant_form(family, n);
            let j_inv = j_form.inverse().expect("nondegenerate form");
            for a in 0..n {
                for b in 0..n {
                    if a == b || weight_of_unit(a, b) != *alpha {
                        continue;
                    }
                    let e = Matrix::unit(n, n, a, b);
                    let x = &e - &(&(&j_inv * &e.transpose()) * &j_form);
                    if !x.is_zero() {
                        return x;
                    }
                }
            }
            unreachable!("every root of {family}{l} has a matrix-unit representative")
        })
        .collect();

    let highest_weight = weights[0].clone();
    let coords = CoordinateSolver::new(&cartan.iter().chain(&root_vectors).cloned().collect::<Vec<_>>());
    RootSystemRealization {
        root_system: rs,
        module: if gl { ModuleTag::GlDefining } else { ModuleTag::Defining },
        module_dim: n,
        cartan,
        root_vectors,
        weights,
        highest_weight,
        coords,
    }
}

fn adjoint(def: &RootSystemRealization) -> RootSystemRealization {
    let rs = def.root_system.clone();
    let dim = def.algebra_dim();
    let cartan: Vec<Matrix> = def.cartan.iter().map(|h| def.ad_matrix(h)).collect();
    let root_vectors: Vec<Matrix> = def.root_vectors.iter().map(|x| def.ad_matrix(x)).collect();
    let eps_dim = rs.eps_dim();
    let weights: Vec<Vec<i64>> = std::iter::repeat_n(vec![0; eps_dim], def.cartan.len())
        .chain(rs.roots().into_iter().map(|r| r.0))
        .collect();
    debug_assert_eq!(weights.len(), dim);
    let highest_weight = rs.highest_root().0;
    let coords = CoordinateSolver::new(&cartan.iter().chain(&root_vectors).cloned().collect::<Vec<_>>());
    RootSystemRealization {
        root_system: rs,
        module: ModuleTag::Adjoint,
        module_dim: dim,
        cartan,
        root_vectors,
        weights,
        highest_weight,
        coords,
    }
}

impl fmt::Display for RootSystemRealization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.family(), self.module) {
            (Family::A, ModuleTag::GlDefining) => format!("gl({})", self.module_dim),
            (Family::A, _) => format!("sl({})", self.rank() + 1),
            (Family::B, _) => format!("so({})", 2 * self.rank() + 1),
            (Family::C, _) => format!("sp({})", 2 * self.rank()),
            (Family::D, _) => format!("so({})", 2 * self.rank()),
        };
        let module = match self.module {
            ModuleTag::Adjoint => "adjoint",
            _ => "defining",
        };
        write!(f, "{name} on its {module} module")
    }
}
