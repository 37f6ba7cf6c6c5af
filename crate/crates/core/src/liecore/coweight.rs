use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::realization::{ModuleTag, RootSystemRealization};
use super::root_system::{Family, Root, RootSystem};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};

/// An element `h` of the Cartan subalgebra, stored by its ε-coordinates so
/// that `ε_i(h) = eps[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoweightH {
    eps: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CoweightH {
    pub fn from_eps(eps: Vec<BigRational>) -> Self {
        CoweightH { eps }
    }

    pub fn from_eps_i64(eps: &[i64]) -> Self {
        CoweightH::from_eps(eps.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rs: &RootSystem) -> Self {
        CoweightH::from_eps(vec![BigRational::zero(); rs.eps_dim()])
    }

    /// The element with `α_i(h) = values[i]`; in type A it is the traceless one.
    pub fn from_simple_values(rs: &RootSystem, values: &[i64]) -> Self {
        CoweightH::solve(rs, values, false)
    }

    /// Like [`Self::from_simple_values`], but on a `gl` module type A uses the
    /// lift with vanishing last entry, so `[1, 0, …]` gives `diag(1, 0, …, 0)`.
    pub fn for_realization(r: &RootSystemRealization, values: &[i64]) -> Self {
        CoweightH::solve(r.root_system(), values, r.module() == ModuleTag::GlDefining)
    }

    fn solve(rs: &RootSystem, values: &[i64], gl_lift: bool) -> Self {
        assert_eq!(values.len(), rs.rank(), "one value per simple root");
        let dim = rs.eps_dim();
        let mut rows: Vec<Vec<Scalar>> = rs
            .simple_roots()
            .iter()
            .map(|a| a.coords().iter().map(|&c| Scalar::from(c)).collect())
            .collect();
        let mut rhs: Vec<Scalar> = values.iter().map(|&v| Scalar::from(v)).collect();
        if rs.family() == Family::A {
            let extra = if gl_lift {
                (0..dim).map(|i| Scalar::from(i64::from(i == dim - 1))).collect()
            } else {
                vec![Scalar::from(1); dim]
            };
            rows.push(extra);
            rhs.push(Scalar::zero());
        }
        let m = Matrix::from_rows(dim, rows);
        let inv = m.inverse().expect("simple roots form a basis");
        let eps = inv.mul_vec(&rhs).into_iter().map(|s| s.re().clone()).collect();
        CoweightH { eps }
    }

    pub fn eps(&self) -> &[BigRational] {
        &self.eps
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        CoweightH::from_eps(self.eps.iter().map(|c| -c).collect())
    }

    /// `μ(h)` for a weight in ε-coordinates.
    pub fn weight_value(&self, mu: &[i64]) -> BigRational {
        assert_eq!(mu.len(), self.eps.len(), "weight and h live in different ranks");
        mu.iter()
            .zip(&self.eps)
            .filter(|(m, _)| **m != 0)
            .map(|(&m, c)| c * rat(m))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn pair_exact(&self, alpha: &Root) -> BigRational {
        self.weight_value(alpha.coords())
    }

    pub fn simple_values(&self, rs: &RootSystem) -> Vec<BigRational> {
        rs.simple_roots().iter().map(|a| self.pair_exact(a)).collect()
    }

    /// `α(h) ∈ Z` for every root; checking simple roots suffices.
    pub fn is_integral(&self, rs: &RootSystem) -> bool {
        self.simple_values(rs).iter().all(|v| v.is_integer())
    }

    /// Integral with `α_i(h) ≥ 0` on every simple root.
    pub fn is_dominant_integral(&self, rs: &RootSystem) -> bool {
        self.simple_values(rs)
            .iter()
            .all(|v| v.is_integer() && !v.is_negative())
    }

    /// Values `μ_b(h)` on the weight basis of the module.
    pub fn module_values(&self, r: &RootSystemRealization) -> Vec<BigRational> {
        r.module_weights().iter().map(|mu| self.weight_value(mu)).collect()
    }

    /// `h` acting on the module: `diag(μ_b(h))`. Fails when `h` is not in the
    /// Cartan subalgebra of the realized algebra (e.g. a non-traceless `h`
    /// for `sl`).
    pub fn module_matrix(&self, r: &RootSystemRealization) -> Result<Matrix> {
        let m = Matrix::diag(
            &self
                .module_values(r)
                .into_iter()
                .map(Scalar::from_rational)
                .collect::<Vec<_>>(),
        );
        if r.coordinates(&m).is_none() {
            return Err(Error::Domain(format!(
                "h = {self:?} is not in the Cartan subalgebra of {r}"
            )));
        }
        Ok(m)
    }

    pub fn algebra_coordinates(&self, r: &RootSystemRealization) -> Result<Vec<Scalar>> {
        let m = self.module_matrix(r)?;
        Ok(r.coordinates(&m).expect("checked by module_matrix"))
    }
}

impl fmt::Debug for CoweightH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("diag(")?;
        for (i, c) in self.eps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `α(h)` as an integer; fails if `h` is not integral on `α`.
pub fn pair(alpha: &Root, h: &CoweightH) -> Result<i64> {
    let v = h.pair_exact(alpha);
    if !v.is_integer() {
        return Err(Error::Domain(format!("α(h) = {v} is not an integer for α = {alpha:?}")));
    }
    i64::try_from(v.to_integer()).map_err(|_| Error::Domain("α(h) out of range".into()))
}

/// True iff `μ(h) ∈ Z` for every weight `μ` of the module, i.e. `h` lies in
/// the lattice dual to the module's weight lattice.
pub fn dual_lattice_check(h: &CoweightH, r: &RootSystemRealization) -> bool {
    h.module_values(r).iter().all(|v| v.is_integer())
}

/// The weight lattice `L_V` of a module and the root lattice `Q`, each given
/// by generators in ε-coordinates.
#[derive(Clone, Debug)]
pub struct WeightLattices {
    weights: Vec<Vec<i64>>,
    simple_roots: Vec<Root>,
}

impl WeightLattices {
    pub fn new(r: &RootSystemRealization) -> Self {
        WeightLattices {
            weights: r.module_weights().to_vec(),
            simple_roots: r.root_system().simple_roots().to_vec(),
        }
    }

    pub fn weight_generators(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn root_generators(&self) -> &[Root] {
        &self.simple_roots
    }

    /// Certifies `Q ⊆ L_V` by writing every simple root as a weight or a
    /// difference of two weights.
    pub fn contains_root_lattice(&self) -> bool {
        self.simple_roots.iter().all(|a| {
            self.weights.iter().any(|w| w == a.coords())
                || self.weights.iter().any(|w1| {
                    self.weights.iter().any(|w2| {
                        w1.iter().zip(w2).map(|(x, y)| x - y).eq(a.coords().iter().copied())
                    })
                })
        })
    }

    /// `h ∈ L_V*`.
    pub fn dual_contains(&self, h: &CoweightH) -> bool {
        self.weights.iter().all(|w| h.weight_value(w).is_integer())
    }

    /// `h ∈ Q*`.
    pub fn root_dual_contains(&self, h: &CoweightH) -> bool {
        self.simple_roots.iter().all(|a| h.pair_exact(a).is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::realization::build_realization;
    use crate::liecore::root_system::build_root_system;

    #[test]
    fn pairing_with_zero_is_zero() {
        let rs = build_root_system(Family::B, 3).unwrap();
        let h = CoweightH::zero(&rs);
        for a in rs.roots() {
            assert_eq!(pair(&a, &h).unwrap(), 0);
        }
    }

    #[test]
    fn gl_first_coordinate_pairs_to_one() {
        let r = build_realization(Family::A, 3, ModuleTag::GlDefining).unwrap();
        let h = CoweightH::for_realization(&r, &[1, 0, 0]);
        assert_eq!(h, CoweightH::from_eps_i64(&[1, 0, 0, 0]));
        for j in 1..4 {
            let mut a = vec![0; 4];
            a[0] = 1;
            a[j] = -1;
            assert_eq!(pair(&Root(a), &h).unwrap(), 1);
        }
    }

    #[test]
    fn sp_long_root_pairs_to_two() {
        let r = build_realization(Family::C, 3, ModuleTag::Defining).unwrap();
        let h = CoweightH::from_eps_i64(&[1, 0, 0]);
        let alpha = Root(vec![2, 0, 0]);
        assert_eq!(pair(&alpha, &h).unwrap(), 2);
        // commutator oracle: [h, x_α] = 2 x_α
        let hm = h.module_matrix(&r).unwrap();
        assert_eq!(hm, Matrix::diag(&[1, 0, 0, 0, 0, -1].map(Scalar::from)));
        let x = r.root_vector(&alpha).unwrap();
        assert_eq!(hm.commutator(x), x.scale(&Scalar::from(2)));
    }

    #[test]
    fn pairing_is_odd() {
        let rs = build_root_system(Family::D, 4).unwrap();
        let h = CoweightH::from_simple_values(&rs, &[1, 0, 2, 1]);
        for a in rs.positive_roots() {
            assert_eq!(pair(&-a, &h).unwrap(), -pair(a, &h).unwrap());
        }
    }

    #[test]
    fn sl2_lattice_example() {
        let d = build_realization(Family::A, 1, ModuleTag::Defining).unwrap();
        let adj = build_realization(Family::A, 1, ModuleTag::Adjoint).unwrap();
        let rs = d.root_system().clone();
        let coroot = CoweightH::from_simple_values(&rs, &[2]);
        let half = CoweightH::from_simple_values(&rs, &[1]);
        assert!(dual_lattice_check(&coroot, &d));
        assert!(dual_lattice_check(&half, &adj));
        assert!(!dual_lattice_check(&half, &d));
        // the defining weights ±1 give ±1/2 on the half-coroot
        let vals = half.module_values(&d);
        assert_eq!(vals, vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]);
    }

    #[test]
    fn root_lattice_embeds_in_weight_lattice() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for module in [ModuleTag::Defining, ModuleTag::Adjoint] {
                let r = build_realization(family, 3, module).unwrap();
                let lat = WeightLattices::new(&r);
                assert!(lat.contains_root_lattice(), "{}", r.tag());
                // hence L_V* ⊆ Q*: spot check integral elements of L_V*
                let h = CoweightH::from_simple_values(r.root_system(), &[1, 1, 2]);
                if lat.dual_contains(&h) {
                    assert!(lat.root_dual_contains(&h));
                }
            }
        }
    }

    #[test]
    fn non_traceless_h_is_not_in_sl() {
        let r = build_realization(Family::A, 1, ModuleTag::Defining).unwrap();
        assert!(CoweightH::from_eps_i64(&[1, 0]).module_matrix(&r).is_err());
        let gl = build_realization(Family::A, 1, ModuleTag::GlDefining).unwrap();
        assert!(CoweightH::from_eps_i64(&[1, 0]).module_matrix(&gl).is_ok());
    }
}
