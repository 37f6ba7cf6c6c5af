use super::Flag;
use crate::error::{Error, Result};
use crate::exactnum::{nullspace, Matrix, Scalar, SubspaceBasis};
use crate::grading::LieFiltration;
use crate::liecore::RootSystemRealization;

/// `g̃_i = {X ∈ g : X·F_j ⊆ F_{j+i} for every j}`, solved as a linear system in
/// the algebra coordinates of `r`.
pub fn endomorphism_filtration(flag: &Flag, r: &RootSystemRealization) -> Result<LieFiltration> {
    let n = r.module_dim();
    if flag.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: flag.ambient_dim(),
        });
    }
    let basis = r.algebra_basis();
    let d = basis.len();
    let (lo, hi) = (flag.lo(), flag.hi());
    let width = hi - lo;
    let mut pieces = Vec::new();
    for i in -width..=width {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for j in lo..=hi {
            let target = flag.get(j + i);
            if target.is_full() {
                continue;
            }
            let ann = target.annihilator();
            for v in flag.get(j).vectors() {
                let images: Vec<Vec<Scalar>> = basis.iter().map(|b| b.mul_vec(v)).collect();
                for a in ann.row_vecs() {
                    rows.push(images.iter().map(|w| dot(a, w)).collect());
                }
            }
        }
        let piece = if rows.is_empty() {
            SubspaceBasis::full(d)
        } else {
            nullspace(&Matrix::from_rows(d, rows))
        };
        pieces.push(piece);
    }
    Ok(LieFiltration::new(Flag::new(d, -width, pieces)?))
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// How two configurations of flags are matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftVariant {
    /// Same points, flags compared point by point.
    Equid,
    /// Points ignored, flags compared as multisets.
    Equid2,
}

/// Whether `g·F^a_γ = F^b_γ` for every point (or, for [`ShiftVariant::Equid2`],
/// for some bijection between the two lists of flags).
pub fn flags_equal_up_to_shift(
    a: &[(Scalar, Flag)],
    b: &[(Scalar, Flag)],
    g: &Matrix,
    variant: ShiftVariant,
) -> Result<bool> {
    if !g.is_invertible() {
        return Err(Error::Domain("the shift g must be invertible".into()));
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let moved = a
        .iter()
        .map(|(p, f)| Ok((p.clone(), f.map(g)?)))
        .collect::<Result<Vec<_>>>()?;
    match variant {
        ShiftVariant::Equid => Ok(moved.iter().all(|(p, f)| {
            let mut at_p = b.iter().filter(|(q, _)| q == p);
            matches!((at_p.next(), at_p.next()), (Some((_, fb)), None) if fb == f)
        })),
        ShiftVariant::Equid2 => {
            let mut left: Vec<&Flag> = b.iter().map(|(_, f)| f).collect();
            for (_, f) in &moved {
                match left.iter().position(|x| *x == f) {
                    Some(k) => {
                        left.swap_remove(k);
                    }
                    None => return Ok(false),
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::flag_from_h;
    use crate::grading::grading_unchecked;
    use crate::liecore::{build_realization, CoweightH, Family, ModuleTag, Root};

    fn root_span(r: &RootSystemRealization, roots: &[Root], cartan: bool) -> SubspaceBasis {
        let d = r.algebra_dim();
        let mut s = if cartan { r.cartan_subspace() } else { SubspaceBasis::zero(d) };
        for a in roots {
            let i = r.root_coordinate_index(a).unwrap();
            let mut v = vec![Scalar::from(0); d];
            v[i] = Scalar::from(1);
            s = s.sum(&SubspaceBasis::span(d, [v])).unwrap();
        }
        s
    }

    #[test]
    fn trivial_flag_is_preserved_by_everything() {
        let r = build_realization(Family::C, 2, ModuleTag::Defining).unwrap();
        let f = endomorphism_filtration(&Flag::trivial(4, 0), &r).unwrap();
        assert!(f.piece(0).is_full());
        assert!(f.piece(-1).is_zero());
    }

    #[test]
    fn gl2_flag_of_diag_1_0() {
        let r = build_realization(Family::A, 1, ModuleTag::GlDefining).unwrap();
        let h = CoweightH::from_eps_i64(&[1, 0]);
        let f = endomorphism_filtration(&flag_from_h(&r, &h).unwrap(), &r).unwrap();
        // E12 lowers the index: it sends e2 (index 0) to e1 (index -1)
        let up = Root(vec![1, -1]);
        assert_eq!(f.piece(-1), root_span(&r, std::slice::from_ref(&up), false));
        assert_eq!(f.piece(0), root_span(&r, &[up], true));
        assert!(f.piece(1).is_full());
        assert!(f.piece(-2).is_zero());
        assert!(f.is_monotone());
    }

    #[test]
    fn sl2_coroot_flag() {
        let r = build_realization(Family::A, 1, ModuleTag::Defining).unwrap();
        let h = CoweightH::from_simple_values(r.root_system(), &[2]);
        let f = endomorphism_filtration(&flag_from_h(&r, &h).unwrap(), &r).unwrap();
        let alpha = Root(vec![1, -1]);
        assert!(f.piece(-3).is_zero());
        assert_eq!(f.piece(-2), root_span(&r, std::slice::from_ref(&alpha), false));
        assert_eq!(f.piece(-1), root_span(&r, std::slice::from_ref(&alpha), false));
        assert_eq!(f.piece(0), root_span(&r, &[alpha], true));
        assert!(f.piece(2).is_full());
    }

    #[test]
    fn flag_of_minus_h_gives_grading_filtration() {
        for (family, rank, module) in [
            (Family::A, 2, ModuleTag::GlDefining),
            (Family::B, 2, ModuleTag::Defining),
            (Family::C, 2, ModuleTag::Defining),
            (Family::A, 1, ModuleTag::Adjoint),
        ] {
            let r = build_realization(family, rank, module).unwrap();
            let h = if module == ModuleTag::Adjoint {
                CoweightH::from_simple_values(r.root_system(), &[1])
            } else {
                crate::grading::first_coordinate_h(&r)
            };
            let expected = grading_unchecked(&r, &h).unwrap().filtration();
            let got = endomorphism_filtration(&flag_from_h(&r, &h.neg()).unwrap(), &r).unwrap();
            for p in -4..=4 {
                assert_eq!(got.piece(p), expected.piece(p), "{} at {p}", r.tag());
            }
        }
    }

    #[test]
    fn shifted_configs_compare_equal() {
        let r = build_realization(Family::A, 1, ModuleTag::GlDefining).unwrap();
        let f1 = flag_from_h(&r, &CoweightH::from_eps_i64(&[1, 0])).unwrap();
        let f2 = flag_from_h(&r, &CoweightH::from_eps_i64(&[0, 1])).unwrap();
        let a = vec![(Scalar::from(0), f1.clone()), (Scalar::from(1), f2.clone())];
        let g = Matrix::from_i64(&[&[1, 2], &[3, 7]]);
        let b: Vec<_> = a.iter().map(|(p, f)| (p.clone(), f.map(&g).unwrap())).collect();
        let id = Matrix::identity(2);
        assert!(flags_equal_up_to_shift(&a, &a, &id, ShiftVariant::Equid).unwrap());
        assert!(flags_equal_up_to_shift(&a, &b, &g, ShiftVariant::Equid).unwrap());
        assert!(!flags_equal_up_to_shift(&a, &b, &id, ShiftVariant::Equid).unwrap());

        let moved: Vec<_> = a.iter().map(|(p, f)| (p + &Scalar::from(5), f.clone())).collect();
        assert!(!flags_equal_up_to_shift(&a, &moved, &id, ShiftVariant::Equid).unwrap());
        assert!(flags_equal_up_to_shift(&a, &moved, &id, ShiftVariant::Equid2).unwrap());

        let doubled = vec![(Scalar::from(0), f1.clone()), (Scalar::from(1), f1)];
        assert!(!flags_equal_up_to_shift(&a, &doubled, &id, ShiftVariant::Equid2).unwrap());

        let singular = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            flags_equal_up_to_shift(&a, &a, &singular, ShiftVariant::Equid),
            Err(Error::Domain(_))
        ));
    }
}
