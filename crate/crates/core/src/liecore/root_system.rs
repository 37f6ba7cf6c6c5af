use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};

/// Classical Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Config(format!("unknown family {other:?}; expected A, B, C or D"))),
        }
    }
}

/// A root in the standard ε-coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn eps_diff(dim: usize, i: usize, j: usize) -> Root {
        let mut v = vec![0; dim];
        v[i] += 1;
        v[j] -= 1;
        Root(v)
    }

    fn eps_sum(dim: usize, i: usize, j: usize) -> Root {
        let mut v = vec![0; dim];
        v[i] += 1;
        v[j] += 1;
        Root(v)
    }

    fn eps_multiple(dim: usize, i: usize, c: i64) -> Root {
        let mut v = vec![0; dim];
        v[i] = c;
        Root(v)
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    positive: Vec<Root>,
    simple: Vec<Root>,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        build_root_system(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ε-coordinates: `l + 1` for `A_l`, `l` otherwise.
    pub fn eps_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Positive roots followed by their negatives, in matching order.
    pub fn roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(|r| -r))
            .collect()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.positive.iter().any(|p| p == r || &-p == r)
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        self.positive.contains(r)
    }

    /// Coordinates of `r` in the basis of simple roots, or `None` if `r` is
    /// not in their rational span.
    pub fn simple_coordinates(&self, r: &Root) -> Option<Vec<Scalar>> {
        // solve Σ c_i α_i = r column-wise via the augmented system
        let dim = self.eps_dim();
        let a = Matrix::from_fn(dim, self.rank + 1, |i, j| {
            if j < self.rank {
                Scalar::from(self.simple[j].0[i])
            } else {
                Scalar::from(r.0[i])
            }
        });
        let red = a.rref();
        if red.pivots.contains(&self.rank) {
            return None;
        }
        let mut c = vec![num_traits::Zero::zero(); self.rank];
        for (row, &p) in red.pivots.iter().enumerate() {
            c[p] = red.reduced[(row, self.rank)].clone();
        }
        Some(c)
    }

    /// The highest root (unique dominant root of maximal height).
    pub fn highest_root(&self) -> Root {
        let dim = self.eps_dim();
        match (self.family, self.rank) {
            (Family::A, _) => Root::eps_diff(dim, 0, dim - 1),
            (Family::B, 1) => Root::eps_multiple(dim, 0, 1),
            (Family::C, _) => Root::eps_multiple(dim, 0, 2),
            (Family::B, _) | (Family::D, _) => Root::eps_sum(dim, 0, 1),
        }
    }
}

/// Enumerates the root system of the classical type `family` and rank.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let min_rank = if family == Family::D { 2 } else { 1 };
    if rank < min_rank {
        return Err(Error::Config(format!(
            "rank {rank} is not supported for family {family} (minimum {min_rank})"
        )));
    }
    let l = rank;
    let dim = if family == Family::A { l + 1 } else { l };
    let mut positive = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            positive.push(Root::eps_diff(dim, i, j));
            if family != Family::A {
                positive.push(Root::eps_sum(dim, i, j));
            }
        }
    }
    match family {
        Family::B => positive.extend((0..l).map(|i| Root::eps_multiple(dim, i, 1))),
        Family::C => positive.extend((0..l).map(|i| Root::eps_multiple(dim, i, 2))),
        _ => {}
    }
    let mut simple: Vec<Root> = (0..dim - 1).map(|i| Root::eps_diff(dim, i, i + 1)).collect();
    match family {
        Family::A => {}
        Family::B => simple.push(Root::eps_multiple(dim, l - 1, 1)),
        Family::C => simple.push(Root::eps_multiple(dim, l - 1, 2)),
        Family::D => simple.push(Root::eps_sum(dim, l - 2, l - 1)),
    }
    debug_assert_eq!(simple.len(), l);
    Ok(RootSystem {
        family,
        rank,
        positive,
        simple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Independent enumeration: all integer vectors with entries in {-2..2}
    /// that match the textbook description of each family.
    fn brute_force_roots(family: Family, l: usize) -> BTreeSet<Root> {
        let dim = if family == Family::A { l + 1 } else { l };
        let mut out = BTreeSet::new();
        let total = 5usize.pow(dim as u32);
        for code in 0..total {
            let mut v = Vec::with_capacity(dim);
            let mut c = code;
            for _ in 0..dim {
                v.push((c % 5) as i64 - 2);
                c /= 5;
            }
            let ones = v.iter().filter(|x| x.abs() == 1).count();
            let twos = v.iter().filter(|x| x.abs() == 2).count();
            let sum: i64 = v.iter().sum();
            let keep = match family {
                Family::A => twos == 0 && ones == 2 && sum == 0,
                Family::B => twos == 0 && (ones == 1 || ones == 2),
                Family::C => (twos == 0 && ones == 2) || (twos == 1 && ones == 0),
                Family::D => twos == 0 && ones == 2,
            };
            if keep {
                out.insert(Root(v));
            }
        }
        out
    }

    #[test]
    fn a1_has_two_roots() {
        let rs = build_root_system(Family::A, 1).unwrap();
        assert_eq!(rs.roots().len(), 2);
        assert_eq!(rs.roots(), vec![Root(vec![1, -1]), Root(vec![-1, 1])]);
    }

    #[test]
    fn root_counts_match_enumeration() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for l in 1..=4 {
                let Ok(rs) = build_root_system(family, l) else {
                    assert_eq!((family, l), (Family::D, 1));
                    continue;
                };
                let ours: BTreeSet<Root> = rs.roots().into_iter().collect();
                assert_eq!(ours.len(), rs.roots().len(), "duplicates in {family}{l}");
                assert_eq!(ours, brute_force_roots(family, l), "{family}{l}");
                let expected = match family {
                    Family::A => l * (l + 1),
                    Family::B | Family::C => 2 * l * l,
                    Family::D => 2 * l * (l - 1),
                };
                assert_eq!(ours.len(), expected);
            }
        }
    }

    #[test]
    fn c2_and_d3_counts() {
        assert_eq!(build_root_system(Family::C, 2).unwrap().roots().len(), 8);
        assert_eq!(build_root_system(Family::D, 3).unwrap().roots().len(), 12);
    }

    #[test]
    fn positive_roots_are_nonnegative_in_simple_roots() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for l in 2..=4 {
                let rs = build_root_system(family, l).unwrap();
                for r in rs.positive_roots() {
                    let c = rs.simple_coordinates(r).unwrap();
                    for x in &c {
                        let n = x.to_integer().expect("integral coordinates");
                        assert!(n >= num_bigint::BigInt::from(0), "{r:?} in {family}{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_rank() {
        assert!(matches!(build_root_system(Family::D, 1), Err(Error::Config(_))));
        assert!(build_root_system(Family::A, 0).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("C".parse::<Family>().unwrap(), Family::C);
        assert!("E".parse::<Family>().is_err());
    }
}
