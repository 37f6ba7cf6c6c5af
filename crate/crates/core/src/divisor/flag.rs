//! Integer-indexed chains of subspaces, zero far to the left and the whole
//! space far to the right.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, SubspaceBasis};

/// `F_i` for all integers `i`: zero below [`Flag::lo`], the stored pieces on
/// `lo..=hi`, and the whole space from [`Flag::hi`] on. The representation is
/// normalized (first piece nonzero, last piece the whole space and the only
/// full one), so `==` compares flags as chains.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    ambient: usize,
    lo: i64,
    pieces: Vec<SubspaceBasis>,
}

impl Flag {
    /// `pieces[j]` is `F_{lo + j}`; indices past the last piece are the whole space.
    pub fn new(ambient: usize, lo: i64, pieces: Vec<SubspaceBasis>) -> Result<Self> {
        if let Some(p) = pieces.iter().find(|p| p.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: p.ambient_dim(),
            });
        }
        let mut f = Flag { ambient, lo, pieces };
        f.normalize();
        Ok(f)
    }

    /// `F_i = 0` for `i < jump`, `F_i = V` from `jump` on.
    pub fn trivial(ambient: usize, jump: i64) -> Self {
        Flag {
            ambient,
            lo: jump,
            pieces: vec![SubspaceBasis::full(ambient)],
        }
    }

    fn normalize(&mut self) {
        let lead = self.pieces.iter().take_while(|p| p.is_zero()).count();
        self.pieces.drain(..lead);
        self.lo += lead as i64;
        if self.pieces.last().is_none_or(|p| !p.is_full()) {
            self.pieces.push(SubspaceBasis::full(self.ambient));
        }
        while self.pieces.len() >= 2 && self.pieces[self.pieces.len() - 2].is_full() {
            self.pieces.pop();
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Smallest index with a nonzero piece.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Smallest index from which the chain is the whole space.
    pub fn hi(&self) -> i64 {
        self.lo + self.pieces.len() as i64 - 1
    }

    pub fn get(&self, i: i64) -> SubspaceBasis {
        if i < self.lo {
            SubspaceBasis::zero(self.ambient)
        } else if i >= self.hi() {
            SubspaceBasis::full(self.ambient)
        } else {
            self.pieces[(i - self.lo) as usize].clone()
        }
    }

    /// `(i, F_i)` for `i` in `lo..=hi`.
    pub fn pieces(&self) -> impl Iterator<Item = (i64, &SubspaceBasis)> {
        self.pieces.iter().enumerate().map(move |(j, p)| (self.lo + j as i64, p))
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces().map(|(i, p)| (i, p.dim())).collect()
    }

    /// `F_i ⊆ F_{i+1}` for every `i`.
    pub fn is_nested(&self) -> bool {
        self.pieces
            .windows(2)
            .all(|w| w[1].contains(&w[0]).expect("same ambient"))
    }

    /// `Σ_{i ∈ range} codim F_i`.
    pub fn codim_sum(&self, from: i64, to: i64) -> usize {
        (from..=to).map(|i| self.get(i).codim()).sum()
    }

    /// The chain `g·F_i`.
    pub fn map(&self, g: &Matrix) -> Result<Flag> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: g.cols(),
            });
        }
        let pieces = self.pieces.iter().map(|p| p.image(g)).collect::<Result<Vec<_>>>()?;
        Flag::new(self.ambient, self.lo, pieces)
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Flag{")?;
        for (k, (i, p)) in self.pieces().enumerate() {
            if k > 0 {
                f.write_str(" ⊆ ")?;
            }
            write!(f, "F_{i}:{}", p.dim())?;
        }
        write!(f, " in dim {}}}", self.ambient)
    }
}
