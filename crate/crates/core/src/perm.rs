//! Permutations on `{1..n}`, cycle notation, the group action on vectors,
//! and permutation matrices.
//!
//! Conventions, pinned by the worked examples in the test suite:
//!
//! * positions are 1-based everywhere (storage included);
//! * products compose right-to-left: `(outer * inner)(i) = outer(inner(i))`;
//! * the action is `sigma * v = (v_{sigma(1)}, ..., v_{sigma(n)})`, which
//!   equals `v * perm_matrix(sigma^-1)` as a row vector;
//! * `perm_matrix(sigma)` puts the single 1 of row `i` in column `sigma(i)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

/// A bijection on `{1..n}` stored in one-line notation (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (1..=n).collect() }
    }

    /// Build from a 1-based one-line image; must be a bijection on `1..=n`.
    pub fn from_image(image: Vec<usize>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &x in &image {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `sigma(i)` with `i` 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// One-line notation, 1-based.
    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    /// `(self ∘ inner)(i) = self(inner(i))` — the right factor acts first.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.len() != inner.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: inner.len() });
        }
        Ok(Permutation {
            image: (1..=self.len()).map(|i| self.apply(inner.apply(i))).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x - 1] = i + 1;
        }
        Permutation { image }
    }

    /// `self` raised to a non-negative power.
    pub fn power(&self, e: usize) -> Permutation {
        let mut acc = Permutation::identity(self.len());
        for _ in 0..e {
            acc = self.compose(&acc).unwrap();
        }
        acc
    }

    /// The action `sigma * v = (v_{sigma(1)}, ..., v_{sigma(n)})`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: v.len() });
        }
        Ok(self.image.iter().map(|&i| v[i - 1].clone()).collect())
    }

    /// Disjoint cycles, fixed points omitted. Each cycle starts at its
    /// smallest element; cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                cycle.push(j);
                seen[j] = true;
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }

    /// Rebuild from disjoint cycles over `1..=n`. Entries outside the range
    /// or shared between cycles are rejected.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Permutation> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::InvalidPermutation(format!("entry {x} out of 1..={n}")));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!("entry {x} repeated")));
                }
                touched[x] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                image[x - 1] = next;
            }
        }
        Permutation::from_image(image)
    }

    /// Parse cycle notation like `(1 5 4 2 3)(6)` or one-line `[5,3,1,2,4,6]`.
    /// `n` bounds the ground set for the cycle form.
    pub fn parse(s: &str, n: usize) -> Result<Permutation> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced brackets in `{s}`")))?;
            let image = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Permutation::from_image(image);
        }
        if s.is_empty() || s == "()" || s == "e" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected `(` in `{rest}`")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::InvalidPermutation(format!("junk before cycle: `{rest}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{s}`")))?;
            let body = &rest[open + 1..close];
            let entries = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !entries.is_empty() {
                cycles.push(entries);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(&cycles, n)
    }
}

/// Cycle rendering: `(1 5 4 2 3)`, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The permutation matrix of `sigma`: the single 1 of row `i` sits in
/// column `sigma(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermMatrix {
    source: Permutation,
}

impl PermMatrix {
    pub fn new(source: Permutation) -> PermMatrix {
        PermMatrix { source }
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &Permutation {
        &self.source
    }

    pub fn inverse(&self) -> PermMatrix {
        PermMatrix { source: self.source.inverse() }
    }

    /// Materialize as a 0/1 matrix over the given field.
    pub fn to_matrix(&self, field: FieldSpec) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zero(field, n, n);
        for i in 1..=n {
            m.set(i - 1, self.source.apply(i) - 1, field.one());
        }
        m
    }

    /// Recover the permutation from a 0/1 matrix with a single 1 per row and
    /// column.
    pub fn from_matrix(m: &Matrix) -> Result<PermMatrix> {
        if m.rows() != m.cols() {
            return Err(Error::NotPermutationMatrix);
        }
        let n = m.rows();
        let mut image = vec![0usize; n];
        let mut col_used = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let e = m.get(i, j);
                if e.is_one() {
                    if hit.is_some() {
                        return Err(Error::NotPermutationMatrix);
                    }
                    hit = Some(j);
                } else if !e.is_zero() {
                    return Err(Error::NotPermutationMatrix);
                }
            }
            let j = hit.ok_or(Error::NotPermutationMatrix)?;
            if col_used[j] {
                return Err(Error::NotPermutationMatrix);
            }
            col_used[j] = true;
            image[i] = j + 1;
        }
        Ok(PermMatrix { source: Permutation::from_image(image)? })
    }
}
