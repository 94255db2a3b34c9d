//! Finite matrix groups given by generators.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;

/// Closure cap used when the caller does not supply one.
pub const DEFAULT_CAP: usize = 10_000;

/// A finite subgroup of `GL(n, ℚ)` stored as its full element list.
///
/// Element 0 is the identity; the rest follow breadth-first insertion order
/// from right multiplication by the generators in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGroup {
    n: usize,
    elements: Vec<RatMatrix>,
    gen_indices: Vec<usize>,
    inverses: Vec<usize>,
    lookup: BTreeMap<RatMatrix, usize>,
}

impl MatGroup {
    /// Closes `gens` under multiplication. Fails once more than `cap`
    /// elements have been produced.
    pub fn close(n: usize, gens: &[RatMatrix], cap: usize) -> Result<MatGroup> {
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if g.rows() != n { g.rows() } else { g.cols() },
                });
            }
            if g.det()?.is_zero() {
                return Err(Error::NonInvertibleGenerator { index });
            }
        }

        let id = RatMatrix::identity(n);
        let mut elements = alloc::vec![id.clone()];
        let mut lookup = BTreeMap::new();
        lookup.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod = elements[i].mul(g)?;
                if lookup.contains_key(&prod) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::ClosureExceedsCap { cap });
                }
                lookup.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }

        let gen_indices = gens.iter().map(|g| lookup[g]).collect();
        let mut inverses = Vec::with_capacity(elements.len());
        for e in &elements {
            let inv = e
                .inverse()
                .ok_or(Error::Internal("group element lost invertibility"))?;
            let j = *lookup
                .get(&inv)
                .ok_or(Error::Internal("closure is missing an inverse"))?;
            inverses.push(j);
        }
        Ok(MatGroup {
            n,
            elements,
            gen_indices,
            inverses,
            lookup,
        })
    }

    /// [`MatGroup::close`] with [`DEFAULT_CAP`].
    pub fn from_generators(n: usize, gens: &[RatMatrix]) -> Result<MatGroup> {
        Self::close(n, gens, DEFAULT_CAP)
    }

    pub fn trivial(n: usize) -> MatGroup {
        Self::close(n, &[], 1).expect("trivial group always closes")
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RatMatrix] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> Result<&RatMatrix> {
        self.elements.get(idx).ok_or(Error::IndexOutOfRange {
            index: idx,
            len: self.elements.len(),
        })
    }

    /// Element indices of the user-supplied generators, in input order.
    pub fn gen_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn generators(&self) -> impl Iterator<Item = &RatMatrix> + '_ {
        self.gen_indices.iter().map(|&i| &self.elements[i])
    }

    pub fn inverse_of(&self, idx: usize) -> Result<usize> {
        self.inverses
            .get(idx)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: idx,
                len: self.elements.len(),
            })
    }

    pub fn transpose_of(&self, idx: usize) -> Result<RatMatrix> {
        Ok(self.element(idx)?.transpose())
    }

    pub fn index_of(&self, m: &RatMatrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> Result<usize> {
        let p = self.element(i)?.mul(self.element(j)?)?;
        self.index_of(&p)
            .ok_or(Error::Internal("group is not closed under multiplication"))
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, idx: usize) -> Result<usize> {
        let mut k = 1;
        let mut cur = idx;
        while cur != 0 {
            cur = self.product(cur, idx)?;
            k += 1;
        }
        Ok(k)
    }
}
