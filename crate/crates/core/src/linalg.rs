//! Exact incremental row reduction over sparse rational vectors.
//!
//! Vectors are `BTreeMap<K, Rat>` keyed by an ordered basis index (usually a
//! [`Monomial`](crate::poly::Monomial)). Every stored row has its largest
//! key as pivot with coefficient 1, and no row contains another row's pivot,
//! so the basis is always in reduced row echelon form with pivots chosen in
//! descending key order.
//!
//! Each inserted vector carries a caller-chosen tag. Rows remember how they
//! were combined from tagged inputs, which yields kernel vectors on dependent
//! inserts and solution coefficients on reductions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::Rat;

pub type SparseVec<K> = BTreeMap<K, Rat>;

/// `target += c * v`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, c: &Rat, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    for (k, x) in v {
        match target.entry(k.clone()) {
            Entry::Vacant(e) => {
                e.insert(c * x);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c * x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn scale_in_place<K>(v: &mut SparseVec<K>, c: &Rat) {
    for x in v.values_mut() {
        *x *= c;
    }
}

#[derive(Debug, Clone)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Result of [`Echelon::insert`].
#[derive(Debug, Clone, PartialEq)]
pub enum Inserted<K> {
    /// The vector was independent and now owns this pivot.
    Pivot(K),
    /// The vector was dependent: `Σ c_t · input_t = 0`, with the new tag
    /// carrying coefficient 1.
    Dependent(SparseVec<usize>),
}

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl DoubleEndedIterator<Item = &K> + '_ {
        self.rows.keys()
    }

    /// Rows in descending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> + '_ {
        self.rows.values().rev().map(|r| &r.vec)
    }

    /// Rows in descending pivot order, with their tag combinations.
    pub fn rows_with_combos(
        &self,
    ) -> impl Iterator<Item = (&SparseVec<K>, &SparseVec<usize>)> + '_ {
        self.rows.values().rev().map(|r| (&r.vec, &r.combo))
    }

    /// Fully reduces `v` against the basis. Returns the residual `r` and the
    /// tag combination `c` with `v = r + Σ c_t · input_t`.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut combo = SparseVec::new();
        // Rows only hold keys at or below their pivot, so a descending sweep
        // never reintroduces an eliminated pivot.
        for (pivot, row) in self.rows.iter().rev() {
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, &-c.clone(), &row.vec);
                axpy(&mut combo, &c, &row.combo);
            }
        }
        (v, combo)
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    pub fn insert(&mut self, v: SparseVec<K>, tag: usize) -> Inserted<K> {
        let (mut r, combo) = self.reduce(v);
        let mut own = SparseVec::new();
        own.insert(tag, Rat::one());
        axpy(&mut own, &-Rat::one(), &combo);
        let Some((pivot, lead)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Inserted::Dependent(own);
        };
        let inv = lead.recip();
        scale_in_place(&mut r, &inv);
        scale_in_place(&mut own, &inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                axpy(&mut row.vec, &-c.clone(), &r);
                axpy(&mut row.combo, &-c, &own);
            }
        }
        self.rows.insert(pivot.clone(), Row { vec: r, combo: own });
        Inserted::Pivot(pivot)
    }

    pub fn into_rows(self) -> Vec<SparseVec<K>> {
        self.rows.into_values().rev().map(|r| r.vec).collect()
    }
}

/// Rank of a family of vectors.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for (t, v) in vectors.into_iter().enumerate() {
        e.insert(v, t);
    }
    e.rank()
}

/// Whether two families span the same subspace.
pub fn same_span<K: Ord + Clone>(a: &[SparseVec<K>], b: &[SparseVec<K>]) -> bool {
    let ra = rank(a.iter().cloned());
    let rb = rank(b.iter().cloned());
    let rab = rank(a.iter().chain(b).cloned());
    ra == rb && ra == rab
}
