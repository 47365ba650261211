//! Sparse exact Gaussian elimination over the rationals.
//!
//! Rows are kept in echelon form keyed by pivot column; each pivot entry is 1
//! and every other entry of a row lies to the right of its pivot. Rows can
//! carry a combination vector recording how they were built from the inserted
//! generators, which is what turns a reduction into a solve.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

pub(crate) fn axpy(y: &mut SparseVec, a: &Rational, x: &SparseVec) {
    for (k, v) in x {
        let delta = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += delta;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    y.insert(*k, delta);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    entries: SparseVec,
    combo: SparseVec,
}

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
}

/// Result of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone, PartialEq)]
pub enum Insertion {
    /// Rank grew; the new pivot column is returned.
    Pivot(usize),
    /// The vector reduced to zero; the combination of earlier generators
    /// (plus the new one) that vanishes.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `v` in place, returning the combination `c` with
    /// `v_in = v_out + sum_rows c_row * row_combo`, expressed over the generators.
    pub fn reduce(&self, v: &mut SparseVec) -> SparseVec {
        let mut used = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.rows.contains_key(k));
            let Some(col) = next else { break };
            let factor = v[&col].clone();
            let row = &self.rows[&col];
            axpy(v, &-factor.clone(), &row.entries);
            axpy(&mut used, &factor, &row.combo);
            cursor = col + 1;
        }
        used
    }

    /// Inserts a generator with the given combination label.
    pub fn insert(&mut self, mut v: SparseVec, label: SparseVec) -> Insertion {
        let used = self.reduce(&mut v);
        let mut combo = label;
        axpy(&mut combo, &-Rational::from_integer(1.into()), &used);
        let Some((&pivot, lead)) = v.iter().next() else {
            return Insertion::Dependent(combo);
        };
        let inv = lead.recip();
        for e in v.values_mut() {
            *e *= &inv;
        }
        for e in combo.values_mut() {
            *e *= &inv;
        }
        self.rows.insert(pivot, Row { entries: v, combo });
        Insertion::Pivot(pivot)
    }

    /// Clears every pivot column from the other rows (reduced echelon form),
    /// after which [`Self::reduce`] touches each pivot of its input once.
    pub fn fully_reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let mut row = self.rows.remove(&p).expect("pivot row");
            let targets: Vec<usize> = row
                .entries
                .range(p + 1..)
                .map(|(k, _)| *k)
                .filter(|k| self.rows.contains_key(k))
                .collect();
            for col in targets {
                let Some(factor) = row.entries.get(&col).cloned() else { continue };
                let other = &self.rows[&col];
                axpy(&mut row.entries, &-factor.clone(), &other.entries);
                axpy(&mut row.combo, &-factor, &other.combo);
            }
            self.rows.insert(p, row);
        }
    }

    /// Inserts a generator whose provenance is not tracked.
    pub fn insert_untracked(&mut self, v: SparseVec) -> bool {
        matches!(self.insert(v, SparseVec::new()), Insertion::Pivot(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, v)| (k, q(v))).collect()
    }

    #[test]
    fn rank_and_dependency() {
        let mut e = Echelon::new();
        assert!(matches!(e.insert(vec_of(&[(0, 1), (1, 2)]), vec_of(&[(0, 1)])), Insertion::Pivot(0)));
        assert!(matches!(e.insert(vec_of(&[(1, 1), (2, 1)]), vec_of(&[(1, 1)])), Insertion::Pivot(1)));
        // 2*(row0) - 4*(row1)... r2 = r0 - 2 r1 = (1, 0, -2)
        match e.insert(vec_of(&[(0, 1), (2, -2)]), vec_of(&[(2, 1)])) {
            Insertion::Dependent(c) => assert_eq!(c, vec_of(&[(0, -1), (1, 2), (2, 1)])),
            other => panic!("{other:?}"),
        }
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn reduce_tracks_solution() {
        let mut e = Echelon::new();
        e.insert(vec_of(&[(0, 2), (3, 1)]), vec_of(&[(0, 1)]));
        e.insert(vec_of(&[(1, 1)]), vec_of(&[(1, 1)]));
        let mut v = vec_of(&[(0, 4), (1, -3), (3, 2)]);
        let c = e.reduce(&mut v);
        assert!(v.is_empty());
        assert_eq!(c, vec_of(&[(0, 2), (1, -3)]));
    }

    #[test]
    fn reduced_form_gives_same_reductions() {
        let mut e = Echelon::new();
        e.insert(vec_of(&[(0, 1), (1, 2), (3, 1)]), vec_of(&[(0, 1)]));
        e.insert(vec_of(&[(1, 1), (2, -1)]), vec_of(&[(1, 1)]));
        e.insert(vec_of(&[(2, 3), (3, 1), (4, 1)]), vec_of(&[(2, 1)]));
        let mut full = e.clone();
        full.fully_reduce();
        let v = vec_of(&[(0, 2), (2, 5), (4, 1)]);
        let (mut a, mut b) = (v.clone(), v);
        assert_eq!(e.reduce(&mut a), full.reduce(&mut b));
        assert_eq!(a, b);
    }
}
