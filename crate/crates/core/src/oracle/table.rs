//! Exact character tables.

use super::classes::ConjClasses;
use crate::charlat::{CycloAccumulator, CycloInt};
use rayon::prelude::*;

/// Rows are irreducible characters, columns follow the class order of
/// `classes`. Row 0 is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    order: u64,
    conductor: u64,
    classes: ConjClasses,
    degrees: Vec<u64>,
    rows: Vec<Vec<CycloInt>>,
}

impl CharacterTable {
    pub(crate) fn from_parts(
        order: u64,
        conductor: u64,
        classes: ConjClasses,
        rows: Vec<Vec<CycloInt>>,
    ) -> CharacterTable {
        let degrees = rows.iter().map(|r| r[0].as_integer().expect("degree is an integer") as u64).collect();
        CharacterTable { order, conductor, classes, degrees, rows }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn rows(&self) -> &[Vec<CycloInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[CycloInt] {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `χ_i(x)` for a group element index.
    pub fn value_at(&self, i: usize, element: usize) -> &CycloInt {
        &self.rows[i][self.classes.class_of(element)]
    }

    /// The row of the complex conjugate character.
    pub fn conjugate_row(&self, i: usize) -> Vec<CycloInt> {
        (0..self.classes.len()).map(|k| self.rows[i][self.classes.inverse_class(k)].clone()).collect()
    }

    /// First inner product relations `Σ |C| χ_i conj(χ_j) = |G| δ_ij`.
    pub fn check_orthogonality(&self) -> bool {
        let n = self.conductor;
        let sizes = self.classes.sizes();
        let conj: Vec<Vec<CycloInt>> = self.rows.iter().map(|r| r.iter().map(CycloInt::conj).collect()).collect();
        (0..self.rows.len()).into_par_iter().all(|i| {
            (i..self.rows.len()).all(|j| {
                let mut acc = CycloAccumulator::new(n);
                for (k, &s) in sizes.iter().enumerate() {
                    acc.add_product(&self.rows[i][k], &conj[j][k], s as i64);
                }
                let expect = if i == j { self.order as i64 } else { 0 };
                acc.finish() == CycloInt::from_int(n, expect)
            })
        })
    }

    /// `Σ χ(1)^2 = |G|`, the first column holds the degrees, and row 0 is
    /// trivial.
    pub fn check_degrees(&self) -> bool {
        let n = self.conductor;
        self.degrees.iter().map(|d| d * d).sum::<u64>() == self.order
            && self.rows.iter().zip(&self.degrees).all(|(r, &d)| r[0] == CycloInt::from_int(n, d as i64))
            && self.rows[0].iter().all(|v| *v == CycloInt::one(n))
            && self.rows.len() == self.classes.len()
    }
}
