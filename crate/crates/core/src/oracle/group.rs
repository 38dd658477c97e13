//! Exhaustively enumerated matrix groups.

use crate::ffield::{field_of_order, FieldSpec, Mat};
use crate::{Error, Result};
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Default bound on enumerated group orders.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 21;

/// `|GL_m(F_q)| = Π (q^m - q^i)`.
pub fn gl_order(m: usize, q: u64) -> u128 {
    let qm = (q as u128).pow(m as u32);
    (0..m as u32).map(|i| qm - (q as u128).pow(i)).product()
}

/// A finite group of invertible `m x m` matrices, with every element stored.
pub struct FiniteMatrixGroup {
    field: Arc<FieldSpec>,
    m: usize,
    elements: Vec<Mat>,
    index: HashMap<u64, u32>,
    inverses: Vec<u32>,
    identity: usize,
}

impl FiniteMatrixGroup {
    /// Wraps an element list that is already known to be a group.
    pub fn from_elements(field: Arc<FieldSpec>, m: usize, elements: Vec<Mat>) -> Result<FiniteMatrixGroup> {
        let q = field.order();
        let index: HashMap<u64, u32> = elements.iter().enumerate().map(|(i, x)| (x.key(q), i as u32)).collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidSetup("repeated group elements".into()));
        }
        let identity = *index
            .get(&Mat::identity(m).key(q))
            .ok_or_else(|| Error::InvalidSetup("identity missing".into()))? as usize;
        let inverses = elements
            .par_iter()
            .map(|x| {
                let y = x.inverse(&field)?;
                index.get(&y.key(q)).copied().ok_or_else(|| Error::InvalidSetup("not closed under inverse".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FiniteMatrixGroup { field, m, elements, index, inverses, identity })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, x: &Mat) -> Option<usize> {
        self.index.get(&x.key(self.q())).map(|&i| i as usize)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let x = self.elements[i].mul(&self.elements[j], &self.field);
        self.index_of(&x).expect("group is closed")
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        let f = &self.field;
        let y = self.elements[g].mul(&self.elements[x], f).mul(&self.elements[self.inv(g)], f);
        self.index_of(&y).expect("group is closed")
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut y = i;
        while y != self.identity {
            y = self.mul(y, i);
            k += 1;
        }
        k
    }

    /// `true` if this is all of `GL_m(F_q)`.
    pub fn is_full_linear(&self) -> bool {
        self.order() as u128 == gl_order(self.m, self.q())
    }
}

/// `GL_m(F_q)` by scanning all `q^{m^2}` matrices.
pub fn enumerate_gl(m: usize, q: u64) -> Result<FiniteMatrixGroup> {
    enumerate_gl_with_cap(m, Arc::new(field_of_order(q)?), DEFAULT_GROUP_CAP)
}

pub fn enumerate_gl_with_cap(m: usize, field: Arc<FieldSpec>, cap: u64) -> Result<FiniteMatrixGroup> {
    let q = field.order();
    let size = gl_order(m, q);
    if size > cap as u128 {
        return Err(Error::CapExceeded { what: "group order", size, cap: cap as u128 });
    }
    let total = q.pow((m * m) as u32);
    let elements: Vec<Mat> =
        (0..total).into_par_iter().map(|k| Mat::from_key(k, m, q)).filter(|x| !x.det(&field).is_zero()).collect();
    debug_assert_eq!(elements.len() as u128, size);
    FiniteMatrixGroup::from_elements(field, m, elements)
}

/// Least common multiple of element orders, from the given class
/// representatives.
pub fn exponent_of(g: &FiniteMatrixGroup, reps: &[usize]) -> u64 {
    reps.iter().fold(1u64, |acc, &r| acc.lcm(&g.element_order(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(enumerate_gl(2, 3).unwrap().order(), 48);
        assert_eq!(enumerate_gl(1, 5).unwrap().order(), 4);
        assert_eq!(enumerate_gl(2, 5).unwrap().order(), 480);
        assert_eq!(gl_order(2, 9), 5760);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(enumerate_gl(3, 2).unwrap().order(), 168);
        assert!(matches!(enumerate_gl(4, 3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closed_and_associative() {
        let g = enumerate_gl(2, 3).unwrap();
        let n = g.order();
        for i in 0..n {
            assert_eq!(g.mul(i, g.inv(i)), g.identity());
            for j in 0..n {
                let ij = g.mul(i, j);
                for k in (0..n).step_by(7) {
                    assert_eq!(g.mul(ij, k), g.mul(i, g.mul(j, k)));
                }
            }
        }
    }
}
