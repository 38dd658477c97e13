//! Multiplicity of the trivial character in restrictions, plain and over a
//! coset extension `⟨c⟩H` where `c` acts through a scalar `s`.

use super::group::FiniteMatrixGroup;
use super::table::CharacterTable;
use crate::charlat::{CycloAccumulator, CycloInt, RootOfUnity};
use crate::ffield::Mat;
use crate::{Error, Result};
use num_rational::Ratio;

/// Number of elements of `elems` in each class of `table`.
pub fn class_counts(g: &FiniteMatrixGroup, table: &CharacterTable, elems: &[Mat]) -> Result<Vec<i64>> {
    let mut counts = vec![0i64; table.classes().len()];
    for x in elems {
        let i = g.index_of(x).ok_or_else(|| Error::InvalidSetup("element outside the ambient group".into()))?;
        counts[table.classes().class_of(i)] += 1;
    }
    Ok(counts)
}

/// `Σ_x χ(x)` over a multiset given by class counts.
pub fn character_sum(table: &CharacterTable, row: usize, counts: &[i64]) -> CycloInt {
    let mut acc = CycloAccumulator::new(table.conductor());
    for (v, &c) in table.row(row).iter().zip(counts) {
        if c != 0 {
            acc.add_scaled(v, c);
        }
    }
    acc.finish()
}

/// `(1/|H|) Σ_{h ∈ H} χ(h)`.
pub fn multiplicity_trivial(g: &FiniteMatrixGroup, table: &CharacterTable, row: usize, h: &[Mat]) -> Result<u64> {
    let sum = character_sum(table, row, &class_counts(g, table, h)?);
    let total = sum.as_integer().ok_or_else(|| Error::NonInteger(format!("{sum:?}")))?;
    if total < 0 || total % h.len() as i64 != 0 {
        return Err(Error::NonInteger(format!("{total}/{}", h.len())));
    }
    Ok((total / h.len() as i64) as u64)
}

/// `(Σ_h χ(h) + s Σ_h χ(c h)) / (2|H|)`.
///
/// `s` is the scalar by which the central part of the extension acts; only
/// `s = ±1` is meaningful here since `c^2 ∈ H` acts trivially on the
/// invariant line.
pub fn twisted_multiplicity(
    g: &FiniteMatrixGroup,
    table: &CharacterTable,
    row: usize,
    h: &[Mat],
    c: &Mat,
    s: RootOfUnity,
) -> Result<Ratio<i64>> {
    if !s.pow(2).is_one() {
        return Err(Error::InconsistentScalar(s.to_string()));
    }
    let f = g.field();
    let c2 = c.mul(c, f);
    if !h.contains(&c2) {
        return Err(Error::InvalidSetup("coset element squared is not in H".into()));
    }
    if h.contains(c) {
        return Err(Error::InvalidSetup("coset element lies in H".into()));
    }
    let coset: Vec<Mat> = h.iter().map(|x| c.mul(x, f)).collect();
    let a = character_sum(table, row, &class_counts(g, table, h)?);
    let b = character_sum(table, row, &class_counts(g, table, &coset)?);
    let total = if s.is_one() { a.add(&b) } else { a.sub(&b) };
    let total = total.as_integer().ok_or_else(|| Error::NonInteger(format!("{total:?}")))?;
    let value = Ratio::new(total, 2 * h.len() as i64);
    if !value.is_integer() || total < 0 {
        return Err(Error::NonInteger(value.to_string()));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{character_table, enumerate_gl};

    #[test]
    fn trivial_row_has_multiplicity_one() {
        let g = enumerate_gl(2, 3).unwrap();
        let t = character_table(&g).unwrap();
        let whole = g.elements().to_vec();
        let diag: Vec<Mat> = whole.iter().filter(|x| x.get(0, 1).is_zero() && x.get(1, 0).is_zero()).cloned().collect();
        assert_eq!(multiplicity_trivial(&g, &t, 0, &whole).unwrap(), 1);
        assert_eq!(multiplicity_trivial(&g, &t, 0, &diag).unwrap(), 1);
        for i in 1..t.len() {
            assert_eq!(multiplicity_trivial(&g, &t, i, &whole).unwrap(), 0);
            // Frobenius reciprocity on the trivial subgroup
            let one = vec![Mat::identity(2)];
            assert_eq!(multiplicity_trivial(&g, &t, i, &one).unwrap(), t.degrees()[i]);
        }
    }

    #[test]
    fn rejects_bad_twists() {
        let g = enumerate_gl(2, 3).unwrap();
        let t = character_table(&g).unwrap();
        let f = g.field();
        let diag: Vec<Mat> =
            g.elements().iter().filter(|x| x.get(0, 1).is_zero() && x.get(1, 0).is_zero()).cloned().collect();
        let w = Mat::from_ints(f, 2, &[0, 1, 1, 0]);
        assert!(twisted_multiplicity(&g, &t, 0, &diag, &w, RootOfUnity::one()).is_ok());
        assert!(matches!(
            twisted_multiplicity(&g, &t, 0, &diag, &w, RootOfUnity::new(1, 4)),
            Err(Error::InconsistentScalar(_))
        ));
        assert!(twisted_multiplicity(&g, &t, 0, &diag, &Mat::identity(2), RootOfUnity::one()).is_err());
    }
}
