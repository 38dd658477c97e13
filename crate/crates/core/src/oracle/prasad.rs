//! Distinction of cuspidals of `GL_m(F_{q^2})` by `GL_m(F_q)`, compared with
//! the twisted-duality test: the contragredient equals the Frobenius twist.

use super::group::{enumerate_gl, FiniteMatrixGroup};
use super::multiplicity::multiplicity_trivial;
use super::table::CharacterTable;
use crate::criterion::check_distinction;
use crate::ffield::field_of_order;
use crate::green::{green_match, CuspidalLabel};
use crate::localdata::{LocalSetup, Ramification, TameParameter};
use crate::{Result, RootOfUnity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrasadRow {
    pub label: CuspidalLabel,
    pub row: usize,
    /// Multiplicity of the trivial character of `GL_m(F_q)`.
    pub multiplicity: u64,
    /// Contragredient row equals the Frobenius-twisted row.
    pub dual_is_twist: bool,
    /// Engine verdict for the matching unramified parameter, when `m ≥ 2`.
    pub engine: Option<bool>,
}

impl PrasadRow {
    pub fn consistent(&self) -> bool {
        self.multiplicity <= 1
            && (self.multiplicity == 1) == self.dual_is_twist
            && self.engine.map_or(true, |e| e == (self.multiplicity == 1))
    }
}

/// `group` must be `GL_m(F_{q^2})` and `table` its character table.
pub fn prasad_check(q: u64, group: &FiniteMatrixGroup, table: &CharacterTable) -> Result<Vec<PrasadRow>> {
    let big = group.field();
    let m = group.m();
    let small = field_of_order(q)?;
    let mult = big.embedding_multiplier(&small)?;
    let sub = enumerate_gl(m, q)?;
    let h: Vec<_> = sub.elements().iter().map(|x| x.map(|e| big.embed_from(&small, mult, e))).collect();
    let classes = table.classes();
    // class of the entrywise q-power of each representative
    let twist: Vec<usize> = classes
        .reps()
        .iter()
        .map(|&r| {
            let y = group.element(r).map(|e| big.pow(e, q));
            classes.class_of(group.index_of(&y).expect("Frobenius preserves the group"))
        })
        .collect();
    green_match(group, table)?
        .into_iter()
        .map(|(label, row)| {
            let multiplicity = multiplicity_trivial(group, table, row, &h)?;
            let twisted: Vec<_> = twist.iter().map(|&k| table.row(row)[k].clone()).collect();
            let dual_is_twist = table.conjugate_row(row) == twisted;
            let engine = if m >= 2 {
                let setup = LocalSetup::new(q, Ramification::Unramified, m as u32, 1);
                let p = TameParameter::new(setup, label.a() as i64, RootOfUnity::one());
                Some(check_distinction(&p)?.distinguished)
            } else {
                None
            };
            Ok(PrasadRow { label, row, multiplicity, dual_is_twist, engine })
        })
        .collect()
}
