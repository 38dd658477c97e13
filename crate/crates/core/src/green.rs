//! Values of cuspidal characters of `GL_f(F_q)` on elliptic regular classes,
//! and the matching of computed character tables against them.

use crate::arith::prime_power;
use crate::charlat::{cyclo_equal, CycloInt, MultChar};
use crate::ffield::{eigenvalue_in_extension, field_of_order};
use crate::oracle::{CharacterTable, FiniteMatrixGroup};
use crate::{Error, Result};

/// A cuspidal of `GL_f(F_q)`, named by a regular orbit of exponents modulo
/// `q^f - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalLabel {
    pub q: u64,
    pub f: u32,
    /// Sorted orbit of `a` under multiplication by `q`.
    pub orbit: Vec<u64>,
}

impl CuspidalLabel {
    pub fn new(q: u64, f: u32, a: u64) -> Result<CuspidalLabel> {
        let units = q.pow(f) - 1;
        let orbit = MultChar::new(units + 1, a as i64).galois_orbit(q)?;
        if orbit.len() != f as usize {
            return Err(Error::NotRegular { orbit, n: f });
        }
        Ok(CuspidalLabel { q, f, orbit })
    }

    pub fn a(&self) -> u64 {
        self.orbit[0]
    }

    pub fn units(&self) -> u64 {
        self.q.pow(self.f) - 1
    }
}

/// `(-1)^{f-1} Σ_j ζ^{a k q^j}` with `ζ` of order `q^f - 1`.
pub fn green_value(label: &CuspidalLabel, k: u64) -> Result<CycloInt> {
    let n = label.units();
    let mut orbit = Vec::new();
    let mut e = k % n;
    for _ in 0..label.f {
        orbit.push(e);
        e = (e as u128 * label.q as u128 % n as u128) as u64;
    }
    orbit.sort();
    orbit.dedup();
    if orbit.len() != label.f as usize {
        return Err(Error::NonElliptic(k));
    }
    let sign = if label.f % 2 == 1 { 1 } else { -1 };
    let a = label.a() as u128;
    Ok(CycloInt::from_powers(n, orbit.iter().map(|&x| ((a * x as u128 % n as u128) as i64, sign))))
}

/// Regular orbits of exponents modulo `q^f - 1`, as labels.
pub fn cuspidal_labels(q: u64, f: u32) -> Vec<CuspidalLabel> {
    let n = q.pow(f) - 1;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for a in 0..n {
        if seen[a as usize] {
            continue;
        }
        let orbit = MultChar::new(n + 1, a as i64).galois_orbit(q).expect("valid character");
        for &x in &orbit {
            seen[x as usize] = true;
        }
        if orbit.len() == f as usize {
            out.push(CuspidalLabel { q, f, orbit });
        }
    }
    out
}

/// An elliptic regular class, keyed by the exponent of one eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticClass {
    pub class: usize,
    pub eigen_exponent: u64,
}

pub fn elliptic_classes(group: &FiniteMatrixGroup, table: &CharacterTable) -> Result<Vec<EllipticClass>> {
    let small = group.field();
    let f = group.m() as u32;
    let ext = field_of_order(small.order().pow(f))?;
    let mut out = Vec::new();
    for (class, &rep) in table.classes().reps().iter().enumerate() {
        match eigenvalue_in_extension(small, group.element(rep), &ext) {
            Ok(lambda) => out.push(EllipticClass { class, eigen_exponent: lambda.exponent().unwrap() as u64 }),
            Err(Error::Reducible) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Pairs each regular orbit with the unique row that agrees with
/// [`green_value`] on every elliptic regular class. Returned in label order.
pub fn green_match(group: &FiniteMatrixGroup, table: &CharacterTable) -> Result<Vec<(CuspidalLabel, usize)>> {
    let q = group.q();
    if prime_power(q).map_or(true, |(p, _)| p == 2) {
        return Err(Error::Unsupported("matching assumes odd q".into()));
    }
    let f = group.m() as u32;
    let elliptic = elliptic_classes(group, table)?;
    let mut out = Vec::new();
    let mut used = vec![false; table.len()];
    for label in cuspidal_labels(q, f) {
        let values: Vec<CycloInt> =
            elliptic.iter().map(|c| green_value(&label, c.eigen_exponent)).collect::<Result<_>>()?;
        let hits: Vec<usize> = (0..table.len())
            .filter(|&i| elliptic.iter().zip(&values).all(|(c, v)| cyclo_equal(&table.row(i)[c.class], v)))
            .collect();
        match hits.as_slice() {
            [i] if !used[*i] => {
                used[*i] = true;
                out.push((label, *i));
            }
            _ => return Err(Error::NoMatch(format!("orbit {:?} matches rows {hits:?}", label.orbit))),
        }
    }
    Ok(out)
}
