//! Character tables from common eigenvectors of class matrices, computed
//! modulo a prime `ℓ ≡ 1 (mod exponent)` and lifted to cyclotomic integers.

use super::classes::{conjugacy_classes, ConjClasses};
use super::group::{exponent_of, FiniteMatrixGroup};
use super::table::CharacterTable;
use crate::arith::{inv_mod, is_prime, pow_mod, prime_divisors};
use crate::charlat::CycloInt;
use crate::{Error, Result};
use rayon::prelude::*;

pub const DEFAULT_CLASS_CAP: usize = 128;

/// Least prime `ℓ ≡ 1 (mod exponent)` with `ℓ > 2 sqrt(order)`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let mut l = exponent + 1;
    while !(is_prime(l) && l as u128 * l as u128 > 4 * order as u128) {
        l += exponent;
    }
    l
}

fn primitive_root(l: u64) -> u64 {
    let fs = prime_divisors(l - 1);
    (2..l).find(|&g| fs.iter().all(|&f| pow_mod(g, (l - 1) / f, l) != 1)).expect("prime modulus")
}

/// Kernel of the `rows x cols` matrix `a` over `F_l`.
fn nullspace(mut a: Vec<Vec<u64>>, cols: usize, l: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = inv_mod(a[r][c], l).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + (l - f) * y) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = (l - a[i][f]) % l;
            }
            v
        })
        .collect()
}

/// Splits the invariant subspace spanned by `basis` into eigenspaces of `mj`.
fn split(mj: &[Vec<u64>], basis: &[Vec<u64>], l: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = mj.len();
    let k = basis.len();
    let images: Vec<Vec<u64>> =
        basis.iter().map(|b| (0..r).map(|i| (0..r).map(|c| mj[i][c] * b[c] % l).sum::<u64>() % l).collect()).collect();
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..l {
        let a: Vec<Vec<u64>> =
            (0..r).map(|i| (0..k).map(|c| (images[c][i] + (l - lambda) * basis[c][i]) % l).collect()).collect();
        let ker = nullspace(a, k, l);
        if ker.is_empty() {
            continue;
        }
        found += ker.len();
        parts.push(
            ker.iter()
                .map(|coef| (0..r).map(|i| (0..k).map(|c| coef[c] * basis[c][i] % l).sum::<u64>() % l).collect())
                .collect(),
        );
        if found == k {
            return Ok(parts);
        }
    }
    Err(Error::SearchFailure("class matrix is not diagonalizable modulo ℓ".into()))
}

/// `a[i][k] = #{x ∈ C_j : x^{-1} z_k ∈ C_i}`, the structure constants of
/// multiplication by the class sum of `C_j`.
fn class_matrix(g: &FiniteMatrixGroup, c: &ConjClasses, members: &[usize], l: u64) -> Vec<Vec<u64>> {
    let r = c.len();
    let mut a = vec![vec![0u64; r]; r];
    for (k, &z) in c.reps().iter().enumerate() {
        for &x in members {
            a[c.class_of(g.mul(g.inv(x), z))][k] += 1;
        }
    }
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x %= l;
        }
    }
    a
}

pub fn character_table(g: &FiniteMatrixGroup) -> Result<CharacterTable> {
    dixon_table(g, conjugacy_classes(g))
}

pub fn dixon_table(g: &FiniteMatrixGroup, classes: ConjClasses) -> Result<CharacterTable> {
    let r = classes.len();
    if r > DEFAULT_CLASS_CAP {
        return Err(Error::CapExceeded { what: "class count", size: r as u128, cap: DEFAULT_CLASS_CAP as u128 });
    }
    let order = g.order() as u64;
    let exponent = exponent_of(g, classes.reps());
    let l = dixon_prime(order, exponent);

    let mut members = vec![Vec::new(); r];
    for x in 0..g.order() {
        members[classes.class_of(x)].push(x);
    }
    let matrices: Vec<Vec<Vec<u64>>> = members.par_iter().map(|mem| class_matrix(g, &classes, mem, l)).collect();

    let identity_basis: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|k| (i == k) as u64).collect()).collect();
    let mut spaces = vec![identity_basis];
    for mj in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let next: Vec<Vec<Vec<Vec<u64>>>> = spaces
            .par_iter()
            .map(|s| if s.len() == 1 { Ok(vec![s.clone()]) } else { split(mj, s, l) })
            .collect::<Result<_>>()?;
        spaces = next.into_iter().flatten().collect();
    }
    if spaces.len() != r {
        return Err(Error::SearchFailure(format!("{} common eigenspaces for {r} classes", spaces.len())));
    }

    let sizes = classes.sizes();
    let z = pow_mod(primitive_root(l), (l - 1) / exponent, l);
    let orders: Vec<u64> = classes.reps().iter().map(|&x| g.element_order(x)).collect();
    // class of z_k^s for s < ord(z_k)
    let power_maps: Vec<Vec<usize>> = classes
        .reps()
        .iter()
        .zip(&orders)
        .map(|(&x, &o)| {
            let mut y = g.identity();
            (0..o)
                .map(|_| {
                    let c = classes.class_of(y);
                    y = g.mul(y, x);
                    c
                })
                .collect()
        })
        .collect();

    let mut rows: Vec<Vec<CycloInt>> = spaces
        .par_iter()
        .map(|s| -> Result<Vec<CycloInt>> {
            let v = &s[0];
            let v0inv = inv_mod(v[0], l).ok_or_else(|| Error::SearchFailure("eigenvector vanishes at 1".into()))?;
            let omega: Vec<u64> = v.iter().map(|x| x * v0inv % l).collect();
            let norm = (0..r).fold(0u64, |acc, k| {
                let t = omega[k] * omega[classes.inverse_class(k)] % l * inv_mod(sizes[k] % l, l).unwrap() % l;
                (acc + t) % l
            });
            let d2 = order % l * inv_mod(norm, l).ok_or_else(|| Error::SearchFailure("zero norm".into()))? % l;
            let d = (1..=l / 2)
                .find(|&d| d * d % l == d2)
                .ok_or_else(|| Error::SearchFailure("degree is not a square".into()))?;
            let chi: Vec<u64> = (0..r).map(|k| d * omega[k] % l * inv_mod(sizes[k] % l, l).unwrap() % l).collect();
            (0..r)
                .map(|k| {
                    let o = orders[k];
                    let zk = pow_mod(z, exponent / o, l);
                    let oinv = inv_mod(o % l, l).unwrap();
                    let mut terms = Vec::new();
                    let mut total = 0;
                    for e in 0..o {
                        let step = pow_mod(zk, (o - e) % o, l);
                        let mut w = 1;
                        let mut acc = 0;
                        for &c in &power_maps[k] {
                            acc = (acc + chi[c] * w) % l;
                            w = w * step % l;
                        }
                        let mult = acc * oinv % l;
                        if mult > d {
                            return Err(Error::SearchFailure("eigenvalue multiplicity out of range".into()));
                        }
                        total += mult;
                        terms.push(((e * (exponent / o)) as i64, mult as i64));
                    }
                    if total != d {
                        return Err(Error::SearchFailure("eigenvalue multiplicities do not sum to the degree".into()));
                    }
                    Ok(CycloInt::from_powers(exponent, terms))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let one = CycloInt::one(exponent);
    rows.sort_by(|a, b| {
        let ta = a.iter().all(|v| *v == one);
        let tb = b.iter().all(|v| *v == one);
        tb.cmp(&ta).then_with(|| a[0].cmp(&b[0])).then_with(|| a.cmp(b))
    });
    let table = CharacterTable::from_parts(order, exponent, classes, rows);
    if !table.check_degrees() {
        return Err(Error::SearchFailure("degree relations fail".into()));
    }
    Ok(table)
}
