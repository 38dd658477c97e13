//! The signed count over `θ`-stable torus double cosets that computes the
//! multiplicity of the trivial character of `H = G^θ` in a cuspidal built
//! from an elliptic torus `T`.
//!
//! For each `g ∈ T\G/H` with `θ(g^{-1}Tg) = g^{-1}Tg`, put `S = g^{-1}Tg ∩ H`
//! and let `S°` be its connected part. The term `r(g)` is zero unless the
//! transported character `λ^g` agrees on `S` with the sign character `ε`
//! (trivial on `S°`, `-1` off it). Otherwise it is
//! `(-1)^{f-1} σ(T) σ(Z_G(S°))`, `σ` being `(-1)` to the `F_q`-rank. The
//! factor `(-1)^{f-1} σ(T)` turns the virtual induced character into the
//! genuine cuspidal.

use super::group::FiniteMatrixGroup;
use super::pairs::SymmetricPairSpec;
use crate::charlat::RootOfUnity;
use crate::ffield::{FieldElement, FieldSpec, Mat};
use crate::{Error, Result};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiClass {
    /// Double coset representative `g`.
    pub rep: Mat,
    /// `θ(g^{-1}Tg) = g^{-1}Tg`.
    pub theta_stable: bool,
    pub r: i8,
}

/// Basis of the `F_q`-span of `mats`, as flattened row vectors.
fn span_basis(mats: &[Mat], f: &FieldSpec) -> Vec<Vec<FieldElement>> {
    let mut basis: Vec<Vec<FieldElement>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for m in mats {
        let mut v = m.entries().to_vec();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let c = v[p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = f.inv(v[p]).unwrap();
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for (b, &bp) in basis.iter_mut().zip(&pivots) {
                if !b[p].is_zero() {
                    let c = b[p];
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = f.sub(*x, f.mul(c, *y));
                    }
                }
                debug_assert!(!b[bp].is_zero());
            }
            basis.push(v);
            pivots.push(p);
        }
    }
    basis
}

/// Every element of the span of `mats`.
fn span_elements(mats: &[Mat], f: &FieldSpec) -> Result<Vec<Mat>> {
    let n = mats[0].n();
    let basis = span_basis(mats, f);
    let q = f.order();
    let size = (q as u128).pow(basis.len() as u32);
    if size > 1 << 20 {
        return Err(Error::CapExceeded { what: "matrix algebra", size, cap: 1 << 20 });
    }
    let mut out = Vec::with_capacity(size as usize);
    for mut code in 0..size as u64 {
        let mut v = vec![FieldElement::Zero; n * n];
        for b in &basis {
            let c = FieldElement::from_code((code % q) as u32);
            code /= q;
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, *y));
            }
        }
        out.push(Mat::new(n, v));
    }
    Ok(out)
}

/// `F_q`-rank of the centralizer of `mats` in `GL_n`. The span `A` must be
/// a commutative semisimple algebra, as for an abelian group of order prime
/// to `p`. Then `Z(A) = Π GL_{n_e}(eA)` over the primitive idempotents `e`,
/// with `n_e = rank(e) / dim(eA)`.
pub fn centralizer_rank(mats: &[Mat], f: &FieldSpec) -> Result<u32> {
    let algebra = span_elements(mats, f)?;
    let zero = Mat::zero(mats[0].n());
    let idem: Vec<&Mat> = algebra.iter().filter(|e| **e != zero && e.mul(e, f) == **e).collect();
    let primitive = idem.iter().filter(|e| idem.iter().all(|d| d == *e || d.mul(e, f) != **d));
    let q = f.order();
    let mut total = 0;
    for e in primitive {
        let ea: HashSet<Mat> = algebra.iter().map(|x| e.mul(x, f)).collect();
        let dim = crate::arith::log_exact(ea.len() as u64, q).expect("subspace size is a power of q");
        let rank = e.rank(f) as u32;
        if rank % dim != 0 {
            return Err(Error::InvalidSetup("algebra is not a product of fields".into()));
        }
        total += rank / dim;
    }
    Ok(total)
}

fn sigma(rank: u32) -> i8 {
    if rank % 2 == 0 {
        1
    } else {
        -1
    }
}

fn is_additively_closed(s: &HashSet<usize>, g: &FiniteMatrixGroup) -> bool {
    let f = g.field();
    s.iter().all(|&x| {
        s.iter().all(|&y| {
            let z = g.element(x).add(g.element(y), f);
            z.entries().iter().all(|e| e.is_zero()) || g.index_of(&z).is_some_and(|i| s.contains(&i))
        })
    })
}

/// Units of `F_q[x]`, the span of powers of `x`.
fn polynomial_units(x: &Mat, f: &FieldSpec) -> Result<Vec<Mat>> {
    let n = x.n();
    let powers: Vec<Mat> = (0..n as u64).map(|k| x.pow(k, f)).collect();
    Ok(span_elements(&powers, f)?.into_iter().filter(|y| !y.det(f).is_zero()).collect())
}

/// All double cosets `T g H`, with the stability flag and `r`, for the
/// character of `T` with exponent `a`.
pub fn double_cosets(g: &FiniteMatrixGroup, pair: &SymmetricPairSpec, a: u64) -> Result<Vec<XiClass>> {
    let f = g.field();
    let torus = pair.torus.as_ref().ok_or_else(|| Error::InvalidSetup("pair has no torus".into()))?;
    let w = pair.theta.as_ref().ok_or_else(|| Error::InvalidSetup("pair has no involution".into()))?;
    let index = |x: &Mat| g.index_of(x).ok_or_else(|| Error::InvalidSetup("element outside G".into()));
    let t_idx: Vec<usize> = torus.iter().map(index).collect::<Result<_>>()?;
    let t_log: HashMap<usize, u64> = t_idx.iter().enumerate().map(|(k, &i)| (i, k as u64)).collect();
    let h_idx: Vec<usize> = pair.subgroup.iter().map(index).collect::<Result<_>>()?;
    let h_set: HashSet<usize> = h_idx.iter().copied().collect();
    let w_i = index(w)?;
    let theta = |x: usize| g.conj(w_i, x);
    let order_t = torus.len() as i64;
    let f_dim = g.m() as u32;
    let sigma_t = sigma(centralizer_rank(torus, f)?);

    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        for &t in &t_idx {
            let tx = g.mul(t, x);
            for &h in &h_idx {
                seen[g.mul(tx, h)] = true;
            }
        }
        let xinv = g.inv(x);
        // g^{-1} t g with its λ value
        let conj: HashMap<usize, u64> = t_idx.iter().map(|&t| (g.conj(xinv, t), t_log[&t])).collect();
        let stable = conj.keys().all(|&y| conj.contains_key(&theta(y)));
        let mut r = 0;
        if stable {
            let s: HashSet<usize> = conj.keys().copied().filter(|y| h_set.contains(y)).collect();
            let connected: HashSet<usize> = if is_additively_closed(&s, g) {
                s.clone()
            } else {
                let mut c = HashSet::new();
                for &y in &s {
                    let units = polynomial_units(g.element(y), f)?;
                    if units.iter().all(|u| g.index_of(u).is_some_and(|i| s.contains(&i))) {
                        c.insert(y);
                    }
                }
                c
            };
            let agrees = s.iter().all(|y| {
                let lambda = RootOfUnity::new((a * conj[y]) as i64, order_t);
                let eps = if connected.contains(y) { RootOfUnity::one() } else { RootOfUnity::minus_one() };
                lambda == eps
            });
            if agrees {
                let mats: Vec<Mat> = connected.iter().map(|&y| g.element(y).clone()).collect();
                let sigma_z = sigma(centralizer_rank(&mats, f)?);
                r = sigma(f_dim - 1) * sigma_t * sigma_z;
            }
        }
        out.push(XiClass { rep: g.element(x).clone(), theta_stable: stable, r });
    }
    Ok(out)
}

/// The `θ`-stable double cosets.
pub fn lusztig_xi(g: &FiniteMatrixGroup, pair: &SymmetricPairSpec, a: u64) -> Result<Vec<XiClass>> {
    Ok(double_cosets(g, pair, a)?.into_iter().filter(|c| c.theta_stable).collect())
}
