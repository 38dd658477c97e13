//! Finite symmetric pairs and their coset extensions.

use super::group::{enumerate_gl, enumerate_gl_with_cap, DEFAULT_GROUP_CAP};
use crate::charlat::RootOfUnity;
use crate::ffield::{field_of_order, FieldElement, FieldSpec, Mat};
use crate::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `GL_m(F_{q^s})` inside `GL_{ms}(F_q)`, `q` prime.
    ExtFieldEmbed { m: usize, q: u64, s: u32 },
    /// `F_{q^2}^×` inside `GL_2(F_q)`, `q` an odd prime.
    NonsplitTorus { q: u64 },
    /// `GL_{m/2} × GL_{m/2}` inside `GL_m(F_q)`.
    LeviHalf { m: usize, q: u64 },
    /// The Levi with the coset of `η = [[0, εI], [I, 0]]`.
    ExtLeviEta { m: usize, q: u64 },
    /// The nonsplit torus with the coset of a `γ` acting as Frobenius on it.
    ExtGaloisGamma { q: u64 },
}

pub struct SymmetricPairSpec {
    pub kind: PairKind,
    /// Field of the ambient matrices.
    pub field: Arc<FieldSpec>,
    /// Size of the ambient matrices.
    pub m: usize,
    pub subgroup: Vec<Mat>,
    /// `θ = Ad(theta)`.
    pub theta: Option<Mat>,
    pub coset: Option<Mat>,
    pub twist: Option<RootOfUnity>,
    /// For torus pairs, `torus[k]` is the image of `g^k`.
    pub torus: Option<Vec<Mat>>,
}

impl SymmetricPairSpec {
    pub fn with_twist(mut self, s: RootOfUnity) -> Self {
        self.twist = Some(s);
        self
    }

    /// `θ` fixes `H` pointwise and the coset element squares into `H`.
    pub fn validate(&self) -> Result<()> {
        let f = &*self.field;
        if let Some(w) = &self.theta {
            let winv = w.inverse(f)?;
            if self.subgroup.iter().any(|h| w.mul(h, f).mul(&winv, f) != *h) {
                return Err(Error::InvalidSetup("involution moves the subgroup".into()));
            }
        }
        if let Some(c) = &self.coset {
            if self.subgroup.contains(c) || !self.subgroup.contains(&c.mul(c, f)) {
                return Err(Error::InvalidSetup("bad coset element".into()));
            }
        }
        Ok(())
    }
}

fn prime_field(q: u64) -> Result<Arc<FieldSpec>> {
    let f = field_of_order(q)?;
    if f.degree() != 1 {
        return Err(Error::Unsupported("embedding needs a prime base field".into()));
    }
    Ok(Arc::new(f))
}

fn odd(q: u64) -> Result<()> {
    if q % 2 == 0 {
        return Err(Error::Unsupported("pair needs odd q".into()));
    }
    Ok(())
}

/// The regular representation of `F_{q^2}` on its power basis, with the
/// torus listed by exponent.
fn torus_pair(q: u64) -> Result<SymmetricPairSpec> {
    odd(q)?;
    let base = prime_field(q)?;
    let big = field_of_order(q * q)?;
    let torus: Vec<Mat> =
        (0..big.units()).map(|k| big.regular_representation(&base, big.exp(k as i64))).collect::<Result<_>>()?;
    let w = torus[q.div_ceil(2) as usize].clone();
    Ok(SymmetricPairSpec {
        kind: PairKind::NonsplitTorus { q },
        field: base,
        m: 2,
        subgroup: torus.clone(),
        theta: Some(w),
        coset: None,
        twist: None,
        torus: Some(torus),
    })
}

fn levi_pair(m: usize, q: u64) -> Result<SymmetricPairSpec> {
    odd(q)?;
    if m % 2 != 0 {
        return Err(Error::InvalidSetup(format!("Levi of GL_{m} needs m even")));
    }
    let field = Arc::new(field_of_order(q)?);
    let half = enumerate_gl_with_cap(m / 2, Arc::clone(&field), DEFAULT_GROUP_CAP)?;
    let mut subgroup = Vec::with_capacity(half.order() * half.order());
    for a in half.elements() {
        for b in half.elements() {
            subgroup.push(Mat::block_diag(&[a.clone(), b.clone()]));
        }
    }
    let minus = field.neg(FieldElement::ONE);
    let theta = Mat::block_diag(&[Mat::identity(m / 2), Mat::scalar(m / 2, minus)]);
    Ok(SymmetricPairSpec {
        kind: PairKind::LeviHalf { m, q },
        field,
        m,
        subgroup,
        theta: Some(theta),
        coset: None,
        twist: None,
        torus: None,
    })
}

pub fn build_pair(kind: PairKind) -> Result<SymmetricPairSpec> {
    let mut pair = match kind {
        PairKind::NonsplitTorus { q } => torus_pair(q)?,
        PairKind::LeviHalf { m, q } => levi_pair(m, q)?,
        PairKind::ExtLeviEta { m, q } => {
            let mut p = levi_pair(m, q)?;
            let h = m / 2;
            let eps = p.field.generator();
            let eta = Mat::zero(m).with_block(0, h, &Mat::scalar(h, eps)).with_block(h, 0, &Mat::identity(h));
            p.coset = Some(eta);
            p
        }
        PairKind::ExtGaloisGamma { q } => {
            let mut p = torus_pair(q)?;
            let g = enumerate_gl(2, q)?;
            let f = &*p.field;
            let torus = p.torus.as_ref().unwrap();
            let gen = &torus[1];
            let gen_q = &torus[q as usize];
            let w = p.theta.clone().unwrap();
            let minus_w = w.scale(f.neg(FieldElement::ONE), f);
            let gamma = g
                .elements()
                .iter()
                .find(|c| {
                    let cinv = c.inverse(f).unwrap();
                    c.mul(gen, f).mul(&cinv, f) == *gen_q
                        && torus.contains(&c.mul(c, f))
                        && c.mul(&w, f).mul(&cinv, f) == minus_w
                })
                .ok_or_else(|| Error::SearchFailure("no Frobenius element normalizing the torus".into()))?;
            p.coset = Some(gamma.clone());
            p
        }
        PairKind::ExtFieldEmbed { m, q, s } => {
            let base = prime_field(q)?;
            let big = Arc::new(field_of_order(q.pow(s))?);
            let g = enumerate_gl_with_cap(m, Arc::clone(&big), DEFAULT_GROUP_CAP)?;
            let s = s as usize;
            let subgroup = g
                .elements()
                .iter()
                .map(|x| {
                    let mut y = Mat::zero(m * s);
                    for i in 0..m {
                        for j in 0..m {
                            y = y.with_block(i * s, j * s, &big.regular_representation(&base, x.get(i, j))?);
                        }
                    }
                    Ok(y)
                })
                .collect::<Result<_>>()?;
            SymmetricPairSpec {
                kind,
                field: base,
                m: m * s,
                subgroup,
                theta: None,
                coset: None,
                twist: None,
                torus: None,
            }
        }
    };
    pair.kind = kind;
    pair.validate()?;
    Ok(pair)
}
