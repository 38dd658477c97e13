//! Square matrices over a [`FieldSpec`], sized for brute-force group work.

use super::{FieldElement, FieldSpec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    e: Vec<FieldElement>,
}

impl Mat {
    pub fn new(n: usize, entries: Vec<FieldElement>) -> Mat {
        assert_eq!(entries.len(), n * n, "matrix needs n^2 entries");
        Mat { n, e: entries }
    }

    /// Row-major matrix from integers, read in the prime field.
    pub fn from_ints(f: &FieldSpec, n: usize, vals: &[i64]) -> Mat {
        Mat::new(n, vals.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn zero(n: usize) -> Mat {
        Mat { n, e: vec![FieldElement::Zero; n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        Mat::scalar(n, FieldElement::ONE)
    }

    pub fn scalar(n: usize, x: FieldElement) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, x);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.e[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.e
    }

    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|&x| f(x)).collect() }
    }

    pub fn mul(&self, other: &Mat, f: &FieldSpec) -> Mat {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElement::Zero;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.e[i * n + k], other.e[k * n + j]));
                }
                out.push(acc);
            }
        }
        Mat { n, e: out }
    }

    pub fn pow(&self, mut e: u64, f: &FieldSpec) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// `self - lambda I`.
    pub fn sub_scalar(&self, lambda: FieldElement, f: &FieldSpec) -> Mat {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, f.sub(self.get(i, i), lambda));
        }
        m
    }

    pub fn det(&self, f: &FieldSpec) -> FieldElement {
        let n = self.n;
        let mut a = self.e.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return FieldElement::Zero;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FieldSpec) -> Result<Mat> {
        let n = self.n;
        let mut a = self.e.clone();
        let mut inv = Mat::identity(n).e;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(Error::ZeroInverse)?;
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let pinv = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r == col || factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(Mat { n, e: inv })
    }

    /// Rank over the field.
    pub fn rank(&self, f: &FieldSpec) -> usize {
        let n = self.n;
        let mut a = self.e.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else { continue };
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
            let pinv = f.inv(a[rank * n + col]).expect("pivot is nonzero");
            for r in rank + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[rank * n + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Mat, f: &FieldSpec) -> Mat {
        Mat { n: self.n, e: self.e.iter().zip(&other.e).map(|(&x, &y)| f.add(x, y)).collect() }
    }

    pub fn scale(&self, x: FieldElement, f: &FieldSpec) -> Mat {
        self.map(|y| f.mul(x, y))
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Mat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    /// Replace the block whose rows start at `bi` and columns at `bj`.
    pub fn with_block(mut self, bi: usize, bj: usize, block: &Mat) -> Mat {
        for i in 0..block.n {
            for j in 0..block.n {
                self.set(bi + i, bj + j, block.get(i, j));
            }
        }
        self
    }

    /// Dense key: entry codes as digits in base `q`.
    pub fn key(&self, q: u64) -> u64 {
        self.e.iter().rev().fold(0u64, |acc, x| acc * q + x.code() as u64)
    }

    pub fn from_key(mut key: u64, n: usize, q: u64) -> Mat {
        let e = (0..n * n)
            .map(|_| {
                let c = key % q;
                key /= q;
                FieldElement::from_code(c as u32)
            })
            .collect();
        Mat { n, e }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;

    #[test]
    fn inverse_and_det() {
        let f = build_field(3, 2).unwrap();
        let mut count = 0;
        for key in 0..9u64.pow(4) {
            let m = Mat::from_key(key, 2, 9);
            assert_eq!(m.key(9), key);
            let d = m.det(&f);
            let direct = f.sub(f.mul(m.get(0, 0), m.get(1, 1)), f.mul(m.get(0, 1), m.get(1, 0)));
            assert_eq!(d, direct);
            match m.inverse(&f) {
                Ok(inv) => {
                    count += 1;
                    assert_eq!(m.mul(&inv, &f), Mat::identity(2));
                    assert_eq!(m.rank(&f), 2);
                }
                Err(_) => assert!(d.is_zero()),
            }
        }
        assert_eq!(count, 80 * 72);
    }

    #[test]
    fn det_is_multiplicative_3x3() {
        let f = build_field(3, 1).unwrap();
        for a in (0..3u64.pow(9)).step_by(97) {
            for b in (0..3u64.pow(9)).step_by(331) {
                let (x, y) = (Mat::from_key(a, 3, 3), Mat::from_key(b, 3, 3));
                assert_eq!(x.mul(&y, &f).det(&f), f.mul(x.det(&f), y.det(&f)));
            }
        }
    }
}
