//! Integers of cyclotomic fields in the power basis of `ζ_N`.
//!
//! Elements are stored reduced modulo `Φ_N`, which makes the representation
//! canonical: equal numbers have equal coefficient vectors.

use super::RootOfUnity;
use crate::{Error, Result};
use num_integer::Integer;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Reduction data for one conductor.
#[derive(Debug)]
struct Ring {
    n: u64,
    phi: usize,
    /// Nonzero low coefficients of the monic `Φ_N`.
    low: Vec<(usize, i64)>,
    /// `x^k mod Φ_N` for `0 <= k < N`, sparse.
    powers: Vec<Vec<(usize, i64)>>,
}

fn ring(n: u64) -> Arc<Ring> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Ring>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("ring cache poisoned").get(&n) {
        return r.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let low: Vec<(usize, i64)> =
        poly[..phi].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect());
        // multiply by x and fold the top coefficient back
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for &(i, c) in &low {
            cur[i] -= top * c;
        }
    }
    let r = Arc::new(Ring { n, phi, low, powers });
    cache.lock().expect("ring cache poisoned").insert(n, r.clone());
    r
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloInt {
    conductor: u64,
    coeffs: Vec<i64>,
}

impl CycloInt {
    pub fn zero(n: u64) -> CycloInt {
        CycloInt { conductor: n, coeffs: vec![0; ring(n).phi] }
    }

    pub fn from_int(n: u64, c: i64) -> CycloInt {
        let mut z = CycloInt::zero(n);
        z.coeffs[0] = c;
        z
    }

    pub fn one(n: u64) -> CycloInt {
        CycloInt::from_int(n, 1)
    }

    /// `ζ_N^e`.
    pub fn zeta_pow(n: u64, e: i64) -> CycloInt {
        CycloInt::from_powers(n, [(e, 1)])
    }

    /// `Σ c ζ_N^e` over the given `(e, c)` terms.
    pub fn from_powers(n: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> CycloInt {
        let r = ring(n);
        let mut coeffs = vec![0i64; r.phi];
        for (e, c) in terms {
            for &(i, v) in &r.powers[e.rem_euclid(n as i64) as usize] {
                coeffs[i] += c * v;
            }
        }
        CycloInt { conductor: n, coeffs }
    }

    /// Build from a coefficient vector already reduced modulo `Φ_N`.
    pub fn from_coeffs(n: u64, coeffs: Vec<i64>) -> Result<CycloInt> {
        let phi = ring(n).phi;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch { expected: phi, got: coeffs.len() });
        }
        Ok(CycloInt { conductor: n, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn add(&self, other: &CycloInt) -> CycloInt {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloInt { conductor: self.conductor, coeffs }
    }

    pub fn sub(&self, other: &CycloInt) -> CycloInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloInt {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> CycloInt {
        CycloInt { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &CycloInt) -> CycloInt {
        self.check(other);
        let mut acc = CycloAccumulator::new(self.conductor);
        acc.add_product(self, other, 1);
        acc.finish()
    }

    /// Image under `ζ -> ζ^k`, for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> CycloInt {
        let n = self.conductor as i64;
        assert_eq!(k.rem_euclid(n.max(1)).gcd(&n), 1, "Galois exponent must be a unit");
        CycloInt::from_powers(
            self.conductor,
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as i64 * k, c)),
        )
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycloInt {
        self.galois(-1)
    }

    /// The same number with conductor `m`, a multiple of the current one.
    pub fn lift(&self, m: u64) -> CycloInt {
        assert_eq!(m % self.conductor, 0, "lift needs a multiple of the conductor");
        let step = (m / self.conductor) as i64;
        CycloInt::from_powers(
            m,
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as i64 * step, c)),
        )
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
            let th = std::f64::consts::TAU * i as f64 / n;
            (re + c as f64 * th.cos(), im + c as f64 * th.sin())
        })
    }

    fn check(&self, other: &CycloInt) {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| format!("{c}*z{}^{i}", self.conductor))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sum of `Σ k x y` products kept unreduced until [`finish`](Self::finish).
pub struct CycloAccumulator {
    ring: Arc<Ring>,
    buf: Vec<i64>,
}

impl CycloAccumulator {
    pub fn new(n: u64) -> CycloAccumulator {
        let ring = ring(n);
        let len = 2 * ring.phi - 1;
        CycloAccumulator { ring, buf: vec![0; len] }
    }

    pub fn add_product(&mut self, x: &CycloInt, y: &CycloInt, k: i64) {
        debug_assert_eq!(x.conductor, self.ring.n);
        debug_assert_eq!(y.conductor, self.ring.n);
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ka = k * a;
            for (j, &b) in y.coeffs.iter().enumerate() {
                if b != 0 {
                    self.buf[i + j] += ka * b;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, x: &CycloInt, k: i64) {
        for (i, &a) in x.coeffs.iter().enumerate() {
            self.buf[i] += k * a;
        }
    }

    pub fn finish(mut self) -> CycloInt {
        let phi = self.ring.phi;
        for i in (phi..self.buf.len()).rev() {
            let c = self.buf[i];
            if c == 0 {
                continue;
            }
            self.buf[i] = 0;
            for &(j, v) in &self.ring.low {
                self.buf[i - phi + j] -= c * v;
            }
        }
        self.buf.truncate(phi);
        CycloInt { conductor: self.ring.n, coeffs: self.buf }
    }
}

/// `Σ exp(2πi t)` with conductor `n`.
pub fn cyclo_sum(terms: &[RootOfUnity], n: u64) -> Result<CycloInt> {
    let mut exps = Vec::with_capacity(terms.len());
    for t in terms {
        let den = t.order() as u64;
        if n % den != 0 {
            return Err(Error::Conductor(t.to_string(), n));
        }
        exps.push((*t.t().numer() * (n / den) as i64, 1));
    }
    Ok(CycloInt::from_powers(n, exps))
}

/// Equality as complex numbers, across conductors.
pub fn cyclo_equal(x: &CycloInt, y: &CycloInt) -> bool {
    if x.conductor == y.conductor {
        return x == y;
    }
    let m = x.conductor.lcm(&y.conductor);
    x.lift(m) == y.lift(m)
}
