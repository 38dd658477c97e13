//! Finite fields `F_{p^k}` in discrete-log form.
//!
//! Every nonzero element is stored as its exponent with respect to a fixed
//! primitive element `g`, so multiplication is addition of exponents and
//! addition goes through a Zech table: `g^a + g^b = g^b (1 + g^(a-b))`.
//! Character evaluation then never needs a discrete-log search.

mod mat;

pub use mat::Mat;

use crate::arith::{is_prime, prime_divisors};
use crate::{Error, Result};
use num_integer::Integer;

/// Largest field order for which tables are built.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

const HOLE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Zero,
    /// `g^k`, with `k` reduced modulo `Q - 1`.
    Exp(u32),
}

impl FieldElement {
    pub const ONE: FieldElement = FieldElement::Exp(0);

    pub fn is_zero(self) -> bool {
        self == FieldElement::Zero
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            FieldElement::Zero => None,
            FieldElement::Exp(k) => Some(k),
        }
    }

    /// Dense code in `0..Q`: zero is 0 and `g^k` is `k + 1`.
    pub fn code(self) -> u32 {
        match self {
            FieldElement::Zero => 0,
            FieldElement::Exp(k) => k + 1,
        }
    }

    pub fn from_code(c: u32) -> Self {
        if c == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(c - 1)
        }
    }
}

/// Which primitive polynomial to use as modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorChoice {
    /// Lexicographically least, coefficients read constant term first.
    Least,
    /// Lexicographically greatest. Used to check that nothing downstream
    /// depends on the choice of generator.
    Alternate,
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    zech: Vec<u32>,
    antilog: Vec<u32>,
    log: Vec<u32>,
    minus_one: u32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn build_field(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::build(p, k, GeneratorChoice::Least, DEFAULT_FIELD_CAP)
}

pub fn build_field_alternate(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::build(p, k, GeneratorChoice::Alternate, DEFAULT_FIELD_CAP)
}

/// Field of order `q` (a prime power).
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, k) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    build_field(p, k)
}

/// The multiplier `(Q-1)/(Q0-1)` sending a generator of the order-`Q0`
/// subgroup of exponents into `F_Q^×`.
///
/// This only identifies the multiplicative subgroup. To embed the field
/// `F_Q0` with its addition use [`FieldSpec::embedding_multiplier`], which
/// may differ by a unit factor.
pub fn subfield_embedding(q: u64, q0: u64) -> Result<u64> {
    if q0 < 2 || crate::arith::log_exact(q, q0).is_none() {
        return Err(Error::NotAPower(q, q0));
    }
    Ok((q - 1) / (q0 - 1))
}

impl FieldSpec {
    pub fn build(p: u64, k: u32, choice: GeneratorChoice, cap: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidSetup("field degree must be positive".into()));
        }
        let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if order > cap as u128 || order > u32::MAX as u128 {
            return Err(Error::CapExceeded { what: "field", size: order, cap: cap as u128 });
        }
        let (p, order) = (p as u32, order as u32);
        let modulus = find_primitive(p, k, order, choice);
        let units = order - 1;

        let mut antilog = vec![0u32; units as usize];
        let mut log = vec![HOLE; order as usize];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        for e in 0..units {
            let packed = pack(&cur, p);
            antilog[e as usize] = packed;
            log[packed as usize] = e;
            // multiply by x modulo the monic modulus
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for (c, &m) in cur.iter_mut().zip(&modulus) {
                *c = (*c + (p - m) * top) % p;
            }
        }

        let zech = antilog
            .iter()
            .map(|&packed| {
                let c0 = packed % p;
                let shifted = if c0 == p - 1 { packed - c0 } else { packed + 1 };
                if shifted == 0 {
                    HOLE
                } else {
                    log[shifted as usize]
                }
            })
            .collect();

        let minus_one = if p == 2 { 0 } else { units / 2 };
        Ok(FieldSpec { p, degree: k, order, modulus, zech, antilog, log, minus_one })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Field order `Q`.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// `Q - 1`, the order of the unit group.
    pub fn units(&self) -> u64 {
        self.order as u64 - 1
    }

    /// Coefficients `c_0, ..., c_{k-1}` of the monic modulus
    /// `x^k + c_{k-1} x^{k-1} + ... + c_0`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement::Exp(1 % self.units() as u32)
    }

    /// `z(k)` with `g^z(k) = 1 + g^k`, or `None` at the hole `g^k = -1`.
    pub fn zech(&self, k: u32) -> Option<u32> {
        let z = self.zech[(k as u64 % self.units()) as usize];
        (z != HOLE).then_some(z)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        std::iter::once(FieldElement::Zero).chain(self.units_iter())
    }

    pub fn units_iter(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order - 1).map(FieldElement::Exp)
    }

    pub fn exp(&self, k: i64) -> FieldElement {
        FieldElement::Exp(k.rem_euclid(self.units() as i64) as u32)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x, y) {
            (FieldElement::Zero, _) => y,
            (_, FieldElement::Zero) => x,
            (FieldElement::Exp(a), FieldElement::Exp(b)) => {
                let u = self.order - 1;
                let diff = (a + u - b) % u;
                match self.zech[diff as usize] {
                    HOLE => FieldElement::Zero,
                    z => FieldElement::Exp(((b as u64 + z as u64) % u as u64) as u32),
                }
            }
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        match x {
            FieldElement::Zero => x,
            FieldElement::Exp(a) => FieldElement::Exp(((a as u64 + self.minus_one as u64) % self.units()) as u32),
        }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x, y) {
            (FieldElement::Exp(a), FieldElement::Exp(b)) => {
                FieldElement::Exp(((a as u64 + b as u64) % self.units()) as u32)
            }
            _ => FieldElement::Zero,
        }
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        match x {
            FieldElement::Zero => Err(Error::ZeroInverse),
            FieldElement::Exp(a) => Ok(FieldElement::Exp(((self.units() - a as u64) % self.units()) as u32)),
        }
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        match x {
            _ if e == 0 => FieldElement::ONE,
            FieldElement::Zero => x,
            FieldElement::Exp(a) => FieldElement::Exp(crate::arith::mul_mod(a as u64, e, self.units()) as u32),
        }
    }

    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.unpack(n.rem_euclid(self.p as i64) as u32)
    }

    /// Coordinates in the power basis `1, g, ..., g^(k-1)`.
    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let mut packed = match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(a) => self.antilog[a as usize],
        };
        (0..self.degree)
            .map(|_| {
                let c = packed % self.p;
                packed /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        self.unpack(pack(coords, self.p))
    }

    fn unpack(&self, packed: u32) -> FieldElement {
        if packed == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(self.log[packed as usize])
        }
    }

    /// Coordinate of `x` in the prime field, when `x` lies there.
    pub fn to_int(&self, x: FieldElement) -> Option<u32> {
        let c = self.coords(x);
        c[1..].iter().all(|&v| v == 0).then_some(c[0])
    }

    /// Evaluate a polynomial with prime-field coefficients (constant first)
    /// at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(FieldElement::Zero, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }

    /// Exponent multiplier realizing a field embedding `sub -> self`.
    ///
    /// Returns `(Q-1)/(Q0-1) * u` for the least unit `u` such that
    /// `g^((Q-1)/(Q0-1) u)` is a root of the modulus of `sub`; then
    /// `sub`'s `g0^e` maps to `g^(e * multiplier)`.
    pub fn embedding_multiplier(&self, sub: &FieldSpec) -> Result<u64> {
        if sub.p != self.p || self.degree % sub.degree != 0 {
            return Err(Error::NotAPower(self.order(), sub.order()));
        }
        let base = subfield_embedding(self.order(), sub.order())?;
        let small = sub.units();
        if small == 1 {
            return Ok(base);
        }
        let mut full = sub.modulus.clone();
        full.push(1);
        for u in (1..small).filter(|u| u.gcd(&small) == 1) {
            let mult = base * u;
            if self.eval_prime_poly(&full, self.exp(mult as i64)).is_zero() {
                return Ok(mult);
            }
        }
        Err(Error::SearchFailure(format!("no embedding of F_{} into F_{}", sub.order(), self.order())))
    }

    /// Unit `u` such that `x -> x^u`-relabelled exponents transport `other`
    /// onto `self`: the generator of `other` corresponds to `g^u`.
    pub fn isomorphism_exponent(&self, other: &FieldSpec) -> Result<u64> {
        if other.order != self.order {
            return Err(Error::NotAPower(self.order(), other.order()));
        }
        self.embedding_multiplier(other)
    }

    pub fn embed_from(&self, sub: &FieldSpec, multiplier: u64, x: FieldElement) -> FieldElement {
        debug_assert!(sub.p == self.p);
        match x {
            FieldElement::Zero => x,
            FieldElement::Exp(a) => self.exp((a as u64 * multiplier % self.units()) as i64),
        }
    }

    /// Whether `x` lies in the subfield of order `q0`.
    pub fn in_subfield(&self, x: FieldElement, q0: u64) -> bool {
        self.pow(x, q0) == x
    }

    /// Size of the orbit of `x` under `y -> y^q`.
    pub fn frobenius_orbit_len(&self, x: FieldElement, q: u64) -> u32 {
        let mut y = self.pow(x, q);
        let mut len = 1;
        while y != x {
            y = self.pow(y, q);
            len += 1;
        }
        len
    }

    /// Matrix of multiplication by `x` on the power basis `1, g, ..., g^(s-1)`,
    /// with entries in the prime field `base`.
    pub fn regular_representation(&self, base: &FieldSpec, x: FieldElement) -> Result<Mat> {
        if base.degree != 1 || base.p != self.p {
            return Err(Error::Unsupported("regular representation is only built over the prime field".into()));
        }
        let s = self.degree as usize;
        let mut m = Mat::zero(s);
        for j in 0..s {
            let col = self.coords(self.mul(x, self.exp(j as i64)));
            for (i, &c) in col.iter().enumerate() {
                m.set(i, j, base.from_int(c as i64));
            }
        }
        Ok(m)
    }
}

/// A root of the characteristic polynomial of the elliptic matrix `m`
/// (entries in `small`) inside `ext`, with maximal Frobenius orbit.
///
/// Roots are found by scanning `ext`; the least exponent is returned. When
/// no root has an orbit of size `m.n()` the characteristic polynomial is
/// reducible.
pub fn eigenvalue_in_extension(small: &FieldSpec, m: &Mat, ext: &FieldSpec) -> Result<FieldElement> {
    let n = m.n();
    if ext.degree() != small.degree() * n as u32 {
        return Err(Error::DimensionMismatch { expected: (ext.degree() / small.degree()) as usize, got: n });
    }
    let mult = ext.embedding_multiplier(small)?;
    let lifted = m.map(|x| ext.embed_from(small, mult, x));
    for lambda in ext.units_iter() {
        let shifted = lifted.sub_scalar(lambda, ext);
        if shifted.det(ext).is_zero() && ext.frobenius_orbit_len(lambda, small.order()) as usize == n {
            return Ok(lambda);
        }
    }
    Err(Error::Reducible)
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn find_primitive(p: u32, k: u32, order: u32, choice: GeneratorChoice) -> Vec<u32> {
    let total = order as u64;
    let units = total - 1;
    let factors = prime_divisors(units);
    let candidates: Box<dyn Iterator<Item = u64>> = match choice {
        GeneratorChoice::Least => Box::new(0..total),
        GeneratorChoice::Alternate => Box::new((0..total).rev()),
    };
    for idx in candidates {
        // c_0 is the most significant digit of idx, so idx order is the
        // lexicographic order of (c_0, ..., c_{k-1})
        let mut coeffs = vec![0u32; k as usize];
        let mut rest = idx;
        for j in (0..k as usize).rev() {
            coeffs[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let one = {
            let mut v = vec![0u32; k as usize];
            v[0] = 1;
            v
        };
        let x_pow = |e: u64| poly_x_pow(e, &coeffs, p);
        if x_pow(units) != one {
            continue;
        }
        if factors.iter().all(|&r| x_pow(units / r) != one) {
            return coeffs;
        }
    }
    unreachable!("every finite field has a primitive element")
}

/// `x^e` modulo the monic polynomial with low coefficients `f`.
fn poly_x_pow(mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let k = f.len();
    let mut result = vec![0u32; k];
    result[0] = 1;
    let mut base = vec![0u32; k];
    if k == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn poly_mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let k = f.len();
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            prod[i - k + j] = (prod[i - k + j] + (p64 - f[j] as u64) * c) % p64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}
