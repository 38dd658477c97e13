//! Multiplicative characters of finite fields, exact roots of unity and
//! cyclotomic integers.
//!
//! A character of `F_Q^×` is its exponent `a`: with `g` the field generator it
//! sends `g^k` to `ζ_{Q-1}^{ak}`. Galois twists act on `a` by multiplication
//! with powers of `p`.

mod cyclo;

pub use cyclo::{cyclo_equal, cyclo_sum, cyclotomic_polynomial, CycloAccumulator, CycloInt};

use crate::arith::log_exact;
use crate::ffield::FieldElement;
use crate::{Error, Result};
use num_rational::Ratio;
use num_traits::Zero;
use std::fmt;

/// `exp(2πi t)` for rational `t` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity(Ratio<i64>);

impl RootOfUnity {
    pub fn new(num: i64, den: i64) -> RootOfUnity {
        RootOfUnity::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(t: Ratio<i64>) -> RootOfUnity {
        RootOfUnity(t - t.floor())
    }

    pub fn one() -> RootOfUnity {
        RootOfUnity(Ratio::zero())
    }

    /// `-1`.
    pub fn minus_one() -> RootOfUnity {
        RootOfUnity::new(1, 2)
    }

    pub fn t(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0.is_zero()
    }

    /// Order of the root: the reduced denominator of `t`.
    pub fn order(self) -> i64 {
        *self.0.denom()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        RootOfUnity::from_ratio(self.0 + other.0)
    }

    pub fn inv(self) -> RootOfUnity {
        RootOfUnity::from_ratio(-self.0)
    }

    pub fn pow(self, k: i64) -> RootOfUnity {
        RootOfUnity::from_ratio(self.0 * Ratio::from_integer(k))
    }

    /// Parse `"num/den"` or an integer.
    pub fn parse(s: &str) -> Option<RootOfUnity> {
        let t: Ratio<i64> = s.trim().parse().ok()?;
        Some(RootOfUnity::from_ratio(t))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        RootOfUnity(Ratio::zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultChar {
    order: u64,
    a: u64,
}

impl MultChar {
    /// Character of `F_Q^×` with exponent `a mod Q-1`.
    pub fn new(field_order: u64, a: i64) -> MultChar {
        assert!(field_order >= 2, "field order must be at least 2");
        let u = field_order - 1;
        MultChar { order: field_order, a: a.rem_euclid(u as i64) as u64 }
    }

    pub fn field_order(&self) -> u64 {
        self.order
    }

    pub fn units(&self) -> u64 {
        self.order - 1
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// Value at `g^k`.
    pub fn at_exponent(&self, k: i64) -> RootOfUnity {
        let u = self.units() as i128;
        let ak = (self.a as i128 * k as i128).rem_euclid(u);
        RootOfUnity::new(ak as i64, u as i64)
    }

    /// Value at a nonzero element of the same field.
    pub fn evaluate(&self, x: FieldElement) -> Result<RootOfUnity> {
        let k = x.exponent().ok_or(Error::ZeroArgument)?;
        Ok(self.at_exponent(k as i64))
    }

    pub fn mul(&self, other: &MultChar) -> MultChar {
        assert_eq!(self.order, other.order);
        MultChar::new(self.order, (self.a + other.a) as i64)
    }

    pub fn inverse(&self) -> MultChar {
        MultChar::new(self.order, -(self.a as i64))
    }

    /// `χ ∘ (x -> x^{q'})`.
    pub fn frobenius_twist(&self, qp: u64) -> MultChar {
        let a = (self.a as u128 * qp as u128 % self.units() as u128) as i64;
        MultChar::new(self.order, a)
    }

    /// Exponents `a q'^j`, sorted. Requires `Q` to be a power of `q'`.
    pub fn galois_orbit(&self, qp: u64) -> Result<Vec<u64>> {
        log_exact(self.order, qp).ok_or(Error::NotAPower(self.order, qp))?;
        let mut orbit = vec![self.a];
        let mut cur = self.frobenius_twist(qp);
        while cur.a != self.a {
            orbit.push(cur.a);
            cur = cur.frobenius_twist(qp);
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Regular means the orbit under `x -> x^{q'}` has the full length `n`,
    /// where `Q = q'^n`.
    pub fn is_regular(&self, qp: u64, n: u32) -> Result<bool> {
        if log_exact(self.order, qp) != Some(n) {
            return Err(Error::NotAPower(self.order, qp));
        }
        Ok(self.galois_orbit(qp)?.len() == n as usize)
    }

    /// Triviality on the unique subgroup of order `s`.
    pub fn is_trivial_on_subgroup(&self, s: u64) -> Result<bool> {
        if s == 0 || self.units() % s != 0 {
            return Err(Error::BadSubgroupOrder(s, self.units()));
        }
        Ok(self.a % s == 0)
    }

    /// `χ(η)` for `η = g^{(q^{n/2}+1)/2}`, an element outside the subfield
    /// `l_0` of order `q^{n/2}` with square in `l_0`.
    ///
    /// Only defined when `χ` is trivial on `l_0^×`; otherwise the value would
    /// depend on which such `η` is picked.
    pub fn eta_value(&self, q: u64, n: u32) -> Result<RootOfUnity> {
        if n % 2 != 0 || log_exact(self.order, q) != Some(n) {
            return Err(Error::EtaPrecondition(format!("Q={} is not q^n with q={q} and n={n} even", self.order)));
        }
        if q % 2 == 0 {
            return Err(Error::EtaPrecondition("q must be odd".into()));
        }
        let half = q.pow(n / 2);
        if self.a % (half - 1) != 0 {
            return Err(Error::EtaPrecondition(format!(
                "a={} is not trivial on the subgroup of order {}",
                self.a,
                half - 1
            )));
        }
        Ok(self.at_exponent(half.div_ceil(2) as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn evaluate_examples() {
        assert!(MultChar::new(9, 0).evaluate(FieldElement::Exp(5)).unwrap().is_one());
        assert_eq!(MultChar::new(9, 4).evaluate(FieldElement::Exp(1)).unwrap(), RootOfUnity::new(1, 2));
        assert_eq!(MultChar::new(9, 2).evaluate(FieldElement::Exp(2)).unwrap(), RootOfUnity::new(1, 2));
        assert!(matches!(MultChar::new(9, 2).evaluate(FieldElement::Zero), Err(Error::ZeroArgument)));
    }

    #[test]
    fn twists_and_orbits() {
        assert_eq!(MultChar::new(9, 1).frobenius_twist(3).a(), 3);
        assert_eq!(MultChar::new(81, 10).frobenius_twist(9).a(), 10);
        assert_eq!(MultChar::new(81, 1).frobenius_twist(9).a(), 9);
        assert_eq!(MultChar::new(81, 1).galois_orbit(9).unwrap(), [1, 9]);
        assert!(MultChar::new(81, 1).is_regular(9, 2).unwrap());
        assert_eq!(MultChar::new(81, 10).galois_orbit(9).unwrap(), [10]);
        assert!(!MultChar::new(81, 10).is_regular(9, 2).unwrap());
        assert_eq!(MultChar::new(729, 26).galois_orbit(9).unwrap(), [26, 234, 650]);
        assert!(MultChar::new(729, 26).is_regular(9, 3).unwrap());
        assert!(MultChar::new(81, 1).galois_orbit(5).is_err());
        assert!(MultChar::new(81, 1).is_regular(3, 2).is_err());
    }

    #[test]
    fn subgroup_triviality() {
        assert!(MultChar::new(9, 2).is_trivial_on_subgroup(2).unwrap());
        assert!(!MultChar::new(9, 1).is_trivial_on_subgroup(2).unwrap());
        assert!(MultChar::new(729, 26).is_trivial_on_subgroup(26).unwrap());
        assert!(MultChar::new(9, 1).is_trivial_on_subgroup(3).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(MultChar::new(9, 2).eta_value(3, 2).unwrap(), RootOfUnity::new(1, 2));
        assert_eq!(MultChar::new(9, 6).eta_value(3, 2).unwrap(), RootOfUnity::new(1, 2));
        assert!(MultChar::new(9, 4).eta_value(3, 2).unwrap().is_one());
        assert!(MultChar::new(9, 1).eta_value(3, 2).is_err());
        assert!(MultChar::new(27, 2).eta_value(3, 3).is_err());
    }

    // Any η with η ∉ l_0 and η² ∈ l_0 gives the same value, found by scanning
    // the actual field rather than by the closed form.
    #[test]
    fn eta_is_choice_free() {
        for (p, k, q, n) in [(3u64, 2u32, 3u64, 2u32), (3, 4, 3, 4), (5, 2, 5, 2), (3, 4, 9, 2), (7, 2, 7, 2)] {
            let f = build_field(p, k).unwrap();
            let l0 = q.pow(n / 2);
            let etas: Vec<_> =
                f.units_iter().filter(|&x| !f.in_subfield(x, l0) && f.in_subfield(f.mul(x, x), l0)).collect();
            assert!(!etas.is_empty());
            for a in (0..f.units()).filter(|a| a % (l0 - 1) == 0) {
                let chi = MultChar::new(f.order(), a as i64);
                let closed = chi.eta_value(q, n).unwrap();
                for &eta in &etas {
                    assert_eq!(chi.evaluate(eta).unwrap(), closed, "Q={} a={a}", f.order());
                }
            }
        }
    }

    #[test]
    fn evaluate_is_multiplicative_exhaustive() {
        for f in [build_field(3, 2).unwrap(), build_field(3, 4).unwrap(), build_field(5, 2).unwrap()] {
            for a in 0..f.units() as i64 {
                let chi = MultChar::new(f.order(), a);
                for x in f.units_iter() {
                    for y in f.units_iter().step_by(7) {
                        let lhs = chi.evaluate(f.mul(x, y)).unwrap();
                        assert_eq!(lhs, chi.evaluate(x).unwrap().mul(chi.evaluate(y).unwrap()));
                    }
                    let psi = MultChar::new(f.order(), 3 * a + 1);
                    assert_eq!(
                        chi.mul(&psi).evaluate(x).unwrap(),
                        chi.evaluate(x).unwrap().mul(psi.evaluate(x).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn regularity_constant_on_orbits_and_eta_twist_invariant() {
        for (q, n) in [(3u64, 2u32), (3, 4), (9, 2), (5, 2), (2, 4)] {
            let order = q.pow(n);
            for a in 0..order as i64 - 1 {
                let chi = MultChar::new(order, a);
                let tw = chi.frobenius_twist(q);
                assert_eq!(chi.is_regular(q, n).unwrap(), tw.is_regular(q, n).unwrap());
                if q % 2 == 1 && n % 2 == 0 {
                    if let Ok(v) = chi.eta_value(q, n) {
                        assert_eq!(tw.eta_value(q, n).unwrap(), v);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn root_of_unity_group_laws(a in -50i64..50, b in 1i64..40, c in -50i64..50, d in 1i64..40) {
            let (x, y) = (RootOfUnity::new(a, b), RootOfUnity::new(c, d));
            prop_assert_eq!(x.mul(y), y.mul(x));
            prop_assert!(x.mul(x.inv()).is_one());
            prop_assert!(x.pow(x.order()).is_one());
            prop_assert!(x.t() >= Ratio::zero() && x.t() < Ratio::one());
            prop_assert_eq!(RootOfUnity::parse(&x.to_string()), Some(x));
        }
    }
}
