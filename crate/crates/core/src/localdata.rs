//! Local setups and tame parameters.
//!
//! `F` is a `p`-adic field with residue field of order `q`, `K/F` is
//! quadratic (unramified or totally ramified), `D` is a central division
//! algebra of index `d` over `F`, and `π` is a level-zero cuspidal
//! representation of `GL_n(F)` with its transfer to `GL_m(D)`, `n = md`. Only the residue-field bookkeeping is modelled.

use crate::arith::{divisors, prime_power};
use crate::charlat::{MultChar, RootOfUnity};
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ramification {
    Unramified,
    TotallyRamified,
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ramification::Unramified => "UNRAMIFIED",
            Ramification::TotallyRamified => "TOTALLY_RAMIFIED",
        })
    }
}

impl FromStr for Ramification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nr" | "unr" | "unramified" => Ok(Ramification::Unramified),
            "tr" | "ram" | "ramified" | "totally_ramified" | "totally-ramified" => Ok(Ramification::TotallyRamified),
            _ => Err(Error::InvalidSetup(format!("unknown ramification {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalSetup {
    pub q: u64,
    pub ram: Ramification,
    pub n: u32,
    pub d: u32,
    /// Hasse invariant numerator of `D`; unused by the criteria.
    pub r: Option<u32>,
}

/// How the uniformizers of `F` and `K` relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformizerRelation {
    /// `ϖ_F = ϖ_K`.
    Equal,
    /// `ϖ_K^2 = ϖ_F`.
    Square,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derived {
    pub m: u32,
    pub delta: u32,
    pub mu: u32,
    /// Residue cardinality of `K`.
    pub q_k: u64,
    /// `|k_D| = q^d`.
    pub card_kd: u64,
    /// `|k_Δ| = q_K^δ`.
    pub card_kdelta: u64,
    /// `|k_{K,n}| = q_K^n`.
    pub card_kn: u64,
    pub uniformizers: UniformizerRelation,
}

impl LocalSetup {
    pub fn new(q: u64, ram: Ramification, n: u32, d: u32) -> LocalSetup {
        LocalSetup { q, ram, n, d, r: None }
    }

    pub fn with_d(self, d: u32) -> LocalSetup {
        LocalSetup { d, ..self }
    }

    /// Residue cardinality of `K`.
    pub fn q_k(&self) -> u64 {
        match self.ram {
            Ramification::Unramified => self.q * self.q,
            Ramification::TotallyRamified => self.q,
        }
    }

    /// Order of `k_{K,n}`, the field carrying the residual character.
    pub fn residue_order(&self) -> u64 {
        self.q_k().pow(self.n)
    }
}

impl fmt::Display for LocalSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} {} n={} d={}", self.q, self.ram, self.n, self.d)
    }
}

pub fn derive(setup: &LocalSetup) -> Result<Derived> {
    let LocalSetup { q, ram, n, d, r } = *setup;
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if n < 2 {
        return Err(Error::InvalidSetup(format!("n must be at least 2, got {n}")));
    }
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { d, n });
    }
    if ram == Ramification::TotallyRamified && q % 2 == 0 {
        return Err(Error::RamifiedEvenQ(q));
    }
    if let Some(r) = r {
        if r.gcd(&d) != 1 {
            return Err(Error::HasseNotCoprime { r, d });
        }
    }
    let delta = d / d.gcd(&2);
    let q_k = setup.q_k();
    let checked = |b: u64, e: u32| b.checked_pow(e).ok_or_else(|| Error::InvalidSetup(format!("{b}^{e} overflows")));
    Ok(Derived {
        m: n / d,
        delta,
        mu: n / delta,
        q_k,
        card_kd: checked(q, d)?,
        card_kdelta: checked(q_k, delta)?,
        card_kn: checked(q_k, n)?,
        uniformizers: match ram {
            Ramification::Unramified => UniformizerRelation::Equal,
            Ramification::TotallyRamified => UniformizerRelation::Square,
        },
    })
}

/// Hasse invariant of `Δ = D ⊗ K`: `2r/d mod 1`.
pub fn hasse_base_change(r: u32, d: u32) -> Ratio<i64> {
    let t = Ratio::new(2 * r as i64, d as i64);
    t - t.floor()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TameParameter {
    pub setup: LocalSetup,
    /// Exponent of the residual character `χ̄` of `k_{K,n}^×`.
    pub a: u64,
    /// `χ(ϖ_K)`.
    pub t: RootOfUnity,
}

impl TameParameter {
    pub fn new(setup: LocalSetup, a: i64, t: RootOfUnity) -> TameParameter {
        let units = setup.residue_order() as i64 - 1;
        TameParameter { setup, a: a.rem_euclid(units) as u64, t }
    }

    /// `χ̄` as a character of `k_{K,n}^×`.
    pub fn residual(&self) -> MultChar {
        MultChar::new(self.setup.residue_order(), self.a as i64)
    }

    /// The Galois orbit of `a` under `x -> x^{q_K}`.
    pub fn orbit(&self) -> Vec<u64> {
        self.residual().galois_orbit(self.setup.q_k()).expect("residue order is a power of q_K")
    }
}

/// Checks the setup and the `k_K`-regularity of `χ̄`.
pub fn validate_parameter(p: &TameParameter) -> Result<()> {
    derive(&p.setup)?;
    let orbit = p.orbit();
    if orbit.len() != p.setup.n as usize {
        return Err(Error::NotRegular { orbit, n: p.setup.n });
    }
    Ok(())
}

/// The transfer to `GL_m(D)` keeps the character: only `d` changes.
pub fn jl_transfer(p: &TameParameter, d_new: u32) -> Result<TameParameter> {
    if d_new == 0 || p.setup.n % d_new != 0 {
        return Err(Error::NotDivisor { d: d_new, n: p.setup.n });
    }
    validate_parameter(p)?;
    Ok(TameParameter { setup: p.setup.with_d(d_new), ..*p })
}

/// Least representatives of the regular orbits of exponents mod `q_K^n - 1`,
/// each with its orbit.
pub fn regular_orbits(q_k: u64, n: u32) -> Vec<Vec<u64>> {
    let order = q_k.pow(n);
    let units = order - 1;
    let mut seen = vec![false; units as usize];
    let mut out = Vec::new();
    for a in 0..units {
        if seen[a as usize] {
            continue;
        }
        let orbit = MultChar::new(order, a as i64).galois_orbit(q_k).expect("power of q_K");
        for &b in &orbit {
            seen[b as usize] = true;
        }
        if orbit.len() == n as usize {
            out.push(orbit);
        }
    }
    out
}

/// Divisors of `n`, the admissible values of `d`.
pub fn admissible_d(n: u32) -> Vec<u32> {
    divisors(n)
}
